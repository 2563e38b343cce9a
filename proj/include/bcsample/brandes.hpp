#pragma once

#include "bcsample/bfs.hpp"
#include "bcsample/error.hpp"
#include "bcsample/graph.hpp"
#include "bcsample/parallel.hpp"

#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bcsample {

/// Betweenness centrality of every vertex, summed over ordered (s, t) pairs with no
/// 1/2 normalisation. Values lie in [0, n^2].
struct BcVector {
	std::vector<double> bc;

	double operator[](vertex_t v) const { return bc[v]; }
	std::size_t size() const noexcept { return bc.size(); }
};

/// Dependency of one source on every vertex, delta_{s.}(v) = sum_t delta_st(v).
struct DependencyVector {
	vertex_t source = 0;
	std::vector<double> delta;
};

/// Backward sweep over a full BFS: for each w in decreasing distance, every
/// predecessor p receives sigma[p] / sigma[w] * (1 + delta[w]). delta is resized to n;
/// only entries of vertices in b.order are written, the rest must already be zero.
inline void accumulate_dependencies(const BfsResult& b, std::vector<double>& delta) {
	if (b.truncated()) throw ParameterError("accumulate_dependencies: BFS result is truncated");
	for (auto it = b.order.rbegin(); it != b.order.rend(); ++it) {
		const vertex_t w = *it;
		const double coeff = (1.0 + delta[w]) / b.sigma[w];
		for (vertex_t p : b.preds(w)) delta[p] += b.sigma[p] * coeff;
	}
	delta[b.source] = 0.0;
}

inline DependencyVector accumulate_dependencies(const Graph& g, const BfsResult& b) {
	DependencyVector out{b.source, std::vector<double>(g.vertex_count(), 0.0)};
	accumulate_dependencies(b, out.delta);
	return out;
}

/// Reusable state for computing delta_{s.}(target) one source at a time.
class DependencyProbe {
  public:
	explicit DependencyProbe(const Graph& g) : m_graph(&g), m_delta(g.vertex_count(), 0.0) {}

	/// delta_{source.}(target); zero when source == target. Settled count in last_cost().
	double operator()(vertex_t source, vertex_t target) {
		bfs_sssp(*m_graph, source, m_bfs);
		accumulate_dependencies(m_bfs, m_delta);
		const double value = m_delta[target];
		for (vertex_t v : m_bfs.order) m_delta[v] = 0.0;
		return value;
	}

	std::size_t last_cost() const noexcept { return m_bfs.settled(); }

  private:
	const Graph* m_graph;
	BfsResult m_bfs;
	std::vector<double> m_delta;
};

/// Exact BC by Brandes' two-phase algorithm, O(nm).
///
/// Sources are split into a fixed number of contiguous blocks; each block reduces
/// into its own buffer and buffers are summed in block order, so the result does not
/// depend on the number of workers.
inline BcVector brandes_bc(const Graph& g, unsigned workers = default_workers()) {
	const std::size_t n = g.vertex_count();
	const std::size_t blocks = std::min<std::size_t>(n, 64);
	std::vector<std::vector<double>> partial(blocks);

	parallel_for_tasks(blocks, workers, [&](std::size_t block) {
		std::vector<double> acc(n, 0.0);
		std::vector<double> delta(n, 0.0);
		BfsResult bfs;
		const std::size_t begin = block * n / blocks;
		const std::size_t end = (block + 1) * n / blocks;
		for (std::size_t s = begin; s < end; ++s) {
			bfs_sssp(g, static_cast<vertex_t>(s), bfs);
			accumulate_dependencies(bfs, delta);
			for (vertex_t v : bfs.order) {
				acc[v] += delta[v];
				delta[v] = 0.0;
			}
		}
		partial[block] = std::move(acc);
	});

	BcVector out{std::vector<double>(n, 0.0)};
	for (const auto& p : partial)
		for (std::size_t v = 0; v < n; ++v) out.bc[v] += p[v];
	return out;
}

/// Single sample of the pair estimator: delta_uv(t) and the work spent computing it.
struct PairSample {
	vertex_t u = 0;
	vertex_t v = 0;
	double contribution = 0.0;
	/// Vertices settled by the truncated search from u (0 when no search was needed).
	std::size_t bfs_cost = 0;
};

/// delta_uv(t) = sigma_ut * sigma_tv / sigma_uv when t lies on a shortest u-v path.
///
/// from_target must be a full BFS from t; by symmetry it supplies d(u,t), d(t,v),
/// sigma_ut and sigma_tv. d(u,v) and sigma_uv come from a search from u that stops once
/// v's level is settled. Pairs with t as an endpoint, or with u and v in different
/// components from t, contribute 0 without searching.
inline PairSample pair_sample(const Graph& g, vertex_t u, vertex_t v, vertex_t t,
							  const BfsResult& from_target, BfsResult& scratch) {
	if (u == v) throw ParameterError("pair_dependency: u and v must differ");
	if (from_target.truncated() || from_target.source != t)
		throw ParameterError("pair_dependency: expected a full BFS from the target");
	PairSample out{u, v, 0.0, 0};
	if (t == u || t == v) return out;
	if (!from_target.reached(u) || !from_target.reached(v)) return out;

	bfs_until_settled(g, u, v, scratch);
	out.bfs_cost = scratch.settled();
	const hops_t through_t = from_target.dist[u] + from_target.dist[v];
	if (scratch.dist[v] == through_t)
		out.contribution = from_target.sigma[u] * from_target.sigma[v] / scratch.sigma[v];
	return out;
}

inline double pair_dependency(const Graph& g, vertex_t u, vertex_t v, vertex_t t, const BfsResult& from_target) {
	BfsResult scratch;
	return pair_sample(g, u, v, t, from_target, scratch).contribution;
}

namespace detail {

inline std::string format_double(double x) {
	char buf[32];
	auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
	return std::string(buf, ptr);
}

} // namespace detail

/// CSV with header `vertex_id,bc`, one row per vertex in dense order, original ids.
inline void write_bc_csv(const Graph& g, const BcVector& bc, std::ostream& out) {
	out << "vertex_id,bc\n";
	for (vertex_t v = 0; v < g.vertex_count(); ++v) out << g.id_of(v) << ',' << detail::format_double(bc[v]) << '\n';
}

} // namespace bcsample
