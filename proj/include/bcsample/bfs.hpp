#pragma once

#include "bcsample/graph.hpp"

#include <cassert>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bcsample {

using hops_t = std::int32_t;

/// Marker stored in BfsResult::dist for vertices the search never reached.
/// Distances are only meaningful after checking reached().
inline constexpr hops_t kUnreached = -1;

/// Shortest-path data from one source: hop distances, path counts and the
/// predecessor DAG.
///
/// A BfsResult is reusable scratch space: passing the same object to successive
/// searches on one graph only clears the entries the previous search touched, so a
/// truncated search costs time proportional to what it visits rather than to n.
///
/// Predecessors of v are stored inside v's neighbour block of the graph's offset
/// layout (P_s(v) is a subset of adj(v)), which keeps the whole DAG in one 2m array.
struct BfsResult {
	vertex_t source = 0;
	std::vector<hops_t> dist;
	std::vector<double> sigma;
	std::vector<vertex_t> pred_slots;
	std::vector<std::uint32_t> pred_count;
	/// Visited vertices in nondecreasing distance; traverse backwards for accumulation.
	std::vector<vertex_t> order;
	/// Set when the search stopped after settling this level.
	std::optional<hops_t> frontier_limit;

	bool reached(vertex_t v) const noexcept { return dist[v] != kUnreached; }

	std::optional<hops_t> distance(vertex_t v) const noexcept {
		if (!reached(v)) return std::nullopt;
		return dist[v];
	}

	std::span<const vertex_t> preds(vertex_t v) const noexcept {
		return {pred_slots.data() + m_offsets[v], pred_count[v]};
	}

	/// Number of vertices the search settled.
	std::size_t settled() const noexcept { return order.size(); }

	bool truncated() const noexcept { return frontier_limit.has_value(); }

	/// Prepares the buffers for a new search on g.
	void reset(const Graph& g) {
		const std::size_t n = g.vertex_count();
		if (dist.size() != n || pred_slots.size() != 2 * g.edge_count() || m_offsets.data() != g.offsets().data()) {
			dist.assign(n, kUnreached);
			sigma.assign(n, 0.0);
			pred_count.assign(n, 0);
			pred_slots.assign(2 * g.edge_count(), 0);
			m_offsets = g.offsets();
			order.clear();
			order.reserve(n);
		} else {
			for (vertex_t v : order) {
				dist[v] = kUnreached;
				sigma[v] = 0.0;
				pred_count[v] = 0;
			}
			order.clear();
		}
		frontier_limit.reset();
	}

  private:
	std::span<const std::size_t> m_offsets;
};

namespace detail {

// Level-synchronous BFS with path counting. Vertices at distance >= limit are
// recorded but not expanded, so every level up to and including the limit is final.
// With stop_at set, the limit is fixed to dist(stop_at) as soon as it is discovered.
inline void run_bfs(const Graph& g, vertex_t source, std::optional<hops_t> limit,
					std::optional<vertex_t> stop_at, BfsResult& out) {
	assert(source < g.vertex_count());
	out.reset(g);
	out.source = source;
	out.dist[source] = 0;
	out.sigma[source] = 1.0;
	out.order.push_back(source);

	const auto offsets = g.offsets();
	bool limited = limit.has_value();
	hops_t cap = limit.value_or(0);
	if (stop_at && *stop_at == source) {
		limited = true;
		cap = 0;
	}

	for (std::size_t head = 0; head < out.order.size(); ++head) {
		const vertex_t v = out.order[head];
		const hops_t dv = out.dist[v];
		if (limited && dv >= cap) break;
		const double sv = out.sigma[v];
		for (vertex_t w : g.neighbors(v)) {
			hops_t& dw = out.dist[w];
			if (dw == kUnreached) {
				dw = dv + 1;
				out.order.push_back(w);
				if (stop_at && w == *stop_at && !limited) {
					limited = true;
					cap = dw;
				}
			}
			if (dw == dv + 1) {
				out.sigma[w] += sv;
				out.pred_slots[offsets[w] + out.pred_count[w]++] = v;
			}
		}
	}
	if (limited) out.frontier_limit = cap;
}

} // namespace detail

/// Full single-source shortest paths from source.
inline void bfs_sssp(const Graph& g, vertex_t source, BfsResult& out) {
	detail::run_bfs(g, source, std::nullopt, std::nullopt, out);
}

inline BfsResult bfs_sssp(const Graph& g, vertex_t source) {
	BfsResult r;
	bfs_sssp(g, source, r);
	return r;
}

/// Shortest paths restricted to vertices within stop_dist hops of source. Level
/// stop_dist is fully settled: its distances, path counts and predecessors are exact.
inline void bfs_truncated(const Graph& g, vertex_t source, hops_t stop_dist, BfsResult& out) {
	if (stop_dist < 0) throw ParameterError("bfs_truncated: stop_dist must be >= 0");
	detail::run_bfs(g, source, stop_dist, std::nullopt, out);
}

inline BfsResult bfs_truncated(const Graph& g, vertex_t source, hops_t stop_dist) {
	BfsResult r;
	bfs_truncated(g, source, stop_dist, r);
	return r;
}

/// Searches from source until target is discovered, then finishes that level so
/// that sigma[target] counts every shortest source-target path. The limit is
/// d(source, target); when target is unreachable the search is exhaustive.
inline void bfs_until_settled(const Graph& g, vertex_t source, vertex_t target, BfsResult& out) {
	detail::run_bfs(g, source, std::nullopt, target, out);
}

} // namespace bcsample
