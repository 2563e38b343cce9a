#pragma once

#include "bcsample/brandes.hpp"
#include "bcsample/estimate.hpp"

#include <cmath>
#include <random>

namespace bcsample {

namespace detail {

// Draws ordered pairs (u, v), u != v, uniformly over all n(n-1) pairs and evaluates
// delta_uv(target) against one precomputed BFS from the target.
class PairDrawer {
  public:
	PairDrawer(const Graph& g, vertex_t target, std::uint64_t seed)
		: m_graph(g), m_target(target), m_rng(seed),
		  m_first(0, static_cast<vertex_t>(g.vertex_count() - 1)),
		  m_second(0, static_cast<vertex_t>(g.vertex_count() - 2)) {
		bfs_sssp(g, target, m_from_target);
	}

	SampleRecord operator()() {
		const vertex_t u = m_first(m_rng);
		vertex_t v = m_second(m_rng);
		if (v >= u) ++v;
		const PairSample s = pair_sample(m_graph, u, v, m_target, m_from_target, m_scratch);
		return {u, v, s.contribution, s.bfs_cost};
	}

  private:
	const Graph& m_graph;
	vertex_t m_target;
	std::mt19937_64 m_rng;
	std::uniform_int_distribution<vertex_t> m_first;
	std::uniform_int_distribution<vertex_t> m_second;
	BfsResult m_from_target;
	BfsResult m_scratch;
};

} // namespace detail

// Adaptive pair sampling: each draw adds sigma_uv(t) / sigma_uv for a uniformly
// chosen ordered pair; stops once S > c*n (or on the cap) and returns n(n-1) S / k.
// The BFS from the target is precomputed once and is not counted in bfs_cost.
inline EstimateRun estimate_bc_pair(const Graph& g, vertex_t target, const SamplerOptions& opt) {
	detail::check_run_inputs(g, target, opt.c);
	const double n = static_cast<double>(g.vertex_count());

	EstimateRun run;
	run.method = SamplingMethod::pair;
	run.target = target;
	run.c = opt.c;
	run.seed = opt.seed;
	run.max_samples = detail::resolve_cap(opt, g.vertex_count());

	detail::PairDrawer draw(g, target, opt.seed);
	return detail::run_adaptive(run, n, n * (n - 1.0), opt.keep_trace, draw);
}

/// Pair estimator with the stopping rule disabled: exactly k draws.
inline EstimateRun sample_bc_pair_fixed(const Graph& g, vertex_t target, std::uint64_t k, std::uint64_t seed) {
	detail::check_run_inputs(g, target, 1.0);
	const double n = static_cast<double>(g.vertex_count());
	EstimateRun run;
	run.method = SamplingMethod::pair;
	run.target = target;
	run.seed = seed;
	detail::PairDrawer draw(g, target, seed);
	return detail::run_fixed(run, k, n * (n - 1.0), draw);
}

/// Guarantee triple for pair sampling: factor (1/eps) (1/(t(n-1)))^{1/3} using
/// eps t^{2/3} (n-1)^{1/3} samples, same success bound as the vertex estimator.
inline GuaranteeParams theorem4_params(double epsilon, double t, std::uint64_t n, double c) {
	detail::check_guarantee_domain(epsilon, t, c);
	if (n < 2) throw ParameterError("n must be >= 2");
	const double m = static_cast<double>(n - 1);
	return {detail::success_lower_bound(epsilon, c), std::cbrt(1.0 / (t * m)) / epsilon,
			epsilon * std::cbrt(t * t) * std::cbrt(m)};
}

} // namespace bcsample
