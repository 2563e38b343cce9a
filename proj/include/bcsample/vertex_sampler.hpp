#pragma once

#include "bcsample/brandes.hpp"
#include "bcsample/estimate.hpp"

#include <cmath>
#include <random>

namespace bcsample {

// Adaptive vertex sampling. Sources are drawn uniformly with replacement from all
// n vertices (the target included, contributing 0); each draw runs a full BFS and
// adds delta_{s.}(target) to S. The loop continues while S <= c*n and returns n*S/k.
inline EstimateRun estimate_bc_vertex(const Graph& g, vertex_t target, const SamplerOptions& opt) {
	detail::check_run_inputs(g, target, opt.c);
	const std::size_t n = g.vertex_count();

	EstimateRun run;
	run.method = SamplingMethod::vertex;
	run.target = target;
	run.c = opt.c;
	run.seed = opt.seed;
	run.max_samples = detail::resolve_cap(opt, n);

	std::mt19937_64 rng(opt.seed);
	std::uniform_int_distribution<vertex_t> pick(0, static_cast<vertex_t>(n - 1));
	DependencyProbe probe(g);
	return detail::run_adaptive(run, static_cast<double>(n), static_cast<double>(n), opt.keep_trace, [&] {
		const vertex_t s = pick(rng);
		const double x = probe(s, target);
		return SampleRecord{s, s, x, probe.last_cost()};
	});
}

/// Vertex estimator with the stopping rule disabled: exactly k draws.
inline EstimateRun sample_bc_vertex_fixed(const Graph& g, vertex_t target, std::uint64_t k, std::uint64_t seed) {
	detail::check_run_inputs(g, target, 1.0);
	const std::size_t n = g.vertex_count();
	EstimateRun run;
	run.method = SamplingMethod::vertex;
	run.target = target;
	run.seed = seed;
	std::mt19937_64 rng(seed);
	std::uniform_int_distribution<vertex_t> pick(0, static_cast<vertex_t>(n - 1));
	DependencyProbe probe(g);
	return detail::run_fixed(run, k, static_cast<double>(n), [&] {
		const vertex_t s = pick(rng);
		const double x = probe(s, target);
		return SampleRecord{s, s, x, probe.last_cost()};
	});
}

/// Success probability, factor and sample count for the vertex estimator when
/// BC(v) = n^2 / t: success >= 1 - (1 + 1/(2c-1)^2) eps, factor 1/(eps t^{1/3}),
/// samples eps t^{2/3}.
inline GuaranteeParams theorem3_params(double epsilon, double t, double c) {
	detail::check_guarantee_domain(epsilon, t, c);
	return {detail::success_lower_bound(epsilon, c), 1.0 / (epsilon * std::cbrt(t)), epsilon * std::cbrt(t * t)};
}

} // namespace bcsample
