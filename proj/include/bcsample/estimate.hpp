#pragma once

#include "bcsample/error.hpp"
#include "bcsample/graph.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace bcsample {

enum class SamplingMethod { vertex, pair };

inline std::string_view to_string(SamplingMethod m) { return m == SamplingMethod::vertex ? "vertex" : "pair"; }

inline SamplingMethod parse_method(std::string_view s) {
	if (s == "vertex") return SamplingMethod::vertex;
	if (s == "pair") return SamplingMethod::pair;
	throw ParameterError("unknown sampling method '" + std::string(s) + "'");
}

/// One draw of an adaptive run. For vertex sampling `v` repeats the source.
struct SampleRecord {
	vertex_t u = 0;
	vertex_t v = 0;
	double contribution = 0.0;
	std::size_t bfs_cost = 0;
};

struct SamplerOptions {
	double c = 1.0;
	std::uint64_t seed = 0;
	/// Defaults to n^2 draws.
	std::optional<std::uint64_t> max_samples;
	bool keep_trace = false;
};

/// Outcome of one sampling run.
struct EstimateRun {
	SamplingMethod method = SamplingMethod::vertex;
	vertex_t target = 0;
	double estimate = 0.0;
	std::uint64_t k = 0;
	double sum = 0.0;
	double c = 0.0;
	std::uint64_t seed = 0;
	std::uint64_t max_samples = 0;
	/// The run stopped on max_samples rather than on S > c*n.
	bool capped = false;
	/// Total vertices settled by all searches of the run.
	std::uint64_t bfs_cost = 0;
	std::vector<SampleRecord> trace;
};

/// Guarantee triple of the refined analysis: with probability at least
/// success_prob_lb the estimate is within `factor` of BC using `samples` draws.
struct GuaranteeParams {
	double success_prob_lb = 0.0;
	double factor = 0.0;
	double samples = 0.0;
};

namespace detail {

inline void check_guarantee_domain(double epsilon, double t, double c) {
	if (!(epsilon > 0.0 && epsilon < 0.5)) throw ParameterError("epsilon must lie in (0, 1/2)");
	if (!(t >= 1.0)) throw ParameterError("t must be >= 1");
	if (!(c >= 1.0)) throw ParameterError("c must be >= 1");
}

inline double success_lower_bound(double epsilon, double c) {
	const double q = 2.0 * c - 1.0;
	return 1.0 - (1.0 + 1.0 / (q * q)) * epsilon;
}

inline std::uint64_t resolve_cap(const SamplerOptions& opt, std::size_t n) {
	if (opt.max_samples) {
		if (*opt.max_samples < 1) throw ParameterError("max_samples must be >= 1");
		return *opt.max_samples;
	}
	return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n);
}

inline void check_run_inputs(const Graph& g, vertex_t target, double c) {
	if (!(c >= 1.0)) throw ParameterError("c must be >= 1");
	if (g.vertex_count() < 2) throw ParameterError("graph needs at least two vertices");
	if (target >= g.vertex_count()) throw ParameterError("target vertex out of range");
}

// Adaptive loop shared by both estimators: draw until S > c*n or the cap, then scale.
template <class Draw>
EstimateRun run_adaptive(EstimateRun run, double n, double scale, bool keep_trace, Draw&& draw) {
	const double threshold = run.c * n;
	while (run.sum <= threshold && run.k < run.max_samples) {
		SampleRecord s = draw();
		run.sum += s.contribution;
		run.bfs_cost += s.bfs_cost;
		++run.k;
		if (keep_trace) run.trace.push_back(s);
	}
	run.capped = run.sum <= threshold;
	run.estimate = scale * run.sum / static_cast<double>(run.k);
	return run;
}

// Non-adaptive loop: exactly k draws.
template <class Draw>
EstimateRun run_fixed(EstimateRun run, std::uint64_t k, double scale, Draw&& draw) {
	if (k < 1) throw ParameterError("sample count must be >= 1");
	run.max_samples = k;
	for (; run.k < k; ++run.k) {
		SampleRecord s = draw();
		run.sum += s.contribution;
		run.bfs_cost += s.bfs_cost;
	}
	run.estimate = scale * run.sum / static_cast<double>(run.k);
	return run;
}

} // namespace detail

} // namespace bcsample
