#pragma once

#include "bcsample/error.hpp"
#include "bcsample/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace bcsample {

// Stick-breaking model of per-sample dependencies: the interval (0, A) is cut at
// pieces-1 uniform points and one sample is the length of a single piece. For
// vertex sampling pieces = n; for pair sampling pieces = n(n-1).

enum class ModelKind { vertex, pair };

struct ModelDist {
	std::uint64_t pieces = 2;
	double A = 1.0;
	ModelKind kind = ModelKind::vertex;
};

inline ModelDist vertex_model(std::uint64_t n, double A) { return {n, A, ModelKind::vertex}; }
inline ModelDist pair_model(std::uint64_t n, double A) { return {n * (n - 1), A, ModelKind::pair}; }

namespace detail {

inline void check_dist(const ModelDist& d) {
	if (!(d.A > 0.0)) throw ParameterError("model: A must be > 0");
	if (d.pieces < 2) throw ParameterError("model: pieces must be >= 2");
}

} // namespace detail

/// Pr[X > x] = (1 - x/A)^(pieces-1) on (0, A).
inline double survival(const ModelDist& d, double x) {
	detail::check_dist(d);
	if (x <= 0.0) return 1.0;
	if (x >= d.A) return 0.0;
	return std::exp(static_cast<double>(d.pieces - 1) * std::log1p(-x / d.A));
}

/// Pr[X <= x] = 1 - (1 - x/A)^(pieces-1) on (0, A); 0 below, 1 above.
inline double cdf(const ModelDist& d, double x) {
	detail::check_dist(d);
	if (x <= 0.0) return 0.0;
	if (x >= d.A) return 1.0;
	return -std::expm1(static_cast<double>(d.pieces - 1) * std::log1p(-x / d.A));
}

/// (pieces-1)/A * (1 - x/A)^(pieces-2) on (0, A), zero elsewhere.
inline double pdf(const ModelDist& d, double x) {
	detail::check_dist(d);
	if (x <= 0.0 || x >= d.A) return 0.0;
	const double p = static_cast<double>(d.pieces);
	return (p - 1.0) / d.A * std::exp((p - 2.0) * std::log1p(-x / d.A));
}

struct Moments {
	double mean = 0.0;
	double variance = 0.0;
	double second_moment = 0.0;
};

/// E[X] = A/p, E[X^2] = 2A^2/(p(p+1)), Var[X] = (p-1) A^2 / (p^2 (p+1)).
inline Moments moments(const ModelDist& d) {
	detail::check_dist(d);
	const double p = static_cast<double>(d.pieces);
	const double a2 = d.A * d.A;
	return {d.A / p, (p - 1.0) * a2 / (p * p * (p + 1.0)), 2.0 * a2 / (p * (p + 1.0))};
}

/// Cuts (0, A) at pieces-1 uniform points and returns the piece lengths in order.
/// The last piece is A minus the others, so the lengths sum to A.
template <class Rng>
std::vector<double> stick_breaking_sample(std::uint64_t pieces, double A, Rng& rng) {
	if (pieces < 1) throw ParameterError("stick_breaking_sample: pieces must be >= 1");
	if (!(A > 0.0)) throw ParameterError("stick_breaking_sample: A must be > 0");
	std::uniform_real_distribution<double> unit(0.0, A);
	std::vector<double> cuts(pieces - 1);
	for (auto& c : cuts) c = unit(rng);
	std::sort(cuts.begin(), cuts.end());

	std::vector<double> lengths(pieces);
	double prev = 0.0;
	double used = 0.0;
	for (std::size_t i = 0; i + 1 < pieces; ++i) {
		lengths[i] = cuts[i] - prev;
		used += lengths[i];
		prev = cuts[i];
	}
	lengths[pieces - 1] = A - used;
	return lengths;
}

/// Length of the first piece of a fresh stick-breaking draw, i.e. the smallest of
/// the pieces-1 cut points. Same law as stick_breaking_sample(...)[0] without sorting.
template <class Rng>
double draw_model_variate(const ModelDist& d, Rng& rng) {
	std::uniform_real_distribution<double> unit(0.0, 1.0);
	double lo = 1.0;
	for (std::uint64_t i = 1; i < d.pieces; ++i) lo = std::min(lo, unit(rng));
	return d.A * lo;
}

/// eps^3 / (c - eps)^2: bound on Pr[sum of the first k samples >= c n] at
/// k = eps (n^2/A)^{2/3} (vertex) or eps (n^2 (n-1)/A)^{2/3} (pair).
inline double bound_termination(double epsilon, double c) {
	if (!(epsilon > 0.0) || !(epsilon < c)) throw ParameterError("bound_termination: need 0 < epsilon < c");
	const double gap = c - epsilon;
	return epsilon * epsilon * epsilon / (gap * gap);
}

/// (1/(eps d^2)) (A / N)^{2/3} with N = n^2 (vertex) or n^2 (n-1) (pair): bound on
/// Pr[|scaled mean - A| >= d A]. May exceed 1.
inline double bound_deviation(double epsilon, double d, double A, std::uint64_t n, ModelKind kind) {
	const double nn = static_cast<double>(n);
	if (!(epsilon > 0.0) || !(d > 0.0)) throw ParameterError("bound_deviation: epsilon and d must be > 0");
	if (n < 2) throw ParameterError("bound_deviation: n must be >= 2");
	if (!(A > 0.0) || A > nn * nn) throw ParameterError("bound_deviation: need 0 < A <= n^2");
	const double denom = kind == ModelKind::vertex ? nn * nn : nn * nn * (nn - 1.0);
	return std::cbrt((A / denom) * (A / denom)) / (epsilon * d * d);
}

namespace detail {

inline double bound_k(double epsilon, double A, std::uint64_t n, ModelKind kind) {
	const double nn = static_cast<double>(n);
	const double N = kind == ModelKind::vertex ? nn * nn : nn * nn * (nn - 1.0);
	return epsilon * std::cbrt((N / A) * (N / A));
}

} // namespace detail

/// Smallest whole k with k >= eps (N / A)^{2/3}, the deviation bound's requirement.
inline std::uint64_t bound_sample_count(double epsilon, double A, std::uint64_t n, ModelKind kind) {
	const double k = detail::bound_k(epsilon, A, n, kind);
	return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(k - 1e-9)));
}

/// Whole draws taken "within" eps (N / A)^{2/3} samples, for the termination bound.
/// Zero when the real-valued count is below one.
inline std::uint64_t termination_sample_count(double epsilon, double A, std::uint64_t n, ModelKind kind) {
	return static_cast<std::uint64_t>(std::floor(detail::bound_k(epsilon, A, n, kind) + 1e-9));
}

/// An empirical frequency together with its binomial standard error.
struct Frequency {
	double value = 0.0;
	double std_error = 0.0;
	std::uint64_t trials = 0;
};

inline Frequency make_frequency(std::uint64_t hits, std::uint64_t trials) {
	const double p = trials ? static_cast<double>(hits) / static_cast<double>(trials) : 0.0;
	const double se = trials ? std::sqrt(p * (1.0 - p) / static_cast<double>(trials)) : 0.0;
	return {p, se, trials};
}

struct StoppingOptions {
	double epsilon = 0.25;
	std::vector<double> deviations{0.5, 1.0, 2.0};
	/// Overrides both sample counts when nonzero.
	std::uint64_t k = 0;
	unsigned workers = default_workers();
};

struct StoppingReport {
	/// Draws per run for the deviation events (bound_sample_count).
	std::uint64_t k = 0;
	/// Prefix length for the termination event (termination_sample_count).
	std::uint64_t k_termination = 0;
	/// Runs whose accumulated sum exceeded c*n within k_termination samples.
	Frequency termination;
	/// Per entry of StoppingOptions::deviations: |pieces/k * S_k - A| >= d A.
	std::vector<Frequency> deviation;
	double variate_mean = 0.0;
	double variate_mean_se = 0.0;
};

// Monte Carlo check of the stopping-rule bounds under the stick-breaking law.
// Each run draws k i.i.d. variates; runs are split into a fixed number of shards
// with their own seeded engines and merged by summation.
inline StoppingReport simulate_stopping(const ModelDist& dist, double c, std::uint64_t n, std::uint64_t seed,
										std::uint64_t runs, const StoppingOptions& opt = {}) {
	detail::check_dist(dist);
	if (runs < 1) throw ParameterError("simulate_stopping: runs must be >= 1");
	const std::uint64_t k = opt.k ? opt.k : bound_sample_count(opt.epsilon, dist.A, n, dist.kind);
	const std::uint64_t k_term = opt.k ? opt.k : termination_sample_count(opt.epsilon, dist.A, n, dist.kind);
	const double threshold = c * static_cast<double>(n);
	const double scale = static_cast<double>(dist.pieces);
	const std::size_t nd = opt.deviations.size();

	struct Shard {
		std::uint64_t terminated = 0;
		std::vector<std::uint64_t> deviated;
		double sum = 0.0;
		double sum_sq = 0.0;
	};
	constexpr std::size_t shards = 16;
	std::vector<Shard> parts(shards);

	parallel_for_tasks(shards, opt.workers, [&](std::size_t s) {
		std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
						  static_cast<std::uint32_t>(s)};
		std::mt19937_64 rng(seq);
		Shard part;
		part.deviated.assign(nd, 0);
		const std::uint64_t begin = s * runs / shards;
		const std::uint64_t end = (s + 1) * runs / shards;
		for (std::uint64_t r = begin; r < end; ++r) {
			double total = 0.0;
			bool terminated = false;
			for (std::uint64_t i = 0; i < k; ++i) {
				const double x = draw_model_variate(dist, rng);
				total += x;
				part.sum += x;
				part.sum_sq += x * x;
				if (i + 1 == k_term && total > threshold) terminated = true;
			}
			if (terminated) ++part.terminated;
			const double estimate = scale * total / static_cast<double>(k);
			for (std::size_t j = 0; j < nd; ++j)
				if (std::abs(estimate - dist.A) >= opt.deviations[j] * dist.A) ++part.deviated[j];
		}
		parts[s] = std::move(part);
	});

	StoppingReport out;
	out.k = k;
	out.k_termination = k_term;
	std::uint64_t terminated = 0;
	std::vector<std::uint64_t> deviated(nd, 0);
	double sum = 0.0, sum_sq = 0.0;
	for (const auto& p : parts) {
		terminated += p.terminated;
		for (std::size_t j = 0; j < nd; ++j) deviated[j] += p.deviated[j];
		sum += p.sum;
		sum_sq += p.sum_sq;
	}
	out.termination = make_frequency(terminated, runs);
	for (std::size_t j = 0; j < nd; ++j) out.deviation.push_back(make_frequency(deviated[j], runs));
	const double count = static_cast<double>(runs * k);
	out.variate_mean = sum / count;
	const double var = std::max(0.0, sum_sq / count - out.variate_mean * out.variate_mean);
	out.variate_mean_se = std::sqrt(var / count);
	return out;
}

} // namespace bcsample
