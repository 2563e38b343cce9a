#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <vector>

namespace bcsample::stats {

inline double mean(std::span<const double> xs) {
	if (xs.empty()) return 0.0;
	return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Unbiased sample variance.
inline double variance(std::span<const double> xs) {
	if (xs.size() < 2) return 0.0;
	const double m = mean(xs);
	double acc = 0.0;
	for (double x : xs) acc += (x - m) * (x - m);
	return acc / static_cast<double>(xs.size() - 1);
}

inline double standard_error(std::span<const double> xs) {
	if (xs.size() < 2) return 0.0;
	return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

inline double pearson(std::span<const double> xs, std::span<const double> ys) {
	const double mx = mean(xs), my = mean(ys);
	double sxy = 0.0, sxx = 0.0, syy = 0.0;
	for (std::size_t i = 0; i < xs.size(); ++i) {
		sxy += (xs[i] - mx) * (ys[i] - my);
		sxx += (xs[i] - mx) * (xs[i] - mx);
		syy += (ys[i] - my) * (ys[i] - my);
	}
	if (sxx == 0.0 || syy == 0.0) return 0.0;
	return sxy / std::sqrt(sxx * syy);
}

// Average ranks (1-based), ties share the mean rank.
inline std::vector<double> ranks(std::span<const double> xs) {
	std::vector<std::size_t> idx(xs.size());
	std::iota(idx.begin(), idx.end(), 0);
	std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
	std::vector<double> r(xs.size());
	for (std::size_t i = 0; i < idx.size();) {
		std::size_t j = i;
		while (j + 1 < idx.size() && xs[idx[j + 1]] == xs[idx[i]]) ++j;
		const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
		for (std::size_t q = i; q <= j; ++q) r[idx[q]] = avg;
		i = j + 1;
	}
	return r;
}

inline double spearman(std::span<const double> xs, std::span<const double> ys) {
	auto rx = ranks(xs);
	auto ry = ranks(ys);
	return pearson(rx, ry);
}

// Coefficient of determination of the least-squares line y = a + b x.
inline double linear_r2(std::span<const double> xs, std::span<const double> ys) {
	const double r = pearson(xs, ys);
	return r * r;
}

// Kolmogorov-Smirnov distance between the empirical cdf of `sorted` and `cdf`.
template <class Cdf>
double ks_statistic(std::span<const double> sorted, Cdf&& cdf) {
	const double n = static_cast<double>(sorted.size());
	double d = 0.0;
	for (std::size_t i = 0; i < sorted.size(); ++i) {
		const double f = cdf(sorted[i]);
		d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
	}
	return d;
}

} // namespace bcsample::stats
