#pragma once

#include "bcsample/brandes.hpp"
#include "bcsample/model.hpp"
#include "bcsample/pair_sampler.hpp"
#include "bcsample/stats.hpp"
#include "bcsample/vertex_sampler.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace bcsample {

// Numerical validation of the stick-breaking model: every closed form is compared
// against quadrature, finite differences or Monte Carlo, and every bound against
// hand-computed values and simulation.

struct CheckRow {
	std::string formula;
	double analytic = 0.0;
	double empirical = 0.0;
	double std_error = 0.0;
	bool pass = false;
};

struct ModelCheckGrid {
	std::vector<std::uint64_t> vertex_pieces{2, 3, 10, 100};
	std::vector<std::uint64_t> pair_n{3, 5, 8};
	std::vector<double> masses{1.0, 5.0, 37.5};
	std::vector<std::uint64_t> ks_pieces{2, 3, 10, 100};
	std::uint64_t ks_samples = 1'000'000;
	std::uint64_t stopping_runs = 100'000;
	std::vector<double> epsilons{0.1, 0.25, 0.4};
	std::vector<double> cs{1.0, 2.0};
	std::vector<double> deviations{0.5, 1.0, 2.0};

	static ModelCheckGrid standard() { return {}; }

	static ModelCheckGrid quick() {
		ModelCheckGrid g;
		g.vertex_pieces = {2, 3, 10};
		g.pair_n = {3, 5};
		g.masses = {1.0, 5.0};
		g.ks_pieces = {2, 3};
		g.ks_samples = 200'000;
		g.stopping_runs = 20'000;
		g.epsilons = {0.25};
		g.cs = {1.0};
		return g;
	}
};

struct ModelCheckOptions {
	std::uint64_t seed = 1;
	unsigned workers = default_workers();
	/// Rows whose id starts with this prefix get their analytic value scaled by 1.01.
	/// Exercises the failure path of the report.
	std::optional<std::string> corrupt;
};

namespace detail {

inline std::string model_label(const ModelDist& d) {
	std::ostringstream os;
	os << (d.kind == ModelKind::vertex ? "vertex" : "pair") << ";pieces=" << d.pieces << ";A=" << d.A;
	return os.str();
}

inline double rel_err(double a, double b) {
	const double scale = std::max(std::abs(a), std::abs(b));
	return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

template <class F>
double integrate(F&& f, double lo, double hi) {
	using boost::math::quadrature::gauss_kronrod;
	double err = 0.0;
	return gauss_kronrod<double, 61>::integrate(f, lo, hi, 20, 1e-13, &err);
}

class RowSink {
  public:
	explicit RowSink(const ModelCheckOptions& opt) : m_opt(opt) {}

	double analytic(const std::string& id, double value) const {
		if (m_opt.corrupt && id.rfind(*m_opt.corrupt, 0) == 0) return value * 1.01;
		return value;
	}

	void relative(const std::string& id, double exact, double observed, double tol) {
		const double a = analytic(id, exact);
		m_rows.push_back({id, a, observed, 0.0, rel_err(a, observed) <= tol});
	}

	void absolute(const std::string& id, double exact, double observed, double tol) {
		const double a = analytic(id, exact);
		m_rows.push_back({id, a, observed, 0.0, std::abs(a - observed) <= tol});
	}

	void within_se(const std::string& id, double exact, double observed, double se, double sigmas = 3.0) {
		const double a = analytic(id, exact);
		m_rows.push_back({id, a, observed, se, std::abs(a - observed) <= sigmas * se});
	}

	// observed frequency must not exceed the bound by more than 3 standard errors.
	void at_most(const std::string& id, double bound, const Frequency& f) {
		const double a = analytic(id, bound);
		m_rows.push_back({id, a, f.value, f.std_error, f.value <= a + 3.0 * f.std_error});
	}

	// Callers that compare against the analytic value apply analytic() themselves.
	void predicate(const std::string& id, double analytic_value, double observed, bool ok) {
		m_rows.push_back({id, analytic_value, observed, 0.0, ok});
	}

	std::vector<CheckRow> take() { return std::move(m_rows); }

  private:
	const ModelCheckOptions& m_opt;
	std::vector<CheckRow> m_rows;
};

inline void check_closed_forms(const ModelDist& d, RowSink& out) {
	const std::string tag = "[" + model_label(d) + "]";
	const Moments mom = moments(d);

	const double mass = integrate([&](double x) { return pdf(d, x); }, 0.0, d.A);
	out.absolute("pdf_integral" + tag, 1.0, mass, 1e-6);
	const double first = integrate([&](double x) { return x * pdf(d, x); }, 0.0, d.A);
	out.relative("mean_quadrature" + tag, mom.mean, first, 1e-6);
	const double second = integrate([&](double x) { return x * x * pdf(d, x); }, 0.0, d.A);
	out.relative("second_moment_quadrature" + tag, mom.second_moment, second, 1e-6);
	out.relative("variance_identity" + tag, mom.variance, mom.second_moment - mom.mean * mom.mean, 1e-9);

	// d/dx cdf = -d/dx survival; differencing the survival function avoids the
	// cancellation of 1 - (...) near x = A. Step scales with the local curvature.
	double worst = 0.0, worst_pdf = 0.0, worst_num = 0.0;
	const double p = static_cast<double>(d.pieces);
	for (int i = 0; i < 1000; ++i) {
		const double x = d.A * (0.01 + 0.98 * i / 999.0);
		const double h = 1e-4 * (d.A - x) / p;
		const double num = (survival(d, x - h) - survival(d, x + h)) / (2.0 * h);
		const double exact = pdf(d, x);
		const double e = rel_err(exact, num);
		if (e >= worst) {
			worst = e;
			worst_pdf = exact;
			worst_num = num;
		}
	}
	const double reference = out.analytic("cdf_derivative" + tag, worst_pdf);
	out.predicate("cdf_derivative" + tag, reference, worst_num, rel_err(reference, worst_num) <= 1e-4);

	bool monotone = cdf(d, 0.0) == 0.0 && cdf(d, d.A) == 1.0;
	double prev = 0.0;
	for (int i = 0; i <= 1000; ++i) {
		const double f = cdf(d, d.A * i / 1000.0);
		monotone = monotone && f >= prev;
		prev = f;
	}
	out.predicate("cdf_shape" + tag, 1.0, cdf(d, d.A), monotone);
}

inline void check_stick_breaking(std::uint64_t pieces, std::uint64_t samples, std::uint64_t seed, RowSink& out) {
	const ModelDist d{pieces, 1.0, ModelKind::vertex};
	const std::string tag = "[pieces=" + std::to_string(pieces) + "]";
	std::mt19937_64 rng(seed);
	std::vector<double> first(samples);
	double worst_sum = 0.0;
	for (auto& x : first) {
		auto lengths = stick_breaking_sample(pieces, d.A, rng);
		double total = 0.0;
		for (double l : lengths) total += l;
		worst_sum = std::max(worst_sum, std::abs(total - d.A));
		x = lengths.front();
	}
	out.predicate("stick_conservation" + tag, 0.0, worst_sum, worst_sum <= 1e-12);

	const Moments mom = moments(d);
	const double m = stats::mean(first);
	out.within_se("stick_mean" + tag, mom.mean, m, stats::standard_error(first));

	// Standard error of the sample variance from the fourth central moment.
	double m2 = 0.0, m4 = 0.0;
	for (double x : first) {
		const double c = (x - m) * (x - m);
		m2 += c;
		m4 += c * c;
	}
	const double ns = static_cast<double>(samples);
	m2 /= ns;
	m4 /= ns;
	out.within_se("stick_variance" + tag, mom.variance, m2, std::sqrt(std::max(0.0, m4 - m2 * m2) / ns));

	std::sort(first.begin(), first.end());
	const double ks = stats::ks_statistic(first, [&](double x) { return cdf(d, x); });
	const double limit = out.analytic("stick_ks" + tag, 0.005);
	out.predicate("stick_ks" + tag, limit, ks, ks < limit);
}

inline void check_bound_values(RowSink& out) {
	const double exact = 1e-12;
	out.relative("bound_termination[eps=0.25;c=1]", 1.0 / 36.0, bound_termination(0.25, 1.0), exact);
	out.relative("bound_termination[eps=0.5;c=1]", 0.5, bound_termination(0.5, 1.0), exact);
	out.relative("bound_termination[eps=0.1;c=2]", 0.001 / 3.61, bound_termination(0.1, 2.0), exact);
	out.relative("bound_deviation[eps=0.25;d=1;A=n^2]", 4.0, bound_deviation(0.25, 1.0, 100.0 * 100.0, 100, ModelKind::vertex), exact);
	out.relative("bound_deviation[eps=0.5;d=2;A=n^2/8]", 0.125, bound_deviation(0.5, 2.0, 10000.0 / 8.0, 100, ModelKind::vertex), exact);

	const auto t3 = theorem3_params(0.25, 8.0, 1.0);
	out.relative("theorem3_success[eps=0.25;t=8;c=1]", 0.5, t3.success_prob_lb, exact);
	out.relative("theorem3_factor[eps=0.25;t=8;c=1]", 2.0, t3.factor, exact);
	out.relative("theorem3_samples[eps=0.25;t=8;c=1]", 1.0, t3.samples, exact);
	const auto t4 = theorem4_params(0.1, 1000.0, 1001, 1.0);
	out.relative("theorem4_samples[eps=0.1;t=1000;n=1001]", 100.0, t4.samples, exact);
	out.relative("theorem4_factor[eps=0.1;t=1000;n=1001]", 0.1, t4.factor, exact);
	out.relative("theorem4_success[eps=0.1;t=1000;n=1001]", 0.8, t4.success_prob_lb, exact);

	// eps^3/(c-eps)^2 <= eps/(2c-1)^2 for eps < 1/2.
	double worst = -1.0;
	for (double c = 1.0; c <= 5.0; c += 0.25)
		for (double eps = 0.01; eps < 0.5; eps += 0.01) {
			const double q = 2.0 * c - 1.0;
			worst = std::max(worst, bound_termination(eps, c) - eps / (q * q));
		}
	out.predicate("termination_relaxation", 0.0, worst, worst <= 1e-15);

	// Var[X] <= A and E[X^2] <= 2A whenever A <= n^2.
	double var_ratio = 0.0, second_ratio = 0.0;
	for (std::uint64_t n = 2; n <= 100'000; n = n * 3 / 2 + 1)
		for (double frac : {1e-6, 1e-3, 0.1, 0.5, 1.0}) {
			const double nn = static_cast<double>(n);
			const ModelDist d = vertex_model(n, frac * nn * nn);
			const Moments mom = moments(d);
			var_ratio = std::max(var_ratio, mom.variance / d.A);
			second_ratio = std::max(second_ratio, mom.second_moment / (2.0 * d.A));
		}
	out.predicate("variance_le_A", 1.0, var_ratio, var_ratio <= 1.0);
	out.predicate("second_moment_le_2A", 1.0, second_ratio, second_ratio <= 1.0);
}

inline void check_stopping(const ModelDist& d, std::uint64_t n, const ModelCheckGrid& grid,
						   const ModelCheckOptions& opt, std::uint64_t seed, RowSink& out) {
	for (double eps : grid.epsilons)
		for (double c : grid.cs) {
			StoppingOptions so;
			so.epsilon = eps;
			so.deviations = grid.deviations;
			so.workers = opt.workers;
			const auto rep = simulate_stopping(d, c, n, seed++, grid.stopping_runs, so);
			std::ostringstream tag, ttag;
			tag << "[" << model_label(d) << ";eps=" << eps << ";c=" << c << ";k=" << rep.k << "]";
			ttag << "[" << model_label(d) << ";eps=" << eps << ";c=" << c << ";k=" << rep.k_termination << "]";
			out.at_most("sim_termination" + ttag.str(), bound_termination(eps, c), rep.termination);
			for (std::size_t j = 0; j < grid.deviations.size(); ++j) {
				std::ostringstream dtag;
				dtag << "sim_deviation" << tag.str() << "[d=" << grid.deviations[j] << "]";
				out.at_most(dtag.str(), bound_deviation(eps, grid.deviations[j], d.A, n, d.kind), rep.deviation[j]);
			}
			out.within_se("sim_mean" + tag.str(), moments(d).mean, rep.variate_mean, rep.variate_mean_se);
		}
}

} // namespace detail

/// Runs every model check on `grid` and returns one row per comparison.
inline std::vector<CheckRow> run_model_check(const ModelCheckGrid& grid, const ModelCheckOptions& opt = {}) {
	detail::RowSink out(opt);
	std::vector<ModelDist> dists;
	for (auto p : grid.vertex_pieces)
		for (double A : grid.masses) dists.push_back({p, A, ModelKind::vertex});
	for (auto n : grid.pair_n)
		for (double A : grid.masses) dists.push_back(pair_model(n, A));
	for (const auto& d : dists) detail::check_closed_forms(d, out);

	std::uint64_t seed = opt.seed;
	for (auto p : grid.ks_pieces) detail::check_stick_breaking(p, grid.ks_samples, seed++, out);

	detail::check_bound_values(out);

	// Bound simulations on a 32-vertex vertex model and a 16-vertex pair model, with
	// masses spanning high and low BC targets (A <= n^2 in both cases).
	for (double frac : {0.5, 0.1, 0.02}) {
		const std::uint64_t n = 32;
		detail::check_stopping(vertex_model(n, frac * n * n), n, grid, opt, seed, out);
		seed += 100;
	}
	for (double frac : {0.5, 0.1}) {
		const std::uint64_t n = 16;
		detail::check_stopping(pair_model(n, frac * n * n), n, grid, opt, seed, out);
		seed += 100;
	}
	return out.take();
}

inline bool all_pass(const std::vector<CheckRow>& rows) {
	return std::all_of(rows.begin(), rows.end(), [](const CheckRow& r) { return r.pass; });
}

/// CSV with header `formula,analytic,empirical,std_error,pass`.
inline void write_check_csv(const std::vector<CheckRow>& rows, std::ostream& out) {
	out << "formula,analytic,empirical,std_error,pass\n";
	for (const auto& r : rows)
		out << r.formula << ',' << detail::format_double(r.analytic) << ',' << detail::format_double(r.empirical) << ','
			<< detail::format_double(r.std_error) << ',' << (r.pass ? "pass" : "fail") << '\n';
}

} // namespace bcsample
