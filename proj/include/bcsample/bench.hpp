#pragma once

#include "bcsample/brandes.hpp"
#include "bcsample/estimate.hpp"
#include "bcsample/pair_sampler.hpp"
#include "bcsample/parallel.hpp"
#include "bcsample/stats.hpp"
#include "bcsample/vertex_sampler.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#ifndef BCSAMPLE_VERSION
#define BCSAMPLE_VERSION "0.0.0"
#endif

namespace bcsample {

inline constexpr const char* kToolVersion = BCSAMPLE_VERSION;

inline EstimateRun run_estimator(const Graph& g, vertex_t target, SamplingMethod method, const SamplerOptions& opt) {
	return method == SamplingMethod::vertex ? estimate_bc_vertex(g, target, opt) : estimate_bc_pair(g, target, opt);
}

// ---------------------------------------------------------------------------
// Exact values

/// Reads a `vertex_id,bc` CSV written by write_bc_csv for the same graph.
inline BcVector read_bc_csv(const Graph& g, std::istream& in) {
	BcVector out{std::vector<double>(g.vertex_count(), 0.0)};
	std::vector<bool> seen(g.vertex_count(), false);
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		if (lineno == 1) {
			if (detail::trim(line) != "vertex_id,bc") throw ParseError(lineno, "expected header 'vertex_id,bc'");
			continue;
		}
		if (detail::trim(line).empty()) continue;
		const auto comma = line.find(',');
		if (comma == std::string::npos) throw ParseError(lineno, "expected 'vertex_id,bc'");
		const auto id = detail::parse_id(detail::trim(std::string_view(line).substr(0, comma)));
		if (!id) throw ParseError(lineno, "bad vertex id");
		const auto v = g.index_of(*id);
		if (!v) throw DataError("bc table names vertex " + std::to_string(*id) + " that is not in the graph");
		out.bc[*v] = std::stod(line.substr(comma + 1));
		seen[*v] = true;
	}
	if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw DataError("bc table does not cover every vertex");
	return out;
}

/// Exact BC, loaded from `cache_path` when it exists and written there otherwise.
/// An unwritable cache is ignored.
inline BcVector exact_bc_cached(const Graph& g, const std::string& cache_path) {
	if (!cache_path.empty()) {
		std::ifstream in(cache_path);
		if (in) return read_bc_csv(g, in);
	}
	BcVector bc = brandes_bc(g);
	if (!cache_path.empty()) {
		std::ofstream out(cache_path);
		if (out) write_bc_csv(g, bc, out);
	}
	return bc;
}

/// Vertex with the largest exact BC; ties go to the smallest index.
inline vertex_t highest_bc_vertex(const BcVector& bc) {
	return static_cast<vertex_t>(std::max_element(bc.bc.begin(), bc.bc.end()) - bc.bc.begin());
}

// ---------------------------------------------------------------------------
// Run manifests

/// Everything needed to re-execute one estimator call, plus what it produced.
struct RunManifest {
	std::string dataset;
	external_id target = 0;
	SamplingMethod method = SamplingMethod::vertex;
	double c = 1.0;
	std::uint64_t seed = 0;
	std::uint64_t max_samples = 0;
	double estimate = 0.0;
	std::uint64_t k = 0;
	double sum = 0.0;
	bool capped = false;
	std::uint64_t bfs_cost = 0;
	std::string tool_version = kToolVersion;
	double wall_seconds = 0.0;
};

inline void to_json(nlohmann::json& j, const RunManifest& m) {
	j = nlohmann::json{{"dataset", m.dataset},   {"target", m.target},     {"method", std::string(to_string(m.method))},
					   {"c", m.c},               {"seed", m.seed},         {"max_samples", m.max_samples},
					   {"estimate", m.estimate}, {"k", m.k},               {"S", m.sum},
					   {"capped", m.capped},     {"bfs_cost", m.bfs_cost}, {"tool_version", m.tool_version},
					   {"wall_seconds", m.wall_seconds}};
}

inline void from_json(const nlohmann::json& j, RunManifest& m) {
	j.at("dataset").get_to(m.dataset);
	j.at("target").get_to(m.target);
	m.method = parse_method(j.at("method").get<std::string>());
	j.at("c").get_to(m.c);
	j.at("seed").get_to(m.seed);
	j.at("max_samples").get_to(m.max_samples);
	j.at("estimate").get_to(m.estimate);
	j.at("k").get_to(m.k);
	j.at("S").get_to(m.sum);
	j.at("capped").get_to(m.capped);
	m.bfs_cost = j.value("bfs_cost", std::uint64_t{0});
	m.tool_version = j.value("tool_version", std::string{});
	m.wall_seconds = j.value("wall_seconds", 0.0);
}

inline vertex_t resolve_target(const Graph& g, external_id id) {
	auto v = g.index_of(id);
	if (!v) throw DataError("vertex " + std::to_string(id) + " is not in the graph");
	return *v;
}

/// Runs one estimator call and records it.
inline RunManifest record_run(const Graph& g, const std::string& dataset, external_id target, SamplingMethod method,
							  const SamplerOptions& opt) {
	const auto start = std::chrono::steady_clock::now();
	const EstimateRun run = run_estimator(g, resolve_target(g, target), method, opt);
	const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
	RunManifest m;
	m.dataset = dataset;
	m.target = target;
	m.method = method;
	m.c = run.c;
	m.seed = run.seed;
	m.max_samples = run.max_samples;
	m.estimate = run.estimate;
	m.k = run.k;
	m.sum = run.sum;
	m.capped = run.capped;
	m.bfs_cost = run.bfs_cost;
	m.wall_seconds = wall.count();
	return m;
}

/// Re-executes a manifest on g; true when estimate, k and S match bit for bit.
inline bool replay_matches(const Graph& g, const RunManifest& m, EstimateRun* replayed = nullptr) {
	SamplerOptions opt;
	opt.c = m.c;
	opt.seed = m.seed;
	opt.max_samples = m.max_samples;
	const EstimateRun run = run_estimator(g, resolve_target(g, m.target), m.method, opt);
	if (replayed) *replayed = run;
	return run.estimate == m.estimate && run.k == m.k && run.sum == m.sum;
}

// ---------------------------------------------------------------------------
// Sweeps

/// |estimate - exact| / exact.
inline double factor_difference(double estimate, double exact) { return std::abs(estimate / exact - 1.0); }

struct SweepConfig {
	SamplingMethod method = SamplingMethod::vertex;
	std::vector<double> c_grid;
	std::uint32_t replications = 10;
	std::uint64_t seed_base = 0;
	std::optional<std::uint64_t> max_samples;
	unsigned workers = default_workers();
};

/// 1.0, 1.5, ..., 5.0.
inline std::vector<double> make_c_grid(double lo, double hi, double step) {
	if (!(lo >= 1.0) || !(hi >= lo) || !(step > 0.0)) throw ParameterError("c grid needs 1 <= c-min <= c-max and c-step > 0");
	std::vector<double> grid;
	const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
	for (std::size_t i = 0; i <= count; ++i) grid.push_back(lo + static_cast<double>(i) * step);
	return grid;
}

struct SweepRecord {
	std::string dataset;
	external_id target = 0;
	SamplingMethod method = SamplingMethod::vertex;
	double c = 1.0;
	double exact = 0.0;
	double mean_k = 0.0;
	double mean_factor_diff = 0.0;
	std::uint32_t replications = 0;
	std::uint64_t seed_base = 0;
	std::uint32_t capped_runs = 0;
	double mean_settled_per_sample = 0.0;
	std::vector<EstimateRun> runs;

	double inv_factor_diff() const {
		return mean_factor_diff > 0.0 ? 1.0 / mean_factor_diff : std::numeric_limits<double>::infinity();
	}
};

/// Replication r of every grid point uses seed seed_base + r.
inline std::vector<SweepRecord> run_sweep(const Graph& g, const std::string& dataset, vertex_t target, double exact,
										  const SweepConfig& cfg) {
	if (!(exact > 0.0)) throw DataError("target has zero exact BC; the factor difference is undefined");
	if (cfg.replications < 1) throw ParameterError("replications must be >= 1");
	std::vector<SweepRecord> out;
	for (double c : cfg.c_grid) {
		SweepRecord rec;
		rec.dataset = dataset;
		rec.target = g.id_of(target);
		rec.method = cfg.method;
		rec.c = c;
		rec.exact = exact;
		rec.replications = cfg.replications;
		rec.seed_base = cfg.seed_base;
		rec.runs.resize(cfg.replications);
		parallel_for_tasks(cfg.replications, cfg.workers, [&](std::size_t r) {
			SamplerOptions opt;
			opt.c = c;
			opt.seed = cfg.seed_base + r;
			opt.max_samples = cfg.max_samples;
			rec.runs[r] = run_estimator(g, target, cfg.method, opt);
		});
		double k = 0.0, diff = 0.0, settled = 0.0;
		for (const auto& run : rec.runs) {
			k += static_cast<double>(run.k);
			diff += factor_difference(run.estimate, exact);
			settled += static_cast<double>(run.bfs_cost) / static_cast<double>(run.k);
			rec.capped_runs += run.capped ? 1 : 0;
		}
		const double reps = static_cast<double>(cfg.replications);
		rec.mean_k = k / reps;
		rec.mean_factor_diff = diff / reps;
		rec.mean_settled_per_sample = settled / reps;
		out.push_back(std::move(rec));
	}
	return out;
}

/// Header exactly `c,mean_k,mean_factor_diff,inv_factor_diff`.
inline void write_sweep_csv(const std::vector<SweepRecord>& records, std::ostream& out) {
	out << "c,mean_k,mean_factor_diff,inv_factor_diff\n";
	for (const auto& r : records)
		out << detail::format_double(r.c) << ',' << detail::format_double(r.mean_k) << ','
			<< detail::format_double(r.mean_factor_diff) << ',' << detail::format_double(r.inv_factor_diff()) << '\n';
}

/// Sweep parameters needed to regenerate the CSV rows; stored next to the CSV.
inline nlohmann::json sweep_metadata(const std::vector<SweepRecord>& records) {
	nlohmann::json j;
	if (records.empty()) return j;
	const auto& r0 = records.front();
	j["dataset"] = r0.dataset;
	j["target"] = r0.target;
	j["method"] = std::string(to_string(r0.method));
	j["exact_bc"] = r0.exact;
	j["replications"] = r0.replications;
	j["seed_base"] = r0.seed_base;
	j["seed_rule"] = "replication r uses seed_base + r at every c";
	j["tool_version"] = kToolVersion;
	auto& rows = j["rows"];
	for (const auto& r : records) {
		nlohmann::json row{{"c", r.c}, {"capped_runs", r.capped_runs}, {"mean_settled_per_sample", r.mean_settled_per_sample}};
		for (const auto& run : r.runs)
			row["runs"].push_back({{"seed", run.seed}, {"k", run.k}, {"S", run.sum}, {"estimate", run.estimate}});
		rows.push_back(std::move(row));
	}
	return j;
}

struct SweepSummary {
	double max_mean_k = 0.0;
	double k_linear_r2 = 0.0;
	double k_spearman = 0.0;
	double inv_diff_k_pearson = 0.0;
};

inline SweepSummary summarize_sweep(const std::vector<SweepRecord>& records) {
	std::vector<double> c, k, inv;
	for (const auto& r : records) {
		c.push_back(r.c);
		k.push_back(r.mean_k);
		inv.push_back(r.inv_factor_diff());
	}
	SweepSummary s;
	s.max_mean_k = k.empty() ? 0.0 : *std::max_element(k.begin(), k.end());
	s.k_linear_r2 = stats::linear_r2(c, k);
	s.k_spearman = stats::spearman(c, k);
	s.inv_diff_k_pearson = stats::pearson(k, inv);
	return s;
}

// ---------------------------------------------------------------------------
// Cost comparison

struct CostRecord {
	SamplingMethod method = SamplingMethod::vertex;
	double c = 1.0;
	std::uint32_t replications = 0;
	std::uint64_t seed_base = 0;
	double mean_k = 0.0;
	double mean_settled_per_sample = 0.0;
	double wall_seconds = 0.0;
};

/// Runs both estimators at the same c with seeds seed_base + r. Runs are sequential
/// so wall times are comparable.
inline std::vector<CostRecord> compare_cost(const Graph& g, vertex_t target, double c, std::uint32_t replications,
											std::uint64_t seed_base, std::optional<std::uint64_t> max_samples = {}) {
	if (replications < 1) throw ParameterError("replications must be >= 1");
	std::vector<CostRecord> out;
	for (auto method : {SamplingMethod::vertex, SamplingMethod::pair}) {
		CostRecord rec{method, c, replications, seed_base};
		double k = 0.0, settled = 0.0;
		const auto start = std::chrono::steady_clock::now();
		for (std::uint32_t r = 0; r < replications; ++r) {
			SamplerOptions opt;
			opt.c = c;
			opt.seed = seed_base + r;
			opt.max_samples = max_samples;
			const EstimateRun run = run_estimator(g, target, method, opt);
			k += static_cast<double>(run.k);
			settled += static_cast<double>(run.bfs_cost) / static_cast<double>(run.k);
		}
		const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - start;
		rec.mean_k = k / replications;
		rec.mean_settled_per_sample = settled / replications;
		rec.wall_seconds = wall.count();
		out.push_back(rec);
	}
	return out;
}

/// Header `method,c,replications,seed_base,mean_k,mean_settled_per_sample,wall_seconds,cheaper`.
/// `cheaper` marks the method with fewer settled vertices per sample. With
/// include_wall false the wall-time column is left empty so output is reproducible.
inline void write_cost_csv(const std::vector<CostRecord>& records, std::ostream& out, bool include_wall = true) {
	out << "method,c,replications,seed_base,mean_k,mean_settled_per_sample,wall_seconds,cheaper\n";
	auto best = std::min_element(records.begin(), records.end(), [](const CostRecord& a, const CostRecord& b) {
		return a.mean_settled_per_sample < b.mean_settled_per_sample;
	});
	for (auto it = records.begin(); it != records.end(); ++it) {
		out << to_string(it->method) << ',' << detail::format_double(it->c) << ',' << it->replications << ','
			<< it->seed_base << ',' << detail::format_double(it->mean_k) << ','
			<< detail::format_double(it->mean_settled_per_sample) << ',';
		if (include_wall) out << detail::format_double(it->wall_seconds);
		out << ',' << (it == best ? "yes" : "no") << '\n';
	}
}

} // namespace bcsample
