// bcsample: exact and sampled betweenness centrality experiments.
//
//   bcsample exact        --dataset G.txt [--out bc.csv]
//   bcsample sweep        --dataset G.txt [--target ID] --method vertex|pair [--c-min 1 --c-max 5 --c-step 0.5]
//                         [--reps 10] [--seed 0] [--max-samples N] [--out sweep.csv]
//   bcsample model-check  [--grid standard|quick] [--runs N] [--seed 1] [--out check.csv]
//   bcsample compare-cost --dataset G.txt [--target ID] [--c 1] [--reps 10] [--seed 0] [--out cost.csv]
//   bcsample estimate     --dataset G.txt --target ID --method vertex|pair [--c 1] [--seed 0] [--manifest run.json]
//   bcsample replay       --manifest run.json [--dataset G.txt]
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 model-check failure.

#include "bcsample.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kModelCheck = 3 };

using bcsample::DataError;

class Output {
  public:
	explicit Output(const std::string& path) {
		if (path.empty() || path == "-") return;
		m_file = std::make_unique<std::ofstream>(path);
		if (!*m_file) throw DataError("cannot write '" + path + "'");
	}
	std::ostream& stream() { return m_file ? *m_file : std::cout; }

  private:
	std::unique_ptr<std::ofstream> m_file;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
	return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct DatasetArgs {
	std::string dataset;
	std::optional<bcsample::external_id> target;
	std::string exact_cache;
};

struct Dataset {
	bcsample::Graph graph;
	bcsample::BcVector exact;
	bcsample::vertex_t target = 0;
};

// Loads the graph, its exact BC (cached when requested) and resolves the target,
// defaulting to the highest-BC vertex.
Dataset load_with_exact(const DatasetArgs& args) {
	Dataset d;
	d.graph = bcsample::load_edge_list(args.dataset);
	const auto start = std::chrono::steady_clock::now();
	d.exact = bcsample::exact_bc_cached(d.graph, args.exact_cache);
	std::cerr << "# n=" << d.graph.vertex_count() << " m=" << d.graph.edge_count()
			  << " exact_bc_seconds=" << seconds_since(start) << '\n';
	d.target = args.target ? bcsample::resolve_target(d.graph, *args.target) : bcsample::highest_bc_vertex(d.exact);
	if (!(d.exact[d.target] > 0.0))
		throw DataError("target " + std::to_string(d.graph.id_of(d.target)) +
						" has zero exact BC; the factor difference is undefined");
	std::cerr << "# target=" << d.graph.id_of(d.target) << " exact_bc=" << d.exact[d.target] << '\n';
	return d;
}

void add_dataset_options(CLI::App* cmd, DatasetArgs& args, bool with_target) {
	cmd->add_option("--dataset", args.dataset, "SNAP edge list")->required();
	if (with_target) cmd->add_option("--target", args.target, "original vertex id (default: highest exact BC)");
	cmd->add_option("--exact-cache", args.exact_cache, "CSV cache of exact BC values, read if present else written");
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Exact and adaptive-sampling betweenness centrality"};
	app.require_subcommand(1);
	app.set_version_flag("--version", bcsample::kToolVersion);

	std::string out_path;
	DatasetArgs ds;

	auto* exact = app.add_subcommand("exact", "exact BC of every vertex (Brandes)");
	add_dataset_options(exact, ds, false);
	exact->add_option("--out", out_path, "output CSV (default stdout)");

	std::string method_name = "vertex";
	double c_min = 1.0, c_max = 5.0, c_step = 0.5;
	std::uint32_t reps = 10;
	std::uint64_t seed = 0;
	std::optional<std::uint64_t> max_samples;
	std::string meta_path;
	auto* sweep = app.add_subcommand("sweep", "c-sweep of one estimator against the exact value");
	add_dataset_options(sweep, ds, true);
	sweep->add_option("--method", method_name)->check(CLI::IsMember({"vertex", "pair"}));
	sweep->add_option("--c-min", c_min);
	sweep->add_option("--c-max", c_max);
	sweep->add_option("--c-step", c_step);
	sweep->add_option("--reps", reps, "replications per grid point");
	sweep->add_option("--seed", seed, "seed base; replication r uses seed + r");
	sweep->add_option("--max-samples", max_samples, "per-run draw cap (default n^2)");
	sweep->add_option("--out", out_path, "output CSV (default stdout)");
	sweep->add_option("--meta", meta_path, "JSON sidecar with seeds and per-run results (default <out>.meta.json)");

	std::string grid_name = "standard";
	std::optional<std::uint64_t> runs;
	std::optional<std::string> corrupt;
	std::uint64_t check_seed = 1;
	auto* check = app.add_subcommand("model-check", "validate the stick-breaking model formulas and bounds");
	check->add_option("--grid", grid_name)->check(CLI::IsMember({"standard", "default", "quick"}));
	check->add_option("--runs", runs, "Monte Carlo runs per stopping-rule configuration");
	check->add_option("--seed", check_seed);
	check->add_option("--out", out_path, "output CSV (default stdout)");
	check->add_option("--corrupt", corrupt, "perturb analytic values of rows with this id prefix")->group("");

	double c_value = 1.0;
	bool no_wall = false;
	auto* cost = app.add_subcommand("compare-cost", "settled vertices per sample, vertex vs pair sampling");
	add_dataset_options(cost, ds, true);
	cost->add_option("--c", c_value);
	cost->add_option("--reps", reps);
	cost->add_option("--seed", seed);
	cost->add_option("--max-samples", max_samples);
	cost->add_option("--out", out_path, "output CSV (default stdout)");
	cost->add_flag("--no-wall", no_wall, "leave the wall-time column empty");

	std::string manifest_path;
	bcsample::external_id target_id = 0;
	auto* estimate = app.add_subcommand("estimate", "one adaptive run, recorded as a manifest");
	estimate->add_option("--dataset", ds.dataset)->required();
	estimate->add_option("--target", target_id)->required();
	estimate->add_option("--method", method_name)->check(CLI::IsMember({"vertex", "pair"}));
	estimate->add_option("--c", c_value);
	estimate->add_option("--seed", seed);
	estimate->add_option("--max-samples", max_samples);
	estimate->add_option("--manifest", manifest_path, "write the run manifest here (default stdout)");

	auto* replay = app.add_subcommand("replay", "re-execute a manifest and compare bit for bit");
	replay->add_option("--manifest", manifest_path)->required();
	replay->add_option("--dataset", ds.dataset, "override the manifest's dataset path");

	try {
		app.parse(argc, argv);
	} catch (const CLI::Success& e) {
		return app.exit(e);
	} catch (const CLI::ParseError& e) {
		app.exit(e);
		return kUsage;
	}

	try {
		if (*exact) {
			auto g = bcsample::load_edge_list(ds.dataset);
			const auto start = std::chrono::steady_clock::now();
			auto bc = bcsample::brandes_bc(g);
			std::cerr << "n=" << g.vertex_count() << " m=" << g.edge_count() << " seconds=" << seconds_since(start) << '\n';
			Output out(out_path);
			bcsample::write_bc_csv(g, bc, out.stream());
		} else if (*sweep) {
			auto d = load_with_exact(ds);
			bcsample::SweepConfig cfg;
			cfg.method = bcsample::parse_method(method_name);
			cfg.c_grid = bcsample::make_c_grid(c_min, c_max, c_step);
			cfg.replications = reps;
			cfg.seed_base = seed;
			cfg.max_samples = max_samples;
			auto records = bcsample::run_sweep(d.graph, ds.dataset, d.target, d.exact[d.target], cfg);
			Output out(out_path);
			bcsample::write_sweep_csv(records, out.stream());
			if (meta_path.empty() && !out_path.empty() && out_path != "-") meta_path = out_path + ".meta.json";
			if (!meta_path.empty()) {
				Output meta(meta_path);
				meta.stream() << bcsample::sweep_metadata(records).dump(2) << '\n';
			}
			const auto s = bcsample::summarize_sweep(records);
			std::cerr << "# max_mean_k=" << s.max_mean_k << " k_vs_c_r2=" << s.k_linear_r2
					  << " inv_diff_vs_k_pearson=" << s.inv_diff_k_pearson << '\n';
		} else if (*check) {
			auto grid = grid_name == "quick" ? bcsample::ModelCheckGrid::quick() : bcsample::ModelCheckGrid::standard();
			if (runs) grid.stopping_runs = *runs;
			bcsample::ModelCheckOptions opt;
			opt.seed = check_seed;
			opt.corrupt = corrupt;
			const auto rows = bcsample::run_model_check(grid, opt);
			Output out(out_path);
			bcsample::write_check_csv(rows, out.stream());
			const auto failed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass; });
			std::cerr << "# " << rows.size() - static_cast<std::size_t>(failed) << "/" << rows.size() << " checks passed\n";
			if (failed) return kModelCheck;
		} else if (*cost) {
			auto d = load_with_exact(ds);
			auto records = bcsample::compare_cost(d.graph, d.target, c_value, reps, seed, max_samples);
			Output out(out_path);
			bcsample::write_cost_csv(records, out.stream(), !no_wall);
		} else if (*estimate) {
			auto g = bcsample::load_edge_list(ds.dataset);
			bcsample::SamplerOptions opt;
			opt.c = c_value;
			opt.seed = seed;
			opt.max_samples = max_samples;
			auto m = bcsample::record_run(g, ds.dataset, target_id, bcsample::parse_method(method_name), opt);
			Output out(manifest_path);
			out.stream() << nlohmann::json(m).dump(2) << '\n';
		} else if (*replay) {
			std::ifstream in(manifest_path);
			if (!in) throw DataError("cannot read manifest '" + manifest_path + "'");
			auto m = nlohmann::json::parse(in).get<bcsample::RunManifest>();
			auto g = bcsample::load_edge_list(ds.dataset.empty() ? m.dataset : ds.dataset);
			bcsample::EstimateRun run;
			const bool same = bcsample::replay_matches(g, m, &run);
			std::cout << (same ? "identical" : "MISMATCH") << " estimate=" << bcsample::detail::format_double(run.estimate)
					  << " k=" << run.k << " S=" << bcsample::detail::format_double(run.sum) << '\n';
			if (!same) return kData;
		}
	} catch (const bcsample::ParameterError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kUsage;
	} catch (const bcsample::ParseError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kData;
	} catch (const DataError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return kData;
	} catch (const nlohmann::json::exception& e) {
		std::cerr << "error: bad manifest: " << e.what() << '\n';
		return kData;
	}
	return kOk;
}
