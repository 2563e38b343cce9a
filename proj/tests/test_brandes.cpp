#include "bcsample/brandes.hpp"
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace bcsample;
using Catch::Matchers::WithinAbs;

TEST_CASE("accumulate_dependencies examples", "[brandes]") {
	SECTION("path, source 0") {
		auto g = oracle::load_fixture("path3.txt");
		auto d = accumulate_dependencies(g, bfs_sssp(g, 0));
		CHECK(d.source == 0);
		CHECK(d.delta == std::vector<double>{0, 1, 0});
	}
	SECTION("star, source a leaf") {
		auto g = oracle::load_fixture("star4.txt");
		auto d = accumulate_dependencies(g, bfs_sssp(g, 1));
		CHECK(d.delta == std::vector<double>{2, 0, 0, 0});
	}
	SECTION("4-cycle, source 1") {
		// Brute force: only target 3 routes through another vertex, half via 0, half via 2.
		auto sg = oracle::load_small("cycle4.txt");
		CHECK_THAT(oracle::dependency(sg, 1, 0), WithinAbs(0.5, 1e-15));
		auto g = oracle::load_fixture("cycle4.txt");
		auto d = accumulate_dependencies(g, bfs_sssp(g, 1));
		CHECK_THAT(d.delta[0], WithinAbs(0.5, 1e-12));
		CHECK_THAT(d.delta[2], WithinAbs(0.5, 1e-12));
		CHECK(d.delta[1] == 0.0);
		CHECK(d.delta[3] == 0.0);
	}
	SECTION("truncated input is rejected") {
		auto g = oracle::load_fixture("path3.txt");
		CHECK_THROWS_AS(accumulate_dependencies(g, bfs_truncated(g, 0, 1)), ParameterError);
	}
}

TEST_CASE("brandes_bc examples", "[brandes]") {
	CHECK(brandes_bc(oracle::load_fixture("path3.txt")).bc == std::vector<double>{0, 2, 0});
	CHECK(brandes_bc(oracle::load_fixture("star4.txt"))[0] == 6.0);
	auto cycle = brandes_bc(oracle::load_fixture("cycle4.txt"));
	auto brute = oracle::betweenness(oracle::load_small("cycle4.txt"));
	for (int v = 0; v < 4; ++v) {
		CHECK_THAT(brute[v], WithinAbs(1.0, 1e-15));
		CHECK_THAT(cycle[v], WithinAbs(1.0, 1e-12));
	}
}

TEST_CASE("brandes_bc matches brute-force enumeration on 200 random graphs", "[brandes][oracle]") {
	std::mt19937_64 rng(1);
	for (int trial = 0; trial < 200; ++trial) {
		const int n = 2 + trial % 7;
		auto sg = oracle::random_graph(n, 0.2 + 0.1 * (trial % 5), rng);
		auto bc = brandes_bc(oracle::to_graph(sg));
		auto brute = oracle::betweenness(sg);
		for (int v = 0; v < n; ++v) {
			CHECK_THAT(bc[v], WithinAbs(brute[v], 1e-9));
			CHECK(bc[v] >= 0.0);
			CHECK(bc[v] <= static_cast<double>(n * n));
		}
	}
}

TEST_CASE("random32 fixture agrees with an external reference", "[brandes]") {
	// networkx.betweenness_centrality(normalized=False) doubled to ordered pairs.
	auto g = oracle::load_fixture("random32.txt");
	auto bc = brandes_bc(g);
	CHECK_THAT(bc[*g.index_of(3)], WithinAbs(183.36666666666665, 1e-9));
	CHECK_THAT(bc[*g.index_of(4)], WithinAbs(158.66666666666669, 1e-9));
	CHECK(bc[*g.index_of(12)] == 0.0);
}

TEST_CASE("brandes_bc does not depend on the worker count", "[brandes]") {
	auto g = oracle::load_fixture("random32.txt");
	auto one = brandes_bc(g, 1);
	auto four = brandes_bc(g, 4);
	CHECK(one.bc == four.bc);
}

TEST_CASE("sum and pair identities reproduce BC", "[brandes][identity]") {
	std::mt19937_64 rng(9);
	std::vector<oracle::SmallGraph> graphs;
	for (auto name : {"path3.txt", "star4.txt", "cycle4.txt"}) graphs.push_back(oracle::load_small(name));
	for (int trial = 0; trial < 40; ++trial) graphs.push_back(oracle::random_graph(3 + trial % 6, 0.35, rng));

	for (const auto& sg : graphs) {
		auto g = oracle::to_graph(sg);
		auto bc = brandes_bc(g);
		const auto n = static_cast<vertex_t>(g.vertex_count());
		std::vector<double> by_source(n, 0.0);
		for (vertex_t s = 0; s < n; ++s) {
			auto d = accumulate_dependencies(g, bfs_sssp(g, s));
			CHECK(d.delta[s] == 0.0);
			for (vertex_t v = 0; v < n; ++v) by_source[v] += d.delta[v];
		}
		for (vertex_t t = 0; t < n; ++t) {
			CHECK_THAT(by_source[t], WithinAbs(bc[t], 1e-9));
			auto from_t = bfs_sssp(g, t);
			double by_pair = 0.0;
			for (vertex_t u = 0; u < n; ++u)
				for (vertex_t v = 0; v < n; ++v)
					if (u != v) by_pair += pair_dependency(g, u, v, t, from_t);
			CHECK_THAT(by_pair, WithinAbs(bc[t], 1e-9));
		}
	}
}

TEST_CASE("pair_dependency decomposition equals the path-count ratio", "[brandes][oracle]") {
	std::mt19937_64 rng(31);
	BfsResult scratch;
	for (int trial = 0; trial < 60; ++trial) {
		const int n = 2 + trial % 7;
		auto sg = oracle::random_graph(n, 0.3, rng);
		auto g = oracle::to_graph(sg);
		for (int t = 0; t < n; ++t) {
			auto from_t = bfs_sssp(g, static_cast<vertex_t>(t));
			for (int u = 0; u < n; ++u)
				for (int v = 0; v < n; ++v) {
					if (u == v) continue;
					auto s = pair_sample(g, u, v, t, from_t, scratch);
					CHECK_THAT(s.contribution, WithinAbs(oracle::pair_dependency(sg, u, v, t), 1e-12));
					CHECK(s.contribution >= 0.0);
					CHECK(s.contribution <= 1.0);
				}
		}
	}
}

TEST_CASE("pair_dependency examples and errors", "[brandes]") {
	auto cycle = oracle::load_fixture("cycle4.txt");
	auto from0 = bfs_sssp(cycle, 0);
	CHECK_THAT(pair_dependency(cycle, 1, 3, 0, from0), WithinAbs(0.5, 1e-15));
	CHECK(pair_dependency(cycle, 0, 2, 0, from0) == 0.0);
	CHECK_THROWS_AS(pair_dependency(cycle, 2, 2, 0, from0), ParameterError);
	CHECK_THROWS_AS(pair_dependency(cycle, 1, 3, 2, from0), ParameterError);

	auto path = oracle::load_fixture("path3.txt");
	CHECK(pair_dependency(path, 0, 2, 1, bfs_sssp(path, 1)) == 1.0);

	std::istringstream in("0 1\n1 2\n5 6\n");
	auto split = parse_edge_list(in);
	auto from1 = bfs_sssp(split, 1);
	BfsResult scratch;
	auto s = pair_sample(split, 0, 3, 1, from1, scratch);
	CHECK(s.contribution == 0.0);
	CHECK(s.bfs_cost == 0);
}

TEST_CASE("write_bc_csv uses original ids", "[brandes]") {
	auto g = oracle::load_fixture("path3.txt");
	std::ostringstream out;
	write_bc_csv(g, brandes_bc(g), out);
	CHECK(out.str() == "vertex_id,bc\n0,0\n1,2\n2,0\n");
}
