#include "bcsample/bfs.hpp"
#include "bcsample/graph.hpp"
#include "oracle.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace bcsample;

namespace {

Graph parse(const std::string& text) {
	std::istringstream in(text);
	return parse_edge_list(in);
}

std::vector<double> sigma_of(const BfsResult& b) { return b.sigma; }

} // namespace

TEST_CASE("parse_edge_list reads a SNAP fragment", "[graph]") {
	auto g = parse("# c\n0\t1\n1\t2\n");
	CHECK(g.vertex_count() == 3);
	CHECK(g.edge_count() == 2);
	CHECK(g.has_edge(0, 1));
	CHECK(g.has_edge(1, 2));
	CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("parse_edge_list merges directions, duplicates and drops self-loops", "[graph]") {
	auto g = parse("10 20\n20 10\n10 20\n30 30\n20 40\n\n# trailing comment\n");
	CHECK(g.vertex_count() == 3);
	CHECK(g.edge_count() == 2);
	CHECK(g.id_of(0) == 10);
	CHECK(g.id_of(2) == 40);
	CHECK(g.index_of(20) == 1u);
	CHECK_FALSE(g.index_of(30).has_value());
}

TEST_CASE("parse_edge_list reports the failing line", "[graph]") {
	try {
		parse("# header\n1 2\n3 x\n");
		FAIL("expected a parse error");
	} catch (const ParseError& e) {
		CHECK(e.line() == 3);
		CHECK(std::string(e.what()).find("line 3") != std::string::npos);
	}
	CHECK_THROWS_AS(parse("1\n"), ParseError);
	CHECK_THROWS_AS(parse("1 2 3\n"), ParseError);
	CHECK_THROWS_AS(parse("1.5 2\n"), ParseError);
	CHECK_THROWS_AS(parse("# nothing\n"), DataError);
	CHECK_THROWS_AS(parse("4 4\n"), DataError);
	CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.txt"), DataError);
}

TEST_CASE("graph invariants hold on random graphs", "[graph][property]") {
	std::mt19937_64 rng(11);
	for (int trial = 0; trial < 100; ++trial) {
		const int n = 2 + trial % 30;
		auto sg = oracle::random_graph(n, 0.2, rng);
		auto g = oracle::to_graph(sg);
		std::size_t degree_sum = 0;
		for (vertex_t v = 0; v < g.vertex_count(); ++v) {
			auto nb = g.neighbors(v);
			degree_sum += nb.size();
			CHECK(std::is_sorted(nb.begin(), nb.end()));
			CHECK(std::adjacent_find(nb.begin(), nb.end()) == nb.end());
			for (vertex_t w : nb) {
				CHECK(w != v);
				CHECK(g.has_edge(w, v));
			}
		}
		CHECK(degree_sum == 2 * g.edge_count());
	}
}

TEST_CASE("canonical edge list round-trips", "[graph][property]") {
	std::mt19937_64 rng(5);
	for (int trial = 0; trial < 50; ++trial) {
		auto sg = oracle::random_graph(3 + trial % 20, 0.3, rng);
		// Sparse, shuffled external ids exercise the id map.
		for (auto& [a, b] : sg.edges) {
			a = a * 7919 - 100;
			b = b * 7919 - 100;
		}
		auto g = oracle::to_graph(sg);
		std::ostringstream out;
		write_edge_list(g, out);
		auto again = parse(out.str());
		CHECK(again == g);

		std::ostringstream out2;
		write_edge_list(again, out2);
		CHECK(out2.str() == out.str());
	}
}

TEST_CASE("bfs_sssp on tiny fixtures", "[bfs]") {
	SECTION("path") {
		auto g = oracle::load_fixture("path3.txt");
		auto b = bfs_sssp(g, 0);
		CHECK(b.dist == std::vector<hops_t>{0, 1, 2});
		CHECK(sigma_of(b) == std::vector<double>{1, 1, 1});
		REQUIRE(b.preds(2).size() == 1);
		CHECK(b.preds(2)[0] == 1);
		CHECK_FALSE(b.truncated());
	}
	SECTION("4-cycle") {
		// Brute force: two shortest 0-2 paths (via 1 and via 3), one each to 1 and 3.
		auto sg = oracle::load_small("cycle4.txt");
		CHECK(oracle::shortest_paths(sg, 0, 2).total == 2);
		auto g = oracle::load_fixture("cycle4.txt");
		auto b = bfs_sssp(g, 0);
		CHECK(b.dist == std::vector<hops_t>{0, 1, 2, 1});
		CHECK(sigma_of(b) == std::vector<double>{1, 1, 2, 1});
	}
	SECTION("star from a leaf") {
		auto g = oracle::load_fixture("star4.txt");
		auto b = bfs_sssp(g, 1);
		CHECK(b.dist == std::vector<hops_t>{1, 0, 2, 2});
		CHECK(sigma_of(b) == std::vector<double>{1, 1, 1, 1});
	}
}

TEST_CASE("unreachable vertices carry the sentinel", "[bfs]") {
	auto g = parse("0 1\n2 3\n");
	auto b = bfs_sssp(g, 0);
	CHECK(b.reached(1));
	CHECK_FALSE(b.reached(2));
	CHECK_FALSE(b.distance(3).has_value());
	CHECK(b.dist[2] == kUnreached);
	CHECK(b.sigma[3] == 0.0);
	CHECK(b.settled() == 2);
}

TEST_CASE("bfs sigma matches brute-force path counts on every small graph", "[bfs][property]") {
	std::mt19937_64 rng(2024);
	for (int trial = 0; trial < 200; ++trial) {
		const int n = 2 + trial % 7;
		auto sg = oracle::random_graph(n, 0.15 + 0.1 * (trial % 6), rng);
		auto g = oracle::to_graph(sg);
		BfsResult b;
		for (int s = 0; s < n; ++s) {
			bfs_sssp(g, static_cast<vertex_t>(s), b);
			CHECK(b.dist[s] == 0);
			CHECK(b.sigma[s] == 1.0);
			for (int v = 0; v < n; ++v) {
				auto pc = oracle::shortest_paths(sg, s, v);
				if (pc.length < 0) {
					CHECK_FALSE(b.reached(v));
					continue;
				}
				CHECK(b.dist[v] == pc.length);
				CHECK(b.sigma[v] == pc.total);
				if (v == s) continue;
				// Predecessor consistency: sigma rebuilt from preds, preds one level up.
				double rebuilt = 0.0;
				for (vertex_t t : b.preds(v)) {
					CHECK(b.dist[t] + 1 == b.dist[v]);
					CHECK(sg.adj[t][v]);
					rebuilt += b.sigma[t];
				}
				CHECK(rebuilt == b.sigma[v]);
			}
		}
	}
}

TEST_CASE("bfs_truncated examples", "[bfs]") {
	SECTION("path 0-1-2-3 stopped at one hop") {
		auto g = parse("0 1\n1 2\n2 3\n");
		auto b = bfs_truncated(g, 0, 1);
		CHECK(b.dist[1] == 1);
		CHECK(b.sigma[1] == 1.0);
		CHECK_FALSE(b.reached(3));
		CHECK_FALSE(b.reached(2));
		CHECK(b.frontier_limit == 1);
	}
	SECTION("4-cycle settles the whole last level") {
		auto g = oracle::load_fixture("cycle4.txt");
		auto b = bfs_truncated(g, 0, 2);
		CHECK(b.sigma[2] == 2.0);
	}
	SECTION("negative stop distance") {
		auto g = oracle::load_fixture("cycle4.txt");
		CHECK_THROWS_AS(bfs_truncated(g, 0, -1), ParameterError);
	}
}

TEST_CASE("truncated search agrees with the full search inside the limit", "[bfs][property]") {
	std::mt19937_64 rng(77);
	BfsResult full, part, until;
	for (int trial = 0; trial < 100; ++trial) {
		const int n = 3 + trial % 20;
		auto g = oracle::to_graph(oracle::random_graph(n, 0.15, rng));
		for (vertex_t s = 0; s < g.vertex_count(); ++s) {
			bfs_sssp(g, s, full);
			hops_t ecc = 0;
			for (auto d : full.dist) ecc = std::max(ecc, d);
			for (hops_t stop = 0; stop <= ecc + 1; ++stop) {
				bfs_truncated(g, s, stop, part);
				for (vertex_t v = 0; v < g.vertex_count(); ++v) {
					if (full.reached(v) && full.dist[v] <= stop) {
						REQUIRE(part.reached(v));
						CHECK(part.dist[v] == full.dist[v]);
						CHECK(part.sigma[v] == full.sigma[v]);
						CHECK(part.preds(v).size() == full.preds(v).size());
					} else {
						CHECK_FALSE(part.reached(v));
					}
				}
				if (stop >= ecc) {
					CHECK(part.dist == full.dist);
					CHECK(part.sigma == full.sigma);
				}
			}
			for (vertex_t v = 0; v < g.vertex_count(); ++v) {
				bfs_until_settled(g, s, v, until);
				if (!full.reached(v)) {
					CHECK_FALSE(until.reached(v));
					continue;
				}
				CHECK(until.frontier_limit == full.dist[v]);
				CHECK(until.sigma[v] == full.sigma[v]);
			}
		}
	}
}
