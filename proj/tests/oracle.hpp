#pragma once

// Test-only oracles. Everything here works from a plain adjacency matrix and
// enumerates simple paths directly, so it shares no code with the BFS, Brandes or
// sampler implementations it checks.

#include "bcsample/graph.hpp"

#include <cstdint>
#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using Edges = std::vector<std::pair<std::int64_t, std::int64_t>>;

struct SmallGraph {
	int n = 0;
	std::vector<std::vector<bool>> adj;
	Edges edges;
};

inline SmallGraph from_edges(int n, const Edges& edges) {
	SmallGraph g{n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)), edges};
	for (auto [a, b] : edges) {
		if (a == b) continue;
		g.adj[a][b] = g.adj[b][a] = true;
	}
	return g;
}

// Random simple graph on vertices 0..n-1 where every vertex has at least one edge,
// so Graph::from_edges keeps dense index == label.
inline SmallGraph random_graph(int n, double p, std::mt19937_64& rng) {
	std::bernoulli_distribution coin(p);
	std::uniform_int_distribution<int> pick(0, n - 1);
	Edges edges;
	std::vector<bool> touched(n, false);
	for (int a = 0; a < n; ++a)
		for (int b = a + 1; b < n; ++b)
			if (coin(rng)) {
				edges.emplace_back(a, b);
				touched[a] = touched[b] = true;
			}
	for (int a = 0; a < n; ++a)
		if (!touched[a]) {
			int b = pick(rng);
			while (b == a) b = pick(rng);
			edges.emplace_back(a, b);
			touched[a] = touched[b] = true;
		}
	return from_edges(n, edges);
}

inline bcsample::Graph to_graph(const SmallGraph& g) { return bcsample::Graph::from_edges(g.edges); }

struct PathCounts {
	int length = -1;            // -1: disconnected
	double total = 0;           // sigma_st
	std::vector<double> via;    // sigma_st(v), interior vertices only
};

// Enumerates every simple s-t path by DFS and keeps those of minimum length.
inline PathCounts shortest_paths(const SmallGraph& g, int s, int t) {
	PathCounts out;
	out.via.assign(g.n, 0.0);
	std::vector<int> path{s};
	std::vector<bool> on(g.n, false);
	on[s] = true;
	auto dfs = [&](auto&& self, int u) -> void {
		if (u == t) {
			const int len = static_cast<int>(path.size()) - 1;
			if (out.length == -1 || len < out.length) {
				out.length = len;
				out.total = 0;
				std::fill(out.via.begin(), out.via.end(), 0.0);
			}
			if (len == out.length) {
				out.total += 1;
				for (std::size_t i = 1; i + 1 < path.size(); ++i) out.via[path[i]] += 1;
			}
			return;
		}
		if (out.length != -1 && static_cast<int>(path.size()) - 1 >= out.length) return;
		for (int w = 0; w < g.n; ++w)
			if (g.adj[u][w] && !on[w]) {
				on[w] = true;
				path.push_back(w);
				self(self, w);
				path.pop_back();
				on[w] = false;
			}
	};
	if (s == t) {
		out.length = 0;
		out.total = 1;
		return out;
	}
	dfs(dfs, s);
	return out;
}

// delta_st(v) by path enumeration; 0 when v is an endpoint or s, t disconnected.
inline double pair_dependency(const SmallGraph& g, int s, int t, int v) {
	if (s == t || v == s || v == t) return 0.0;
	auto pc = shortest_paths(g, s, t);
	if (pc.length < 0) return 0.0;
	return pc.via[v] / pc.total;
}

// BC over ordered pairs.
inline std::vector<double> betweenness(const SmallGraph& g) {
	std::vector<double> bc(g.n, 0.0);
	for (int s = 0; s < g.n; ++s)
		for (int t = 0; t < g.n; ++t) {
			if (s == t) continue;
			auto pc = shortest_paths(g, s, t);
			if (pc.length < 0) continue;
			for (int v = 0; v < g.n; ++v) bc[v] += pc.via[v] / pc.total;
		}
	return bc;
}

// delta_{s.}(v) = sum_t delta_st(v).
inline double dependency(const SmallGraph& g, int s, int v) {
	double d = 0.0;
	for (int t = 0; t < g.n; ++t) d += pair_dependency(g, s, t, v);
	return d;
}

inline bcsample::Graph load_fixture(const std::string& name) {
	return bcsample::load_edge_list(std::string(BCSAMPLE_FIXTURES) + "/" + name);
}

// Independent read of a fixture into a SmallGraph (labels must be 0..n-1).
inline SmallGraph load_small(const std::string& name) {
	std::ifstream in(std::string(BCSAMPLE_FIXTURES) + "/" + name);
	Edges edges;
	std::string line;
	int n = 0;
	while (std::getline(in, line)) {
		if (line.empty() || line[0] == '#') continue;
		std::int64_t a = 0, b = 0;
		std::sscanf(line.c_str(), "%ld %ld", &a, &b);
		edges.emplace_back(a, b);
		n = std::max<int>(n, static_cast<int>(std::max(a, b)) + 1);
	}
	return from_edges(n, edges);
}

} // namespace oracle
