#pragma once

#include "bcsample/error.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bcsample {

using vertex_t = std::uint32_t;
using external_id = std::int64_t;

// Immutable undirected, unweighted graph in compressed adjacency form.
//
// Vertices are dense indices [0, n). The original ids are kept in ascending order,
// so dense index i corresponds to the i-th smallest original id. Neighbour lists
// are sorted, symmetric, free of self-loops and duplicates.
class Graph {
  public:
	Graph() = default;

	// Builds a graph from edges given in original ids. Self-loops are dropped and
	// do not introduce vertices; (u,v), (v,u) and repeated pairs collapse into one edge.
	static Graph from_edges(std::span<const std::pair<external_id, external_id>> edges) {
		Graph g;
		g.m_ids.reserve(edges.size() * 2);
		for (auto [a, b] : edges) {
			if (a == b) continue;
			g.m_ids.push_back(a);
			g.m_ids.push_back(b);
		}
		std::sort(g.m_ids.begin(), g.m_ids.end());
		g.m_ids.erase(std::unique(g.m_ids.begin(), g.m_ids.end()), g.m_ids.end());

		std::vector<std::pair<vertex_t, vertex_t>> dense;
		dense.reserve(edges.size());
		for (auto [a, b] : edges) {
			if (a == b) continue;
			auto u = *g.index_of(a);
			auto v = *g.index_of(b);
			if (u > v) std::swap(u, v);
			dense.emplace_back(u, v);
		}
		std::sort(dense.begin(), dense.end());
		dense.erase(std::unique(dense.begin(), dense.end()), dense.end());

		const std::size_t n = g.m_ids.size();
		g.m_edges = dense.size();
		g.m_offsets.assign(n + 1, 0);
		for (auto [u, v] : dense) {
			++g.m_offsets[u + 1];
			++g.m_offsets[v + 1];
		}
		for (std::size_t i = 0; i < n; ++i) g.m_offsets[i + 1] += g.m_offsets[i];

		g.m_neighbors.resize(2 * dense.size());
		// (u, v) pairs are sorted with u < v, so every list is filled in ascending order.
		std::vector<std::size_t> fill(g.m_offsets.begin(), g.m_offsets.end() - 1);
		for (auto [u, v] : dense) {
			g.m_neighbors[fill[u]++] = v;
			g.m_neighbors[fill[v]++] = u;
		}
		return g;
	}

	std::size_t vertex_count() const noexcept { return m_ids.size(); }
	std::size_t edge_count() const noexcept { return m_edges; }

	std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
		return {m_neighbors.data() + m_offsets[v], m_offsets[v + 1] - m_offsets[v]};
	}
	std::size_t degree(vertex_t v) const noexcept { return m_offsets[v + 1] - m_offsets[v]; }

	// Start of v's neighbour block; per-vertex side tables of size 2m share this layout.
	std::span<const std::size_t> offsets() const noexcept { return m_offsets; }

	external_id id_of(vertex_t v) const noexcept { return m_ids[v]; }
	std::optional<vertex_t> index_of(external_id id) const noexcept {
		auto it = std::lower_bound(m_ids.begin(), m_ids.end(), id);
		if (it == m_ids.end() || *it != id) return std::nullopt;
		return static_cast<vertex_t>(it - m_ids.begin());
	}

	bool has_edge(vertex_t u, vertex_t v) const noexcept {
		auto nb = neighbors(u);
		return std::binary_search(nb.begin(), nb.end(), v);
	}

	friend bool operator==(const Graph&, const Graph&) = default;

  private:
	std::vector<external_id> m_ids;
	std::vector<std::size_t> m_offsets{0};
	std::vector<vertex_t> m_neighbors;
	std::size_t m_edges = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
	constexpr std::string_view ws = " \t\r\n\v\f";
	auto b = s.find_first_not_of(ws);
	if (b == std::string_view::npos) return {};
	auto e = s.find_last_not_of(ws);
	return s.substr(b, e - b + 1);
}

inline std::optional<external_id> parse_id(std::string_view tok) {
	external_id value{};
	auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
	if (ec != std::errc{} || ptr != tok.data() + tok.size()) return std::nullopt;
	return value;
}

} // namespace detail

// Reads a SNAP-style edge list: '#' comment lines, blank lines ignored, data lines
// hold exactly two whitespace-separated integer ids.
inline Graph parse_edge_list(std::istream& in) {
	std::vector<std::pair<external_id, external_id>> edges;
	std::string line;
	std::size_t lineno = 0;
	while (std::getline(in, line)) {
		++lineno;
		auto s = detail::trim(line);
		if (s.empty() || s.front() == '#') continue;

		auto split = s.find_first_of(" \t");
		if (split == std::string_view::npos) throw ParseError(lineno, "expected two vertex ids");
		auto first = s.substr(0, split);
		auto second = detail::trim(s.substr(split));
		if (second.find_first_of(" \t") != std::string_view::npos)
			throw ParseError(lineno, "expected two vertex ids, found more tokens");

		auto a = detail::parse_id(first);
		auto b = detail::parse_id(second);
		if (!a) throw ParseError(lineno, "not an integer id: '" + std::string(first) + "'");
		if (!b) throw ParseError(lineno, "not an integer id: '" + std::string(second) + "'");
		edges.emplace_back(*a, *b);
	}
	auto g = Graph::from_edges(edges);
	if (g.edge_count() == 0) throw DataError("edge list contains no edges");
	return g;
}

inline Graph load_edge_list(const std::string& path) {
	std::ifstream in(path);
	if (!in) throw DataError("cannot open '" + path + "'");
	try {
		return parse_edge_list(in);
	} catch (const ParseError& e) {
		throw ParseError(e.line(), e.detail(), path);
	} catch (const DataError& e) {
		throw DataError(path + ": " + e.what());
	}
}

// Canonical form: one "u v" line per edge in original ids, u < v, sorted, no comments.
inline void write_edge_list(const Graph& g, std::ostream& out) {
	for (vertex_t u = 0; u < g.vertex_count(); ++u)
		for (vertex_t v : g.neighbors(u))
			if (u < v) out << g.id_of(u) << ' ' << g.id_of(v) << '\n';
}

} // namespace bcsample
