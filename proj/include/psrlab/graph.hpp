#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "psrlab/error.hpp"

namespace psrlab {

using vertex = int;
using edge = std::pair<vertex, vertex>;

inline edge make_edge(vertex u, vertex v) { return u < v ? edge{u, v} : edge{v, u}; }

// Simple undirected graph on dense vertex indices [0, n). Immutable once built.
class Graph {
public:
    Graph() = default;

    Graph(int n, std::vector<edge> edges) : n_(n)
    {
        if (n < 0)
            throw error(errc::invalid_graph, "negative vertex count");
        for (auto& e : edges) {
            if (e.first == e.second)
                throw error(errc::invalid_graph, "loop at vertex " + std::to_string(e.first));
            if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n)
                throw error(errc::invalid_graph, "edge endpoint out of range");
            e = make_edge(e.first, e.second);
        }
        std::sort(edges.begin(), edges.end());
        if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
            throw error(errc::invalid_graph, "duplicate edge");
        edges_ = std::move(edges);
        words_ = (n_ + 63) / 64;
        bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
        adj_.assign(n_, {});
        for (auto [u, v] : edges_) {
            adj_[u].push_back(v);
            adj_[v].push_back(u);
            set_bit(u, v);
            set_bit(v, u);
        }
        for (auto& a : adj_)
            std::sort(a.begin(), a.end());
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<edge>& edges() const { return edges_; }
    const std::vector<vertex>& neighbors(vertex v) const { return adj_[v]; }
    int degree(vertex v) const { return static_cast<int>(adj_[v].size()); }

    bool adjacent(vertex u, vertex v) const
    {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1u;
    }

    // G + uv
    Graph with_edge(vertex u, vertex v) const
    {
        auto es = edges_;
        es.push_back(make_edge(u, v));
        return Graph(n_, std::move(es));
    }

    Graph with_isolated(int extra) const { return Graph(n_ + extra, edges_); }

    // G[U], relabelled to 0..|U|-1 in the order given.
    Graph induced(const std::vector<vertex>& verts) const
    {
        std::vector<int> pos(n_, -1);
        for (std::size_t i = 0; i < verts.size(); ++i)
            pos[verts[i]] = static_cast<int>(i);
        std::vector<edge> es;
        for (auto [u, v] : edges_)
            if (pos[u] >= 0 && pos[v] >= 0)
                es.push_back(make_edge(pos[u], pos[v]));
        return Graph(static_cast<int>(verts.size()), std::move(es));
    }

    int max_degree() const
    {
        int d = 0;
        for (vertex v = 0; v < n_; ++v)
            d = std::max(d, degree(v));
        return d;
    }

    friend bool operator==(const Graph& a, const Graph& b)
    {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

private:
    void set_bit(vertex u, vertex v)
    {
        bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63);
    }

    int n_ = 0;
    int words_ = 0;
    std::vector<edge> edges_;
    std::vector<std::vector<vertex>> adj_;
    std::vector<std::uint64_t> bits_;
};

inline Graph cycle_graph(int n)
{
    std::vector<edge> es;
    for (int i = 0; i < n; ++i)
        es.push_back(make_edge(i, (i + 1) % n));
    return Graph(n, es);
}

inline Graph path_graph(int n)
{
    std::vector<edge> es;
    for (int i = 0; i + 1 < n; ++i)
        es.emplace_back(i, i + 1);
    return Graph(n, es);
}

inline Graph complete_graph(int n)
{
    std::vector<edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            es.emplace_back(i, j);
    return Graph(n, es);
}

// K_{1,leaves} with the centre at 0.
inline Graph star_graph(int leaves)
{
    std::vector<edge> es;
    for (int i = 1; i <= leaves; ++i)
        es.emplace_back(0, i);
    return Graph(leaves + 1, es);
}

/// Connected components, each sorted, listed by smallest vertex.
inline std::vector<std::vector<vertex>> connected_components(const Graph& g)
{
    const int n = g.vertex_count();
    std::vector<int> comp(n, -1);
    std::vector<std::vector<vertex>> out;
    for (vertex s = 0; s < n; ++s) {
        if (comp[s] >= 0)
            continue;
        const int id = static_cast<int>(out.size());
        out.emplace_back();
        std::vector<vertex> stack{s};
        comp[s] = id;
        while (!stack.empty()) {
            vertex v = stack.back();
            stack.pop_back();
            out[id].push_back(v);
            for (vertex w : g.neighbors(v))
                if (comp[w] < 0) {
                    comp[w] = id;
                    stack.push_back(w);
                }
        }
        std::sort(out[id].begin(), out[id].end());
    }
    return out;
}

inline bool is_connected(const Graph& g) { return connected_components(g).size() <= 1; }

/// Number of distinct simple cycles of exactly `length` edges (length >= 3).
/// Each cycle is walked from its smallest vertex in both directions, hence the halving.
inline long long count_cycles(const Graph& g, int length)
{
    if (length < 3)
        return 0;
    long long closed = 0;
    std::vector<char> on_path(g.vertex_count(), 0);
    for (vertex s = 0; s < g.vertex_count(); ++s) {
        auto walk = [&](auto&& self, vertex v, int depth) -> void {
            for (vertex w : g.neighbors(v)) {
                if (w == s && depth == length) {
                    ++closed;
                    continue;
                }
                if (w <= s || on_path[w] || depth == length)
                    continue;
                on_path[w] = 1;
                self(self, w, depth + 1);
                on_path[w] = 0;
            }
        };
        on_path[s] = 1;
        walk(walk, s, 1);
        on_path[s] = 0;
    }
    return closed / 2;
}

// ---------------------------------------------------------------------------
// Twins and the (k1, k2) profile

struct TwinPartition {
    std::vector<std::vector<vertex>> classes; // sorted, ordered by smallest member
};

/// Classes of vertices with equal open neighbourhoods.
inline TwinPartition twins_partition(const Graph& g)
{
    std::map<std::vector<vertex>, std::vector<vertex>> by_nbhd;
    for (vertex v = 0; v < g.vertex_count(); ++v)
        by_nbhd[g.neighbors(v)].push_back(v);
    TwinPartition tp;
    for (auto& [_, cls] : by_nbhd)
        tp.classes.push_back(cls);
    std::sort(tp.classes.begin(), tp.classes.end());
    return tp;
}

/// Representative (smallest twin) of every vertex.
inline std::vector<vertex> twin_representatives(const Graph& g)
{
    std::vector<vertex> rep(g.vertex_count());
    for (auto& cls : twins_partition(g).classes)
        for (vertex v : cls)
            rep[v] = cls.front();
    return rep;
}

struct KProfile {
    int k1 = 0;
    int k2 = 0;
    friend bool operator==(const KProfile&, const KProfile&) = default;
};

inline KProfile classify_k(const Graph& g)
{
    std::map<std::vector<vertex>, int> ones, twos;
    KProfile k;
    for (vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.degree(v) == 1)
            k.k1 = std::max(k.k1, ++ones[g.neighbors(v)]);
        else if (g.degree(v) == 2)
            k.k2 = std::max(k.k2, ++twos[g.neighbors(v)]);
    }
    return k;
}

inline bool is_twin_free_low_degree(const Graph& g)
{
    auto k = classify_k(g);
    return k.k1 <= 1 && k.k2 <= 1;
}

// ---------------------------------------------------------------------------
// ".graph" text format

inline void write_graph(std::ostream& os, const Graph& g)
{
    os << "graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges())
        os << "e " << u << ' ' << v << '\n';
}

inline std::string to_graph_text(const Graph& g)
{
    std::ostringstream os;
    write_graph(os, g);
    return os.str();
}

namespace detail {

inline error parse_error(int line, const std::string& msg)
{
    return error(errc::parse, "line " + std::to_string(line) + ": " + msg);
}

inline bool blank_or_comment(const std::string& s)
{
    auto p = s.find_first_not_of(" \t\r");
    return p == std::string::npos || s[p] == '#';
}

} // namespace detail

inline Graph read_graph(std::istream& is)
{
    std::string line;
    int lineno = 0;
    int n = -1, m = -1;
    std::vector<edge> es;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::blank_or_comment(line))
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (n < 0) {
            if (tag != "graph" || !(ls >> n >> m) || n < 0 || m < 0)
                throw detail::parse_error(lineno, "expected 'graph <n> <m>'");
            continue;
        }
        long long u, v;
        if (tag != "e" || !(ls >> u >> v))
            throw detail::parse_error(lineno, "expected 'e <u> <v>'");
        std::string rest;
        if (ls >> rest)
            throw detail::parse_error(lineno, "trailing tokens");
        if (u == v)
            throw detail::parse_error(lineno, "loop");
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw detail::parse_error(lineno, "vertex index out of range");
        if (u > v)
            throw detail::parse_error(lineno, "edge endpoints must satisfy u < v");
        edge e{static_cast<vertex>(u), static_cast<vertex>(v)};
        if (!es.empty() && !(es.back() < e))
            throw detail::parse_error(lineno, es.back() == e ? "duplicate edge" : "edges not sorted");
        es.push_back(e);
    }
    if (n < 0)
        throw detail::parse_error(lineno, "missing header");
    if (static_cast<int>(es.size()) != m)
        throw detail::parse_error(lineno, "edge count does not match header");
    return Graph(n, std::move(es));
}

inline Graph parse_graph(const std::string& text)
{
    std::istringstream is(text);
    return read_graph(is);
}

} // namespace psrlab
