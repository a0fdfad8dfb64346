#pragma once

#include <string>
#include <utility>
#include <vector>

#include "psrlab/embedding.hpp"
#include "psrlab/error.hpp"
#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"
#include "psrlab/rational.hpp"

namespace psrlab {

// A host graph with a plane-saturated witness. The witness uses the host's
// vertex labels, so `proof_map` (the embedding the lower-bound argument is
// run on) is the identity.
struct FamilyInstance {
    std::string name;
    Graph host;
    PlaneGraph witness;
    int predicted_host_edges = 0;
    int predicted_witness_edges = 0;
    rational predicted_ratio;
    Embedding proof_map;
};

namespace detail {

inline Embedding identity_map(int n)
{
    Embedding e;
    for (int i = 0; i < n; ++i)
        e.map.push_back(i);
    return e;
}

inline FamilyInstance finish(std::string name, Graph host, PlaneGraph witness, int he, int we)
{
    FamilyInstance fi;
    fi.name = std::move(name);
    fi.proof_map = identity_map(host.vertex_count());
    fi.host = std::move(host);
    fi.witness = std::move(witness);
    fi.predicted_host_edges = he;
    fi.predicted_witness_edges = we;
    fi.predicted_ratio = rational(we, he);
    return fi;
}

} // namespace detail

/// Triangle v1v2v3, K_{2,n-5} with parts {u1,u2} and n-5 others, plus u1v1 and
/// u2v2. Layout: v1,v2,v3 = 0,1,2; u1 = 3; u2 = 4; the rest from 5.
/// With `prime`, u1 is dropped (n-1 vertices, u2 = 3, the rest from 4).
inline FamilyInstance example_1_1(int n, bool prime = false)
{
    if (n <= 5 || (prime && n - 1 < 6))
        throw error(errc::n_too_small, "example_1_1 needs n > 5 (n - 1 >= 6 for the primed variant)");
    std::vector<edge> host_edges{{0, 1}, {0, 2}, {1, 2}};
    std::vector<edge> wit_edges{{0, 1}, {0, 2}, {1, 2}};
    std::vector<std::pair<double, double>> xy;
    int nv;
    if (!prime) {
        nv = n;
        host_edges.insert(host_edges.end(), {{0, 3}, {1, 4}});
        for (vertex b = 5; b < n; ++b)
            host_edges.insert(host_edges.end(), {{3, b}, {4, b}});
        wit_edges.insert(wit_edges.end(), {{0, 3}, {1, 4}});
        xy = {{0, 0}, {4, 0}, {2, 3}, {1, 0.8}, {3, 0.8}};
    } else {
        nv = n - 1;
        host_edges.push_back({1, 3});
        for (vertex b = 4; b < nv; ++b)
            host_edges.push_back({3, b});
        wit_edges.push_back({1, 3});
        xy = {{0, 0}, {4, 0}, {2, 3}, {3, 0.8}};
    }
    xy.resize(nv, {0, 0});
    Graph host(nv, host_edges);
    Graph h(nv, wit_edges);
    auto rot = rotation_from_coordinates(h, xy);
    auto probe = make_plane_top_level(h, rot);
    std::vector<Placement> pl(probe.component_count());
    // the triangle's unbounded side is the face bounded by v1v2v3 alone
    pl[0].outer_face = *probe.find_face(0, {0, 1, 2});
    PlaneGraph witness(h, std::move(rot), std::move(pl));
    const int he = host.edge_count();
    const int we = static_cast<int>(wit_edges.size());
    return detail::finish(prime ? "example11p" : "example11", std::move(host), std::move(witness), he, we);
}

/// Matching x_i y_i (i < n), u1 and u2 adjacent to every matching vertex,
/// triangle v1v2v3, edges v1u1 and v2u2. Layout: v1,v2,v3 = 0,1,2; u1 = 3;
/// u2 = 4; x_i = 5 + 2i; y_i = 6 + 2i.
inline FamilyInstance example_1_2(int n)
{
    if (n < 1)
        throw error(errc::n_too_small, "example_1_2 needs n >= 1");
    const int nv = 2 * n + 5;
    std::vector<edge> host_edges{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}};
    for (int i = 0; i < n; ++i) {
        const vertex x = 5 + 2 * i, y = 6 + 2 * i;
        host_edges.insert(host_edges.end(), {{3, x}, {3, y}, {4, x}, {4, y}, {x, y}});
    }
    std::vector<edge> wit_edges{{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 4}, {3, 5}, {3, 6}, {4, 5}, {4, 6}, {5, 6}};
    for (int i = 1; i < n; ++i)
        wit_edges.push_back({5 + 2 * i, 6 + 2 * i});
    // G7 part drawn inside the triangle; remaining matching edges outside
    std::vector<std::pair<double, double>> xy{{7.3, 1.1}, {4.5, 1.1}, {6, 3.4}, {6.5, 1.75}, {5.5, 1.75}, {6, 1.5}, {6, 2}};
    xy.resize(nv, {0, 0});
    Graph host(nv, host_edges);
    Graph h(nv, wit_edges);
    auto rot = rotation_from_coordinates(h, xy);
    auto probe = make_plane_top_level(h, rot);
    std::vector<Placement> pl(probe.component_count());
    pl[0].outer_face = *probe.find_face(0, {0, 1, 2});
    PlaneGraph witness(h, std::move(rot), std::move(pl));
    const int he = host.edge_count();
    const int we = static_cast<int>(wit_edges.size());
    return detail::finish("example12", std::move(host), std::move(witness), he, we);
}

// Vertex layout of the wheel-based families.
struct WheelLayout {
    int m = 0, k1 = 0, k2 = 0;

    vertex cycle(int i) const { return ((i % m) + m) % m; }
    vertex hub(int j) const { return m + j; }
    vertex face_vertex(int j, int i) const { return m + 2 + j * m + i; }
    // G0 edges: cycle edges (c_i, c_i+1), then hub 0 spokes, then hub 1 spokes
    int g0_edge_count() const { return 3 * m; }
    vertex edge_vertex(int edge_idx, int copy) const { return 3 * m + 2 + edge_idx * k2 + copy; }
    // G0 vertices: cycle, then hubs
    vertex pendant(int g0_vertex, int copy) const { return 3 * m + 2 + 3 * m * k2 + g0_vertex * k1 + copy; }
    vertex k4(int i) const { return 3 * m + 2 + 3 * m * k2 + (m + 2) * k1 + i; }
    int vertex_count() const { return k4(4); }
    int star_leaves() const { return k1 + 4 * k2 + 9; }

    std::pair<vertex, vertex> g0_edge(int idx) const
    {
        if (idx < m)
            return {cycle(idx), cycle(idx + 1)};
        return {hub((idx - m) / m), cycle((idx - m) % m)};
    }
};

namespace detail {

inline FamilyInstance wheel_family(std::string name, int m, int k1, int k2)
{
    const WheelLayout L{m, k1, k2};
    std::vector<edge> es;
    for (int i = 0; i < m; ++i) {
        es.push_back(make_edge(L.cycle(i), L.cycle(i + 1)));
        es.push_back(make_edge(L.hub(0), L.cycle(i)));
        es.push_back(make_edge(L.hub(1), L.cycle(i)));
    }
    for (int j = 0; j < 2; ++j)
        for (int i = 0; i < m; ++i)
            for (vertex w : {L.hub(j), L.cycle(i), L.cycle(i + 1)})
                es.push_back(make_edge(L.face_vertex(j, i), w));
    for (int e = 0; e < L.g0_edge_count(); ++e)
        for (int c = 0; c < k2; ++c) {
            auto [a, b] = L.g0_edge(e);
            es.push_back(make_edge(L.edge_vertex(e, c), a));
            es.push_back(make_edge(L.edge_vertex(e, c), b));
        }
    for (int v = 0; v < m + 2; ++v)
        for (int c = 0; c < k1; ++c)
            es.push_back(make_edge(L.pendant(v, c), v));
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            es.push_back(make_edge(L.k4(a), L.k4(b)));
    const int n = L.vertex_count();
    Graph host(n, es);

    // witness: C_m, K4, two stars centred at the hubs, the rest isolated
    std::vector<edge> ws;
    for (int i = 0; i < m; ++i)
        ws.push_back(make_edge(L.cycle(i), L.cycle(i + 1)));
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            ws.push_back(make_edge(L.k4(a), L.k4(b)));
    for (int j = 0; j < 2; ++j) {
        std::vector<vertex> pool;
        for (int i = 0; i < m; ++i)
            pool.push_back(L.face_vertex(j, i));
        for (int i = 0; i < m; ++i)
            for (int c = 0; c < k2; ++c)
                pool.push_back(L.edge_vertex(m + j * m + i, c));
        for (int c = 0; c < k1; ++c)
            pool.push_back(L.pendant(m + j, c));
        for (int i = 0; i < L.star_leaves(); ++i)
            ws.push_back(make_edge(L.hub(j), pool.at(i)));
    }
    Graph h(n, ws);

    RotationSystem rot = sorted_rotation(h);
    // K4 drawn as a triangle with a centre vertex
    {
        std::vector<std::pair<double, double>> xy(n, {0, 0});
        xy[L.k4(0)] = {0, 0};
        xy[L.k4(1)] = {10, 0};
        xy[L.k4(2)] = {5, 9};
        xy[L.k4(3)] = {5, 3};
        auto k4rot = rotation_from_coordinates(h, xy);
        for (int i = 0; i < 4; ++i)
            rot[L.k4(i)] = k4rot[L.k4(i)];
    }
    auto probe = make_plane_top_level(h, rot);
    const int k4c = probe.component_of(L.k4(0));
    std::vector<Placement> pl(probe.component_count());
    for (int c = 0; c < probe.component_count(); ++c) {
        if (c == k4c) {
            pl[c].outer_face = 3;
            continue;
        }
        pl[c].parent = k4c;
        const vertex first = probe.component(c).vertices.front();
        if (first == L.cycle(0))
            pl[c].parent_face = 0;
        else if (first == L.hub(0) || first == L.hub(1))
            pl[c].parent_face = 1;
        else
            pl[c].parent_face = 2;
    }
    PlaneGraph witness(h, std::move(rot), std::move(pl));
    const int he = (9 + k1 + 6 * k2) * m + (2 * k1 + 6);
    const int we = m + 2 * k1 + 8 * k2 + 24;
    return finish(std::move(name), std::move(host), std::move(witness), he, we);
}

} // namespace detail

/// Decorated double wheel over C_m plus a disjoint K4 (twin-free).
inline FamilyInstance decorated_double_wheel(int m)
{
    if (m < 7)
        throw error(errc::m_too_small, "decorated double wheel needs m >= 7");
    return detail::wheel_family("ddw", m, 1, 1);
}

/// Double wheel with k2 degree-2 vertices per edge and k1 pendants per vertex.
inline FamilyInstance general_family(int m, int k1, int k2)
{
    if (m < 9)
        throw error(errc::m_too_small, "general family needs m >= 9");
    if (k1 < 0 || k2 < 0)
        throw error(errc::invalid_graph, "k1 and k2 must be non-negative");
    return detail::wheel_family("general", m, k1, k2);
}

/// The host with every hub edge removed and the K4 dropped: what is left of a
/// wheel-family host once the two hubs have been identified.
inline Graph hub_reduced_graph(const FamilyInstance& fi, const WheelLayout& L)
{
    std::vector<edge> keep;
    auto is_k4 = [&](vertex v) { return v >= L.k4(0); };
    for (auto [u, v] : fi.host.edges())
        if (u != L.hub(0) && u != L.hub(1) && v != L.hub(0) && v != L.hub(1) && !is_k4(u) && !is_k4(v))
            keep.push_back({u, v});
    return Graph(fi.host.vertex_count(), keep);
}

} // namespace psrlab
