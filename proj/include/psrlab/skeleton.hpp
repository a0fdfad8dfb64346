#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "psrlab/embedding.hpp"
#include "psrlab/error.hpp"
#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"

namespace psrlab {

// Which definition of an M1 matching edge to use. The general-k setting drops
// the requirement that the two phi(I)-neighbours have degree at least 2.
enum class ClassifierMode { twin_free, general };

enum class ComponentType { cyclic, M1, M2, M3, M4, T1, T2, T3, S1, S2, S3, S4, S5, S6 };

inline const char* type_name(ComponentType t)
{
    switch (t) {
    case ComponentType::cyclic: return "cyclic";
    case ComponentType::M1: return "M1";
    case ComponentType::M2: return "M2";
    case ComponentType::M3: return "M3";
    case ComponentType::M4: return "M4";
    case ComponentType::T1: return "T1";
    case ComponentType::T2: return "T2";
    case ComponentType::T3: return "T3";
    case ComponentType::S1: return "S1";
    case ComponentType::S2: return "S2";
    case ComponentType::S3: return "S3";
    case ComponentType::S4: return "S4";
    case ComponentType::S5: return "S5";
    case ComponentType::S6: return "S6";
    }
    return "?";
}

struct ClassifiedComponent {
    ComponentType type = ComponentType::cyclic;
    std::vector<vertex> vertices; // vertices of H
    // M1/M2: the endpoint mapped to the degree-1 (degree-2) vertex of G
    vertex low = -1;
    vertex center = -1; // stars on >= 3 vertices
    // T2/T3: (leaf, neighbour) pairs whose images share exactly one phi(I) neighbour
    std::vector<edge> shared_pairs;
};

struct SkeletonClassification {
    int r1 = 0, r2 = 0, r3 = 0, y = 0;
    std::vector<int> tree_sizes_A, tree_sizes_B, tree_sizes_C;
    std::vector<int> star_sizes_D, star_sizes_E, star_sizes_F, star_sizes_L;
    int m_s5 = 0, z_s6 = 0;
    int n0 = 0;
    // false when the isolated vertices of H are spread over several faces
    bool isolated_in_one_face = true;
    std::vector<ClassifiedComponent> components;

    int skeleton_vertices() const
    {
        auto sum = [](const std::vector<int>& v) {
            int s = 0;
            for (int x : v)
                s += x;
            return s;
        };
        return 2 * (r1 + r2 + r3 + y) + sum(tree_sizes_A) + sum(tree_sizes_B) + sum(tree_sizes_C) + sum(star_sizes_D)
               + sum(star_sizes_E) + sum(star_sizes_F) + sum(star_sizes_L) + 3 * (m_s5 + z_s6) + n0;
    }
};

namespace detail {

inline void check_bijection(const Graph& g, const PlaneGraph& h, const Embedding& phi)
{
    if (h.vertex_count() != g.vertex_count() || !is_valid_embedding(h.underlying(), g, phi))
        throw error(errc::invalid_embedding, "phi is not a bijective embedding of H into G");
}

// Membership of phi(I) in G, kept in sync with phi.
struct ImageOfI {
    std::vector<char> in;

    ImageOfI(const Graph& g, const PlaneGraph& h, const Embedding& phi) : in(g.vertex_count(), 0)
    {
        for (vertex v : h.isolated())
            in[phi(v)] = 1;
    }

    std::vector<vertex> neighbours_in(const Graph& g, vertex w) const
    {
        std::vector<vertex> out;
        for (vertex x : g.neighbors(w))
            if (in[x])
                out.push_back(x);
        return out;
    }
};

inline std::vector<std::pair<vertex, vertex>> matching_edges(const PlaneGraph& h)
{
    std::vector<std::pair<vertex, vertex>> out;
    for (auto& c : h.components())
        if (c.vertices.size() == 2)
            out.push_back({c.vertices[0], c.vertices[1]});
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

/// Runs the two swap phases to a fixpoint: a Phase-1 swap whenever one
/// applies, otherwise a Phase-2 swap. Each swap remaps a matching edge ab
/// onto bc for a low-degree c in phi(I) and moves a into phi(I).
/// `steps`, when given, receives the number of swaps performed.
inline Embedding normalize_embedding(const Graph& g, const PlaneGraph& h, Embedding phi, KProfile k,
                                     int* steps = nullptr)
{
    detail::check_bijection(g, h, phi);
    detail::ImageOfI img(g, h, phi);
    auto inv = inverse_map(phi, g.vertex_count());
    const auto edges = detail::matching_edges(h);

    auto swap_images = [&](vertex a_end, vertex a, vertex c) {
        const vertex c_pre = inv[c];
        phi.map[a_end] = c;
        phi.map[c_pre] = a;
        inv[c] = a_end;
        inv[a] = c_pre;
        img.in[c] = 0;
        img.in[a] = 1;
    };

    // phase 1 looks for a degree-1 c, phase 2 for a degree-2 c
    auto try_phase = [&](int phase) {
        for (auto [x, yv] : edges)
            for (int side = 0; side < 2; ++side) {
                const vertex b_end = side == 0 ? x : yv;
                const vertex a_end = side == 0 ? yv : x;
                const vertex a = phi(a_end), b = phi(b_end);
                auto nI = img.neighbours_in(g, b);
                if (nI.size() < 2)
                    continue;
                if (phase == 1 && k.k1 > 1 && g.degree(a) <= 1)
                    continue;
                if (phase == 2) {
                    if (g.degree(a) < 3)
                        continue;
                    if (std::any_of(nI.begin(), nI.end(), [&](vertex c) { return g.degree(c) < 2; }))
                        continue;
                }
                for (vertex c : nI)
                    if (g.degree(c) == phase) {
                        swap_images(a_end, a, c);
                        return true;
                    }
            }
        return false;
    };

    int count = 0;
    while (try_phase(1) || try_phase(2))
        ++count;
    if (steps)
        *steps = count;
    return phi;
}

/// Assigns each skeleton component its type, first matching rule wins.
inline SkeletonClassification classify_components(const Graph& g, const PlaneGraph& h, const Embedding& phi,
                                                  ClassifierMode mode = ClassifierMode::twin_free)
{
    detail::check_bijection(g, h, phi);
    const detail::ImageOfI img(g, h, phi);
    const Graph& hg = h.underlying();
    auto nI = [&](vertex hv) { return img.neighbours_in(g, phi(hv)); };
    auto all_deg_at_least = [&](const std::vector<vertex>& ws, int d) {
        return std::all_of(ws.begin(), ws.end(), [&](vertex w) { return g.degree(w) >= d; });
    };

    SkeletonClassification out;
    out.isolated_in_one_face = isolated_share_one_face(h);

    auto unclassifiable = [](const std::vector<vertex>& comp) {
        std::string s = "component {";
        for (std::size_t i = 0; i < comp.size(); ++i)
            s += (i ? " " : "") + std::to_string(comp[i]);
        return error(errc::unclassifiable, s + "} matches no type");
    };

    for (auto& c : h.components()) {
        const auto& vs = c.vertices;
        const int nv = static_cast<int>(vs.size());
        if (nv == 1)
            continue;
        ClassifiedComponent cc;
        cc.vertices = vs;

        if (c.edge_count >= nv) {
            cc.type = ComponentType::cyclic;
            out.n0 += nv;
        } else if (nv == 2) {
            const vertex ends[2] = {vs[0], vs[1]};
            auto low_rule = [&](int low_degree) {
                for (int s = 0; s < 2; ++s) {
                    const vertex lo = ends[s], hi = ends[1 - s];
                    if (g.degree(phi(lo)) != low_degree)
                        continue;
                    auto ns = nI(hi);
                    if (ns.size() < 2)
                        continue;
                    if (low_degree == 1 && mode == ClassifierMode::general)
                        return lo;
                    if (all_deg_at_least(ns, 2))
                        return lo;
                }
                return vertex{-1};
            };
            auto m3 = [&] {
                for (int s = 0; s < 2; ++s) {
                    auto ns = nI(ends[s]);
                    if (ns.size() >= 2 && all_deg_at_least(ns, 3) && g.degree(phi(ends[1 - s])) >= 3)
                        return true;
                }
                return false;
            };
            if ((cc.low = low_rule(1)) >= 0) {
                cc.type = ComponentType::M1;
                ++out.r1;
            } else if ((cc.low = low_rule(2)) >= 0) {
                cc.type = ComponentType::M2;
                ++out.r2;
            } else if (m3()) {
                cc.type = ComponentType::M3;
                ++out.r3;
            } else if (nI(ends[0]).size() <= 1 && nI(ends[1]).size() <= 1) {
                cc.type = ComponentType::M4;
                ++out.y;
            } else {
                throw unclassifiable(vs);
            }
        } else {
            vertex center = -1;
            for (vertex v : vs)
                if (hg.degree(v) == nv - 1)
                    center = v;
            int seen = 0;
            for (vertex v : vs)
                seen += !nI(v).empty();

            if (nv == 3) {
                cc.center = center;
                cc.type = seen <= 1 ? ComponentType::S5 : ComponentType::S6;
                ++(seen <= 1 ? out.m_s5 : out.z_s6);
            } else if (center >= 0) {
                cc.center = center;
                const auto nc = nI(center);
                bool leaf_seen = false, shared = false;
                for (vertex v : vs) {
                    if (v == center)
                        continue;
                    auto nl = nI(v);
                    leaf_seen = leaf_seen || !nl.empty();
                    for (vertex w : nl)
                        shared = shared || std::binary_search(nc.begin(), nc.end(), w);
                }
                if (shared) {
                    cc.type = ComponentType::S1;
                    out.star_sizes_D.push_back(nv);
                } else if (!nc.empty() && !leaf_seen) {
                    cc.type = ComponentType::S2;
                    out.star_sizes_E.push_back(nv);
                } else if (nc.empty() && leaf_seen) {
                    cc.type = ComponentType::S3;
                    out.star_sizes_F.push_back(nv);
                } else if (nc.empty() && !leaf_seen) {
                    cc.type = ComponentType::S4;
                    out.star_sizes_L.push_back(nv);
                } else {
                    throw unclassifiable(vs);
                }
            } else {
                // non-star tree
                std::vector<vertex> empty;
                for (vertex v : vs)
                    if (nI(v).empty())
                        empty.push_back(v);
                std::vector<edge> pairs; // leaf, neighbour with one common phi(I) neighbour
                for (vertex u : vs) {
                    if (hg.degree(u) != 1)
                        continue;
                    const vertex v = hg.neighbors(u)[0];
                    auto a = nI(u), b = nI(v);
                    if (a.size() == 1 && a == b)
                        pairs.push_back({u, v});
                }
                auto avoids = [](edge p, vertex x) { return p.first != x && p.second != x; };
                if (empty.size() >= 2) {
                    cc.type = ComponentType::T1;
                    out.tree_sizes_A.push_back(nv);
                } else if (empty.size() == 1
                           && std::any_of(pairs.begin(), pairs.end(), [&](edge p) { return avoids(p, empty[0]); })) {
                    cc.type = ComponentType::T2;
                    for (edge p : pairs)
                        if (avoids(p, empty[0])) {
                            cc.shared_pairs.push_back(p);
                            break;
                        }
                    out.tree_sizes_B.push_back(nv);
                } else {
                    for (std::size_t i = 0; i < pairs.size() && cc.shared_pairs.empty(); ++i)
                        for (std::size_t j = i + 1; j < pairs.size(); ++j)
                            if (avoids(pairs[j], pairs[i].first) && avoids(pairs[j], pairs[i].second)) {
                                cc.shared_pairs = {pairs[i], pairs[j]};
                                break;
                            }
                    if (cc.shared_pairs.empty())
                        throw unclassifiable(vs);
                    cc.type = ComponentType::T3;
                    out.tree_sizes_C.push_back(nv);
                }
            }
        }
        out.components.push_back(std::move(cc));
    }
    return out;
}

} // namespace psrlab
