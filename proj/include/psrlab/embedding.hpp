#pragma once

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "psrlab/error.hpp"
#include "psrlab/graph.hpp"

namespace psrlab {

// Injective edge-preserving vertex map from H into G (map[h-vertex] = g-vertex).
struct Embedding {
    std::vector<vertex> map;

    vertex operator()(vertex v) const { return map[v]; }
    std::size_t size() const { return map.size(); }
    friend bool operator==(const Embedding&, const Embedding&) = default;
};

inline bool is_valid_embedding(const Graph& h, const Graph& g, const Embedding& phi)
{
    if (static_cast<int>(phi.map.size()) != h.vertex_count())
        return false;
    std::vector<char> used(g.vertex_count(), 0);
    for (vertex x : phi.map) {
        if (x < 0 || x >= g.vertex_count() || used[x])
            return false;
        used[x] = 1;
    }
    for (auto [a, b] : h.edges())
        if (!g.adjacent(phi(a), phi(b)))
            return false;
    return true;
}

inline std::vector<vertex> inverse_map(const Embedding& phi, int g_vertices)
{
    std::vector<vertex> inv(g_vertices, -1);
    for (std::size_t v = 0; v < phi.map.size(); ++v)
        inv[phi.map[v]] = static_cast<vertex>(v);
    return inv;
}

namespace detail {

// Backtracking containment search. Degree-one vertices hanging off a
// non-leaf ("pendants") are not branched on: once every other non-isolated
// vertex is placed they are assigned by bipartite matching.
class ContainmentSearch {
public:
    ContainmentSearch(const Graph& h, const Graph& g) : h_(h), g_(g) {}

    std::optional<Embedding> run()
    {
        const int nh = h_.vertex_count(), ng = g_.vertex_count();
        if (nh > ng || h_.edge_count() > g_.edge_count())
            return std::nullopt;
        classify_vertices();
        order_core();
        build_compat();
        phi_.assign(nh, -1);
        used_.assign(ng, 0);
        if (!search(0))
            return std::nullopt;
        // isolated vertices take the remaining host vertices in order
        vertex next = 0;
        for (vertex x = 0; x < nh; ++x) {
            if (phi_[x] >= 0)
                continue;
            while (used_[next])
                ++next;
            phi_[x] = next;
            used_[next] = 1;
        }
        return Embedding{phi_};
    }

    long long nodes() const { return nodes_; }

private:
    void classify_vertices()
    {
        const int nh = h_.vertex_count();
        pendant_parent_.assign(nh, -1);
        pendants_of_.assign(nh, {});
        is_core_.assign(nh, 0);
        for (vertex x = 0; x < nh; ++x) {
            if (h_.degree(x) == 0)
                continue;
            if (h_.degree(x) == 1) {
                vertex p = h_.neighbors(x)[0];
                if (h_.degree(p) >= 2 || p < x) {
                    pendant_parent_[x] = p;
                    pendants_of_[p].push_back(x);
                    has_pendants_ = true;
                    continue;
                }
            }
            is_core_[x] = 1;
        }
    }

    void order_core()
    {
        const int nh = h_.vertex_count();
        std::vector<char> placed(nh, 0);
        std::vector<int> placed_nbrs(nh, 0);
        int remaining = 0;
        for (vertex x = 0; x < nh; ++x)
            remaining += is_core_[x];
        while (remaining-- > 0) {
            vertex best = -1;
            for (vertex x = 0; x < nh; ++x) {
                if (!is_core_[x] || placed[x])
                    continue;
                if (best < 0 || placed_nbrs[x] > placed_nbrs[best]
                    || (placed_nbrs[x] == placed_nbrs[best] && h_.degree(x) > h_.degree(best)))
                    best = x;
            }
            placed[best] = 1;
            order_.push_back(best);
            for (vertex y : h_.neighbors(best))
                ++placed_nbrs[y];
        }
        // an earlier-placed neighbour to draw candidates from, and all earlier neighbours
        anchor_.assign(order_.size(), -1);
        earlier_.assign(order_.size(), {});
        std::vector<int> pos(nh, -1);
        for (std::size_t i = 0; i < order_.size(); ++i)
            pos[order_[i]] = static_cast<int>(i);
        for (std::size_t i = 0; i < order_.size(); ++i)
            for (vertex y : h_.neighbors(order_[i]))
                if (pos[y] >= 0 && pos[y] < static_cast<int>(i)) {
                    earlier_[i].push_back(y);
                    if (anchor_[i] < 0)
                        anchor_[i] = y;
                }
        // placed vertices reachable from order_[i] through not-yet-placed vertices:
        // their images must be within the same distance through unused host vertices
        reach_.assign(order_.size(), {});
        std::vector<int> dist(nh);
        for (std::size_t i = 0; i < order_.size(); ++i) {
            std::fill(dist.begin(), dist.end(), -1);
            std::vector<vertex> queue{order_[i]};
            dist[order_[i]] = 0;
            for (std::size_t q = 0; q < queue.size(); ++q) {
                vertex a = queue[q];
                for (vertex b : h_.neighbors(a)) {
                    if (dist[b] >= 0 || pos[b] < 0)
                        continue;
                    dist[b] = dist[a] + 1;
                    if (pos[b] < static_cast<int>(i)) {
                        if (dist[b] >= 2)
                            reach_[i].push_back({b, dist[b]});
                    } else {
                        queue.push_back(b);
                    }
                }
            }
        }
        // Symmetry breaking. above_[i] lists earlier vertices whose images must
        // be smaller than that of order_[i].
        above_.assign(order_.size(), {});
        auto require_above = [&](vertex lo, vertex hi) {
            if (pos[lo] > pos[hi])
                std::swap(lo, hi);
            above_[pos[hi]].push_back(lo);
        };
        // interchangeable single-edge components: images of their core ends increase
        vertex last_k2 = -1;
        for (vertex x : order_)
            if (h_.degree(x) == 1) {
                if (last_k2 >= 0)
                    require_above(last_k2, x);
                last_k2 = x;
            }
        for (auto& comp : connected_components(h_)) {
            if (comp.size() < 3)
                continue;
            const bool cycle = std::all_of(comp.begin(), comp.end(), [&](vertex v) { return h_.degree(v) == 2; });
            if (cycle) {
                // the first vertex takes the smallest image, its first-placed
                // neighbour a smaller one than the other neighbour
                vertex x0 = comp[0];
                for (vertex v : comp)
                    if (pos[v] < pos[x0])
                        x0 = v;
                for (vertex v : comp)
                    if (v != x0)
                        above_[pos[v]].push_back(x0);
                vertex a = h_.neighbors(x0)[0], b = h_.neighbors(x0)[1];
                if (comp.size() > 3)
                    require_above(a, b);
                continue;
            }
            // core twins (open or closed neighbourhoods equal): images increase in order
            std::map<std::vector<vertex>, std::vector<vertex>> open, closed;
            for (vertex v : comp) {
                if (!is_core_[v])
                    continue;
                auto nb = h_.neighbors(v);
                open[nb].push_back(v);
                nb.insert(std::lower_bound(nb.begin(), nb.end(), v), v);
                closed[nb].push_back(v);
            }
            for (auto* classes : {&open, &closed})
                for (auto& [key, cls] : *classes) {
                    std::sort(cls.begin(), cls.end(), [&](vertex p, vertex q) { return pos[p] < pos[q]; });
                    for (std::size_t j = 1; j < cls.size(); ++j)
                        require_above(cls[j - 1], cls[j]);
                }
        }
    }

    static std::vector<int> nbr_degrees(const Graph& gr, vertex v)
    {
        std::vector<int> d;
        for (vertex w : gr.neighbors(v))
            d.push_back(gr.degree(w));
        std::sort(d.rbegin(), d.rend());
        return d;
    }

    void build_compat()
    {
        const int nh = h_.vertex_count(), ng = g_.vertex_count();
        std::vector<std::vector<int>> gd(ng);
        for (vertex c = 0; c < ng; ++c)
            gd[c] = nbr_degrees(g_, c);
        compat_.assign(static_cast<std::size_t>(nh) * ng, 0);
        for (vertex x : order_) {
            auto hd = nbr_degrees(h_, x);
            for (vertex c = 0; c < ng; ++c) {
                if (g_.degree(c) < h_.degree(x))
                    continue;
                bool ok = true;
                for (std::size_t i = 0; i < hd.size() && ok; ++i)
                    ok = gd[c][i] >= hd[i];
                compat_[static_cast<std::size_t>(x) * ng + c] = ok;
            }
        }
    }

    bool compatible(vertex x, vertex c) const
    {
        return compat_[static_cast<std::size_t>(x) * g_.vertex_count() + c];
    }

    int free_neighbours(vertex c) const
    {
        int k = 0;
        for (vertex w : g_.neighbors(c))
            k += !used_[w];
        return k;
    }

    bool pendant_counts_ok(std::size_t upto) const
    {
        for (std::size_t i = 0; i < upto; ++i) {
            vertex x = order_[i];
            if (!pendants_of_[x].empty() && free_neighbours(phi_[x]) < static_cast<int>(pendants_of_[x].size()))
                return false;
        }
        return true;
    }

    bool reach_ok(std::size_t i)
    {
        if (reach_[i].empty())
            return true;
        int depth = 0;
        for (auto& r : reach_[i])
            depth = std::max(depth, r.second);
        gdist_.assign(g_.vertex_count(), -1);
        std::vector<vertex>& queue = bfs_queue_;
        queue.assign(1, phi_[order_[i]]);
        gdist_[queue[0]] = 0;
        for (std::size_t q = 0; q < queue.size(); ++q) {
            vertex a = queue[q];
            if (gdist_[a] == depth || (q > 0 && used_[a]))
                continue;
            for (vertex b : g_.neighbors(a))
                if (gdist_[b] < 0) {
                    gdist_[b] = gdist_[a] + 1;
                    queue.push_back(b);
                }
        }
        for (auto& [y, d] : reach_[i])
            if (gdist_[phi_[y]] < 0 || gdist_[phi_[y]] > d)
                return false;
        return true;
    }

    // Kuhn's augmenting paths: pendants of placed vertices on the left, free
    // host vertices on the right. Fills match_right_ on success.
    bool match_pendants()
    {
        left_.clear();
        for (vertex x = 0; x < h_.vertex_count(); ++x)
            if (pendant_parent_[x] >= 0 && phi_[pendant_parent_[x]] >= 0)
                left_.push_back(x);
        match_right_.assign(g_.vertex_count(), -1);
        visited_.assign(g_.vertex_count(), -1);
        for (std::size_t li = 0; li < left_.size(); ++li)
            if (!augment(li, static_cast<int>(li)))
                return false;
        return true;
    }

    bool augment(std::size_t li, int stamp)
    {
        for (vertex c : g_.neighbors(phi_[pendant_parent_[left_[li]]])) {
            if (used_[c] || visited_[c] == stamp)
                continue;
            visited_[c] = stamp;
            if (match_right_[c] < 0 || augment(static_cast<std::size_t>(match_right_[c]), stamp)) {
                match_right_[c] = static_cast<vertex>(li);
                return true;
            }
        }
        return false;
    }

    bool search(std::size_t i)
    {
        ++nodes_;
        if (i == order_.size())
            return assign_pendants();
        const vertex x = order_[i];
        auto try_candidate = [&](vertex c) {
            if (used_[c] || !compatible(x, c))
                return false;
            for (vertex y : earlier_[i])
                if (!g_.adjacent(c, phi_[y]))
                    return false;
            for (vertex y : above_[i])
                if (c < phi_[y])
                    return false;
            phi_[x] = c;
            used_[c] = 1;
            bool ok = reach_ok(i) && pendant_counts_ok(i + 1) && (!has_pendants_ || match_pendants()) && search(i + 1);
            if (!ok) {
                used_[c] = 0;
                phi_[x] = -1;
            }
            return ok;
        };
        if (anchor_[i] >= 0) {
            for (vertex c : g_.neighbors(phi_[anchor_[i]]))
                if (try_candidate(c))
                    return true;
        } else {
            for (vertex c = 0; c < g_.vertex_count(); ++c)
                if (try_candidate(c))
                    return true;
        }
        return false;
    }

    bool assign_pendants()
    {
        if (!match_pendants())
            return false;
        for (vertex c = 0; c < g_.vertex_count(); ++c)
            if (match_right_[c] >= 0) {
                phi_[left_[match_right_[c]]] = c;
                used_[c] = 1;
            }
        return true;
    }

    const Graph& h_;
    const Graph& g_;
    std::vector<vertex> pendant_parent_;
    std::vector<std::vector<vertex>> pendants_of_;
    std::vector<char> is_core_;
    std::vector<vertex> order_;
    std::vector<vertex> anchor_;
    std::vector<std::vector<vertex>> earlier_;
    std::vector<std::vector<vertex>> above_;
    std::vector<char> compat_;
    std::vector<vertex> phi_;
    std::vector<char> used_;
    std::vector<std::vector<std::pair<vertex, int>>> reach_;
    std::vector<int> gdist_;
    std::vector<vertex> bfs_queue_;
    std::vector<vertex> left_;
    std::vector<vertex> match_right_;
    std::vector<int> visited_;
    bool has_pendants_ = false;
    long long nodes_ = 0;
};

} // namespace detail

/// An injective edge-preserving map of h into g, or nullopt when none exists.
/// Deterministic: candidates are tried in a fixed order.
inline std::optional<Embedding> find_embedding(const Graph& h, const Graph& g)
{
    return detail::ContainmentSearch(h, g).run();
}

inline bool embeds(const Graph& h, const Graph& g) { return find_embedding(h, g).has_value(); }

/// Isomorphism test for graphs of equal order and size.
inline bool isomorphic(const Graph& a, const Graph& b)
{
    return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && embeds(a, b);
}

// ---------------------------------------------------------------------------
// ".map" text format: `map <h-vertex> <g-vertex>`, complete, sorted by h-vertex.

inline void write_map(std::ostream& os, const Embedding& phi)
{
    for (std::size_t v = 0; v < phi.map.size(); ++v)
        os << "map " << v << ' ' << phi.map[v] << '\n';
}

inline std::string to_map_text(const Embedding& phi)
{
    std::ostringstream os;
    write_map(os, phi);
    return os.str();
}

inline Embedding read_map(std::istream& is)
{
    std::string line;
    int lineno = 0;
    Embedding phi;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::blank_or_comment(line))
            continue;
        std::istringstream ls(line);
        std::string tag;
        long long hv, gv;
        if (!(ls >> tag >> hv >> gv) || tag != "map")
            throw detail::parse_error(lineno, "expected 'map <h> <g>'");
        if (hv != static_cast<long long>(phi.map.size()))
            throw detail::parse_error(lineno, "map lines must be complete and sorted by h-vertex");
        if (gv < 0)
            throw detail::parse_error(lineno, "negative g-vertex");
        phi.map.push_back(static_cast<vertex>(gv));
    }
    return phi;
}

inline Embedding parse_map(const std::string& text)
{
    std::istringstream is(text);
    return read_map(is);
}

} // namespace psrlab
