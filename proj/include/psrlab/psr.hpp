#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "psrlab/embedding.hpp"
#include "psrlab/error.hpp"
#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"
#include "psrlab/planarity.hpp"
#include "psrlab/rational.hpp"
#include "psrlab/saturation.hpp"

namespace psrlab {

struct PsrLimits {
    long long max_nodes = 10'000'000;
    double max_seconds = 300;
    int threads = 0; // 0: PSRLAB_THREADS, else the number of processors
};

struct PsrResult {
    rational value;
    PlaneGraph witness;
    long long explored = 0; // (skeleton, embedding class) nodes
    // one line per exhausted skeleton class: k=<k> skeleton=<hash> classes=<n> saturated=<0|1>
    std::vector<std::string> log;
};

struct UpperBound {
    rational value;
    PlaneGraph witness;
};

namespace detail {

inline int worker_count(int requested)
{
    if (requested > 0)
        return requested;
    if (const char* env = std::getenv("PSRLAB_THREADS")) {
        int t = std::atoi(env);
        if (t > 0)
            return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

// FNV-1a over the edge list; names a skeleton in the run log.
inline std::string skeleton_hash(const Graph& s)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](int x) {
        for (int i = 0; i < 4; ++i) {
            h ^= static_cast<std::uint64_t>((x >> (8 * i)) & 0xff);
            h *= 1099511628211ULL;
        }
    };
    mix(s.vertex_count());
    for (auto [u, v] : s.edges()) {
        mix(u);
        mix(v);
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

// Every cyclic order of `nb`, with nb[0] fixed in front.
inline std::vector<std::vector<vertex>> cyclic_orders(const std::vector<vertex>& nb)
{
    if (nb.size() <= 2)
        return {nb};
    std::vector<vertex> rest(nb.begin() + 1, nb.end());
    std::sort(rest.begin(), rest.end());
    std::vector<std::vector<vertex>> out;
    do {
        std::vector<vertex> r{nb[0]};
        r.insert(r.end(), rest.begin(), rest.end());
        out.push_back(std::move(r));
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

// Calls f(rot) for every genus-0 rotation system of the component `verts`
// of g; rotations outside the component are left empty.
template <class F>
void for_each_planar_rotation(const Graph& g, const std::vector<vertex>& verts, F&& f)
{
    std::vector<std::vector<std::vector<vertex>>> choices;
    for (vertex v : verts)
        choices.push_back(cyclic_orders(g.neighbors(v)));
    RotationSystem rot(g.vertex_count());
    int edges = 0;
    for (vertex v : verts)
        edges += g.degree(v);
    edges /= 2;
    std::vector<std::size_t> idx(verts.size(), 0);
    while (true) {
        for (std::size_t i = 0; i < verts.size(); ++i)
            rot[verts[i]] = choices[i][idx[i]];
        auto faces = trace_faces(rot, verts);
        if (static_cast<int>(verts.size()) - edges + static_cast<int>(faces.size()) == 2)
            f(rot, faces);
        std::size_t i = 0;
        while (i < idx.size() && ++idx[i] == choices[i].size())
            idx[i++] = 0;
        if (i == idx.size())
            return;
    }
}

// A component's embedding as the solver sees it: face vertex sets in trace order.
struct ComponentShape {
    RotationSystem rot; // only this component's vertices filled
    std::vector<std::vector<vertex>> faces;
};

// Genus-0 embeddings of one connected component, deduplicated by the
// multiset of face vertex sets.
inline std::vector<ComponentShape> component_shapes(const Graph& h, const std::vector<vertex>& verts,
                                                    long long& nodes)
{
    std::map<std::vector<std::vector<vertex>>, ComponentShape> seen;
    for_each_planar_rotation(h, verts, [&](const RotationSystem& rot, const std::vector<FaceBoundary>& faces) {
        ++nodes;
        ComponentShape cs;
        for (auto& f : faces)
            cs.faces.push_back(face_vertices(f));
        auto key = cs.faces;
        std::sort(key.begin(), key.end());
        if (seen.count(key))
            return;
        cs.rot = rot;
        seen.emplace(std::move(key), std::move(cs));
    });
    std::vector<ComponentShape> out;
    for (auto& [k, cs] : seen)
        out.push_back(std::move(cs));
    return out;
}

class SearchBudget {
public:
    SearchBudget(const PsrLimits& lim)
        : max_nodes_(lim.max_nodes),
          deadline_(std::chrono::steady_clock::now()
                    + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(lim.max_seconds)))
    {
    }

    void spend(long long n)
    {
        if (nodes_.fetch_add(n) + n > max_nodes_ || std::chrono::steady_clock::now() > deadline_)
            exceeded_ = true;
    }
    bool exceeded() const { return exceeded_; }
    long long nodes() const { return nodes_; }

private:
    long long max_nodes_;
    std::chrono::steady_clock::time_point deadline_;
    std::atomic<long long> nodes_{0};
    std::atomic<bool> exceeded_{false};
};

struct SkeletonOutcome {
    long long classes = 0;
    bool saturated = false;
    bool aborted = false;
    PlaneGraph witness;
};

// Enumerates the co-faciality classes of plane drawings of h (v(h) = v(g))
// and stops at the first saturated one.
class SkeletonSearch {
public:
    SkeletonSearch(const Graph& g, const Graph& h, SearchBudget& budget)
        : g_(g), h_(h), budget_(budget), cache_(h, g)
    {
    }

    SkeletonOutcome run()
    {
        for (auto& comp : connected_components(h_)) {
            if (comp.size() == 1) {
                isolated_.push_back(comp[0]);
                continue;
            }
            long long nodes = 0;
            comps_.push_back(comp);
            shapes_.push_back(component_shapes(h_, comp, nodes));
            budget_.spend(nodes);
        }
        choice_.assign(comps_.size(), {});
        choose_shape(0);
        return std::move(out_);
    }

private:
    struct Choice {
        int shape = 0;
        int outer = 0;      // face index
        int slot_comp = -1; // -1: unbounded face
        int slot_face = -1;
    };

    bool stop() const { return out_.saturated || out_.aborted; }

    // shape and outer face for every component
    void choose_shape(std::size_t c)
    {
        if (stop())
            return;
        if (c == comps_.size()) {
            choose_slot(0);
            return;
        }
        for (std::size_t s = 0; s < shapes_[c].size() && !stop(); ++s) {
            const auto& faces = shapes_[c][s].faces;
            std::set<std::vector<vertex>> outer_seen;
            for (std::size_t f = 0; f < faces.size() && !stop(); ++f) {
                if (!outer_seen.insert(faces[f]).second)
                    continue;
                choice_[c].shape = static_cast<int>(s);
                choice_[c].outer = static_cast<int>(f);
                choose_shape(c + 1);
            }
        }
    }

    // Inner faces of component c, one index per distinct vertex set.
    std::vector<int> inner_faces(std::size_t c) const
    {
        const auto& faces = shapes_[c][choice_[c].shape].faces;
        std::vector<int> out;
        std::set<std::vector<vertex>> seen;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (static_cast<int>(f) != choice_[c].outer && seen.insert(faces[f]).second)
                out.push_back(static_cast<int>(f));
        return out;
    }

    bool creates_cycle(std::size_t c, int parent) const
    {
        while (parent >= 0) {
            if (parent == static_cast<int>(c))
                return true;
            parent = choice_[parent].slot_comp;
        }
        return false;
    }

    void choose_slot(std::size_t c)
    {
        if (stop())
            return;
        if (c == comps_.size()) {
            distribute_isolated();
            return;
        }
        choice_[c].slot_comp = -1;
        choice_[c].slot_face = -1;
        choose_slot(c + 1);
        for (std::size_t p = 0; p < comps_.size() && !stop(); ++p) {
            if (p == c)
                continue;
            for (int f : inner_faces(p)) {
                if (stop())
                    return;
                choice_[c].slot_comp = static_cast<int>(p);
                choice_[c].slot_face = f;
                choose_slot(c + 1);
            }
        }
        choice_[c].slot_comp = -1;
        choice_[c].slot_face = -1;
    }

    // Isolated vertices are interchangeable; what matters per face is whether
    // it holds none, one, or at least two of them.
    void distribute_isolated()
    {
        for (std::size_t c = 0; c < comps_.size(); ++c)
            if (creates_cycle(c, choice_[c].slot_comp))
                return;
        std::vector<std::pair<int, int>> slots{{-1, -1}};
        for (std::size_t c = 0; c < comps_.size(); ++c)
            for (int f : inner_faces(c))
                slots.push_back({static_cast<int>(c), f});
        const int n_iso = static_cast<int>(isolated_.size());
        std::vector<int> level(slots.size(), 0);
        while (!stop()) {
            int lo = 0;
            bool open = false;
            for (int x : level) {
                lo += x;
                open = open || x == 2;
            }
            if (lo == n_iso || (open && lo <= n_iso))
                evaluate(slots, level);
            std::size_t i = 0;
            while (i < level.size() && ++level[i] == 3)
                level[i++] = 0;
            if (i == level.size())
                return;
        }
    }

    void evaluate(const std::vector<std::pair<int, int>>& slots, const std::vector<int>& level)
    {
        // isolated vertices to slots: the minimum counts, extras in the first open slot
        std::vector<int> count(level);
        int placed = std::accumulate(count.begin(), count.end(), 0);
        for (std::size_t s = 0; s < count.size() && placed < static_cast<int>(isolated_.size()); ++s)
            if (level[s] == 2) {
                count[s] += static_cast<int>(isolated_.size()) - placed;
                placed = static_cast<int>(isolated_.size());
            }
        std::vector<int> iso_slot;
        for (std::size_t s = 0; s < count.size(); ++s)
            for (int k = 0; k < count[s]; ++k)
                iso_slot.push_back(static_cast<int>(s));

        // composite faces by slot: the slot's own face plus outer faces of its children
        std::vector<std::vector<vertex>> members(slots.size());
        auto slot_index = [&](int comp, int face) {
            for (std::size_t s = 0; s < slots.size(); ++s)
                if (slots[s].first == comp && slots[s].second == face)
                    return static_cast<int>(s);
            return -1;
        };
        std::vector<std::vector<int>> owned(comps_.size());
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            const auto& faces = shapes_[c][choice_[c].shape].faces;
            // inner faces sharing a vertex set with a listed slot behave like it
            for (std::size_t f = 0; f < faces.size(); ++f) {
                if (static_cast<int>(f) == choice_[c].outer)
                    continue;
                int s = slot_index(static_cast<int>(c), static_cast<int>(f));
                if (s >= 0)
                    members[s].insert(members[s].end(), faces[f].begin(), faces[f].end());
            }
            const auto& outer = faces[choice_[c].outer];
            int s = choice_[c].slot_comp < 0 ? 0 : slot_index(choice_[c].slot_comp, choice_[c].slot_face);
            members[s].insert(members[s].end(), outer.begin(), outer.end());
        }
        for (std::size_t i = 0; i < isolated_.size(); ++i)
            members[iso_slot[i]].push_back(isolated_[i]);

        std::vector<edge> addable;
        for (auto& mem : members) {
            std::sort(mem.begin(), mem.end());
            mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
            for (std::size_t i = 0; i < mem.size(); ++i)
                for (std::size_t j = i + 1; j < mem.size(); ++j)
                    if (!h_.adjacent(mem[i], mem[j]))
                        addable.push_back({mem[i], mem[j]});
        }
        std::sort(addable.begin(), addable.end());
        addable.erase(std::unique(addable.begin(), addable.end()), addable.end());
        if (!seen_.insert(addable).second)
            return;
        ++out_.classes;
        budget_.spend(1);
        if (budget_.exceeded()) {
            out_.aborted = true;
            return;
        }
        for (auto& p : addable)
            if (cache_.embeds(p))
                return;
        out_.saturated = true;
        out_.witness = realize(slots, iso_slot);
    }

    PlaneGraph realize(const std::vector<std::pair<int, int>>& slots, const std::vector<int>& iso_slot) const
    {
        RotationSystem rot(h_.vertex_count());
        for (std::size_t c = 0; c < comps_.size(); ++c)
            for (vertex v : comps_[c])
                rot[v] = shapes_[c][choice_[c].shape].rot[v];
        auto all = connected_components(h_);
        std::map<vertex, int> index_of_first;
        for (std::size_t i = 0; i < all.size(); ++i)
            index_of_first[all[i][0]] = static_cast<int>(i);
        auto pg_index = [&](int c) { return index_of_first.at(comps_[c][0]); };
        std::vector<Placement> pl(all.size());
        for (std::size_t c = 0; c < comps_.size(); ++c) {
            auto& p = pl[pg_index(static_cast<int>(c))];
            p.outer_face = choice_[c].outer;
            if (choice_[c].slot_comp >= 0) {
                p.parent = pg_index(choice_[c].slot_comp);
                p.parent_face = choice_[c].slot_face;
            }
        }
        for (std::size_t i = 0; i < isolated_.size(); ++i) {
            auto& p = pl[index_of_first.at(isolated_[i])];
            const auto [sc, sf] = slots[iso_slot[i]];
            if (sc >= 0) {
                p.parent = pg_index(sc);
                p.parent_face = sf;
            }
        }
        return PlaneGraph(h_, std::move(rot), std::move(pl));
    }

    const Graph& g_;
    const Graph& h_;
    SearchBudget& budget_;
    PairContainmentCache cache_;
    std::vector<std::vector<vertex>> comps_;
    std::vector<vertex> isolated_;
    std::vector<std::vector<ComponentShape>> shapes_;
    std::vector<Choice> choice_;
    std::set<std::vector<edge>> seen_;
    SkeletonOutcome out_;
};

// Edge subsets of size k, as spanning subgraphs of g, one per isomorphism class.
inline std::vector<Graph> skeleton_classes(const Graph& g, int k, SearchBudget& budget)
{
    const auto& es = g.edges();
    const int m = static_cast<int>(es.size());
    std::map<std::vector<int>, std::vector<Graph>> buckets;
    std::vector<Graph> out;
    std::vector<int> pick(k);
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        std::vector<edge> sub;
        for (int i : pick)
            sub.push_back(es[i]);
        Graph s(g.vertex_count(), sub);
        std::vector<int> degs;
        for (vertex v = 0; v < s.vertex_count(); ++v)
            degs.push_back(s.degree(v));
        std::sort(degs.begin(), degs.end());
        auto& bucket = buckets[degs];
        if (std::none_of(bucket.begin(), bucket.end(), [&](const Graph& t) { return isomorphic(s, t); })) {
            bucket.push_back(s);
            out.push_back(s);
        }
        budget.spend(1);
        if (budget.exceeded())
            return out;
        int i = k - 1;
        while (i >= 0 && pick[i] == m - k + i)
            --i;
        if (i < 0)
            break;
        ++pick[i];
        for (int j = i + 1; j < k; ++j)
            pick[j] = pick[j - 1] + 1;
    }
    return out;
}

inline void check_solver_input(const Graph& g, int max_vertices)
{
    if (g.vertex_count() > max_vertices)
        throw error(errc::size_limit, "solver handles at most " + std::to_string(max_vertices) + " vertices");
    for (vertex v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0)
            throw error(errc::invalid_graph, "G has an isolated vertex " + std::to_string(v));
    if (g.edge_count() == 0)
        throw error(errc::invalid_graph, "G has no edges");
    if (!is_planar(g))
        throw error(errc::not_planar, "G is not planar");
}

} // namespace detail

/// Greedy saturation from an all-isolated start (or from `start`) over
/// `trials` seeds; the smallest result wins.
inline UpperBound psr_upper(const Graph& g, int trials, unsigned long long seed,
                            const std::optional<PlaneGraph>& start = std::nullopt)
{
    if (!is_planar(g))
        throw error(errc::not_planar, "G is not planar");
    const PlaneGraph empty = make_plane_top_level(Graph(g.vertex_count(), {}), RotationSystem(g.vertex_count()));
    std::optional<UpperBound> best;
    for (int t = 0; t < std::max(trials, 1); ++t) {
        auto h = saturate_greedily(g, start ? *start : empty, seed + static_cast<unsigned long long>(t));
        rational r(h.edge_count(), g.edge_count());
        if (!best || r < best->value)
            best = UpperBound{r, std::move(h)};
    }
    return *best;
}

/// Exact plane-saturation ratio by increasing witness size.
inline PsrResult psr_exact(const Graph& g, const PsrLimits& limits = {})
{
    detail::check_solver_input(g, 10);
    detail::SearchBudget budget(limits);
    const int workers = detail::worker_count(limits.threads);
    PsrResult res;
    auto fail = [&]() -> error {
        auto up = psr_upper(g, 3, 0);
        return error(errc::limit_exceeded, "search limit exceeded; best known upper bound " + to_string(up.value));
    };
    for (int k = 0; k <= g.edge_count(); ++k) {
        auto skeletons = detail::skeleton_classes(g, k, budget);
        if (budget.exceeded())
            throw fail();
        std::vector<detail::SkeletonOutcome> outcomes(skeletons.size());
        std::atomic<std::size_t> next{0};
        auto work = [&] {
            for (std::size_t i; (i = next.fetch_add(1)) < skeletons.size();)
                outcomes[i] = detail::SkeletonSearch(g, skeletons[i], budget).run();
        };
        std::vector<std::thread> pool;
        for (int t = 1; t < workers && t < static_cast<int>(skeletons.size()); ++t)
            pool.emplace_back(work);
        work();
        for (auto& t : pool)
            t.join();
        if (budget.exceeded())
            throw fail();
        std::optional<std::size_t> hit;
        for (std::size_t i = 0; i < skeletons.size(); ++i) {
            res.explored += outcomes[i].classes;
            res.log.push_back("k=" + std::to_string(k) + " skeleton=" + detail::skeleton_hash(skeletons[i])
                              + " classes=" + std::to_string(outcomes[i].classes)
                              + " saturated=" + (outcomes[i].saturated ? "1" : "0"));
            if (outcomes[i].saturated && !hit)
                hit = i;
        }
        if (hit) {
            res.value = rational(k, g.edge_count());
            res.witness = std::move(outcomes[*hit].witness);
            return res;
        }
    }
    // unreachable: a plane drawing of g itself is saturated
    throw error(errc::limit_exceeded, "no saturated subgraph found");
}

namespace detail {

// Labeled containment by trying every bijection; small graphs only.
class BruteContainment {
public:
    explicit BruteContainment(const Graph& g) : g_(g) {}

    bool contains(const Graph& h) const
    {
        std::vector<vertex> perm(g_.vertex_count());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            bool ok = true;
            for (auto [u, v] : h.edges())
                if (!g_.adjacent(perm[u], perm[v])) {
                    ok = false;
                    break;
                }
            if (ok)
                return true;
        } while (std::next_permutation(perm.begin(), perm.end()));
        return false;
    }

private:
    const Graph& g_;
};

} // namespace detail

/// Reference value with no symmetry reduction: every labeled edge subset,
/// rotation system, outer face and placement (each isolated vertex placed on
/// its own), with containment by exhaustive bijection.
inline PsrResult psr_naive(const Graph& g)
{
    if (g.vertex_count() > 6)
        throw error(errc::size_limit, "naive solver handles at most 6 vertices");
    detail::check_solver_input(g, 6);
    const detail::BruteContainment brute(g);
    const auto& es = g.edges();
    const int m = static_cast<int>(es.size());
    const int n = g.vertex_count();
    PsrResult res;

    for (int k = 0; k <= m; ++k) {
        std::vector<int> pick(k);
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::vector<edge> sub;
            for (int i : pick)
                sub.push_back(es[i]);
            const Graph h(n, sub);
            const auto comps = connected_components(h);
            const int nc = static_cast<int>(comps.size());
            std::map<edge, bool> memo;
            auto pair_embeds = [&](edge p) {
                auto it = memo.find(p);
                if (it == memo.end())
                    it = memo.emplace(p, brute.contains(h.with_edge(p.first, p.second))).first;
                return it->second;
            };

            // full rotation systems
            std::vector<std::vector<std::vector<vertex>>> choices(n);
            for (vertex v = 0; v < n; ++v)
                choices[v] = detail::cyclic_orders(h.neighbors(v));
            std::vector<std::size_t> ri(n, 0);
            std::optional<PlaneGraph> found;
            while (!found) {
                RotationSystem rot(n);
                for (vertex v = 0; v < n; ++v)
                    rot[v] = choices[v][ri[v]];
                bool planar = true;
                std::vector<int> face_count(nc);
                for (int c = 0; c < nc && planar; ++c) {
                    ComponentEmbedding ce;
                    ce.vertices = comps[c];
                    int deg = 0;
                    for (vertex v : comps[c])
                        deg += h.degree(v);
                    ce.edge_count = deg / 2;
                    ce.faces = trace_faces(rot, comps[c]);
                    face_count[c] = static_cast<int>(ce.faces.size());
                    planar = static_cast<int>(ce.vertices.size()) - ce.edge_count + face_count[c] == 2;
                }
                if (planar) {
                    // outer faces, then one slot per component: -1 or (parent, face) encoded
                    std::vector<Placement> pl(nc);
                    std::vector<int> outer(nc, 0);
                    auto try_placements = [&](auto&& self, int c) -> void {
                        if (found)
                            return;
                        if (c == nc) {
                            PlaneGraph p;
                            try {
                                p = PlaneGraph(h, rot, pl);
                            } catch (const error&) {
                                return; // containment cycle
                            }
                            for (auto& e : addable_pairs(p))
                                if (pair_embeds(e))
                                    return;
                            found = p;
                            return;
                        }
                        pl[c] = Placement{};
                        pl[c].outer_face = outer[c];
                        self(self, c + 1);
                        for (int q = 0; q < nc && !found; ++q) {
                            if (q == c || h.degree(comps[q][0]) == 0)
                                continue;
                            for (int f = 0; f < face_count[q] && !found; ++f) {
                                if (f == outer[q])
                                    continue;
                                pl[c] = Placement{q, f, outer[c]};
                                self(self, c + 1);
                            }
                        }
                        pl[c] = Placement{};
                    };
                    auto try_outer = [&](auto&& self, int c) -> void {
                        if (found)
                            return;
                        if (c == nc) {
                            try_placements(try_placements, 0);
                            return;
                        }
                        for (int f = 0; f < face_count[c] && !found; ++f) {
                            outer[c] = f;
                            self(self, c + 1);
                        }
                    };
                    try_outer(try_outer, 0);
                }
                ++res.explored;
                vertex v = 0;
                while (v < n && ++ri[v] == choices[v].size())
                    ri[v++] = 0;
                if (v == n)
                    break;
            }
            if (found) {
                res.value = rational(k, m);
                res.witness = std::move(*found);
                return res;
            }
            int i = k - 1;
            while (i >= 0 && pick[i] == m - k + i)
                --i;
            if (i < 0)
                break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j)
                pick[j] = pick[j - 1] + 1;
        }
    }
    throw error(errc::limit_exceeded, "no saturated subgraph found");
}

} // namespace psrlab
