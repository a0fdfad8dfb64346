#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "psrlab/error.hpp"
#include "psrlab/graph.hpp"

namespace psrlab {

// An oriented edge occurrence.
struct Dart {
    vertex tail = 0;
    vertex head = 0;
    friend auto operator<=>(const Dart&, const Dart&) = default;
};

using FaceBoundary = std::vector<Dart>;
using RotationSystem = std::vector<std::vector<vertex>>;

/// Traces the faces of the component spanned by `verts` under `rot`.
///
/// The dart after (u->v) is (v->w) where w follows u cyclically in the
/// rotation at v. Faces are discovered starting from the lexicographically
/// smallest unvisited dart. An isolated vertex has a single empty face.
inline std::vector<FaceBoundary> trace_faces(const RotationSystem& rot, const std::vector<vertex>& verts)
{
    std::vector<vertex> sorted = verts;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.size() == 1 && rot[sorted[0]].empty())
        return {FaceBoundary{}};

    auto index_in = [&](vertex at, vertex nb) {
        const auto& r = rot[at];
        return static_cast<std::size_t>(std::find(r.begin(), r.end(), nb) - r.begin());
    };

    std::vector<std::vector<char>> seen(rot.size());
    for (vertex v : sorted)
        seen[v].assign(rot[v].size(), 0);

    std::vector<FaceBoundary> faces;
    for (vertex u : sorted) {
        // lexicographic order on (tail, head): sort heads of u
        std::vector<vertex> heads = rot[u];
        std::sort(heads.begin(), heads.end());
        for (vertex v : heads) {
            if (seen[u][index_in(u, v)])
                continue;
            FaceBoundary f;
            Dart d{u, v};
            while (true) {
                auto& mark = seen[d.tail][index_in(d.tail, d.head)];
                if (mark)
                    break;
                mark = 1;
                f.push_back(d);
                const auto& r = rot[d.head];
                std::size_t i = index_in(d.head, d.tail);
                d = Dart{d.head, r[(i + 1) % r.size()]};
            }
            faces.push_back(std::move(f));
        }
    }
    return faces;
}

inline std::vector<vertex> face_vertices(const FaceBoundary& f)
{
    std::vector<vertex> vs;
    for (auto& d : f)
        vs.push_back(d.tail);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

struct ComponentEmbedding {
    std::vector<vertex> vertices; // sorted
    int edge_count = 0;
    std::vector<FaceBoundary> faces;

    bool isolated() const { return vertices.size() == 1 && edge_count == 0; }
};

/// (2 - V + E - F) / 2; zero iff the rotation system is planar.
inline int euler_genus(const ComponentEmbedding& c)
{
    const int deficiency = 2 - static_cast<int>(c.vertices.size()) + c.edge_count - static_cast<int>(c.faces.size());
    if (deficiency % 2 != 0 || deficiency < 0)
        throw error(errc::invalid_plane, "inconsistent face tracing");
    return deficiency / 2;
}

// Where a component sits: at top level (parent < 0) or inside a face of a
// parent component. `outer_face` is the component's own face merged with
// that region.
struct Placement {
    int parent = -1;
    int parent_face = -1;
    int outer_face = 0;

    bool top_level() const { return parent < 0; }
    friend bool operator==(const Placement&, const Placement&) = default;
};

struct CompositeFace {
    std::vector<std::pair<int, int>> members; // (component, face), sorted
    std::vector<vertex> incident_vertices;    // sorted
    bool unbounded = false;                   // contains the top-level region
};

/// A plane graph: per-component rotation systems plus a containment forest.
/// Components are indexed by their smallest vertex.
class PlaneGraph {
public:
    PlaneGraph() = default;

    PlaneGraph(Graph g, RotationSystem rotation, std::vector<Placement> placements)
        : g_(std::move(g)), rot_(std::move(rotation)), place_(std::move(placements))
    {
        const int n = g_.vertex_count();
        if (static_cast<int>(rot_.size()) != n)
            throw error(errc::invalid_plane, "rotation system size mismatch");
        for (vertex v = 0; v < n; ++v) {
            auto r = rot_[v];
            std::sort(r.begin(), r.end());
            if (r != g_.neighbors(v))
                throw error(errc::invalid_plane, "rotation at " + std::to_string(v) + " does not list its neighbours");
        }
        auto comps = connected_components(g_);
        comp_of_.assign(n, -1);
        for (std::size_t c = 0; c < comps.size(); ++c) {
            ComponentEmbedding ce;
            ce.vertices = comps[c];
            int deg = 0;
            for (vertex v : ce.vertices) {
                comp_of_[v] = static_cast<int>(c);
                deg += g_.degree(v);
            }
            ce.edge_count = deg / 2;
            ce.faces = trace_faces(rot_, ce.vertices);
            if (euler_genus(ce) != 0)
                throw error(errc::invalid_plane, "component " + std::to_string(c) + " is not genus 0");
            comps_.push_back(std::move(ce));
        }
        if (place_.size() != comps_.size())
            throw error(errc::invalid_plane, "expected one placement per component");
        validate_placements();
    }

    const Graph& underlying() const { return g_; }
    int vertex_count() const { return g_.vertex_count(); }
    int edge_count() const { return g_.edge_count(); }
    const RotationSystem& rotation() const { return rot_; }
    const std::vector<vertex>& rotation(vertex v) const { return rot_[v]; }
    const std::vector<ComponentEmbedding>& components() const { return comps_; }
    const ComponentEmbedding& component(int c) const { return comps_[c]; }
    int component_count() const { return static_cast<int>(comps_.size()); }
    int component_of(vertex v) const { return comp_of_[v]; }
    const std::vector<Placement>& placements() const { return place_; }
    const Placement& placement(int c) const { return place_[c]; }

    std::vector<vertex> isolated() const
    {
        std::vector<vertex> out;
        for (vertex v = 0; v < vertex_count(); ++v)
            if (g_.degree(v) == 0)
                out.push_back(v);
        return out;
    }

    /// (component, face) holding dart d.
    std::pair<int, int> face_of(Dart d) const
    {
        const int c = comp_of_[d.tail];
        const auto& faces = comps_[c].faces;
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (std::find(faces[f].begin(), faces[f].end(), d) != faces[f].end())
                return {c, static_cast<int>(f)};
        throw error(errc::invalid_plane, "dart not found");
    }

    /// First face of component c whose vertex set equals `verts` (sorted).
    std::optional<int> find_face(int c, const std::vector<vertex>& verts) const
    {
        for (std::size_t f = 0; f < comps_[c].faces.size(); ++f)
            if (face_vertices(comps_[c].faces[f]) == verts)
                return static_cast<int>(f);
        return std::nullopt;
    }

private:
    void validate_placements() const
    {
        const int k = component_count();
        for (int c = 0; c < k; ++c) {
            const auto& p = place_[c];
            if (p.outer_face < 0 || p.outer_face >= static_cast<int>(comps_[c].faces.size()))
                throw error(errc::invalid_plane, "outer face index out of range for component " + std::to_string(c));
            if (p.top_level())
                continue;
            if (p.parent >= k || p.parent == c)
                throw error(errc::invalid_plane, "bad parent for component " + std::to_string(c));
            if (p.parent_face < 0 || p.parent_face >= static_cast<int>(comps_[p.parent].faces.size()))
                throw error(errc::invalid_plane, "parent face index out of range for component " + std::to_string(c));
        }
        for (int c = 0; c < k; ++c) {
            int steps = 0;
            for (int x = c; !place_[x].top_level(); x = place_[x].parent)
                if (++steps > k)
                    throw error(errc::invalid_plane, "containment cycle through component " + std::to_string(c));
        }
    }

    Graph g_;
    RotationSystem rot_;
    std::vector<Placement> place_;
    std::vector<ComponentEmbedding> comps_;
    std::vector<int> comp_of_;
};

// ---------------------------------------------------------------------------
// Composite faces and co-faciality

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace detail

/// Faces merged by containment; ordered by smallest (component, face) member.
inline std::vector<CompositeFace> composite_faces(const PlaneGraph& p)
{
    const int k = p.component_count();
    std::vector<int> offset(k + 1, 0);
    for (int c = 0; c < k; ++c)
        offset[c + 1] = offset[c] + static_cast<int>(p.component(c).faces.size());
    const int root = offset[k];
    detail::UnionFind uf(root + 1);
    for (int c = 0; c < k; ++c) {
        const auto& pl = p.placement(c);
        const int own = offset[c] + pl.outer_face;
        uf.unite(own, pl.top_level() ? root : offset[pl.parent] + pl.parent_face);
    }
    std::vector<int> cls_index(root + 1, -1);
    std::vector<CompositeFace> out;
    for (int c = 0; c < k; ++c) {
        const auto& comp = p.component(c);
        for (int f = 0; f < static_cast<int>(comp.faces.size()); ++f) {
            const int r = uf.find(offset[c] + f);
            if (cls_index[r] < 0) {
                cls_index[r] = static_cast<int>(out.size());
                out.emplace_back();
            }
            auto& cf = out[cls_index[r]];
            cf.members.emplace_back(c, f);
            if (comp.isolated())
                cf.incident_vertices.push_back(comp.vertices[0]);
            else
                for (auto& d : comp.faces[f])
                    cf.incident_vertices.push_back(d.tail);
        }
    }
    const int root_rep = uf.find(root);
    if (cls_index[root_rep] >= 0)
        out[cls_index[root_rep]].unbounded = true;
    for (auto& cf : out) {
        std::sort(cf.incident_vertices.begin(), cf.incident_vertices.end());
        cf.incident_vertices.erase(std::unique(cf.incident_vertices.begin(), cf.incident_vertices.end()),
                                   cf.incident_vertices.end());
    }
    return out;
}

struct AddablePair {
    edge pair;
    int face = 0; // first composite face incident to both endpoints
};

inline std::vector<AddablePair> addable_pairs_with_faces(const PlaneGraph& p, const std::vector<CompositeFace>& faces)
{
    const Graph& g = p.underlying();
    std::vector<AddablePair> out;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const auto& iv = faces[f].incident_vertices;
        for (std::size_t i = 0; i < iv.size(); ++i)
            for (std::size_t j = i + 1; j < iv.size(); ++j)
                if (!g.adjacent(iv[i], iv[j]))
                    out.push_back({edge{iv[i], iv[j]}, static_cast<int>(f)});
    }
    std::stable_sort(out.begin(), out.end(), [](const AddablePair& a, const AddablePair& b) { return a.pair < b.pair; });
    out.erase(std::unique(out.begin(), out.end(), [](const AddablePair& a, const AddablePair& b) { return a.pair == b.pair; }),
              out.end());
    return out;
}

/// Non-adjacent pairs sharing a composite face, sorted.
inline std::vector<edge> addable_pairs(const PlaneGraph& p)
{
    std::vector<edge> out;
    for (auto& ap : addable_pairs_with_faces(p, composite_faces(p)))
        out.push_back(ap.pair);
    return out;
}

inline bool one_isolated_per_face(const PlaneGraph& p)
{
    for (auto& cf : composite_faces(p)) {
        int count = 0;
        for (auto [c, f] : cf.members)
            if (p.component(c).isolated())
                ++count;
        if (count > 1)
            return false;
    }
    return true;
}

/// True when every isolated vertex lies in one composite face.
inline bool isolated_share_one_face(const PlaneGraph& p)
{
    int seen = -1;
    auto faces = composite_faces(p);
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (auto [c, _] : faces[f].members)
            if (p.component(c).isolated()) {
                if (seen >= 0 && seen != static_cast<int>(f))
                    return false;
                seen = static_cast<int>(f);
            }
    return true;
}

// ---------------------------------------------------------------------------
// Edge insertion

namespace detail {

// First dart of face `f` of component c entering v; nullopt for an isolated v.
inline std::optional<Dart> corner_dart(const PlaneGraph& p, int c, int f, vertex v)
{
    if (p.component(c).isolated())
        return std::nullopt;
    for (auto& d : p.component(c).faces[f])
        if (d.head == v)
            return d;
    throw error(errc::not_addable, "vertex not on face");
}

inline int member_face_of(const CompositeFace& cf, int c)
{
    for (auto [mc, mf] : cf.members)
        if (mc == c)
            return mf;
    return -1;
}

} // namespace detail

/// Inserts uv inside composite face `face_id`; the new darts are spliced
/// immediately after each endpoint's first dart bounding the face.
inline PlaneGraph insert_edge(const PlaneGraph& p, vertex u, vertex v, int face_id)
{
    const Graph& g = p.underlying();
    const auto faces = composite_faces(p);
    if (u == v || u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count() || g.adjacent(u, v)
        || face_id < 0 || face_id >= static_cast<int>(faces.size()))
        throw error(errc::not_addable, "pair is not addable");
    const auto& cf = faces[face_id];
    if (!std::binary_search(cf.incident_vertices.begin(), cf.incident_vertices.end(), u)
        || !std::binary_search(cf.incident_vertices.begin(), cf.incident_vertices.end(), v))
        throw error(errc::not_addable, "pair is not co-facial in the given face");

    const int cu = p.component_of(u), cv = p.component_of(v);
    const int fu = detail::member_face_of(cf, cu), fv = detail::member_face_of(cf, cv);
    const auto du = detail::corner_dart(p, cu, fu, u);
    const auto dv = detail::corner_dart(p, cv, fv, v);

    RotationSystem rot = p.rotation();
    auto splice = [&](vertex at, std::optional<Dart> corner, vertex other) {
        auto& r = rot[at];
        if (!corner) {
            r.push_back(other);
            return;
        }
        auto it = std::find(r.begin(), r.end(), corner->tail);
        r.insert(it + 1, other);
    };
    splice(u, du, v);
    splice(v, dv, u);

    Graph g2 = g.with_edge(u, v);
    // Provisional plane graph with all components top level, used only to
    // locate faces by dart.
    const int k2 = static_cast<int>(connected_components(g2).size());
    PlaneGraph probe(g2, rot, std::vector<Placement>(k2));

    const Dart new_dart{u, v};
    const Dart anchor_u = du ? *du : new_dart;
    auto map_face = [&](int c, int f) -> std::pair<int, int> {
        if ((c == cu && f == fu))
            return probe.face_of(anchor_u);
        if (c == cv && f == fv)
            return probe.face_of(anchor_u); // fv merges into the same new face
        const auto& comp = p.component(c);
        if (comp.isolated())
            return {probe.component_of(comp.vertices[0]), 0};
        return probe.face_of(comp.faces[f].front());
    };
    auto new_comp = [&](int c) { return probe.component_of(p.component(c).vertices[0]); };

    std::vector<Placement> place(k2);
    std::vector<char> assigned(k2, 0);
    auto mapped = [&](int c, const Placement& old, int outer_new) {
        Placement np;
        np.outer_face = outer_new;
        if (!old.top_level()) {
            auto [pc, pf] = map_face(old.parent, old.parent_face);
            np.parent = pc;
            np.parent_face = pf;
        }
        (void)c;
        return np;
    };

    for (int c = 0; c < p.component_count(); ++c) {
        if (c == cu || c == cv)
            continue;
        const int nc = new_comp(c);
        place[nc] = mapped(c, p.placement(c), map_face(c, p.placement(c).outer_face).second);
        assigned[nc] = 1;
    }

    const int nc = probe.component_of(u);
    const auto& pu = p.placement(cu);
    const auto& pv = p.placement(cv);
    if (cu == cv) {
        place[nc] = mapped(cu, pu, map_face(cu, pu.outer_face).second);
    } else {
        const bool outer_u = pu.outer_face == fu;
        const bool outer_v = pv.outer_face == fv;
        const int merged = probe.face_of(anchor_u).second;
        if (!outer_u)
            place[nc] = mapped(cu, pu, map_face(cu, pu.outer_face).second);
        else if (!outer_v)
            place[nc] = mapped(cv, pv, map_face(cv, pv.outer_face).second);
        else if (pu.parent == cv)
            place[nc] = mapped(cv, pv, merged);
        else
            place[nc] = mapped(cu, pu, merged);
    }
    return PlaneGraph(std::move(g2), std::move(rot), std::move(place));
}

// ---------------------------------------------------------------------------
// Construction helpers

/// Rotation system of a straight-line drawing: neighbours by increasing angle.
inline RotationSystem rotation_from_coordinates(const Graph& g, const std::vector<std::pair<double, double>>& xy)
{
    RotationSystem rot(g.vertex_count());
    for (vertex v = 0; v < g.vertex_count(); ++v) {
        rot[v] = g.neighbors(v);
        auto angle = [&](vertex w) { return std::atan2(xy[w].second - xy[v].second, xy[w].first - xy[v].first); };
        std::sort(rot[v].begin(), rot[v].end(), [&](vertex a, vertex b) { return angle(a) < angle(b); });
    }
    return rot;
}

/// Every component at top level with outer face 0.
inline PlaneGraph make_plane_top_level(const Graph& g, RotationSystem rot)
{
    const int k = static_cast<int>(connected_components(g).size());
    return PlaneGraph(g, std::move(rot), std::vector<Placement>(k));
}

/// Rotation listing neighbours in increasing order: planar for forests and
/// for cycles.
inline RotationSystem sorted_rotation(const Graph& g)
{
    RotationSystem rot(g.vertex_count());
    for (vertex v = 0; v < g.vertex_count(); ++v)
        rot[v] = g.neighbors(v);
    return rot;
}

} // namespace psrlab
