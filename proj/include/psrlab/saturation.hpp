#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "psrlab/embedding.hpp"
#include "psrlab/error.hpp"
#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"

namespace psrlab {

struct SaturationVerdict {
    bool saturated = false;
    // filled when an edge can be added
    edge pair{-1, -1};
    int face = -1;
    Embedding witness; // of H + pair into G
};

namespace detail {

// Abstract containment of H + uv depends only on the twin classes of u and v
// in H, since swapping twins is an automorphism of H.
class PairContainmentCache {
public:
    PairContainmentCache(const Graph& h, const Graph& g) : h_(h), g_(g)
    {
        for (auto& cls : twins_partition(h).classes)
            for (vertex v : cls)
                cls_of_[v] = cls;
    }

    bool embeds(edge pair)
    {
        auto key = canonical(pair);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        bool r = find_embedding(h_.with_edge(key.first, key.second), g_).has_value();
        memo_.emplace(key, r);
        return r;
    }

private:
    edge canonical(edge p) const
    {
        const auto& cu = cls_of_.at(p.first);
        const auto& cv = cls_of_.at(p.second);
        if (cu == cv)
            return {cu[0], cu[1]};
        return make_edge(cu[0], cv[0]);
    }

    const Graph& h_;
    const Graph& g_;
    std::map<vertex, std::vector<vertex>> cls_of_;
    std::map<edge, bool> memo_;
};

inline void check_saturation_inputs(const Graph& g, const PlaneGraph& h)
{
    if (h.vertex_count() != g.vertex_count())
        throw error(errc::size_mismatch, "v(H) = " + std::to_string(h.vertex_count()) + " but v(G) = "
                                             + std::to_string(g.vertex_count()));
    if (!embeds(h.underlying(), g))
        throw error(errc::not_a_subgraph, "H does not embed in G");
}

} // namespace detail

/// SATURATED iff no co-facial non-adjacent pair uv has H + uv contained in G.
/// Otherwise reports the lexicographically first such pair.
inline SaturationVerdict is_plane_saturated(const Graph& g, const PlaneGraph& h)
{
    detail::check_saturation_inputs(g, h);
    detail::PairContainmentCache cache(h.underlying(), g);
    for (auto& ap : addable_pairs_with_faces(h, composite_faces(h))) {
        if (!cache.embeds(ap.pair))
            continue;
        SaturationVerdict v;
        v.pair = ap.pair;
        v.face = ap.face;
        v.witness = *find_embedding(h.underlying().with_edge(ap.pair.first, ap.pair.second), g);
        return v;
    }
    SaturationVerdict v;
    v.saturated = true;
    return v;
}

/// Appends `extra` isolated vertices inside composite face `face_id`.
inline PlaneGraph pad_isolated(const PlaneGraph& h, int extra, int face_id)
{
    auto faces = composite_faces(h);
    if (face_id < 0 || (face_id >= static_cast<int>(faces.size()) && !faces.empty()))
        throw error(errc::invalid_plane, "no composite face " + std::to_string(face_id));
    Placement where;
    if (!faces.empty() && !faces[face_id].unbounded) {
        where.parent = faces[face_id].members.front().first;
        where.parent_face = faces[face_id].members.front().second;
    }
    RotationSystem rot = h.rotation();
    rot.resize(h.vertex_count() + extra);
    std::vector<Placement> pl = h.placements();
    for (int i = 0; i < extra; ++i)
        pl.push_back(where);
    return PlaneGraph(h.underlying().with_isolated(extra), std::move(rot), std::move(pl));
}

/// Adds random containable co-facial edges until saturated.
inline PlaneGraph saturate_greedily(const Graph& g, const PlaneGraph& h, unsigned long long seed)
{
    detail::check_saturation_inputs(g, h);
    std::mt19937_64 rng(seed);
    PlaneGraph cur = h;
    while (true) {
        auto pairs = addable_pairs_with_faces(cur, composite_faces(cur));
        std::shuffle(pairs.begin(), pairs.end(), rng);
        detail::PairContainmentCache cache(cur.underlying(), g);
        bool grew = false;
        for (auto& ap : pairs) {
            if (!cache.embeds(ap.pair))
                continue;
            cur = insert_edge(cur, ap.pair.first, ap.pair.second, ap.face);
            grew = true;
            break;
        }
        if (!grew)
            return cur;
    }
}

} // namespace psrlab
