#pragma once

#include <optional>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/graph_traits.hpp>

#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"

namespace psrlab {

/// A genus-0 embedding of every component (all top level), or nullopt when
/// g is not planar. Backed by Boost's Boyer-Myrvold implementation.
inline std::optional<PlaneGraph> is_planar(const Graph& g)
{
    using bgraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                         boost::property<boost::edge_index_t, int>>;
    using bedge = boost::graph_traits<bgraph>::edge_descriptor;

    bgraph bg(g.vertex_count());
    int idx = 0;
    for (auto [u, v] : g.edges())
        boost::add_edge(u, v, idx++, bg);

    std::vector<std::vector<bedge>> emb(g.vertex_count());
    auto emb_map = boost::make_iterator_property_map(emb.begin(), boost::get(boost::vertex_index, bg));
    const bool planar = boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = bg,
                                                            boost::boyer_myrvold_params::embedding = emb_map);
    if (!planar)
        return std::nullopt;

    RotationSystem rot(g.vertex_count());
    for (vertex v = 0; v < g.vertex_count(); ++v)
        for (auto& e : emb[v]) {
            auto s = static_cast<vertex>(boost::source(e, bg));
            auto t = static_cast<vertex>(boost::target(e, bg));
            rot[v].push_back(s == v ? t : s);
        }
    return make_plane_top_level(g, std::move(rot));
}

} // namespace psrlab
