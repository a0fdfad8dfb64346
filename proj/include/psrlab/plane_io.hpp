#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>

#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"

namespace psrlab {

// ".plane" text format:
//   plane <n>
//   component <id>
//   rot <v> : <w1> ... <wk>          (cyclic, smallest neighbour first)
//   ...
//   place <id> outer [via <f>]
//   place <id> in <parent> face <f> via <own-outer-face>

inline void write_plane(std::ostream& os, const PlaneGraph& p)
{
    os << "plane " << p.vertex_count() << '\n';
    for (int c = 0; c < p.component_count(); ++c) {
        os << "component " << c << '\n';
        for (vertex v : p.component(c).vertices) {
            os << "rot " << v << " :";
            const auto& r = p.rotation(v);
            if (!r.empty()) {
                auto start = std::min_element(r.begin(), r.end()) - r.begin();
                for (std::size_t i = 0; i < r.size(); ++i)
                    os << ' ' << r[(start + i) % r.size()];
            }
            os << '\n';
        }
    }
    for (int c = 0; c < p.component_count(); ++c) {
        const auto& pl = p.placement(c);
        if (pl.top_level()) {
            os << "place " << c << " outer";
            if (pl.outer_face != 0)
                os << " via " << pl.outer_face;
            os << '\n';
        } else {
            os << "place " << c << " in " << pl.parent << " face " << pl.parent_face << " via " << pl.outer_face << '\n';
        }
    }
}

inline std::string to_plane_text(const PlaneGraph& p)
{
    std::ostringstream os;
    write_plane(os, p);
    return os.str();
}

inline PlaneGraph read_plane(std::istream& is)
{
    std::string line;
    int lineno = 0;
    int n = -1;
    RotationSystem rot;
    std::vector<char> have_rot;
    std::vector<std::vector<vertex>> declared; // component id -> vertices
    std::map<int, Placement> places;
    int current = -1;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::blank_or_comment(line))
            continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (n < 0) {
            if (tag != "plane" || !(ls >> n) || n < 0)
                throw detail::parse_error(lineno, "expected 'plane <n>'");
            rot.assign(n, {});
            have_rot.assign(n, 0);
            continue;
        }
        if (tag == "component") {
            int id;
            if (!(ls >> id) || id != static_cast<int>(declared.size()))
                throw detail::parse_error(lineno, "component ids must be consecutive from 0");
            declared.emplace_back();
            current = id;
        } else if (tag == "rot") {
            long long v;
            std::string colon;
            if (current < 0)
                throw detail::parse_error(lineno, "rot line outside a component block");
            if (!(ls >> v >> colon) || colon != ":")
                throw detail::parse_error(lineno, "expected 'rot <v> : ...'");
            if (v < 0 || v >= n)
                throw detail::parse_error(lineno, "vertex index out of range");
            if (have_rot[v])
                throw detail::parse_error(lineno, "duplicate rotation for vertex " + std::to_string(v));
            have_rot[v] = 1;
            long long w;
            while (ls >> w) {
                if (w < 0 || w >= n || w == v)
                    throw detail::parse_error(lineno, "bad neighbour " + std::to_string(w));
                rot[v].push_back(static_cast<vertex>(w));
            }
            if (!ls.eof())
                throw detail::parse_error(lineno, "malformed neighbour list");
            declared[current].push_back(static_cast<vertex>(v));
        } else if (tag == "place") {
            int id;
            std::string kind;
            if (!(ls >> id >> kind))
                throw detail::parse_error(lineno, "malformed place line");
            Placement pl;
            std::string kw;
            if (kind == "outer") {
                if (ls >> kw) {
                    if (kw != "via" || !(ls >> pl.outer_face))
                        throw detail::parse_error(lineno, "expected 'via <f>'");
                }
            } else if (kind == "in") {
                std::string kf, kv;
                if (!(ls >> pl.parent >> kf >> pl.parent_face >> kv >> pl.outer_face) || kf != "face" || kv != "via")
                    throw detail::parse_error(lineno, "expected 'place <id> in <parent> face <f> via <g>'");
                if (pl.parent < 0)
                    throw detail::parse_error(lineno, "negative parent id");
            } else {
                throw detail::parse_error(lineno, "unknown placement kind '" + kind + "'");
            }
            if (places.count(id))
                throw detail::parse_error(lineno, "duplicate placement");
            places[id] = pl;
        } else {
            throw detail::parse_error(lineno, "unknown tag '" + tag + "'");
        }
    }
    if (n < 0)
        throw detail::parse_error(lineno, "missing header");
    for (vertex v = 0; v < n; ++v)
        if (!have_rot[v])
            throw detail::parse_error(lineno, "no rotation for vertex " + std::to_string(v));

    std::vector<edge> es;
    for (vertex v = 0; v < n; ++v)
        for (vertex w : rot[v]) {
            if (std::count(rot[w].begin(), rot[w].end(), v) != 1 || std::count(rot[v].begin(), rot[v].end(), w) != 1)
                throw detail::parse_error(lineno, "rotation not symmetric at " + std::to_string(v) + "-" + std::to_string(w));
            if (v < w)
                es.emplace_back(v, w);
        }
    Graph g(n, es);
    auto comps = connected_components(g);
    if (comps.size() != declared.size())
        throw detail::parse_error(lineno, "component blocks do not match connectivity");
    for (std::size_t c = 0; c < comps.size(); ++c) {
        auto d = declared[c];
        std::sort(d.begin(), d.end());
        if (d != comps[c])
            throw detail::parse_error(lineno, "component " + std::to_string(c) + " block does not match connectivity");
    }
    std::vector<Placement> pls(comps.size());
    for (std::size_t c = 0; c < comps.size(); ++c) {
        auto it = places.find(static_cast<int>(c));
        if (it == places.end())
            throw detail::parse_error(lineno, "missing placement for component " + std::to_string(c));
        pls[c] = it->second;
    }
    if (places.size() != comps.size())
        throw detail::parse_error(lineno, "placement for unknown component");
    return PlaneGraph(std::move(g), std::move(rot), std::move(pls));
}

inline PlaneGraph parse_plane(const std::string& text)
{
    std::istringstream is(text);
    return read_plane(is);
}

} // namespace psrlab
