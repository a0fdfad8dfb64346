#pragma once

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "psrlab/embedding.hpp"
#include "psrlab/graph.hpp"
#include "psrlab/plane_graph.hpp"
#include "psrlab/planarity.hpp"
#include "psrlab/skeleton.hpp"

namespace psrlab {

struct AuditMode {
    bool general = false;
    int k1 = 1, k2 = 1;

    static AuditMode twin_free() { return {}; }
    static AuditMode general_k(int k1, int k2) { return {true, k1, k2}; }

    // the ratio floor is 1/D
    long long denominator() const { return general ? 9LL + k1 + 6LL * k2 : 16; }
    ClassifierMode classifier() const { return general ? ClassifierMode::general : ClassifierMode::twin_free; }
    KProfile profile() const { return {k1, k2}; }
};

struct AuditCheck {
    enum class Rel { lt, le, eq };
    enum class Status { pass, fail, not_applicable };

    std::string id;
    Rel rel = Rel::le;
    long long lhs = 0, rhs = 0;
    Status status = Status::pass;

    const char* status_name() const
    {
        return status == Status::pass ? "pass" : status == Status::fail ? "fail" : "na";
    }
    const char* rel_name() const { return rel == Rel::lt ? "<" : rel == Rel::le ? "<=" : "="; }
};

struct AuditReport {
    AuditMode mode;
    SkeletonClassification classification;
    std::vector<vertex> P, R; // vertices of G
    int q = 0;
    std::vector<int> J_sizes; // J_sizes[i - 1] = |J_i|

    // bound expressions, in the order they are used
    long long eq1_lower = 0;   // lower bound on e(H)
    long long expr2 = 0;       // strict bound on e(G[image of skeleton])
    long long expr3 = 0;       // edges at phi(I) vertices that see P
    long long expr4 = 0;       // |J1| (general mode: the k1 variant)
    long long expr5 = 0;       // 2|J2| (general mode: the k2 multigraph variant)
    long long expr6 = 0;       // sum over i >= 3 of i|J_i|
    long long expr7 = 0;       // |N(J2 u R)|
    long long s2_skeleton = 0; // e(G[image of skeleton minus R])
    long long s2_j2r = 0;      // 2|J2 u R|
    long long total_s1 = 0, total_s2 = 0;
    int strategy = 1;
    bool four_r3_ge_r2 = true;
    bool theorem_applies = true; // (k1, k2) within the proven range and G in the class

    std::vector<AuditCheck> checks;

    bool all_pass() const
    {
        return std::none_of(checks.begin(), checks.end(),
                            [](const AuditCheck& c) { return c.status == AuditCheck::Status::fail; });
    }
};

struct ForbiddenConfig {
    char kind = 'a'; // a..d
    std::string detail;
};

namespace detail {

inline long long sum_of(const std::vector<int>& v, long long shift = 0)
{
    long long s = 0;
    for (int x : v)
        s += x + shift;
    return s;
}

struct Expressions {
    long long eq1, e2, e3, e4, e5, e6, e7, s2skel, s2j2r;
    long long j2_support; // skeleton vertices whose images may see J2
    long long total_s1() const { return e2 + e3 + e4 + e5 + e6; }
    long long total_s2() const { return s2skel + e3 + e4 + s2j2r + e6; }
};

inline Expressions expressions(const SkeletonClassification& s, const AuditMode& mode)
{
    const long long n0 = s.n0, r1 = s.r1, r2 = s.r2, r3 = s.r3, y = s.y, m = s.m_s5, z = s.z_s6;
    const long long B = static_cast<long long>(s.tree_sizes_B.size());
    const long long C = static_cast<long long>(s.tree_sizes_C.size());
    const long long E = static_cast<long long>(s.star_sizes_E.size());
    const auto &a = s.tree_sizes_A, &b = s.tree_sizes_B, &c = s.tree_sizes_C;
    const auto &d = s.star_sizes_D, &e = s.star_sizes_E, &f = s.star_sizes_F, &l = s.star_sizes_L;

    Expressions x{};
    x.eq1 = n0 + sum_of(a, -1) + sum_of(b, -1) + sum_of(c, -1) + sum_of(d, -1) + sum_of(e, -1) + sum_of(f, -1)
            + sum_of(l, -1) + 2 * (m + z) + (r1 + r2 + r3 + y);
    const long long skel = n0 + sum_of(a) + sum_of(b) + sum_of(c) + sum_of(d) + sum_of(e) + sum_of(f) + sum_of(l);
    x.e2 = 3 * skel + 3 * (2 * (r1 + r2 + r3 + y) + 3 * (m + z)) - 2 * r1 - r2;
    x.e3 = 4 * B + 8 * C + sum_of(d, 2) + 4 * y + 5 * z;
    const long long j = n0 + sum_of(a, -2) + sum_of(b, -3) + sum_of(c, -4) + E + sum_of(f, -1) + m;
    const long long k1 = mode.k1, k2 = mode.k2;
    x.e4 = mode.general ? k1 * j + (k1 - 1) * r1 : j;
    const long long mult = mode.general ? 6 * k2 : 6;
    x.j2_support = j + r1 + r2;
    x.e5 = mult * x.j2_support;
    x.e6 = 6 * (n0 + sum_of(a, -2) + sum_of(b, -3) + sum_of(c, -4) + E + r1 + r2 + r3 + m) + 3 * sum_of(f, 1);
    x.e7 = n0 + sum_of(a, -2) + sum_of(b, -2) + sum_of(c, -2) + sum_of(d, -1) + sum_of(e, -1) + sum_of(f, -1)
           + sum_of(l, -1) + r1 + r2 + r3 + y + 2 * m + 2 * z;
    x.s2skel = 3 * (skel + 2 * r1 + r2 + 2 * r3 + 2 * y + 3 * m + 3 * z) - 2 * r1;
    x.s2j2r = mult * x.e7;
    return x;
}

// One term of the lower bound on e(H) against its share of the e(G) bound.
struct Term {
    std::string id;
    long long h = 0, g = 0;
};

// Per-component shares are obtained by evaluating the (linear) bound on a
// classification holding just that component; r2 and r3 are grouped.
inline std::vector<Term> strategy_terms(const SkeletonClassification& s, const AuditMode& mode, int strategy)
{
    auto total = [&](const SkeletonClassification& one) {
        auto x = expressions(one, mode);
        return strategy == 1 ? x.total_s1() : x.total_s2();
    };
    auto lower = [&](const SkeletonClassification& one) { return expressions(one, mode).eq1; };
    std::vector<Term> out;
    auto add = [&](const std::string& id, const SkeletonClassification& one) {
        out.push_back({id, lower(one), total(one)});
    };
    auto lists = std::vector<std::pair<const char*, std::vector<int> SkeletonClassification::*>>{
        {"a", &SkeletonClassification::tree_sizes_A}, {"b", &SkeletonClassification::tree_sizes_B},
        {"c", &SkeletonClassification::tree_sizes_C}, {"d", &SkeletonClassification::star_sizes_D},
        {"e", &SkeletonClassification::star_sizes_E}, {"f", &SkeletonClassification::star_sizes_F},
        {"l", &SkeletonClassification::star_sizes_L}};
    if (s.n0 > 0) {
        SkeletonClassification one;
        one.n0 = s.n0;
        add("n0", one);
    }
    for (auto& [name, member] : lists)
        for (std::size_t i = 0; i < (s.*member).size(); ++i) {
            SkeletonClassification one;
            (one.*member).push_back((s.*member)[i]);
            add(std::string(name) + "[" + std::to_string(i) + "]", one);
        }
    auto scalar = [&](const char* id, int SkeletonClassification::*member) {
        if (s.*member > 0) {
            SkeletonClassification one;
            one.*member = s.*member;
            add(id, one);
        }
    };
    scalar("r1", &SkeletonClassification::r1);
    if (s.r2 + s.r3 > 0) {
        SkeletonClassification one;
        one.r2 = s.r2;
        one.r3 = s.r3;
        add("r2+r3", one);
    }
    scalar("y", &SkeletonClassification::y);
    scalar("m", &SkeletonClassification::m_s5);
    scalar("z", &SkeletonClassification::z_s6);
    return out;
}

// The vertex sets the bounds talk about, measured on the actual instance.
struct AuditSets {
    std::vector<char> in_I, in_P, in_skel, in_R;
    std::vector<vertex> P, R;
    std::vector<int> reduced_degree; // for phi(I) vertices kept after the P-removal, else 0
    long long p_edges = 0;           // edges between P and phi(I)
    long long x_count = 0;           // phi(I) vertices with a P-neighbour
    long long removed = 0;           // all edges removed at those vertices
    std::vector<vertex> J2;
};

inline AuditSets measure_sets(const Graph& g, const PlaneGraph& h, const Embedding& phi,
                              const SkeletonClassification& cls)
{
    const int n = g.vertex_count();
    AuditSets s;
    s.in_I.assign(n, 0);
    s.in_P.assign(n, 0);
    s.in_skel.assign(n, 0);
    s.in_R.assign(n, 0);
    s.reduced_degree.assign(n, 0);
    for (vertex v = 0; v < n; ++v)
        (h.underlying().degree(v) == 0 ? s.in_I : s.in_skel)[phi(v)] = 1;

    auto put_p = [&](vertex hv) { s.in_P[phi(hv)] = 1; };
    for (auto& cc : cls.components) {
        switch (cc.type) {
        case ComponentType::T2:
        case ComponentType::T3:
            for (auto [u, v] : cc.shared_pairs) {
                put_p(u);
                put_p(v);
            }
            break;
        case ComponentType::S1:
        case ComponentType::S6:
        case ComponentType::M4:
            for (vertex v : cc.vertices)
                put_p(v);
            break;
        case ComponentType::M2:
            s.in_R[phi(cc.low)] = 1;
            break;
        default:
            break;
        }
    }
    for (vertex w = 0; w < n; ++w) {
        if (s.in_P[w])
            s.P.push_back(w);
        if (s.in_R[w])
            s.R.push_back(w);
    }

    for (vertex w = 0; w < n; ++w) {
        if (!s.in_I[w])
            continue;
        int to_p = 0, other = 0;
        for (vertex x : g.neighbors(w))
            (s.in_P[x] ? to_p : other) += 1;
        s.p_edges += to_p;
        if (to_p > 0) {
            ++s.x_count;
            if (other <= 2) {
                s.removed += other;
                continue;
            }
        }
        s.reduced_degree[w] = other;
        if (other == 2)
            s.J2.push_back(w);
    }
    s.removed += s.p_edges;
    return s;
}

// Auxiliary multigraph: one edge between the two neighbours of every vertex
// in `deg2` (all of degree 2 in G).
struct AuxGraphFacts {
    long long vertices = 0;
    int multiplicity = 0;
    bool planar = true;
};

inline AuxGraphFacts aux_graph(const Graph& g, const std::vector<vertex>& deg2)
{
    std::map<edge, int> count;
    std::set<vertex> support;
    for (vertex w : deg2) {
        const auto& nb = g.neighbors(w);
        if (nb.size() != 2)
            continue;
        ++count[make_edge(nb[0], nb[1])];
        support.insert(nb.begin(), nb.end());
    }
    AuxGraphFacts f;
    f.vertices = static_cast<long long>(support.size());
    std::map<vertex, vertex> index;
    for (vertex v : support)
        index.emplace(v, static_cast<vertex>(index.size()));
    std::vector<edge> es;
    for (auto& [e, k] : count) {
        f.multiplicity = std::max(f.multiplicity, k);
        es.push_back({index[e.first], index[e.second]});
    }
    f.planar = is_planar(Graph(static_cast<int>(support.size()), es)).has_value();
    return f;
}

} // namespace detail

/// Scans for the configurations a saturated instance cannot contain:
/// (a) an edge between designated low-degree ends of M1/M2 images;
/// (b) a leaf and its neighbour in an acyclic component seeing two distinct phi(I) vertices;
/// (c) distinct leaves of an M4 edge or S6 star seeing distinct phi(I) vertices;
/// (d) a leaf/neighbour pair meeting R and R, R and J2, or J2 and R.
inline std::vector<ForbiddenConfig> forbidden_config_scan(const Graph& g, const PlaneGraph& h, const Embedding& phi,
                                                          ClassifierMode mode = ClassifierMode::twin_free)
{
    const auto cls = classify_components(g, h, phi, mode);
    const auto sets = detail::measure_sets(g, h, phi, cls);
    const Graph& hg = h.underlying();
    std::vector<ForbiddenConfig> out;
    auto nI = [&](vertex hv) {
        std::vector<vertex> r;
        for (vertex x : g.neighbors(phi(hv)))
            if (sets.in_I[x])
                r.push_back(x);
        return r;
    };
    auto distinct_pair = [](const std::vector<vertex>& p, const std::vector<vertex>& q) {
        for (vertex a : p)
            for (vertex b : q)
                if (a != b)
                    return true;
        return false;
    };
    auto name = [](vertex a, vertex b) { return std::to_string(a) + "," + std::to_string(b); };

    std::vector<vertex> low;
    for (auto& cc : cls.components)
        if (cc.type == ComponentType::M1 || cc.type == ComponentType::M2)
            low.push_back(phi(cc.low));
    for (std::size_t i = 0; i < low.size(); ++i)
        for (std::size_t j = i + 1; j < low.size(); ++j)
            if (g.adjacent(low[i], low[j]))
                out.push_back({'a', "low-degree images " + name(low[i], low[j]) + " adjacent"});

    std::vector<char> in_j2(g.vertex_count(), 0);
    for (vertex w : sets.J2)
        in_j2[w] = 1;
    auto meets = [&](vertex hv, const std::vector<char>& set) {
        for (vertex x : g.neighbors(phi(hv)))
            if (set[x])
                return true;
        return false;
    };

    for (auto& cc : cls.components) {
        if (cc.type == ComponentType::cyclic)
            continue;
        for (vertex u : cc.vertices) {
            if (hg.degree(u) != 1)
                continue;
            const vertex v = hg.neighbors(u)[0];
            if (distinct_pair(nI(u), nI(v)))
                out.push_back({'b', "leaf pair " + name(u, v) + " sees two phi(I) vertices"});
            if (meets(u, sets.in_R) && meets(v, sets.in_R))
                out.push_back({'d', "leaf pair " + name(u, v) + " meets R twice"});
            if (meets(u, sets.in_R) && meets(v, in_j2))
                out.push_back({'d', "leaf " + std::to_string(u) + " meets R, neighbour meets J2"});
            if (meets(u, in_j2) && meets(v, sets.in_R))
                out.push_back({'d', "leaf " + std::to_string(u) + " meets J2, neighbour meets R"});
        }
        if (cc.type == ComponentType::M4 || cc.type == ComponentType::S6) {
            std::vector<vertex> leaves;
            for (vertex v : cc.vertices)
                if (hg.degree(v) == 1)
                    leaves.push_back(v);
            for (std::size_t i = 0; i < leaves.size(); ++i)
                for (std::size_t j = i + 1; j < leaves.size(); ++j)
                    if (distinct_pair(nI(leaves[i]), nI(leaves[j])))
                        out.push_back({'c', std::string(type_name(cc.type)) + " leaves " + name(leaves[i], leaves[j])
                                                + " see two phi(I) vertices"});
        }
    }
    return out;
}

/// Evaluates every bound of the lower-bound argument on one (G, H, phi).
inline AuditReport compute_bounds(const Graph& g, const PlaneGraph& h, const Embedding& phi, AuditMode mode)
{
    using Rel = AuditCheck::Rel;
    using Status = AuditCheck::Status;

    AuditReport rep;
    rep.mode = mode;
    rep.classification = classify_components(g, h, phi, mode.classifier());
    const auto& cls = rep.classification;
    const auto sets = detail::measure_sets(g, h, phi, cls);
    const auto x = detail::expressions(cls, mode);
    rep.P = sets.P;
    rep.R = sets.R;
    rep.eq1_lower = x.eq1;
    rep.expr2 = x.e2;
    rep.expr3 = x.e3;
    rep.expr4 = x.e4;
    rep.expr5 = x.e5;
    rep.expr6 = x.e6;
    rep.expr7 = x.e7;
    rep.s2_skeleton = x.s2skel;
    rep.s2_j2r = x.s2j2r;
    rep.total_s1 = x.total_s1();
    rep.total_s2 = x.total_s2();

    for (vertex w = 0; w < g.vertex_count(); ++w)
        rep.q = std::max(rep.q, sets.reduced_degree[w]);
    rep.J_sizes.assign(rep.q, 0);
    long long j1 = 0, j2 = 0, j3plus = 0;
    for (vertex w = 0; w < g.vertex_count(); ++w) {
        const int d = sets.reduced_degree[w];
        if (d == 0)
            continue;
        ++rep.J_sizes[d - 1];
        if (d == 1)
            ++j1;
        else if (d == 2)
            ++j2;
        else
            j3plus += d;
    }

    const auto k_actual = classify_k(g);
    if (mode.general) {
        const bool excluded = mode.k1 < 1 || (mode.k1 == 1 && mode.k2 == 0) || (mode.k1 == 2 && mode.k2 == 0);
        rep.theorem_applies = !excluded && k_actual.k1 <= mode.k1 && k_actual.k2 <= mode.k2;
    } else {
        rep.theorem_applies = is_twin_free_low_degree(g);
    }

    const auto scan = forbidden_config_scan(g, h, phi, mode.classifier());
    const bool lemma_independent
        = std::none_of(scan.begin(), scan.end(), [](const ForbiddenConfig& f) { return f.kind == 'a'; });

    auto add = [&](std::string id, Rel rel, long long lhs, long long rhs, bool applicable = true) {
        AuditCheck c{std::move(id), rel, lhs, rhs, Status::pass};
        bool ok = rel == Rel::lt ? lhs < rhs : rel == Rel::le ? lhs <= rhs : lhs == rhs;
        c.status = !applicable ? Status::not_applicable : ok ? Status::pass : Status::fail;
        rep.checks.push_back(std::move(c));
    };

    // standing assumptions
    long long ii_edges = 0;
    for (auto [u, v] : g.edges())
        ii_edges += sets.in_I[u] && sets.in_I[v];
    add("i.independent", Rel::eq, ii_edges, 0);
    add("i.one_face", Rel::eq, cls.isolated_in_one_face ? 0 : 1, 0);
    int steps = 0;
    normalize_embedding(g, h, phi, mode.profile(), &steps);
    add("normalized", Rel::eq, steps, 0);
    add("scan", Rel::eq, static_cast<long long>(scan.size()), 0);
    add("skeleton.vertices", Rel::eq, cls.skeleton_vertices(),
        h.vertex_count() - static_cast<long long>(h.isolated().size()));

    // eq. (1)
    add("eq1", Rel::le, x.eq1, h.edge_count());

    // (2): edges inside the image of the skeleton
    long long e_skel = 0, e_skel_minus_r = 0;
    for (auto [u, v] : g.edges())
        if (sets.in_skel[u] && sets.in_skel[v]) {
            ++e_skel;
            if (!sets.in_R[u] && !sets.in_R[v])
                ++e_skel_minus_r;
        }
    add("eq2", Rel::lt, e_skel, x.e2, lemma_independent);

    // (3)
    const long long B = static_cast<long long>(cls.tree_sizes_B.size());
    const long long C = static_cast<long long>(cls.tree_sizes_C.size());
    const long long D = static_cast<long long>(cls.star_sizes_D.size());
    add("eq3.p_edges", Rel::le, sets.p_edges,
        2 * B + 4 * C + detail::sum_of(cls.star_sizes_D) + 2LL * cls.y + 3LL * cls.z_s6);
    add("eq3.p_neighbours", Rel::le, sets.x_count, B + 2 * C + D + cls.y + cls.z_s6);
    add("eq3", Rel::le, sets.removed, x.e3);

    // (4)-(6)
    add(mode.general ? "eq4.k1" : "eq4", Rel::le, j1, x.e4);
    auto j2aux = detail::aux_graph(g, sets.J2);
    add("eq5.support", Rel::le, j2aux.vertices, x.j2_support);
    add("eq5.multiplicity", Rel::le, j2aux.multiplicity, mode.general ? mode.k2 : 1);
    add("eq5.planar", Rel::eq, j2aux.planar ? 1 : 0, 1);
    add(mode.general ? "eq5.k2" : "eq5", Rel::le, 2 * j2, x.e5);
    add("eq6", Rel::le, j3plus, x.e6);

    // (7) and the second strategy
    std::vector<vertex> j2r = sets.J2;
    j2r.insert(j2r.end(), sets.R.begin(), sets.R.end());
    auto oaux = detail::aux_graph(g, j2r);
    add("eq7", Rel::le, oaux.vertices, x.e7);
    add("eq7.multiplicity", Rel::le, oaux.multiplicity, mode.general ? mode.k2 : 1);
    add("eq7.planar", Rel::eq, oaux.planar ? 1 : 0, 1);
    add("s2.skeleton", Rel::le, e_skel_minus_r, x.s2skel);
    add("s2.j2r", Rel::le, 2 * static_cast<long long>(j2r.size()), x.s2j2r);

    // e(G) splits into exactly the counted parts
    const long long parts = e_skel + sets.removed + j1 + 2 * j2 + j3plus + ii_edges;
    add("edges.partition", Rel::eq, parts, g.edge_count());
    add("s1.total", Rel::lt, g.edge_count(), x.total_s1(), lemma_independent);
    add("s2.total", Rel::lt, g.edge_count(), x.total_s2());

    // strategy choice and the term-by-term comparison
    const long long r2 = cls.r2, r3 = cls.r3;
    rep.four_r3_ge_r2 = 4 * r3 >= r2;
    if (!mode.general)
        rep.strategy = rep.four_r3_ge_r2 ? 1 : 2;
    else if (mode.k1 >= 2)
        rep.strategy = 1;
    else
        rep.strategy = (6LL * mode.k2 - 2) * r3 >= r2 ? 1 : 2;
    const long long den = mode.denominator();
    const std::string pre = rep.strategy == 1 ? "s1.term." : "s2.term.";
    for (auto& t : detail::strategy_terms(cls, mode, rep.strategy))
        add(pre + t.id, Rel::le, t.g, den * t.h);
    add("ratio", Rel::lt, g.edge_count(), den * h.edge_count());
    return rep;
}

enum class FloorVerdict { consistent, counterexample };

/// CONSISTENT when e(H)/e(G) exceeds the floor and every term comparison of
/// the selected strategy holds.
inline FloorVerdict ratio_floor_check(const AuditReport& rep)
{
    for (auto& c : rep.checks) {
        const bool relevant = c.id == "ratio" || c.id.rfind("s1.term.", 0) == 0 || c.id.rfind("s2.term.", 0) == 0;
        if (relevant && c.status == AuditCheck::Status::fail)
            return FloorVerdict::counterexample;
    }
    return FloorVerdict::consistent;
}

/// Machine-readable lines `check <id> <pass|fail|na> <lhs> <rhs>`.
inline void write_check_lines(std::ostream& os, const AuditReport& rep)
{
    for (auto& c : rep.checks)
        os << "check " << c.id << ' ' << c.status_name() << ' ' << c.lhs << ' ' << c.rhs << '\n';
}

/// Aligned table: id, relation, lhs, rhs, margin (rhs - lhs), status.
inline void write_check_table(std::ostream& os, const AuditReport& rep)
{
    std::size_t w = 2;
    for (auto& c : rep.checks)
        w = std::max(w, c.id.size());
    auto pad = [](std::string s, std::size_t n) {
        if (s.size() < n)
            s.append(n - s.size(), ' ');
        return s;
    };
    auto rpad = [](std::string s, std::size_t n) {
        if (s.size() < n)
            s.insert(0, n - s.size(), ' ');
        return s;
    };
    os << pad("id", w) << "  rel " << rpad("lhs", 8) << ' ' << rpad("rhs", 8) << ' ' << rpad("margin", 8)
       << "  status\n";
    for (auto& c : rep.checks)
        os << pad(c.id, w) << "  " << pad(c.rel_name(), 3) << ' ' << rpad(std::to_string(c.lhs), 8) << ' '
           << rpad(std::to_string(c.rhs), 8) << ' ' << rpad(std::to_string(c.rhs - c.lhs), 8) << "  "
           << c.status_name() << '\n';
}

} // namespace psrlab
