#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace psrlab;

namespace {

Embedding map_of(std::vector<vertex> m)
{
    Embedding e;
    e.map = std::move(m);
    return e;
}

// H = one edge {0,1} plus isolated vertices, all of them top level
PlaneGraph edge_plus_isolated(int n)
{
    Graph h(n, {{0, 1}});
    return make_plane_top_level(h, sorted_rotation(h));
}

// F1: matching edge image ab = 01; b = 1 sees c = 2 (degree 1) and 3 in phi(I)
Graph fixture_f1() { return Graph(5, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {0, 4}}); }

// F2: no degree-1 vertices; a = 1 has degree 3, b = 0 sees 5 and 6 (degree 2)
Graph fixture_f2() { return Graph(7, {{0, 1}, {0, 5}, {0, 6}, {5, 6}, {1, 2}, {1, 3}, {2, 4}, {3, 4}}); }

// F3: M1 edge; 0 has degree 1, 1 sees 2 and 3 (degree 2) in phi(I)
Graph fixture_f3() { return Graph(4, {{0, 1}, {1, 2}, {1, 3}, {2, 3}}); }

Embedding identity(int n)
{
    Embedding e;
    for (int i = 0; i < n; ++i)
        e.map.push_back(i);
    return e;
}

int degree_count_in_image(const Graph& g, const PlaneGraph& h, const Embedding& phi, int d)
{
    int c = 0;
    for (vertex v : h.isolated())
        c += g.degree(phi(v)) == d;
    return c;
}

} // namespace

TEST(FindEmbedding, Examples)
{
    auto m = find_embedding(cycle_graph(3), complete_graph(4));
    ASSERT_TRUE(m);
    EXPECT_TRUE(is_valid_embedding(cycle_graph(3), complete_graph(4), *m));
    EXPECT_FALSE(find_embedding(star_graph(3), cycle_graph(4)));
}

TEST(FindEmbedding, ExampleOneOneRepresentatives)
{
    auto fi = example_1_1(10);
    auto phi = find_embedding(fi.witness.underlying(), fi.host);
    ASSERT_TRUE(phi);
    EXPECT_TRUE(is_valid_embedding(fi.witness.underlying(), fi.host, *phi));
    // w', w'' (3, 4 in the witness) are represented by u1, u2 (3, 4 in the host)
    std::vector<vertex> img{(*phi)(3), (*phi)(4)};
    std::sort(img.begin(), img.end());
    EXPECT_EQ(img, (std::vector<vertex>{3, 4}));
}

TEST(FindEmbedding, Deterministic)
{
    auto fi = example_1_2(3);
    auto a = find_embedding(fi.witness.underlying(), fi.host);
    auto b = find_embedding(fi.witness.underlying(), fi.host);
    ASSERT_TRUE(a && b);
    EXPECT_EQ(a->map, b->map);
}

// Every pair of graph classes on the same number of vertices (h padded with
// isolated vertices as needed), up to six vertices.
TEST(FindEmbedding, MatchesPermutationSearch)
{
    for (int n = 1; n <= 6; ++n)
        for (auto& g : oracle::graph_classes(n))
            for (auto& h : oracle::graph_classes(n)) {
                auto phi = find_embedding(h, g);
                ASSERT_EQ(phi.has_value(), oracle::brute_embeds(h, g)) << to_graph_text(h) << to_graph_text(g);
                if (phi)
                    ASSERT_TRUE(is_valid_embedding(h, g, *phi));
            }
}

TEST(FindEmbedding, SmallerPatternIntoLargerHost)
{
    std::mt19937 rng(3);
    const auto& hosts = oracle::graph_classes(7);
    for (int t = 0; t < 300; ++t) {
        const Graph& g = hosts[rng() % hosts.size()];
        const auto& pats = oracle::graph_classes(3 + static_cast<int>(rng() % 4));
        const Graph& h = pats[rng() % pats.size()];
        auto phi = find_embedding(h, g);
        ASSERT_EQ(phi.has_value(), oracle::brute_embeds(h, g));
        if (phi)
            EXPECT_TRUE(is_valid_embedding(h, g, *phi));
    }
}

TEST(MapText, RoundTrip)
{
    auto e = map_of({2, 0, 1});
    EXPECT_EQ(to_map_text(e), "map 0 2\nmap 1 0\nmap 2 1\n");
    EXPECT_EQ(parse_map(to_map_text(e)).map, e.map);
    EXPECT_THROW(parse_map("map 1 0\nmap 0 1\n"), error);
}

TEST(Normalize, NoMatchingEdgesLeavesMapAlone)
{
    Graph g = cycle_graph(5);
    auto h = make_plane_top_level(g, sorted_rotation(g));
    int steps = -1;
    auto out = normalize_embedding(g, h, identity(5), classify_k(g), &steps);
    EXPECT_EQ(out.map, identity(5).map);
    EXPECT_EQ(steps, 0);
}

TEST(Normalize, PhaseOneSwapOnFixtureF1)
{
    Graph g = fixture_f1();
    auto h = edge_plus_isolated(5);
    int steps = 0;
    auto out = normalize_embedding(g, h, identity(5), classify_k(g), &steps);
    EXPECT_EQ(steps, 1);
    // the matching edge now maps onto bc = {1, 2}
    std::vector<vertex> img{out(0), out(1)};
    std::sort(img.begin(), img.end());
    EXPECT_EQ(img, (std::vector<vertex>{1, 2}));
    EXPECT_EQ(out.map, (std::vector<vertex>{2, 1, 0, 3, 4}));
    EXPECT_TRUE(is_valid_embedding(h.underlying(), g, out));
}

TEST(Normalize, PhaseTwoSwapOnFixtureF2)
{
    Graph g = fixture_f2();
    auto h = edge_plus_isolated(7);
    const auto phi = identity(7);
    int steps = 0;
    auto out = normalize_embedding(g, h, phi, classify_k(g), &steps);
    EXPECT_EQ(steps, 1);
    EXPECT_EQ(degree_count_in_image(g, h, phi, 2), 5);
    EXPECT_EQ(degree_count_in_image(g, h, out, 2), 4);
    EXPECT_EQ(out.map, (std::vector<vertex>{0, 5, 2, 3, 4, 1, 6}));
}

TEST(Normalize, RejectsInvalidMaps)
{
    Graph g = fixture_f1();
    auto h = edge_plus_isolated(5);
    try {
        normalize_embedding(g, h, map_of({0, 2, 1, 3, 4}), classify_k(g));
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::invalid_embedding);
    }
}

// Random planar hosts with random spanning plane subgraphs under the identity map.
TEST(Normalize, ValidFixpointWithinStepBound)
{
    std::mt19937 rng(2024);
    int tried = 0;
    for (int t = 0; t < 400; ++t) {
        const int n = 5 + static_cast<int>(rng() % 8);
        std::vector<edge> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng() % 4 == 0)
                    es.push_back({u, v});
        Graph g(n, es);
        if (!is_planar(g))
            continue;
        // keep a matching plus a few extra edges so both phases get exercised
        std::vector<edge> sub;
        std::vector<char> used(n, 0);
        for (auto [u, v] : g.edges())
            if ((!used[u] && !used[v] && rng() % 2) || rng() % 6 == 0) {
                sub.push_back({u, v});
                used[u] = used[v] = 1;
            }
        auto h = is_planar(Graph(n, sub));
        ASSERT_TRUE(h);
        int deg1 = 0, deg2 = 0;
        for (vertex v = 0; v < n; ++v) {
            deg1 += g.degree(v) == 1;
            deg2 += g.degree(v) == 2;
        }
        int steps = 0;
        auto out = normalize_embedding(g, *h, identity(n), classify_k(g), &steps);
        ASSERT_TRUE(is_valid_embedding(h->underlying(), g, out));
        int again = -1;
        auto fix = normalize_embedding(g, *h, out, classify_k(g), &again);
        EXPECT_EQ(again, 0);
        EXPECT_EQ(fix.map, out.map);
        EXPECT_LE(steps, deg1 + deg2);
        ++tried;
    }
    EXPECT_GT(tried, 100);
}

TEST(Classify, PlaneCycleIsCyclic)
{
    Graph g = cycle_graph(5);
    auto h = make_plane_top_level(g, sorted_rotation(g));
    auto s = classify_components(g, h, identity(5));
    EXPECT_EQ(s.n0, 5);
    EXPECT_EQ(s.r1 + s.r2 + s.r3 + s.y + s.m_s5 + s.z_s6, 0);
    EXPECT_EQ(s.skeleton_vertices(), 5);
}

TEST(Classify, MatchingEdgeOfTypeOneOnFixtureF3)
{
    Graph g = fixture_f3();
    auto h = edge_plus_isolated(4);
    int steps = -1;
    auto phi = normalize_embedding(g, h, identity(4), classify_k(g), &steps);
    EXPECT_EQ(steps, 0);
    auto s = classify_components(g, h, phi);
    EXPECT_EQ(s.r1, 1);
    ASSERT_EQ(s.components.size(), 1u);
    EXPECT_EQ(s.components[0].type, ComponentType::M1);
    EXPECT_EQ(s.components[0].low, 0);
    EXPECT_EQ(s.skeleton_vertices(), 2);
}

TEST(Classify, DecoratedDoubleWheelInventory)
{
    auto fi = decorated_double_wheel(7);
    auto phi = normalize_embedding(fi.host, fi.witness, fi.proof_map, classify_k(fi.host));
    auto s = classify_components(fi.host, fi.witness, phi);
    EXPECT_EQ(s.n0, 7 + 4);
    EXPECT_EQ(s.r1 + s.r2 + s.r3 + s.y, 0);
    const auto stars = s.star_sizes_D.size() + s.star_sizes_E.size() + s.star_sizes_F.size() + s.star_sizes_L.size();
    EXPECT_EQ(stars, 2u);
    for (auto* v : {&s.star_sizes_D, &s.star_sizes_E, &s.star_sizes_F, &s.star_sizes_L})
        for (int x : *v)
            EXPECT_EQ(x, 15);
    EXPECT_EQ(s.skeleton_vertices(), fi.witness.vertex_count() - static_cast<int>(fi.witness.isolated().size()));
}

TEST(Classify, VertexTotalsOnFamilies)
{
    std::vector<std::pair<FamilyInstance, ClassifierMode>> cases;
    cases.push_back({example_1_2(4), ClassifierMode::twin_free});
    cases.push_back({example_1_1(10), ClassifierMode::general});
    cases.push_back({general_family(9, 2, 0), ClassifierMode::general});
    cases.push_back({general_family(9, 3, 2), ClassifierMode::general});
    for (auto& [fi, mode] : cases) {
        auto phi = normalize_embedding(fi.host, fi.witness, fi.proof_map, classify_k(fi.host));
        auto s = classify_components(fi.host, fi.witness, phi, mode);
        EXPECT_EQ(s.skeleton_vertices(), fi.witness.vertex_count() - static_cast<int>(fi.witness.isolated().size()))
            << fi.name;
        for (auto* v : {&s.tree_sizes_A, &s.tree_sizes_B, &s.tree_sizes_C, &s.star_sizes_D, &s.star_sizes_E,
                        &s.star_sizes_F, &s.star_sizes_L})
            for (int x : *v)
                EXPECT_GE(x, 4);
    }
}
