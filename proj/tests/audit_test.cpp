#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"

using namespace psrlab;

namespace {

AuditReport audit_instance(const FamilyInstance& fi, AuditMode mode)
{
    auto phi = normalize_embedding(fi.host, fi.witness, fi.proof_map, mode.profile());
    return compute_bounds(fi.host, fi.witness, phi, mode);
}

std::string failures(const AuditReport& rep)
{
    std::ostringstream os;
    for (auto& c : rep.checks)
        if (c.status == AuditCheck::Status::fail)
            os << c.id << ' ' << c.lhs << ' ' << c.rhs << '\n';
    return os.str();
}

const AuditCheck* find_check(const AuditReport& rep, const std::string& id)
{
    for (auto& c : rep.checks)
        if (c.id == id)
            return &c;
    return nullptr;
}

Embedding identity(int n)
{
    Embedding e;
    for (int i = 0; i < n; ++i)
        e.map.push_back(i);
    return e;
}

} // namespace

TEST(Audit, DecoratedDoubleWheelPasses)
{
    for (int m : {7, 8, 10}) {
        auto fi = decorated_double_wheel(m);
        auto rep = audit_instance(fi, AuditMode::twin_free());
        EXPECT_TRUE(rep.all_pass()) << m << '\n' << failures(rep);
        EXPECT_TRUE(rep.theorem_applies);
        EXPECT_EQ(ratio_floor_check(rep), FloorVerdict::consistent);
        auto phi = normalize_embedding(fi.host, fi.witness, fi.proof_map, classify_k(fi.host));
        EXPECT_TRUE(forbidden_config_scan(fi.host, fi.witness, phi).empty());
    }
}

TEST(Audit, ExampleOneTwoPasses)
{
    auto rep = audit_instance(example_1_2(4), AuditMode::twin_free());
    EXPECT_TRUE(rep.all_pass()) << failures(rep);
    EXPECT_EQ(ratio_floor_check(rep), FloorVerdict::consistent);
}

TEST(Audit, GeneralFamilyPasses)
{
    for (auto [k1, k2] : std::vector<std::pair<int, int>>{{2, 0}, {1, 1}, {3, 2}, {0, 1}}) {
        auto rep = audit_instance(general_family(9, k1, k2), AuditMode::general_k(k1, k2));
        EXPECT_TRUE(rep.all_pass()) << k1 << ',' << k2 << '\n' << failures(rep);
        EXPECT_EQ(ratio_floor_check(rep), FloorVerdict::consistent);
    }
    // (2, 0) is an instance check only; the lower bound does not cover it
    EXPECT_FALSE(audit_instance(general_family(9, 2, 0), AuditMode::general_k(2, 0)).theorem_applies);
    EXPECT_TRUE(audit_instance(general_family(9, 3, 2), AuditMode::general_k(3, 2)).theorem_applies);
}

TEST(Audit, PlaneCycleIsTrivial)
{
    Graph c5 = cycle_graph(5);
    auto h = make_plane_top_level(c5, sorted_rotation(c5));
    auto rep = compute_bounds(c5, h, identity(5), AuditMode::twin_free());
    EXPECT_EQ(rep.eq1_lower, 5);
    EXPECT_EQ(rep.classification.n0, 5);
    EXPECT_TRUE(rep.P.empty());
    EXPECT_TRUE(rep.R.empty());
    EXPECT_EQ(rep.q, 0);
    EXPECT_TRUE(rep.all_pass()) << failures(rep);
    EXPECT_EQ(ratio_floor_check(rep), FloorVerdict::consistent);
    EXPECT_TRUE(forbidden_config_scan(c5, h, identity(5)).empty());
}

// F4: path 2-0-1-3 with only the middle edge drawn. The leaf pair (0, 1) sees
// the two isolated vertices 2 and 3, and 0-2 can be drawn.
TEST(ForbiddenScan, LeafPairSeeingTwoIsolatedVertices)
{
    Graph g(4, {{0, 1}, {0, 2}, {1, 3}});
    Graph sub(4, {{0, 1}});
    auto h = make_plane_top_level(sub, sorted_rotation(sub));
    auto found = forbidden_config_scan(g, h, identity(4));
    ASSERT_FALSE(found.empty());
    EXPECT_TRUE(std::any_of(found.begin(), found.end(), [](const ForbiddenConfig& f) { return f.kind == 'b'; }));
    EXPECT_FALSE(is_plane_saturated(g, h).saturated);
}

TEST(StrategyTerms, SplitTheTotalsExactly)
{
    auto fi = general_family(9, 3, 2);
    for (auto mode : {AuditMode::twin_free(), AuditMode::general_k(3, 2)}) {
        auto phi = normalize_embedding(fi.host, fi.witness, fi.proof_map, mode.profile());
        auto rep = compute_bounds(fi.host, fi.witness, phi, mode);
        for (int strategy : {1, 2}) {
            long long h = 0, g = 0;
            for (auto& t : detail::strategy_terms(rep.classification, mode, strategy)) {
                h += t.h;
                g += t.g;
            }
            EXPECT_EQ(h, rep.eq1_lower);
            EXPECT_EQ(g, strategy == 1 ? rep.total_s1 : rep.total_s2);
        }
    }
}

// Random classifications: each term's share of the e(G) bound stays below
// D times its share of e(H) for the strategy the case split picks.
TEST(StrategyTerms, TermComparisonsHoldOnRandomInventories)
{
    std::mt19937 rng(5);
    auto sizes = [&](int lo) {
        std::vector<int> v(rng() % 3);
        for (int& x : v)
            x = lo + static_cast<int>(rng() % 6);
        return v;
    };
    for (int t = 0; t < 500; ++t) {
        SkeletonClassification s;
        s.n0 = static_cast<int>(rng() % 12);
        s.tree_sizes_A = sizes(4);
        s.tree_sizes_B = sizes(4);
        s.tree_sizes_C = sizes(5);
        s.star_sizes_D = sizes(4);
        s.star_sizes_E = sizes(4);
        s.star_sizes_F = sizes(4);
        s.star_sizes_L = sizes(4);
        s.r1 = rng() % 4;
        s.r2 = rng() % 4;
        s.r3 = rng() % 4;
        s.y = rng() % 3;
        s.m_s5 = rng() % 3;
        s.z_s6 = rng() % 3;
        const auto mode = AuditMode::twin_free();
        const int strategy = 4 * s.r3 >= s.r2 ? 1 : 2;
        for (auto& term : detail::strategy_terms(s, mode, strategy))
            EXPECT_LE(term.g, mode.denominator() * term.h) << term.id;
    }
}

TEST(Audit, CheckLineFormat)
{
    auto rep = audit_instance(decorated_double_wheel(7), AuditMode::twin_free());
    std::ostringstream os;
    write_check_lines(os, rep);
    std::istringstream in(os.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        std::istringstream f(line);
        std::string kw, id, status;
        long long lhs = 0, rhs = 0;
        ASSERT_TRUE(f >> kw >> id >> status >> lhs >> rhs) << line;
        EXPECT_EQ(kw, "check");
        EXPECT_TRUE(status == "pass" || status == "fail" || status == "na");
        ++count;
    }
    EXPECT_EQ(count, rep.checks.size());
    const auto* ratio = find_check(rep, "ratio");
    ASSERT_NE(ratio, nullptr);
    EXPECT_EQ(ratio->lhs, 120);
    EXPECT_EQ(ratio->rhs, 16 * 41);

    std::ostringstream table;
    write_check_table(table, rep);
    EXPECT_EQ(table.str().rfind("id", 0), 0u);
    EXPECT_NE(table.str().find("margin"), std::string::npos);
}

TEST(Audit, FailingRatioIsACounterexample)
{
    AuditReport rep;
    rep.checks.push_back({"ratio", AuditCheck::Rel::lt, 20, 16, AuditCheck::Status::fail});
    EXPECT_EQ(ratio_floor_check(rep), FloorVerdict::counterexample);
    rep.checks.back() = {"eq6", AuditCheck::Rel::le, 20, 16, AuditCheck::Status::fail};
    EXPECT_EQ(ratio_floor_check(rep), FloorVerdict::consistent);
}
