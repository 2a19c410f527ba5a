#include "cmgate/endoring.hpp"

#include <gtest/gtest.h>

using namespace cmgate;

namespace {

std::vector<FieldElement> ordinary(const FieldCtx & F)
{
    std::vector<FieldElement> out;
    for (auto j : enumerate_elements(F))
        if (!is_supersingular_j(j))
            out.push_back(j);
    return out;
}

bool squarefree(u64 n)
{
    for (auto [q, e] : nt::factor(n))
        if (e > 1)
            return false;
    return true;
}

} // namespace

TEST(EndoDiscriminant, Examples)
{
    FieldCtx F5 = make_field(5, 1), F7 = make_field(7, 1);
    EXPECT_EQ(endo_discriminant(F5.from_int(3)), make_order(-4, 1));
    EXPECT_EQ(endo_discriminant(F7.zero()), make_order(-3, 1));
    try {
        endo_discriminant(F5.zero());
        FAIL();
    } catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::SupersingularInput);
    }
}

TEST(EndoDiscriminant, SquarefreeFrobeniusDiscriminantIsMaximal)
{
    FieldCtx F = make_field(101, 1);
    for (auto & j : ordinary(F)) {
        i64 dpi = curve_invariants(j).fd.d_pi;
        if (squarefree(static_cast<u64>(-dpi)) && nt::mod(dpi, 4) == 1)
            EXPECT_EQ(endo_discriminant(j).D, dpi);
    }
}

TEST(EndoDiscriminant, ProvidersAgree)
{
    int compared = 0;
    for (auto [p, k] : {std::pair{5ull, 2}, {7ull, 2}, {11ull, 2}, {13ull, 1}, {31ull, 1}}) {
        for (auto & j : ordinary(make_field(p, k))) {
            CMOrder a;
            try {
                a = endo_discriminant_volcano(j);
            } catch (const Error & e) {
                ASSERT_EQ(e.code(), ErrorCode::UnsupportedLevel);
                continue;
            }
            EXPECT_EQ(a, endo_discriminant_hilbert(j)) << j.to_string() << " over " << p << "^" << k;
            // D = f^2 d_K with f | f_pi
            CurveInvariants ci = curve_invariants(j);
            EXPECT_EQ(a.d_K, ci.d_K);
            EXPECT_EQ(ci.f_pi % a.f, 0);
            ++compared;
        }
    }
    EXPECT_GT(compared, 100);
}

TEST(EndoDiscriminant, FrobeniusInvariance)
{
    for (u64 p : {5ull, 7ull}) {
        for (auto & j : ordinary(make_field(p, 2)))
            EXPECT_TRUE(frobenius_cm_check(j)) << j.to_string();
    }
    for (auto & j : ordinary(make_field(11, 1)))
        EXPECT_TRUE(frobenius_cm_check(j));
}

TEST(Volcano, Examples)
{
    FieldCtx F5 = make_field(5, 1);
    EXPECT_EQ(volcano_level(F5.from_int(3), 2), (VolcanoPosition{0, 1}));
    // j = 2 in F_5 has d_pi = -11, so the 3-volcano is trivial
    EXPECT_EQ(volcano_level(F5.from_int(2), 3), (VolcanoPosition{0, 0}));
}

TEST(Volcano, LevelWithinDepth)
{
    FieldCtx F = make_field(7, 3);
    for (auto & j : ordinary(F))
        for (int l : {2, 3}) {
            VolcanoPosition v = volcano_level(j, l);
            CurveInvariants ci = curve_invariants(j);
            EXPECT_EQ(v.depth, nt::valuation(static_cast<u64>(ci.f_pi), l));
            EXPECT_GE(v.level, 0);
            EXPECT_LE(v.level, v.depth);
        }
}

TEST(Neighbors, DegreeAndMembership)
{
    FieldCtx F = make_field(11, 1);
    for (auto j : enumerate_elements(F))
        for (int l : {2, 3, 5}) {
            NeighborSet n = isogenous_neighbors(j, l);
            EXPECT_EQ(n.roots.size(), static_cast<std::size_t>(l + 1));
            for (auto & r : n.roots)
                EXPECT_TRUE(modular_polynomial(l).eval(j, r).is_zero());
        }
}

TEST(Neighbors, SupersingularStaysSupersingular)
{
    FieldCtx F = make_field(13, 2);
    for (auto j : enumerate_elements(F)) {
        if (!is_supersingular_j(j))
            continue;
        for (int l : {2, 3})
            for (auto & r : isogenous_neighbors(j, l).roots)
                EXPECT_TRUE(is_supersingular_j(r));
    }
}

TEST(Neighbors, CraterVerticesForSplitPrimes)
{
    // level-0 vertex with l split in End: two horizontal neighbours with the same discriminant
    FieldCtx F = make_field(101, 1);
    int seen = 0;
    for (auto & j : ordinary(F)) {
        CMOrder o = endo_discriminant(j);
        if (o.f != 1 || kronecker(o.D, 3) != 1 || curve_invariants(j).f_pi % 3 == 0)
            continue;
        int same = 0;
        for (auto & r : isogenous_neighbors(j, 3).roots)
            if (minimal_degree(r) == 1 && endo_discriminant(r) == o)
                ++same;
        EXPECT_EQ(same, 2) << j.to_string();
        ++seen;
    }
    EXPECT_GT(seen, 5);
}

TEST(Isogeny, GeometricDecision)
{
    FieldCtx F25 = make_field(5, 2);
    for (auto & j : ordinary(F25))
        EXPECT_TRUE(geometrically_isogenous(j, frobenius(j)).isogenous);

    FieldCtx F13 = make_field(13, 1);
    FieldElement j4 = F13.from_int(1728), j3 = F13.zero();
    ASSERT_EQ(endo_discriminant(j4).d_K, -4);
    ASSERT_EQ(endo_discriminant(j3).d_K, -3);
    EXPECT_FALSE(geometrically_isogenous(j4, j3).isogenous);

    // characteristic 5 has a single supersingular j; 11 has two
    FieldCtx F121 = make_field(11, 2);
    std::vector<FieldElement> ss;
    for (auto j : enumerate_elements(F121))
        if (is_supersingular_j(j))
            ss.push_back(j);
    ASSERT_GE(ss.size(), 2u);
    EXPECT_TRUE(geometrically_isogenous(ss[0], ss[1]).isogenous);
    EXPECT_FALSE(geometrically_isogenous(ss[0], ordinary(F121).front()).isogenous);
}

TEST(Isogeny, Paths)
{
    FieldCtx F = make_field(13, 2);
    auto j0 = ordinary(F).front();
    auto same = isogeny_path(j0, j0, {2, 3});
    ASSERT_TRUE(same.has_value());
    EXPECT_TRUE(same->empty());

    int found = 0, inert_checked = 0;
    for (auto & j : ordinary(F)) {
        FieldElement jf = frobenius(j);
        if (jf == j)
            continue;
        CMOrder o = endo_discriminant(j);
        std::vector<int> split, inert;
        for (int l : {2, 3, 5, 7})
            (kronecker(o.D, l) == 1 ? split : kronecker(o.D, l) == -1 ? inert : split).push_back(l);
        if (!inert.empty()) {
            EXPECT_FALSE(isogeny_path(j, jf, inert).has_value());
            ++inert_checked;
        }
        auto path = isogeny_path(j, jf, split);
        if (!path)
            continue;
        ++found;
        FieldElement cur = j;
        for (auto & s : *path) {
            EXPECT_TRUE(modular_polynomial(s.l).eval(cur, s.j).is_zero());
            EXPECT_EQ(endo_discriminant(s.j), o);
            cur = s.j;
        }
        EXPECT_EQ(to_minimal_field(cur), to_minimal_field(jf));
    }
    EXPECT_GT(found, 10);
    EXPECT_GT(inert_checked, 10);
}
