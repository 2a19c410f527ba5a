#include "cmgate/bipoly.hpp"
#include "cmgate/modpoly.hpp"
#include "cmgate/parse.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cmgate;

namespace {

UniPoly P(const FieldCtx & F, std::vector<i64> c) { return UniPoly::from_ints(F, c); }

UniPoly specialize_y(const BiPoly & f, const FieldElement & y)
{
    std::vector<FieldElement> c(std::max(f.deg_x(), 0) + 1, y.ctx().zero());
    for (auto & [key, v] : f.terms())
        c[key.first] += embed(v, y.ctx()) * y.pow(static_cast<u64>(key.second));
    return UniPoly(y.ctx(), c);
}

} // namespace

TEST(UniPoly, Factorization)
{
    FieldCtx F = make_field(5, 1);
    auto f1 = factor_univariate(P(F, {-1, 0, 1}));
    ASSERT_EQ(f1.size(), 2u);
    EXPECT_EQ(f1[0].multiplicity, 1);
    EXPECT_EQ(f1[0].poly * f1[1].poly, P(F, {-1, 0, 1}));

    auto f2 = factor_univariate(P(F, {2, 0, 1}));
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0].poly, P(F, {2, 0, 1}));

    auto f3 = factor_univariate(pow(P(F, {-2, 1}), 3));
    ASSERT_EQ(f3.size(), 1u);
    EXPECT_EQ(f3[0].poly, P(F, {-2, 1}));
    EXPECT_EQ(f3[0].multiplicity, 3);
}

TEST(UniPoly, FactorizationReassemblesRandomPolynomials)
{
    std::mt19937_64 rng(3);
    for (auto [p, k] : {std::pair{5ull, 1}, {7ull, 2}, {101ull, 1}}) {
        FieldCtx F = make_field(p, k);
        for (int t = 0; t < 30; ++t) {
            std::vector<FieldElement> c;
            int d = 1 + static_cast<int>(rng() % 12);
            for (int i = 0; i < d; ++i)
                c.push_back(F.element(rng() % F.order()));
            c.push_back(F.one());
            UniPoly f(F, c);
            UniPoly prod = UniPoly::constant(F.one());
            for (auto & fac : factor_univariate(f)) {
                EXPECT_EQ(fac.poly.leading(), F.one());
                EXPECT_EQ(factor_univariate(fac.poly).size(), 1u);
                prod = prod * pow(fac.poly, fac.multiplicity);
            }
            EXPECT_EQ(prod, f);
        }
    }
}

TEST(UniPoly, RootsIn)
{
    FieldCtx F = make_field(5, 1);
    auto r = roots_in(P(F, {-1, 0, 1}), 1);
    std::vector<u64> idx;
    for (auto & x : r)
        idx.push_back(x.index());
    std::sort(idx.begin(), idx.end());
    EXPECT_EQ(idx, (std::vector<u64>{1, 4}));

    EXPECT_TRUE(roots_in(P(F, {2, 0, 1}), 1).empty());
    auto r2 = roots_in(P(F, {2, 0, 1}), 2);
    ASSERT_EQ(r2.size(), 2u);
    EXPECT_EQ(r2[0] + r2[1], make_field(5, 2).zero());

    // T^5 + T - 1 is separable: five roots spread over extensions of degree <= 5
    UniPoly g = P(F, {-1, 1, 0, 0, 0, 1});
    std::size_t total = 0;
    for (auto & fac : factor_univariate(g))
        total += roots_in(fac.poly, fac.poly.degree()).size();
    EXPECT_EQ(total, 5u);
}

TEST(UniPoly, RootsMatchExhaustiveSearch)
{
    FieldCtx F = make_field(7, 2);
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        std::vector<FieldElement> c;
        for (int i = 0; i < 6; ++i)
            c.push_back(F.element(rng() % F.order()));
        c.push_back(F.one());
        UniPoly f(F, c);
        std::set<FieldElement> brute;
        for (auto x : enumerate_elements(F))
            if (f(x).is_zero())
                brute.insert(x);
        auto r = roots(f);
        EXPECT_EQ(std::set<FieldElement>(r.begin(), r.end()), brute);
    }
}

TEST(UniPoly, RadicalDivides)
{
    FieldCtx F = make_field(5, 1);
    EXPECT_TRUE(radical_divides(pow(P(F, {-1, 1}), 3), P(F, {-1, 1})));
    EXPECT_FALSE(radical_divides(P(F, {-1, 1}) * P(F, {-2, 1}), pow(P(F, {-1, 1}), 2)));
    EXPECT_TRUE(radical_divides(P(F, {2, 0, 1}), P(F, {2, 0, 1}) * P(F, {-1, 1})));
}

TEST(BiPoly, Resultant)
{
    FieldCtx F = make_field(5, 1);
    BiPoly f = parse_curve("X + Y - 1", F), g = parse_curve("X - Y", F);
    UniPoly r = resultant_y_eliminate(f, g);
    ASSERT_EQ(r.degree(), 1);
    auto rs = roots(r);
    ASSERT_EQ(rs.size(), 1u);
    EXPECT_EQ(rs[0], F.from_int(3));

    EXPECT_TRUE(resultant_y_eliminate(g, g).is_zero());

    UniPoly c = resultant_y_eliminate(parse_curve("X*Y - 1", F), parse_curve("X", F));
    EXPECT_EQ(c.degree(), 0);
    EXPECT_FALSE(c.is_zero());
}

TEST(BiPoly, ResultantVanishesExactlyAtCommonRoots)
{
    FieldCtx F = make_field(7, 1);
    FieldCtx L = make_field(7, 2);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        BiPoly f(F), g(F);
        f.add_term(2, 0, F.one());
        g.add_term(3, 0, F.one());
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 3; ++j) {
                f.add_term(i, j, F.element(rng() % 7));
                g.add_term(i, j, F.element(rng() % 7));
            }
        UniPoly r = resultant_y_eliminate(f, g);
        for (auto y : enumerate_elements(L)) {
            bool common = gcd(specialize_y(f, y), specialize_y(g, y)).degree() > 0;
            EXPECT_EQ(r.is_zero() || r(y).is_zero(), common);
        }
    }
}

TEST(BiPoly, Evaluation)
{
    FieldCtx F = make_field(5, 1);
    EXPECT_TRUE(eval_bi(parse_curve("X - Y", F), F.from_int(2), F.from_int(2)).is_zero());
    EXPECT_TRUE(eval_bi(parse_curve("X*Y - 1", F), F.from_int(2), F.from_int(3)).is_zero());
    // Phi_2(0, 54000) = 0 in every characteristic where both reduce
    for (u64 p : {5ull, 7ull, 11ull, 101ull}) {
        FieldCtx G = make_field(p, 1);
        BiPoly phi = modular_polynomial(2).reduce(G);
        EXPECT_TRUE(eval_bi(phi, G.zero(), G.from_int(54000)).is_zero()) << p;
    }
}

TEST(BiPoly, AbsoluteIrreducibility)
{
    FieldCtx F = make_field(5, 1);
    EXPECT_TRUE(is_absolutely_irreducible(parse_curve("X - Y^25", F)));
    EXPECT_FALSE(is_absolutely_irreducible(parse_curve("X^2 - Y^2", F)));
    EXPECT_FALSE(is_absolutely_irreducible(parse_curve("X^2 + 2", F)));
    EXPECT_TRUE(is_absolutely_irreducible(parse_curve("X + Y - 1", F)));
    EXPECT_TRUE(is_absolutely_irreducible(parse_curve("X*Y - 1", F)));
    EXPECT_TRUE(is_absolutely_irreducible(parse_curve("Y^2 - X^3 - X", F)));
    // irreducible over F_5 but a product of conjugates over F_25
    EXPECT_FALSE(is_absolutely_irreducible(parse_curve("X^2 - 2*Y^2", F)));
    EXPECT_FALSE(is_absolutely_irreducible(parse_curve("(X*Y - 1)*(X + Y)", F)));
}

TEST(ModularPolynomial, Levels)
{
    const auto & phi = modular_polynomial(3);
    EXPECT_EQ(phi.degree(), 4);
    EXPECT_EQ(phi.coeff(4, 0), 1);
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; j <= 4; ++j)
            EXPECT_EQ(phi.coeff(i, j), phi.coeff(j, i));
    try {
        modular_polynomial(17);
        FAIL();
    } catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::UnsupportedLevel);
    }
}
