#include "cmgate/endoring.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cmgate;

namespace {

// all primitive reduced forms by direct scan over |b| <= a <= c
std::size_t brute_class_number(i64 D)
{
    std::size_t n = 0;
    for (i64 a = 1; 3 * a * a <= -D; ++a)
        for (i64 b = -a + 1; b <= a; ++b) {
            i64 num = b * b - D;
            if (num % (4 * a))
                continue;
            i64 c = num / (4 * a);
            if (c < a || (a == c && b < 0))
                continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1)
                continue;
            ++n;
        }
    return n;
}

std::vector<BigInt> classical(i64 D)
{
    // well-known integer class polynomials, constant term first
    static const std::map<i64, std::vector<std::string>> table{
        {-3, {"0", "1"}},
        {-4, {"-1728", "1"}},
        {-7, {"3375", "1"}},
        {-8, {"-8000", "1"}},
        {-11, {"32768", "1"}},
        {-19, {"884736", "1"}},
        {-15, {"-121287375", "191025", "1"}},
        {-20, {"-681472000", "-1264000", "1"}},
        {-23, {"12771880859375", "-5151296875", "3491750", "1"}},
    };
    std::vector<BigInt> out;
    for (auto & s : table.at(D))
        out.emplace_back(s);
    return out;
}

} // namespace

TEST(ClassNumber, ReducedForms)
{
    auto f3 = reduced_forms(-3);
    ASSERT_EQ(f3.size(), 1u);
    EXPECT_EQ(f3[0].a, 1);
    EXPECT_EQ(f3[0].b, 1);
    EXPECT_EQ(f3[0].c, 1);
    auto f23 = reduced_forms(-23);
    ASSERT_EQ(f23.size(), 3u);
    std::set<std::tuple<i64, i64, i64>> got;
    for (auto & f : f23)
        got.insert({f.a, f.b, f.c});
    EXPECT_EQ(got, (std::set<std::tuple<i64, i64, i64>>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}}));
    try {
        reduced_forms(-5);
        FAIL();
    } catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::NotADiscriminant);
    }
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-15), 2);
    EXPECT_EQ(class_number(-23), 3);
}

TEST(ClassNumber, MatchesBruteForceScan)
{
    for (i64 D = -3; D >= -2000; --D)
        if (nt::is_discriminant(D))
            EXPECT_EQ(static_cast<std::size_t>(class_number(D)), brute_class_number(D)) << D;
}

TEST(HilbertPolynomial, ClassicalIntegerValues)
{
    for (i64 D : {-3, -4, -7, -8, -11, -19, -15, -20, -23})
        EXPECT_EQ(hilbert_integer(D), classical(D)) << D;
}

TEST(HilbertPolynomial, SmallReductions)
{
    FieldCtx F7 = make_field(7, 1), F5 = make_field(5, 1);
    EXPECT_EQ(hilbert_mod_p(-3, 7).poly, UniPoly::variable(F7));
    EXPECT_EQ(hilbert_mod_p(-4, 5).poly, UniPoly::from_ints(F5, {-3, 1}));
    EXPECT_TRUE(hilbert_eval(-3, F7.zero()).is_zero());
    EXPECT_TRUE(hilbert_eval(-4, F5.from_int(3)).is_zero());
    EXPECT_FALSE(hilbert_eval(-4, F5.zero()).is_zero());
    auto h = hilbert_mod_p(-15, 61);
    EXPECT_EQ(h.poly.degree(), 2);
    for (auto & j : hilbert_roots(h.poly).roots)
        EXPECT_EQ(endo_discriminant(j).D, -15);
}

TEST(HilbertPolynomial, Errors)
{
    auto code = [](auto f) {
        try {
            f();
        } catch (const Error & e) {
            return e.code();
        }
        return ErrorCode::InvalidArgument;
    };
    EXPECT_EQ(code([] { hilbert_mod_p(-5, 7); }), ErrorCode::NotADiscriminant);
    EXPECT_EQ(code([] { hilbert_mod_p(-7, 5); }), ErrorCode::PInert);
    EXPECT_EQ(code([] { hilbert_mod_p(-20, 5); }), ErrorCode::PDividesD);
}

TEST(HilbertPolynomial, DegreeAndGaloisStability)
{
    for (i64 D = -3; D >= -200; --D) {
        if (!nt::is_discriminant(D))
            continue;
        int found = 0;
        for (u64 p = 5; found < 3; ++p) {
            if (!nt::is_prime(p) || kronecker(D, static_cast<i64>(p)) != 1)
                continue;
            ++found;
            auto h = hilbert_mod_p(D, p);
            EXPECT_EQ(h.poly.degree(), class_number(D)) << D << " " << p;
            EXPECT_TRUE(h.ctx.is_prime_field());
            auto rs = hilbert_roots(h.poly).roots;
            std::set<FieldElement> roots(rs.begin(), rs.end());
            for (auto & j : rs)
                EXPECT_TRUE(roots.count(frobenius(j))) << D << " " << p;
        }
    }
}

// Build H_D mod p from the volcano provider alone: product of (T - j) over the ordinary j with End of
// discriminant D. Independent of the analytic construction.
TEST(HilbertPolynomial, AgreesWithEndomorphismSweep)
{
    bool saved = settings().hilbert_provider;
    settings().hilbert_provider = false;
    std::map<std::pair<u64, int>, std::map<i64, std::vector<FieldElement>>> sweeps;
    int compared = 0;
    for (i64 D = -3; D >= -60; --D) {
        if (!nt::is_discriminant(D))
            continue;
        for (u64 p : {7ull, 11ull, 13ull, 17ull, 19ull}) {
            if (kronecker(D, static_cast<i64>(p)) != 1)
                continue;
            UniPoly h = hilbert_mod_p(D, p).poly;
            int k = 1;
            for (auto & f : factor_univariate(h))
                k = std::lcm(k, f.poly.degree());
            if (nt::checked_pow(p, k, 20000) == std::nullopt)
                continue;
            FieldCtx L = make_field(p, k);
            auto & sweep = sweeps[{p, k}];
            if (sweep.empty()) {
                for (auto j : enumerate_elements(L)) {
                    if (is_supersingular_j(j))
                        continue;
                    try {
                        sweep[endo_discriminant_volcano(j).D].push_back(j);
                    } catch (const Error & e) {
                        ASSERT_EQ(e.code(), ErrorCode::UnsupportedLevel);
                        sweep[0].push_back(j);
                    }
                }
            }
            UniPoly prod = UniPoly::constant(L.one());
            for (auto & j : sweep[D])
                prod = prod * (UniPoly::variable(L) - UniPoly::constant(j));
            if (prod.degree() != h.degree())
                continue; // some roots had an unsupported conductor prime
            EXPECT_EQ(prod, map_to(h, L)) << D << " " << p;
            ++compared;
        }
    }
    settings().hilbert_provider = saved;
    EXPECT_GT(compared, 30);
}

TEST(TestDiscriminant, Search)
{
    EXPECT_EQ(find_test_discriminant(5, 2, 1), -7);
    i64 D = find_test_discriminant(2, 5, 1);
    // oracle: scan 3, 7, 11, ... for 2 inert (|D| = 3 mod 8) and 5 split
    i64 want = 0;
    for (i64 d = 3; !want; d += 4)
        if (nt::is_prime(d) && d % 8 == 3 && nt::pow_mod(nt::mod(-d, 5), 2, 5) == 1)
            want = -d;
    EXPECT_EQ(D, want);
    for (i64 dmin : {1, 10, 100, 1000})
        EXPECT_LT(find_test_discriminant(3, 7, dmin), -dmin);
    EXPECT_THROW(find_test_discriminant(5, 5, 1), Error);
}

TEST(InertObstruction, Examples)
{
    EXPECT_TRUE(inert_obstruction_check(-7, 5, 11));
    // -23: 5 is inert ((-23|5) = -1) and 13 splits
    ASSERT_EQ(kronecker(-23, 5), -1);
    ASSERT_EQ(kronecker(-23, 13), 1);
    EXPECT_TRUE(inert_obstruction_check(-23, 5, 13));
    // l = 2 splits for -23: horizontal 2-isogenies connect the roots
    ASSERT_EQ(kronecker(-23, 2), 1);
    EXPECT_FALSE(inert_obstruction_check(-23, 2, 13));
}

TEST(InertObstruction, HoldsForSearchedDiscriminants)
{
    for (int l : {2, 3, 5, 7})
        for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
            if (static_cast<u64>(l) == p)
                continue;
            i64 D = find_test_discriminant(l, static_cast<i64>(p), 20);
            EXPECT_TRUE(inert_obstruction_check(D, l, p)) << D << " " << l << " " << p;
        }
}
