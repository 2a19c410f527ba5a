#include "cmgate/ecurve.hpp"

#include <gtest/gtest.h>

using namespace cmgate;

namespace {

// direct count with Euler's criterion in the prime field
u64 legendre_count(u64 p, u64 a, u64 b)
{
    u64 n = 1;
    for (u64 x = 0; x < p; ++x) {
        u64 r = (nt::mul_mod(nt::mul_mod(x, x, p), x, p) + nt::mul_mod(a, x, p) + b) % p;
        if (r == 0)
            n += 1;
        else if (nt::pow_mod(r, (p - 1) / 2, p) == 1)
            n += 2;
    }
    return n;
}

} // namespace

TEST(EllipticCurve, CurveFromJ)
{
    FieldCtx F = make_field(5, 1);
    EllipticCurve e0 = curve_from_j(F.zero());
    EXPECT_EQ(e0.a(), F.zero());
    EXPECT_EQ(e0.b(), F.one());
    EllipticCurve e1728 = curve_from_j(F.from_int(3));
    EXPECT_EQ(e1728.a(), F.one());
    EXPECT_EQ(e1728.b(), F.zero());
    EllipticCurve e2 = curve_from_j(F.from_int(2));
    EXPECT_EQ(e2.a(), F.from_int(1));
    EXPECT_EQ(e2.b(), F.from_int(4));
    EXPECT_EQ(e2.j(), F.from_int(2));
}

TEST(EllipticCurve, CurveFromJRoundTrips)
{
    FieldCtx F = make_field(7, 3);
    for (auto j : enumerate_elements(F))
        EXPECT_EQ(curve_from_j(j).j(), j);
}

TEST(EllipticCurve, SmallCounts)
{
    FieldCtx F = make_field(5, 1);
    EllipticCurve E1(F.one(), F.zero()), E2(F.zero(), F.one());
    EXPECT_EQ(count_points(E1), 4u);
    EXPECT_EQ(count_points(E2), 6u);
    FrobeniusData d1 = frobenius_data(E1), d2 = frobenius_data(E2);
    EXPECT_EQ(d1.t, 2);
    EXPECT_EQ(d1.d_pi, -16);
    EXPECT_EQ(d2.t, 0);
    EXPECT_EQ(d2.d_pi, -20);
    EXPECT_TRUE(is_supersingular(E2));
    EXPECT_FALSE(is_supersingular(E1));
    EXPECT_THROW(EllipticCurve(F.zero(), F.zero()), Error);
}

TEST(EllipticCurve, BsgsAgreesWithLegendreSums)
{
    for (u64 p : {10007ull, 65537ull, 1000003ull}) {
        FieldCtx F = make_field(p, 1);
        for (u64 a = 1; a < 8; ++a)
            for (u64 b = 0; b < 4; ++b) {
                if ((4 * a * a * a + 27 * b * b) % p == 0)
                    continue;
                EllipticCurve E(F.from_int(static_cast<i64>(a)), F.from_int(static_cast<i64>(b)));
                EXPECT_EQ(count_points_bsgs(E), legendre_count(p, a, b)) << p << " " << a << " " << b;
            }
    }
}

TEST(EllipticCurve, BsgsAgreesWithNaiveOverExtensions)
{
    for (auto [p, k] : {std::pair{5ull, 4}, {7ull, 3}, {11ull, 2}, {13ull, 3}}) {
        FieldCtx F = make_field(p, k);
        for (u64 i = 1; i < F.order(); i += F.order() / 40 + 1) {
            FieldElement j = F.element(i);
            EllipticCurve E = curve_from_j(j);
            u64 n = count_points_naive(E);
            EXPECT_EQ(count_points_bsgs(E), n);
            EXPECT_EQ(count_points_bsgs(E.quadratic_twist()), 2 * (F.order() + 1) - n);
        }
    }
}

TEST(EllipticCurve, HasseBound)
{
    FieldCtx F = make_field(101, 2);
    for (u64 i = 0; i < F.order(); i += 97) {
        FrobeniusData fd = frobenius_data(curve_from_j(F.element(i)));
        EXPECT_LE(fd.t * fd.t, static_cast<i64>(4 * F.order()));
        EXPECT_LE(fd.d_pi, 0);
    }
}

TEST(EllipticCurve, SupersingularCountMatchesClassicalFormula)
{
    // supersingular j-invariants of characteristic p number floor(p/12) + {0,1,1,2}
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        FieldCtx F = make_field(p, 2);
        u64 n = 0;
        for (auto j : enumerate_elements(F))
            if (is_supersingular(curve_from_j(j)))
                ++n;
        u64 want = p / 12 + std::array<u64, 4>{0, 1, 1, 2}[(p % 12 == 1) ? 0 : (p % 12 == 5) ? 1 : (p % 12 == 7) ? 2 : 3];
        EXPECT_EQ(n, want) << p;
    }
}
