#include "cmgate/ffield.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>

using namespace cmgate;

namespace {

bool has_root_mod(u64 p, const std::vector<u64> & monic_low)
{
    for (u64 x = 0; x < p; ++x) {
        u64 v = 1, acc = 0, pw = 1;
        for (u64 c : monic_low) {
            acc = (acc + c * pw) % p;
            pw = pw * x % p;
        }
        v = (acc + pw) % p;
        if (v == 0)
            return true;
    }
    return false;
}

} // namespace

TEST(Field, PrimeFieldContext)
{
    FieldCtx F = make_field(5, 1);
    EXPECT_EQ(F.order(), 5u);
    EXPECT_TRUE(F.is_prime_field());
    EXPECT_THROW(make_field(4, 1), Error);
    EXPECT_THROW(make_field(1, 1), Error);
}

TEST(Field, QuadraticModulusIsFirstIrreducibleInIndexOrder)
{
    // scan monic quadratics T^2 + c1 T + c0 by index c0 + 5 c1
    std::vector<u64> want;
    for (u64 idx = 0; idx < 25 && want.empty(); ++idx) {
        std::vector<u64> c{idx % 5, idx / 5};
        if (!has_root_mod(5, c))
            want = {c[0], c[1], 1};
    }
    FieldCtx F = make_field(5, 2);
    EXPECT_EQ(F.modulus(), (fp::Poly{2, 0, 1}));
    EXPECT_EQ(F.modulus(), want);
}

TEST(Field, Arithmetic)
{
    FieldCtx F = make_field(5, 1);
    EXPECT_EQ(F.from_int(3) * F.from_int(4), F.from_int(2));
    EXPECT_EQ(F.from_int(2) / F.from_int(3), F.from_int(4));
    EXPECT_EQ(F.from_int(4) * F.from_int(3), F.from_int(2));
    try {
        (void)(F.one() / F.zero());
        FAIL();
    } catch (const Error & e) {
        EXPECT_EQ(e.code(), ErrorCode::DivisionByZero);
    }
}

TEST(Field, FieldAxiomsOnRandomElements)
{
    std::mt19937_64 rng(7);
    for (auto [p, k] : {std::pair{5ull, 3}, {7ull, 2}, {101ull, 4}, {65537ull, 2}}) {
        FieldCtx F = make_field(p, k);
        for (int t = 0; t < 200; ++t) {
            FieldElement a = F.element(rng() % F.order()), b = F.element(rng() % F.order()),
                         c = F.element(rng() % F.order());
            EXPECT_EQ((a + b) * c, a * c + b * c);
            EXPECT_EQ(a * (b * c), (a * b) * c);
            if (!a.is_zero())
                EXPECT_TRUE((a * a.inverse()).is_one());
            EXPECT_TRUE(((a - b) + b) == a);
        }
    }
}

TEST(Field, EmbedPrimeSubfield)
{
    FieldCtx F5 = make_field(5, 1), F25 = make_field(5, 2), F125 = make_field(5, 3);
    FieldElement e = embed(F5.from_int(3), F25);
    EXPECT_EQ(e.coeff(0), 3u);
    EXPECT_EQ(e.coeff(1), 0u);
    try {
        (void)embed(F25.generator(), F125);
        FAIL();
    } catch (const Error & err) {
        EXPECT_EQ(err.code(), ErrorCode::NotASubfield);
    }
}

TEST(Field, EmbeddingsAreCompatibleHomomorphisms)
{
    FieldCtx F2 = make_field(5, 2), F4 = make_field(5, 4), F8 = make_field(5, 8), F6 = make_field(5, 6),
             F12 = make_field(5, 12);
    for (u64 i = 0; i < F2.order(); ++i) {
        FieldElement a = F2.element(i);
        EXPECT_EQ(embed(embed(a, F4), F8), embed(a, F8));
        EXPECT_EQ(embed(embed(a, F6), F12), embed(embed(a, F4), F12));
        EXPECT_EQ(embed(frobenius(a), F4), frobenius(embed(a, F4)));
        for (u64 j = 0; j < F2.order(); j += 3) {
            FieldElement b = F2.element(j);
            EXPECT_EQ(embed(a * b, F4), embed(a, F4) * embed(b, F4));
            EXPECT_EQ(embed(a + b, F4), embed(a, F4) + embed(b, F4));
        }
        EXPECT_EQ(restrict_to_subfield(embed(a, F8), 2), a);
    }
}

TEST(Field, MinimalField)
{
    FieldCtx F6 = make_field(7, 6);
    FieldElement x = embed(make_field(7, 3).generator(), F6);
    EXPECT_EQ(minimal_degree(x), 3);
    EXPECT_EQ(to_minimal_field(x), make_field(7, 3).generator());
    EXPECT_EQ(minimal_degree(F6.from_int(5)), 1);
    EXPECT_EQ(minimal_degree(F6.generator()), 6);
}

TEST(Field, Frobenius)
{
    FieldCtx F5 = make_field(5, 1), F125 = make_field(5, 3);
    for (auto x : enumerate_elements(F5))
        EXPECT_EQ(frobenius(x), x);
    for (auto x : enumerate_elements(F125)) {
        EXPECT_EQ(frobenius(x), x.pow(5));
        EXPECT_EQ(frobenius_power(x, 3), x);
    }
}

TEST(Field, MultiplicativeOrder)
{
    FieldCtx F7 = make_field(7, 1);
    EXPECT_EQ(multiplicative_order(F7.one()), 1u);
    EXPECT_EQ(multiplicative_order(F7.from_int(3)), 6u);
    EXPECT_THROW(multiplicative_order(F7.zero()), Error);
    // powers of 3 in F_7 cycle through 3, 2, 6, 4, 5, 1
    std::vector<i64> cycle{3, 2, 6, 4, 5, 1};
    FieldElement x = F7.one();
    for (i64 v : cycle) {
        x *= F7.from_int(3);
        EXPECT_EQ(x, F7.from_int(v));
    }
}

TEST(Field, Enumeration)
{
    FieldCtx F5 = make_field(5, 1), F25 = make_field(5, 2);
    std::vector<u64> got;
    for (auto x : enumerate_elements(F5))
        got.push_back(x.index());
    EXPECT_EQ(got, (std::vector<u64>{0, 1, 2, 3, 4}));

    std::set<FieldElement> seen;
    int primitive = 0;
    for (auto x : enumerate_elements(F25)) {
        seen.insert(x);
        if (!x.is_zero() && multiplicative_order(x) == 24)
            ++primitive;
    }
    EXPECT_EQ(seen.size(), 25u);
    EXPECT_EQ(primitive, 8);
    EXPECT_THROW(enumerate_elements(make_field(5, 13)), Error);
}

TEST(Field, OrdersDivideGroupOrder)
{
    FieldCtx F = make_field(7, 3);
    for (auto x : enumerate_elements(F)) {
        if (x.is_zero())
            continue;
        u64 n = multiplicative_order(x);
        EXPECT_EQ(342 % n, 0u);
        EXPECT_TRUE(x.pow(n).is_one());
    }
}

TEST(Field, SquareRoots)
{
    FieldCtx F = make_field(13, 2);
    for (u64 i = 0; i < F.order(); ++i) {
        FieldElement x = F.element(i);
        auto r = sqrt(x * x);
        ASSERT_TRUE(r.has_value());
        EXPECT_EQ(*r * *r, x * x);
    }
}
