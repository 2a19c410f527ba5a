#pragma once

#include "poly.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <vector>

namespace cmgate {

namespace detail {

inline std::vector<i64> int_poly_divide_exact(std::vector<i64> a, const std::vector<i64> & b)
{
    // b monic
    int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
    std::vector<i64> q(da - db + 1, 0);
    for (int i = da - db; i >= 0; --i) {
        i64 c = a[i + db];
        q[i] = c;
        if (c != 0)
            for (int j = 0; j <= db; ++j)
                a[i + j] -= c * b[j];
    }
    return q;
}

} // namespace detail

/// Coefficients of the n-th cyclotomic polynomial over Z, constant term first.
inline const std::vector<i64> & cyclotomic_integer(u64 n)
{
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
    static std::mutex mu;
    static std::map<u64, std::vector<i64>> table;
    {
        std::lock_guard lock(mu);
        auto it = table.find(n);
        if (it != table.end())
            return it->second;
    }
    std::vector<i64> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (u64 d : nt::divisors(n))
        if (d < n)
            num = detail::int_poly_divide_exact(std::move(num), cyclotomic_integer(d));
    std::lock_guard lock(mu);
    return table.emplace(n, std::move(num)).first->second;
}

/// Psi_n reduced into ctx.
inline UniPoly cyclotomic_polynomial(u64 n, const FieldCtx & ctx)
{
    if (n == 0)
        throw Error(ErrorCode::InvalidArgument, "cyclotomic index must be positive");
    if (n % ctx.characteristic() == 0)
        throw Error(ErrorCode::IndexDivisibleByP,
                    "index " + std::to_string(n) + " divisible by p = " + std::to_string(ctx.characteristic()));
    return UniPoly::from_ints(ctx, cyclotomic_integer(n));
}

struct GaloisThresholdReport {
    u64 l;
    u64 p;
    int m_max;
    /// degrees[m-1] = [F_p(mu_{l^m}) : F_p]
    std::vector<u64> degrees;
    /// least n with degrees[m]/degrees[m-1] = l for every m >= n
    int threshold;
    /// the same index read off the computed degrees; absent when the range is too short to see it
    std::optional<int> observed_threshold;
};

namespace detail {

inline void require_distinct_primes(u64 l, u64 p)
{
    if (!nt::is_prime(l) || !nt::is_prime(p))
        throw Error(ErrorCode::CompositeP, "both arguments must be prime");
    if (l == p)
        throw Error(ErrorCode::EqualPrimes, "l and p must differ");
}

} // namespace detail

inline GaloisThresholdReport stabilization_threshold(u64 l, u64 p, int m_max)
{
    detail::require_distinct_primes(l, p);
    if (m_max < 1)
        throw Error(ErrorCode::InvalidArgument, "m_max must be positive");
    GaloisThresholdReport r{l, p, m_max, {}, 0, std::nullopt};
    u64 lm = 1;
    for (int m = 1; m <= m_max; ++m) {
        auto next = nt::checked_pow(l, static_cast<u64>(m));
        if (!next || *next > (u64{1} << 62))
            throw Error(ErrorCode::SizeExceeded, "l^m too large");
        lm = *next;
        r.degrees.push_back(nt::multiplicative_order_mod(p % lm, lm));
    }
    // closed form: v_l(p^d - 1) with d the order of p mod l; for l = 2 use p^2 - 1 unless p = 1 mod 4
    if (l == 2) {
        r.threshold = (p % 4 == 1) ? nt::valuation(p - 1, 2) : nt::valuation(p - 1, 2) + nt::valuation(p + 1, 2);
    } else {
        u64 d1 = nt::multiplicative_order_mod(p % l, l);
        u64 big = l;
        int e = 1;
        while (big <= (u64{1} << 40) / l) {
            big *= l;
            ++e;
        }
        u64 v = (nt::pow_mod(p % big, d1, big) + big - 1) % big;
        r.threshold = v == 0 ? e : nt::valuation(v, l);
    }
    // read off the data: one past the last index whose ratio is not l
    int last_bad = 0;
    for (int m = 1; m < m_max; ++m)
        if (r.degrees[m] != r.degrees[m - 1] * l)
            last_bad = m;
    if (last_bad + 1 < m_max) {
        r.observed_threshold = last_bad + 1;
        if (*r.observed_threshold != r.threshold)
            throw Error(ErrorCode::ProviderDisagreement, "threshold formula disagrees with computed degrees");
    }
    return r;
}

/// Smallest k with l^m | p^k - 1, confirmed by exhibiting an element of order l^m in F_{p^k}.
struct RootOfUnityLocation {
    u64 degree;
    bool confirmed_in_field; // false when F_{p^k} exceeds the field bound
};

inline RootOfUnityLocation locate_roots_of_unity(u64 l, u64 p, int m)
{
    detail::require_distinct_primes(l, p);
    u64 n = *nt::checked_pow(l, static_cast<u64>(m));
    u64 k = 1;
    for (u64 pk = p % n; (pk + n - 1) % n != 0; pk = nt::mul_mod(pk, p, n))
        ++k;
    if (!nt::checked_pow(p, k, settings().field_bound))
        return {k, false};
    FieldCtx F = make_field(p, static_cast<int>(k));
    BigInt cof = (BigInt(F.order()) - 1) / n;
    for (u64 i = 2; i < F.order(); ++i) {
        FieldElement z = F.element(i).pow(cof);
        if (z.pow(n / l).is_one())
            continue;
        // order exactly n, and no proper subfield contains it
        bool ok = z.pow(n).is_one() && minimal_degree(z) == static_cast<int>(k);
        return {k, ok};
    }
    return {k, false};
}

struct GaloisExponentWitness {
    bool holds;
    std::optional<u64> e;          // p^e = a mod l^m
    u64 field_degree;              // order of p mod l^m
    bool verified_on_generator;    // zeta^{p^e} = zeta^a checked in F_{p^field_degree}
};

inline GaloisExponentWitness galois_exponent_witness(u64 l, u64 p, i64 a, int m)
{
    detail::require_distinct_primes(l, p);
    if (m < 1)
        throw Error(ErrorCode::BadExponent, "m must be positive");
    if (nt::mod(a, l) == 0 || nt::mod(a, p) == 0)
        throw Error(ErrorCode::BadExponent, "a must be prime to l and p");
    auto nn = nt::checked_pow(l, static_cast<u64>(m), u64{1} << 62);
    if (!nn)
        throw Error(ErrorCode::SizeExceeded, "l^m too large");
    u64 n = *nn;
    u64 am = nt::mod(a, n);
    u64 d = nt::multiplicative_order_mod(p % n, n);
    GaloisExponentWitness w{false, std::nullopt, d, false};
    u64 pe = 1 % n;
    for (u64 e = 0; e < d; ++e) {
        if (pe == am) {
            w.holds = true;
            w.e = e;
            break;
        }
        pe = nt::mul_mod(pe, p, n);
    }
    if (!w.holds || !nt::checked_pow(p, d, settings().field_bound))
        return w;
    FieldCtx F = make_field(p, static_cast<int>(d));
    BigInt cof = (BigInt(F.order()) - 1) / n;
    for (u64 i = 2; i < F.order(); ++i) {
        FieldElement z = F.element(i).pow(cof);
        if (z.pow(n / l).is_one())
            continue;
        w.verified_on_generator = frobenius_power(z, *w.e) == z.pow(am);
        break;
    }
    return w;
}

} // namespace cmgate
