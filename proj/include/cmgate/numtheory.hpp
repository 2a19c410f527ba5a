#pragma once

#include "error.hpp"

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

namespace cmgate {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;
using BigInt = boost::multiprecision::mpz_int;

namespace nt {

inline u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 pow_mod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mul_mod(r, b, m);
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    return r;
}

inline u64 mod(i64 a, u64 m)
{
    i64 r = static_cast<i64>(static_cast<i128>(a) % static_cast<i128>(m));
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline u64 mod(const BigInt & a, u64 m)
{
    BigInt r = a % m;
    if (r < 0)
        r += m;
    return r.convert_to<u64>();
}

inline bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 sp : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % sp == 0)
            return n == sp;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

namespace detail {

inline u64 pollard_brent(u64 n)
{
    if (n % 2 == 0)
        return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        u64 r = 1;
        const u64 m = 128;
        auto f = [&](u64 v) { return (mul_mod(v, v, n) + c) % n; };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i)
                y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r <<= 1;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

inline void factor_into(u64 n, std::map<u64, int> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace detail

/// Prime factorization as an ordered map prime -> exponent.
inline std::map<u64, int> factor(u64 n)
{
    std::map<u64, int> out;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    detail::factor_into(n, out);
    return out;
}

inline std::vector<u64> divisors(u64 n)
{
    std::vector<u64> ds{1};
    for (auto [pr, e] : factor(n)) {
        std::size_t cur = ds.size();
        u64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= pr;
            for (std::size_t j = 0; j < cur; ++j)
                ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

inline u64 euler_phi(u64 n)
{
    u64 r = n;
    for (auto [pr, e] : factor(n))
        r = r / pr * (pr - 1);
    return r;
}

inline u64 isqrt(u64 n)
{
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

inline bool is_square(u64 n)
{
    u64 r = isqrt(n);
    return r * r == n;
}

inline int valuation(u64 n, u64 l)
{
    if (n == 0)
        return 0;
    int v = 0;
    while (n % l == 0) {
        n /= l;
        ++v;
    }
    return v;
}

/// p^e, or nullopt if it does not fit below `bound`.
inline std::optional<u64> checked_pow(u64 p, u64 e, u64 bound = ~u64{0})
{
    u128 r = 1;
    for (u64 i = 0; i < e; ++i) {
        r *= p;
        if (r > bound)
            return std::nullopt;
    }
    return static_cast<u64>(r);
}

/// Order of a in (Z/nZ)^*; requires gcd(a, n) = 1.
inline u64 multiplicative_order_mod(u64 a, u64 n)
{
    if (n == 1)
        return 1;
    u64 lambda = euler_phi(n);
    u64 ord = lambda;
    for (auto [pr, e] : factor(lambda)) {
        for (int i = 0; i < e; ++i) {
            if (pow_mod(a, ord / pr, n) == 1)
                ord /= pr;
            else
                break;
        }
    }
    return ord;
}

inline int kronecker(i64 a, i64 n)
{
    if (n == 0)
        return (a == 1 || a == -1) ? 1 : 0;
    int result = 1;
    if (n < 0) {
        n = -n;
        if (a < 0)
            result = -result;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (a % 2 == 0)
            return 0;
        i64 r = ((a % 8) + 8) % 8;
        if (r == 3 || r == 5)
            result = -result;
    }
    // Jacobi symbol (a / n), n odd positive
    i64 aa = static_cast<i64>(mod(a, static_cast<u64>(n)));
    i64 nn = n;
    while (aa != 0) {
        while (aa % 2 == 0) {
            aa /= 2;
            i64 r = nn % 8;
            if (r == 3 || r == 5)
                result = -result;
        }
        std::swap(aa, nn);
        if (aa % 4 == 3 && nn % 4 == 3)
            result = -result;
        aa %= nn;
    }
    return nn == 1 ? result : 0;
}

inline bool is_discriminant(i64 D) { return D < 0 && (mod(D, 4) == 0 || mod(D, 4) == 1); }

struct DiscriminantSplit {
    i64 fundamental;
    i64 conductor;
};

/// D = conductor^2 * fundamental with fundamental a fundamental discriminant.
inline DiscriminantSplit split_discriminant(i64 D)
{
    if (!is_discriminant(D))
        throw Error(ErrorCode::NotADiscriminant, std::to_string(D));
    u64 n = static_cast<u64>(-D);
    u64 sqf = 1, f = 1;
    for (auto [pr, e] : factor(n)) {
        for (int i = 0; i < e / 2; ++i)
            f *= pr;
        if (e % 2)
            sqf *= pr;
    }
    i64 d0 = -static_cast<i64>(sqf);
    if (mod(d0, 4) != 1) {
        d0 *= 4;
        f /= 2;
    }
    return {d0, static_cast<i64>(f)};
}

} // namespace nt
} // namespace cmgate
