#pragma once

#include "ffield.hpp"

#include <boost/unordered_map.hpp>

#include <cmath>
#include <random>
#include <set>

namespace cmgate {

/// y^2 = x^3 + a x + b over a finite field.
class EllipticCurve {
  public:
    EllipticCurve(FieldElement a, FieldElement b) : a_(std::move(a)), b_(std::move(b))
    {
        if (!(a_.ctx() == b_.ctx()))
            throw Error(ErrorCode::ContextMismatch, "curve coefficients from different fields");
        FieldElement four_a3 = a_ * a_ * a_ * a_.ctx().from_int(4);
        FieldElement disc = four_a3 + b_ * b_ * a_.ctx().from_int(27);
        if (disc.is_zero())
            throw Error(ErrorCode::DegenerateCurve, "4a^3 + 27b^2 = 0");
        j_ = a_.ctx().from_int(1728) * four_a3 / disc;
    }

    const FieldCtx & ctx() const { return a_.ctx(); }
    const FieldElement & a() const { return a_; }
    const FieldElement & b() const { return b_; }
    const FieldElement & j() const { return j_; }

    /// twist by the smallest non-square
    EllipticCurve quadratic_twist() const
    {
        FieldElement d = ctx().one();
        for (u64 i = 2;; ++i) {
            d = ctx().element(i);
            if (!is_square(d))
                break;
        }
        return EllipticCurve(a_ * d * d, b_ * d * d * d);
    }

  private:
    FieldElement a_, b_, j_;
};

inline EllipticCurve curve_from_j(const FieldElement & j)
{
    const FieldCtx & c = j.ctx();
    if (j.is_zero())
        return {c.zero(), c.one()};
    FieldElement k = c.from_int(1728);
    if (j == k)
        return {c.one(), c.zero()};
    FieldElement m = k - j;
    return {c.from_int(3) * j * m, c.from_int(2) * j * m * m};
}

struct FrobeniusData {
    u64 q;
    i64 t;
    i64 d_pi;
};

namespace detail {

struct Point {
    FieldElement x, y;
    bool inf = true;
};

inline Point point_add(const EllipticCurve & E, const Point & P, const Point & Q)
{
    if (P.inf)
        return Q;
    if (Q.inf)
        return P;
    FieldElement lambda;
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero())
            return {};
        lambda = (P.x * P.x * E.ctx().from_int(3) + E.a()) / (P.y + P.y);
    } else {
        lambda = (Q.y - P.y) / (Q.x - P.x);
    }
    FieldElement x3 = lambda * lambda - P.x - Q.x;
    FieldElement y3 = lambda * (P.x - x3) - P.y;
    return {x3, y3, false};
}

inline Point point_neg(const Point & P)
{
    if (P.inf)
        return P;
    return {P.x, -P.y, false};
}

inline Point point_mul(const EllipticCurve & E, Point P, u64 n)
{
    Point R;
    while (n) {
        if (n & 1)
            R = point_add(E, R, P);
        P = point_add(E, P, P);
        n >>= 1;
    }
    return R;
}

inline Point random_point(const EllipticCurve & E, std::mt19937_64 & rng)
{
    const FieldCtx & c = E.ctx();
    for (;;) {
        FieldElement x = c.element(rng() % c.order());
        FieldElement rhs = x * x * x + E.a() * x + E.b();
        if (auto y = sqrt(rhs)) {
            if ((rng() & 1) && !y->is_zero())
                return {x, -*y, false};
            return {x, *y, false};
        }
    }
}

/// All N in [lo, hi] with N*P = O.
inline std::vector<u64> annihilators_in(const EllipticCurve & E, const Point & P, u64 lo, u64 hi)
{
    const u64 width = hi - lo + 1;
    const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(width))));
    boost::unordered_map<u64, std::vector<std::pair<u64, u64>>> baby; // x index -> (j, y index)
    Point jP;
    std::vector<u64> zero_steps; // j with jP = O
    for (u64 j = 0; j < m; ++j) {
        if (jP.inf)
            zero_steps.push_back(j);
        else
            baby[jP.x.index()].push_back({j, jP.y.index()});
        jP = point_add(E, jP, P);
    }
    Point step = point_mul(E, P, m);
    Point R = point_mul(E, P, lo);
    std::vector<u64> out;
    for (u64 i = 0; i * m < width; ++i) {
        // want R + jP = O, i.e. jP = -R
        if (R.inf) {
            for (u64 j : zero_steps)
                out.push_back(lo + i * m + j);
        } else {
            auto it = baby.find(R.x.index());
            if (it != baby.end()) {
                u64 target = (-R.y).index();
                for (auto [j, yi] : it->second)
                    if (yi == target)
                        out.push_back(lo + i * m + j);
            }
        }
        R = point_add(E, R, step);
    }
    std::vector<u64> in;
    for (u64 n : out)
        if (n <= hi)
            in.push_back(n);
    std::sort(in.begin(), in.end());
    return in;
}

} // namespace detail

/// #E(F_q) by summing quadratic characters over x.
inline u64 count_points_naive(const EllipticCurve & E)
{
    const FieldCtx & c = E.ctx();
    const auto & sq = square_table(c);
    u64 n = 1;
    for (u64 i = 0; i < c.order(); ++i) {
        FieldElement x = c.element(i);
        FieldElement rhs = (x * x + E.a()) * x + E.b();
        if (rhs.is_zero())
            n += 1;
        else if (sq[rhs.index()])
            n += 2;
    }
    return n;
}

/// #E(F_q) by baby-step giant-step over the Hasse interval, intersecting with twist data.
inline u64 count_points_bsgs(const EllipticCurve & E)
{
    const FieldCtx & c = E.ctx();
    const u64 q = c.order();
    const u64 r = static_cast<u64>(std::floor(2.0 * std::sqrt(static_cast<long double>(q))));
    u64 lo = q + 1 - std::min(q + 1, r + 1), hi = q + 1 + r + 1;
    while (static_cast<i128>(lo) > 0 && static_cast<i128>(q + 1 - lo) * (q + 1 - lo) > static_cast<i128>(4) * q)
        ++lo;
    while (static_cast<i128>(hi - q - 1) * (hi - q - 1) > static_cast<i128>(4) * q)
        --hi;
    EllipticCurve T = E.quadratic_twist();
    std::mt19937_64 rng(settings().seed ^ (E.a().index() * 0x9E3779B97F4A7C15ull) ^ (E.b().index() * 0xC2B2AE3D27D4EB4Full) ^ q);
    std::set<u64> cand;
    bool first = true;
    for (int iter = 0; iter < 64; ++iter) {
        bool twist = iter % 2 == 1;
        const EllipticCurve & C = twist ? T : E;
        detail::Point P = detail::random_point(C, rng);
        std::vector<u64> ns = detail::annihilators_in(C, P, lo, hi);
        std::set<u64> here;
        for (u64 n : ns)
            here.insert(twist ? 2 * q + 2 - n : n);
        if (first) {
            cand = here;
            first = false;
        } else {
            std::set<u64> both;
            std::set_intersection(cand.begin(), cand.end(), here.begin(), here.end(), std::inserter(both, both.end()));
            cand = both;
        }
        if (cand.size() == 1 && iter >= 1)
            return *cand.begin();
    }
    if (q <= settings().enumeration_bound)
        return count_points_naive(E);
    throw Error(ErrorCode::InvalidArgument, "group order search did not converge");
}

inline u64 count_points(const EllipticCurve & E)
{
    if (E.ctx().order() <= settings().naive_count_threshold)
        return count_points_naive(E);
    return count_points_bsgs(E);
}

inline FrobeniusData frobenius_data(const EllipticCurve & E)
{
    const u64 q = E.ctx().order();
    if (q > (u64{1} << 60))
        throw Error(ErrorCode::SizeExceeded, "field too large for exact Frobenius data");
    u64 n = count_points(E);
    i64 t = static_cast<i64>(q + 1) - static_cast<i64>(n);
    return {q, t, t * t - 4 * static_cast<i64>(q)};
}

inline bool is_supersingular(const FrobeniusData & fd, u64 p) { return nt::mod(fd.t, p) == 0; }

inline bool is_supersingular(const EllipticCurve & E)
{
    return is_supersingular(frobenius_data(E), E.ctx().characteristic());
}

} // namespace cmgate
