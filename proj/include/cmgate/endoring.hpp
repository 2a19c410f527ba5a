#pragma once

#include "classpoly.hpp"
#include "ecurve.hpp"
#include "modpoly.hpp"

#include <deque>
#include <map>
#include <mutex>
#include <set>

namespace cmgate {

/// Imaginary quadratic order of discriminant D = f^2 d_K.
struct CMOrder {
    i64 d_K;
    i64 f;
    i64 D;
    friend bool operator==(const CMOrder &, const CMOrder &) = default;
};

inline CMOrder make_order(i64 d_K, i64 f) { return {d_K, f, f * f * d_K}; }

struct VolcanoPosition {
    int level;
    int depth;
    friend bool operator==(const VolcanoPosition &, const VolcanoPosition &) = default;
};

/// Frobenius data of curve_from_j over the field generated by j.
struct CurveInvariants {
    FrobeniusData fd;
    bool supersingular;
    i64 d_K = 0;  // fundamental discriminant of Q(pi), ordinary only
    i64 f_pi = 0; // conductor of Z[pi]
};

namespace detail {

using JKey = std::tuple<u64, int, u64>;

inline JKey jkey(const FieldElement & j) { return {j.ctx().characteristic(), j.ctx().degree(), j.index()}; }

struct EndoCache {
    std::mutex mu;
    std::map<JKey, CurveInvariants> invariants;
    std::map<std::pair<JKey, int>, VolcanoPosition> levels;
    std::map<JKey, CMOrder> orders;
};

inline EndoCache & endo_cache()
{
    static EndoCache c;
    return c;
}

inline void clear_endo_cache()
{
    auto & c = endo_cache();
    std::lock_guard lock(c.mu);
    c.invariants.clear();
    c.levels.clear();
    c.orders.clear();
}

} // namespace detail

inline CurveInvariants curve_invariants(const FieldElement & j)
{
    FieldElement x = to_minimal_field(j);
    auto key = detail::jkey(x);
    auto & cache = detail::endo_cache();
    {
        std::lock_guard lock(cache.mu);
        auto it = cache.invariants.find(key);
        if (it != cache.invariants.end())
            return it->second;
    }
    CurveInvariants ci;
    ci.fd = frobenius_data(curve_from_j(x));
    ci.supersingular = is_supersingular(ci.fd, x.ctx().characteristic());
    if (!ci.supersingular) {
        auto s = nt::split_discriminant(ci.fd.d_pi);
        ci.d_K = s.fundamental;
        ci.f_pi = s.conductor;
    }
    std::lock_guard lock(cache.mu);
    cache.invariants.emplace(key, ci);
    return ci;
}

inline bool is_supersingular_j(const FieldElement & j) { return curve_invariants(j).supersingular; }

/// Rational roots of Phi_l(j, T) over the field of j, with multiplicity, in canonical order.
inline std::vector<FieldElement> rational_neighbors(const FieldElement & j, int l)
{
    const ModularPolynomial & phi = modular_polynomial(l);
    std::vector<FieldElement> out;
    for (auto & [r, m] : roots_with_multiplicity(phi.specialize(j)))
        for (int i = 0; i < m; ++i)
            out.push_back(r);
    return out;
}

struct NeighborSet {
    FieldCtx field;
    std::vector<FieldElement> roots; // with multiplicity
};

/// All roots of Phi_l(j, T), in the smallest field containing them.
inline NeighborSet isogenous_neighbors(const FieldElement & j, int l)
{
    if (static_cast<u64>(l) == j.ctx().characteristic())
        throw Error(ErrorCode::InvalidArgument, "level equals the characteristic");
    const ModularPolynomial & phi = modular_polynomial(l);
    UniPoly P = phi.specialize(j);
    auto facs = factor_univariate(P);
    int m = 1;
    for (auto & f : facs)
        m = std::lcm(m, f.poly.degree());
    FieldCtx L = make_field(j.ctx().characteristic(), j.ctx().degree() * m);
    NeighborSet out{L, {}};
    for (auto & f : facs) {
        for (auto & r : roots(map_to(f.poly, L)))
            for (int i = 0; i < f.multiplicity; ++i)
                out.roots.push_back(r);
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

/// Level and depth of j in its l-volcano over the field generated by j.
inline VolcanoPosition volcano_level(const FieldElement & j, int l)
{
    FieldElement x = to_minimal_field(j);
    if (static_cast<u64>(l) == x.ctx().characteristic())
        throw Error(ErrorCode::InvalidArgument, "level equals the characteristic");
    if (!is_supported_level(l))
        modular_polynomial(l); // throws UnsupportedLevel
    CurveInvariants ci = curve_invariants(x);
    if (ci.supersingular)
        throw Error(ErrorCode::SupersingularInput, "j = " + x.to_string() + " is supersingular");
    const int depth = nt::valuation(static_cast<u64>(ci.f_pi), static_cast<u64>(l));
    if (depth == 0)
        return {0, 0};
    auto key = std::make_pair(detail::jkey(x), l);
    auto & cache = detail::endo_cache();
    {
        std::lock_guard lock(cache.mu);
        auto it = cache.levels.find(key);
        if (it != cache.levels.end())
            return it->second;
    }
    const std::size_t full = static_cast<std::size_t>(l) + 1;
    auto remember = [&](VolcanoPosition v) {
        std::lock_guard lock(cache.mu);
        cache.levels.emplace(key, v);
        return v;
    };
    std::vector<FieldElement> start = rational_neighbors(x, l);
    if (start.size() < full)
        return remember({depth, depth});
    struct Walk {
        FieldElement prev, cur;
    };
    std::vector<Walk> walks;
    for (std::size_t i = 0; i < start.size() && walks.size() < 3; ++i)
        walks.push_back({x, start[i]});
    for (int step = 1; step <= depth; ++step) {
        std::vector<std::vector<FieldElement>> nbrs;
        for (auto & w : walks) {
            nbrs.push_back(rational_neighbors(w.cur, l));
            if (nbrs.back().size() < full)
                return remember({depth - step, depth});
        }
        for (std::size_t i = 0; i < walks.size(); ++i) {
            auto & nb = nbrs[i];
            auto it = std::find(nb.begin(), nb.end(), walks[i].prev);
            if (it != nb.end())
                nb.erase(it);
            walks[i] = {walks[i].cur, nb.front()};
        }
    }
    throw Error(ErrorCode::ProviderDisagreement, "volcano walk from j = " + x.to_string() + " never reached the floor");
}

/// Provider A: discriminant of End(E_j) from volcano levels.
inline CMOrder endo_discriminant_volcano(const FieldElement & j)
{
    CurveInvariants ci = curve_invariants(j);
    if (ci.supersingular)
        throw Error(ErrorCode::SupersingularInput, "j = " + j.to_string() + " is supersingular");
    i64 f = 1;
    for (auto [l, e] : nt::factor(static_cast<u64>(ci.f_pi))) {
        if (!is_supported_level(static_cast<int>(l)))
            throw Error(ErrorCode::UnsupportedLevel, "conductor of Z[pi] has prime factor " + std::to_string(l) +
                                                         "; add phi_" + std::to_string(l) +
                                                         ".txt to the data directory to support it");
        VolcanoPosition v = volcano_level(j, static_cast<int>(l));
        for (int i = 0; i < v.level; ++i)
            f *= static_cast<i64>(l);
    }
    return make_order(ci.d_K, f);
}

/// Provider B: is j a root of H_D mod p?
inline bool hilbert_confirms(i64 D, const FieldElement & j) { return hilbert_eval(D, j).is_zero(); }

/// Provider B on its own: the unique D = f^2 d_K, f | f_pi, with H_D(j) = 0.
inline CMOrder endo_discriminant_hilbert(const FieldElement & j)
{
    CurveInvariants ci = curve_invariants(j);
    if (ci.supersingular)
        throw Error(ErrorCode::SupersingularInput, "j = " + j.to_string() + " is supersingular");
    std::optional<CMOrder> found;
    for (u64 f : nt::divisors(static_cast<u64>(ci.f_pi))) {
        CMOrder o = make_order(ci.d_K, static_cast<i64>(f));
        if (!hilbert_confirms(o.D, j))
            continue;
        if (found)
            throw Error(ErrorCode::ProviderDisagreement, "j = " + j.to_string() + " is a root of two class polynomials");
        found = o;
    }
    if (!found)
        throw Error(ErrorCode::ProviderDisagreement, "j = " + j.to_string() + " is a root of no admissible H_D");
    return *found;
}

/// Discriminant of End(E_j) over the algebraic closure.
inline CMOrder endo_discriminant(const FieldElement & j)
{
    FieldElement x = to_minimal_field(j);
    auto key = detail::jkey(x);
    auto & cache = detail::endo_cache();
    {
        std::lock_guard lock(cache.mu);
        auto it = cache.orders.find(key);
        if (it != cache.orders.end())
            return it->second;
    }
    CMOrder o = endo_discriminant_volcano(x);
    if (settings().hilbert_provider && !hilbert_confirms(o.D, x))
        throw Error(ErrorCode::ProviderDisagreement,
                    "volcano gives D = " + std::to_string(o.D) + " but j = " + x.to_string() + " is not a root of H_D");
    std::lock_guard lock(cache.mu);
    cache.orders.emplace(key, o);
    return o;
}

/// Both j and j^p have the same endomorphism ring discriminant.
inline bool frobenius_cm_check(const FieldElement & j)
{
    return endo_discriminant(j) == endo_discriminant(frobenius(j));
}

struct PathStep {
    int l;
    FieldElement j;
};

/// Breadth-first search over horizontal isogenies between curves with equal endomorphism ring.
inline std::optional<std::vector<PathStep>> isogeny_path(const FieldElement & j1, const FieldElement & j2,
                                                         const std::vector<int> & levels)
{
    FieldElement a = to_minimal_field(j1), b = to_minimal_field(j2);
    FieldCtx L = common_field(a.ctx(), b.ctx());
    a = embed(a, L);
    b = embed(b, L);
    for (int l : levels) {
        if (static_cast<u64>(l) == L.characteristic())
            throw Error(ErrorCode::InvalidArgument, "level equals the characteristic");
        modular_polynomial(l);
    }
    CMOrder o = endo_discriminant(a);
    if (!(endo_discriminant(b) == o))
        throw Error(ErrorCode::InvalidArgument, "endpoints have different endomorphism rings");
    if (a == b)
        return std::vector<PathStep>{};
    const std::size_t limit = static_cast<std::size_t>(class_number(o.D));
    std::map<u64, std::pair<u64, int>> parent; // index -> (parent index, level)
    std::deque<FieldElement> queue{a};
    parent[a.index()] = {a.index(), 0};
    while (!queue.empty() && parent.size() <= limit) {
        FieldElement v = queue.front();
        queue.pop_front();
        for (int l : levels) {
            for (auto & w : rational_neighbors(v, l)) {
                if (parent.count(w.index()))
                    continue;
                if (is_supersingular_j(w) || !(endo_discriminant(w) == o))
                    continue;
                parent[w.index()] = {v.index(), l};
                if (w == b) {
                    std::vector<PathStep> path;
                    u64 cur = w.index();
                    while (cur != a.index()) {
                        auto [pi, pl] = parent[cur];
                        path.push_back({pl, L.element(cur)});
                        cur = pi;
                    }
                    std::reverse(path.begin(), path.end());
                    return path;
                }
                queue.push_back(w);
            }
        }
    }
    return std::nullopt;
}

struct IsogenyVerdict {
    bool isogenous;
    std::string reason;
    std::optional<std::vector<PathStep>> path;
};

/// Are E_{j1} and E_{j2} isogenous over the algebraic closure?
inline IsogenyVerdict geometrically_isogenous(const FieldElement & j1, const FieldElement & j2)
{
    CurveInvariants c1 = curve_invariants(j1), c2 = curve_invariants(j2);
    if (c1.supersingular && c2.supersingular)
        return {true, "both supersingular", std::nullopt};
    if (c1.supersingular != c2.supersingular)
        return {false, "one supersingular, one ordinary", std::nullopt};
    if (c1.d_K != c2.d_K)
        return {false, "different CM fields", std::nullopt};
    IsogenyVerdict v{true, "same CM field", std::nullopt};
    try {
        CMOrder o1 = endo_discriminant(j1), o2 = endo_discriminant(j2);
        if (o1 == o2) {
            std::vector<int> levels;
            u64 p = j1.ctx().characteristic();
            for (int l : supported_levels())
                if (static_cast<u64>(l) != p && kronecker(o1.D, l) == 1)
                    levels.push_back(l);
            if (!levels.empty())
                v.path = isogeny_path(j1, j2, levels);
        }
    } catch (const Error & e) {
        if (e.code() == ErrorCode::ProviderDisagreement)
            throw;
    }
    return v;
}

} // namespace cmgate
