#pragma once

#include "ffield.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

namespace cmgate {

/// Univariate polynomial over a FieldCtx, constant term first, no trailing zeros.
class UniPoly {
  public:
    UniPoly() = default;
    explicit UniPoly(FieldCtx ctx) : ctx_(ctx) {}
    UniPoly(FieldCtx ctx, std::vector<FieldElement> c) : ctx_(ctx), c_(std::move(c)) { trim(); }

    static UniPoly from_ints(FieldCtx ctx, const std::vector<i64> & c)
    {
        std::vector<FieldElement> v;
        for (i64 x : c)
            v.push_back(ctx.from_int(x));
        return {ctx, std::move(v)};
    }
    static UniPoly constant(const FieldElement & c) { return {c.ctx(), {c}}; }
    static UniPoly monomial(const FieldElement & c, int n)
    {
        std::vector<FieldElement> v(n + 1, c.ctx().zero());
        v[n] = c;
        return {c.ctx(), std::move(v)};
    }
    static UniPoly variable(FieldCtx ctx) { return monomial(ctx.one(), 1); }

    const FieldCtx & ctx() const { return ctx_; }
    const std::vector<FieldElement> & coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
    FieldElement coeff(int i) const
    {
        return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : ctx_.zero();
    }
    FieldElement leading() const { return c_.empty() ? ctx_.zero() : c_.back(); }

    UniPoly monic() const
    {
        if (c_.empty() || c_.back().is_one())
            return *this;
        FieldElement li = c_.back().inverse();
        std::vector<FieldElement> v;
        v.reserve(c_.size());
        for (auto & x : c_)
            v.push_back(x * li);
        return {ctx_, std::move(v)};
    }

    UniPoly derivative() const
    {
        std::vector<FieldElement> v;
        for (std::size_t i = 1; i < c_.size(); ++i)
            v.push_back(c_[i].scale(static_cast<u64>(i)));
        return {ctx_, std::move(v)};
    }

    /// Evaluation; x may live in any extension of the coefficient field.
    FieldElement operator()(const FieldElement & x) const
    {
        if (x.ctx() == ctx_) {
            FieldElement acc = ctx_.zero();
            for (std::size_t i = c_.size(); i-- > 0;)
                acc = acc * x + c_[i];
            return acc;
        }
        FieldElement acc = x.ctx().zero();
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + embed(c_[i], x.ctx());
        return acc;
    }

    UniPoly operator+(const UniPoly & o) const
    {
        check(o);
        std::vector<FieldElement> v(std::max(c_.size(), o.c_.size()), ctx_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i)
            v[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            v[i] += o.c_[i];
        return {ctx_, std::move(v)};
    }
    UniPoly operator-(const UniPoly & o) const
    {
        check(o);
        std::vector<FieldElement> v(std::max(c_.size(), o.c_.size()), ctx_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i)
            v[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i)
            v[i] -= o.c_[i];
        return {ctx_, std::move(v)};
    }
    UniPoly operator-() const
    {
        std::vector<FieldElement> v;
        for (auto & x : c_)
            v.push_back(-x);
        return {ctx_, std::move(v)};
    }
    UniPoly operator*(const UniPoly & o) const
    {
        check(o);
        if (c_.empty() || o.c_.empty())
            return UniPoly(ctx_);
        std::vector<FieldElement> v(c_.size() + o.c_.size() - 1, ctx_.zero());
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero())
                continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                v[i + j] += c_[i] * o.c_[j];
        }
        return {ctx_, std::move(v)};
    }
    UniPoly operator*(const FieldElement & s) const
    {
        std::vector<FieldElement> v;
        for (auto & x : c_)
            v.push_back(x * s);
        return {ctx_, std::move(v)};
    }
    UniPoly & operator+=(const UniPoly & o) { return *this = *this + o; }
    UniPoly & operator-=(const UniPoly & o) { return *this = *this - o; }
    UniPoly & operator*=(const UniPoly & o) { return *this = *this * o; }

    friend bool operator==(const UniPoly & a, const UniPoly & b) { return a.ctx_ == b.ctx_ && a.c_ == b.c_; }

    /// canonical order: degree, then coefficients from the top down
    friend bool operator<(const UniPoly & a, const UniPoly & b)
    {
        if (a.degree() != b.degree())
            return a.degree() < b.degree();
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (!(a.c_[i] == b.c_[i]))
                return a.c_[i] < b.c_[i];
        return false;
    }

    std::string to_string(const std::string & var = "T") const
    {
        if (c_.empty())
            return "0";
        std::string s;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i].is_zero())
                continue;
            if (!s.empty())
                s += " + ";
            bool unit = c_[i].is_one();
            if (!unit || i == 0)
                s += c_[i].to_string();
            if (i > 0) {
                if (!unit)
                    s += "*";
                s += var;
                if (i > 1)
                    s += "^" + std::to_string(i);
            }
        }
        return s;
    }

  private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }
    void check(const UniPoly & o) const
    {
        if (!(ctx_ == o.ctx_))
            throw Error(ErrorCode::ContextMismatch, "polynomials over different fields");
    }

    FieldCtx ctx_;
    std::vector<FieldElement> c_;
};

inline std::pair<UniPoly, UniPoly> divmod(const UniPoly & a, const UniPoly & b)
{
    if (b.is_zero())
        throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    if (!(a.ctx() == b.ctx()))
        throw Error(ErrorCode::ContextMismatch, "polynomials over different fields");
    int db = b.degree();
    if (a.degree() < db)
        return {UniPoly(a.ctx()), a};
    std::vector<FieldElement> r = a.coeffs();
    std::vector<FieldElement> q(a.degree() - db + 1, a.ctx().zero());
    FieldElement li = b.leading().inverse();
    const auto & bc = b.coeffs();
    for (int i = a.degree(); i >= db; --i) {
        if (r[i].is_zero())
            continue;
        FieldElement c = r[i] * li;
        q[i - db] = c;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] -= c * bc[j];
    }
    r.resize(db);
    return {UniPoly(a.ctx(), std::move(q)), UniPoly(a.ctx(), std::move(r))};
}

inline UniPoly operator%(const UniPoly & a, const UniPoly & b) { return divmod(a, b).second; }
inline UniPoly operator/(const UniPoly & a, const UniPoly & b) { return divmod(a, b).first; }

inline bool divides(const UniPoly & d, const UniPoly & a) { return (a % d).is_zero(); }

/// Monic gcd (zero if both are zero).
inline UniPoly gcd(UniPoly a, UniPoly b)
{
    while (!b.is_zero()) {
        a = a % b;
        std::swap(a, b);
    }
    return a.monic();
}

struct XGcd {
    UniPoly g, s, t; // s*a + t*b = g, g monic
};

inline XGcd xgcd(const UniPoly & a, const UniPoly & b)
{
    FieldCtx ctx = a.ctx();
    UniPoly r0 = a, r1 = b, s0 = UniPoly::constant(ctx.one()), s1(ctx), t0(ctx), t1 = UniPoly::constant(ctx.one());
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    FieldElement li = r0.leading().inverse();
    return {r0 * li, s0 * li, t0 * li};
}

inline UniPoly mulmod(const UniPoly & a, const UniPoly & b, const UniPoly & m) { return (a * b) % m; }

inline UniPoly powmod(UniPoly base, const BigInt & e, const UniPoly & m)
{
    UniPoly r = UniPoly::constant(m.ctx().one()) % m;
    base = base % m;
    if (e == 0)
        return r;
    for (std::size_t i = boost::multiprecision::msb(e) + 1; i-- > 0;) {
        r = mulmod(r, r, m);
        if (boost::multiprecision::bit_test(e, i))
            r = mulmod(r, base, m);
    }
    return r;
}

inline UniPoly powmod(const UniPoly & base, u64 e, const UniPoly & m) { return powmod(base, BigInt(e), m); }

inline UniPoly pow(UniPoly b, u64 e)
{
    UniPoly r = UniPoly::constant(b.ctx().one());
    while (e) {
        if (e & 1)
            r *= b;
        e >>= 1;
        if (e)
            b *= b;
    }
    return r;
}

/// f(g(T))
inline UniPoly compose(const UniPoly & f, const UniPoly & g)
{
    UniPoly acc(f.ctx());
    for (std::size_t i = f.coeffs().size(); i-- > 0;)
        acc = acc * g + UniPoly::constant(f.coeffs()[i]);
    return acc;
}

/// Coefficients embedded into a larger field.
inline UniPoly map_to(const UniPoly & f, const FieldCtx & target)
{
    if (f.ctx() == target)
        return f;
    std::vector<FieldElement> v;
    for (auto & c : f.coeffs())
        v.push_back(embed(c, target));
    return {target, std::move(v)};
}

struct Factor {
    UniPoly poly;
    int multiplicity;
};

namespace detail {

/// p-th root of a polynomial whose derivative vanishes.
inline UniPoly pth_root(const UniPoly & f)
{
    const FieldCtx & ctx = f.ctx();
    const u64 p = ctx.characteristic();
    // inverse Frobenius on the coefficients is x -> x^{p^{k-1}}
    std::vector<FieldElement> v;
    for (std::size_t i = 0; i < f.coeffs().size(); i += p)
        v.push_back(frobenius_power(f.coeffs()[i], static_cast<u64>(ctx.degree() - 1)));
    return {ctx, std::move(v)};
}

inline void squarefree_parts(const UniPoly & f, int scale, std::vector<Factor> & out)
{
    const u64 p = f.ctx().characteristic();
    UniPoly c = gcd(f, f.derivative());
    UniPoly w = f / c;
    int i = 1;
    while (!w.is_constant()) {
        UniPoly y = gcd(w, c);
        UniPoly fac = w / y;
        if (!fac.is_constant())
            out.push_back({fac.monic(), i * scale});
        w = y;
        c = c / y;
        ++i;
    }
    if (!c.is_constant())
        squarefree_parts(pth_root(c.monic()), scale * static_cast<int>(p), out);
}

inline UniPoly random_poly(const FieldCtx & ctx, int deg_below, std::mt19937_64 & rng)
{
    std::vector<FieldElement> v;
    for (int i = 0; i < deg_below; ++i)
        v.push_back(ctx.element(rng() % ctx.order()));
    return {ctx, std::move(v)};
}

inline void equal_degree_split(const UniPoly & g, int d, std::mt19937_64 & rng, std::vector<UniPoly> & out)
{
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    const FieldCtx & ctx = g.ctx();
    BigInt qd = boost::multiprecision::pow(BigInt(ctx.order()), static_cast<unsigned>(d));
    BigInt e = (qd - 1) / 2;
    UniPoly one = UniPoly::constant(ctx.one());
    for (;;) {
        UniPoly a = random_poly(ctx, g.degree(), rng);
        if (a.is_constant())
            continue;
        UniPoly u = gcd(g, a);
        if (u.is_constant()) {
            UniPoly b = powmod(a, e, g) - one;
            u = gcd(g, b);
        }
        if (!u.is_constant() && u.degree() < g.degree()) {
            equal_degree_split(u, d, rng, out);
            equal_degree_split(g / u, d, rng, out);
            return;
        }
    }
}

/// Irreducible factors of a monic squarefree polynomial.
inline std::vector<UniPoly> factor_squarefree(UniPoly s, std::mt19937_64 & rng)
{
    std::vector<UniPoly> out;
    const FieldCtx & ctx = s.ctx();
    UniPoly T = UniPoly::variable(ctx);
    UniPoly h = T % s;
    for (int d = 1; s.degree() >= 2 * d; ++d) {
        h = powmod(h, ctx.order(), s);
        UniPoly g = gcd(h - T, s);
        if (!g.is_constant()) {
            equal_degree_split(g, d, rng, out);
            s = s / g;
            h = h % s;
        }
    }
    if (s.degree() >= 1)
        out.push_back(s.monic());
    return out;
}

inline std::mt19937_64 factor_rng() { return std::mt19937_64(settings().seed); }

} // namespace detail

/// Monic irreducible factors with multiplicities, ordered by degree then coefficients.
inline std::vector<Factor> factor_univariate(const UniPoly & f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
    std::vector<Factor> parts;
    if (f.degree() >= 1)
        detail::squarefree_parts(f.monic(), 1, parts);
    auto rng = detail::factor_rng();
    std::vector<Factor> out;
    for (auto & part : parts)
        for (auto & g : detail::factor_squarefree(part.poly, rng))
            out.push_back({g, part.multiplicity});
    std::sort(out.begin(), out.end(), [](const Factor & a, const Factor & b) { return a.poly < b.poly; });
    std::vector<Factor> merged;
    for (auto & x : out) {
        if (!merged.empty() && merged.back().poly == x.poly)
            merged.back().multiplicity += x.multiplicity;
        else
            merged.push_back(x);
    }
    return merged;
}

/// Distinct roots in the coefficient field, in canonical order.
inline std::vector<FieldElement> roots(const UniPoly & f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has every element as a root");
    std::vector<FieldElement> out;
    if (f.degree() < 1)
        return out;
    const FieldCtx & ctx = f.ctx();
    UniPoly m = f.monic();
    UniPoly T = UniPoly::variable(ctx);
    UniPoly g = gcd(powmod(T, ctx.order(), m) - T, m);
    if (g.degree() < 1)
        return out;
    auto rng = detail::factor_rng();
    std::vector<UniPoly> lin;
    detail::equal_degree_split(g, 1, rng, lin);
    for (auto & l : lin)
        out.push_back(-l.coeff(0));
    std::sort(out.begin(), out.end());
    return out;
}

/// Distinct roots of f lying in F_{p^k}, as elements of that field.
inline std::vector<FieldElement> roots_in(const UniPoly & f, int k)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "zero polynomial has every element as a root");
    const FieldCtx & ctx = f.ctx();
    FieldCtx target;
    if (k % ctx.degree() == 0) {
        target = make_field(ctx.characteristic(), k);
        return roots(map_to(f, target));
    }
    // roots in F_{p^k} also lie in the intersection field
    int g = std::gcd(k, ctx.degree());
    FieldCtx big = make_field(ctx.characteristic(), std::lcm(k, ctx.degree()));
    target = make_field(ctx.characteristic(), k);
    std::vector<FieldElement> out;
    for (auto & r : roots(map_to(f, big)))
        if (minimal_degree(r) <= g && g % minimal_degree(r) == 0)
            out.push_back(embed(restrict_to_subfield(r, minimal_degree(r)), target));
    std::sort(out.begin(), out.end());
    return out;
}

/// Roots in the coefficient field with their multiplicities.
inline std::vector<std::pair<FieldElement, int>> roots_with_multiplicity(const UniPoly & f)
{
    std::vector<std::pair<FieldElement, int>> out;
    for (auto & r : roots(f)) {
        UniPoly lin = UniPoly(f.ctx(), {-r, f.ctx().one()});
        UniPoly g = f;
        int m = 0;
        for (;;) {
            auto [q, rem] = divmod(g, lin);
            if (!rem.is_zero())
                break;
            g = q;
            ++m;
        }
        out.push_back({r, m});
    }
    return out;
}

/// First irreducible factor of f (canonical order) that does not divide g.
inline std::optional<UniPoly> radical_obstruction(const UniPoly & f, const UniPoly & g)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "radical_divides needs a nonzero first argument");
    if (g.is_zero())
        return std::nullopt;
    for (auto & fac : factor_univariate(f))
        if (!divides(fac.poly, g))
            return fac.poly;
    return std::nullopt;
}

/// Every irreducible factor of f divides g.
inline bool radical_divides(const UniPoly & f, const UniPoly & g) { return !radical_obstruction(f, g).has_value(); }

} // namespace cmgate
