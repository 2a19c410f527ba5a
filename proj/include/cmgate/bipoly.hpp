#pragma once

#include "poly.hpp"

#include <bit>
#include <map>
#include <tuple>

namespace cmgate {

/// Sparse bivariate polynomial in X, Y.
class BiPoly {
  public:
    using Key = std::pair<int, int>; // (deg in X, deg in Y)

    BiPoly() = default;
    explicit BiPoly(FieldCtx ctx) : ctx_(ctx) {}

    static BiPoly from_ints(FieldCtx ctx, const std::vector<std::tuple<int, int, i64>> & terms)
    {
        BiPoly f(ctx);
        for (auto [i, j, c] : terms)
            f.add_term(i, j, ctx.from_int(c));
        return f;
    }
    static BiPoly constant(const FieldElement & c)
    {
        BiPoly f(c.ctx());
        f.add_term(0, 0, c);
        return f;
    }
    static BiPoly x(FieldCtx ctx) { return from_ints(ctx, {{1, 0, 1}}); }
    static BiPoly y(FieldCtx ctx) { return from_ints(ctx, {{0, 1, 1}}); }

    void add_term(int i, int j, const FieldElement & c)
    {
        if (!(c.ctx() == ctx_))
            throw Error(ErrorCode::ContextMismatch, "coefficient from a different field");
        if (c.is_zero())
            return;
        auto it = terms_.find({i, j});
        if (it == terms_.end()) {
            terms_.emplace(Key{i, j}, c);
        } else {
            it->second += c;
            if (it->second.is_zero())
                terms_.erase(it);
        }
    }

    const FieldCtx & ctx() const { return ctx_; }
    const std::map<Key, FieldElement> & terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    FieldElement coeff(int i, int j) const
    {
        auto it = terms_.find({i, j});
        return it == terms_.end() ? ctx_.zero() : it->second;
    }
    int deg_x() const
    {
        int d = -1;
        for (auto & [k, c] : terms_)
            d = std::max(d, k.first);
        return d;
    }
    int deg_y() const
    {
        int d = -1;
        for (auto & [k, c] : terms_)
            d = std::max(d, k.second);
        return d;
    }
    int total_degree() const
    {
        int d = -1;
        for (auto & [k, c] : terms_)
            d = std::max(d, k.first + k.second);
        return d;
    }

    BiPoly operator+(const BiPoly & o) const
    {
        BiPoly r = *this;
        for (auto & [k, c] : o.terms_)
            r.add_term(k.first, k.second, c);
        return r;
    }
    BiPoly operator-(const BiPoly & o) const
    {
        BiPoly r = *this;
        for (auto & [k, c] : o.terms_)
            r.add_term(k.first, k.second, -c);
        return r;
    }
    BiPoly operator-() const { return BiPoly(ctx_) - *this; }
    BiPoly operator*(const BiPoly & o) const
    {
        if (!(ctx_ == o.ctx_))
            throw Error(ErrorCode::ContextMismatch, "polynomials over different fields");
        BiPoly r(ctx_);
        for (auto & [k1, c1] : terms_)
            for (auto & [k2, c2] : o.terms_)
                r.add_term(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return r;
    }
    BiPoly operator*(const FieldElement & s) const
    {
        BiPoly r(ctx_);
        for (auto & [k, c] : terms_)
            r.add_term(k.first, k.second, c * s);
        return r;
    }
    friend bool operator==(const BiPoly & a, const BiPoly & b) { return a.ctx_ == b.ctx_ && a.terms_ == b.terms_; }

    BiPoly swap_variables() const
    {
        BiPoly r(ctx_);
        for (auto & [k, c] : terms_)
            r.add_term(k.second, k.first, c);
        return r;
    }

    BiPoly map_to(const FieldCtx & target) const
    {
        BiPoly r(target);
        for (auto & [k, c] : terms_)
            r.add_term(k.first, k.second, embed(c, target));
        return r;
    }

    BiPoly derivative_x() const
    {
        BiPoly r(ctx_);
        for (auto & [k, c] : terms_)
            if (k.first > 0)
                r.add_term(k.first - 1, k.second, c.scale(static_cast<u64>(k.first)));
        return r;
    }
    BiPoly derivative_y() const { return swap_variables().derivative_x().swap_variables(); }

    /// Entry i is the coefficient of X^i, a polynomial in Y.
    std::vector<UniPoly> coefficients_in_x() const
    {
        int dx = deg_x();
        std::vector<std::vector<FieldElement>> rows(std::max(dx + 1, 0));
        for (auto & [k, c] : terms_) {
            auto & row = rows[k.first];
            if (static_cast<int>(row.size()) <= k.second)
                row.resize(k.second + 1, ctx_.zero());
            row[k.second] = c;
        }
        std::vector<UniPoly> out;
        for (auto & row : rows)
            out.emplace_back(ctx_, std::move(row));
        return out;
    }

    /// f(x, T), over the field of x (which must contain the coefficient field).
    UniPoly at_x(const FieldElement & x) const
    {
        const FieldCtx & L = x.ctx();
        std::vector<FieldElement> xp{L.one()};
        std::vector<FieldElement> v(std::max(deg_y() + 1, 0), L.zero());
        for (auto & [k, c] : terms_) {
            while (static_cast<int>(xp.size()) <= k.first)
                xp.push_back(xp.back() * x);
            v[k.second] += embed(c, L) * xp[k.first];
        }
        return {L, std::move(v)};
    }
    /// f(T, y)
    UniPoly at_y(const FieldElement & y) const { return swap_variables().at_x(y); }

    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            auto [i, j] = it->first;
            if (!s.empty())
                s += " + ";
            std::string mono;
            if (i > 0)
                mono += i == 1 ? "X" : "X^" + std::to_string(i);
            if (j > 0) {
                if (!mono.empty())
                    mono += "*";
                mono += j == 1 ? "Y" : "Y^" + std::to_string(j);
            }
            if (mono.empty())
                s += it->second.to_string();
            else if (it->second.is_one())
                s += mono;
            else
                s += it->second.to_string() + "*" + mono;
        }
        return s;
    }

  private:
    FieldCtx ctx_;
    std::map<Key, FieldElement> terms_;
};

/// Res_X(f, g) as a polynomial in Y.
inline UniPoly resultant_y_eliminate(const BiPoly & f, const BiPoly & g)
{
    if (!(f.ctx() == g.ctx()))
        throw Error(ErrorCode::ContextMismatch, "polynomials over different fields");
    const FieldCtx & ctx = f.ctx();
    int m = f.deg_x(), n = g.deg_x();
    if (m <= 0 && n <= 0) {
        if (f.is_zero() || g.is_zero())
            return UniPoly(ctx);
        throw Error(ErrorCode::BothConstantInX, "neither polynomial involves X");
    }
    if (f.is_zero() || g.is_zero())
        return UniPoly(ctx);
    auto a = f.coefficients_in_x(), b = g.coefficients_in_x();
    const int N = m + n;
    std::vector<std::vector<UniPoly>> M(N, std::vector<UniPoly>(N, UniPoly(ctx)));
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i)
            M[r][r + (m - i)] = a[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i)
            M[n + r][r + (n - i)] = b[i];
    bool negate = false;
    UniPoly prev = UniPoly::constant(ctx.one());
    for (int k = 0; k < N - 1; ++k) {
        if (M[k][k].is_zero()) {
            int r = k + 1;
            while (r < N && M[r][k].is_zero())
                ++r;
            if (r == N)
                return UniPoly(ctx);
            std::swap(M[k], M[r]);
            negate = !negate;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j)
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) / prev;
            M[i][k] = UniPoly(ctx);
        }
        prev = M[k][k];
    }
    UniPoly det = M[N - 1][N - 1];
    return negate ? -det : det;
}

/// f(x, y) in the smallest field containing f's field, x and y.
inline FieldElement eval_bi(const BiPoly & f, const FieldElement & x, const FieldElement & y)
{
    FieldCtx L = common_field(common_field(f.ctx(), x.ctx()), y.ctx());
    FieldElement xe = embed(x, L), ye = embed(y, L);
    std::vector<FieldElement> xp{L.one()}, yp{L.one()};
    FieldElement acc = L.zero();
    for (auto & [k, c] : f.terms()) {
        while (static_cast<int>(xp.size()) <= k.first)
            xp.push_back(xp.back() * xe);
        while (static_cast<int>(yp.size()) <= k.second)
            yp.push_back(yp.back() * ye);
        acc += embed(c, L) * xp[k.first] * yp[k.second];
    }
    return acc;
}

namespace detail {

/// Bivariate polynomial as a list of X-polynomials, entry j multiplying Y^j.
using YSeries = std::vector<UniPoly>;

inline YSeries to_yseries(const BiPoly & f)
{
    return f.swap_variables().coefficients_in_x();
}

/// f(X, Y + lambda(X))
inline YSeries substitute_y(const YSeries & f, const UniPoly & lambda)
{
    const FieldCtx & L = lambda.ctx();
    YSeries r{f.back()};
    for (std::size_t j = f.size() - 1; j-- > 0;) {
        YSeries next(r.size() + 1, UniPoly(L));
        for (std::size_t t = 0; t < r.size(); ++t) {
            next[t + 1] += r[t];
            next[t] += r[t] * lambda;
        }
        next[0] += f[j];
        r = std::move(next);
    }
    while (r.size() > 1 && r.back().is_zero())
        r.pop_back();
    return r;
}

inline YSeries series_mul(const YSeries & a, const YSeries & b, std::size_t N)
{
    const FieldCtx & L = a[0].ctx();
    YSeries r(N, UniPoly(L));
    for (std::size_t i = 0; i < a.size() && i < N; ++i)
        for (std::size_t j = 0; j < b.size() && i + j < N; ++j)
            if (!a[i].is_zero() && !b[j].is_zero())
                r[i + j] += a[i] * b[j];
    return r;
}

inline std::pair<YSeries, YSeries> hensel_pair(const YSeries & G, const UniPoly & a, const UniPoly & b, std::size_t N)
{
    const FieldCtx & L = a.ctx();
    XGcd x = xgcd(a, b);
    YSeries A(N, UniPoly(L)), B(N, UniPoly(L));
    A[0] = a;
    B[0] = b;
    for (std::size_t k = 1; k < N; ++k) {
        UniPoly E = k < G.size() ? G[k] : UniPoly(L);
        for (std::size_t i = 0; i <= k; ++i)
            if (!A[i].is_zero() && !B[k - i].is_zero())
                E -= A[i] * B[k - i];
        if (E.is_zero())
            continue;
        UniPoly Ak = (E * x.t) % a;
        UniPoly Bk = (E - Ak * b) / a;
        A[k] = Ak;
        B[k] = Bk;
    }
    return {A, B};
}

inline void hensel_all(const YSeries & G, const std::vector<UniPoly> & facs, std::size_t N, std::vector<YSeries> & out)
{
    if (facs.size() == 1) {
        YSeries g = G;
        g.resize(N, UniPoly(facs[0].ctx()));
        out.push_back(g);
        return;
    }
    std::size_t half = facs.size() / 2;
    std::vector<UniPoly> lo(facs.begin(), facs.begin() + half), hi(facs.begin() + half, facs.end());
    UniPoly a = UniPoly::constant(facs[0].ctx().one()), b = a;
    for (auto & f : lo)
        a *= f;
    for (auto & f : hi)
        b *= f;
    auto [A, B] = hensel_pair(G, a, b, N);
    hensel_all(A, lo, N, out);
    hensel_all(B, hi, N, out);
}

/// X-coefficients of a Y-series, as polynomials in Y.
inline std::vector<UniPoly> transpose(const YSeries & s)
{
    const FieldCtx & L = s[0].ctx();
    int dx = -1;
    for (auto & e : s)
        dx = std::max(dx, e.degree());
    std::vector<std::vector<FieldElement>> rows(dx + 1, std::vector<FieldElement>(s.size(), L.zero()));
    for (std::size_t j = 0; j < s.size(); ++j)
        for (int i = 0; i <= s[j].degree(); ++i)
            rows[i][j] = s[j].coeff(i);
    std::vector<UniPoly> out;
    for (auto & r : rows)
        out.emplace_back(L, std::move(r));
    return out;
}

/// Does the X-monic H divide G in L[Y][X]?
inline bool divides_monic_in_x(const std::vector<UniPoly> & H, std::vector<UniPoly> G)
{
    int dh = static_cast<int>(H.size()) - 1;
    for (int i = static_cast<int>(G.size()) - 1; i >= dh; --i) {
        UniPoly c = G[i];
        if (c.is_zero())
            continue;
        for (int j = 0; j <= dh; ++j)
            G[i - dh + j] -= c * H[j];
    }
    for (int i = 0; i < dh && i < static_cast<int>(G.size()); ++i)
        if (!G[i].is_zero())
            return false;
    return true;
}

inline u64 radical(u64 n)
{
    u64 r = 1;
    for (auto [pr, e] : nt::factor(n))
        r *= pr;
    return r;
}

} // namespace detail

/// Irreducibility over the algebraic closure of the coefficient field.
inline bool is_absolutely_irreducible(const BiPoly & f0)
{
    const int d = f0.total_degree();
    if (d <= 0)
        throw Error(ErrorCode::ConstantPolynomial, "constant polynomial");
    BiPoly f = f0.deg_x() <= 0 ? f0.swap_variables() : f0;
    if (f.deg_y() <= 0)
        return f.deg_x() == 1;
    for (int pass = 0; pass < 2; ++pass) {
        if (f.deg_x() == 1) {
            auto c = f.coefficients_in_x();
            return gcd(c[0], c[1]).is_constant();
        }
        f = f.swap_variables();
    }

    // a non-absolutely-irreducible f splits into r conjugates with r | d, already over F_{q^s} for each prime s | r
    const FieldCtx & K = f.ctx();
    const u64 need = 4 * static_cast<u64>(d) * d + 16;
    u64 e = detail::radical(static_cast<u64>(d));
    u64 t = 1;
    while (true) {
        auto sz = nt::checked_pow(K.order(), e * t);
        if (!sz)
            throw Error(ErrorCode::SizeExceeded, "absolute irreducibility test needs too large a field");
        if (*sz >= need)
            break;
        ++t;
    }
    FieldCtx L = make_field(K.characteristic(), K.degree() * static_cast<int>(e * t));
    BiPoly F = f.map_to(L);
    detail::YSeries base = detail::to_yseries(F);

    // top homogeneous part evaluated at (1, c)
    auto top_at = [&](const FieldElement & c) {
        FieldElement acc = L.zero();
        for (auto & [k, v] : F.terms())
            if (k.first + k.second == d)
                acc += v * c.pow(static_cast<u64>(k.second));
        return acc;
    };

    const u64 scan = std::min<u64>(L.order(), need);
    int good_shears = 0;
    for (u64 ci = 0; ci < L.order() && good_shears < d + 2; ++ci) {
        FieldElement c = L.element(ci);
        FieldElement lead = top_at(c);
        if (lead.is_zero())
            continue;
        ++good_shears;
        detail::YSeries g = detail::substitute_y(base, UniPoly(L, {L.zero(), c}));
        FieldElement li = lead.inverse();
        for (auto & e2 : g)
            e2 = e2 * li;
        for (u64 yi = 0; yi < scan; ++yi) {
            FieldElement y0 = L.element(yi);
            UniPoly g0(L);
            FieldElement yp = L.one();
            for (auto & e2 : g) {
                g0 += e2 * yp;
                yp *= y0;
            }
            if (g0.degree() != d || !gcd(g0, g0.derivative()).is_constant())
                continue;
            detail::YSeries G = detail::substitute_y(g, UniPoly::constant(y0));
            std::vector<UniPoly> facs;
            for (auto & fac : factor_univariate(G[0]))
                facs.push_back(fac.poly);
            if (facs.size() == 1)
                return true;
            const std::size_t N = G.size();
            std::vector<detail::YSeries> lifted;
            detail::hensel_all(G, facs, N, lifted);
            auto Gx = detail::transpose(G);
            const std::size_t r = lifted.size();
            for (u64 mask = 1; mask < (u64{1} << r) - 1; ++mask) {
                if (std::popcount(mask) * 2 > static_cast<int>(r))
                    continue;
                detail::YSeries H{UniPoly::constant(L.one())};
                for (std::size_t i = 0; i < r; ++i)
                    if (mask >> i & 1)
                        H = detail::series_mul(H, lifted[i], N);
                while (H.size() > 1 && H.back().is_zero())
                    H.pop_back();
                if (detail::divides_monic_in_x(detail::transpose(H), Gx))
                    return false;
            }
            return true;
        }
    }
    // no separable specialization: f has a repeated factor
    return false;
}

} // namespace cmgate
