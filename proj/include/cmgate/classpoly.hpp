#pragma once

#include "modpoly.hpp"
#include "poly.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>

namespace cmgate {

/// Kronecker symbol (a | n).
inline int kronecker(i64 a, i64 n)
{
    if (a == 0 && n == 0)
        throw Error(ErrorCode::BothZero, "kronecker(0, 0) is undefined");
    return nt::kronecker(a, n);
}

inline void require_discriminant(i64 D)
{
    if (!nt::is_discriminant(D))
        throw Error(ErrorCode::NotADiscriminant, std::to_string(D) + " is not a negative integer congruent to 0 or 1 mod 4");
}

struct ReducedForm {
    i64 a, b, c;
    friend bool operator==(const ReducedForm &, const ReducedForm &) = default;
};

/// Reduced primitive forms of discriminant D, ordered by a, then |b|, positive b first.
inline std::vector<ReducedForm> reduced_forms(i64 D)
{
    require_discriminant(D);
    std::vector<ReducedForm> out;
    const i64 amax = static_cast<i64>(nt::isqrt(static_cast<u64>(-D) / 3));
    for (i64 a = 1; a <= amax; ++a) {
        for (i64 ab = 0; ab <= a; ++ab) {
            for (int sgn : {1, -1}) {
                if (ab == 0 && sgn < 0)
                    continue;
                i64 b = sgn * ab;
                i64 num = b * b - D;
                if (num % (4 * a) != 0)
                    continue;
                i64 c = num / (4 * a);
                if (c < a)
                    continue;
                if (b < 0 && (-b == a || a == c))
                    continue;
                if (std::gcd(std::gcd(a, ab), c) != 1)
                    continue;
                out.push_back({a, b, c});
            }
        }
    }
    return out;
}

inline int class_number(i64 D) { return static_cast<int>(reduced_forms(D).size()); }

namespace detail {

using Real = boost::multiprecision::mpfr_float;

struct Complex {
    Real re, im;
};

inline Complex cmul(const Complex & x, const Complex & y)
{
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}

inline Complex cdiv(const Complex & x, const Complex & y)
{
    Real n = y.re * y.re + y.im * y.im;
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}

/// prod_{n >= 1} (1 - x^n) through the pentagonal number series, exponents up to N
inline Complex euler_product(const Complex & x, long N)
{
    Complex sum{Real(1), Real(0)};
    Complex x2 = cmul(x, x), x3 = cmul(x2, x), x4 = cmul(x2, x2);
    Complex a = x, da = x4, b = x2, db = cmul(x4, x);
    for (long k = 1;; ++k) {
        long ea = k * (3 * k - 1) / 2, eb = k * (3 * k + 1) / 2;
        if (ea > N)
            break;
        bool neg = k % 2 == 1;
        if (neg) {
            sum.re -= a.re;
            sum.im -= a.im;
        } else {
            sum.re += a.re;
            sum.im += a.im;
        }
        if (eb <= N) {
            if (neg) {
                sum.re -= b.re;
                sum.im -= b.im;
            } else {
                sum.re += b.re;
                sum.im += b.im;
            }
        }
        a = cmul(a, da);
        da = cmul(da, x3);
        b = cmul(b, db);
        db = cmul(db, x3);
    }
    return sum;
}

/// j((-b + sqrt(D)) / 2a) = (1 + 256 h)^3 / h with h = (eta(2 tau) / eta(tau))^24.
inline Complex j_of_form(const ReducedForm & f, i64 D, long bits)
{
    using boost::multiprecision::cos;
    using boost::multiprecision::exp;
    using boost::multiprecision::sin;
    using boost::multiprecision::sqrt;
    const Real pi = boost::math::constants::pi<Real>();
    Real y = sqrt(Real(-D)) / Real(2 * f.a);
    Real x = Real(-f.b) / Real(2 * f.a);
    Real r = exp(-2 * pi * y);
    Real theta = 2 * pi * x;
    Complex q{r * cos(theta), r * sin(theta)};
    const double bits_per_power = 3.14159265358979 * std::sqrt(static_cast<double>(-D)) / f.a / std::log(2.0);
    const long N = static_cast<long>((bits + 64) / bits_per_power) + 2;
    Complex ratio = cdiv(euler_product(cmul(q, q), N / 2 + 1), euler_product(q, N));
    Complex r2 = cmul(ratio, ratio), r4 = cmul(r2, r2), r8 = cmul(r4, r4);
    Complex h = cmul(q, cmul(cmul(r8, r8), r8));
    Complex u{Real(1) + 256 * h.re, 256 * h.im};
    return cdiv(cmul(cmul(u, u), u), h);
}

inline std::optional<std::vector<BigInt>> hilbert_attempt(i64 D, const std::vector<ReducedForm> & forms, long bits)
{
    Real::default_precision(static_cast<unsigned>(bits * 0.30103) + 20);
    std::vector<Real> poly{Real(1)};
    auto times = [&poly](const std::vector<Real> & g) {
        std::vector<Real> next(poly.size() + g.size() - 1, Real(0));
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (std::size_t k = 0; k < g.size(); ++k)
                next[i + k] += poly[i] * g[k];
        poly = std::move(next);
    };
    for (auto & f : forms) {
        if (f.b < 0)
            continue; // conjugate of the form with b > 0
        Complex j = j_of_form(f, D, bits);
        bool paired = f.b != 0 && f.b != f.a && f.a != f.c;
        if (paired)
            times({j.re * j.re + j.im * j.im, -2 * j.re, Real(1)});
        else
            times({-j.re, Real(1)});
    }
    std::vector<BigInt> out;
    for (auto & c : poly) {
        Real rounded = boost::multiprecision::round(c);
        if (boost::multiprecision::abs(c - rounded) > Real("0.01"))
            return std::nullopt;
        BigInt z;
        mpfr_get_z(z.backend().data(), rounded.backend().data(), MPFR_RNDN);
        out.push_back(z);
    }
    return out;
}

} // namespace detail

/// H_D over the integers, monic, constant term first.
inline const std::vector<BigInt> & hilbert_integer(i64 D)
{
    static std::mutex mu;
    static std::map<i64, std::vector<BigInt>> cache;
    auto forms = reduced_forms(D);
    std::lock_guard lock(mu);
    auto it = cache.find(D);
    if (it != cache.end())
        return it->second;
    double bits = 0;
    for (auto & f : forms)
        bits += 3.14159265358979 * std::sqrt(static_cast<double>(-D)) / static_cast<double>(f.a) / std::log(2.0) + 2;
    long prec = static_cast<long>(bits) + 2 * static_cast<long>(forms.size()) + 128;
    for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
        if (auto r = detail::hilbert_attempt(D, forms, prec))
            return cache.emplace(D, std::move(*r)).first->second;
    }
    throw Error(ErrorCode::InvalidArgument, "class polynomial evaluation did not stabilize for D = " + std::to_string(D));
}

/// H_D reduced into ctx, with no condition on how p behaves in the order.
inline UniPoly hilbert_reduce(i64 D, const FieldCtx & ctx)
{
    std::vector<FieldElement> v;
    for (auto & c : hilbert_integer(D))
        v.push_back(ctx.from_big(c));
    return {ctx, std::move(v)};
}

struct ClassPolynomialModP {
    i64 D;
    FieldCtx ctx;
    UniPoly poly;
};

inline void require_split(i64 D, u64 p)
{
    require_discriminant(D);
    if (static_cast<u64>(-D) % p == 0)
        throw Error(ErrorCode::PDividesD, std::to_string(p) + " divides " + std::to_string(D));
    if (kronecker(D, static_cast<i64>(p)) != 1)
        throw Error(ErrorCode::PInert, std::to_string(p) + " does not split for D = " + std::to_string(D));
}

inline ClassPolynomialModP hilbert_mod_p(i64 D, u64 p)
{
    static std::mutex mu;
    static std::map<std::pair<i64, u64>, ClassPolynomialModP> memo;
    {
        std::lock_guard lock(mu);
        auto it = memo.find({D, p});
        if (it != memo.end())
            return it->second;
    }
    require_discriminant(D);
    FieldCtx ctx = make_field(p, 1);
    require_split(D, p);
    UniPoly h = hilbert_reduce(D, ctx);
    if (h.degree() != class_number(D))
        throw Error(ErrorCode::InvalidArgument, "degree of H_D differs from the class number");
    if (!gcd(h, h.derivative()).is_constant())
        throw Error(ErrorCode::InvalidArgument, "H_D mod p is not squarefree for a split prime");
    ClassPolynomialModP out{D, ctx, h};
    std::lock_guard lock(mu);
    memo.emplace(std::make_pair(D, p), out);
    return out;
}

/// H_D(x) in the field of x.
inline FieldElement hilbert_eval(i64 D, const FieldElement & x)
{
    return hilbert_mod_p(D, x.ctx().characteristic()).poly(x);
}

/// Roots of H_D mod p and the degree of the field they generate.
struct HilbertRoots {
    int degree;
    std::vector<FieldElement> roots;
};

inline HilbertRoots hilbert_roots(const UniPoly & h)
{
    int m = 1;
    for (auto & f : factor_univariate(h))
        m = std::lcm(m, f.poly.degree());
    return {m, roots_in(h, m * h.ctx().degree())};
}

inline i64 find_test_discriminant(i64 l, i64 p, i64 d_min)
{
    if (l == p)
        throw Error(ErrorCode::EqualPrimes, "the two primes must differ");
    if (l < 2 || p < 2 || !nt::is_prime(static_cast<u64>(l)) || !nt::is_prime(static_cast<u64>(p)))
        throw Error(ErrorCode::InvalidArgument, "both arguments must be primes");
    const i64 ceiling = settings().discriminant_search_ceiling;
    for (i64 d = std::max<i64>(d_min + 1, 3); d <= ceiling; ++d) {
        if (d % 4 != 3 || !nt::is_prime(static_cast<u64>(d)))
            continue;
        if (kronecker(-d, l) == -1 && kronecker(-d, p) == 1)
            return -d;
    }
    throw Error(ErrorCode::SearchCeilingExceeded, "no discriminant up to |D| = " + std::to_string(ceiling));
}

/// True iff no two roots of H_D mod p are joined by a cyclic l-isogeny.
inline bool inert_obstruction_check(i64 D, int l, u64 p)
{
    const ModularPolynomial & phi = modular_polynomial(l);
    auto H = hilbert_mod_p(D, p);
    auto rs = hilbert_roots(H.poly);
    for (auto & j1 : rs.roots) {
        UniPoly row = phi.specialize(j1);
        for (auto & j2 : rs.roots)
            if (row(j2).is_zero())
                return false;
    }
    return true;
}

/// Read "D: c0 c1 ..." lines (constant term first; commas allowed).
inline std::map<i64, std::vector<BigInt>> load_hilbert_table(const std::filesystem::path & path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::DataFile, "cannot open " + path.string());
    std::map<i64, std::vector<BigInt>> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto colon = line.find(':');
        if (colon == std::string::npos)
            continue;
        i64 D = std::stoll(line.substr(0, colon));
        std::string rest = line.substr(colon + 1);
        for (auto & ch : rest)
            if (ch == ',')
                ch = ' ';
        std::istringstream ls(rest);
        std::string tok;
        std::vector<BigInt> cs;
        while (ls >> tok)
            cs.emplace_back(tok);
        out[D] = std::move(cs);
    }
    return out;
}

} // namespace cmgate
