#pragma once

#include "config.hpp"
#include "error.hpp"
#include "numtheory.hpp"

#include <boost/container/small_vector.hpp>

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ranges>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cmgate {

using Coeffs = boost::container::small_vector<u64, 8>;

/// Dense polynomials over F_p as coefficient vectors, constant term first.
namespace fp {

using Poly = std::vector<u64>;

inline void trim(Poly & a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline int deg(const Poly & a) { return static_cast<int>(a.size()) - 1; }

inline Poly sub(Poly a, const Poly & b, u64 p)
{
    if (a.size() < b.size())
        a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        a[i] = (a[i] + p - b[i]) % p;
    trim(a);
    return a;
}

inline Poly mul(const Poly & a, const Poly & b, u64 p)
{
    if (a.empty() || b.empty())
        return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + nt::mul_mod(a[i], b[j], p)) % p;
    }
    trim(r);
    return r;
}

inline u64 inv(u64 a, u64 p) { return nt::pow_mod(a, p - 2, p); }

/// Quotient and remainder of a by nonzero b.
inline std::pair<Poly, Poly> divmod(Poly a, const Poly & b, u64 p)
{
    trim(a);
    int db = deg(b);
    if (deg(a) < db)
        return {{}, a};
    Poly q(a.size() - b.size() + 1, 0);
    u64 li = inv(b.back(), p);
    for (int i = deg(a); i >= db; --i) {
        u64 c = nt::mul_mod(a[i], li, p);
        q[i - db] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            a[i - db + j] = (a[i - db + j] + p - nt::mul_mod(c, b[j], p)) % p;
    }
    a.resize(db);
    trim(a);
    trim(q);
    return {q, a};
}

inline Poly rem(const Poly & a, const Poly & b, u64 p) { return divmod(a, b, p).second; }

inline Poly monic(Poly a, u64 p)
{
    if (a.empty())
        return a;
    u64 li = inv(a.back(), p);
    for (auto & c : a)
        c = nt::mul_mod(c, li, p);
    return a;
}

inline Poly gcd(Poly a, Poly b, u64 p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        a = rem(a, b, p);
        std::swap(a, b);
    }
    return monic(a, p);
}

/// Inverse of a modulo m (gcd must be 1); nullopt otherwise.
inline std::optional<Poly> inverse_mod(const Poly & a, const Poly & m, u64 p)
{
    Poly r0 = m, r1 = a, s0{}, s1{1};
    trim(r1);
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1, p);
        Poly s2 = sub(s0, mul(q, s1, p), p);
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r0.size() != 1)
        return std::nullopt;
    u64 li = inv(r0[0], p);
    for (auto & c : s0)
        c = nt::mul_mod(c, li, p);
    return s0;
}

inline Poly powmod(Poly b, u64 e, const Poly & m, u64 p)
{
    Poly r{1};
    r = rem(r, m, p);
    b = rem(b, m, p);
    while (e) {
        if (e & 1)
            r = rem(mul(r, b, p), m, p);
        b = rem(mul(b, b, p), m, p);
        e >>= 1;
    }
    return r;
}

/// Rabin's test for a monic polynomial of degree >= 1.
inline bool is_irreducible(const Poly & f, u64 p)
{
    int k = deg(f);
    if (k <= 0)
        return false;
    if (k == 1)
        return true;
    std::vector<Poly> frob(k + 1);
    frob[0] = Poly{0, 1};
    for (int i = 1; i <= k; ++i)
        frob[i] = powmod(frob[i - 1], p, f, p);
    if (frob[k] != Poly{0, 1})
        return false;
    for (auto [r, e] : nt::factor(static_cast<u64>(k))) {
        Poly h = sub(frob[k / r], Poly{0, 1}, p);
        if (gcd(f, h, p).size() != 1)
            return false;
    }
    return true;
}

} // namespace fp

class FieldCtx;
class FieldElement;

namespace detail {

struct FieldData {
    u64 p = 0;
    int k = 0;
    u64 q = 0;
    fp::Poly modulus;
    std::vector<u64> neg_modulus;

    mutable std::once_flag frob_once;
    mutable std::vector<Coeffs> frob_images;
    mutable std::once_flag order_once;
    mutable std::map<u64, int> group_order_factors;
    mutable std::once_flag square_once;
    mutable std::vector<char> square_table;
    mutable std::once_flag nonresidue_once;
    mutable Coeffs nonresidue;
    mutable std::once_flag primitive_once;
    mutable Coeffs primitive;
    mutable std::once_flag gamma_once;
    mutable Coeffs gamma;
    mutable fp::Poly gamma_minpoly;
    mutable std::mutex embed_mutex;
    mutable std::map<int, std::vector<Coeffs>> embed_images;
};

} // namespace detail

FieldCtx make_field(u64 p, int k);

/// Handle to the canonical model of F_{p^k}. Cheap to copy; equality is identity.
class FieldCtx {
  public:
    FieldCtx() = default;
    explicit FieldCtx(const detail::FieldData * d) : d_(d) {}

    bool valid() const { return d_ != nullptr; }
    u64 characteristic() const { return d_->p; }
    int degree() const { return d_->k; }
    u64 order() const { return d_->q; }
    /// monic, constant term first; the prime field uses the trivial modulus T
    const fp::Poly & modulus() const { return d_->modulus; }
    bool is_prime_field() const { return d_->k == 1; }
    const detail::FieldData * data() const { return d_; }

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_int(i64 v) const;
    FieldElement from_big(const BigInt & v) const;
    FieldElement element(u64 index) const;
    FieldElement from_coeffs(std::span<const u64> c) const;
    /// the class of T (zero in the prime field)
    FieldElement generator() const;

    friend bool operator==(const FieldCtx & a, const FieldCtx & b) { return a.d_ == b.d_; }

  private:
    const detail::FieldData * d_ = nullptr;
};

class FieldElement {
  public:
    FieldElement() = default;
    FieldElement(FieldCtx ctx, Coeffs c) : ctx_(ctx), c_(std::move(c)) {}

    const FieldCtx & ctx() const { return ctx_; }
    std::span<const u64> coeffs() const { return {c_.data(), c_.size()}; }
    u64 coeff(int i) const { return c_[i]; }

    bool is_zero() const
    {
        for (u64 v : c_)
            if (v)
                return false;
        return true;
    }
    bool is_one() const
    {
        if (c_.empty() || c_[0] != 1)
            return false;
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i])
                return false;
        return true;
    }
    /// position in the canonical enumeration: sum c_i p^i
    u64 index() const
    {
        u64 r = 0;
        for (std::size_t i = c_.size(); i-- > 0;)
            r = r * ctx_.characteristic() + c_[i];
        return r;
    }
    /// true iff the element lies in the prime field
    bool in_prime_field() const
    {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i])
                return false;
        return true;
    }

    FieldElement operator+(const FieldElement & o) const
    {
        check(o);
        Coeffs r(c_.size());
        u64 p = ctx_.characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i) {
            u64 s = c_[i] + o.c_[i];
            r[i] = s >= p ? s - p : s;
        }
        return {ctx_, std::move(r)};
    }
    FieldElement operator-(const FieldElement & o) const
    {
        check(o);
        Coeffs r(c_.size());
        u64 p = ctx_.characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i)
            r[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p - o.c_[i];
        return {ctx_, std::move(r)};
    }
    FieldElement operator-() const
    {
        Coeffs r(c_.size());
        u64 p = ctx_.characteristic();
        for (std::size_t i = 0; i < c_.size(); ++i)
            r[i] = c_[i] ? p - c_[i] : 0;
        return {ctx_, std::move(r)};
    }
    FieldElement operator*(const FieldElement & o) const
    {
        check(o);
        return {ctx_, mul_raw(*ctx_.data(), c_, o.c_)};
    }
    FieldElement operator/(const FieldElement & o) const { return *this * o.inverse(); }
    FieldElement & operator+=(const FieldElement & o) { return *this = *this + o; }
    FieldElement & operator-=(const FieldElement & o) { return *this = *this - o; }
    FieldElement & operator*=(const FieldElement & o) { return *this = *this * o; }
    FieldElement & operator/=(const FieldElement & o) { return *this = *this / o; }

    FieldElement scale(u64 s) const
    {
        u64 p = ctx_.characteristic();
        s %= p;
        Coeffs r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i)
            r[i] = nt::mul_mod(c_[i], s, p);
        return {ctx_, std::move(r)};
    }

    FieldElement inverse() const
    {
        if (is_zero())
            throw Error(ErrorCode::DivisionByZero, "inverse of zero");
        const auto & d = *ctx_.data();
        if (d.k == 1)
            return {ctx_, Coeffs{fp::inv(c_[0], d.p)}};
        fp::Poly a(c_.begin(), c_.end());
        auto r = fp::inverse_mod(a, d.modulus, d.p);
        Coeffs out(d.k, 0);
        for (std::size_t i = 0; i < r->size(); ++i)
            out[i] = (*r)[i];
        return {ctx_, std::move(out)};
    }

    FieldElement pow(u64 e) const
    {
        FieldElement r = ctx_.one(), b = *this;
        while (e) {
            if (e & 1)
                r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    FieldElement pow(const BigInt & e) const
    {
        if (e < 0)
            return inverse().pow(BigInt(-e));
        FieldElement r = ctx_.one();
        if (e == 0)
            return r;
        for (std::size_t i = boost::multiprecision::msb(e) + 1; i-- > 0;) {
            r *= r;
            if (boost::multiprecision::bit_test(e, i))
                r *= *this;
        }
        return r;
    }

    friend bool operator==(const FieldElement & a, const FieldElement & b)
    {
        return a.ctx_ == b.ctx_ && a.c_ == b.c_;
    }
    /// canonical enumeration order
    friend bool operator<(const FieldElement & a, const FieldElement & b)
    {
        a.check(b);
        for (std::size_t i = a.c_.size(); i-- > 0;)
            if (a.c_[i] != b.c_[i])
                return a.c_[i] < b.c_[i];
        return false;
    }

    std::string to_string() const
    {
        if (c_.size() == 1)
            return std::to_string(c_[0]);
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(c_[i]);
        }
        return s + ")";
    }

    static Coeffs mul_raw(const detail::FieldData & d, const Coeffs & a, const Coeffs & b)
    {
        const u64 p = d.p;
        const int k = d.k;
        if (k == 1)
            return Coeffs{nt::mul_mod(a[0], b[0], p)};
        boost::container::small_vector<u64, 16> t(2 * k - 1, 0);
        for (int i = 0; i < k; ++i) {
            if (!a[i])
                continue;
            for (int j = 0; j < k; ++j)
                t[i + j] += a[i] * b[j];
        }
        for (auto & v : t)
            v %= p;
        for (int i = 2 * k - 2; i >= k; --i) {
            u64 c = t[i];
            if (!c)
                continue;
            for (int j = 0; j < k; ++j)
                t[i - k + j] = (t[i - k + j] + c * d.neg_modulus[j]) % p;
        }
        return Coeffs(t.begin(), t.begin() + k);
    }

  private:
    void check(const FieldElement & o) const
    {
        if (!(ctx_ == o.ctx_))
            throw Error(ErrorCode::ContextMismatch, "operands live in different fields");
    }

    FieldCtx ctx_;
    Coeffs c_;
};

inline FieldElement FieldCtx::zero() const { return {*this, Coeffs(d_->k, 0)}; }
inline FieldElement FieldCtx::one() const
{
    Coeffs c(d_->k, 0);
    c[0] = 1;
    return {*this, std::move(c)};
}
inline FieldElement FieldCtx::from_int(i64 v) const
{
    Coeffs c(d_->k, 0);
    c[0] = nt::mod(v, d_->p);
    return {*this, std::move(c)};
}
inline FieldElement FieldCtx::from_big(const BigInt & v) const
{
    Coeffs c(d_->k, 0);
    c[0] = nt::mod(v, d_->p);
    return {*this, std::move(c)};
}
inline FieldElement FieldCtx::element(u64 index) const
{
    Coeffs c(d_->k, 0);
    for (int i = 0; i < d_->k; ++i) {
        c[i] = index % d_->p;
        index /= d_->p;
    }
    return {*this, std::move(c)};
}
inline FieldElement FieldCtx::from_coeffs(std::span<const u64> v) const
{
    Coeffs c(d_->k, 0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i < c.size())
            c[i] = (c[i] + v[i]) % d_->p;
        else if (v[i] % d_->p)
            throw Error(ErrorCode::InvalidArgument, "too many coefficients for field degree");
    }
    return {*this, std::move(c)};
}
inline FieldElement FieldCtx::generator() const
{
    if (d_->k == 1)
        return zero();
    Coeffs c(d_->k, 0);
    c[1] = 1;
    return {*this, std::move(c)};
}

namespace detail {

inline std::mutex & registry_mutex()
{
    static std::mutex m;
    return m;
}

inline std::map<std::pair<u64, int>, std::unique_ptr<FieldData>> & registry()
{
    static std::map<std::pair<u64, int>, std::unique_ptr<FieldData>> r;
    return r;
}

inline fp::Poly smallest_irreducible(u64 p, int k)
{
    if (k == 1)
        return {0, 1};
    u64 count = *nt::checked_pow(p, k);
    for (u64 idx = 1; idx < count; ++idx) {
        if (idx % p == 0)
            continue; // zero constant term
        fp::Poly f(k + 1, 0);
        u64 v = idx;
        for (int i = 0; i < k; ++i) {
            f[i] = v % p;
            v /= p;
        }
        f[k] = 1;
        if (fp::is_irreducible(f, p))
            return f;
    }
    throw Error(ErrorCode::InvalidArgument, "no irreducible polynomial found");
}

} // namespace detail

/// Canonical context for F_{p^k}; repeated calls return the same context.
inline FieldCtx make_field(u64 p, int k)
{
    if (k < 1)
        throw Error(ErrorCode::InvalidArgument, "extension degree must be positive");
    if (!nt::is_prime(p))
        throw Error(ErrorCode::CompositeP, std::to_string(p) + " is not prime");
    if (p < 5)
        throw Error(ErrorCode::CharTooSmall, "characteristic must be at least 5");
    auto q = nt::checked_pow(p, static_cast<u64>(k), settings().field_bound);
    if (!q)
        throw Error(ErrorCode::SizeExceeded,
                    std::to_string(p) + "^" + std::to_string(k) + " exceeds the field size bound");
    std::lock_guard lock(detail::registry_mutex());
    auto & slot = detail::registry()[{p, k}];
    if (!slot) {
        auto d = std::make_unique<detail::FieldData>();
        d->p = p;
        d->k = k;
        d->q = *q;
        d->modulus = detail::smallest_irreducible(p, k);
        d->neg_modulus.resize(k);
        for (int i = 0; i < k; ++i)
            d->neg_modulus[i] = (p - d->modulus[i]) % p;
        slot = std::move(d);
    }
    return FieldCtx(slot.get());
}

/// The elements of ctx in canonical order.
inline auto enumerate_elements(FieldCtx ctx)
{
    if (ctx.order() > settings().enumeration_bound)
        throw Error(ErrorCode::SizeExceeded,
                    "field of order " + std::to_string(ctx.order()) + " exceeds the enumeration bound");
    return std::views::iota(u64{0}, ctx.order()) |
           std::views::transform([ctx](u64 i) { return ctx.element(i); });
}

/// x -> x^p
inline FieldElement frobenius(const FieldElement & x)
{
    const auto & d = *x.ctx().data();
    if (d.k == 1)
        return x;
    std::call_once(d.frob_once, [&d] {
        FieldCtx c(&d);
        FieldElement gp = c.generator().pow(d.p);
        FieldElement cur = c.one();
        d.frob_images.resize(d.k);
        for (int i = 0; i < d.k; ++i) {
            auto s = cur.coeffs();
            d.frob_images[i] = Coeffs(s.begin(), s.end());
            cur *= gp;
        }
    });
    Coeffs r(d.k, 0);
    for (int i = 0; i < d.k; ++i) {
        u64 c = x.coeff(i);
        if (!c)
            continue;
        for (int j = 0; j < d.k; ++j)
            r[j] = (r[j] + c * d.frob_images[i][j]) % d.p;
    }
    return {x.ctx(), std::move(r)};
}

inline FieldElement frobenius_power(FieldElement x, u64 n)
{
    n %= static_cast<u64>(x.ctx().degree());
    for (u64 i = 0; i < n; ++i)
        x = frobenius(x);
    return x;
}

inline const std::map<u64, int> & group_order_factors(const FieldCtx & ctx)
{
    const auto & d = *ctx.data();
    std::call_once(d.order_once, [&d] { d.group_order_factors = nt::factor(d.q - 1); });
    return d.group_order_factors;
}

inline u64 multiplicative_order(const FieldElement & x)
{
    if (x.is_zero())
        throw Error(ErrorCode::ZeroElement, "zero has no multiplicative order");
    u64 ord = x.ctx().order() - 1;
    for (auto [r, e] : group_order_factors(x.ctx())) {
        for (int i = 0; i < e; ++i) {
            if (x.pow(ord / r).is_one())
                ord /= r;
            else
                break;
        }
    }
    return ord;
}

inline bool is_primitive(const FieldElement & x)
{
    if (x.is_zero())
        return false;
    u64 n = x.ctx().order() - 1;
    for (auto [r, e] : group_order_factors(x.ctx()))
        if (x.pow(n / r).is_one())
            return false;
    return true;
}

/// Smallest primitive element in canonical order.
inline FieldElement primitive_element(const FieldCtx & ctx)
{
    const auto & d = *ctx.data();
    std::call_once(d.primitive_once, [&d, ctx] {
        for (u64 i = 1;; ++i) {
            FieldElement x = ctx.element(i);
            if (is_primitive(x)) {
                auto s = x.coeffs();
                d.primitive = Coeffs(s.begin(), s.end());
                return;
            }
        }
    });
    return {ctx, d.primitive};
}

inline bool is_square(const FieldElement & x)
{
    if (x.is_zero())
        return true;
    return x.pow((x.ctx().order() - 1) / 2).is_one();
}

/// Lookup table indexed by element index: 1 iff the element is a square.
inline const std::vector<char> & square_table(const FieldCtx & ctx)
{
    const auto & d = *ctx.data();
    std::call_once(d.square_once, [&d, ctx] {
        if (d.q > settings().enumeration_bound)
            throw Error(ErrorCode::SizeExceeded, "square table beyond enumeration bound");
        d.square_table.assign(d.q, 0);
        for (u64 i = 0; i < d.q; ++i) {
            FieldElement x = ctx.element(i);
            d.square_table[(x * x).index()] = 1;
        }
    });
    return d.square_table;
}

/// A square root of x (Tonelli-Shanks), or nullopt for non-squares.
inline std::optional<FieldElement> sqrt(const FieldElement & x)
{
    if (x.is_zero())
        return x;
    if (!is_square(x))
        return std::nullopt;
    const FieldCtx & ctx = x.ctx();
    const auto & d = *ctx.data();
    std::call_once(d.nonresidue_once, [&d, ctx] {
        for (u64 i = 2;; ++i) {
            FieldElement z = ctx.element(i);
            if (!is_square(z)) {
                auto s = z.coeffs();
                d.nonresidue = Coeffs(s.begin(), s.end());
                return;
            }
        }
    });
    u64 Q = d.q - 1;
    int s = 0;
    while ((Q & 1) == 0) {
        Q >>= 1;
        ++s;
    }
    FieldElement z(ctx, d.nonresidue);
    FieldElement c = z.pow(Q);
    FieldElement r = x.pow((Q + 1) / 2);
    FieldElement t = x.pow(Q);
    int m = s;
    while (!t.is_one()) {
        int i = 0;
        FieldElement t2 = t;
        while (!t2.is_one()) {
            t2 *= t2;
            ++i;
        }
        FieldElement b = c;
        for (int j = 0; j < m - i - 1; ++j)
            b *= b;
        r *= b;
        c = b * b;
        t *= c;
        m = i;
    }
    return r;
}

namespace detail {

/// Solve M y = rhs over F_p; M given by columns, each of length rows.
inline std::optional<std::vector<u64>> solve_columns(const std::vector<Coeffs> & cols,
                                                     std::span<const u64> rhs, u64 p)
{
    const std::size_t rows = rhs.size(), n = cols.size();
    std::vector<std::vector<u64>> a(rows, std::vector<u64>(n + 1));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            a[r][c] = cols[c][r];
        a[r][n] = rhs[r];
    }
    std::vector<int> pivot_row(n, -1);
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < rows; ++c) {
        std::size_t sel = row;
        while (sel < rows && a[sel][c] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(a[sel], a[row]);
        u64 iv = fp::inv(a[row][c], p);
        for (auto & v : a[row])
            v = nt::mul_mod(v, iv, p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == row || a[r][c] == 0)
                continue;
            u64 f = a[r][c];
            for (std::size_t j = 0; j <= n; ++j)
                a[r][j] = (a[r][j] + p - nt::mul_mod(f, a[row][j], p)) % p;
        }
        pivot_row[c] = static_cast<int>(row++);
    }
    for (std::size_t r = row; r < rows; ++r)
        if (a[r][n])
            return std::nullopt;
    std::vector<u64> y(n, 0);
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_row[c] >= 0)
            y[c] = a[pivot_row[c]][n];
    return y;
}

inline std::vector<int> maximal_proper_divisors(int n)
{
    std::vector<int> out;
    for (auto [r, e] : nt::factor(static_cast<u64>(n)))
        out.push_back(n / static_cast<int>(r));
    return out;
}

inline u64 eval_fp_poly_index(const fp::Poly & f, const FieldElement & x)
{
    FieldElement acc = x.ctx().zero();
    for (std::size_t i = f.size(); i-- > 0;)
        acc = acc * x + x.ctx().from_int(static_cast<i64>(f[i]));
    return acc.index();
}

struct Gamma {
    FieldElement value;
    const fp::Poly * minpoly;
};

inline Gamma compatible_generator(const FieldCtx & ctx);

inline fp::Poly minimal_polynomial_fp(const FieldElement & x)
{
    // product of (T - x^{p^i}) over the distinct conjugates
    std::vector<FieldElement> poly{x.ctx().one()};
    FieldElement c = x;
    do {
        std::vector<FieldElement> next(poly.size() + 1, x.ctx().zero());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= poly[i] * c;
        }
        poly = std::move(next);
        c = frobenius(c);
    } while (!(c == x));
    fp::Poly out;
    for (auto & e : poly)
        out.push_back(e.coeff(0));
    return out;
}

inline Gamma compatible_generator(const FieldCtx & ctx)
{
    const auto & d = *ctx.data();
    std::call_once(d.gamma_once, [&d, ctx] {
        std::vector<std::pair<u64, Gamma>> constraints; // exponent, sub-generator
        for (int m : maximal_proper_divisors(d.k)) {
            FieldCtx sub = make_field(d.p, m);
            u64 e = (d.q - 1) / (sub.order() - 1);
            constraints.push_back({e, compatible_generator(sub)});
        }
        for (u64 i = 1; i < d.q; ++i) {
            FieldElement x = ctx.element(i);
            bool ok = true;
            for (auto & [e, g] : constraints) {
                if (eval_fp_poly_index(*g.minpoly, x.pow(e)) != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok && is_primitive(x)) {
                auto s = x.coeffs();
                d.gamma = Coeffs(s.begin(), s.end());
                d.gamma_minpoly = minimal_polynomial_fp(x);
                return;
            }
        }
        throw Error(ErrorCode::InvalidArgument, "no compatible generator found");
    });
    return {FieldElement(ctx, d.gamma), &d.gamma_minpoly};
}

/// Images in `target` of the power basis 1, g, ..., g^{m-1} of F_{p^m}.
inline const std::vector<Coeffs> & embedding_images(int m, const FieldCtx & target)
{
    const auto & d = *target.data();
    {
        std::lock_guard lock(d.embed_mutex);
        auto it = d.embed_images.find(m);
        if (it != d.embed_images.end())
            return it->second;
    }
    std::vector<Coeffs> images;
    auto push = [&images](const FieldElement & e) {
        auto s = e.coeffs();
        images.emplace_back(s.begin(), s.end());
    };
    if (m == 1) {
        push(target.one());
    } else if (m == d.k) {
        FieldElement cur = target.one();
        for (int i = 0; i < m; ++i) {
            push(cur);
            cur *= target.generator();
        }
    } else {
        FieldCtx src = make_field(d.p, m);
        Gamma gs = compatible_generator(src);
        Gamma gt = compatible_generator(target);
        FieldElement image_gamma = gt.value.pow((d.q - 1) / (src.order() - 1));
        // express the source generator in the basis of powers of its gamma
        std::vector<Coeffs> cols;
        FieldElement cur = src.one();
        for (int i = 0; i < m; ++i) {
            auto s = cur.coeffs();
            cols.emplace_back(s.begin(), s.end());
            cur *= gs.value;
        }
        auto h = solve_columns(cols, src.generator().coeffs(), d.p);
        FieldElement g_image = target.zero();
        FieldElement pw = target.one();
        for (int i = 0; i < m; ++i) {
            g_image += pw.scale((*h)[i]);
            pw *= image_gamma;
        }
        FieldElement c = target.one();
        for (int i = 0; i < m; ++i) {
            push(c);
            c *= g_image;
        }
    }
    std::lock_guard lock(d.embed_mutex);
    return d.embed_images.emplace(m, std::move(images)).first->second;
}

} // namespace detail

/// Canonical embedding of x into a field containing its field.
inline FieldElement embed(const FieldElement & x, const FieldCtx & target)
{
    const FieldCtx & src = x.ctx();
    if (src == target)
        return x;
    if (src.characteristic() != target.characteristic() || target.degree() % src.degree() != 0)
        throw Error(ErrorCode::NotASubfield, "F_" + std::to_string(src.order()) + " is not a subfield of F_" +
                                                 std::to_string(target.order()));
    const auto & images = detail::embedding_images(src.degree(), target);
    const u64 p = target.characteristic();
    Coeffs r(target.degree(), 0);
    for (int i = 0; i < src.degree(); ++i) {
        u64 c = x.coeff(i);
        if (!c)
            continue;
        for (int j = 0; j < target.degree(); ++j)
            r[j] = (r[j] + c * images[i][j]) % p;
    }
    return {target, std::move(r)};
}

/// Smallest d with x in F_{p^d}.
inline int minimal_degree(const FieldElement & x)
{
    int k = x.ctx().degree();
    for (u64 d : nt::divisors(static_cast<u64>(k))) {
        if (frobenius_power(x, d) == x)
            return static_cast<int>(d);
    }
    return k;
}

/// The element of the canonical F_{p^d} whose embedding is x.
inline FieldElement restrict_to_subfield(const FieldElement & x, int d)
{
    const FieldCtx & ctx = x.ctx();
    if (d == ctx.degree())
        return x;
    if (d < 1 || ctx.degree() % d != 0)
        throw Error(ErrorCode::NotASubfield, "degree does not divide");
    FieldCtx sub = make_field(ctx.characteristic(), d);
    const auto & images = detail::embedding_images(d, ctx);
    auto y = detail::solve_columns(images, x.coeffs(), ctx.characteristic());
    if (!y)
        throw Error(ErrorCode::NotASubfield, "element does not lie in the subfield");
    return sub.from_coeffs(*y);
}

inline FieldElement to_minimal_field(const FieldElement & x) { return restrict_to_subfield(x, minimal_degree(x)); }

/// Smallest common field of two contexts of equal characteristic, if within bound.
inline FieldCtx common_field(const FieldCtx & a, const FieldCtx & b)
{
    if (a.characteristic() != b.characteristic())
        throw Error(ErrorCode::ContextMismatch, "different characteristics");
    int l = std::lcm(a.degree(), b.degree());
    try {
        return make_field(a.characteristic(), l);
    } catch (const Error & e) {
        if (e.code() == ErrorCode::SizeExceeded)
            throw Error(ErrorCode::ContextMismatch, "no common extension within the size bound");
        throw;
    }
}

struct FieldElementHash {
    std::size_t operator()(const FieldElement & x) const
    {
        return std::hash<u64>()(x.index()) ^ (std::hash<const void *>()(x.ctx().data()) << 1);
    }
};

} // namespace cmgate
