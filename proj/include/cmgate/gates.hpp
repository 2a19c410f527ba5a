#pragma once

#include "bipoly.hpp"
#include "endoring.hpp"
#include "ordertools.hpp"

#include "json.hpp"

#include <atomic>
#include <exception>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

namespace cmgate {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------- inputs

struct PlaneCurve {
    BiPoly f;
    u64 p() const { return f.ctx().characteristic(); }
    int base_degree() const { return f.ctx().degree(); }
};

inline PlaneCurve make_plane_curve(BiPoly f)
{
    if (f.is_zero())
        throw Error(ErrorCode::ZeroPolynomial, "curve equation is zero");
    if (f.total_degree() < 1)
        throw Error(ErrorCode::ConstantPolynomial, "curve equation is constant");
    if (!is_absolutely_irreducible(f))
        throw Error(ErrorCode::ReducibleCurve, f.to_string() + " is not absolutely irreducible");
    return {std::move(f)};
}

struct RingElementPair {
    UniPoly A, B;
};

inline RingElementPair make_ring_pair(UniPoly A, UniPoly B)
{
    if (!(A.ctx() == B.ctx()))
        throw Error(ErrorCode::ContextMismatch, "A and B over different fields");
    if (A.is_constant() || B.is_constant())
        throw Error(ErrorCode::ConstantRingElement, "A and B must be nonconstant");
    return {std::move(A), std::move(B)};
}

// ---------------------------------------------------------------- reports

enum class Verdict { Pass, Fail, Inconclusive };

inline const char * verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

/// A point violating the hypothesis under test.
struct PointWitness {
    int level;
    FieldElement x, y;
    std::string kind; // cm-mismatch | order-mismatch
    std::optional<CMOrder> cm_x, cm_y;
    i64 dk_x = 0, dk_y = 0;
    u64 ord_x = 0, ord_y = 0;
};

/// A point routed to the exceptional set.
struct PointException {
    int level;
    FieldElement x, y;
    std::string reason; // supersingular | unsupported-level | zero-coordinate
};

/// A failing index (D or n) of a support problem with a point Q of the affine line.
struct SupportWitness {
    i64 index;
    std::string method;
    UniPoly factor; // irreducible factor of the first element not dividing the second
    FieldElement Q, A_Q, B_Q;
};

struct IndexCheck {
    i64 index;
    std::string method;
    std::string status; // holds | fails | skipped
    std::string detail;
};

struct LevelSummary {
    int level;
    u64 points = 0, fresh = 0, ok = 0, exceptional = 0, skipped = 0, witnesses = 0;
};

struct GateReport {
    std::string gate;
    Verdict verdict = Verdict::Pass;
    std::vector<PointWitness> witnesses;
    std::vector<SupportWitness> support_witnesses;
    std::vector<PointException> exceptions;
    std::vector<LevelSummary> levels;
    std::vector<IndexCheck> checks;
    std::optional<std::string> conclusion;
    json conclusion_detail = json::object();
    json bounds = json::object();
    json details = json::object();
    std::vector<std::string> notes;
    bool sentinel = false;
    std::string sentinel_reason;
};

namespace detail {

/// Runs body(i) for i < n on settings().threads workers; rethrows the lowest-index failure.
template <class F>
void parallel_for(std::size_t n, F && body)
{
    unsigned t = std::max(1u, settings().threads);
    if (t == 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errs(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                errs[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < std::min<std::size_t>(t, n); ++w)
        pool.emplace_back(worker);
    for (auto & th : pool)
        th.join();
    for (auto & e : errs)
        if (e)
            std::rethrow_exception(e);
}

inline u64 p_power(u64 p, int n)
{
    auto v = nt::checked_pow(p, static_cast<u64>(n), u64{1} << 40);
    if (!v)
        throw Error(ErrorCode::SizeExceeded, "p^n too large");
    return *v;
}

} // namespace detail

/// Number of supersingular j-invariants in characteristic p >= 5.
inline u64 supersingular_j_count(u64 p)
{
    static constexpr u64 extra[12] = {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 2};
    return p / 12 + extra[p % 12];
}

// ---------------------------------------------------------------- points

using CurvePoint = std::pair<FieldElement, FieldElement>;

/// All points of C with both coordinates in F_{p^k}, sorted.
inline std::vector<CurvePoint> enumerate_curve_points(const PlaneCurve & C, int k)
{
    const u64 p = C.p();
    if (k < 1 || k % C.base_degree() != 0)
        throw Error(ErrorCode::InvalidArgument, "level must be a multiple of the degree of the coefficient field");
    auto q = nt::checked_pow(p, static_cast<u64>(k), settings().enumeration_bound);
    if (!q)
        throw Error(ErrorCode::SizeExceeded, "F_" + std::to_string(p) + "^" + std::to_string(k) +
                                                 " exceeds the enumeration bound");
    FieldCtx L = make_field(p, k);
    BiPoly f = C.f.map_to(L);
    // scan the coordinate whose partner has the smaller degree
    bool swap = f.deg_x() < f.deg_y();
    if (swap)
        f = f.swap_variables();
    std::vector<CurvePoint> out;
    if (f.deg_y() < 1) {
        // f depends on the scanned variable only: every partner value works
        BiPoly g = f.swap_variables();
        for (auto & s : roots(g.at_y(L.zero())))
            for (auto v : enumerate_elements(L))
                out.push_back({s, v});
    } else {
        for (auto s : enumerate_elements(L)) {
            UniPoly g = f.at_x(s);
            if (g.is_zero()) {
                for (auto v : enumerate_elements(L))
                    out.push_back({s, v});
                continue;
            }
            for (auto & v : roots(g))
                out.push_back({s, v});
        }
    }
    if (swap)
        for (auto & [a, b] : out)
            std::swap(a, b);
    std::sort(out.begin(), out.end());
    return out;
}

namespace detail {

inline bool fresh_at_level(const CurvePoint & P, int base, int k)
{
    int d = std::lcm(base, std::lcm(minimal_degree(P.first), minimal_degree(P.second)));
    return d == k;
}

enum class PointStatus { Ok, Exceptional, Skipped, Witness };

struct Classified {
    PointStatus status;
    std::string reason;
    std::optional<CMOrder> ox, oy;
    i64 dkx = 0, dky = 0;
    u64 ordx = 0, ordy = 0;
};

inline u64 field_order_of(const FieldElement & x) { return to_minimal_field(x).ctx().order(); }

inline Classified classify_cm(const FieldElement & x, const FieldElement & y)
{
    Classified c{PointStatus::Ok, "", std::nullopt, std::nullopt};
    if (std::max(field_order_of(x), field_order_of(y)) > settings().cm_field_bound)
        return {PointStatus::Skipped, "beyond-cm-bound"};
    CurveInvariants cx = curve_invariants(x), cy = curve_invariants(y);
    if (cx.supersingular || cy.supersingular)
        return {PointStatus::Exceptional, "supersingular"};
    c.dkx = cx.d_K;
    c.dky = cy.d_K;
    try {
        c.ox = endo_discriminant(x);
        c.oy = endo_discriminant(y);
    } catch (const Error & e) {
        if (e.code() != ErrorCode::UnsupportedLevel)
            throw;
        c.ox.reset();
        c.oy.reset();
        if (cx.d_K != cy.d_K) {
            c.status = PointStatus::Witness;
            c.reason = "different CM fields";
        } else {
            c.status = PointStatus::Skipped;
            c.reason = "unsupported-level";
        }
        return c;
    }
    if (!(*c.ox == *c.oy)) {
        c.status = PointStatus::Witness;
        c.reason = "different endomorphism rings";
    }
    return c;
}

inline Classified classify_order(const FieldElement & x, const FieldElement & y, bool equal_mode)
{
    if (x.is_zero() || y.is_zero())
        return {PointStatus::Exceptional, "zero-coordinate"};
    Classified c{PointStatus::Ok, ""};
    c.ordx = multiplicative_order(to_minimal_field(x));
    c.ordy = multiplicative_order(to_minimal_field(y));
    bool ok = equal_mode ? c.ordx == c.ordy : c.ordx % c.ordy == 0;
    if (!ok) {
        c.status = PointStatus::Witness;
        c.reason = equal_mode ? "orders differ" : "order of y does not divide order of x";
    }
    return c;
}

template <class Classify>
GateReport sweep_points(const PlaneCurve & C, int k_max, bool stop_at_witness_level, const std::string & kind,
                        Classify classify)
{
    GateReport r;
    const int e = C.base_degree();
    std::vector<int> scanned;
    for (int k = e; k <= k_max; k += e) {
        auto pts = enumerate_curve_points(C, k);
        LevelSummary s{k};
        s.points = pts.size();
        std::vector<CurvePoint> fresh;
        for (auto & P : pts)
            if (fresh_at_level(P, e, k))
                fresh.push_back(P);
        s.fresh = fresh.size();
        std::vector<Classified> cls(fresh.size());
        parallel_for(fresh.size(), [&](std::size_t i) { cls[i] = classify(fresh[i].first, fresh[i].second); });
        for (std::size_t i = 0; i < fresh.size(); ++i) {
            auto & [x, y] = fresh[i];
            auto & c = cls[i];
            switch (c.status) {
            case PointStatus::Ok:
                ++s.ok;
                break;
            case PointStatus::Exceptional:
                ++s.exceptional;
                r.exceptions.push_back({k, x, y, c.reason});
                break;
            case PointStatus::Skipped:
                ++s.skipped;
                r.exceptions.push_back({k, x, y, c.reason});
                break;
            case PointStatus::Witness:
                ++s.witnesses;
                r.witnesses.push_back({k, x, y, kind, c.ox, c.oy, c.dkx, c.dky, c.ordx, c.ordy});
                break;
            }
        }
        r.levels.push_back(s);
        scanned.push_back(k);
        if (stop_at_witness_level && s.witnesses > 0)
            break;
    }
    bool skipped = std::any_of(r.levels.begin(), r.levels.end(), [](auto & s) { return s.skipped > 0; });
    r.verdict = !r.witnesses.empty() ? Verdict::Fail : skipped ? Verdict::Inconclusive : Verdict::Pass;
    r.bounds = {{"p", C.p()}, {"coefficient_field_degree", e}, {"k_max", k_max}, {"levels_scanned", scanned}};
    return r;
}

} // namespace detail

struct SweepOptions {
    /// stop after the first level that produced a witness
    bool stop_at_witness_level = false;
};

/// Re-derives a CM witness from scratch; false means the sweep produced an unsound witness.
inline bool verify_cm_witness(const PlaneCurve & C, const PointWitness & w)
{
    if (!eval_bi(C.f, w.x, w.y).is_zero())
        return false;
    if (is_supersingular_j(w.x) || is_supersingular_j(w.y))
        return false;
    CurveInvariants cx = curve_invariants(w.x), cy = curve_invariants(w.y);
    if (cx.d_K != cy.d_K)
        return true;
    CMOrder ox = endo_discriminant_volcano(w.x), oy = endo_discriminant_volcano(w.y);
    return !(ox == oy) && hilbert_confirms(ox.D, w.x) && hilbert_confirms(oy.D, w.y);
}

/// Theorem 1.1 hypothesis swept over F_{p^k}, k <= k_max.
inline GateReport check_cm_hypothesis(const PlaneCurve & C, int k_max, SweepOptions opt = {})
{
    GateReport r = detail::sweep_points(C, k_max, opt.stop_at_witness_level, "cm-mismatch", detail::classify_cm);
    r.gate = "cm-hypothesis";
    for (auto & w : r.witnesses)
        if (!verify_cm_witness(C, w))
            throw Error(ErrorCode::ProviderDisagreement, "witness (" + w.x.to_string() + ", " + w.y.to_string() +
                                                             ") failed re-verification");
    std::set<std::pair<int, u64>> ss;
    for (auto & ex : r.exceptions)
        if (ex.reason == "supersingular")
            for (auto & z : {ex.x, ex.y})
                if (is_supersingular_j(z)) {
                    FieldElement m = to_minimal_field(z);
                    ss.insert({m.ctx().degree(), m.index()});
                }
    r.details["supersingular_values"] = ss.size();
    r.details["supersingular_bound"] = supersingular_j_count(C.p());
    if (ss.size() > supersingular_j_count(C.p())) {
        r.sentinel = true;
        r.sentinel_reason = "more supersingular values than exist in this characteristic";
    }
    return r;
}

// ---------------------------------------------------------------- conclusions

struct FrobeniusForm {
    std::string direction; // "X=Y^{p^n}" or "Y=X^{p^n}"
    int n;
    std::string to_string() const { return direction + ", n = " + std::to_string(n); }
};

/// f a unit multiple of X - Y^{p^n} or Y - X^{p^n}.
inline std::optional<FrobeniusForm> check_frobenius_conclusion(const PlaneCurve & C)
{
    const auto & t = C.f.terms();
    if (t.size() != 2)
        return std::nullopt;
    auto match = [&](bool x_side) -> std::optional<int> {
        // linear monomial X (or Y) and a pure power Y^{p^n} (or X^{p^n}) with opposite coefficients
        BiPoly::Key lin = x_side ? BiPoly::Key{1, 0} : BiPoly::Key{0, 1};
        auto it = t.find(lin);
        if (it == t.end())
            return std::nullopt;
        for (auto & [k, c] : t) {
            if (k == lin)
                continue;
            int e = x_side ? k.second : k.first;
            int other = x_side ? k.first : k.second;
            if (other != 0 || e < 1 || !(c == -it->second))
                return std::nullopt;
            int n = 0;
            u64 pe = 1;
            while (pe < static_cast<u64>(e)) {
                pe *= C.p();
                ++n;
            }
            if (pe != static_cast<u64>(e))
                return std::nullopt;
            return n;
        }
        return std::nullopt;
    };
    if (auto n = match(true))
        return FrobeniusForm{"X=Y^{p^n}", *n};
    if (auto n = match(false))
        return FrobeniusForm{"Y=X^{p^n}", *n};
    return std::nullopt;
}

/// Theorem 1.1: hypothesis sweep, conclusion match and the consistency sentinel.
inline GateReport andre_oort_gate(const PlaneCurve & C, int k_max, SweepOptions opt = {})
{
    GateReport r = check_cm_hypothesis(C, k_max, opt);
    r.gate = "andre-oort";
    auto form = check_frobenius_conclusion(C);
    if (form) {
        r.conclusion = form->to_string();
        r.conclusion_detail = {{"direction", form->direction}, {"n", form->n}};
    }
    if (r.verdict == Verdict::Pass && !form && !r.sentinel) {
        r.sentinel = true;
        r.sentinel_reason = "hypothesis holds on every scanned level but the curve is not of Frobenius form "
                            "(falsification candidate at this bound)";
    }
    if (r.verdict == Verdict::Fail && form) {
        r.sentinel = true;
        r.sentinel_reason = "curve of Frobenius form produced a CM mismatch";
    }
    // geometric isogeny of coordinate curves on a few ordinary points
    json samples = json::array();
    const int e = C.base_degree();
    for (int k = e; k <= std::min(k_max, 2 * e) && samples.size() < 4; k += e) {
        for (auto & [x, y] : enumerate_curve_points(C, k)) {
            if (samples.size() >= 4)
                break;
            if (!detail::fresh_at_level({x, y}, e, k) || detail::field_order_of(x) > settings().cm_field_bound ||
                detail::field_order_of(y) > settings().cm_field_bound || is_supersingular_j(x) ||
                is_supersingular_j(y))
                continue;
            IsogenyVerdict v = geometrically_isogenous(x, y);
            json s = {{"x", x.to_string()}, {"y", y.to_string()}, {"isogenous", v.isogenous}, {"reason", v.reason}};
            if (v.path)
                s["path_length"] = v.path->size();
            samples.push_back(s);
        }
    }
    r.details["isogeny_samples"] = samples;
    r.notes.push_back("pass means no counterexample on the scanned levels outside the declared exceptional set; "
                      "it is evidence at a bound, not a proof");
    return r;
}

enum class OrderMode { Divides, Equal };

/// Multiplicative-order hypothesis: ord(y) | ord(x) (divides) or ord(x) = ord(y) (equal).
inline GateReport check_mult_hypothesis(const PlaneCurve & C, int k_max, OrderMode mode, SweepOptions opt = {})
{
    bool eq = mode == OrderMode::Equal;
    GateReport r = detail::sweep_points(C, k_max, opt.stop_at_witness_level, "order-mismatch",
                                        [eq](const FieldElement & x, const FieldElement & y) {
                                            return detail::classify_order(x, y, eq);
                                        });
    r.gate = "mult-hypothesis";
    r.bounds["mode"] = eq ? "equal" : "divides";
    for (auto & w : r.witnesses) {
        bool sound = eval_bi(C.f, w.x, w.y).is_zero() && w.x.pow(BigInt(w.ord_x)).is_one() &&
                     w.y.pow(BigInt(w.ord_y)).is_one();
        if (!sound)
            throw Error(ErrorCode::ProviderDisagreement, "order witness failed re-verification");
    }
    return r;
}

struct SubgroupForm {
    i64 a, b;
    FieldElement zeta;
    u64 zeta_order;
};

/// f a unit multiple of X^a Y^b - zeta (negative exponents cleared), with a > 0 or a = 0 < b.
inline std::optional<SubgroupForm> detect_subgroup_form(const PlaneCurve & C)
{
    const auto & t = C.f.terms();
    if (t.size() != 2)
        return std::nullopt;
    auto lo = t.begin(), hi = std::next(t.begin());
    // X^{i1} Y^{j1} = -(c2/c1) X^{i2} Y^{j2}
    i64 a = hi->first.first - lo->first.first;
    i64 b = hi->first.second - lo->first.second;
    FieldElement zeta = -(lo->second / hi->second);
    if (a < 0 || (a == 0 && b < 0)) {
        a = -a;
        b = -b;
        zeta = zeta.inverse();
    }
    FieldElement z = to_minimal_field(zeta);
    return SubgroupForm{a, b, z, multiplicative_order(z)};
}

// ---------------------------------------------------------------- support problems

namespace detail {

inline SupportWitness support_witness(i64 index, std::string method, const UniPoly & factor, const UniPoly & A,
                                      const UniPoly & B)
{
    const FieldCtx & F = factor.ctx();
    int k = F.degree() * factor.degree();
    if (!nt::checked_pow(F.characteristic(), static_cast<u64>(k), settings().field_bound))
        throw Error(ErrorCode::SizeExceeded, "witness point lies beyond the field bound");
    FieldElement Q = roots_in(factor, k).front();
    return {index, std::move(method), factor, Q, A(Q), B(Q)};
}

inline void finish_support(GateReport & r)
{
    bool skipped = std::any_of(r.checks.begin(), r.checks.end(), [](auto & c) { return c.status == "skipped"; });
    r.verdict = !r.support_witnesses.empty() ? Verdict::Fail : skipped ? Verdict::Inconclusive : Verdict::Pass;
    if (r.verdict == Verdict::Pass && !r.conclusion) {
        r.sentinel = true;
        r.sentinel_reason = "hypothesis holds on the whole range but no conclusion pattern matched "
                            "(falsification candidate at this bound)";
    }
    if (r.verdict == Verdict::Fail && r.conclusion) {
        r.sentinel = true;
        r.sentinel_reason = "pair satisfying the conclusion failed the hypothesis";
    }
}

/// A = B^{p^n} or B = A^{p^n} as polynomials.
inline std::optional<std::pair<std::string, int>> frobenius_power_relation(const UniPoly & A, const UniPoly & B)
{
    const u64 p = A.ctx().characteristic();
    auto try_dir = [&](const UniPoly & lo, const UniPoly & hi) -> std::optional<int> {
        u64 pe = 1;
        for (int n = 0; static_cast<u64>(lo.degree()) * pe <= static_cast<u64>(hi.degree()); ++n, pe *= p)
            if (static_cast<u64>(lo.degree()) * pe == static_cast<u64>(hi.degree()) && pow(lo, pe) == hi)
                return n;
        return std::nullopt;
    };
    if (auto n = try_dir(A, B))
        return std::make_pair(std::string("B=A^{p^n}"), *n);
    if (auto n = try_dir(B, A))
        return std::make_pair(std::string("A=B^{p^n}"), *n);
    return std::nullopt;
}

} // namespace detail

/// Theorem 1.2 over F_q[t]: rad H_D(A) | H_D(B) for each D.
inline GateReport modular_support_check(const RingElementPair & pr, const std::vector<i64> & D_set)
{
    GateReport r;
    r.gate = "support-modular";
    const FieldCtx & F = pr.A.ctx();
    const u64 p = F.characteristic();
    FieldCtx Fp = make_field(p, 1);
    std::vector<i64> Ds = D_set;
    std::sort(Ds.begin(), Ds.end(), std::greater<>()); // increasing |D|
    Ds.erase(std::unique(Ds.begin(), Ds.end()), Ds.end());
    for (i64 D : Ds) {
        IndexCheck c{D, "", "", ""};
        try {
            require_discriminant(D);
            bool split = D % static_cast<i64>(p) != 0 && kronecker(D, static_cast<i64>(p)) == 1;
            c.method = split ? "split" : "root-set";
            UniPoly H = split ? hilbert_mod_p(D, p).poly : hilbert_reduce(D, Fp);
            H = map_to(H, F);
            UniPoly HA = compose(H, pr.A), HB = compose(H, pr.B);
            if (auto obs = radical_obstruction(HA, HB)) {
                SupportWitness w = detail::support_witness(D, c.method, *obs, pr.A, pr.B);
                UniPoly HQ = map_to(H, w.Q.ctx());
                if (!HQ(w.A_Q).is_zero() || HQ(w.B_Q).is_zero())
                    throw Error(ErrorCode::ProviderDisagreement, "support witness failed re-verification");
                r.support_witnesses.push_back(w);
                c.status = "fails";
            } else {
                c.status = "holds";
            }
        } catch (const Error & e) {
            if (e.code() == ErrorCode::ProviderDisagreement)
                throw;
            c.status = "skipped";
            c.detail = std::string(error_name(e.code())) + ": " + e.what();
        }
        r.checks.push_back(c);
    }
    if (auto rel = detail::frobenius_power_relation(pr.A, pr.B)) {
        r.conclusion = rel->first + ", n = " + std::to_string(rel->second);
        r.conclusion_detail = {{"direction", rel->first}, {"n", rel->second}};
    }
    detail::finish_support(r);
    r.bounds = {{"p", p}, {"coefficient_field_degree", F.degree()}, {"discriminants", Ds}};
    r.notes.push_back("discriminants where p does not split are checked on the root set of H_D reduced mod p");
    return r;
}

/// Every D in the discriminant set with |D| <= bound.
inline std::vector<i64> discriminants_up_to(i64 bound)
{
    std::vector<i64> out;
    for (i64 a = 3; a <= bound; ++a)
        if (nt::is_discriminant(-a))
            out.push_back(-a);
    return out;
}

/// Theorem 2.4 (1): rad(A^n - 1) | B^n - 1 for N_0 < n <= n_max.
inline GateReport mult_support_check(const RingElementPair & pr, int n_max, int N0 = 0)
{
    GateReport r;
    r.gate = "support-mult";
    const FieldCtx & F = pr.A.ctx();
    const u64 p = F.characteristic();
    UniPoly one = UniPoly::constant(F.one());
    for (int n = N0 + 1; n <= n_max; ++n) {
        UniPoly An = pow(pr.A, n) - one, Bn = pow(pr.B, n) - one;
        IndexCheck c{n, "radical", "holds", ""};
        if (auto obs = radical_obstruction(An, Bn)) {
            SupportWitness w = detail::support_witness(n, "radical", *obs, pr.A, pr.B);
            if (!w.A_Q.pow(static_cast<u64>(n)).is_one() || w.B_Q.pow(static_cast<u64>(n)).is_one())
                throw Error(ErrorCode::ProviderDisagreement, "support witness failed re-verification");
            r.support_witnesses.push_back(w);
            c.status = "fails";
        }
        r.checks.push_back(c);
    }
    // B^{p^m} = A^k with k >= 1
    const int dA = pr.A.degree(), dB = pr.B.degree();
    const u64 deg_cap = static_cast<u64>(std::max(dA, dB)) * 64;
    u64 pm = 1;
    int m_scanned = 0;
    for (int m = 0; static_cast<u64>(dB) * pm <= deg_cap; ++m, pm *= p) {
        m_scanned = m;
        u64 num = static_cast<u64>(dB) * pm;
        if (num % static_cast<u64>(dA) != 0)
            continue;
        u64 k = num / static_cast<u64>(dA);
        if (pow(pr.B, pm) == pow(pr.A, k)) {
            r.conclusion = "B^{p^m} = A^k, k = " + std::to_string(k) + ", m = " + std::to_string(m);
            r.conclusion_detail = {{"k", k}, {"m", m}};
            break;
        }
    }
    detail::finish_support(r);
    r.bounds = {{"p", p}, {"N0", N0}, {"n_max", n_max}, {"conclusion_m_max", m_scanned},
                {"conclusion_degree_cap", deg_cap}};
    r.notes.push_back("only k >= 1 is matched; negative k would need A to be a unit");
    return r;
}

/// Theorem 2.4 (2): rad Psi_n(A) | Psi_n(B) for n prime to p, N_0 < n <= n_max.
inline GateReport cyclo_support_check(const RingElementPair & pr, int n_max, int N0 = 0)
{
    GateReport r;
    r.gate = "support-cyclo";
    const FieldCtx & F = pr.A.ctx();
    const u64 p = F.characteristic();
    std::vector<int> scanned;
    for (int n = N0 + 1; n <= n_max; ++n) {
        if (n % static_cast<int>(p) == 0)
            continue;
        scanned.push_back(n);
        UniPoly Psi = cyclotomic_polynomial(static_cast<u64>(n), F);
        UniPoly PA = compose(Psi, pr.A), PB = compose(Psi, pr.B);
        IndexCheck c{n, "radical", "holds", ""};
        if (auto obs = radical_obstruction(PA, PB)) {
            SupportWitness w = detail::support_witness(n, "radical", *obs, pr.A, pr.B);
            UniPoly PQ = map_to(Psi, w.Q.ctx());
            if (!PQ(w.A_Q).is_zero() || PQ(w.B_Q).is_zero())
                throw Error(ErrorCode::ProviderDisagreement, "support witness failed re-verification");
            r.support_witnesses.push_back(w);
            c.status = "fails";
        }
        r.checks.push_back(c);
    }
    if (auto rel = detail::frobenius_power_relation(pr.A, pr.B)) {
        std::string d = rel->first == "B=A^{p^n}" ? "B = A^{+p^m}" : "A = B^{+p^m}";
        r.conclusion = d + ", m = " + std::to_string(rel->second);
        r.conclusion_detail = {{"direction", d}, {"sign", "+"}, {"m", rel->second}};
    }
    detail::finish_support(r);
    r.bounds = {{"p", p}, {"N0", N0}, {"n_max", n_max}, {"indices", scanned}};
    r.notes.push_back("the inverse patterns need A*B^{p^m} = 1, impossible for nonconstant polynomials");
    return r;
}

// ---------------------------------------------------------------- constructive points

struct FrobeniusPointWitness {
    int n;
    FieldElement x, y;
    u64 order; // shared multiplicative order, 0 when both coordinates vanish
    std::optional<CMOrder> cm;
    std::string cm_status; // equal | supersingular | unsupported-level | beyond-cm-bound
    bool on_curve = false, frobenius_ok = false, orders_ok = false, cm_ok = false;
    bool all_checks() const { return on_curve && frobenius_ok && orders_ok && cm_ok; }
};

/// Points with x = y^{p^n} on C, n = 1..n_max, at most `count` of them.
inline std::vector<FrobeniusPointWitness> construct_frobenius_points(const PlaneCurve & C, int n_max, int count)
{
    const BiPoly & f = C.f;
    if (f.total_degree() == 1 && (f.deg_x() < 1 || f.deg_y() < 1))
        throw Error(ErrorCode::DegenerateCurve, "curve is a vertical or horizontal line");
    const FieldCtx & F = f.ctx();
    const u64 p = C.p();
    std::vector<FrobeniusPointWitness> out;
    for (int n = 1; n <= n_max && static_cast<int>(out.size()) < count; ++n) {
        const u64 pn = detail::p_power(p, n);
        const u64 deg = static_cast<u64>(std::max(f.deg_x(), 0)) * pn + static_cast<u64>(std::max(f.deg_y(), 0));
        if (deg > 20000)
            throw Error(ErrorCode::SizeExceeded, "substituted polynomial too large");
        std::vector<FieldElement> g(deg + 1, F.zero());
        for (auto & [k, c] : f.terms())
            g[static_cast<u64>(k.first) * pn + static_cast<u64>(k.second)] += c;
        UniPoly gn(F, std::move(g));
        std::vector<FieldElement> ys;
        if (gn.is_zero()) {
            for (auto y : enumerate_elements(F))
                ys.push_back(y);
        } else if (gn.degree() >= 1) {
            for (auto & fac : factor_univariate(gn)) {
                int k = F.degree() * fac.poly.degree();
                if (!nt::checked_pow(p, static_cast<u64>(k), settings().field_bound))
                    continue;
                ys.push_back(roots_in(fac.poly, k).front());
            }
        }
        for (auto & y : ys) {
            if (static_cast<int>(out.size()) >= count)
                break;
            FrobeniusPointWitness w{n, frobenius_power(y, static_cast<u64>(n)), y, 0, std::nullopt, ""};
            // independent re-checks
            w.on_curve = eval_bi(f, w.x, w.y).is_zero();
            w.frobenius_ok = w.y.pow(BigInt(pn)) == w.x;
            if (w.x.is_zero() || w.y.is_zero()) {
                w.orders_ok = w.x.is_zero() && w.y.is_zero();
            } else {
                u64 ox = multiplicative_order(to_minimal_field(w.x)), oy = multiplicative_order(to_minimal_field(w.y));
                w.order = ox;
                w.orders_ok = ox == oy;
            }
            if (std::max(detail::field_order_of(w.x), detail::field_order_of(w.y)) > settings().cm_field_bound) {
                w.cm_status = "beyond-cm-bound";
                w.cm_ok = true;
            } else if (is_supersingular_j(w.x) || is_supersingular_j(w.y)) {
                w.cm_status = "supersingular";
                w.cm_ok = is_supersingular_j(w.x) && is_supersingular_j(w.y);
            } else {
                try {
                    CMOrder o1 = endo_discriminant(w.x), o2 = endo_discriminant(w.y);
                    w.cm = o1;
                    w.cm_status = "equal";
                    w.cm_ok = o1 == o2;
                } catch (const Error & e) {
                    if (e.code() != ErrorCode::UnsupportedLevel)
                        throw;
                    w.cm_status = "unsupported-level";
                    w.cm_ok = curve_invariants(w.x).d_K == curve_invariants(w.y).d_K;
                }
            }
            out.push_back(w);
        }
    }
    if (out.empty())
        throw Error(ErrorCode::NoWitnessInBound, "no point with x = y^{p^n} for n <= " + std::to_string(n_max));
    return out;
}

} // namespace cmgate
