#pragma once

#include "parse.hpp"
#include "report.hpp"

#include <chrono>
#include <functional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

namespace cmgate {

struct CriterionResult {
    int id;
    std::string name;
    bool passed = false;
    std::string summary;
    double seconds = 0;
};

namespace acceptance {

inline std::vector<FieldElement> field_elements(u64 p, int k)
{
    std::vector<FieldElement> v;
    for (auto x : enumerate_elements(make_field(p, k)))
        v.push_back(x);
    return v;
}

inline bool conductor_smooth(const CurveInvariants & ci)
{
    for (auto [l, e] : nt::factor(static_cast<u64>(ci.f_pi)))
        if (!is_supported_level(static_cast<int>(l)))
            return false;
    return true;
}

inline CriterionResult frobenius_invariance()
{
    CriterionResult r{1, "Frobenius CM invariance over F_{p^2}"};
    u64 checked = 0, bad = 0, skipped = 0;
    for (u64 p : {5, 7, 11, 13})
        for (auto & j : field_elements(p, 2)) {
            CurveInvariants ci = curve_invariants(j);
            if (ci.supersingular)
                continue;
            if (!conductor_smooth(ci)) {
                ++skipped;
                continue;
            }
            ++checked;
            if (!(endo_discriminant(j) == endo_discriminant(frobenius(j))))
                ++bad;
        }
    r.passed = bad == 0 && checked > 0;
    r.summary = std::to_string(checked) + " ordinary j checked, " + std::to_string(bad) + " mismatches, " +
                std::to_string(skipped) + " not conductor-smooth";
    return r;
}

inline CriterionResult provider_agreement()
{
    CriterionResult r{2, "volcano and Hilbert-root providers agree"};
    u64 checked = 0, bad = 0, undefined = 0;
    for (u64 p : {5, 7, 11, 13, 17})
        for (auto & j : field_elements(p, 2)) {
            if (is_supersingular_j(j))
                continue;
            CMOrder a;
            try {
                a = endo_discriminant_volcano(j);
            } catch (const Error & e) {
                if (e.code() != ErrorCode::UnsupportedLevel)
                    throw;
                ++undefined;
                continue;
            }
            ++checked;
            try {
                if (!(endo_discriminant_hilbert(j) == a))
                    ++bad;
            } catch (const Error & e) {
                if (e.code() != ErrorCode::ProviderDisagreement)
                    throw;
                ++bad;
            }
        }
    r.passed = bad == 0 && checked > 0;
    r.summary = std::to_string(checked) + " ordinary j compared, " + std::to_string(bad) + " disagreements, " +
                std::to_string(undefined) + " outside the volcano provider";
    return r;
}

inline CriterionResult hilbert_degree_law()
{
    CriterionResult r{3, "deg H_D mod p = h(D), squarefree, prime-field coefficients"};
    u64 cases = 0, bad = 0, roots_checked = 0;
    for (i64 D : discriminants_up_to(200)) {
        int found = 0;
        for (u64 p = 5; found < 3; ++p) {
            if (!nt::is_prime(p) || static_cast<u64>(-D) % p == 0 || kronecker(D, static_cast<i64>(p)) != 1)
                continue;
            ++found;
            ++cases;
            auto H = hilbert_mod_p(D, p);
            bool ok = H.poly.degree() == class_number(D) && H.poly.ctx().is_prime_field() &&
                      gcd(H.poly, H.poly.derivative()).is_constant();
            // every root reachable within the CM bound must have endomorphism discriminant D
            auto facs = factor_univariate(H.poly);
            int m = 1;
            for (auto & f : facs)
                m = std::lcm(m, f.poly.degree());
            if (nt::checked_pow(p, static_cast<u64>(m), settings().cm_field_bound)) {
                for (auto & j : roots_in(H.poly, m)) {
                    try {
                        ++roots_checked;
                        ok = ok && endo_discriminant_volcano(j).D == D;
                    } catch (const Error & e) {
                        if (e.code() != ErrorCode::UnsupportedLevel)
                            throw;
                        --roots_checked;
                    }
                }
            }
            if (!ok)
                ++bad;
        }
    }
    r.passed = bad == 0;
    r.summary = std::to_string(cases) + " (D, p) pairs, " + std::to_string(bad) + " failures, " +
                std::to_string(roots_checked) + " roots confirmed by volcano walks";
    return r;
}

inline CriterionResult inert_obstruction()
{
    CriterionResult r{4, "no l-isogeny among H_D roots for inert l"};
    const int ls[] = {2, 3, 5, 7};
    const u64 ps[] = {11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};
    std::vector<std::tuple<i64, int, u64>> triples;
    std::set<std::tuple<i64, int, u64>> seen;
    for (int i = 0; triples.size() < 20; ++i) {
        int l = ls[i % 4];
        u64 p = ps[i % 11];
        i64 D = find_test_discriminant(l, static_cast<i64>(p), 10 * (i / 4));
        if (seen.insert({D, l, p}).second)
            triples.push_back({D, l, p});
    }
    int held = 0;
    for (auto [D, l, p] : triples)
        held += inert_obstruction_check(D, l, p);
    int controls = 0, sharp = 0;
    for (auto [D, l0, p] : triples) {
        if (controls == 5)
            break;
        for (int l : supported_levels()) {
            if (static_cast<u64>(l) == p || kronecker(D, l) != 1)
                continue;
            ++controls;
            sharp += !inert_obstruction_check(D, l, p);
            break;
        }
    }
    r.passed = held == 20 && controls == 5 && sharp == 5;
    r.summary = std::to_string(held) + "/20 inert triples obstructed, " + std::to_string(sharp) + "/" +
                std::to_string(controls) + " split controls show an edge";
    return r;
}

inline CriterionResult ao_positive()
{
    CriterionResult r{5, "X - Y^{5^n} passes the CM hypothesis"};
    FieldCtx F = make_field(5, 1);
    bool ok = true;
    std::string s;
    for (const char * eq : {"X - Y", "X - Y^5", "X - Y^25"}) {
        GateReport g = check_cm_hypothesis(make_plane_curve(parse_curve(eq, F)), 3);
        u64 ss = g.details["supersingular_values"].get<u64>();
        bool good = g.verdict == Verdict::Pass && g.witnesses.empty() && ss <= supersingular_j_count(5);
        ok = ok && good;
        s += std::string(s.empty() ? "" : "; ") + eq + ": " + verdict_name(g.verdict) + ", " +
             std::to_string(g.exceptions.size()) + " supersingular exceptions";
    }
    r.passed = ok;
    r.summary = s;
    return r;
}

/// Seeded random curves over F_5 of total degree <= 3, nonconstant in both variables.
inline std::vector<PlaneCurve> random_curves(int count, u64 seed)
{
    FieldCtx F = make_field(5, 1);
    std::mt19937_64 rng(seed);
    std::vector<PlaneCurve> out;
    while (static_cast<int>(out.size()) < count) {
        BiPoly f(F);
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j)
                if (rng() % 3 == 0)
                    f.add_term(i, j, F.from_int(static_cast<i64>(rng() % 5)));
        if (f.deg_x() < 1 || f.deg_y() < 1 || !is_absolutely_irreducible(f))
            continue;
        PlaneCurve C{f};
        if (check_frobenius_conclusion(C))
            continue;
        out.push_back(C);
    }
    return out;
}

inline CriterionResult ao_contrapositive()
{
    CriterionResult r{6, "random non-Frobenius curves yield CM-mismatch witnesses"};
    int found = 0, inconclusive = 0, sentinels = 0;
    int worst = 0;
    for (auto & C : random_curves(10, settings().seed)) {
        GateReport g = andre_oort_gate(C, 6, {true});
        if (!g.witnesses.empty()) {
            ++found;
            worst = std::max(worst, g.witnesses.front().level);
        } else if (g.sentinel) {
            ++sentinels;
        } else {
            ++inconclusive;
        }
    }
    r.passed = sentinels == 0;
    r.summary = std::to_string(found) + "/10 curves with a witness (deepest level " + std::to_string(worst) + "), " +
                std::to_string(inconclusive) + " inconclusive, " + std::to_string(sentinels) + " sentinels";
    return r;
}

inline CriterionResult point_counting()
{
    CriterionResult r{7, "BSGS count equals naive count"};
    std::mt19937_64 rng(settings().seed);
    int bad = 0, total = 0;
    for (u64 q : {101, 1009, 10007}) {
        FieldCtx F = make_field(q, 1);
        for (int i = 0; i < 50;) {
            FieldElement a = F.from_int(static_cast<i64>(rng() % q)), b = F.from_int(static_cast<i64>(rng() % q));
            FieldElement disc = a * a * a * F.from_int(4) + b * b * F.from_int(27);
            if (disc.is_zero())
                continue;
            EllipticCurve E(a, b);
            ++i;
            ++total;
            bad += count_points_bsgs(E) != count_points_naive(E);
        }
    }
    r.passed = bad == 0;
    r.summary = std::to_string(total) + " curves, " + std::to_string(bad) + " disagreements";
    return r;
}

inline CriterionResult modular_support()
{
    CriterionResult r{8, "modular support problem over F_5[t]"};
    FieldCtx F = make_field(5, 1);
    auto T = [&](const char * s) { return parse_ring_element(s, F); };
    auto Ds = discriminants_up_to(100);
    GateReport a = modular_support_check(make_ring_pair(T("t"), T("t^5")), Ds);
    GateReport b = modular_support_check(make_ring_pair(T("t"), T("t + 1")), Ds);
    GateReport c = modular_support_check(make_ring_pair(T("t"), T("t")), Ds);
    bool ok_a = a.verdict == Verdict::Pass && a.conclusion_detail.value("n", -1) == 1;
    bool ok_b = b.verdict == Verdict::Fail && !b.support_witnesses.empty();
    bool ok_c = c.verdict == Verdict::Pass && c.conclusion_detail.value("n", -1) == 0;
    r.passed = ok_a && ok_b && ok_c;
    std::ostringstream s;
    s << Ds.size() << " discriminants; (t,t^5) " << verdict_name(a.verdict) << " [" << a.conclusion.value_or("none")
      << "]; (t,t+1) " << verdict_name(b.verdict);
    if (ok_b)
        s << " at D = " << b.support_witnesses.front().index << ", Q = " << b.support_witnesses.front().Q.to_string();
    s << "; (t,t) " << verdict_name(c.verdict) << " [" << c.conclusion.value_or("none") << "]";
    r.summary = s.str();
    return r;
}

inline CriterionResult mult_cyclo_support()
{
    CriterionResult r{9, "multiplicative and cyclotomic support problems"};
    FieldCtx F = make_field(5, 1);
    auto T = [&](const char * s) { return parse_ring_element(s, F); };
    GateReport a = mult_support_check(make_ring_pair(T("t"), T("t^2")), 30);
    GateReport b = mult_support_check(make_ring_pair(T("t^2"), T("t")), 8);
    GateReport c = cyclo_support_check(make_ring_pair(T("t"), T("t^5")), 30);
    bool ok_a = a.verdict == Verdict::Pass && a.conclusion_detail.value("k", 0) == 2 &&
                a.conclusion_detail.value("m", -1) == 0;
    bool ok_b = b.verdict == Verdict::Fail && !b.support_witnesses.empty() && b.support_witnesses.front().index <= 8;
    bool ok_c = c.verdict == Verdict::Pass && c.conclusion_detail.value("sign", "") == "+" &&
                c.conclusion_detail.value("m", -1) == 1 && c.conclusion_detail.value("direction", "") == "B = A^{+p^m}";
    r.passed = ok_a && ok_b && ok_c;
    std::ostringstream s;
    s << "(t,t^2) " << verdict_name(a.verdict) << " [" << a.conclusion.value_or("none") << "]; (t^2,t) "
      << verdict_name(b.verdict);
    if (ok_b)
        s << " at n = " << b.support_witnesses.front().index;
    s << "; cyclo (t,t^5) " << verdict_name(c.verdict) << " [" << c.conclusion.value_or("none") << "]";
    r.summary = s.str();
    return r;
}

inline CriterionResult frobenius_points()
{
    CriterionResult r{10, "points with x = y^{p^n} on non-Frobenius curves"};
    FieldCtx F = make_field(5, 1);
    bool ok = true;
    std::string s;
    for (const char * eq : {"X + Y - 1", "X*Y - 1", "X^2 + Y - 2"}) {
        auto ws = construct_frobenius_points(make_plane_curve(parse_curve(eq, F)), 3, 4);
        int good = 0;
        for (auto & w : ws)
            good += w.all_checks();
        ok = ok && good >= 1 && good == static_cast<int>(ws.size());
        s += std::string(s.empty() ? "" : "; ") + eq + ": " + std::to_string(good) + "/" + std::to_string(ws.size());
    }
    r.passed = ok;
    r.summary = s + " witnesses pass all re-checks";
    return r;
}

inline CriterionResult galois_structure()
{
    CriterionResult r{11, "degrees of F_5(mu_{3^m}) and the threshold"};
    auto g = stabilization_threshold(3, 5, 6);
    bool ok = g.degrees == std::vector<u64>{2, 6, 18, 54, 162, 486} && g.threshold == 1;
    int in_field = 0, arithmetic = 0;
    for (int m = 1; m <= 6; ++m) {
        auto loc = locate_roots_of_unity(3, 5, m);
        ok = ok && loc.degree == g.degrees[m - 1];
        if (loc.confirmed_in_field) {
            ++in_field;
        } else {
            // outside the field bound: 3^m | 5^k - 1 exactly at k = degree, checked in big integers
            BigInt n = 1, pk = 1;
            for (int i = 0; i < m; ++i)
                n *= 3;
            for (u64 k = 1; k <= loc.degree; ++k) {
                pk *= 5;
                bool divides = (pk - 1) % n == 0;
                if (divides != (k == loc.degree))
                    ok = false;
            }
            ++arithmetic;
        }
    }
    r.passed = ok;
    r.summary = "degrees 2,6,18,54,162,486 threshold " + std::to_string(g.threshold) + "; " +
                std::to_string(in_field) + " located by an element of exact order in F_{5^k}, " +
                std::to_string(arithmetic) + " by exact integer divisibility";
    return r;
}

/// Reports of several criteria serialized to one string.
inline std::string determinism_sample()
{
    FieldCtx F = make_field(5, 1);
    auto T = [&](const char * s) { return parse_ring_element(s, F); };
    json out = json::array();
    out.push_back(to_json(andre_oort_gate(make_plane_curve(parse_curve("X - Y^5", F)), 3)));
    out.push_back(to_json(andre_oort_gate(random_curves(1, settings().seed).front(), 6, {true})));
    out.push_back(to_json(modular_support_check(make_ring_pair(T("t"), T("t + 1")), discriminants_up_to(60))));
    out.push_back(to_json(mult_support_check(make_ring_pair(T("t^2"), T("t")), 8)));
    out.push_back(to_json(cyclo_support_check(make_ring_pair(T("t"), T("t^5")), 20)));
    json pts = json::array();
    for (auto & w : construct_frobenius_points(make_plane_curve(parse_curve("X*Y - 1", F)), 3, 4))
        pts.push_back(to_json(w));
    out.push_back(pts);
    auto g = stabilization_threshold(3, 5, 6);
    out.push_back({{"degrees", g.degrees}, {"threshold", g.threshold}});
    return out.dump(2);
}

inline CriterionResult determinism()
{
    CriterionResult r{12, "repeated runs give byte-identical JSON"};
    unsigned threads = settings().threads;
    std::string first = determinism_sample();
    detail::clear_endo_cache();
    settings().threads = 3;
    std::string second;
    try {
        second = determinism_sample();
    } catch (...) {
        settings().threads = threads;
        throw;
    }
    settings().threads = threads;
    r.passed = first == second && !first.empty();
    r.summary = std::to_string(first.size()) + " bytes, cold cache and 3 worker threads on the second run: " +
                (r.passed ? "identical" : "different");
    return r;
}

} // namespace acceptance

using CriterionFn = std::function<CriterionResult()>;

inline const std::vector<CriterionFn> & acceptance_criteria()
{
    static const std::vector<CriterionFn> all = {
        acceptance::frobenius_invariance, acceptance::provider_agreement, acceptance::hilbert_degree_law,
        acceptance::inert_obstruction,    acceptance::ao_positive,        acceptance::ao_contrapositive,
        acceptance::point_counting,       acceptance::modular_support,    acceptance::mult_cyclo_support,
        acceptance::frobenius_points,     acceptance::galois_structure,   acceptance::determinism,
    };
    return all;
}

/// Runs the selected criteria (all when empty), printing one line per criterion.
inline std::vector<CriterionResult> run_acceptance(const std::set<int> & only, std::ostream & log)
{
    std::vector<CriterionResult> out;
    const auto & all = acceptance_criteria();
    for (std::size_t i = 0; i < all.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(id))
            continue;
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = all[i]();
        } catch (const Error & e) {
            r = {id, "criterion " + std::to_string(id), false,
                 "raised " + std::string(error_name(e.code())) + ": " + e.what()};
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", r.seconds);
        log << "criterion " << (id < 10 ? " " : "") << id << " " << (r.passed ? "PASS" : "FAIL") << "  " << r.name
            << ": " << r.summary << " (" << buf << " s)" << std::endl;
        out.push_back(r);
    }
    return out;
}

} // namespace cmgate
