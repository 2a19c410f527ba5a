// cmgate: command-line front end for the CM / support-problem gates.

#include "cmgate/selftest.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace cmgate;

namespace {

struct Output {
    std::string verdict = "ok";
    json witnesses = json::array();
    json exceptions = json::array();
    json bounds = json::object();
    json result = json::object();
    std::vector<std::string> text;
    int code = 0;
};

struct Common {
    u64 p = 5;
    int k = 1;
    std::string format = "text";
    u64 seed = settings().seed;
    unsigned threads = 1;
    std::string data_dir;
    bool timings = false;
} common;

FieldCtx base_field()
{
    if (!nt::is_prime(common.p))
        throw Error(ErrorCode::CompositeP, std::to_string(common.p) + " is not prime");
    if (common.p < 5)
        throw Error(ErrorCode::CharTooSmall, "characteristic must be at least 5");
    return make_field(common.p, common.k);
}

/// "3", "-1" or a coefficient tuple "(c0,c1,...)" in the power basis of F_{p^k}.
FieldElement parse_element(const std::string & s, const FieldCtx & F)
{
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    try {
        if (t.size() >= 2 && t.front() == '(' && t.back() == ')') {
            std::vector<u64> c;
            std::stringstream ss(t.substr(1, t.size() - 2));
            for (std::string tok; std::getline(ss, tok, ',');)
                c.push_back(nt::mod(static_cast<i64>(std::stoll(tok)), F.characteristic()));
            if (c.size() > static_cast<std::size_t>(F.degree()))
                throw Error(ErrorCode::ParseError, "element '" + s + "' has more coordinates than the field degree");
            c.resize(F.degree(), 0);
            return F.from_coeffs(c);
        }
        std::size_t used = 0;
        long long v = std::stoll(t, &used);
        if (used != t.size())
            throw std::invalid_argument(t);
        return F.from_int(v);
    } catch (const std::logic_error &) {
        throw Error(ErrorCode::ParseError, "cannot read field element '" + s + "'");
    }
}

std::string cm_text(const CMOrder & o)
{
    return "D = " + std::to_string(o.D) + " (d_K = " + std::to_string(o.d_K) + ", f = " + std::to_string(o.f) + ")";
}

std::string element_text(const FieldElement & x) { return to_minimal_field(x).to_string(); }

Output from_report(const GateReport & r, std::size_t shown = 5)
{
    Output o;
    o.verdict = verdict_name(r.verdict);
    o.witnesses = witnesses_json(r);
    o.exceptions = exceptions_json(r);
    o.bounds = r.bounds;
    o.result = result_json(r);
    o.code = r.sentinel ? 3 : r.verdict == Verdict::Pass ? 0 : 1;
    o.text.push_back(r.gate + ": " + o.verdict);
    o.text.push_back("conclusion: " + r.conclusion.value_or("none"));
    for (auto & s : r.levels)
        o.text.push_back("level " + std::to_string(s.level) + ": " + std::to_string(s.points) + " points, " +
                         std::to_string(s.fresh) + " new, " + std::to_string(s.ok) + " ok, " +
                         std::to_string(s.exceptional) + " exceptional, " + std::to_string(s.skipped) +
                         " skipped, " + std::to_string(s.witnesses) + " witnesses");
    if (!r.checks.empty()) {
        std::size_t holds = 0, fails = 0, skipped = 0;
        for (auto & c : r.checks)
            (c.status == "holds" ? holds : c.status == "fails" ? fails : skipped)++;
        o.text.push_back(std::to_string(r.checks.size()) + " indices: " + std::to_string(holds) + " hold, " +
                         std::to_string(fails) + " fail, " + std::to_string(skipped) + " skipped");
    }
    for (std::size_t i = 0; i < r.witnesses.size() && i < shown; ++i) {
        auto & w = r.witnesses[i];
        std::string d = "witness " + w.kind + " at level " + std::to_string(w.level) + ": x = " + element_text(w.x) +
                        ", y = " + element_text(w.y);
        if (w.kind == "cm-mismatch")
            d += w.cm_x && w.cm_y ? " (" + cm_text(*w.cm_x) + " vs " + cm_text(*w.cm_y) + ")"
                                  : " (d_K " + std::to_string(w.dk_x) + " vs " + std::to_string(w.dk_y) + ")";
        else
            d += " (orders " + std::to_string(w.ord_x) + " and " + std::to_string(w.ord_y) + ")";
        o.text.push_back(d);
    }
    for (std::size_t i = 0; i < r.support_witnesses.size() && i < shown; ++i) {
        auto & w = r.support_witnesses[i];
        o.text.push_back("witness at index " + std::to_string(w.index) + " (" + w.method + "): Q = " +
                         element_text(w.Q) + ", factor " + w.factor.to_string("t"));
    }
    std::size_t total = r.witnesses.size() + r.support_witnesses.size();
    if (total > shown)
        o.text.push_back("... " + std::to_string(total - shown) + " more witnesses in the JSON report");
    if (!r.exceptions.empty())
        o.text.push_back(std::to_string(r.exceptions.size()) + " exceptional points");
    if (r.sentinel)
        o.text.push_back("SENTINEL: " + r.sentinel_reason);
    return o;
}

int exit_code_for(ErrorCode c)
{
    switch (c) {
    case ErrorCode::ProviderDisagreement:
        return 3;
    case ErrorCode::ParseError:
    case ErrorCode::WrongVariables:
    case ErrorCode::CompositeP:
    case ErrorCode::CharTooSmall:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotADiscriminant:
    case ErrorCode::BothZero:
    case ErrorCode::PInert:
    case ErrorCode::PDividesD:
    case ErrorCode::EqualPrimes:
    case ErrorCode::BadExponent:
    case ErrorCode::IndexDivisibleByP:
    case ErrorCode::ReducibleCurve:
    case ErrorCode::DegenerateCurve:
    case ErrorCode::ConstantRingElement:
    case ErrorCode::ConstantPolynomial:
    case ErrorCode::ZeroPolynomial:
        return 2;
    default:
        return 1;
    }
}

std::vector<int> parse_levels(const std::string & s)
{
    std::vector<int> out;
    std::stringstream ss(s);
    for (std::string tok; std::getline(ss, tok, ',');)
        out.push_back(std::stoi(tok));
    return out;
}

} // namespace

int main(int argc, char ** argv)
{
    CLI::App app{"Bounded checks of CM and support-problem statements over finite fields"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--p", common.p, "characteristic (prime >= 5)");
    app.add_option("--k", common.k, "degree of the coefficient field over F_p")->check(CLI::PositiveNumber);
    app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", common.seed, "seed for all pseudo-random choices");
    app.add_option("--threads", common.threads, "worker threads for point sweeps")->check(CLI::PositiveNumber);
    app.add_option("--data-dir", common.data_dir, "directory holding phi_<l>.txt");
    app.add_flag("--timings", common.timings, "include wall-clock timings in the report");

    json config = json::object();
    std::function<Output()> action;
    auto sub = [&](const char * name, const char * help) { return app.add_subcommand(name, help); };

    // ------------------------------------------------ primitives
    std::string j_text, j2_text, curve_text, a_text, b_text, levels_text = "", mode = "divides";
    i64 D = 0, a_int = 0, n_int = 0, dmin = 1, dmax = 100;
    int l = 2, kmax = 3, level = 1, nmax = 10, N0 = 0, count = 3, mmax = 6;
    std::optional<i64> gal_a;
    int gal_m = 1;
    bool stop_early = false, any_prime = false;
    std::vector<int> criteria;

    auto * c = sub("endo-disc", "discriminant of the endomorphism ring of E_j");
    c->add_option("j", j_text, "element of F_{p^k}")->required();
    c->callback([&] {
        config = {{"j", j_text}};
        action = [&] {
            FieldElement j = parse_element(j_text, base_field());
            Output o;
            CMOrder r = endo_discriminant(j);
            o.result = order_json(r);
            o.text.push_back(cm_text(r));
            return o;
        };
    });

    c = sub("hilbert", "Hilbert class polynomial H_D mod p");
    c->add_option("D", D)->required();
    c->add_flag("--any-prime", any_prime, "also reduce when p does not split");
    c->callback([&] {
        config = {{"D", D}, {"any_prime", any_prime}};
        action = [&] {
            Output o;
            FieldCtx F = base_field();
            UniPoly H = any_prime ? hilbert_reduce(D, make_field(F.characteristic(), 1))
                                  : hilbert_mod_p(D, F.characteristic()).poly;
            o.result = {{"D", D}, {"p", F.characteristic()}, {"degree", H.degree()}, {"poly", H.to_string("T")}};
            o.text.push_back(H.to_string("T"));
            return o;
        };
    });

    c = sub("class-number", "class number and reduced forms");
    c->add_option("D", D)->required();
    c->callback([&] {
        config = {{"D", D}};
        action = [&] {
            Output o;
            auto forms = reduced_forms(D);
            json fs = json::array();
            std::string t;
            for (auto & f : forms) {
                fs.push_back({f.a, f.b, f.c});
                t += (t.empty() ? "" : " ") + ("(" + std::to_string(f.a) + "," + std::to_string(f.b) + "," +
                                               std::to_string(f.c) + ")");
            }
            o.result = {{"D", D}, {"h", forms.size()}, {"forms", fs}};
            o.text.push_back("h(" + std::to_string(D) + ") = " + std::to_string(forms.size()));
            o.text.push_back(t);
            return o;
        };
    });

    c = sub("kronecker", "Kronecker symbol (a | n)");
    c->add_option("a", a_int)->required();
    c->add_option("n", n_int)->required();
    c->callback([&] {
        config = {{"a", a_int}, {"n", n_int}};
        action = [&] {
            Output o;
            int v = kronecker(a_int, n_int);
            o.result = {{"value", v}};
            o.text.push_back(std::to_string(v));
            return o;
        };
    });

    c = sub("find-disc", "smallest prime |D| > dmin with l inert and p split");
    c->add_option("--l", l)->required();
    c->add_option("--dmin", dmin);
    c->callback([&] {
        config = {{"l", l}, {"p", common.p}, {"dmin", dmin}};
        action = [&] {
            Output o;
            i64 r = find_test_discriminant(l, static_cast<i64>(common.p), dmin);
            o.result = {{"D", r}};
            o.text.push_back(std::to_string(r));
            return o;
        };
    });

    c = sub("inert-check", "no l-isogeny among the roots of H_D mod p");
    c->add_option("D", D)->required();
    c->add_option("--l", l)->required();
    c->callback([&] {
        config = {{"D", D}, {"l", l}, {"p", common.p}};
        action = [&] {
            Output o;
            bool r = inert_obstruction_check(D, l, common.p);
            o.verdict = r ? "pass" : "fail";
            o.code = r ? 0 : 1;
            o.result = {{"obstructed", r}, {"l_inert", kronecker(D, l) == -1}};
            o.text.push_back(r ? "no edge between roots" : "edge found between roots");
            return o;
        };
    });

    c = sub("volcano", "level and depth of j in its l-volcano");
    c->add_option("j", j_text)->required();
    c->add_option("--l", l)->required();
    c->callback([&] {
        config = {{"j", j_text}, {"l", l}};
        action = [&] {
            Output o;
            VolcanoPosition v = volcano_level(parse_element(j_text, base_field()), l);
            o.result = {{"level", v.level}, {"depth", v.depth}};
            o.text.push_back("level " + std::to_string(v.level) + " of depth " + std::to_string(v.depth));
            return o;
        };
    });

    c = sub("neighbors", "roots of Phi_l(j, T)");
    c->add_option("j", j_text)->required();
    c->add_option("--l", l)->required();
    c->callback([&] {
        config = {{"j", j_text}, {"l", l}};
        action = [&] {
            Output o;
            NeighborSet n = isogenous_neighbors(parse_element(j_text, base_field()), l);
            json rs = json::array();
            std::string t;
            for (auto & r : n.roots) {
                rs.push_back(element_json(r));
                t += (t.empty() ? "" : " ") + element_text(r);
            }
            o.result = {{"field", field_json(n.field)}, {"roots", rs}};
            o.text.push_back(t);
            return o;
        };
    });

    c = sub("isogeny-path", "horizontal isogeny path between two j-invariants");
    c->add_option("j1", j_text)->required();
    c->add_option("j2", j2_text)->required();
    c->add_option("--levels", levels_text, "comma-separated levels (default: split supported levels)");
    c->callback([&] {
        config = {{"j1", j_text}, {"j2", j2_text}, {"levels", levels_text}};
        action = [&] {
            Output o;
            FieldCtx F = base_field();
            FieldElement a = parse_element(j_text, F), b = parse_element(j2_text, F);
            std::vector<int> lv;
            if (!levels_text.empty()) {
                lv = parse_levels(levels_text);
            } else {
                CMOrder ord = endo_discriminant(a);
                for (int x : supported_levels())
                    if (static_cast<u64>(x) != common.p && kronecker(ord.D, x) == 1)
                        lv.push_back(x);
            }
            auto path = isogeny_path(a, b, lv);
            o.verdict = path ? "found" : "not-found";
            o.code = path ? 0 : 1;
            json steps = json::array();
            std::string t = element_text(a);
            if (path)
                for (auto & s : *path) {
                    steps.push_back({{"l", s.l}, {"j", element_json(s.j)}});
                    t += " -" + std::to_string(s.l) + "-> " + element_text(s.j);
                }
            o.result = {{"levels", lv}, {"path", steps}};
            o.text.push_back(path ? t : "no path within the explored component");
            return o;
        };
    });

    c = sub("cyclotomic", "Psi_n reduced mod p");
    c->add_option("n", n_int)->required()->check(CLI::PositiveNumber);
    c->callback([&] {
        config = {{"n", n_int}};
        action = [&] {
            Output o;
            UniPoly P = cyclotomic_polynomial(static_cast<u64>(n_int), base_field());
            json fs = json::array();
            for (auto & f : factor_univariate(P))
                fs.push_back(f.poly.to_string("T"));
            o.result = {{"poly", P.to_string("T")}, {"factors", fs}};
            o.text.push_back(P.to_string("T"));
            return o;
        };
    });

    c = sub("galois-threshold", "degrees of F_p(mu_{l^m}) and the stabilization index");
    c->add_option("--l", l)->required();
    c->add_option("--mmax", mmax);
    c->add_option("--a", gal_a, "also test whether zeta -> zeta^a is a Frobenius power on mu_{l^m}");
    c->add_option("--m", gal_m);
    c->callback([&] {
        config = {{"l", l}, {"p", common.p}, {"mmax", mmax}};
        if (gal_a)
            config["a"] = *gal_a, config["m"] = gal_m;
        action = [&] {
            Output o;
            auto g = stabilization_threshold(static_cast<u64>(l), common.p, mmax);
            o.result = {{"degrees", g.degrees}, {"threshold", g.threshold}};
            std::string t = "degrees";
            for (auto d : g.degrees)
                t += " " + std::to_string(d);
            o.text.push_back(t + "; threshold " + std::to_string(g.threshold));
            if (gal_a) {
                auto w = galois_exponent_witness(static_cast<u64>(l), common.p, *gal_a, gal_m);
                json wj = {{"holds", w.holds}, {"field_degree", w.field_degree},
                           {"verified_on_generator", w.verified_on_generator}};
                if (w.e)
                    wj["e"] = *w.e;
                o.result["exponent_witness"] = wj;
                o.text.push_back(w.holds ? "a = p^" + std::to_string(*w.e) + " mod l^m" +
                                               (w.verified_on_generator ? ", checked on a generator" : "")
                                         : "a is not a power of p mod l^m");
                o.result["note"] = "single exponents are sampled; infinitely many Frobenius lifts are not checked";
            }
            return o;
        };
    });

    c = sub("curve-points", "points of a plane curve over F_{p^k}");
    c->add_option("--curve", curve_text)->required();
    c->add_option("--level", level, "field degree of the points")->check(CLI::PositiveNumber);
    c->callback([&] {
        config = {{"curve", curve_text}, {"level", level}};
        action = [&] {
            Output o;
            PlaneCurve C = make_plane_curve(parse_curve(curve_text, base_field()));
            json pts = json::array();
            auto ps = enumerate_curve_points(C, level);
            for (auto & [x, y] : ps)
                pts.push_back({element_json(x), element_json(y)});
            o.result = {{"count", ps.size()}, {"points", pts}};
            o.text.push_back(std::to_string(ps.size()) + " points");
            for (std::size_t i = 0; i < ps.size() && i < 20; ++i)
                o.text.push_back("(" + element_text(ps[i].first) + ", " + element_text(ps[i].second) + ")");
            return o;
        };
    });

    // ------------------------------------------------ gates
    c = sub("ao-gate", "CM hypothesis sweep plus Frobenius-form conclusion");
    c->add_option("--curve", curve_text)->required();
    c->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
    c->add_flag("--stop-early", stop_early, "stop after the first level with a witness");
    c->callback([&] {
        config = {{"curve", curve_text}, {"kmax", kmax}, {"stop_early", stop_early}};
        action = [&] {
            PlaneCurve C = make_plane_curve(parse_curve(curve_text, base_field()));
            return from_report(andre_oort_gate(C, kmax, {stop_early}));
        };
    });

    c = sub("mult-gate", "multiplicative-order hypothesis sweep");
    c->add_option("--curve", curve_text)->required();
    c->add_option("--kmax", kmax)->check(CLI::PositiveNumber);
    c->add_option("--mode", mode)->check(CLI::IsMember({"divides", "equal"}));
    c->add_flag("--stop-early", stop_early);
    c->callback([&] {
        config = {{"curve", curve_text}, {"kmax", kmax}, {"mode", mode}, {"stop_early", stop_early}};
        action = [&] {
            PlaneCurve C = make_plane_curve(parse_curve(curve_text, base_field()));
            GateReport r = check_mult_hypothesis(C, kmax, mode == "equal" ? OrderMode::Equal : OrderMode::Divides,
                                                 {stop_early});
            Output o = from_report(r);
            if (auto s = detect_subgroup_form(C)) {
                o.text.insert(o.text.begin() + 2, "subgroup form: X^" + std::to_string(s->a) + " Y^" +
                                                      std::to_string(s->b) + " = " + element_text(s->zeta));
                o.result["subgroup_form"] = {{"a", s->a}, {"b", s->b}, {"zeta", element_json(s->zeta)},
                                             {"zeta_order", s->zeta_order}};
            }
            return o;
        };
    });

    c = sub("subgroup-detect", "match X^a Y^b = zeta");
    c->add_option("--curve", curve_text)->required();
    c->callback([&] {
        config = {{"curve", curve_text}};
        action = [&] {
            Output o;
            PlaneCurve C = make_plane_curve(parse_curve(curve_text, base_field()));
            auto s = detect_subgroup_form(C);
            o.verdict = s ? "found" : "absent";
            if (s) {
                o.result = {{"a", s->a}, {"b", s->b}, {"zeta", element_json(s->zeta)}, {"zeta_order", s->zeta_order}};
                o.text.push_back("X^" + std::to_string(s->a) + " Y^" + std::to_string(s->b) + " = " +
                                 element_text(s->zeta) + " (root of unity of order " +
                                 std::to_string(s->zeta_order) + ")");
            } else {
                o.text.push_back("absent");
            }
            o.code = s ? 0 : 1;
            return o;
        };
    });

    auto pair_from_text = [&] {
        FieldCtx F = base_field();
        return make_ring_pair(parse_ring_element(a_text, F), parse_ring_element(b_text, F));
    };

    c = sub("support-modular", "H_D support problem over F_q[t]");
    c->add_option("--A", a_text)->required();
    c->add_option("--B", b_text)->required();
    c->add_option("--dmax", dmax, "every discriminant with |D| <= dmax")->check(CLI::PositiveNumber);
    c->callback([&] {
        config = {{"A", a_text}, {"B", b_text}, {"dmax", dmax}};
        action = [&] { return from_report(modular_support_check(pair_from_text(), discriminants_up_to(dmax))); };
    });

    c = sub("support-mult", "A^n - 1 support problem");
    c->add_option("--A", a_text)->required();
    c->add_option("--B", b_text)->required();
    c->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
    c->add_option("--N0", N0)->check(CLI::NonNegativeNumber);
    c->callback([&] {
        config = {{"A", a_text}, {"B", b_text}, {"nmax", nmax}, {"N0", N0}};
        action = [&] { return from_report(mult_support_check(pair_from_text(), nmax, N0)); };
    });

    c = sub("support-cyclo", "Psi_n(A) support problem");
    c->add_option("--A", a_text)->required();
    c->add_option("--B", b_text)->required();
    c->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
    c->add_option("--N0", N0)->check(CLI::NonNegativeNumber);
    c->callback([&] {
        config = {{"A", a_text}, {"B", b_text}, {"nmax", nmax}, {"N0", N0}};
        action = [&] { return from_report(cyclo_support_check(pair_from_text(), nmax, N0)); };
    });

    c = sub("construct-points", "points with x = y^{p^n}");
    c->add_option("--curve", curve_text)->required();
    c->add_option("--nmax", nmax)->check(CLI::PositiveNumber);
    c->add_option("--count", count)->check(CLI::PositiveNumber);
    c->callback([&] {
        config = {{"curve", curve_text}, {"nmax", nmax}, {"count", count}};
        action = [&] {
            Output o;
            PlaneCurve C = make_plane_curve(parse_curve(curve_text, base_field()));
            bool all = true;
            for (auto & w : construct_frobenius_points(C, nmax, count)) {
                o.witnesses.push_back(to_json(w));
                all = all && w.all_checks();
                o.text.push_back("n = " + std::to_string(w.n) + ": x = " + element_text(w.x) + ", y = " +
                                 element_text(w.y) + ", order " + std::to_string(w.order) + ", cm " + w.cm_status +
                                 (w.cm ? " " + cm_text(*w.cm) : "") + (w.all_checks() ? "" : " CHECK FAILED"));
            }
            o.verdict = all ? "pass" : "fail";
            o.code = all ? 0 : 3;
            o.bounds = {{"p", common.p}, {"nmax", nmax}, {"count", count}};
            return o;
        };
    });

    c = sub("selftest", "run the acceptance suite");
    c->add_option("criteria", criteria, "criterion numbers (default: all)");
    c->callback([&] {
        config = {{"criteria", criteria}};
        action = [&] {
            Output o;
            std::ostringstream log;
            auto rs = run_acceptance({criteria.begin(), criteria.end()}, log);
            bool all = true;
            json list = json::array();
            for (auto & r : rs) {
                all = all && r.passed;
                list.push_back({{"criterion", r.id}, {"name", r.name}, {"passed", r.passed}, {"summary", r.summary}});
            }
            o.result = {{"criteria", list}};
            o.verdict = all ? "pass" : "fail";
            o.code = all ? 0 : 1;
            std::string line;
            for (std::istringstream in(log.str()); std::getline(in, line);)
                o.text.push_back(line);
            return o;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    settings().seed = common.seed;
    settings().threads = common.threads;
    if (!common.data_dir.empty())
        settings().data_dir = common.data_dir;

    json full_config = {{"p", common.p}, {"k", common.k}, {"seed", common.seed}, {"format", common.format}};
    for (auto & [key, v] : config.items())
        full_config[key] = v;
    std::string command = app.get_subcommands().front()->get_name();

    auto t0 = std::chrono::steady_clock::now();
    Output out;
    try {
        out = action();
    } catch (const Error & e) {
        out = Output{};
        out.verdict = "error";
        out.code = exit_code_for(e.code());
        out.result = {{"error", error_name(e.code())}, {"message", e.what()}};
        out.text = {std::string("error: ") + e.what()};
        std::cerr << out.text.front() << std::endl;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (common.format == "json") {
        json doc = {{"command", command},        {"config", full_config},         {"verdict", out.verdict},
                    {"witnesses", out.witnesses}, {"exceptions", out.exceptions}, {"bounds", out.bounds},
                    {"timings", common.timings ? json{{"total_seconds", secs}} : json::object()},
                    {"result", out.result}};
        std::cout << doc.dump(2) << std::endl;
    } else {
        for (auto & line : out.text)
            if (out.verdict != "error")
                std::cout << line << "\n";
        if (common.timings)
            std::cout << "time: " << secs << " s\n";
        std::cout.flush();
    }
    return out.code;
}
