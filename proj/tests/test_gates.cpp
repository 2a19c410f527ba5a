#include "cmgate/gates.hpp"
#include "cmgate/parse.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace cmgate;

namespace {

FieldCtx F5() { return make_field(5, 1); }

PlaneCurve curve(const std::string & s, FieldCtx F = F5()) { return make_plane_curve(parse_curve(s, F)); }

RingElementPair pair(const std::string & a, const std::string & b, FieldCtx F = F5())
{
    return make_ring_pair(parse_ring_element(a, F), parse_ring_element(b, F));
}

ErrorCode code_of(auto f)
{
    try {
        f();
    } catch (const Error & e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::InvalidArgument;
}

const std::vector<std::string> corpus{"X - Y", "X - Y^5", "X - Y^25", "Y - X^5", "X + Y - 1", "X*Y - 1",
                                      "X^2 - 2*Y", "X - 2*Y + 3", "X^2 + Y^2 - 1", "Y^2 - X^3 - X - 1"};

} // namespace

TEST(PlaneCurve, Validation)
{
    FieldCtx F = F5();
    EXPECT_EQ(code_of([&] { make_plane_curve(BiPoly(F)); }), ErrorCode::ZeroPolynomial);
    EXPECT_EQ(code_of([&] { curve("3"); }), ErrorCode::ConstantPolynomial);
    EXPECT_EQ(code_of([&] { curve("X^2 - Y^2"); }), ErrorCode::ReducibleCurve);
    EXPECT_EQ(code_of([&] { pair("t", "2"); }), ErrorCode::ConstantRingElement);
    EXPECT_EQ(code_of([&] { make_ring_pair(parse_ring_element("t", F), parse_ring_element("t", make_field(7, 1))); }),
              ErrorCode::ContextMismatch);
}

TEST(CurvePoints, Examples)
{
    auto diag = enumerate_curve_points(curve("X - Y"), 1);
    ASSERT_EQ(diag.size(), 5u);
    for (auto & [x, y] : diag)
        EXPECT_EQ(x, y);
    EXPECT_EQ(enumerate_curve_points(curve("X + Y - 1"), 1).size(), 5u);
    auto hyp = enumerate_curve_points(curve("X*Y - 1"), 1);
    ASSERT_EQ(hyp.size(), 4u);
    for (auto & [x, y] : hyp)
        EXPECT_TRUE((x * y).is_one());
}

TEST(CurvePoints, MatchBruteForce)
{
    for (auto & s : corpus) {
        PlaneCurve C = curve(s);
        for (int k : {1, 2}) {
            FieldCtx L = make_field(5, k);
            std::set<CurvePoint> brute;
            for (auto x : enumerate_elements(L))
                for (auto y : enumerate_elements(L))
                    if (eval_bi(C.f, x, y).is_zero())
                        brute.insert({x, y});
            auto got = enumerate_curve_points(C, k);
            EXPECT_EQ(std::set<CurvePoint>(got.begin(), got.end()), brute) << s << " k=" << k;
            EXPECT_EQ(got.size(), brute.size());
        }
    }
}

TEST(SupersingularCount, Formula)
{
    EXPECT_EQ(supersingular_j_count(5), 1u);
    EXPECT_EQ(supersingular_j_count(13), 1u);
    EXPECT_EQ(supersingular_j_count(11), 2u);
    EXPECT_EQ(supersingular_j_count(37), 3u);
}

TEST(CmHypothesis, Examples)
{
    GateReport frob = check_cm_hypothesis(curve("X - Y^5"), 3);
    EXPECT_EQ(frob.verdict, Verdict::Pass);
    EXPECT_TRUE(frob.witnesses.empty());
    for (auto & e : frob.exceptions)
        EXPECT_EQ(e.reason, "supersingular");
    EXPECT_EQ(check_cm_hypothesis(curve("X - Y"), 3).verdict, Verdict::Pass);

    GateReport line = check_cm_hypothesis(curve("X + Y - 1"), 4);
    EXPECT_EQ(line.verdict, Verdict::Fail);
    ASSERT_FALSE(line.witnesses.empty());
    EXPECT_EQ(line.witnesses.front().kind, "cm-mismatch");
}

TEST(CmHypothesis, WitnessesAreSound)
{
    for (auto & s : corpus) {
        PlaneCurve C = curve(s);
        GateReport r = check_cm_hypothesis(C, 3);
        for (auto & w : r.witnesses) {
            FieldCtx L = common_field(w.x.ctx(), w.y.ctx());
            EXPECT_TRUE(eval_bi(C.f, embed(w.x, L), embed(w.y, L)).is_zero());
            EXPECT_FALSE(is_supersingular_j(w.x));
            EXPECT_FALSE(is_supersingular_j(w.y));
            if (w.cm_x && w.cm_y) {
                EXPECT_EQ(*w.cm_x, endo_discriminant_hilbert(w.x));
                EXPECT_EQ(*w.cm_y, endo_discriminant_hilbert(w.y));
                EXPECT_NE(w.cm_x->D, w.cm_y->D);
            } else {
                EXPECT_NE(curve_invariants(w.x).d_K, curve_invariants(w.y).d_K);
            }
            EXPECT_TRUE(verify_cm_witness(C, w));
        }
        // exceptions stay within the supersingular count per level
        std::map<int, u64> per_level;
        for (auto & e : r.exceptions)
            if (e.reason == "supersingular")
                ++per_level[e.level];
        for (auto & [lvl, n] : per_level)
            EXPECT_LE(n, 2 * (C.f.deg_x() + C.f.deg_y()) * supersingular_j_count(5)) << s;
    }
}

TEST(FrobeniusConclusion, Patterns)
{
    auto a = check_frobenius_conclusion(curve("X - Y^25"));
    ASSERT_TRUE(a);
    EXPECT_EQ(a->direction, "X=Y^{p^n}");
    EXPECT_EQ(a->n, 2);
    auto b = check_frobenius_conclusion(curve("3*X - 3*Y"));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->n, 0);
    auto c = check_frobenius_conclusion(curve("Y - X^5"));
    ASSERT_TRUE(c);
    EXPECT_EQ(c->direction, "Y=X^{p^n}");
    EXPECT_EQ(c->n, 1);
    EXPECT_FALSE(check_frobenius_conclusion(curve("X*Y - 1")));
    EXPECT_FALSE(check_frobenius_conclusion(curve("X - Y^2")));
    EXPECT_FALSE(check_frobenius_conclusion(curve("X - 2*Y")));
}

TEST(AndreOortGate, Examples)
{
    GateReport a = andre_oort_gate(curve("X - Y^5"), 3);
    EXPECT_EQ(a.verdict, Verdict::Pass);
    ASSERT_TRUE(a.conclusion);
    EXPECT_EQ(a.conclusion_detail["n"], 1);
    EXPECT_FALSE(a.sentinel);

    GateReport b = andre_oort_gate(curve("X + Y - 1"), 3);
    EXPECT_EQ(b.verdict, Verdict::Fail);
    EXPECT_FALSE(b.conclusion);
    EXPECT_FALSE(b.sentinel);

    GateReport c = andre_oort_gate(curve("X - Y"), 2);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.conclusion_detail["n"], 0);
}

TEST(AndreOortGate, NoSentinelOnCorpus)
{
    for (auto & s : corpus) {
        GateReport r = andre_oort_gate(curve(s), 2);
        EXPECT_FALSE(r.sentinel) << s << ": " << r.sentinel_reason;
        if (r.verdict == Verdict::Pass)
            EXPECT_TRUE(r.conclusion) << s;
        if (r.conclusion)
            EXPECT_EQ(r.verdict, Verdict::Pass) << s;
    }
}

TEST(AndreOortGate, ThreadCountDoesNotChangeResult)
{
    unsigned saved = settings().threads;
    settings().threads = 1;
    GateReport a = andre_oort_gate(curve("X^2 + Y^2 - 1"), 2);
    settings().threads = 4;
    GateReport b = andre_oort_gate(curve("X^2 + Y^2 - 1"), 2);
    settings().threads = saved;
    ASSERT_EQ(a.witnesses.size(), b.witnesses.size());
    for (std::size_t i = 0; i < a.witnesses.size(); ++i) {
        EXPECT_EQ(a.witnesses[i].x, b.witnesses[i].x);
        EXPECT_EQ(a.witnesses[i].y, b.witnesses[i].y);
    }
}

TEST(MultHypothesis, Examples)
{
    EXPECT_EQ(check_mult_hypothesis(curve("X - Y^5"), 3, OrderMode::Equal).verdict, Verdict::Pass);
    EXPECT_EQ(check_mult_hypothesis(curve("X*Y - 1"), 3, OrderMode::Equal).verdict, Verdict::Pass);
    GateReport r = check_mult_hypothesis(curve("X + Y - 1"), 2, OrderMode::Divides);
    EXPECT_EQ(r.verdict, Verdict::Fail);
    ASSERT_FALSE(r.witnesses.empty());
    for (auto & w : r.witnesses) {
        EXPECT_EQ(w.kind, "order-mismatch");
        EXPECT_EQ(multiplicative_order(w.x), w.ord_x);
        EXPECT_EQ(multiplicative_order(w.y), w.ord_y);
        EXPECT_NE(w.ord_x % w.ord_y, 0u);
    }
}

TEST(SubgroupForm, Examples)
{
    auto a = detect_subgroup_form(curve("X*Y - 1"));
    ASSERT_TRUE(a);
    EXPECT_EQ(a->a, 1);
    EXPECT_EQ(a->b, 1);
    EXPECT_TRUE(a->zeta.is_one());
    auto b = detect_subgroup_form(curve("X^2 - 2*Y"));
    ASSERT_TRUE(b);
    EXPECT_EQ(b->a, 2);
    EXPECT_EQ(b->b, -1);
    EXPECT_EQ(b->zeta, F5().from_int(2));
    EXPECT_EQ(b->zeta_order, 4u);
    EXPECT_FALSE(detect_subgroup_form(curve("X + Y - 1")));
}

TEST(ModularSupport, Examples)
{
    auto Ds = discriminants_up_to(40);
    GateReport a = modular_support_check(pair("t", "t^5"), Ds);
    EXPECT_EQ(a.verdict, Verdict::Pass);
    EXPECT_EQ(a.conclusion_detail["n"], 1);

    GateReport b = modular_support_check(pair("t", "t + 1"), Ds);
    EXPECT_EQ(b.verdict, Verdict::Fail);
    ASSERT_FALSE(b.support_witnesses.empty());
    for (auto & w : b.support_witnesses) {
        FieldCtx F = w.Q.ctx();
        UniPoly H = hilbert_reduce(w.index, make_field(5, 1));
        EXPECT_TRUE(H(w.Q).is_zero());
        EXPECT_FALSE(H(w.Q + F.one()).is_zero());
    }

    GateReport c = modular_support_check(pair("t^2 + 1", "t^2 + 1"), Ds);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.conclusion_detail["n"], 0);
}

TEST(ModularSupport, FrobeniusTwistsAlwaysPass)
{
    auto Ds = discriminants_up_to(30);
    for (std::string A : {"t", "t^2 + 2", "t^3 - t + 1", "2*t + 3"}) {
        std::string B = "(" + A + ")^5";
        GateReport r = modular_support_check(pair(A, B), Ds);
        EXPECT_EQ(r.verdict, Verdict::Pass) << A;
        EXPECT_FALSE(r.sentinel) << A;
    }
}

TEST(MultSupport, Examples)
{
    GateReport a = mult_support_check(pair("t", "t^2"), 8);
    EXPECT_EQ(a.verdict, Verdict::Pass);
    EXPECT_EQ(a.conclusion_detail["k"], 2);
    EXPECT_EQ(a.conclusion_detail["m"], 0);

    GateReport b = mult_support_check(pair("t^2", "t"), 8);
    EXPECT_EQ(b.verdict, Verdict::Fail);
    for (auto & w : b.support_witnesses) {
        EXPECT_TRUE(w.A_Q.pow(static_cast<u64>(w.index)).is_one());
        EXPECT_FALSE(w.B_Q.pow(static_cast<u64>(w.index)).is_one());
    }

    GateReport c = mult_support_check(pair("t", "t^5"), 8);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_TRUE(c.conclusion);
}

TEST(CycloSupport, Examples)
{
    GateReport a = cyclo_support_check(pair("t", "t^5"), 12);
    EXPECT_EQ(a.verdict, Verdict::Pass);
    EXPECT_EQ(a.conclusion_detail["m"], 1);

    GateReport b = cyclo_support_check(pair("t", "t^2"), 8);
    EXPECT_EQ(b.verdict, Verdict::Fail);
    for (auto & w : b.support_witnesses) {
        UniPoly psi = cyclotomic_polynomial(static_cast<u64>(w.index), F5());
        EXPECT_TRUE(psi(w.A_Q).is_zero());
        EXPECT_FALSE(psi(w.B_Q).is_zero());
    }

    GateReport c = cyclo_support_check(pair("t + 2", "t + 2"), 8);
    EXPECT_EQ(c.verdict, Verdict::Pass);
    EXPECT_EQ(c.conclusion_detail["m"], 0);
}

TEST(SupportGates, MonotoneInRange)
{
    for (auto [a, b] : {std::pair{"t^2", "t"}, {"t", "t^2"}, {"t", "t + 1"}, {"t", "t^5"}, {"t^3", "t"}}) {
        for (auto check : {mult_support_check, cyclo_support_check}) {
            GateReport small = check(pair(a, b), 6, 0), big = check(pair(a, b), 12, 0);
            if (big.verdict == Verdict::Pass)
                EXPECT_EQ(small.verdict, Verdict::Pass) << a << " " << b;
            // failing indices persist
            std::set<i64> fs, fb;
            for (auto & c : small.checks)
                if (c.status == "fails")
                    fs.insert(c.index);
            for (auto & c : big.checks)
                if (c.status == "fails")
                    fb.insert(c.index);
            EXPECT_TRUE(std::includes(fb.begin(), fb.end(), fs.begin(), fs.end())) << a << " " << b;
        }
    }
}

TEST(SupportGates, OffsetSkipsSmallIndices)
{
    GateReport r = mult_support_check(pair("t^2", "t"), 10, 5);
    for (auto & c : r.checks)
        EXPECT_GT(c.index, 5);
}

TEST(FrobeniusPoints, Examples)
{
    for (std::string s : {"X + Y - 1", "X - Y", "X*Y - 1"}) {
        PlaneCurve C = curve(s);
        auto ws = construct_frobenius_points(C, 3, 4);
        ASSERT_FALSE(ws.empty()) << s;
        EXPECT_LE(ws.size(), 4u);
        for (auto & w : ws) {
            EXPECT_TRUE(w.all_checks()) << s;
            FieldCtx L = common_field(w.x.ctx(), w.y.ctx());
            FieldElement x = embed(w.x, L), y = embed(w.y, L);
            EXPECT_EQ(x, frobenius_power(y, static_cast<u64>(w.n)));
            EXPECT_TRUE(eval_bi(C.f, x, y).is_zero());
            if (!x.is_zero())
                EXPECT_EQ(multiplicative_order(x), multiplicative_order(y));
            if (w.cm)
                EXPECT_EQ(endo_discriminant(x), endo_discriminant(y));
        }
    }
    // XY - 1 with n = 1: x = y^5 = 1/y, so y^6 = 1
    for (auto & w : construct_frobenius_points(curve("X*Y - 1"), 1, 6))
        EXPECT_TRUE(w.y.pow(6).is_one());
}

TEST(FrobeniusPoints, Errors)
{
    EXPECT_EQ(code_of([] { construct_frobenius_points(curve("X - 2"), 2, 1); }), ErrorCode::DegenerateCurve);
}
