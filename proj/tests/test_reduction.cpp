#include "narayana/reduction.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace narayana;
using namespace narayana::reduction;
using mp::Interval;

namespace {
const ReductionContext& context(int g) {
    static std::map<int, std::unique_ptr<ReductionContext>> cache;
    auto& slot = cache[g];
    if (!slot) slot = std::make_unique<ReductionContext>(g, default_M(), 1200, 210);
    return *slot;
}
}  // namespace

TEST(ContinuedFraction, RationalTerminates) {
    const auto c = continued_fraction_convergents(Interval::from_ratio(13, 4, 128), mpz_class(1000));
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[0], (Convergent{3, 1}));
    EXPECT_EQ(c[1], (Convergent{13, 4}));
}

TEST(ContinuedFraction, SquareRootOfTwo) {
    const auto c = continued_fraction_convergents(sqrt(Interval::from_long(2, 256)), mpz_class(100));
    const std::vector<Convergent> want = {{1, 1}, {3, 2}, {7, 5}, {17, 12}, {41, 29}, {99, 70}, {239, 169}};
    EXPECT_EQ(c, want);
}

TEST(ContinuedFraction, GoldenRatioGivesFibonacciDenominators) {
    const Interval phi = (Interval::from_long(1, 512) + sqrt(Interval::from_long(5, 512))) / Interval::from_long(2, 512);
    const auto c = continued_fraction_convergents(phi, mpz_class("1000000000000"));
    for (std::size_t i = 2; i < c.size(); ++i) EXPECT_EQ(c[i].q, c[i - 1].q + c[i - 2].q);
    for (const auto& x : c) {
        mpz_class det = x.p * x.p - x.p * x.q - x.q * x.q;
        EXPECT_TRUE(det == 1 || det == -1);
    }
}

TEST(ContinuedFraction, LowPrecisionRunsOut) {
    EXPECT_THROW(continued_fraction_convergents(sqrt(Interval::from_long(2, 64)), mpz_class("1" + std::string(60, '0'))),
                 mp::PrecisionExhausted);
    EXPECT_THROW(continued_fraction_convergents(Interval::from_long(-1, 64), mpz_class(10)), std::invalid_argument);
}

TEST(ContinuedFraction, CertifiedAgreesUnderDoubling) {
    const auto c = certified_convergents([](mpfr_prec_t b) { return log(Interval::from_long(3, b)); }, 400,
                                         mpz_class("1" + std::string(30, '0')));
    EXPECT_GT(c.back().q, mpz_class("1" + std::string(30, '0')));
}

TEST(Convergents, FirstBeyondSixMForG2) {
    const auto& ctx = context(2);
    EXPECT_EQ(convergent_number(ctx.first_convergent()), 118u);
    const auto& cv = ctx.convergents();
    EXPECT_GT(cv[ctx.first_convergent()].q, 6 * default_M());
    EXPECT_LE(cv[ctx.first_convergent() - 1].q, 6 * default_M());
    EXPECT_EQ(default_M(), mpz_class("199" + std::string(52, '0')));
}

TEST(Convergents, FirstIndexPerBase) {
    const int want[] = {118, 99, 110, 115, 90, 106, 112, 102, 96};
    for (int g = 2; g <= 10; ++g) EXPECT_EQ(convergent_number(context(g).first_convergent()), want[g - 2]) << g;
}

TEST(DujellaPetho, SyntheticProblem) {
    // tau = sqrt 2, mu = sqrt 3 / 7
    const mpfr_prec_t p = 600;
    ReductionProblem prob;
    prob.tau = sqrt(Interval::from_long(2, p));
    prob.mu = sqrt(Interval::from_long(3, p)) / Interval::from_long(7, p);
    prob.A = Interval::from_long(10, p);
    prob.B = Interval::from_long(2, p);
    prob.M = mpz_class(1000000);
    prob.label = "synthetic";
    const auto conv = continued_fraction_convergents(prob.tau, mpz_class("1" + std::string(20, '0')));
    const auto w = dujella_petho(prob, conv);
    EXPECT_GT(w.q, 6 * prob.M);
    EXPECT_TRUE(w.epsilon.certainly_positive());
    const double q = w.q.get_d();
    const double eps = w.epsilon.midpoint().to_double();
    EXPECT_NEAR(w.w_bound, std::log(10 * q / eps) / std::log(2.0), 1e-6);
    EXPECT_EQ(conv[w.t], (Convergent{w.p, w.q}));
}

TEST(DujellaPetho, RationalMuHasNoWitness) {
    // mu = 0 gives ||mu q|| = 0 for every q
    const mpfr_prec_t p = 400;
    ReductionProblem prob{sqrt(Interval::from_long(2, p)), Interval::from_long(0, p), Interval::from_long(1, p),
                          Interval::from_long(2, p), mpz_class(100), "mu=0"};
    const auto conv = continued_fraction_convergents(prob.tau, mpz_class("1" + std::string(15, '0')));
    EXPECT_THROW(dujella_petho(prob, conv), NoWitness);
    prob.B = Interval::from_long(1, p);
    EXPECT_THROW(dujella_petho(prob, conv), std::invalid_argument);
}

TEST(Sweep, MuIsSymmetricInTheTwoLengths) {
    const auto& ctx = context(5);
    for (auto [l, m] : {std::pair{1, 2}, {3, 40}, {12, 77}}) {
        const Interval a = ctx.mu(24, l, m);
        const Interval b = ctx.mu(24, m, l);
        EXPECT_TRUE(a.contains(b.midpoint()) || b.contains(a.midpoint()));
    }
    EXPECT_THROW(ctx.mu(1, 300, 1), std::out_of_range);
}

TEST(Sweep, DigitTriples) {
    EXPECT_EQ(digit_triples(2).size(), 1u);
    EXPECT_EQ(digit_triples(10).size(), 165u);
}

TEST(Sweep, Step1) {
    const auto r2 = sweep_step1(context(2));
    EXPECT_EQ(r2.bound, 193);
    EXPECT_LE(std::abs(r2.bound - 194), 2);
    EXPECT_GE(r2.worst.epsilon, 0.36);
    EXPECT_EQ(r2.instances, 1u);
    const auto r10 = sweep_step1(context(10));
    EXPECT_EQ(r10.bound, 58);
    EXPECT_EQ(r10.instances, 165u);
    EXPECT_TRUE(r10.unresolved.empty());
}

TEST(Sweep, Step2) {
    const auto s5 = sweep_step2(context(5), sweep_step1(context(5)).bound);
    EXPECT_EQ(s5.bound, 87);
    const auto s2 = sweep_step2(context(2), sweep_step1(context(2)).bound);
    EXPECT_EQ(s2.bound, 198);
    const auto s9 = sweep_step2(context(9), sweep_step1(context(9)).bound);
    EXPECT_EQ(s9.bound, 63);
}

TEST(Sweep, Step3) {
    const auto& ctx = context(7);
    const int l = sweep_step1(ctx).bound;
    const int m = sweep_step2(ctx, l).bound;
    const auto r = sweep_step3(ctx, l, m);
    EXPECT_EQ(r.bound, 75);
    EXPECT_EQ(r.instances, static_cast<std::size_t>(56 * l * m));
    EXPECT_TRUE(r.unresolved.empty());
    ASSERT_TRUE(r.bound_half_A && r.bound_m_le_183);
    EXPECT_LE(*r.bound_half_A, r.bound);
    EXPECT_LE(*r.bound_m_le_183, r.bound);
}

TEST(Sweep, EveryWitnessIsBeyondSixM) {
    const auto& ctx = context(3);
    const auto r = sweep_step2(ctx, 30);
    std::size_t counted = 0;
    for (const auto& o : r.outcomes) {
        ASSERT_TRUE(o.resolved);
        EXPECT_GE(o.t, ctx.first_convergent());
        EXPECT_GT(ctx.convergents()[o.t].q, 6 * default_M());
        EXPECT_GT(o.epsilon, 0);
        EXPECT_LE(o.bound, r.bound);
        ++counted;
    }
    EXPECT_EQ(counted, r.instances);
    std::size_t hist = 0;
    for (const auto& [t, n] : r.convergent_histogram) hist += n;
    EXPECT_EQ(hist, r.instances);
}

TEST(Sweep, ThreadCountDoesNotChangeResults) {
    const auto& ctx = context(4);
    const auto a = sweep_step3(ctx, 10, 20, 1);
    const auto b = sweep_step3(ctx, 10, 20, 4);
    ASSERT_EQ(a.outcomes.size(), b.outcomes.size());
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
        EXPECT_EQ(a.outcomes[i].label(), b.outcomes[i].label());
        EXPECT_EQ(a.outcomes[i].t, b.outcomes[i].t);
        EXPECT_EQ(a.outcomes[i].w_bound, b.outcomes[i].w_bound);
    }
}

TEST(Certification, PrecisionDoublingAgrees) {
    const ReductionContext lo(3, default_M(), 1200, 130);
    const ReductionContext hi(3, default_M(), 2400, 130);
    const auto a = sweep_step2(lo, 120);
    const auto b = sweep_step2(hi, 120);
    const auto cmp = compare_precisions(lo, a, hi, b);
    EXPECT_TRUE(cmp.convergents_identical);
    EXPECT_TRUE(cmp.witnesses_identical);
    EXPECT_TRUE(cmp.bounds_identical);
    EXPECT_EQ(cmp.mismatched_instances, 0u);
}

TEST(Certification, WitnessReverified) {
    const auto r = sweep_step1(context(2));
    const auto chk = reverify_witness(2, 1, r.worst, default_M(), 3000);
    EXPECT_TRUE(chk.q_exceeds_6M);
    EXPECT_TRUE(chk.coprime);
    EXPECT_TRUE(chk.epsilon_positive);
    EXPECT_TRUE(chk.same_convergent);
    EXPECT_TRUE(chk.w_bound_consistent);
}

TEST(Certification, TamperedWitnessIsCaught) {
    auto o = sweep_step1(context(2)).worst;
    o.t += 1;
    EXPECT_FALSE(reverify_witness(2, 1, o, default_M(), 2400).all());
}
