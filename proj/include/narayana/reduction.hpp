#pragma once

// Continued fractions of certified reals and the Dujella-Petho reduction.
//
// Reduction criterion: let M be a positive integer, p/q a convergent of the irrational tau
// with q > 6M, A > 0, B > 1 and eps = ||mu q|| - M ||tau q||. If eps > 0 there
// is no solution of 0 < |u tau - v + mu| < A B^-w in positive integers with
// u <= M and w >= log(A q / eps) / log B.
//
// ||-x|| = ||x||, so the sign convention of mu in the linear forms is immaterial.

#include "narayana/algebraic.hpp"
#include "narayana/mp.hpp"
#include "narayana/parallel.hpp"

#include <gmpxx.h>

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace narayana::reduction {

// Position of convergent t in the usual 1-based numbering, where p_1/q_1 = a_0/1.
inline std::size_t convergent_number(std::size_t t) { return t + 1; }

struct Convergent {
    mpz_class p;
    mpz_class q;
    friend bool operator==(const Convergent& a, const Convergent& b) { return a.p == b.p && a.q == b.q; }
};

// Convergents p_t/q_t (t = 0, 1, ...) of x up to and including the first
// with q > q_target. Every partial quotient is decided by the enclosure;
// a rational x yields its finite expansion.
inline std::vector<Convergent> continued_fraction_convergents(const mp::Interval& x, const mpz_class& q_target) {
    if (!x.certainly_positive()) throw std::invalid_argument("continued fraction input must be positive");
    std::vector<Convergent> out;
    mpz_class p_prev = 1, q_prev = 0, p_prev2 = 0, q_prev2 = 1;
    mp::Interval y = x;
    for (;;) {
        const auto a = y.floor_if_determined();
        if (!a) throw mp::PrecisionExhausted("continued fraction: partial quotient undetermined after " +
                                              std::to_string(out.size()) + " terms");
        mpz_class p = *a * p_prev + p_prev2;
        mpz_class q = *a * q_prev + q_prev2;
        p_prev2 = std::exchange(p_prev, p);
        q_prev2 = std::exchange(q_prev, q);
        out.push_back({std::move(p), std::move(q)});
        if (out.back().q > q_target) break;
        mp::Interval frac = y - mp::Interval::from_mpz(*a, y.precision());
        if (frac.is_point() && frac.contains_zero()) break;
        if (frac.contains_zero())
            throw mp::PrecisionExhausted("continued fraction: remainder straddles zero after " +
                                         std::to_string(out.size()) + " terms");
        y = mp::Interval::from_long(1, y.precision()) / frac;
    }
    return out;
}

// Runs the expansion at `bits` and at 2 * bits; the lists must coincide.
template <class Enclose>
std::vector<Convergent> certified_convergents(Enclose&& enclose, mpfr_prec_t bits, const mpz_class& q_target) {
    auto single = continued_fraction_convergents(enclose(bits), q_target);
    auto doubled = continued_fraction_convergents(enclose(2 * bits), q_target);
    if (single != doubled)
        throw mp::PrecisionExhausted("continued fraction changed under precision doubling");
    return single;
}

struct ReductionProblem {
    mp::Interval tau;
    mp::Interval mu;
    mp::Interval A;
    mp::Interval B;
    mpz_class M;
    std::string label;
};

struct ConvergentWitness {
    std::size_t t = 0;  // convergent index
    mpz_class p;
    mpz_class q;
    mp::Interval epsilon;
    double w_bound = 0;  // upper bound on log(A q / eps) / log B
};

class NoWitness : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Per-tau data shared by every mu: q_t, M ||tau q_t|| and log q_t.
struct ScanTable {
    std::vector<Convergent> convergents;
    std::size_t first = 0;  // smallest t with q_t > 6M
    std::vector<mp::Interval> q;
    std::vector<mp::Interval> m_tau_distance;
    std::vector<mp::Interval> log_q;  // 64-bit enclosures

    ScanTable(std::vector<Convergent> convs, const mp::Interval& tau, const mpz_class& M) : convergents(std::move(convs)) {
        if (M < 1) throw std::invalid_argument("M must be a positive integer");
        const mpz_class six_m = 6 * M;
        while (first < convergents.size() && convergents[first].q <= six_m) ++first;
        const mpfr_prec_t prec = tau.precision();
        const mp::Interval m_iv = mp::Interval::from_mpz(M, prec);
        for (std::size_t t = first; t < convergents.size(); ++t) {
            q.push_back(mp::Interval::from_mpz(convergents[t].q, prec));
            m_tau_distance.push_back(m_iv * distance_to_nearest_integer(tau * q.back()));
            log_q.push_back(log(mp::Interval::from_mpz(convergents[t].q, 64)));
        }
    }
    std::size_t size() const { return q.size(); }
};

struct ScanResult {
    std::size_t t;
    mp::Interval epsilon;
};

// First t >= first with certainly positive eps; nullopt if none is available.
inline std::optional<ScanResult> scan(const mp::Interval& mu, const ScanTable& table) {
    for (std::size_t i = 0; i < table.size(); ++i) {
        mp::Interval eps = distance_to_nearest_integer(mu * table.q[i]) - table.m_tau_distance[i];
        if (eps.certainly_positive()) return ScanResult{table.first + i, std::move(eps)};
        if (mpfr_sgn(eps.upper().get()) > 0)
            throw mp::PrecisionExhausted("sign of epsilon undecided at convergent " + std::to_string(table.first + i));
    }
    return std::nullopt;
}

// Upper bound on (log A + log q - log eps) / log B.
inline double w_bound(const mp::Interval& log_a64, const mp::Interval& log_q64, const mp::Interval& eps,
                      const mp::Interval& log_b64) {
    const mp::Interval w = (log_a64 + log_q64 - log(eps.with_precision(64))) / log_b64;
    return w.upper().to_double(MPFR_RNDU);
}

}  // namespace detail

// First convergent with q > 6M and eps > 0, scanning onward while eps <= 0.
inline ConvergentWitness dujella_petho(const ReductionProblem& problem, std::span<const Convergent> convergents) {
    if (!problem.A.certainly_positive()) throw std::invalid_argument("dujella_petho: A must be positive");
    if (!certainly_lt(mp::Interval::from_long(1, 64), problem.B).value_or(false))
        throw std::invalid_argument("dujella_petho: B must exceed 1");
    const detail::ScanTable table({convergents.begin(), convergents.end()}, problem.tau, problem.M);
    if (table.size() == 0) throw NoWitness(problem.label + ": no convergent with q > 6M");
    const auto hit = detail::scan(problem.mu, table);
    if (!hit) throw NoWitness(problem.label + ": eps <= 0 for every available convergent");
    ConvergentWitness w;
    w.t = hit->t;
    w.p = table.convergents[hit->t].p;
    w.q = table.convergents[hit->t].q;
    w.w_bound = detail::w_bound(log(problem.A.with_precision(64)), table.log_q[hit->t - table.first], hit->epsilon,
                                log(problem.B.with_precision(64)));
    w.epsilon = hit->epsilon;
    return w;
}

// ---------------------------------------------------------------------------
// Sweeps over (d1, d2, d3, l, m) for the three linear forms.

// Multiplier on 1 / log alpha in the bound A of each step.
inline long A_numerator(int step) { return step == 1 ? 16 : 8; }

// Reduction data for one base g at one working precision.
class ReductionContext {
public:
    ReductionContext(int g, mpz_class M, int precision_bits, int max_length)
        : g_(g), M_(std::move(M)), bits_(precision_bits), constants_(compute_constants(precision_bits)),
          log_alpha_(log(constants_.alpha)), tau_(log(mp::Interval::from_long(g, bits_)) / log_alpha_),
          table_(make_convergents(), tau_, M_) {
        if (g < 2) throw std::invalid_argument("base g must be at least 2");
        if (table_.size() == 0) throw std::logic_error("no convergent of tau beyond 6M");
        const mpfr_prec_t p = bits_;
        const mp::Interval gm1 = mp::Interval::from_long(g - 1, p);
        log_eta_base_ = log(pow(gm1, 3) * constants_.a);
        const long max_product = static_cast<long>(g - 1) * (g - 1) * (g - 1);
        log_product_.reserve(static_cast<std::size_t>(max_product) + 1);
        log_product_.emplace_back(p);
        for (long v = 1; v <= max_product; ++v) log_product_.push_back(log(mp::Interval::from_long(v, p)));
        log_repunit_.emplace_back(p);
        mpz_class power = 1;
        for (int len = 1; len <= max_length; ++len) {
            power *= g;
            log_repunit_.push_back(log(mp::Interval::from_mpz(power - 1, p)));
        }
        log_b64_ = log(mp::Interval::from_long(g, 64));
        for (long num : {4L, 8L, 16L}) log_a64_[num] = log((mp::Interval::from_long(num, p) / log_alpha_).with_precision(64));
    }

    int g() const noexcept { return g_; }
    int precision_bits() const noexcept { return bits_; }
    const mpz_class& M() const noexcept { return M_; }
    const CubicConstants& constants() const noexcept { return constants_; }
    const mp::Interval& tau() const noexcept { return tau_; }
    const mp::Interval& log_alpha() const noexcept { return log_alpha_; }
    const std::vector<Convergent>& convergents() const noexcept { return table_.convergents; }
    std::size_t first_convergent() const noexcept { return table_.first; }
    const detail::ScanTable& table() const noexcept { return table_; }
    int max_length() const noexcept { return static_cast<int>(log_repunit_.size()) - 1; }

    // mu = log((g-1)^3 a / (d1 d2 d3 (g^l - 1) (g^m - 1))) / log alpha; l = 0 or m = 0 drops that factor.
    mp::Interval mu(long digit_product, int ell, int m) const {
        if (ell > max_length() || m > max_length()) throw std::out_of_range("repdigit length beyond context");
        mp::Interval v = log_eta_base_ - log_product_.at(static_cast<std::size_t>(digit_product));
        if (ell > 0) v -= log_repunit_[static_cast<std::size_t>(ell)];
        if (m > 0) v -= log_repunit_[static_cast<std::size_t>(m)];
        return v / log_alpha_;
    }

    double w_bound(long a_numerator, std::size_t t, const mp::Interval& eps) const {
        return detail::w_bound(log_a64_.at(a_numerator), table_.log_q.at(t - table_.first), eps, log_b64_);
    }

private:
    std::vector<Convergent> make_convergents() const {
        // Enough convergents past 6M for the onward scan when eps <= 0.
        mpz_class target;
        mpz_ui_pow_ui(target.get_mpz_t(), 10, 40);
        target *= 6 * M_;
        const int g = g_;
        return certified_convergents(
            [g](mpfr_prec_t bits) {
                const CubicConstants c = compute_constants(static_cast<int>(bits));
                return log(mp::Interval::from_long(g, bits)) / log(c.alpha);
            },
            bits_, target);
    }

    int g_;
    mpz_class M_;
    int bits_;
    CubicConstants constants_;
    mp::Interval log_alpha_;
    mp::Interval tau_;
    detail::ScanTable table_;
    mp::Interval log_eta_base_;
    std::vector<mp::Interval> log_product_;
    std::vector<mp::Interval> log_repunit_;
    mp::Interval log_b64_;
    std::map<long, mp::Interval> log_a64_;
};

struct StepOutcome {
    std::array<int, 3> digits{1, 1, 1};
    int ell = 0;  // 0 when the step does not involve l
    int m = 0;    // 0 when the step does not involve m
    bool resolved = false;
    std::size_t t = 0;   // convergent index of the witness
    double epsilon = 0;  // lower bound of the certified eps
    double w_bound = 0;
    int bound = 0;  // bound on the step's variable implied by this instance

    std::string label() const {
        std::string s = "d=(" + std::to_string(digits[0]) + "," + std::to_string(digits[1]) + "," +
                        std::to_string(digits[2]) + ")";
        if (ell > 0) s += " l=" + std::to_string(ell);
        if (m > 0) s += " m=" + std::to_string(m);
        return s;
    }
};

struct StepReport {
    int step = 1;
    int g = 2;
    int precision_bits = 0;
    mpz_class M;
    std::size_t first_convergent = 0;
    int bound = 0;          // reduced bound on l, m or n
    StepOutcome worst;      // instance attaining `bound` (first in label order)
    double min_epsilon = 0;           // over every resolved instance
    double min_epsilon_at_first = 0;  // over instances resolved at the first convergent
    std::size_t instances = 0;
    std::map<std::size_t, std::size_t> convergent_histogram;
    std::vector<StepOutcome> outcomes;  // in label order
    std::vector<std::string> unresolved;
    std::optional<int> bound_half_A;    // step 3 with A = 4 / log alpha
    std::optional<int> bound_m_le_183;  // step 3 restricted to m <= 183
};

// Sorted digit triples 1 <= d1 <= d2 <= d3 <= g-1.
inline std::vector<std::array<int, 3>> digit_triples(int g) {
    std::vector<std::array<int, 3>> out;
    for (int a = 1; a < g; ++a)
        for (int b = a; b < g; ++b)
            for (int c = b; c < g; ++c) out.push_back({a, b, c});
    return out;
}

namespace detail {

// Lowest value of the step's variable that the reduction must cover.
inline int validity_floor(int step) { return step == 1 ? 4 : 3; }

// w is l (step 1), m (step 2) or n - 1 (step 3).
inline int bound_from_w(int step, double w) {
    const int floor_w = static_cast<int>(std::floor(w));
    return step == 3 ? floor_w + 1 : floor_w;
}

inline StepReport run_sweep(const ReductionContext& ctx, int step, int ell_max, int m_max, unsigned threads) {
    const auto triples = digit_triples(ctx.g());
    const int ell_count = step >= 2 ? ell_max : 1;
    const int m_count = step == 3 ? m_max : 1;
    if (ell_count < 1 || m_count < 1) throw std::invalid_argument("sweep bounds must be positive");

    // mu depends on d1 d2 d3 only through the product and is symmetric in (l, m).
    std::map<long, std::size_t> product_index;
    for (const auto& d : triples) product_index.emplace(static_cast<long>(d[0]) * d[1] * d[2], 0);
    std::vector<long> products;
    for (auto& [prod, idx] : product_index) {
        idx = products.size();
        products.push_back(prod);
    }
    struct Key {
        std::size_t product;
        int ell;
        int m;
    };
    std::vector<Key> keys;
    for (std::size_t pi = 0; pi < products.size(); ++pi)
        for (int l = 1; l <= ell_count; ++l)
            for (int m = 1; m <= m_count; ++m) {
                const int ell_v = step >= 2 ? l : 0;
                const int m_v = step == 3 ? m : 0;
                if (step == 3 && m_v < ell_v && m_v <= ell_max && ell_v <= m_max) continue;  // mirrored
                keys.push_back({pi, ell_v, m_v});
            }
    struct Solved {
        bool resolved = false;
        std::size_t t = 0;
        double eps = 0;
        double w = 0;
    };
    std::vector<Solved> solved(keys.size());
    const long a_num = A_numerator(step);
    parallel_for(keys.size(), threads, [&](std::size_t i) {
        const Key& k = keys[i];
        const auto hit = scan(ctx.mu(products[k.product], k.ell, k.m), ctx.table());
        if (!hit) return;
        solved[i] = {true, hit->t, hit->epsilon.lower().to_double(MPFR_RNDD), ctx.w_bound(a_num, hit->t, hit->epsilon)};
    });
    std::map<std::tuple<std::size_t, int, int>, std::size_t> lookup;
    for (std::size_t i = 0; i < keys.size(); ++i) lookup.emplace(std::tuple{keys[i].product, keys[i].ell, keys[i].m}, i);

    StepReport rep;
    rep.step = step;
    rep.g = ctx.g();
    rep.precision_bits = ctx.precision_bits();
    rep.M = ctx.M();
    rep.first_convergent = ctx.first_convergent();
    rep.bound = validity_floor(step);
    rep.min_epsilon = rep.min_epsilon_at_first = 1.0;
    int bound_half = validity_floor(step);
    int bound_183 = validity_floor(step);
    const double shift_half = std::log(2.0) / std::log(static_cast<double>(ctx.g()));
    bool have_worst = false;
    for (const auto& d : triples) {
        const std::size_t pi = product_index.at(static_cast<long>(d[0]) * d[1] * d[2]);
        for (int l = 1; l <= ell_count; ++l)
            for (int m = 1; m <= m_count; ++m) {
                StepOutcome o;
                o.digits = d;
                o.ell = step >= 2 ? l : 0;
                o.m = step == 3 ? m : 0;
                auto it = lookup.find({pi, o.ell, o.m});
                if (it == lookup.end()) it = lookup.find({pi, o.m, o.ell});
                const Solved& s = solved.at(it->second);
                ++rep.instances;
                if (!s.resolved) {
                    rep.unresolved.push_back(o.label());
                    rep.outcomes.push_back(o);
                    continue;
                }
                o.resolved = true;
                o.t = s.t;
                o.epsilon = s.eps;
                o.w_bound = s.w;
                o.bound = bound_from_w(step, s.w);
                ++rep.convergent_histogram[s.t];
                rep.min_epsilon = std::min(rep.min_epsilon, s.eps);
                if (s.t == rep.first_convergent) rep.min_epsilon_at_first = std::min(rep.min_epsilon_at_first, s.eps);
                if (!have_worst || o.bound > rep.worst.bound) {
                    rep.worst = o;
                    have_worst = true;
                }
                rep.bound = std::max(rep.bound, o.bound);
                if (step == 3) {
                    bound_half = std::max(bound_half, bound_from_w(step, s.w - shift_half));
                    if (m <= 183) bound_183 = std::max(bound_183, o.bound);
                }
                rep.outcomes.push_back(o);
            }
    }
    if (step == 3) {
        rep.bound_half_A = bound_half;
        rep.bound_m_le_183 = bound_183;
    }
    return rep;
}

}  // namespace detail

// Gamma_1: |(l+m+n) tau - k - mu| < (16 / log alpha) g^-l, valid for l >= 5.
inline StepReport sweep_step1(const ReductionContext& ctx, unsigned threads = 1) {
    return detail::run_sweep(ctx, 1, 1, 1, threads);
}

// Gamma_2: |(m+n) tau - k - mu| < (8 / log alpha) g^-m for 1 <= l <= ell_max, valid for m >= 4.
inline StepReport sweep_step2(const ReductionContext& ctx, int ell_max, unsigned threads = 1) {
    return detail::run_sweep(ctx, 2, ell_max, 1, threads);
}

// Gamma_3: |n tau - k - mu| < (8 / log alpha) g^-(n-1) for l <= ell_max, m <= m_max, valid for n >= 4.
inline StepReport sweep_step3(const ReductionContext& ctx, int ell_max, int m_max, unsigned threads = 1) {
    return detail::run_sweep(ctx, 3, ell_max, m_max, threads);
}

// The k-bound box value used for every 2 <= g <= 10: M = floor(1.99e54).
inline mpz_class default_M() {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 10, 52);
    return 199 * m;
}

// ---------------------------------------------------------------------------
// Certification.

struct PrecisionComparison {
    bool convergents_identical = false;
    bool witnesses_identical = false;  // same convergent index, hence the same eps sign sequence, per instance
    bool bounds_identical = false;
    std::size_t mismatched_instances = 0;
    bool all() const { return convergents_identical && witnesses_identical && bounds_identical; }
};

inline PrecisionComparison compare_precisions(const ReductionContext& lo_ctx, const StepReport& lo,
                                              const ReductionContext& hi_ctx, const StepReport& hi) {
    PrecisionComparison out;
    const auto& a = lo_ctx.convergents();
    const auto& b = hi_ctx.convergents();
    const std::size_t n = std::min(a.size(), b.size());
    out.convergents_identical = n > 0 && std::equal(a.begin(), a.begin() + static_cast<long>(n), b.begin()) &&
                                lo_ctx.first_convergent() == hi_ctx.first_convergent();
    if (lo.outcomes.size() == hi.outcomes.size()) {
        for (std::size_t i = 0; i < lo.outcomes.size(); ++i) {
            const auto& x = lo.outcomes[i];
            const auto& y = hi.outcomes[i];
            if (x.resolved != y.resolved || x.t != y.t || x.digits != y.digits || x.ell != y.ell || x.m != y.m)
                ++out.mismatched_instances;
        }
        out.witnesses_identical = out.mismatched_instances == 0;
    }
    out.bounds_identical = lo.bound == hi.bound;
    return out;
}

struct WitnessCheck {
    bool q_exceeds_6M = false;
    bool coprime = false;
    bool epsilon_positive = false;
    bool same_convergent = false;  // an independent recomputation picks the same t
    bool w_bound_consistent = false;
    bool all() const { return q_exceeds_6M && coprime && epsilon_positive && same_convergent && w_bound_consistent; }
};

// Rebuilds one instance from scratch at `bits` through the generic
// ReductionProblem path and checks the recorded witness.
inline WitnessCheck reverify_witness(int g, int step, const StepOutcome& outcome, const mpz_class& M, int bits) {
    const CubicConstants c = compute_constants(bits);
    const mpfr_prec_t p = bits;
    const mp::Interval log_alpha = log(c.alpha);
    ReductionProblem prob;
    prob.tau = log(mp::Interval::from_long(g, p)) / log_alpha;
    mp::Interval eta = pow(mp::Interval::from_long(g - 1, p), 3) * c.a /
                       mp::Interval::from_long(static_cast<long>(outcome.digits[0]) * outcome.digits[1] * outcome.digits[2], p);
    mpz_class gl;
    if (outcome.ell > 0) {
        mpz_ui_pow_ui(gl.get_mpz_t(), static_cast<unsigned long>(g), static_cast<unsigned long>(outcome.ell));
        eta = eta / mp::Interval::from_mpz(gl - 1, p);
    }
    if (outcome.m > 0) {
        mpz_ui_pow_ui(gl.get_mpz_t(), static_cast<unsigned long>(g), static_cast<unsigned long>(outcome.m));
        eta = eta / mp::Interval::from_mpz(gl - 1, p);
    }
    prob.mu = log(eta) / log_alpha;
    prob.A = mp::Interval::from_long(A_numerator(step), p) / log_alpha;
    prob.B = mp::Interval::from_long(g, p);
    prob.M = M;
    prob.label = outcome.label();

    mpz_class target;
    mpz_ui_pow_ui(target.get_mpz_t(), 10, 40);
    target *= 6 * M;
    const auto convs = continued_fraction_convergents(prob.tau, target);

    WitnessCheck out;
    const ConvergentWitness w = dujella_petho(prob, convs);
    out.q_exceeds_6M = w.q > 6 * M;
    mpz_class gcd;
    mpz_gcd(gcd.get_mpz_t(), w.p.get_mpz_t(), w.q.get_mpz_t());
    out.coprime = gcd == 1;
    out.epsilon_positive = w.epsilon.certainly_positive();
    out.same_convergent = w.t == outcome.t;
    out.w_bound_consistent = std::abs(w.w_bound - outcome.w_bound) < 1e-9 * std::max(1.0, outcome.w_bound);
    return out;
}

}  // namespace narayana::reduction
