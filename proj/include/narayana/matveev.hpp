#pragma once

// Absolute bounds on the repdigit lengths l <= m <= n and the Narayana index k
// from Matveev's lower bound for linear forms in three logarithms.
//
// Each stage compares the Matveev lower bound on log|Gamma_i| with an upper
// bound of the form c / g^w and solves for w:
//
//   Gamma_1 = a (g-1)^3 / (d1 d2 d3)              * alpha^k g^-(l+m+n) - 1,  |.| < 8 g^-l
//   Gamma_2 = ... / (g^l - 1)                     * alpha^k g^-(m+n)   - 1,  |.| < 4 g^-m
//   Gamma_3 = ... / ((g^l - 1)(g^m - 1))          * alpha^k g^-n       - 1,  |.| < 2 g^(1-n)
//
// with eta = (eta_1, alpha, g), field degree 3 and B = 8 n log g. The
// n-stage is an implicit inequality n < H log^3 n, closed with the
// L < 2^r H (log H)^r inversion.
//
// Arithmetic is long double; these are coarse bounds, not certified values.

#include "narayana/algebraic.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace narayana::bounds {

enum class HeightMode {
    published,  // h(eta_1) < 6 log g, (6 + l) log g, (6 + l + m) log g
    strict,     // h(eta_1) <= h(a) + 3 log(g-1) + (l + m) log g with h(a) = log(31) / 3
};

struct LinearFormSpec {
    int s = 1;       // number of logarithms
    int degree = 1;  // degree of the number field
    std::vector<long double> A;
    long double B = 1;
};

// Matveev's lower bound on log|Lambda|:
// -1.4 * 30^(s+3) * s^4.5 * d^2 * (1 + log d) * (1 + log B) * A_1 ... A_s.
inline long double matveev_rhs(const LinearFormSpec& spec) {
    if (spec.s < 1 || static_cast<int>(spec.A.size()) != spec.s)
        throw std::invalid_argument("matveev_rhs: A must hold s entries");
    if (spec.degree < 1) throw std::invalid_argument("matveev_rhs: degree must be positive");
    if (spec.B < 1) throw std::invalid_argument("matveev_rhs: B must be at least 1");
    const long double s = spec.s;
    const long double d = spec.degree;
    long double value = 1.4L * std::pow(30.0L, s + 3) * std::pow(s, 4.5L) * d * d * (1 + std::log(d)) *
                        (1 + std::log(spec.B));
    for (long double a : spec.A) {
        if (a < 0.16L) throw std::invalid_argument("matveev_rhs: every A_i must be at least 0.16");
        value *= a;
    }
    return -value;
}

// k < 8 n log g.
inline long double k_bound_of_n(int g, long double n) { return 8 * n * std::log(static_cast<long double>(g)); }

// The n = 1 branch: alpha^(k-2) <= (g-1)^3 gives k < 2 + 3 log g / log alpha.
inline long double k_bound_single_digit(int g, long double log_alpha) {
    return 2 + 3 * std::log(static_cast<long double>(g)) / log_alpha;
}

// r >= 1, H > (4 r^2)^r and L / (log L)^r < H imply L < 2^r H (log H)^r.
inline long double log_power_inversion(int r, long double H) {
    if (r < 1) throw std::invalid_argument("log_power_inversion: r must be positive");
    if (!(H > std::pow(4.0L * r * r, static_cast<long double>(r))))
        throw std::invalid_argument("log_power_inversion: H must exceed (4 r^2)^r");
    return std::pow(2.0L, static_cast<long double>(r)) * H * std::pow(std::log(H), static_cast<long double>(r));
}

// 95.6 + 6 log log g < 135 log g, the inequality used to put the final n-bound in closed form.
inline bool published_log_inequality_holds(long double g) {
    return 95.6L + 6 * std::log(std::log(g)) < 135 * std::log(g);
}

// One displayed constant of the closed-form chain against its recomputation.
struct ChainConstant {
    std::string name;
    long double published = 0;
    long double recomputed = 0;   // chained from recomputed predecessors
    long double stage_local = 0;  // recomputed from the published predecessor
    long double relative_difference() const { return (recomputed - published) / published; }
    long double stage_local_difference() const { return (stage_local - published) / published; }
};

struct BoundChainReport {
    int g = 2;
    HeightMode mode = HeightMode::published;
    long double ell_bound = 0;
    long double m_bound = 0;
    long double n_bound = 0;
    long double k_bound = 0;
    std::map<std::string, long double> intermediate;
};

class BoundEngine {
public:
    BoundEngine(long double log_alpha, HeightMode mode, long double height_a)
        : log_alpha_(log_alpha), mode_(mode), height_a_(height_a) {}

    static BoundEngine from_constants(const CubicConstants& c, HeightMode mode) {
        return {log(c.alpha).midpoint().to_long_double(), mode, height_binet_coefficient(c)};
    }

    long double log_alpha() const noexcept { return log_alpha_; }
    HeightMode mode() const noexcept { return mode_; }

    // h0 in h(eta_1) < h0 + (l + m) log g.
    long double base_height(int g) const {
        const long double L = std::log(static_cast<long double>(g));
        if (mode_ == HeightMode::published) return 6 * L;
        return height_a_ + 3 * std::log(static_cast<long double>(g - 1));
    }

    // Linear form data for Gamma_i; `extra_length` is 0, l or l + m for i = 1, 2, 3.
    LinearFormSpec form(int g, long double n, long double extra_length) const {
        check_base(g);
        const long double L = std::log(static_cast<long double>(g));
        const long double a1 = std::max(3 * (base_height(g) + extra_length * L), 0.16L);
        return {3, 3, {a1, log_alpha_, 3 * L}, 8 * n * L};
    }

    // Gamma_1 stage: l < 4.5e14 log n log^2 g after 1 + log(8 n log g) < 8 log n log g.
    long double derive_ell_bound(int g, long double n) const { return solve_stage(g, n, 0, std::log(8.0L), 0); }

    // Gamma_2 stage with A_1 = (18 + 3 l) log g.
    long double derive_m_bound(int g, long double n, long double ell_bound) const {
        return solve_stage(g, n, ell_bound, std::log(4.0L), 0);
    }

    // Right-hand side F(n) of the Gamma_3 stage inequality n < F(n); a cubic in log n.
    long double n_stage(int g, long double n) const {
        const long double ell = derive_ell_bound(g, n);
        const long double m = derive_m_bound(g, n, ell);
        return solve_stage(g, n, ell + m, std::log(2.0L), 1);
    }

    // H with n < H log^3 n for every n >= 2. F has nonnegative coefficients in
    // log n, so F(n) / log^3 n is largest at n = 2.
    long double implicit_coefficient(int g) const {
        const long double l2 = std::log(2.0L);
        return n_stage(g, 2) / (l2 * l2 * l2);
    }

    struct NBound {
        long double n_bound;
        long double k_bound;
        long double H;
    };

    NBound derive_n_bound(int g) const {
        const long double H = implicit_coefficient(g);
        const long double n = log_power_inversion(3, H);
        return {n, k_bound_of_n(g, n), H};
    }

    BoundChainReport chain_report(int g) const {
        BoundChainReport rep;
        rep.g = g;
        rep.mode = mode_;
        const NBound nb = derive_n_bound(g);
        rep.n_bound = nb.n_bound;
        rep.k_bound = nb.k_bound;
        rep.ell_bound = derive_ell_bound(g, nb.n_bound);
        rep.m_bound = derive_m_bound(g, nb.n_bound, rep.ell_bound);
        const long double L = std::log(static_cast<long double>(g));
        rep.intermediate["matveev_factor"] = matveev_factor();
        rep.intermediate["gamma1_factor"] = -matveev_rhs(form(g, 1, 0)) / (L * L);
        rep.intermediate["inversion_H"] = nb.H;
        rep.intermediate["inversion_H_over_log6g"] = nb.H / std::pow(L, 6.0L);
        rep.intermediate["base_height"] = base_height(g);
        rep.intermediate["n_bound_over_log9g"] = nb.n_bound / std::pow(L, 9.0L);
        rep.intermediate["k_bound_over_log10g"] = nb.k_bound / std::pow(L, 10.0L);
        rep.intermediate["k_bound_n_equals_1"] = k_bound_single_digit(g, log_alpha_);
        return rep;
    }

    // 1.4 * 30^6 * 3^4.5 * 3^2 * (1 + log 3), the A- and B-independent part of the bound.
    long double matveev_factor() const { return -matveev_rhs({3, 3, {1, 1, 1}, 1}); }

    // Closed-form coefficients in powers of log n and log g (published heights only),
    // each folded rigorously over n >= 2, g >= 2.
    std::vector<ChainConstant> closed_form_constants() const {
        if (mode_ != HeightMode::published)
            throw std::logic_error("closed-form constants exist only for the published heights");
        const long double K = matveev_factor();
        const long double C1 = K * 18 * log_alpha_ * 3;  // Gamma_1: times (1+log B) log^2 g
        const long double C2 = K * 3 * log_alpha_;       // Gamma_2: times (1+log B) log^2 g (18 + 3l)
        const long double C3 = K * 9 * log_alpha_;       // Gamma_3: times (1+log B) log^2 g (6 + l + m)
        const long double l2 = std::log(2.0L);
        const long double x0 = l2 * l2 * l2;  // min of log n log^2 g

        // l < 8 C1 x + log 8 / log g,  x = log n log^2 g
        const long double ell_coef = 8 * C1;
        const long double ell_fold = ell_coef + 3 / x0;
        // m < 8 C2 x (18 + 3 l) + 2
        const long double m_coef = 24 * C2 * ell_fold;
        const long double m_fold = m_coef + 144 * C2 / x0 + 2 / (x0 * x0);
        // 6 + l + m < S x^2
        const long double S = m_fold + ell_fold / x0 + 6 / (x0 * x0);
        // n < 2 + 8 C3 x (6 + l + m) < H0 x^3
        const long double H0 = 8 * C3 * S + 2 / (x0 * x0 * x0);
        const long double final_coef = 8 * H0 * std::pow((std::log(H0) + 6 * std::log(l2)) / l2, 3.0L);

        std::vector<ChainConstant> out;
        out.push_back({"gamma1_factor", 5.6e13L, C1, C1});
        out.push_back({"gamma2_factor", 3.1e12L, C2, C2});
        out.push_back({"gamma3_factor", 9.31e12L, C3, C3});
        out.push_back({"ell_coefficient", 4.5e14L, ell_coef, ell_coef});
        out.push_back({"m_coefficient", 3.8e28L, m_coef, 24 * C2 * 4.5e14L});
        out.push_back({"length_sum_coefficient", 4e28L, S, 3.8e28L + 4.51e14L / x0 + 6 / (x0 * x0)});
        out.push_back({"n_implicit_coefficient", 3e42L, H0, 8 * C3 * 4e28L});
        out.push_back({"inversion_coefficient", 2.4e43L, 8 * H0, 8 * 3e42L});
        out.push_back({"n_closed_form_coefficient", 5.91e49L, final_coef, 2.4e43L * 135 * 135 * 135});
        return out;
    }

private:
    static void check_base(int g) {
        if (g < 2) throw std::invalid_argument("base g must be at least 2");
    }

    // Solves (w - shift) log g - log c < |Matveev| for w, with 1 + log B
    // replaced by its upper bound 8 log n log g.
    long double solve_stage(int g, long double n, long double extra_length, long double log_c, int shift) const {
        check_base(g);
        if (n < 2) throw std::invalid_argument("bound stages need n >= 2");
        const long double L = std::log(static_cast<long double>(g));
        const LinearFormSpec spec = form(g, n, extra_length);
        const long double per_log_b = -matveev_rhs(spec) / (1 + std::log(spec.B));
        return shift + (per_log_b * 8 * std::log(n) * L + log_c) / L;
    }

    long double log_alpha_;
    HeightMode mode_;
    long double height_a_;
};

// 1 + log(8 n log g) < 8 log n log g, the relaxation used in every stage.
inline bool relaxation_holds(int g, long double n) {
    const long double L = std::log(static_cast<long double>(g));
    return 1 + std::log(8 * n * L) < 8 * std::log(n) * L;
}

}  // namespace narayana::bounds
