#pragma once

// Characteristic roots and Binet coefficients of the Narayana recurrence
// N_n = N_{n-1} + N_{n-3}, held as certified MPFR enclosures.
//
//   phi(x) = x^3 - x^2 - 1,   alpha > 1 real, beta and gamma = conj(beta)
//   N_n    = a alpha^n + b beta^n + c gamma^n,   a = alpha^2 / (alpha^3 + 2)
//
// phi has discriminant -31 < 0, so alpha is its only real root; beta and
// gamma follow from alpha through beta + gamma = 1 - alpha and
// beta * gamma = 1 / alpha.

#include "narayana/mp.hpp"

#include <gmpxx.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace narayana {

struct CubicConstants {
    mp::Interval alpha;
    mp::Interval beta_re;
    mp::Interval beta_im;
    mp::Interval a;     // coefficient of alpha^n
    mp::Interval b_re;  // coefficient of beta^n (c is its conjugate)
    mp::Interval b_im;
    int precision_bits = 0;
    mp::Real error_radius;  // largest half-width over the stored enclosures

    mp::ComplexInterval beta() const { return {beta_re, beta_im}; }
    mp::ComplexInterval b() const { return {b_re, b_im}; }
};

namespace detail {

template <class T>
T characteristic(const T& x) {
    return x * x * x - x * x - T::from_long(1, x.precision());
}

inline mp::Interval dominant_root_enclosure(mpfr_prec_t bits) {
    // Newton at working precision, then certify by a sign change of phi on
    // a small bracket (phi is increasing on [1, 2]).
    mp::Real x = mp::Real::from_double(1.4655712318767680, bits);
    mp::Real fx(bits), dfx(bits), x2(bits), step(bits);
    for (int iter = 0; iter < 64; ++iter) {
        mpfr_sqr(x2.get(), x.get(), MPFR_RNDN);
        mpfr_mul(fx.get(), x2.get(), x.get(), MPFR_RNDN);
        mpfr_sub(fx.get(), fx.get(), x2.get(), MPFR_RNDN);
        mpfr_sub_ui(fx.get(), fx.get(), 1, MPFR_RNDN);
        mpfr_mul_ui(dfx.get(), x2.get(), 3, MPFR_RNDN);
        mpfr_mul_ui(step.get(), x.get(), 2, MPFR_RNDN);
        mpfr_sub(dfx.get(), dfx.get(), step.get(), MPFR_RNDN);
        mpfr_div(step.get(), fx.get(), dfx.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), step.get(), MPFR_RNDN);
        if (mpfr_zero_p(step.get()) || mpfr_get_exp(step.get()) < -static_cast<long>(bits) + 4) break;
    }
    mp::Real r = mp::Real::power_of_two(-static_cast<long>(bits) + 6, bits);
    mp::Real lo(bits), hi(bits);
    mpfr_sub(lo.get(), x.get(), r.get(), MPFR_RNDD);
    mpfr_add(hi.get(), x.get(), r.get(), MPFR_RNDU);
    const mp::Interval at_lo = characteristic(mp::Interval::point(lo));
    const mp::Interval at_hi = characteristic(mp::Interval::point(hi));
    if (!at_lo.certainly_negative() || !at_hi.certainly_positive())
        throw mp::PrecisionExhausted("could not bracket the dominant root of x^3 - x^2 - 1");
    return mp::Interval::from_bounds(lo, hi);
}

}  // namespace detail

// Certified constants at `precision_bits` (>= 128). Internally computed with
// 64 guard bits and rounded outward.
inline CubicConstants compute_constants(int precision_bits) {
    if (precision_bits < 128) throw std::invalid_argument("precision_bits must be at least 128");
    const mpfr_prec_t work = precision_bits + 64;
    using mp::Interval;

    const Interval alpha = detail::dominant_root_enclosure(work);
    const Interval one = Interval::from_long(1, work);
    const Interval two = Interval::from_long(2, work);

    const Interval beta_re = (one - alpha) / two;
    const Interval beta_im = sqrt(one / alpha - sqr(beta_re));
    const mp::ComplexInterval beta(beta_re, beta_im);

    const Interval a = sqr(alpha) / (pow(alpha, 3) + two);
    const mp::ComplexInterval b = (beta * beta) / (pow(beta, 3) + two);

    CubicConstants c;
    const auto p = static_cast<mpfr_prec_t>(precision_bits);
    c.alpha = alpha.with_precision(p);
    c.beta_re = beta_re.with_precision(p);
    c.beta_im = beta_im.with_precision(p);
    c.a = a.with_precision(p);
    c.b_re = b.re.with_precision(p);
    c.b_im = b.im.with_precision(p);
    c.precision_bits = precision_bits;
    c.error_radius = mp::Real(p);
    for (const Interval* v : {&c.alpha, &c.beta_re, &c.beta_im, &c.a, &c.b_re, &c.b_im}) {
        mp::Real r = v->radius();
        if (r > c.error_radius) c.error_radius = r;
    }
    return c;
}

struct ConstantsCheck {
    bool root_residual = false;
    bool alpha_range = false;
    bool conjugates_inside_unit_disk = false;
    bool binet_reconstruction = false;
    bool a_minimal_polynomial = false;

    bool all() const {
        return root_residual && alpha_range && conjugates_inside_unit_disk && binet_reconstruction &&
               a_minimal_polynomial;
    }
};

// Evaluates every stored-value invariant of `c`.
inline ConstantsCheck check_constants(const CubicConstants& c) {
    using mp::Interval;
    const mpfr_prec_t p = c.precision_bits + 16;
    ConstantsCheck out;
    const Interval err = Interval::point(c.error_radius);

    const Interval mid = Interval::point(c.alpha.midpoint());
    const Interval residual = abs(detail::characteristic(mid));
    const Interval tol = Interval::from_long(4, p) * err * sqr(c.alpha);
    out.root_residual = certainly_le(residual, tol).value_or(false);

    out.alpha_range = certainly_lt(Interval::from_decimal("1.46556", p), c.alpha).value_or(false) &&
                      certainly_lt(c.alpha, Interval::from_decimal("1.46558", p)).value_or(false);

    out.conjugates_inside_unit_disk =
        certainly_lt(norm2(c.beta()), Interval::from_long(1, p)).value_or(false);

    const Interval ten_err = Interval::from_long(10, p) * err;
    const Interval two = Interval::from_long(2, p);
    const Interval n0 = abs(c.a + two * c.b_re);
    const Interval n1 = abs(c.a * c.alpha + two * (c.b() * c.beta()).re - Interval::from_long(1, p));
    out.binet_reconstruction =
        certainly_lt(n0, ten_err).value_or(false) && certainly_lt(n1, ten_err).value_or(false);

    const Interval minpoly = Interval::from_long(31, p) * pow(c.a, 3) - Interval::from_long(3, p) * c.a -
                             Interval::from_long(1, p);
    out.a_minimal_polynomial = minpoly.contains_zero();
    return out;
}

// h(p/q) = log max(|p|, q) for a reduced fraction with q > 0.
inline long double height_rational(long long p, long long q) {
    if (q <= 0) throw std::invalid_argument("height_rational: denominator must be positive");
    const long long ap = p < 0 ? -p : p;
    if (std::gcd(ap, q) != 1) throw std::invalid_argument("height_rational: fraction is not reduced");
    return std::log(static_cast<long double>(std::max(ap, q)));
}

// h(alpha) = log(alpha) / 3 (alpha is an algebraic integer whose conjugates lie in the unit disk).
inline long double height_alpha(const CubicConstants& c) {
    return log(c.alpha).midpoint().to_long_double() / 3.0L;
}

// Exact h(a) from its minimal polynomial 31x^3 - 3x - 1: (log 31 + sum log max(1, |conj|)) / 3.
// All three conjugates a, b, conj(b) lie inside the unit disk, checked here.
inline long double height_binet_coefficient(const CubicConstants& c) {
    const mpfr_prec_t p = c.precision_bits;
    if (!certainly_lt(abs(c.a), mp::Interval::from_long(1, p)).value_or(false) ||
        !certainly_lt(norm2(c.b()), mp::Interval::from_long(1, p)).value_or(false))
        throw std::logic_error("conjugate of the Binet coefficient outside the unit disk");
    return std::log(31.0L) / 3.0L;
}

// Bound on h(a) used by the published derivation, retained for reproduction.
inline long double published_height_bound_binet_coefficient() { return std::log(23.0L) / 3.0L; }

}  // namespace narayana
