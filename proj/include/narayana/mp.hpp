#pragma once

// Outward-rounded interval arithmetic on top of MPFR.
//
// Every Interval is a closed enclosure [lower, upper] of one real number.
// Lower endpoints are always rounded toward -inf and upper endpoints toward
// +inf, so an Interval produced from certified inputs is itself certified.

#include <mpfr.h>
#include <gmpxx.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace narayana::mp {

// Raised when an enclosure is too wide to decide a comparison or a digit.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// RAII owner of one mpfr_t.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    Real(Real&& other) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }
    Real& operator=(const Real& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr get() noexcept { return v_; }
    mpfr_srcptr get() const noexcept { return v_; }
    mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    long double to_long_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_ld(v_, rnd); }

    // Scientific notation with `digits` significant digits.
    std::string to_string(int digits = 20) const {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
        std::string out(buf);
        mpfr_free_str(buf);
        return out;
    }

    static Real from_long(long v, mpfr_prec_t prec, mpfr_rnd_t rnd = MPFR_RNDN) {
        Real r(prec);
        mpfr_set_si(r.v_, v, rnd);
        return r;
    }
    static Real from_double(double v, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, v, MPFR_RNDN);
        return r;
    }
    // 2^e exactly.
    static Real power_of_two(long e, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    friend int compare(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

class Interval {
public:
    explicit Interval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec) {}

    // Enclosure of an exact integer.
    static Interval from_long(long v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }
    static Interval from_mpz(const mpz_class& v, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_z(r.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
        mpfr_set_z(r.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
        return r;
    }
    // Enclosure of p/q.
    static Interval from_ratio(long p, long q, mpfr_prec_t prec) {
        return from_long(p, prec + 8) / from_long(q, prec + 8);
    }
    // Degenerate enclosure of a value known exactly (e.g. a dyadic midpoint).
    static Interval point(const Real& v) {
        Interval r(v.precision());
        mpfr_set(r.lo_.get(), v.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), v.get(), MPFR_RNDU);
        return r;
    }
    static Interval from_bounds(const Real& lo, const Real& hi) {
        if (hi < lo) throw std::invalid_argument("interval bounds out of order");
        Interval r(std::max(lo.precision(), hi.precision()));
        mpfr_set(r.lo_.get(), lo.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi.get(), MPFR_RNDU);
        return r;
    }
    // Enclosure of the decimal literal `text` (e.g. "1.99e54").
    static Interval from_decimal(const std::string& text, mpfr_prec_t prec) {
        Interval r(prec);
        mpfr_set_str(r.lo_.get(), text.c_str(), 10, MPFR_RNDD);
        mpfr_set_str(r.hi_.get(), text.c_str(), 10, MPFR_RNDU);
        return r;
    }

    const Real& lower() const noexcept { return lo_; }
    const Real& upper() const noexcept { return hi_; }
    mpfr_prec_t precision() const noexcept { return std::max(lo_.precision(), hi_.precision()); }

    bool is_point() const { return lo_ == hi_; }
    bool contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }
    bool certainly_positive() const { return mpfr_sgn(lo_.get()) > 0; }
    bool certainly_negative() const { return mpfr_sgn(hi_.get()) < 0; }
    bool contains(const Real& v) const { return lo_ <= v && v <= hi_; }
    bool contains(const Interval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }

    Real midpoint() const {
        Real m(precision() + 1);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }
    // Upper bound on half the width.
    Real radius() const {
        Real r(precision());
        mpfr_sub(r.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDU);
        return r;
    }
    // Upper bound on max(|lower|, |upper|).
    Real magnitude() const {
        Real a(precision()), b(precision());
        mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
        mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
        return a < b ? b : a;
    }

    // The same enclosure with endpoints rounded outward to `prec` bits.
    Interval with_precision(mpfr_prec_t prec) const {
        Interval r(prec);
        mpfr_set(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_set(r.hi_.get(), hi_.get(), MPFR_RNDU);
        return r;
    }

    // Intersection; throws if the enclosures are disjoint.
    Interval intersect(const Interval& o) const {
        Interval r(std::max(precision(), o.precision()));
        mpfr_max(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_min(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        if (r.hi_ < r.lo_) throw std::logic_error("disjoint enclosures of the same quantity");
        return r;
    }

    // floor(x) when it is the same for every point of the enclosure.
    std::optional<mpz_class> floor_if_determined() const {
        mpz_class a, b;
        mpfr_get_z(a.get_mpz_t(), lo_.get(), MPFR_RNDD);
        mpfr_get_z(b.get_mpz_t(), hi_.get(), MPFR_RNDD);
        if (a != b) return std::nullopt;
        return a;
    }

    friend Interval operator-(const Interval& a) {
        Interval r(a.precision());
        mpfr_neg(r.lo_.get(), a.hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), a.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator+(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator-(const Interval& a, const Interval& b) {
        Interval r(std::max(a.precision(), b.precision()));
        mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
        mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval operator*(const Interval& a, const Interval& b) {
        const mpfr_prec_t prec = std::max(a.precision(), b.precision());
        Interval r(prec);
        if (mpfr_sgn(a.lo_.get()) >= 0 && mpfr_sgn(b.lo_.get()) >= 0) {
            mpfr_mul(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
            mpfr_mul(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
            return r;
        }
        Real t(prec);
        bool first = true;
        for (const Real* x : {&a.lo_, &a.hi_}) {
            for (const Real* y : {&b.lo_, &b.hi_}) {
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }
    friend Interval operator/(const Interval& a, const Interval& b) {
        if (b.contains_zero()) throw std::domain_error("interval division by an enclosure of zero");
        const mpfr_prec_t prec = std::max(a.precision(), b.precision());
        Interval r(prec);
        Real t(prec);
        bool first = true;
        for (const Real* x : {&a.lo_, &a.hi_}) {
            for (const Real* y : {&b.lo_, &b.hi_}) {
                mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDD);
                if (first || t < r.lo_) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
                mpfr_div(t.get(), x->get(), y->get(), MPFR_RNDU);
                if (first || t > r.hi_) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
                first = false;
            }
        }
        return r;
    }
    friend Interval operator*(const Interval& a, const mpz_class& z) {
        return a * Interval::from_mpz(z, std::max<mpfr_prec_t>(a.precision(), mpz_sizeinbase(z.get_mpz_t(), 2) + 2));
    }
    Interval& operator+=(const Interval& o) { return *this = *this + o; }
    Interval& operator-=(const Interval& o) { return *this = *this - o; }
    Interval& operator*=(const Interval& o) { return *this = *this * o; }

    friend Interval abs(const Interval& a) {
        if (mpfr_sgn(a.lo_.get()) >= 0) return a;
        if (mpfr_sgn(a.hi_.get()) <= 0) return -a;
        Interval r(a.precision());
        mpfr_set_zero(r.lo_.get(), 1);
        r.hi_ = a.magnitude();
        return r;
    }
    friend Interval sqr(const Interval& a) {
        Interval m = abs(a);
        Interval r(a.precision());
        mpfr_mul(r.lo_.get(), m.lo_.get(), m.lo_.get(), MPFR_RNDD);
        mpfr_mul(r.hi_.get(), m.hi_.get(), m.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval pow(const Interval& a, unsigned long e) {
        Interval result = Interval::from_long(1, a.precision());
        Interval base = a;
        while (e > 0) {
            if (e & 1UL) result = result * base;
            e >>= 1;
            if (e > 0) base = sqr(base);
        }
        return result;
    }
    friend Interval sqrt(const Interval& a) {
        if (a.certainly_negative()) throw std::domain_error("sqrt of a negative enclosure");
        Interval r(a.precision());
        if (mpfr_sgn(a.lo_.get()) < 0)
            mpfr_set_zero(r.lo_.get(), 1);
        else
            mpfr_sqrt(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval log(const Interval& a) {
        if (!a.certainly_positive()) throw std::domain_error("log of a non-positive enclosure");
        Interval r(a.precision());
        mpfr_log(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_log(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }
    friend Interval exp(const Interval& a) {
        Interval r(a.precision());
        mpfr_exp(r.lo_.get(), a.lo_.get(), MPFR_RNDD);
        mpfr_exp(r.hi_.get(), a.hi_.get(), MPFR_RNDU);
        return r;
    }

    // Enclosure of ||x||, the distance from x to the nearest integer.
    friend Interval distance_to_nearest_integer(const Interval& x) {
        const mpfr_prec_t prec = x.precision();
        Real nlo(prec), nhi(prec);
        mpfr_rint(nlo.get(), x.lo_.get(), MPFR_RNDN);
        mpfr_rint(nhi.get(), x.hi_.get(), MPFR_RNDN);
        Interval r(prec);
        if (nlo == nhi) {
            Interval d = x - Interval::point(nlo);
            return abs(d);
        }
        Real a(prec), b(prec);
        mpfr_sub(a.get(), x.lo_.get(), nlo.get(), MPFR_RNDD);
        mpfr_abs(a.get(), a.get(), MPFR_RNDD);
        mpfr_sub(b.get(), nhi.get(), x.hi_.get(), MPFR_RNDD);
        mpfr_abs(b.get(), b.get(), MPFR_RNDD);
        Real diff(prec);
        mpfr_sub(diff.get(), nhi.get(), nlo.get(), MPFR_RNDN);
        if (mpfr_cmp_ui(diff.get(), 1) > 0)
            mpfr_set_zero(r.lo_.get(), 1);
        else
            mpfr_min(r.lo_.get(), a.get(), b.get(), MPFR_RNDD);
        mpfr_set_d(r.hi_.get(), 0.5, MPFR_RNDU);
        return r;
    }

    // Three-valued comparison a <= b: true/false when certain, nullopt otherwise.
    friend std::optional<bool> certainly_le(const Interval& a, const Interval& b) {
        if (a.hi_ <= b.lo_) return true;
        if (a.lo_ > b.hi_) return false;
        return std::nullopt;
    }
    friend std::optional<bool> certainly_lt(const Interval& a, const Interval& b) {
        if (a.hi_ < b.lo_) return true;
        if (a.lo_ >= b.hi_) return false;
        return std::nullopt;
    }

    std::string to_string(int digits = 20) const {
        return "[" + lo_.to_string(digits) + ", " + hi_.to_string(digits) + "]";
    }

private:
    Real lo_;
    Real hi_;
};

// Rectangular complex enclosure.
struct ComplexInterval {
    Interval re;
    Interval im;

    explicit ComplexInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    ComplexInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t precision() const { return std::max(re.precision(), im.precision()); }

    friend ComplexInterval operator+(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexInterval operator-(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexInterval operator*(const ComplexInterval& a, const ComplexInterval& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend ComplexInterval operator/(const ComplexInterval& a, const ComplexInterval& b) {
        Interval den = norm2(b);
        ComplexInterval num = a * conj(b);
        return {num.re / den, num.im / den};
    }
    friend ComplexInterval operator+(const ComplexInterval& a, const Interval& x) { return {a.re + x, a.im}; }
    friend ComplexInterval conj(const ComplexInterval& a) { return {a.re, -a.im}; }
    friend Interval norm2(const ComplexInterval& a) { return sqr(a.re) + sqr(a.im); }
    friend ComplexInterval pow(const ComplexInterval& a, unsigned long e) {
        ComplexInterval result(Interval::from_long(1, a.precision()), Interval::from_long(0, a.precision()));
        ComplexInterval base = a;
        while (e > 0) {
            if (e & 1UL) result = result * base;
            e >>= 1;
            if (e > 0) base = base * base;
        }
        return result;
    }
    ComplexInterval with_precision(mpfr_prec_t prec) const {
        return {re.with_precision(prec), im.with_precision(prec)};
    }
};

}  // namespace narayana::mp
