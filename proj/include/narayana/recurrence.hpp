#pragma once

// Exact Narayana numbers and certified checks of their growth against the
// dominant root.

#include "narayana/algebraic.hpp"
#include "narayana/mp.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace narayana {

class NarayanaTable {
public:
    NarayanaTable() = default;
    explicit NarayanaTable(std::vector<mpz_class> values) : values_(std::move(values)) {}

    std::size_t k_max() const noexcept { return values_.empty() ? 0 : values_.size() - 1; }
    const mpz_class& operator[](std::size_t k) const { return values_.at(k); }
    std::span<const mpz_class> values() const noexcept { return values_; }

    // "k,N_k" rows with a header line.
    void write_csv(std::ostream& out) const {
        out << "k,N_k\n";
        for (std::size_t k = 0; k < values_.size(); ++k) out << k << ',' << values_[k].get_str() << '\n';
    }

private:
    std::vector<mpz_class> values_;
};

inline NarayanaTable narayana_upto(std::size_t k_max) {
    std::vector<mpz_class> v;
    v.reserve(k_max + 1);
    for (std::size_t k = 0; k <= k_max; ++k) {
        if (k == 0)
            v.emplace_back(0);
        else if (k <= 2)
            v.emplace_back(1);
        else
            v.emplace_back(v[k - 1] + v[k - 3]);
    }
    return NarayanaTable(std::move(v));
}

// Outcome of checking alpha^(n-s) <= N_n <= alpha^(n-1) for 1 <= n <= k_max.
struct GrowthReport {
    bool holds = true;
    std::optional<std::size_t> first_failure;
    std::vector<std::size_t> lower_failures;  // n with alpha^(n-s) > N_n
    std::vector<std::size_t> upper_failures;  // n with N_n > alpha^(n-1)
    int precision_bits = 0;                   // precision at which every comparison was decided
};

// Compresses a sorted list of integers into "a-b" ranges.
inline std::string format_ranges(const std::vector<std::size_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size();) {
        std::size_t j = i;
        while (j + 1 < xs.size() && xs[j + 1] == xs[j] + 1) ++j;
        if (!out.empty()) out += ",";
        out += std::to_string(xs[i]);
        if (j > i) out += "-" + std::to_string(xs[j]);
        i = j + 1;
    }
    return out.empty() ? "none" : out;
}

namespace detail {

inline std::optional<GrowthReport> try_growth(std::size_t k_max, const NarayanaTable& table, const CubicConstants& c,
                                              unsigned lower_shift) {
    using mp::Interval;
    const mpfr_prec_t p = c.precision_bits;
    GrowthReport rep;
    rep.precision_bits = c.precision_bits;
    // alpha^e with alpha^0 kept exact, so that N_n = 1 = alpha^0 compares as equal.
    auto power = [&](long e) {
        if (e == 0) return Interval::from_long(1, p);
        if (e < 0) return Interval::from_long(1, p) / pow(c.alpha, static_cast<unsigned long>(-e));
        return pow(c.alpha, static_cast<unsigned long>(e));
    };
    for (std::size_t n = 1; n <= k_max; ++n) {
        const Interval value = Interval::from_mpz(table[n], p);
        const long e = static_cast<long>(n);
        auto lower_ok = certainly_le(power(e - static_cast<long>(lower_shift)), value);
        auto upper_ok = certainly_le(value, power(e - 1));
        if (!lower_ok || !upper_ok) return std::nullopt;
        if (!*lower_ok) rep.lower_failures.push_back(n);
        if (!*upper_ok) rep.upper_failures.push_back(n);
        if ((!*lower_ok || !*upper_ok) && !rep.first_failure) rep.first_failure = n;
    }
    rep.holds = !rep.first_failure.has_value();
    return rep;
}

}  // namespace detail

// Checks alpha^(n - lower_shift) <= N_n <= alpha^(n-1) exactly. Undecidable
// comparisons trigger recomputation at doubled precision, up to 4096 bits.
inline GrowthReport verify_growth(std::size_t k_max, const CubicConstants& c, unsigned lower_shift = 2) {
    if (k_max < 1) throw std::invalid_argument("verify_growth: k_max must be positive");
    if (lower_shift < 1) throw std::invalid_argument("verify_growth: lower_shift must be positive");
    const NarayanaTable table = narayana_upto(k_max);
    if (auto rep = detail::try_growth(k_max, table, c, lower_shift)) return *rep;
    for (int bits = c.precision_bits * 2; bits <= 4096; bits *= 2) {
        if (auto rep = detail::try_growth(k_max, table, compute_constants(bits), lower_shift)) return *rep;
    }
    throw mp::PrecisionExhausted("verify_growth: comparisons undecided at 4096 bits");
}

struct BinetResidual {
    mp::Interval value;  // enclosure of |N_k - a alpha^k|
    mp::Interval bound;  // enclosure of alpha^(-k/2)
    bool below_bound = false;
};

// Enclosure of |N_k - a alpha^k|.
///
// Two enclosures of the same quantity are intersected: the direct difference
// (which loses about 0.17 k decimal digits to cancellation) and the
// conjugate tail 2 Re(b beta^k), which is well conditioned at any k. Throws
// PrecisionExhausted when the result cannot be compared with alpha^(-k/2).
inline BinetResidual binet_residual(std::size_t k, const CubicConstants& c, const NarayanaTable& table) {
    using mp::Interval;
    if (k < 1 || k > table.k_max()) throw std::invalid_argument("binet_residual: k out of table range");
    const mpfr_prec_t p = c.precision_bits;
    const Interval alpha_k = pow(c.alpha, k);
    const Interval direct = Interval::from_mpz(table[k], p) - c.a * alpha_k;
    const Interval tail = Interval::from_long(2, p) * (c.b() * pow(c.beta(), k)).re;
    const Interval value = abs(direct.intersect(tail));

    Interval bound = sqrt(Interval::from_long(1, p) / alpha_k);
    auto below = certainly_lt(value, bound);
    if (!below) throw mp::PrecisionExhausted("binet_residual: enclosure too wide at k=" + std::to_string(k));
    return {value, std::move(bound), *below};
}

// Direct-route residual only; used as an independent cross-check.
inline mp::Interval binet_residual_direct(std::size_t k, const CubicConstants& c, const NarayanaTable& table) {
    using mp::Interval;
    const mpfr_prec_t p = c.precision_bits;
    return abs(Interval::from_mpz(table[k], p) - c.a * pow(c.alpha, k));
}

}  // namespace narayana
