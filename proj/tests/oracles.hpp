#pragma once

// Slow, independent reference implementations used only by the tests.

#include "narayana/repdigit.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <array>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

// N_0..N_30 written out by hand.
inline const std::vector<long>& narayana_prefix() {
    static const std::vector<long> v = {0,   1,   1,   1,   2,    3,    4,    6,    9,    13,   19,
                                        28,  41,  60,  88,  129,  189,  277,  406,  595,  872,  1278,
                                        1873, 2745, 4023, 5896, 8641, 12664, 18560, 27201, 39865};
    return v;
}

// Plain bisection on x^3 - x^2 - 1 over [1, 2] with round-to-nearest mpfr, no intervals.
inline double dominant_root(mpfr_prec_t bits, std::string* digits = nullptr) {
    mpfr_t lo, hi, mid, f;
    mpfr_inits2(bits, lo, hi, mid, f, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_ui(lo, 1, MPFR_RNDN);
    mpfr_set_ui(hi, 2, MPFR_RNDN);
    for (mpfr_prec_t i = 0; i < bits - 4; ++i) {
        mpfr_add(mid, lo, hi, MPFR_RNDN);
        mpfr_div_2ui(mid, mid, 1, MPFR_RNDN);
        mpfr_pow_ui(f, mid, 3, MPFR_RNDN);
        mpfr_t sq;
        mpfr_init2(sq, bits);
        mpfr_sqr(sq, mid, MPFR_RNDN);
        mpfr_sub(f, f, sq, MPFR_RNDN);
        mpfr_sub_ui(f, f, 1, MPFR_RNDN);
        mpfr_clear(sq);
        if (mpfr_sgn(f) > 0)
            mpfr_set(hi, mid, MPFR_RNDN);
        else
            mpfr_set(lo, mid, MPFR_RNDN);
    }
    if (digits) {
        char* buf = nullptr;
        mpfr_asprintf(&buf, "%.40Rf", lo);
        *digits = buf;
        mpfr_free_str(buf);
    }
    const double out = mpfr_get_d(lo, MPFR_RNDN);
    mpfr_clears(lo, hi, mid, f, static_cast<mpfr_ptr>(nullptr));
    return out;
}

// a = lim N_k / alpha^k, taken at k = 600 where the tail is below 1e-100.
inline double binet_coefficient_limit() {
    const mpfr_prec_t bits = 800;
    mpfr_t alpha, pw, n;
    mpfr_inits2(bits, alpha, pw, n, static_cast<mpfr_ptr>(nullptr));
    std::string s;
    dominant_root(bits, &s);
    mpfr_set_str(alpha, s.c_str(), 10, MPFR_RNDN);
    std::vector<mpz_class> v = {0, 1, 1};
    while (v.size() <= 600) v.push_back(v[v.size() - 1] + v[v.size() - 3]);
    mpfr_pow_ui(pw, alpha, 600, MPFR_RNDN);
    mpfr_set_z(n, v[600].get_mpz_t(), MPFR_RNDN);
    mpfr_div(n, n, pw, MPFR_RNDN);
    const double out = mpfr_get_d(n, MPFR_RNDN);
    mpfr_clears(alpha, pw, n, static_cast<mpfr_ptr>(nullptr));
    return out;
}

// Every (k, a, b, c) with a <= b <= c by value, lengths <= max_len, a b c = N_k, 1 <= k <= k_max.
inline std::vector<std::tuple<long, std::string, std::string, std::string>> brute_force(int g, long k_max, int max_len) {
    std::vector<mpz_class> v = {0, 1, 1};
    while (static_cast<long>(v.size()) <= k_max) v.push_back(v[v.size() - 1] + v[v.size() - 3]);
    std::vector<std::pair<mpz_class, std::string>> reps;
    for (int len = 1; len <= max_len; ++len)
        for (int d = 1; d < g; ++d) {
            std::string digits(static_cast<std::size_t>(len), d < 10 ? static_cast<char>('0' + d) : static_cast<char>('a' + d - 10));
            reps.emplace_back(mpz_class(digits, g), digits);
        }
    std::vector<std::tuple<long, std::string, std::string, std::string>> out;
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j)
            for (std::size_t l = 0; l < reps.size(); ++l) {
                const auto& [a, sa] = reps[i];
                const auto& [b, sb] = reps[j];
                const auto& [c, sc] = reps[l];
                if (a > b || b > c) continue;
                const mpz_class p = a * b * c;
                for (long k = 1; k <= k_max; ++k)
                    if (v[static_cast<std::size_t>(k)] == p) out.emplace_back(k, sa, sb, sc);
            }
    std::sort(out.begin(), out.end(), [&](const auto& x, const auto& y) {
        auto key = [&](const auto& t) {
            return std::tuple{std::get<0>(t), mpz_class(std::get<1>(t), g), mpz_class(std::get<2>(t), g),
                              mpz_class(std::get<3>(t), g)};
        };
        return key(x) < key(y);
    });
    return out;
}

}  // namespace oracle
