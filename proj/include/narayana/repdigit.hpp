#pragma once

// Repdigits d (g^l - 1) / (g - 1), 1 <= d <= g - 1, in a fixed base g.

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace narayana::repdigit {

struct Repdigit {
    int digit = 1;
    int length = 1;
    int base = 2;
    mpz_class value;

    // Base-g digit string, e.g. "111" or "44". Digits above 9 use letters.
    std::string digits() const {
        const char c = digit < 10 ? static_cast<char>('0' + digit) : static_cast<char>('a' + digit - 10);
        return std::string(static_cast<std::size_t>(length), c);
    }

    friend bool operator==(const Repdigit& a, const Repdigit& b) {
        return a.digit == b.digit && a.length == b.length && a.base == b.base;
    }
};

struct Shape {
    int digit;
    int length;
    friend bool operator==(const Shape&, const Shape&) = default;
};

// (g^length - 1) / (g - 1), the all-ones repdigit.
inline mpz_class repunit(int length, int base) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(length));
    r -= 1;
    r /= base - 1;
    return r;
}

inline Repdigit make(int digit, int length, int base) {
    if (base < 2) throw std::invalid_argument("repdigit base must be at least 2");
    if (digit < 1 || digit > base - 1) throw std::invalid_argument("repdigit digit must lie in [1, base-1]");
    if (length < 1) throw std::invalid_argument("repdigit length must be positive");
    return {digit, length, base, digit * repunit(length, base)};
}

// (digit, length) if v is a base-`base` repdigit, by repeated division.
inline std::optional<Shape> recognize(const mpz_class& v, int base) {
    if (base < 2) throw std::invalid_argument("repdigit base must be at least 2");
    if (v < 1) return std::nullopt;
    mpz_class rest = v;
    const unsigned long b = static_cast<unsigned long>(base);
    const unsigned long digit = mpz_fdiv_ui(rest.get_mpz_t(), b);
    if (digit == 0) return std::nullopt;
    int length = 0;
    while (rest > 0) {
        if (mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), b) != digit) return std::nullopt;
        ++length;
    }
    return Shape{static_cast<int>(digit), length};
}

// Every repdigit of length <= max_length, sorted by value.
inline std::vector<Repdigit> enumerate(int base, int max_length) {
    if (base < 2) throw std::invalid_argument("repdigit base must be at least 2");
    if (max_length < 1) throw std::invalid_argument("max_length must be positive");
    std::vector<Repdigit> out;
    out.reserve(static_cast<std::size_t>(base - 1) * static_cast<std::size_t>(max_length));
    for (int len = 1; len <= max_length; ++len) {
        const mpz_class unit = repunit(len, base);
        for (int d = 1; d < base; ++d) out.push_back({d, len, base, d * unit});
    }
    // Lengths already order the values: any length-l repdigit exceeds every shorter one.
    return out;
}

}  // namespace narayana::repdigit
