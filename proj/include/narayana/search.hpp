#pragma once

// Exhaustive search for N_k = a * b * c with a <= b <= c repdigits in base g.

#include "narayana/parallel.hpp"
#include "narayana/recurrence.hpp"
#include "narayana/repdigit.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace narayana::search {

using repdigit::Repdigit;

struct SearchBox {
    int g = 2;
    long k_max = 11500;
    int ell_max = 194;  // length bound on the smallest factor
    int m_max = 200;
    int n_max = 205;  // length bound on the largest factor

    void validate() const {
        if (g < 2 || g > 36) throw std::invalid_argument("search base must lie in [2, 36]");
        if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
        if (ell_max < 1 || m_max < 1 || n_max < 1) throw std::invalid_argument("length bounds must be positive");
    }
};

struct SolutionRecord {
    int g = 2;
    long k = 0;
    mpz_class value;
    std::array<Repdigit, 3> factors;

    // "[1,11,111111]_2"
    std::string notation() const {
        return "[" + factors[0].digits() + "," + factors[1].digits() + "," + factors[2].digits() + "]_" +
               std::to_string(g);
    }
    auto key() const {
        return std::tuple{g, k, factors[0].value, factors[1].value, factors[2].value};
    }
    friend bool operator<(const SolutionRecord& a, const SolutionRecord& b) { return a.key() < b.key(); }
    friend bool operator==(const SolutionRecord& a, const SolutionRecord& b) { return a.key() == b.key(); }
};

struct SearchResult {
    SearchBox box;
    long k_scanned = 0;  // last k examined; larger k exceed every admissible product
    std::vector<SolutionRecord> solutions;
};

namespace detail {

inline std::vector<Repdigit> with_length_at_most(const std::vector<Repdigit>& all, int len) {
    std::vector<Repdigit> out;
    for (const auto& r : all)
        if (r.length <= len) out.push_back(r);
    return out;
}

inline void search_one(long k, const mpz_class& N, int g, const std::vector<Repdigit>& as,
                       const std::vector<Repdigit>& bs, int n_max, std::vector<SolutionRecord>& out) {
    if (N < 1) return;
    mpz_class rest, c;
    for (const auto& a : as) {
        if (a.value * a.value * a.value > N) break;
        if (!mpz_divisible_p(N.get_mpz_t(), a.value.get_mpz_t())) continue;
        mpz_divexact(rest.get_mpz_t(), N.get_mpz_t(), a.value.get_mpz_t());
        for (const auto& b : bs) {
            if (b.value < a.value) continue;
            if (b.value * b.value > rest) break;
            if (!mpz_divisible_p(rest.get_mpz_t(), b.value.get_mpz_t())) continue;
            mpz_divexact(c.get_mpz_t(), rest.get_mpz_t(), b.value.get_mpz_t());
            const auto shape = repdigit::recognize(c, g);
            if (!shape || shape->length > n_max) continue;
            out.push_back({g, k, N, {a, b, repdigit::make(shape->digit, shape->length, g)}});
        }
    }
}

}  // namespace detail

// All solutions in the box, sorted by (k, a, b, c). Stops at the first k
// whose N_k exceeds the largest admissible product.
inline SearchResult search(const SearchBox& box, const NarayanaTable& table, unsigned threads = 1) {
    box.validate();
    SearchResult res;
    res.box = box;
    if (box.k_max == 0) return res;
    const int longest = std::max({box.ell_max, box.m_max, box.n_max});
    const auto all = repdigit::enumerate(box.g, longest);
    const auto as = detail::with_length_at_most(all, box.ell_max);
    const auto bs = detail::with_length_at_most(all, box.m_max);
    const mpz_class ceiling = as.back().value * bs.back().value * detail::with_length_at_most(all, box.n_max).back().value;

    long k_end = 0;
    while (k_end < box.k_max && static_cast<std::size_t>(k_end + 1) <= table.k_max() && table[k_end + 1] <= ceiling)
        ++k_end;
    if (k_end < box.k_max && static_cast<std::size_t>(k_end + 1) > table.k_max())
        throw std::out_of_range("Narayana table too short for the search box");
    res.k_scanned = k_end;

    std::vector<std::vector<SolutionRecord>> per_k(static_cast<std::size_t>(k_end));
    parallel_for(per_k.size(), threads, [&](std::size_t i) {
        const long k = static_cast<long>(i) + 1;
        detail::search_one(k, table[static_cast<std::size_t>(k)], box.g, as, bs, box.n_max, per_k[i]);
    });
    for (auto& v : per_k) res.solutions.insert(res.solutions.end(), v.begin(), v.end());
    std::sort(res.solutions.begin(), res.solutions.end());
    return res;
}

inline SearchResult search(const SearchBox& box, unsigned threads = 1) {
    box.validate();
    // N_k grows like alpha^k, so this index is past any product of three box repdigits.
    const double log_ceiling =
        (box.ell_max + box.m_max + box.n_max) * std::log(static_cast<double>(box.g)) + 8;
    const auto cap = static_cast<long>(log_ceiling / std::log(1.4655712318767680) + 8);
    return search(box, narayana_upto(static_cast<std::size_t>(std::min(box.k_max, cap) + 1)), threads);
}

// Every record is rechecked by multiplying digit strings parsed back from the notation.
inline bool recheck(const SolutionRecord& r, const NarayanaTable& table) {
    mpz_class prod = 1;
    for (const auto& f : r.factors) {
        mpz_class v;
        if (v.set_str(f.digits(), r.g) != 0) return false;
        prod *= v;
    }
    const bool ordered = r.factors[0].value <= r.factors[1].value && r.factors[1].value <= r.factors[2].value;
    return ordered && prod == r.value && table[static_cast<std::size_t>(r.k)] == prod;
}

// ---------------------------------------------------------------------------
// Published solution list, expanded to explicit (g, k) rows.

struct KnownEntry {
    int g;
    long k;
    std::array<std::string, 3> digits;  // base-g digit strings
};

namespace detail {

struct KnownRow {
    std::vector<long> ks;
    std::array<const char*, 3> digits;
    int g_lo;
    int g_hi;
};

// clang-format off
inline const std::vector<KnownRow>& known_rows() {
    static const std::vector<KnownRow> rows = {
        {{1, 2, 3}, {"1", "1", "1"}, 2, 10},
        {{4}, {"1", "1", "2"}, 3, 10},
        {{5}, {"1", "1", "11"}, 2, 2},
        {{5}, {"1", "1", "3"}, 4, 10},
        {{6}, {"1", "1", "11"}, 3, 3},
        {{6}, {"1", "1", "4"}, 5, 10},
        {{6}, {"1", "2", "2"}, 3, 10},
        {{7}, {"1", "1", "11"}, 5, 5},
        {{7}, {"1", "2", "3"}, 4, 10},
        {{7}, {"1", "1", "6"}, 7, 10},
        {{8}, {"1", "11", "11"}, 2, 2},
        {{8}, {"1", "1", "111"}, 3, 3},
        {{8}, {"1", "1", "11"}, 8, 8},
        {{8}, {"1", "1", "9"}, 10, 10},
        {{8}, {"1", "3", "3"}, 4, 10},
        {{9}, {"1", "1", "111"}, 3, 3},
        {{11}, {"1", "1", "44"}, 6, 6},
        {{11}, {"1", "2", "22"}, 6, 6},
        {{11}, {"1", "4", "11"}, 6, 6},
        {{11}, {"2", "2", "11"}, 6, 6},
        {{11}, {"1", "4", "7"}, 8, 10},
        {{11}, {"2", "2", "7"}, 8, 10},
        {{13}, {"2", "2", "33"}, 4, 4},
        {{13}, {"2", "3", "22"}, 4, 4},
        {{13}, {"1", "1", "66"}, 9, 9},
        {{13}, {"1", "2", "33"}, 9, 9},
        {{13}, {"1", "3", "22"}, 9, 9},
        {{13}, {"1", "6", "11"}, 9, 9},
        {{13}, {"2", "3", "11"}, 9, 9},
        {{13}, {"2", "5", "6"}, 7, 10},
        {{13}, {"3", "4", "5"}, 6, 10},
        {{14}, {"1", "1", "88"}, 10, 10},
        {{14}, {"1", "2", "44"}, 10, 10},
        {{14}, {"1", "4", "22"}, 10, 10},
        {{14}, {"1", "8", "11"}, 10, 10},
        {{14}, {"2", "2", "22"}, 10, 10},
        {{14}, {"2", "4", "11"}, 10, 10},
        {{15}, {"1", "1", "333"}, 6, 6},
        {{15}, {"1", "3", "111"}, 6, 6},
        {{16}, {"1", "11", "111111"}, 2, 2},
        {{16}, {"1", "3", "333"}, 4, 4},
        {{16}, {"3", "3", "111"}, 4, 4},
        {{16}, {"3", "3", "33"}, 6, 6},
        {{16}, {"1", "3", "77"}, 8, 8},
        {{16}, {"1", "7", "33"}, 8, 8},
        {{16}, {"3", "7", "11"}, 8, 8},
        {{16}, {"3", "7", "9"}, 10, 10},
    };
    return rows;
}
// clang-format on

}  // namespace detail

inline std::vector<KnownEntry> known_solutions() {
    std::vector<KnownEntry> out;
    for (const auto& row : detail::known_rows())
        for (int g = row.g_lo; g <= row.g_hi; ++g)
            for (long k : row.ks) out.push_back({g, k, {row.digits[0], row.digits[1], row.digits[2]}});
    return out;
}

inline const std::set<long>& known_values() {
    static const std::set<long> v = {1, 2, 3, 4, 6, 9, 13, 28, 60, 88, 129, 189};
    return v;
}

struct KnownListReport {
    std::set<mpz_class> value_set;  // distinct N_k found
    bool value_set_matches = false;
    std::vector<std::string> missing;        // listed entries the search did not produce
    std::vector<std::string> unexpected;     // search results absent from the list
    std::vector<std::string> invalid_rows;   // listed entries whose product is not N_k
    bool factorizations_match = false;
    // Every listed entry the search missed has a product different from N_k.
    bool only_typos() const {
        for (const auto& m : missing) {
            const bool invalid = std::any_of(invalid_rows.begin(), invalid_rows.end(),
                                             [&](const std::string& r) { return r.rfind(m + ":", 0) == 0; });
            if (!invalid) return false;
        }
        return unexpected.empty();
    }
};

inline std::string entry_label(int g, long k, const std::array<std::string, 3>& d) {
    return "k=" + std::to_string(k) + " [" + d[0] + "," + d[1] + "," + d[2] + "]_" + std::to_string(g);
}

// Compares search output for 2 <= g <= 10 with the published list. Never throws on mismatch.
inline KnownListReport verify_known_list(const std::vector<SearchResult>& per_g) {
    KnownListReport rep;
    std::set<std::string> found;
    std::set<long> bases;
    long k_top = 0;
    for (const auto& res : per_g) {
        bases.insert(res.box.g);
        k_top = std::max(k_top, res.k_scanned);
        for (const auto& s : res.solutions) {
            rep.value_set.insert(s.value);
            found.insert(entry_label(s.g, s.k, {s.factors[0].digits(), s.factors[1].digits(), s.factors[2].digits()}));
        }
    }
    std::set<mpz_class> expected_values;
    for (long v : known_values()) expected_values.insert(mpz_class(v));
    rep.value_set_matches = rep.value_set == expected_values;

    const NarayanaTable table = narayana_upto(static_cast<std::size_t>(std::max<long>(k_top, 16)));
    std::set<std::string> listed;
    for (const auto& e : known_solutions()) {
        if (!bases.count(e.g)) continue;
        const std::string label = entry_label(e.g, e.k, e.digits);
        listed.insert(label);
        mpz_class prod = 1;
        for (const auto& s : e.digits) prod *= mpz_class(s, e.g);
        if (prod != table[static_cast<std::size_t>(e.k)])
            rep.invalid_rows.push_back(label + ": product " + prod.get_str() + " but N_" + std::to_string(e.k) + " = " +
                                       table[static_cast<std::size_t>(e.k)].get_str());
        if (!found.count(label)) rep.missing.push_back(label);
    }
    for (const auto& f : found)
        if (!listed.count(f)) rep.unexpected.push_back(f);
    rep.factorizations_match = rep.missing.empty() && rep.unexpected.empty();
    return rep;
}

}  // namespace narayana::search
