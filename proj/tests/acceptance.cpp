// Acceptance suite: one PASS/FAIL line per criterion.
//   acceptance            run all five
//   acceptance 2 5        run a subset

#include "narayana/algebraic.hpp"
#include "narayana/matveev.hpp"
#include "narayana/recurrence.hpp"
#include "narayana/reduction.hpp"
#include "narayana/reference.hpp"
#include "narayana/repdigit.hpp"
#include "narayana/search.hpp"
#include "oracles.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace narayana;

namespace {

constexpr int working_bits = 1200;
constexpr int doubled_bits = 2400;
constexpr int reverify_bits = 2464;

struct Verdict {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        note(why);
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(long double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3Le", v);
    return buf;
}

// Sweeps for one base at one precision.
struct BaseSweeps {
    std::unique_ptr<reduction::ReductionContext> ctx;
    reduction::StepReport step[3];
};

BaseSweeps run_sweeps(int g, int bits) {
    BaseSweeps s;
    s.ctx = std::make_unique<reduction::ReductionContext>(g, reduction::default_M(), bits, 230);
    s.step[0] = reduction::sweep_step1(*s.ctx, default_threads());
    s.step[1] = reduction::sweep_step2(*s.ctx, s.step[0].bound, default_threads());
    s.step[2] = reduction::sweep_step3(*s.ctx, s.step[0].bound, s.step[1].bound, default_threads());
    return s;
}

std::map<int, BaseSweeps>& sweeps(int bits) {
    static std::map<int, std::map<int, BaseSweeps>> cache;
    auto& per = cache[bits];
    if (per.empty())
        for (int g = 2; g <= 10; ++g) per.emplace(g, run_sweeps(g, bits));
    return per;
}

Verdict criterion1() {
    Verdict v;
    std::vector<search::SearchResult> box_results, margin_results;
    for (int g = 2; g <= 10; ++g) {
        search::SearchBox b;
        b.g = g;
        b.k_max = reference::k_box;
        b.ell_max = reference::ell_box;
        b.m_max = reference::m_box;
        b.n_max = reference::n_box;
        box_results.push_back(search::search(b, default_threads()));
        b.ell_max = b.m_max = b.n_max = 215;
        margin_results.push_back(search::search(b, default_threads()));
    }
    const auto rep = search::verify_known_list(box_results);
    std::string vals;
    for (const auto& x : rep.value_set) vals += (vals.empty() ? "" : ",") + x.get_str();
    if (!rep.value_set_matches) v.fail("value set {" + vals + "}");
    else v.note("value set {" + vals + "}");
    if (!rep.only_typos()) v.fail(std::to_string(rep.missing.size()) + " missing, " +
                                  std::to_string(rep.unexpected.size()) + " unexpected factorizations");
    for (const auto& r : rep.invalid_rows) v.note("listed typo " + r);
    for (std::size_t i = 0; i < box_results.size(); ++i)
        if (box_results[i].solutions != margin_results[i].solutions)
            v.fail("extra solutions for g=" + std::to_string(i + 2) + " with lengths <= 215");
    if (v.pass) v.note("no new solutions with lengths <= 215");
    const auto table = narayana_upto(12000);
    for (const auto& r : box_results)
        for (const auto& s : r.solutions)
            if (!search::recheck(s, table)) v.fail("recheck failed for " + s.notation());
    return v;
}

Verdict criterion2() {
    Verdict v;
    const auto& lo = sweeps(working_bits);
    std::string line[3];
    std::size_t witnesses_checked = 0;
    for (int g = 2; g <= 10; ++g) {
        const auto& s = lo.at(g);
        for (int step = 1; step <= 3; ++step) {
            const auto& r = s.step[step - 1];
            const int ref = reference::bound(step, g);
            const int diff = r.bound - ref;
            line[step - 1] += (g == 2 ? "" : " ") + std::to_string(r.bound) + "/" + std::to_string(ref);
            if (std::abs(diff) > reference::bound_tolerance)
                v.pass = false;
            if (!r.unresolved.empty())
                v.fail("g=" + std::to_string(g) + " step " + std::to_string(step) + ": " +
                       std::to_string(r.unresolved.size()) + " instances without witness");

            std::vector<reduction::StepOutcome> to_check;
            if (step == 1) {
                to_check = r.outcomes;
            } else {
                to_check.push_back(r.worst);
                for (const auto& o : r.outcomes)
                    if (o.resolved && o.epsilon == r.min_epsilon) {
                        to_check.push_back(o);
                        break;
                    }
            }
            for (const auto& o : to_check) {
                const auto chk = reduction::reverify_witness(g, step, o, reduction::default_M(), reverify_bits);
                ++witnesses_checked;
                if (!chk.all())
                    v.fail("g=" + std::to_string(g) + " step " + std::to_string(step) + " witness " + o.label() +
                           " not re-verified");
            }
        }
    }
    v.note("l (ours/table): " + line[0]);
    v.note("m: " + line[1]);
    v.note("n: " + line[2]);
    v.note(std::to_string(witnesses_checked) + " witnesses re-verified at " + std::to_string(reverify_bits) + " bits");
    if (!v.pass) v.note("tolerance +-" + std::to_string(reference::bound_tolerance) + " exceeded");
    return v;
}

Verdict criterion3() {
    Verdict v;
    const auto engine = bounds::BoundEngine::from_constants(compute_constants(256), bounds::HeightMode::published);
    long double worst_n = 0, worst_k = 0;
    for (int g = 2; g <= 10; ++g) {
        const auto nb = engine.derive_n_bound(g);
        const long double L = std::log(static_cast<long double>(g));
        const long double rn = nb.n_bound / std::pow(L, 9.0L);
        const long double rk = nb.k_bound / std::pow(L, 10.0L);
        worst_n = std::max(worst_n, rn);
        worst_k = std::max(worst_k, rk);
        if (rn > reference::n_coefficient) v.fail("g=" + std::to_string(g) + " n bound " + sci(rn) + " log^9 g");
        if (rk > reference::k_coefficient) v.fail("g=" + std::to_string(g) + " k bound " + sci(rk) + " log^10 g");
    }
    v.note("max n/log^9 g = " + sci(worst_n) + ", max k/log^10 g = " + sci(worst_k));
    for (const auto& c : engine.closed_form_constants()) {
        if (c.name != "ell_coefficient" && c.name != "m_coefficient" && c.name != "n_implicit_coefficient") continue;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %.3Le vs %.2Le (%+.1Lf%%)", c.name.c_str(), c.recomputed, c.published,
                      100 * c.relative_difference());
        if (std::fabs(c.relative_difference()) > 0.05L) v.fail(buf);
        else v.note(buf);
    }
    return v;
}

Verdict criterion4() {
    Verdict v;
    const auto c512 = compute_constants(512);
    const auto table = narayana_upto(1000);
    std::size_t below = 0;
    for (std::size_t k = 1; k <= 1000; ++k)
        if (binet_residual(k, c512, table).below_bound) ++below;
    if (below != 1000) v.fail("Binet residual bound fails for " + std::to_string(1000 - below) + " k");
    else v.note("Binet residual < alpha^(-k/2) for k=1-1000");

    const auto growth = verify_growth(1000, c512);
    std::vector<std::size_t> lower_ok, upper_ok;
    std::set<std::size_t> lf(growth.lower_failures.begin(), growth.lower_failures.end());
    std::set<std::size_t> uf(growth.upper_failures.begin(), growth.upper_failures.end());
    for (std::size_t n = 1; n <= 1000; ++n) {
        if (!lf.count(n)) lower_ok.push_back(n);
        if (!uf.count(n)) upper_ok.push_back(n);
    }
    v.note("alpha^(n-2) <= N_n holds for n in " + format_ranges(lower_ok) + ", N_n <= alpha^(n-1) for n in " +
           format_ranges(upper_ok) + " (decided at " + std::to_string(growth.precision_bits) + " bits)");
    const auto shifted = verify_growth(1000, c512, 3);
    if (!shifted.holds) v.fail("alpha^(n-3) <= N_n fails at n=" + format_ranges(shifted.lower_failures));
    else v.note("alpha^(n-3) <= N_n holds for n in 1-1000");

    std::size_t trips = 0;
    for (int g = 2; g <= 10; ++g)
        for (int d = 1; d < g; ++d)
            for (int len = 1; len <= 50; ++len) {
                const auto r = repdigit::make(d, len, g);
                const auto s = repdigit::recognize(r.value, g);
                if (!s || s->digit != d || s->length != len) v.fail("round trip failed");
                ++trips;
            }
    v.note(std::to_string(trips) + " repdigit round trips");

    std::size_t records = 0;
    for (int g = 2; g <= 10; ++g) {
        search::SearchBox b;
        b.g = g;
        b.k_max = 30;
        b.ell_max = b.m_max = b.n_max = 6;
        const auto got = search::search(b, narayana_upto(31));
        const auto want = oracle::brute_force(g, 30, 6);
        bool same = got.solutions.size() == want.size();
        for (std::size_t i = 0; same && i < want.size(); ++i) {
            const auto& s = got.solutions[i];
            same = s.k == std::get<0>(want[i]) && s.factors[0].digits() == std::get<1>(want[i]) &&
                   s.factors[1].digits() == std::get<2>(want[i]) && s.factors[2].digits() == std::get<3>(want[i]);
        }
        if (!same) v.fail("search differs from brute force for g=" + std::to_string(g));
        records += want.size();
    }
    v.note("search = brute force on k<=30, lengths<=6 (" + std::to_string(records) + " records)");
    return v;
}

Verdict criterion5() {
    Verdict v;
    const auto& lo = sweeps(working_bits);
    const auto& hi = sweeps(doubled_bits);
    std::size_t instances = 0;
    for (int g = 2; g <= 10; ++g) {
        const auto& a = lo.at(g);
        const auto& b = hi.at(g);
        for (int step = 0; step < 3; ++step) {
            const auto cmp = reduction::compare_precisions(*a.ctx, a.step[step], *b.ctx, b.step[step]);
            instances += a.step[step].instances;
            if (!cmp.all())
                v.fail("g=" + std::to_string(g) + " step " + std::to_string(step + 1) + ": " +
                       std::to_string(cmp.mismatched_instances) + " mismatches");
        }
    }
    v.note(std::to_string(instances) + " instances: convergents, witness indices and bounds identical at " +
           std::to_string(working_bits) + " and " + std::to_string(doubled_bits) + " bits");
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty()) which = {1, 2, 3, 4, 5};
    const char* names[] = {"", "solution list", "reduced bounds", "absolute bounds", "certified properties",
                           "precision certification"};
    bool all = true;
    for (int c : which) {
        Verdict v;
        try {
            switch (c) {
                case 1: v = criterion1(); break;
                case 2: v = criterion2(); break;
                case 3: v = criterion3(); break;
                case 4: v = criterion4(); break;
                case 5: v = criterion5(); break;
                default: std::cerr << "unknown criterion " << c << '\n'; return 2;
            }
        } catch (const std::exception& e) {
            v.fail(std::string("exception: ") + e.what());
        }
        all = all && v.pass;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c << " (" << names[c] << "): " << v.detail
                  << std::endl;
    }
    return all ? 0 : 1;
}
