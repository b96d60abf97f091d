#pragma once

// Pipeline commands behind the narayana-repdigits tool: bounds, reduce, search, all.
// Each command returns a report tree plus the checks it ran; rendering to
// JSON, CSV or Markdown is deterministic for a fixed RunConfig.

#include "narayana/algebraic.hpp"
#include "narayana/matveev.hpp"
#include "narayana/mp.hpp"
#include "narayana/parallel.hpp"
#include "narayana/reduction.hpp"
#include "narayana/reference.hpp"
#include "narayana/search.hpp"
#include "narayana/version.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace narayana::cli {

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Format { json, csv, markdown };

inline Format parse_format(const std::string& s) {
    if (s == "json") return Format::json;
    if (s == "csv") return Format::csv;
    if (s == "markdown" || s == "md") return Format::markdown;
    throw ConfigError("unknown format '" + s + "' (json, csv, markdown)");
}

inline const char* format_name(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        default: return "markdown";
    }
}

struct RunConfig {
    std::vector<int> bases{2, 3, 4, 5, 6, 7, 8, 9, 10};
    int precision_bits = 1200;
    std::optional<long> k_max;
    std::optional<int> ell_max;
    std::optional<int> m_max;
    std::optional<int> n_max;
    Format format = Format::json;
    std::string out;
    bool strict_heights = false;
    unsigned threads = default_threads();
    std::string step = "all";

    void validate() const {
        if (bases.empty()) throw ConfigError("no bases given");
        for (int g : bases)
            if (g < 2 || g > 36) throw ConfigError("base " + std::to_string(g) + " outside [2, 36]");
        if (precision_bits < 128) throw ConfigError("precision must be at least 128 bits");
        if (k_max && *k_max < 0) throw ConfigError("--k-max must be non-negative");
        for (const auto* v : {&ell_max, &m_max, &n_max})
            if (*v && **v < 1) throw ConfigError("length bounds must be positive");
        if (step != "1" && step != "2" && step != "3" && step != "all")
            throw ConfigError("--step must be 1, 2, 3 or all");
        if (threads < 1) throw ConfigError("--threads must be positive");
    }

    bounds::HeightMode mode() const { return strict_heights ? bounds::HeightMode::strict : bounds::HeightMode::published; }

    json to_json() const {
        json j;
        j["bases"] = bases;
        j["precision_bits"] = precision_bits;
        j["k_max"] = k_max ? json(*k_max) : json();
        j["ell_max"] = ell_max ? json(*ell_max) : json();
        j["m_max"] = m_max ? json(*m_max) : json();
        j["n_max"] = n_max ? json(*n_max) : json();
        j["format"] = format_name(format);
        j["strict_heights"] = strict_heights;
        j["step"] = step;
        return j;
    }
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CommandResult {
    json report;
    std::vector<Check> checks;
    std::string csv;
    std::string markdown;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    int exit_code() const { return all_pass() ? 0 : 1; }

    std::string render(Format f) const {
        if (f == Format::csv) return csv;
        if (f == Format::markdown) return markdown;
        return report.dump(2) + "\n";
    }
};

namespace detail {

inline std::string sci(long double v, int digits = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*Le", digits, v);
    return buf;
}

inline std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Shortest decimal that reads back as v.
inline std::string num(double v) {
    char buf[64];
    for (int p = 1; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

inline json checks_json(const std::vector<Check>& cs) {
    json arr = json::array();
    for (const auto& c : cs) arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return arr;
}

inline std::string checks_markdown(const std::vector<Check>& cs) {
    std::ostringstream md;
    md << "| check | result | detail |\n|---|---|---|\n";
    for (const auto& c : cs) md << "| " << c.name << " | " << (c.pass ? "pass" : "FAIL") << " | " << c.detail << " |\n";
    return md.str();
}

inline json header(const RunConfig& cfg, const std::string& command) {
    json j;
    j["tool"] = "narayana-repdigits";
    j["version"] = version;
    j["command"] = command;
    j["config"] = cfg.to_json();
    j["precision_bits"] = cfg.precision_bits;
    return j;
}

inline const char* mode_name(bounds::HeightMode m) {
    return m == bounds::HeightMode::published ? "published" : "strict";
}

}  // namespace detail

// ---------------------------------------------------------------------------
// bounds

struct BoundsOutcome {
    std::map<int, bounds::BoundChainReport> per_g;
};

inline CommandResult cmd_bounds(const RunConfig& cfg, BoundsOutcome* outcome = nullptr) {
    cfg.validate();
    CommandResult res;
    res.report = detail::header(cfg, "bounds");
    const CubicConstants c = compute_constants(cfg.precision_bits);
    const ConstantsCheck cc = check_constants(c);
    res.checks.push_back({"constants certified", cc.all(), "alpha = " + c.alpha.midpoint().to_string(30)});
    res.report["constants"] = {
        {"alpha", c.alpha.midpoint().to_string(40)},
        {"beta", {c.beta_re.midpoint().to_string(30), c.beta_im.midpoint().to_string(30)}},
        {"a", c.a.midpoint().to_string(40)},
        {"b", {c.b_re.midpoint().to_string(30), c.b_im.midpoint().to_string(30)}},
        {"enclosure_radius", c.error_radius.to_string(3)},
        {"height_alpha", detail::num(static_cast<double>(height_alpha(c)))},
        {"height_a", detail::num(static_cast<double>(height_binet_coefficient(c)))},
        {"height_a_published", detail::num(static_cast<double>(published_height_bound_binet_coefficient()))},
    };

    const auto engine = bounds::BoundEngine::from_constants(c, cfg.mode());
    const long double M = reduction::default_M().get_d();
    std::ostringstream csv, md;
    csv << "g,mode,ell_bound,m_bound,n_bound,k_bound,n_over_log9g,k_over_log10g\n";
    md << "## Absolute bounds (" << detail::mode_name(cfg.mode()) << " heights)\n\n"
       << "| g | l < | m < | n < | k < | n / log^9 g | k / log^10 g |\n|---|---|---|---|---|---|---|\n";
    json rows = json::array();
    for (int g : cfg.bases) {
        const auto rep = engine.chain_report(g);
        if (outcome) outcome->per_g[g] = rep;
        const long double L = std::log(static_cast<long double>(g));
        const long double n_ratio = rep.n_bound / std::pow(L, 9.0L);
        const long double k_ratio = rep.k_bound / std::pow(L, 10.0L);
        json row;
        row["g"] = g;
        row["mode"] = detail::mode_name(cfg.mode());
        row["ell_bound"] = static_cast<double>(rep.ell_bound);
        row["m_bound"] = static_cast<double>(rep.m_bound);
        row["n_bound"] = static_cast<double>(rep.n_bound);
        row["k_bound"] = static_cast<double>(rep.k_bound);
        row["n_bound_over_log9g"] = static_cast<double>(n_ratio);
        row["k_bound_over_log10g"] = static_cast<double>(k_ratio);
        json inter;
        for (const auto& [k, v] : rep.intermediate) inter[k] = static_cast<double>(v);
        row["intermediate"] = inter;
        row["relaxation_holds_from_n_2"] = bounds::relaxation_holds(g, 2);
        row["log_inequality_holds"] = bounds::published_log_inequality_holds(g);
        rows.push_back(row);
        res.checks.push_back({"g=" + std::to_string(g) + " n_bound <= 5.91e49 log^9 g", n_ratio <= reference::n_coefficient,
                              detail::sci(n_ratio) + " log^9 g"});
        res.checks.push_back({"g=" + std::to_string(g) + " k_bound <= 4.73e50 log^10 g",
                              k_ratio <= reference::k_coefficient, detail::sci(k_ratio) + " log^10 g"});
        res.checks.push_back({"g=" + std::to_string(g) + " k_bound <= M", rep.k_bound <= M, detail::sci(rep.k_bound)});
        csv << g << ',' << detail::mode_name(cfg.mode()) << ',' << detail::sci(rep.ell_bound) << ','
            << detail::sci(rep.m_bound) << ',' << detail::sci(rep.n_bound) << ',' << detail::sci(rep.k_bound) << ','
            << detail::sci(n_ratio) << ',' << detail::sci(k_ratio) << '\n';
        md << "| " << g << " | " << detail::sci(rep.ell_bound, 3) << " | " << detail::sci(rep.m_bound, 3) << " | "
           << detail::sci(rep.n_bound, 3) << " | " << detail::sci(rep.k_bound, 3) << " | " << detail::sci(n_ratio, 3)
           << " | " << detail::sci(k_ratio, 3) << " |\n";
    }
    res.report["bounds"] = rows;

    // Closed-form chain, always with the published heights it is stated for.
    const auto closed = bounds::BoundEngine::from_constants(c, bounds::HeightMode::published).closed_form_constants();
    json chain = json::array();
    csv << "\nconstant,published,recomputed,relative_difference,stage_local,stage_local_difference\n";
    md << "\n## Closed-form chain\n\n| constant | stated | recomputed | diff | from stated predecessor | diff |\n"
       << "|---|---|---|---|---|---|\n";
    for (const auto& k : closed) {
        chain.push_back({{"name", k.name},
                         {"published", static_cast<double>(k.published)},
                         {"recomputed", static_cast<double>(k.recomputed)},
                         {"relative_difference", static_cast<double>(k.relative_difference())},
                         {"stage_local", static_cast<double>(k.stage_local)},
                         {"stage_local_difference", static_cast<double>(k.stage_local_difference())}});
        const bool pinned = k.name == "ell_coefficient" || k.name == "m_coefficient" || k.name == "n_implicit_coefficient";
        if (pinned)
            res.checks.push_back({"constant " + k.name + " within 5%", std::fabs(k.relative_difference()) <= 0.05L,
                              detail::sci(k.recomputed, 3) + " vs " + detail::sci(k.published, 2) + " (" +
                                  detail::fixed(static_cast<double>(100 * k.relative_difference()), 1) + "%)"});
        csv << k.name << ',' << detail::sci(k.published) << ',' << detail::sci(k.recomputed) << ','
            << detail::fixed(static_cast<double>(k.relative_difference()), 4) << ',' << detail::sci(k.stage_local) << ','
            << detail::fixed(static_cast<double>(k.stage_local_difference()), 4) << '\n';
        md << "| " << k.name << " | " << detail::sci(k.published, 2) << " | " << detail::sci(k.recomputed, 3) << " | "
           << detail::fixed(static_cast<double>(100 * k.relative_difference()), 1) << "% | "
           << detail::sci(k.stage_local, 3) << " | "
           << detail::fixed(static_cast<double>(100 * k.stage_local_difference()), 1) << "% |\n";
    }
    res.report["closed_form_chain"] = chain;
    res.report["checks"] = detail::checks_json(res.checks);
    md << "\n" << detail::checks_markdown(res.checks);
    res.csv = csv.str();
    res.markdown = md.str();
    return res;
}

// ---------------------------------------------------------------------------
// reduce

struct ReducedBounds {
    int ell_max = 0;
    int m_max = 0;
    int n_max = 0;
};

struct ReduceOutcome {
    std::map<int, ReducedBounds> per_g;
};

namespace detail {

inline json step_json(const reduction::StepReport& r, const reduction::ReductionContext& ctx) {
    json j;
    j["step"] = r.step;
    j["g"] = r.g;
    j["first_convergent"] = reduction::convergent_number(r.first_convergent);
    j["first_q"] = ctx.convergents()[r.first_convergent].q.get_str();
    j["bound"] = r.bound;
    j["instances"] = r.instances;
    j["min_epsilon_at_first_convergent"] = num(r.min_epsilon_at_first);
    j["min_epsilon"] = num(r.min_epsilon);
    j["worst"] = {{"instance", r.worst.label()},
                  {"convergent", reduction::convergent_number(r.worst.t)},
                  {"epsilon", num(r.worst.epsilon)},
                  {"w_bound", num(r.worst.w_bound)},
                  {"bound", r.worst.bound}};
    json hist;
    for (const auto& [t, n] : r.convergent_histogram) hist[std::to_string(reduction::convergent_number(t))] = n;
    j["convergent_histogram"] = hist;
    j["unresolved"] = r.unresolved;
    if (r.bound_half_A) j["bound_with_A_4_over_log_alpha"] = *r.bound_half_A;
    if (r.bound_m_le_183) j["bound_with_m_le_183"] = *r.bound_m_le_183;
    if (reference::has_base(r.g)) {
        j["reference"] = {{"convergent", reference::convergent(r.step, r.g)},
                          {"epsilon", reference::epsilon(r.step, r.g)},
                          {"bound", reference::bound(r.step, r.g)}};
    }
    return j;
}

inline const char* step_variable(int step) { return step == 1 ? "l" : step == 2 ? "m" : "n"; }

}  // namespace detail

inline CommandResult cmd_reduce(const RunConfig& cfg, ReduceOutcome* outcome = nullptr) {
    cfg.validate();
    CommandResult res;
    res.report = detail::header(cfg, "reduce");
    const int last_step = cfg.step == "all" ? 3 : std::stoi(cfg.step);
    const int first_step = cfg.step == "all" ? 1 : last_step;
    const mpz_class M = reduction::default_M();
    res.report["M"] = M.get_str();

    const auto engine = bounds::BoundEngine::from_constants(compute_constants(cfg.precision_bits), cfg.mode());
    std::map<int, std::vector<json>> rows_by_step;
    std::map<int, std::vector<reduction::StepReport>> reports_by_step;
    json per_g = json::array();
    for (int g : cfg.bases) {
        const long double k_bound = engine.derive_n_bound(g).k_bound;
        res.checks.push_back({"g=" + std::to_string(g) + " M covers k bound", k_bound <= M.get_d(),
                              detail::sci(k_bound) + " <= 1.99e54"});
        const int max_len = std::max({cfg.ell_max.value_or(0), cfg.m_max.value_or(0), 260});
        const reduction::ReductionContext lo(g, M, cfg.precision_bits, max_len);
        const reduction::ReductionContext hi(g, M, 2 * cfg.precision_bits, max_len);
        json gj;
        gj["g"] = g;
        gj["convergents_computed"] = lo.convergents().size();
        gj["first_convergent"] = reduction::convergent_number(lo.first_convergent());
        json steps = json::array();
        ReducedBounds rb;
        for (int step = 1; step <= last_step; ++step) {
            auto run = [&](const reduction::ReductionContext& ctx) {
                if (step == 1) return reduction::sweep_step1(ctx, cfg.threads);
                if (step == 2) return reduction::sweep_step2(ctx, rb.ell_max, cfg.threads);
                return reduction::sweep_step3(ctx, rb.ell_max, rb.m_max, cfg.threads);
            };
            const bool shown = step >= first_step;
            // Prerequisite steps may be replaced by explicit overrides.
            if (!shown && ((step == 1 && cfg.ell_max) || (step == 2 && cfg.m_max))) {
                (step == 1 ? rb.ell_max : rb.m_max) = step == 1 ? *cfg.ell_max : *cfg.m_max;
                continue;
            }
            const auto rep = run(lo);
            int used = rep.bound;
            if (step == 1) used = cfg.ell_max.value_or(rep.bound);
            if (step == 2) used = cfg.m_max.value_or(rep.bound);
            if (step == 3) used = cfg.n_max.value_or(rep.bound);
            (step == 1 ? rb.ell_max : step == 2 ? rb.m_max : rb.n_max) = used;
            if (!shown) continue;

            const std::string tag = "g=" + std::to_string(g) + " step " + std::to_string(step);
            const auto rep_hi = run(hi);
            const auto cmp = reduction::compare_precisions(lo, rep, hi, rep_hi);
            res.checks.push_back({tag + " stable under precision doubling", cmp.all(),
                                  std::to_string(cmp.mismatched_instances) + " mismatched instances at " +
                                      std::to_string(2 * cfg.precision_bits) + " bits"});
            res.checks.push_back({tag + " every instance has a witness", rep.unresolved.empty(),
                                  std::to_string(rep.unresolved.size()) + " unresolved"});
            const auto wc = reduction::reverify_witness(g, step, rep.worst, M, 2 * cfg.precision_bits + 64);
            res.checks.push_back({tag + " worst witness re-verified", wc.all(),
                                  rep.worst.label() + " at q_" +
                                      std::to_string(reduction::convergent_number(rep.worst.t))});
            if (reference::has_base(g)) {
                const int ref = reference::bound(step, g);
                res.checks.push_back({tag + " bound within 2 of reference",
                                      std::abs(rep.bound - ref) <= reference::bound_tolerance,
                                      std::string(detail::step_variable(step)) + " <= " + std::to_string(rep.bound) +
                                          " vs " + std::to_string(ref)});
            }
            json sj = detail::step_json(rep, lo);
            sj["inputs"] = {{"ell_max", step >= 2 ? json(rb.ell_max) : json()},
                            {"m_max", step == 3 ? json(rb.m_max) : json()}};
            sj["certification"] = {{"precision_bits", 2 * cfg.precision_bits},
                                   {"convergents_identical", cmp.convergents_identical},
                                   {"witnesses_identical", cmp.witnesses_identical},
                                   {"bounds_identical", cmp.bounds_identical}};
            sj["worst_witness_check"] = {{"q_exceeds_6M", wc.q_exceeds_6M},
                                         {"coprime", wc.coprime},
                                         {"epsilon_positive", wc.epsilon_positive},
                                         {"same_convergent", wc.same_convergent},
                                         {"w_bound_consistent", wc.w_bound_consistent}};
            steps.push_back(sj);
            reports_by_step[step].push_back(rep);
        }
        gj["steps"] = steps;
        per_g.push_back(gj);
        if (outcome) outcome->per_g[g] = rb;
    }
    res.report["reduction"] = per_g;
    res.report["checks"] = detail::checks_json(res.checks);

    std::ostringstream csv, md;
    csv << "g,step,convergent,min_epsilon,bound,reference_bound,worst_instance,worst_w_bound,instances,unresolved\n";
    for (int step = first_step; step <= last_step; ++step) {
        const auto& reps = reports_by_step[step];
        for (const auto& r : reps)
            csv << r.g << ',' << step << ',' << reduction::convergent_number(r.first_convergent) << ','
                << detail::num(r.min_epsilon_at_first) << ',' << r.bound << ','
                << (reference::has_base(r.g) ? std::to_string(reference::bound(step, r.g)) : "") << ",\""
                << r.worst.label() << "\"," << detail::num(r.worst.w_bound) << ',' << r.instances << ','
                << r.unresolved.size() << '\n';

        md << "## Step " << step << ": upper bound on " << detail::step_variable(step) << "\n\n| g |";
        for (const auto& r : reps) md << ' ' << r.g << " |";
        md << "\n|---|";
        for (std::size_t i = 0; i < reps.size(); ++i) md << "---|";
        md << "\n| q_t |";
        for (const auto& r : reps) md << " q_" << reduction::convergent_number(r.first_convergent) << " |";
        md << "\n| eps >= |";
        for (const auto& r : reps) md << ' ' << detail::sci(r.min_epsilon_at_first, 1) << " |";
        md << "\n| " << detail::step_variable(step) << " <= |";
        for (const auto& r : reps) md << ' ' << r.bound << " |";
        md << "\n| reference |";
        for (const auto& r : reps)
            md << ' ' << (reference::has_base(r.g) ? std::to_string(reference::bound(step, r.g)) : "-") << " |";
        md << "\n| worst |";
        for (const auto& r : reps) md << ' ' << r.worst.label() << " |";
        if (step == 3) {
            md << "\n| A = 4/log alpha |";
            for (const auto& r : reps) md << ' ' << r.bound_half_A.value_or(0) << " |";
            md << "\n| m <= 183 |";
            for (const auto& r : reps) md << ' ' << r.bound_m_le_183.value_or(0) << " |";
        }
        md << "\n\n";
    }
    md << detail::checks_markdown(res.checks);
    res.csv = csv.str();
    res.markdown = md.str();
    return res;
}

// ---------------------------------------------------------------------------
// search

namespace detail {

inline json solution_json(const search::SolutionRecord& s) {
    json f = json::array();
    for (const auto& r : s.factors)
        f.push_back({{"digit", r.digit}, {"length", r.length}, {"digits", r.digits()}, {"value", r.value.get_str()}});
    return {{"k", s.k}, {"value", s.value.get_str()}, {"notation", s.notation()}, {"factors", f}};
}

inline bool covers_list(const search::SearchBox& b) {
    return b.k_max >= 16 && b.ell_max >= 2 && b.m_max >= 3 && b.n_max >= 6;
}

}  // namespace detail

inline CommandResult search_with_boxes(const RunConfig& cfg, const std::vector<search::SearchBox>& boxes,
                                       const std::string& command) {
    CommandResult res;
    res.report = detail::header(cfg, command);
    std::vector<search::SearchResult> results;
    std::size_t k_table = 0;
    for (const auto& b : boxes) results.push_back(search::search(b, cfg.threads));
    for (const auto& r : results) k_table = std::max<std::size_t>(k_table, static_cast<std::size_t>(r.k_scanned));
    const NarayanaTable table = narayana_upto(k_table + 1);

    json per_g = json::array();
    std::ostringstream csv, md;
    csv << "g,k,N_k,a,b,c\n";
    md << "## Solutions\n\n| k | N_k | [a,b,c]_g |\n|---|---|---|\n";
    std::map<long, std::pair<std::string, std::vector<std::string>>> by_k;
    bool rechecked = true;
    bool full_list = true;
    for (const auto& r : results) {
        json gj;
        gj["g"] = r.box.g;
        gj["box"] = {{"k_max", r.box.k_max}, {"ell_max", r.box.ell_max}, {"m_max", r.box.m_max}, {"n_max", r.box.n_max}};
        gj["k_scanned"] = r.k_scanned;
        json sols = json::array();
        for (const auto& s : r.solutions) {
            sols.push_back(detail::solution_json(s));
            rechecked = rechecked && search::recheck(s, table);
            csv << s.g << ',' << s.k << ',' << s.value.get_str() << ',' << s.factors[0].digits() << ','
                << s.factors[1].digits() << ',' << s.factors[2].digits() << '\n';
            auto& slot = by_k[s.k];
            slot.first = s.value.get_str();
            slot.second.push_back(s.notation());
        }
        gj["solutions"] = sols;
        per_g.push_back(gj);
        full_list = full_list && detail::covers_list(r.box);
    }
    for (const auto& [k, v] : by_k) {
        md << "| " << k << " | " << v.first << " | ";
        for (std::size_t i = 0; i < v.second.size(); ++i) md << (i ? ", " : "") << v.second[i];
        md << " |\n";
    }
    res.report["search"] = per_g;
    res.checks.push_back({"every solution rechecked by independent multiplication", rechecked, ""});

    std::vector<int> bases;
    for (const auto& b : boxes) bases.push_back(b.g);
    std::sort(bases.begin(), bases.end());
    bool all_bases = true;
    for (int g = 2; g <= 10; ++g) all_bases = all_bases && std::binary_search(bases.begin(), bases.end(), g);
    if (full_list) {
        const auto t1 = search::verify_known_list(results);
        json vs = json::array();
        for (const auto& v : t1.value_set) vs.push_back(v.get_str());
        res.report["table_comparison"] = {{"value_set", vs},
                                          {"value_set_matches", t1.value_set_matches},
                                          {"missing", t1.missing},
                                          {"unexpected", t1.unexpected},
                                          {"invalid_rows", t1.invalid_rows},
                                          {"factorizations_match", t1.factorizations_match},
                                          {"only_typos", t1.only_typos()}};
        if (all_bases) {
            std::string vals;
            for (const auto& v : t1.value_set) vals += (vals.empty() ? "" : ",") + v.get_str();
            res.checks.push_back({"value set equals {1,2,3,4,6,9,13,28,60,88,129,189}", t1.value_set_matches, vals});
        }
        res.checks.push_back({"factorizations match the list up to itemized typos", t1.only_typos(),
                              std::to_string(t1.missing.size()) + " missing, " + std::to_string(t1.unexpected.size()) +
                                  " unexpected, " + std::to_string(t1.invalid_rows.size()) + " invalid rows"});
        md << "\n## Comparison with the published list\n\n";
        for (const auto& m : t1.invalid_rows) md << "- invalid row: " << m << "\n";
        for (const auto& m : t1.missing) md << "- missing: " << m << "\n";
        for (const auto& m : t1.unexpected) md << "- unexpected: " << m << "\n";
        if (t1.missing.empty() && t1.unexpected.empty()) md << "- no discrepancies\n";
    } else {
        res.report["table_comparison"] = json();
    }
    res.report["checks"] = detail::checks_json(res.checks);
    md << "\n" << detail::checks_markdown(res.checks);
    res.csv = csv.str();
    res.markdown = md.str();
    return res;
}

inline search::SearchBox default_box(int g, const RunConfig& cfg) {
    search::SearchBox b;
    b.g = g;
    b.k_max = cfg.k_max.value_or(reference::k_box);
    b.ell_max = cfg.ell_max.value_or(reference::ell_box);
    b.m_max = cfg.m_max.value_or(reference::m_box);
    b.n_max = cfg.n_max.value_or(reference::n_box);
    return b;
}

inline CommandResult cmd_search(const RunConfig& cfg) {
    cfg.validate();
    std::vector<search::SearchBox> boxes;
    for (int g : cfg.bases) boxes.push_back(default_box(g, cfg));
    return search_with_boxes(cfg, boxes, "search");
}

// ---------------------------------------------------------------------------
// all

inline CommandResult cmd_all(const RunConfig& cfg_in) {
    RunConfig cfg = cfg_in;
    cfg.validate();
    cfg.step = "all";
    CommandResult res;
    res.report = detail::header(cfg, "all");

    const CommandResult b = cmd_bounds(cfg);
    RunConfig reduce_cfg = cfg;
    // Overrides shape the search box only; the reduction always runs in full.
    reduce_cfg.ell_max.reset();
    reduce_cfg.m_max.reset();
    reduce_cfg.n_max.reset();
    ReduceOutcome reduced;
    const CommandResult r = cmd_reduce(reduce_cfg, &reduced);

    std::vector<search::SearchBox> boxes;
    for (int g : cfg.bases) {
        const auto& rb = reduced.per_g.at(g);
        search::SearchBox box;
        box.g = g;
        box.k_max = cfg.k_max.value_or(reference::k_box);
        box.ell_max = cfg.ell_max.value_or(rb.ell_max);
        box.m_max = cfg.m_max.value_or(rb.m_max);
        box.n_max = cfg.n_max.value_or(rb.n_max);
        boxes.push_back(box);
    }
    const CommandResult s = search_with_boxes(cfg, boxes, "search");

    res.report["bounds"] = b.report;
    res.report["reduce"] = r.report;
    res.report["search"] = s.report;
    for (const auto* part : {&b, &r, &s}) res.checks.insert(res.checks.end(), part->checks.begin(), part->checks.end());
    res.report["checks"] = detail::checks_json(res.checks);
    res.csv = b.csv + "\n" + r.csv + "\n" + s.csv;
    res.markdown = b.markdown + "\n" + r.markdown + "\n" + s.markdown;
    return res;
}

}  // namespace narayana::cli
