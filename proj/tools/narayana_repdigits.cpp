#include "narayana/cli.hpp"
#include "narayana/mp.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

using narayana::cli::RunConfig;

struct Options {
    std::vector<int> g;
    bool all_bases = false;
    std::string step = "all";
    int precision = 1200;
    long k_max = -1;
    int l_max = 0, m_max = 0, n_max = 0;
    std::string format = "json";
    std::string out;
    bool strict = false;
    unsigned threads = narayana::default_threads();
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--g", o.g, "bases (space or comma separated)")->delimiter(',');
    cmd->add_option("--precision-bits", o.precision, "working precision in bits");
    cmd->add_option("--k-max", o.k_max, "largest Narayana index searched");
    cmd->add_option("--l-max", o.l_max, "length bound on the smallest repdigit");
    cmd->add_option("--m-max", o.m_max, "length bound on the middle repdigit");
    cmd->add_option("--n-max", o.n_max, "length bound on the largest repdigit");
    cmd->add_option("--format", o.format, "json, csv or markdown");
    cmd->add_option("--out", o.out, "write the report here instead of stdout");
    cmd->add_flag("--strict-heights", o.strict, "use h(a) = log(31)/3 in the absolute bounds");
    cmd->add_option("--threads", o.threads, "worker threads");
}

RunConfig to_config(const Options& o) {
    RunConfig cfg;
    if (!o.g.empty()) cfg.bases = o.g;
    cfg.precision_bits = o.precision;
    if (o.k_max >= 0) cfg.k_max = o.k_max;
    if (o.l_max != 0) cfg.ell_max = o.l_max;
    if (o.m_max != 0) cfg.m_max = o.m_max;
    if (o.n_max != 0) cfg.n_max = o.n_max;
    cfg.format = narayana::cli::parse_format(o.format);
    cfg.out = o.out;
    cfg.strict_heights = o.strict;
    cfg.threads = o.threads;
    cfg.step = o.step;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Narayana numbers as products of three repdigits: bounds, reduction, search"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(narayana::version));
    Options o;
    auto* bounds = app.add_subcommand("bounds", "absolute bounds from linear forms in logarithms");
    auto* reduce = app.add_subcommand("reduce", "continued-fraction reduction of the bounds");
    auto* search = app.add_subcommand("search", "exhaustive search in a box");
    auto* all = app.add_subcommand("all", "bounds, reduction and search end to end");
    for (auto* cmd : {bounds, reduce, search, all}) add_common(cmd, o);
    reduce->add_option("--step", o.step, "1, 2, 3 or all");
    reduce->add_flag("--all", o.all_bases, "every base 2..10");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        RunConfig cfg = to_config(o);
        if (o.all_bases) cfg.bases = {2, 3, 4, 5, 6, 7, 8, 9, 10};
        narayana::cli::CommandResult res;
        if (bounds->parsed()) res = narayana::cli::cmd_bounds(cfg);
        else if (reduce->parsed()) res = narayana::cli::cmd_reduce(cfg);
        else if (search->parsed()) res = narayana::cli::cmd_search(cfg);
        else res = narayana::cli::cmd_all(cfg);

        const std::string text = res.render(cfg.format);
        if (cfg.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(cfg.out, std::ios::binary);
            if (!f) throw narayana::cli::ConfigError("cannot open " + cfg.out);
            f << text;
        }
        for (const auto& c : res.checks)
            if (!c.pass) std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
        return res.exit_code();
    } catch (const narayana::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const narayana::mp::PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return 3;
    }
}
