#pragma once

// Command-line front end. run() returns the process exit code:
// 0 success, 1 domain error, 2 usage error.

#include <charconv>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "polycollatz/polycollatz.hpp"

namespace polycollatz::cli {

struct Range {
    unsigned lo = 0;
    unsigned hi = 0;
};

inline Range parse_range(const std::string& text) {
    const auto dots = text.find("..");
    auto num = [&](std::string_view s) {
        unsigned v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) throw ParseError(text, "expected a..b");
        return v;
    };
    if (dots == std::string::npos) {
        const unsigned v = num(text);
        return {v, v};
    }
    Range r{num(std::string_view(text).substr(0, dots)), num(std::string_view(text).substr(dots + 2))};
    if (r.hi < r.lo) throw ParseError(text, "empty range");
    return r;
}

inline void print_trace(std::ostream& out, const Poly& p, bool json) {
    const auto t = trace(p);
    if (json) {
        out << to_json(t).dump() << '\n';
        return;
    }
    out << format_sequence(t.odd_degrees) << '\n';
    out << "m=" << t.m << " r_A=" << t.r_A << '\n';
    out << to_text_record(t) << '\n';
}

inline void print_f(std::ostream& out, unsigned n, unsigned from, const SearchConfig& cfg, bool timing, bool json,
                    const std::string& convention = kLengthConvention) {
    const auto rows = convention == kStepConvention ? compute_f_steps_table(n, cfg) : compute_f_table(n, cfg);
    if (json) {
        auto arr = nlohmann::json::array();
        for (const auto& r : rows) {
            if (r.n >= from) arr.push_back(to_json(r, timing));
        }
        out << arr.dump() << '\n';
        return;
    }
    out << f_csv_header() << '\n';
    for (const auto& r : rows) {
        if (r.n >= from) out << to_csv_row(r, timing) << '\n';
    }
}

inline void print_g(std::ostream& out, unsigned n, unsigned from, const SearchConfig& cfg, bool timing, bool census,
                    bool json) {
    std::vector<GResult> results;
    for (unsigned k = std::max(from, 2u); k <= n; ++k) results.push_back(compute_g(k, cfg));
    if (census) {
        for (const auto& g : results) out << to_json(g.census).dump() << '\n';
        return;
    }
    if (json) {
        auto arr = nlohmann::json::array();
        for (const auto& g : results) arr.push_back(to_json(g.record, timing));
        out << arr.dump() << '\n';
        return;
    }
    out << f_csv_header() << '\n';
    for (const auto& g : results) out << to_csv_row(g.record, timing) << '\n';
}

inline void print_families(std::ostream& out, const std::string& check, const std::optional<Range>& range,
                           const std::vector<std::string>& families) {
    if (check == "c2" || check == "c3" || check == "c4") {
        if (!range) throw DomainError("--range is required for " + check);
        const auto rep = check == "c2"   ? check_conjecture_2(range->lo, range->hi)
                         : check == "c3" ? check_conjecture_3(range->lo, range->hi)
                                         : check_conjecture_4(range->lo, range->hi);
        out << verdict_csv(rep);
        return;
    }
    const Range r = range.value_or(Range{31, 34});
    const std::vector<std::string> kinds = families.empty() ? std::vector<std::string>{"T", "U", "S"} : families;
    for (const auto& name : kinds) {
        if (name == "P") {
            out << render_table("P", fixed_degree14_table());
            continue;
        }
        const auto kind = parse_family(name);
        out << render_table(name, family_table(kind, r.lo, r.hi));
    }
}

inline void print_matthews(std::ostream& out, const std::string& config, std::size_t max_degree, std::uint64_t steps,
                           std::optional<unsigned> upto, const std::optional<std::string>& seed, unsigned workers) {
    const auto cfg = load_config(config);
    if (seed) {
        const auto o = classify(cfg, parse(*seed), max_degree, steps);
        out << census_csv({CensusRow{parse(*seed), o}});
        out << "degrees=" << format_sequence(o.degrees) << '\n';
        out << "prefix=";
        for (std::size_t i = 0; i < o.prefix.size(); ++i) out << (i ? " -> " : "") << format(o.prefix[i]);
        out << '\n';
        return;
    }
    out << census_csv(census(cfg, *upto, max_degree, steps, workers));
}

inline void print_count(std::ostream& out, unsigned degree, const std::string& stratum) {
    if (stratum == "odd") {
        out << count(Stratum{degree, Constraint::odd}) << '\n';
        return;
    }
    for (auto c : {Constraint::eval0_zero, Constraint::eval0_one, Constraint::eval1_zero, Constraint::eval1_one}) {
        out << to_string(c) << ' ' << count(Stratum{degree, c}) << '\n';
    }
}

inline void print_polybound(std::ostream& out, unsigned n_max, const PolyBoundOptions& opts,
                            std::optional<unsigned> targeted) {
    const auto rep = polybound_report(n_max, opts);
    out << "n,mode,seeds,max_m,max_r_A,max_steps,bound,violations_r_A,violations_m,violations_steps,in_regime\n";
    for (const auto& r : rep.rows) {
        out << r.n << ',' << (r.exhaustive ? "exhaustive" : "sampled") << ',' << r.seeds << ',' << r.max_m << ','
            << r.max_m + 1 << ',' << r.max_steps << ',' << r.bound << ',' << r.violations << ',' << r.violations_m << ','
            << r.violations_steps << ',' << (r.in_regime ? "yes" : "no") << '\n';
    }
    if (targeted) {
        const auto t = targeted_length_check(*targeted, 10, 32, opts.workers);
        out << "targeted n=" << t.n << " chain_len=" << t.chain_len << " candidates=" << t.candidates << " m_range=" << t.min_m
            << ".." << t.max_m << " target=" << t.target << " matches_m=" << t.matches_m
            << " matches_m_plus_1=" << t.matches_m_plus_1 << " matches_steps=" << t.matches_steps;
        if (t.witness_m) out << " witness_m=" << to_hex(*t.witness_m);
        if (t.witness_m_plus_1) out << " witness_m_plus_1=" << to_hex(*t.witness_m_plus_1);
        if (t.witness_steps) out << " witness_steps=" << to_hex(*t.witness_steps);
        out << '\n';
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Collatz-type dynamics on binary polynomials", "polycollatz"};
    app.require_subcommand(1);

    std::string poly;
    bool json = false;
    auto* trace_cmd = app.add_subcommand("trace", "odd sequence of one seed");
    trace_cmd->add_option("--poly", poly, "seed, text or hex")->required();
    trace_cmd->add_flag("--json", json);

    unsigned n = 0, from = 1, par = 1, chunk_bits = 8;
    std::optional<unsigned> ceiling;
    std::string checkpoint;
    bool resume = false, timing = false, census_flag = false;
    std::optional<std::size_t> stop_after;
    auto search_opts = [&](CLI::App* c) {
        c->add_option("--n", n)->required();
        c->add_option("--from", from, "first row to print");
        c->add_option("--par", par, "worker threads")->check(CLI::Range(1u, 1024u));
        c->add_option("--chunk-bits", chunk_bits);
        c->add_option("--ceiling", ceiling);
        c->add_flag("--timing", timing, "fill wall_ms");
        c->add_flag("--json", json);
    };
    auto* f_cmd = app.add_subcommand("search-f", "longest trajectories");
    search_opts(f_cmd);
    f_cmd->add_option("--checkpoint", checkpoint);
    f_cmd->add_flag("--resume", resume);
    f_cmd->add_option("--stop-after-chunks", stop_after, "stop early, leaving a resumable checkpoint");
    std::string convention = kLengthConvention;
    f_cmd->add_option("--convention", convention, "m: odd terms of degree-n seeds; steps: transformations, row n = degree n-1")
        ->check(CLI::IsMember({kLengthConvention, kStepConvention}));
    auto* g_cmd = app.add_subcommand("search-g", "longest within-degree chains");
    search_opts(g_cmd);
    g_cmd->add_flag("--census", census_flag, "emit the chain census as JSON");

    std::string check, range_text;
    std::vector<std::string> families;
    auto* fam_cmd = app.add_subcommand("families", "seed families and conjecture checks");
    fam_cmd->add_option("--check", check)->required()->check(CLI::IsMember({"c2", "c3", "c4", "tables"}));
    fam_cmd->add_option("--range", range_text, "a..b");
    fam_cmd->add_option("--family", families, "tables only: T U S MPOW P");

    std::string config;
    std::size_t max_degree = 100;
    std::uint64_t steps = 10000;
    std::optional<unsigned> upto;
    std::optional<std::string> seed;
    auto* mat_cmd = app.add_subcommand("matthews", "generalized map census");
    mat_cmd->add_option("--config", config)->required();
    mat_cmd->add_option("--max-degree", max_degree)->required();
    mat_cmd->add_option("--steps", steps)->required();
    auto* upto_opt = mat_cmd->add_option("--all-seeds-upto", upto);
    auto* seed_opt = mat_cmd->add_option("--seed", seed);
    upto_opt->excludes(seed_opt);
    mat_cmd->add_option("--par", par)->check(CLI::Range(1u, 1024u));

    unsigned degree = 0;
    std::string stratum;
    auto* count_cmd = app.add_subcommand("count", "stratum sizes");
    count_cmd->add_option("--degree", degree)->required();
    count_cmd->add_option("--stratum", stratum)->required()->check(CLI::IsMember({"odd", "quadrants"}));

    unsigned n_max = 20;
    PolyBoundOptions pb;
    std::optional<unsigned> targeted;
    auto* pb_cmd = app.add_subcommand("polybound", "n(n+1)/2 bound report");
    pb_cmd->add_option("--n-max", n_max);
    pb_cmd->add_option("--exhaustive-limit", pb.exhaustive_limit);
    pb_cmd->add_option("--samples", pb.samples);
    pb_cmd->add_option("--par", pb.workers)->check(CLI::Range(1u, 1024u));
    pb_cmd->add_option("--targeted", targeted, "degree of the chain-length-10 check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }
    if (*mat_cmd && !upto && !seed) {
        err << "usage error: matthews needs --all-seeds-upto or --seed\n";
        return 2;
    }

    try {
        SearchConfig cfg;
        cfg.workers = par;
        cfg.chunk_bits = chunk_bits;
        cfg.ceiling = ceiling;
        if (!checkpoint.empty()) cfg.checkpoint = checkpoint;
        cfg.resume = resume;
        cfg.chunk_budget = stop_after;

        if (*trace_cmd) {
            print_trace(out, parse(poly), json);
        } else if (*f_cmd) {
            if (resume && checkpoint.empty()) throw DomainError("--resume needs --checkpoint");
            print_f(out, n, from, cfg, timing, json, convention);
        } else if (*g_cmd) {
            print_g(out, n, from, cfg, timing, census_flag, json);
        } else if (*fam_cmd) {
            std::optional<Range> r;
            if (!range_text.empty()) r = parse_range(range_text);
            print_families(out, check, r, families);
        } else if (*mat_cmd) {
            print_matthews(out, config, max_degree, steps, upto, seed, par);
        } else if (*count_cmd) {
            print_count(out, degree, stratum);
        } else if (*pb_cmd) {
            print_polybound(out, n_max, pb, targeted);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace polycollatz::cli
