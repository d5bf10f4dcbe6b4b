// Copyright (c) probbounds contributors.
// SPDX-License-Identifier: Apache-2.0
#include "commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "probbounds/backward.hpp"
#include "probbounds/errors.hpp"
#include "probbounds/monniaux.hpp"
#include "probbounds/oracle.hpp"

namespace probbounds::app {

namespace {

using Row = std::vector<std::string>;

void print_columns(std::ostream& out, const Row& header, const std::vector<Row>& rows) {
    std::vector<std::size_t> w(header.size());
    for (std::size_t i = 0; i < header.size(); ++i) {
        w[i] = header[i].size();
        for (const auto& r : rows) {
            w[i] = std::max(w[i], r[i].size());
        }
    }
    auto line = [&](const Row& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << (i == 0 ? "" : "  ");
            if (i + 1 == r.size()) {
                out << r[i];
            } else {
                out << std::left << std::setw(static_cast<int>(w[i])) << r[i];
            }
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) {
        line(r);
    }
}

std::string num(const Rational& r) { return r.numerator_str(); }
std::string den(const Rational& r) { return r.denominator_str(); }

std::ofstream open_out(const RunOptions& o, const std::string& name) {
    std::error_code ec;
    std::filesystem::create_directories(o.out_dir, ec);
    const auto path = o.out_dir / name;
    std::ofstream f(path);
    if (!f) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    return f;
}

struct OracleRow {
    std::string event;
    Rational estimate;
    double ci_low = 0;
    double ci_high = 1;
};

struct OracleRun {
    bool exact = false;
    std::vector<OracleRow> rows;
    std::vector<OracleEstimate> mc; // filled for mc runs
    double diverged = 0;
};

OracleRun run_oracle(const AnalysisConfig& c, const Resolved& r) {
    OracleRun run;
    if (c.oracle.method == "exhaustive") {
        run.exact = true;
        const auto values = exhaustive(r.program, discrete_points(*r.partition), r.events, c.oracle.budget);
        for (std::size_t e = 0; e < r.events.size(); ++e) {
            const double d = values[e].to_double();
            run.rows.push_back({r.events[e].name, values[e], d, d});
        }
        return run;
    }
    run.mc = mc_estimate(r.program, *r.partition, r.events, c.oracle.samples, c.oracle.seed, c.oracle.budget,
                         c.oracle.confidence);
    for (const auto& e : run.mc) {
        run.rows.push_back({e.event, e.estimate, e.ci_low, e.ci_high});
        run.diverged = e.diverged_fraction;
    }
    return run;
}

void print_oracle_header(const AnalysisConfig& c, const OracleRun& run, std::ostream& out) {
    if (run.exact) {
        out << "oracle: exhaustive enumeration, budget " << c.oracle.budget << " steps\n";
    } else {
        out << "oracle: monte-carlo, " << c.oracle.samples << " samples, seed " << c.oracle.seed << ", confidence "
            << c.oracle.confidence << ", budget " << c.oracle.budget << " steps\n"
            << "sampler: " << kSamplerDescription << '\n'
            << "diverged fraction: " << run.diverged << '\n';
    }
}

void write_oracle_file(const OracleRun& run, const RunOptions& o) {
    auto f = open_out(o, "oracle.csv");
    if (!run.exact) {
        write_oracle_csv(run.mc, f);
        return;
    }
    f << "event,exact_num,exact_den,exact_dec\n";
    for (const auto& r : run.rows) {
        f << csv_field(r.event) << ',' << num(r.estimate) << ',' << den(r.estimate) << ',' << decimal(r.estimate)
          << '\n';
    }
}

std::vector<Rational> monniaux_column(const AnalysisConfig& c, const Resolved& r) {
    const auto pairs = propagate(r.program, *r.partition);
    std::vector<Rational> col;
    for (const auto& e : r.events) {
        col.push_back(monniaux_upper(r.program, pairs, e.shape, c.boundaries));
    }
    return col;
}

void print_compare(const BoundsReport& rep, const std::vector<Rational>& mon, std::ostream& out) {
    std::vector<Row> rows;
    for (std::size_t e = 0; e < rep.rows.size(); ++e) {
        rows.push_back({rep.rows[e].name, rep.rows[e].upper.str(), mon[e].str(), decimal(rep.rows[e].upper),
                        decimal(mon[e])});
    }
    print_columns(out, {"event", "forward", "monniaux", "forward~", "monniaux~"}, rows);
}

void write_compare_csv(const BoundsReport& rep, const std::vector<Rational>& mon, std::ostream& f) {
    f << "event,forward_num,forward_den,monniaux_num,monniaux_den,forward_dec,monniaux_dec\n";
    for (std::size_t e = 0; e < rep.rows.size(); ++e) {
        const Rational& u = rep.rows[e].upper;
        f << csv_field(rep.rows[e].name) << ',' << num(u) << ',' << den(u) << ',' << num(mon[e]) << ','
          << den(mon[e]) << ',' << decimal(u) << ',' << decimal(mon[e]) << '\n';
    }
}

void print_preamble(const AnalysisConfig& c, const Resolved& r, std::ostream& out) {
    out << "program: " << r.program.name << " (" << r.program.num_params
        << (r.program.num_params == 1 ? " parameter)\n" : " parameters)\n")
        << "mode: " << to_string(r.partition->mode()) << ", boundaries: " << to_string(c.boundaries) << '\n';
}

} // namespace

void apply_overrides(AnalysisConfig& c, const RunOptions& o) {
    if (o.oracle) {
        if (*o.oracle != "none" && *o.oracle != "mc" && *o.oracle != "exhaustive") {
            throw ConfigError("--oracle must be mc, exhaustive or none");
        }
        c.oracle.method = *o.oracle;
    }
    if (o.samples) {
        c.oracle.samples = *o.samples;
    }
    if (o.seed) {
        c.oracle.seed = *o.seed;
    }
    if (o.confidence) {
        if (!(*o.confidence > 0 && *o.confidence < 1)) {
            throw ConfigError("--confidence must lie strictly between 0 and 1");
        }
        c.oracle.confidence = *o.confidence;
    }
    if (o.compare) {
        c.compare_monniaux = true;
    }
    if (o.refine) {
        if (*o.refine == 0) {
            throw ConfigError("--refine must be at least 1");
        }
        c.refine = *o.refine;
    }
    if ((c.oracle.method == "mc") && c.oracle.samples == 0) {
        throw ConfigError("oracle samples must be at least 1");
    }
}

int cmd_analyze(const AnalysisConfig& c, const RunOptions& o, std::ostream& out, std::ostream& err) {
    const Resolved r = resolve(c);
    const ImgTable table = build_image_table(c, r);
    const BoundsReport rep = bounds_report(table, r.events, c.boundaries);
    if (o.csv) {
        write_csv(rep, out);
    } else {
        print_preamble(c, r, out);
        write_human(rep, out);
    }
    if (!o.out_dir.empty()) {
        auto f = open_out(o, "bounds.csv");
        write_csv(rep, f);
        auto t = open_out(o, "image_table.tbl");
        write_table(table, t);
    }

    int code = kExitOk;
    if (c.oracle.method != "none") {
        const OracleRun run = run_oracle(c, r);
        std::vector<Row> rows;
        std::vector<std::string> breaches;
        for (std::size_t e = 0; e < run.rows.size(); ++e) {
            const auto& b = rep.rows[e];
            const auto& x = run.rows[e];
            const bool ok = run.exact ? (b.lower <= x.estimate && x.estimate <= b.upper)
                                      : consistent(b.lower, b.upper, run.mc[e]);
            if (!ok) {
                breaches.push_back(x.event);
            }
            rows.push_back({x.event, decimal(x.estimate), decimal(Rational::from_double(x.ci_low)),
                            decimal(Rational::from_double(x.ci_high)), ok ? "yes" : "NO"});
        }
        if (!o.csv) {
            out << '\n';
            print_oracle_header(c, run, out);
            print_columns(out, {"event", "estimate", "ci_low", "ci_high", "within"}, rows);
        }
        if (!o.out_dir.empty()) {
            write_oracle_file(run, o);
        }
        for (const auto& b : breaches) {
            err << "containment breach: oracle estimate for '" << b << "' lies outside its bounds\n";
        }
        if (!breaches.empty()) {
            code = kExitBreach;
        }
    }
    if (c.compare_monniaux) {
        const auto mon = monniaux_column(c, r);
        if (!o.csv) {
            out << "\ncomparison with pair propagation (upper bounds)\n";
            print_compare(rep, mon, out);
        }
        if (!o.out_dir.empty()) {
            auto f = open_out(o, "compare.csv");
            write_compare_csv(rep, mon, f);
        }
    }
    return code;
}

int cmd_compare(const AnalysisConfig& c, const RunOptions& o, std::ostream& out) {
    const Resolved r = resolve(c);
    // Pair propagation first: it rejects loops before any table is built.
    const auto mon = monniaux_column(c, r);
    const BoundsReport rep = bounds_report(build_image_table(c, r), r.events, c.boundaries);
    if (o.csv) {
        write_compare_csv(rep, mon, out);
    } else {
        print_preamble(c, r, out);
        print_compare(rep, mon, out);
    }
    if (!o.out_dir.empty()) {
        auto f = open_out(o, "compare.csv");
        write_compare_csv(rep, mon, f);
    }
    return kExitOk;
}

int cmd_oracle(const AnalysisConfig& c, const RunOptions& o, std::ostream& out) {
    AnalysisConfig cc = c;
    if (cc.oracle.method == "none") {
        cc.oracle.method = "mc";
    }
    const Resolved r = resolve(cc);
    const OracleRun run = run_oracle(cc, r);
    if (o.csv) {
        if (!run.exact) {
            write_oracle_csv(run.mc, out);
        } else {
            out << "event,exact_num,exact_den,exact_dec\n";
            for (const auto& x : run.rows) {
                out << csv_field(x.event) << ',' << num(x.estimate) << ',' << den(x.estimate) << ','
                    << decimal(x.estimate) << '\n';
            }
        }
    } else {
        print_preamble(cc, r, out);
        print_oracle_header(cc, run, out);
        std::vector<Row> rows;
        for (const auto& x : run.rows) {
            rows.push_back({x.event, run.exact ? x.estimate.str() : decimal(x.estimate),
                            decimal(Rational::from_double(x.ci_low)), decimal(Rational::from_double(x.ci_high))});
        }
        print_columns(out, {"event", "estimate", "ci_low", "ci_high"}, rows);
    }
    if (!o.out_dir.empty()) {
        write_oracle_file(run, o);
    }
    return kExitOk;
}

int cmd_backward(const std::filesystem::path& instance, const RunOptions& o, std::ostream& out) {
    const BackwardInstance inst = load_backward_instance(read_text(instance));
    const auto rows = backward_report(inst);
    BoundsReport rep{{}, inst.space.blocks().size(), "pre-sharp"};
    for (const auto& r : rows) {
        rep.rows.push_back({r.name, r.lower, r.upper, 0, 0});
    }
    if (o.csv) {
        write_csv(rep, out);
    } else {
        out << "space: " << inst.space.size() << " points in " << inst.space.blocks().size() << " blocks"
            << (inst.concrete ? ", pre-sharp validated against the concrete function" : "") << '\n';
        std::vector<Row> table;
        for (const auto& r : rows) {
            table.push_back({r.name, r.lower.str(), r.upper.str(), decimal(r.lower), decimal(r.upper)});
        }
        print_columns(out, {"event", "lower", "upper", "lower~", "upper~"}, table);
    }
    if (!o.out_dir.empty()) {
        auto f = open_out(o, "backward.csv");
        write_csv(rep, f);
    }
    return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probability bounds from image and pre-image over-approximations"};
    app.require_subcommand(1);
    RunOptions opts;
    std::filesystem::path config;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double confidence = 0;
    std::string oracle;
    std::string compare;
    std::uint32_t refine = 0;

    auto common = [&](CLI::App* sub, bool analysis) {
        sub->add_option("--config", config, "Config file (JSON)")->required();
        sub->add_option("--out", opts.out_dir, "Directory for CSV and table files");
        sub->add_flag("--csv", opts.csv, "Print CSV instead of a table");
        if (analysis) {
            sub->add_option("--oracle", oracle, "Oracle method: mc, exhaustive or none");
            sub->add_option("--samples", samples, "Monte-Carlo sample count");
            sub->add_option("--seed", seed, "Monte-Carlo seed");
            sub->add_option("--confidence", confidence, "Confidence level of the binomial intervals");
            sub->add_option("--refine", refine, "Split every grid cell K ways per dimension");
        }
    };
    CLI::App* analyze = app.add_subcommand("analyze", "Forward bounds for the configured events");
    common(analyze, true);
    analyze->add_option("--compare", compare, "Also compare against pair propagation (monniaux)");
    CLI::App* cmp = app.add_subcommand("compare", "Forward bounds next to pair-propagation bounds");
    common(cmp, true);
    cmp->add_option("--compare", compare, "Comparison baseline (monniaux)");
    CLI::App* orc = app.add_subcommand("oracle", "Estimate or enumerate the exact output probabilities");
    common(orc, true);
    CLI::App* back = app.add_subcommand("backward", "Bounds from a pre-image over-approximation");
    common(back, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }
    try {
        if (!compare.empty() && compare != "monniaux") {
            throw ConfigError("--compare only supports 'monniaux'");
        }
        opts.compare = !compare.empty();
        if (!oracle.empty()) {
            opts.oracle = oracle;
        }
        for (auto* sub : {analyze, cmp, orc}) {
            if (sub->parsed()) {
                if (sub->count("--samples") > 0) {
                    opts.samples = samples;
                }
                if (sub->count("--seed") > 0) {
                    opts.seed = seed;
                }
                if (sub->count("--confidence") > 0) {
                    opts.confidence = confidence;
                }
                if (sub->count("--refine") > 0) {
                    opts.refine = refine;
                }
            }
        }
        if (back->parsed()) {
            return cmd_backward(config, opts, out);
        }
        AnalysisConfig c = load_config(config);
        apply_overrides(c, opts);
        if (analyze->parsed()) {
            return cmd_analyze(c, opts, out, err);
        }
        if (cmp->parsed()) {
            return cmd_compare(c, opts, out);
        }
        return cmd_oracle(c, opts, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const PartitionError& e) {
        err << "partition error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const TableError& e) {
        err << "table error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const AnalysisError& e) {
        err << "analysis error: " << e.what() << '\n';
        return kExitAnalysis;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitAnalysis;
    }
}

} // namespace probbounds::app
