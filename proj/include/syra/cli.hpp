#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "syra/census.hpp"
#include "syra/classify.hpp"
#include "syra/core.hpp"
#include "syra/int128.hpp"
#include "syra/pattern.hpp"
#include "syra/report.hpp"
#include "syra/verify.hpp"

namespace syra::cli {

enum class Command { Classify, Census, Density, Dropping, Feasibility, Verify, IncDec };

struct RunConfig {
    Command command = Command::Census;
    std::string m_text;                    // classify target, parsed as a decimal integer
    std::uint64_t max = 1'000'000;
    int n = 3;
    std::string pattern;                   // one-line permutation or run-length list
    int k = 3;                             // dropping table depth
    int cap = 256;                         // dropping iteration bound
    unsigned workers = 0;                  // 0 = SYRA_WORKERS or hardware parallelism
    ReportFormat format = ReportFormat::Table;
    std::string output_path;
    std::string suite;
    std::string golden_dir = "tests/golden";
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failure = 1;
inline constexpr int exit_usage = 2;

namespace detail {

inline unsigned resolve_workers(unsigned requested) {
    if (requested != 0) return requested;
    if (const char* env = std::getenv("SYRA_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return default_workers();
}

inline int emit(const RunConfig& config, const std::string& body, std::ostream& out,
                std::ostream& err) {
    if (config.output_path.empty()) {
        out << body;
        return exit_ok;
    }
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
        err << "error: cannot open output file " << config.output_path << '\n';
        return exit_usage;
    }
    file << body;
    return exit_ok;
}

inline int run_classify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto value = parse_u128(config.m_text);
    if (!value || *value == 0 || (*value & 1) == 0) {
        err << "error: --m must be a positive odd integer\n";
        return exit_usage;
    }
    const OddInt m(*value);
    const std::string body =
        config.n == 4 ? classify_json(*value, classify_quad(m))
                      : classify_json(*value, classify_triple(m));
    return emit(config, body, out, err);
}

inline int run_census(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto census = pattern_census(config.max, config.n, resolve_workers(config.workers));
    return emit(config, render_census(census, config.format), out, err);
}

inline int run_density(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto sigma = PermPattern::parse(config.pattern);
    if (!sigma) {
        err << "error: --pattern must be a permutation in one-line notation\n";
        return exit_usage;
    }
    if (sigma->size() != config.n) {
        err << "error: --pattern length does not match --n\n";
        return exit_usage;
    }
    const auto census = pattern_census(config.max, config.n, resolve_workers(config.workers));
    const auto estimate = density_estimate(census, *sigma);
    const std::string body = config.format == ReportFormat::Csv
                                 ? density_csv(*sigma, estimate)
                                 : density_json(census, *sigma, estimate);
    return emit(config, body, out, err);
}

inline int run_dropping(const RunConfig& config, std::ostream& out, std::ostream& err) {
    if (config.cap < config.k) {
        err << "error: --cap must be at least --k\n";
        return exit_usage;
    }
    const auto stats = dropping_census(config.max, config.k, resolve_workers(config.workers));
    return emit(config, render_dropping(stats, config.format), out, err);
}

inline int run_feasibility(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto report = feasibility_report(config.max, config.n, resolve_workers(config.workers));
    return emit(config, render_feasibility(report, config.format), out, err);
}

inline int run_incdec(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto shape = IncDecPattern::parse(config.pattern);
    if (!shape) {
        err << "error: --pattern must be a comma-separated list of run lengths >= 1\n";
        return exit_usage;
    }
    const auto witness = search_incdec(*shape, config.max);
    std::string body;
    if (config.format == ReportFormat::Table) {
        body = witness ? "witness: " + to_string(*witness) + '\n'
                       : "witness: none up to " + std::to_string(config.max) + '\n';
    } else {
        body = "{\"pattern\":\"" + shape->to_string() + "\",\"max\":" +
               std::to_string(config.max) +
               ",\"witness\":" + (witness ? to_string(*witness) : "null") + "}\n";
    }
    return emit(config, body, out, err);
}

inline int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
    SuiteReport report;
    if (config.suite == "lemmas") {
        report = verify_lemmas();
    } else if (config.suite == "partitions") {
        report = verify_partitions(config.max);
    } else if (config.suite == "classifier") {
        report = verify_classifier(config.max, detail::resolve_workers(config.workers));
    } else if (config.suite == "goldens") {
        report = verify_goldens(config.golden_dir, detail::resolve_workers(config.workers));
    } else {
        err << "error: unknown suite '" << config.suite << "'\n";
        return exit_usage;
    }
    std::string body;
    for (const auto& check : report.checks) {
        body += (check.ok ? "ok   " : "FAIL ") + check.name;
        if (!check.detail.empty()) body += ": " + check.detail;
        body += '\n';
    }
    const int status = emit(config, body, out, err);
    if (status != exit_ok) return status;
    return report.ok() ? exit_ok : exit_verification_failure;
}

}  // namespace detail

/// Dispatches a parsed configuration. Exit status 0 on success, 1 when a
/// verification suite found a violation, 2 on unusable arguments.
inline int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::Classify: return detail::run_classify(config, out, err);
            case Command::Census: return detail::run_census(config, out, err);
            case Command::Density: return detail::run_density(config, out, err);
            case Command::Dropping: return detail::run_dropping(config, out, err);
            case Command::Feasibility: return detail::run_feasibility(config, out, err);
            case Command::Verify: return detail::run_verify(config, out, err);
            case Command::IncDec: return detail::run_incdec(config, out, err);
        }
    } catch (const std::overflow_error& e) {
        err << "error: arithmetic overflow: " << e.what() << '\n';
        return exit_verification_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}

/// Parses argv (without the program name) and runs the command.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Syracuse iterate permutation-pattern census"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format_text = "table";

    const auto add_workers = [&](CLI::App* cmd) {
        cmd->add_option("--workers", config.workers,
                        "worker threads (default: SYRA_WORKERS or hardware)");
    };
    const auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format_text, "output format")
            ->check(CLI::IsMember({"csv", "json", "table"}));
    };
    const auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", config.output_path, "write the report to a file");
    };

    auto* classify = app.add_subcommand("classify", "classify one odd integer");
    classify->add_option("--m", config.m_text, "odd integer to classify")->required();
    classify->add_option("--n", config.n, "tuple length, 3 or 4")
        ->check(CLI::IsMember({3, 4}));

    auto* census = app.add_subcommand("census", "pattern counts over odd m <= max");
    census->add_option("--max", config.max, "sweep bound")->required();
    census->add_option("--n", config.n, "tuple length")->required()->check(CLI::Range(1, 8));
    add_workers(census);
    add_format(census);
    add_out(census);

    auto* density = app.add_subcommand("density", "count and ratio of one pattern");
    density->add_option("--max", config.max, "sweep bound")->required();
    density->add_option("--n", config.n, "tuple length")->required()->check(CLI::Range(1, 8));
    density->add_option("--pattern", config.pattern, "pattern in one-line notation")->required();
    add_workers(density);
    add_format(density);
    add_out(density);

    auto* dropping = app.add_subcommand("dropping", "dropping-time table to k");
    dropping->add_option("--max", config.max, "sweep bound")->required();
    dropping->add_option("--k", config.k, "largest k tabulated")->required()->check(CLI::Range(1, 64));
    dropping->add_option("--cap", config.cap, "per-integer iteration bound");
    add_workers(dropping);
    add_format(dropping);
    add_out(dropping);

    auto* feasibility = app.add_subcommand("feasibility", "observed/unobserved/impossible patterns");
    feasibility->add_option("--max", config.max, "sweep bound")->required();
    feasibility->add_option("--n", config.n, "tuple length")->required()->check(CLI::Range(1, 8));
    add_workers(feasibility);
    add_format(feasibility);
    add_out(feasibility);

    auto* verify = app.add_subcommand("verify", "run an invariant suite");
    verify->add_option("--suite", config.suite, "lemmas|partitions|classifier|goldens")
        ->required()
        ->check(CLI::IsMember({"lemmas", "partitions", "classifier", "goldens"}));
    verify->add_option("--max", config.max, "sweep bound for partitions/classifier");
    verify->add_option("--golden-dir", config.golden_dir, "directory of golden censuses");
    add_workers(verify);
    add_out(verify);

    auto* incdec = app.add_subcommand("incdec", "smallest witness of a rise/fall shape");
    incdec->add_option("--pattern", config.pattern, "run lengths, e.g. \"2,1,3\"")->required();
    incdec->add_option("--max", config.max, "search bound")->required();
    add_format(incdec);
    add_out(incdec);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {   // --help
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    if (classify->parsed()) config.command = Command::Classify;
    else if (census->parsed()) config.command = Command::Census;
    else if (density->parsed()) config.command = Command::Density;
    else if (dropping->parsed()) config.command = Command::Dropping;
    else if (feasibility->parsed()) config.command = Command::Feasibility;
    else if (verify->parsed()) config.command = Command::Verify;
    else config.command = Command::IncDec;

    if (format_text == "csv") config.format = ReportFormat::Csv;
    else if (format_text == "json") config.format = ReportFormat::Json;
    else config.format = ReportFormat::Table;

    return run(config, out, err);
}

}  // namespace syra::cli
