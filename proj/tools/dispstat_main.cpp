#include <unistd.h>

#include <charconv>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "dispstat/pipeline.hpp"

namespace {

using dispstat::RunConfig;

bool parse_quantile_pair(const std::string& text, dispstat::QuantilePair& out) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return false;
    const auto parse = [](std::string_view part, double& value) {
        const auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        return ec == std::errc() && ptr == part.data() + part.size();
    };
    dispstat::QuantilePair pair;
    if (!parse(std::string_view(text).substr(0, comma), pair.lower)) return false;
    if (!parse(std::string_view(text).substr(comma + 1), pair.upper)) return false;
    if (!(pair.lower >= 0.0 && pair.lower < pair.upper && pair.upper <= 1.0)) return false;
    out = pair;
    return true;
}

dispstat::OutputFormat resolve_format(const std::string& name) {
    if (name == "json") return dispstat::OutputFormat::Json;
    if (name == "csv") return dispstat::OutputFormat::Csv;
    if (name == "markdown") return dispstat::OutputFormat::Markdown;
    // auto: markdown on a terminal, json when piped
    return isatty(fileno(stdout)) ? dispstat::OutputFormat::Markdown
                                  : dispstat::OutputFormat::Json;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Behavioral stability indicators for automated processes"};
    app.require_subcommand(1);

    RunConfig config;
    std::string format = "auto";
    std::string input_format = "auto";
    std::string ciqr_quantiles = "0.05,0.95";
    bool include_failures = true;

    const auto add_format_flag = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Report format: json, csv or markdown")
            ->check(CLI::IsMember({"auto", "json", "csv", "markdown"}));
    };
    const auto add_log_flags = [&](CLI::App* cmd) {
        cmd->add_option("inputs", config.inputs, "Case log file(s)")->required();
        cmd->add_option("--input-format", input_format, "Log format: csv or jsonl")
            ->check(CLI::IsMember({"auto", "csv", "jsonl"}));
        cmd->add_option("--include-failures", include_failures,
                        "Include failed cases' durations in the indicators (default true)");
        cmd->add_option("--min-cases", config.min_cases,
                        "Warn when a process has fewer cases than this");
    };
    const auto add_indicator_flags = [&](CLI::App* cmd) {
        cmd->add_option("--ciqr-quantiles", ciqr_quantiles,
                        "Quantile pair for the interquantile coefficient, e.g. 0.05,0.95");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "Compute the per-process indicator table");
    add_log_flags(analyze);
    add_indicator_flags(analyze);
    add_format_flag(analyze);

    CLI::App* correlate = app.add_subcommand(
        "correlate", "Pearson matrix over an indicator table (or a case log, analyzed first)");
    correlate->add_option("input", config.inputs, "Indicator table or case log")
        ->expected(1)
        ->required();
    add_format_flag(correlate);

    CLI::App* benchmark =
        app.add_subcommand("benchmark", "Rank processes and flag erratic ones against thresholds");
    add_log_flags(benchmark);
    add_indicator_flags(benchmark);
    add_format_flag(benchmark);
    benchmark->add_option("--sr-floor", config.sr_floor,
                          "Flag processes whose success rate falls below this percentage");
    benchmark->add_option("--cmd-ceiling", config.cmd_ceiling,
                          "Flag processes whose CMD exceeds this bound");
    benchmark->add_flag("--fail-on-flag", config.fail_on_flag,
                        "Exit with code 3 when any process is flagged");

    CLI::App* validate = app.add_subcommand("validate", "Parse and report diagnostics only");
    add_log_flags(validate);
    add_format_flag(validate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? dispstat::kExitOk : dispstat::kExitUsage;
    }

    if (analyze->parsed()) config.command = dispstat::Command::Analyze;
    if (correlate->parsed()) config.command = dispstat::Command::Correlate;
    if (benchmark->parsed()) config.command = dispstat::Command::Benchmark;
    if (validate->parsed()) config.command = dispstat::Command::Validate;

    config.format = resolve_format(format);
    if (input_format == "csv") config.input_format = dispstat::LogFormat::Csv;
    if (input_format == "jsonl") config.input_format = dispstat::LogFormat::Jsonl;
    config.policy = include_failures ? dispstat::DurationInclusionPolicy::AllCases
                                     : dispstat::DurationInclusionPolicy::SuccessesOnly;
    if (!parse_quantile_pair(ciqr_quantiles, config.ciqr_quantiles)) {
        std::cerr << "error: --ciqr-quantiles expects 'lo,hi' with 0 <= lo < hi <= 1\n";
        return dispstat::kExitUsage;
    }

    try {
        return dispstat::run_command(config, std::cout, std::cerr);
    } catch (const dispstat::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dispstat::kExitData;
    }
}
