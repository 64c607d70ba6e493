#include "dispstat/pipeline.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "dispstat/analysis.hpp"
#include "dispstat/table_io.hpp"

namespace dispstat {

namespace {

LogFormat detect_log_format(const std::string& path, const RunConfig& config) {
    if (config.input_format) return *config.input_format;
    const auto dot = path.rfind('.');
    const std::string ext = dot == std::string::npos ? "" : path.substr(dot);
    return (ext == ".jsonl" || ext == ".ndjson" || ext == ".json") ? LogFormat::Jsonl
                                                                   : LogFormat::Csv;
}

/// Parses every input log. Returns an exit code, kExitOk when analyzable
/// records exist or the inputs are validly empty.
int load_case_logs(const RunConfig& config, std::ostream& diag, std::vector<CaseRecord>& records,
                   ParseReport& merged) {
    const bool prefix = config.inputs.size() > 1;
    for (const std::string& path : config.inputs) {
        std::ifstream input(path, std::ios::binary);
        if (!input) {
            diag << "error: cannot open '" << path << "'\n";
            return kExitData;
        }
        ParsedLog log;
        try {
            log = parse_case_log(input, detect_log_format(path, config));
        } catch (const FatalParseError& e) {
            diag << "error: " << path << ": " << e.what() << '\n';
            return kExitData;
        }
        merged.accepted += log.report.accepted;
        merged.rejected += log.report.rejected;
        for (RejectedRow& reject : log.report.rejects) {
            if (prefix) reject.reason = path + ": " + reject.reason;
            merged.rejects.push_back(std::move(reject));
        }
        for (std::string& warning : log.report.warnings) {
            if (prefix) warning = path + ": " + warning;
            merged.warnings.push_back(std::move(warning));
        }
        records.insert(records.end(), std::make_move_iterator(log.records.begin()),
                       std::make_move_iterator(log.records.end()));
    }

    for (const std::string& warning : merged.warnings) diag << "warning: " << warning << '\n';
    if (merged.accepted == 0 && merged.rejected > 0) {
        for (const RejectedRow& reject : merged.rejects) {
            diag << "reject: line " << reject.line << ": " << reject.reason << '\n';
        }
        diag << "error: no analyzable rows (" << merged.rejected << " rejected)\n";
        return kExitData;
    }
    for (const RejectedRow& reject : merged.rejects) {
        diag << "reject: line " << reject.line << ": " << reject.reason << '\n';
    }
    if (merged.accepted == 0) diag << "warning: input contains no data rows\n";
    return kExitOk;
}

bool starts_with_case_log_header(const std::string& header) {
    return std::string_view(header).starts_with(kCaseLogHeader);
}

}  // namespace

IndicatorTable build_indicator_table(std::vector<ProcessGroup>&& groups, const RunConfig& config,
                                     std::ostream& diag) {
    IndicatorTable table;
    table.rows.reserve(groups.size());
    for (ProcessGroup& group : groups) {
        for (const std::string& warning : validate_process(group, config.min_cases)) {
            diag << "warning: " << warning << '\n';
        }
        try {
            table.rows.push_back({group.process_id,
                                  compute_indicator_set(group.records, config.policy,
                                                        config.ciqr_quantiles)});
        } catch (const EmptySeries&) {
            diag << "warning: process " << group.process_id
                 << " has no usable durations under the inclusion policy; skipped\n";
        }
    }
    return table;
}

int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    std::vector<CaseRecord> records;
    ParseReport report;
    if (const int rc = load_case_logs(config, diag, records, report); rc != kExitOk) return rc;
    const IndicatorTable table = build_indicator_table(group_by_process(std::move(records)),
                                                       config, diag);
    out << render_indicator_table(table, config.format);
    return kExitOk;
}

int run_correlate(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    if (config.inputs.size() != 1) {
        diag << "error: correlate expects exactly one input\n";
        return kExitUsage;
    }
    const std::string& path = config.inputs.front();
    std::ifstream input(path, std::ios::binary);
    if (!input) {
        diag << "error: cannot open '" << path << "'\n";
        return kExitData;
    }

    IndicatorTable table;
    try {
        // Accept an indicator table (analyze JSON or the published CSV layout)
        // or a raw case log, which is analyzed in-process first.
        const int first = input.peek();
        if (first == '{' || first == '[') {
            table = read_indicator_table_json(input);
        } else {
            std::string header;
            std::getline(input, header);
            input.seekg(0);
            if (!header.empty() && header.back() == '\r') header.pop_back();
            if (starts_with_case_log_header(header)) {
                std::vector<CaseRecord> records;
                ParseReport report;
                if (const int rc = load_case_logs(config, diag, records, report); rc != kExitOk) {
                    return rc;
                }
                table = build_indicator_table(group_by_process(std::move(records)), config, diag);
            } else {
                table = read_indicator_table_csv(input);
            }
        }
    } catch (const FatalParseError& e) {
        diag << "error: " << path << ": " << e.what() << '\n';
        return kExitData;
    }

    try {
        const CorrelationMatrix matrix = correlation_matrix(table);
        out << render_correlation_matrix(matrix, config.format);
    } catch (const InsufficientData& e) {
        diag << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

int run_benchmark(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    std::vector<CaseRecord> records;
    ParseReport report;
    if (const int rc = load_case_logs(config, diag, records, report); rc != kExitOk) return rc;
    const IndicatorTable table = build_indicator_table(group_by_process(std::move(records)),
                                                       config, diag);

    const ThresholdSet thresholds = {{"sr", BoundKind::Floor, config.sr_floor},
                                     {"cmd", BoundKind::Ceiling, config.cmd_ceiling}};
    BenchmarkReport benchmark;
    try {
        benchmark = flag_erratic(table, thresholds);
    } catch (const InvalidThreshold& e) {
        diag << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    out << render_benchmark_report(benchmark, config.format);

    const bool any_flagged = std::any_of(benchmark.flags.begin(), benchmark.flags.end(),
                                         [](const ProcessFlag& f) { return f.flagged; });
    return (any_flagged && config.fail_on_flag) ? kExitFlagged : kExitOk;
}

int run_validate(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    std::vector<CaseRecord> records;
    ParseReport merged;
    const bool prefix = config.inputs.size() > 1;
    for (const std::string& path : config.inputs) {
        std::ifstream input(path, std::ios::binary);
        if (!input) {
            diag << "error: cannot open '" << path << "'\n";
            return kExitData;
        }
        ParsedLog log;
        try {
            log = parse_case_log(input, detect_log_format(path, config));
        } catch (const FatalParseError& e) {
            diag << "error: " << path << ": " << e.what() << '\n';
            return kExitData;
        }
        merged.accepted += log.report.accepted;
        merged.rejected += log.report.rejected;
        for (RejectedRow& reject : log.report.rejects) {
            if (prefix) reject.reason = path + ": " + reject.reason;
            merged.rejects.push_back(std::move(reject));
        }
        for (std::string& warning : log.report.warnings) {
            if (prefix) warning = path + ": " + warning;
            merged.warnings.push_back(std::move(warning));
        }
        records.insert(records.end(), std::make_move_iterator(log.records.begin()),
                       std::make_move_iterator(log.records.end()));
    }
    for (const ProcessGroup& group : group_by_process(std::move(records))) {
        for (std::string& warning : validate_process(group, config.min_cases)) {
            merged.warnings.push_back(std::move(warning));
        }
    }
    out << render_parse_report(merged, config.format);
    return merged.rejected == 0 ? kExitOk : kExitData;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& diag) {
    switch (config.command) {
        case Command::Analyze: return run_analyze(config, out, diag);
        case Command::Correlate: return run_correlate(config, out, diag);
        case Command::Benchmark: return run_benchmark(config, out, diag);
        case Command::Validate: return run_validate(config, out, diag);
    }
    diag << "error: unknown command\n";
    return kExitUsage;
}

}  // namespace dispstat
