#ifndef DISPSTAT_PIPELINE_HPP
#define DISPSTAT_PIPELINE_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dispstat/indicators.hpp"
#include "dispstat/ingestion.hpp"
#include "dispstat/render.hpp"

namespace dispstat {

enum class Command { Analyze, Correlate, Benchmark, Validate };

/// Exit codes: mutually exclusive and exhaustive across the commands.
inline constexpr int kExitOk = 0;        // success
inline constexpr int kExitUsage = 1;     // bad flags or threshold spec
inline constexpr int kExitData = 2;      // unreadable/fatal/insufficient data
inline constexpr int kExitFlagged = 3;   // benchmark --fail-on-flag with a flagged process

struct RunConfig {
    Command command = Command::Analyze;
    std::vector<std::string> inputs;
    OutputFormat format = OutputFormat::Markdown;
    std::optional<LogFormat> input_format;  // unset: choose by file extension
    DurationInclusionPolicy policy = DurationInclusionPolicy::AllCases;
    QuantilePair ciqr_quantiles{};
    std::size_t min_cases = 90;
    double sr_floor = 90.0;
    double cmd_ceiling = 0.4;
    bool fail_on_flag = false;
};

/// The pipelines behind the CLI commands. Reports go to `out`, warnings and
/// errors to `diag`; the return value is the process exit code.
int run_analyze(const RunConfig& config, std::ostream& out, std::ostream& diag);
int run_correlate(const RunConfig& config, std::ostream& out, std::ostream& diag);
int run_benchmark(const RunConfig& config, std::ostream& out, std::ostream& diag);
int run_validate(const RunConfig& config, std::ostream& out, std::ostream& diag);
int run_command(const RunConfig& config, std::ostream& out, std::ostream& diag);

/// Indicator table for grouped records under the configured policy; processes
/// without any usable duration are skipped with a diagnostic.
IndicatorTable build_indicator_table(std::vector<ProcessGroup>&& groups, const RunConfig& config,
                                     std::ostream& diag);

}  // namespace dispstat

#endif  // DISPSTAT_PIPELINE_HPP
