#ifndef DISPSTAT_RENDER_HPP
#define DISPSTAT_RENDER_HPP

#include <string>

#include "dispstat/analysis.hpp"
#include "dispstat/ingestion.hpp"

namespace dispstat {

enum class OutputFormat { Json, Csv, Markdown };

/// Report rendering. Machine formats (json, csv) carry four decimal places;
/// markdown rounds to two for readability. Output is deterministic: fixed row
/// and key order, fixed float formatting.
std::string render_indicator_table(const IndicatorTable& table, OutputFormat format);
std::string render_correlation_matrix(const CorrelationMatrix& matrix, OutputFormat format);
std::string render_benchmark_report(const BenchmarkReport& report, OutputFormat format);
std::string render_parse_report(const ParseReport& report, OutputFormat format);

}  // namespace dispstat

#endif  // DISPSTAT_RENDER_HPP
