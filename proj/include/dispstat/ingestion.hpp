#ifndef DISPSTAT_INGESTION_HPP
#define DISPSTAT_INGESTION_HPP

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dispstat/case_record.hpp"
#include "dispstat/errors.hpp"

namespace dispstat {

inline constexpr std::string_view kCaseLogHeader = "process_id,case_id,duration_seconds,status";

enum class LogFormat { Csv, Jsonl };

struct RejectedRow {
    std::size_t line = 0;
    std::string reason;
};

struct ParseReport {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::vector<RejectedRow> rejects;
    std::vector<std::string> warnings;
};

struct ParsedLog {
    std::vector<CaseRecord> records;
    ParseReport report;
};

/// Streams a case log into records. Malformed rows are rejected with a
/// line-level reason; only an unreadable stream or a missing/incorrect CSV
/// header aborts (FatalParseError).
ParsedLog parse_case_log(std::istream& input, LogFormat format);

struct ProcessGroup {
    std::string process_id;
    std::vector<CaseRecord> records;
};

/// One group per process id, ordered by id; records keep their input order.
std::vector<ProcessGroup> group_by_process(std::span<const CaseRecord> records);
std::vector<ProcessGroup> group_by_process(std::vector<CaseRecord>&& records);

/// Warns (never fails) when the group is too small for stable statistics.
std::vector<std::string> validate_process(const ProcessGroup& group, std::size_t min_cases = 90);

/// Inverse of the CSV parser for accepted records.
void write_case_log_csv(std::ostream& out, std::span<const CaseRecord> records);

}  // namespace dispstat

#endif  // DISPSTAT_INGESTION_HPP
