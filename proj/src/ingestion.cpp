#include "dispstat/ingestion.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <unordered_set>
#include <utility>

#include <json.hpp>

namespace dispstat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_success_status(std::string_view status) {
    if (status.size() != 7) return false;
    constexpr std::string_view expected = "success";
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(status[i])) != expected[i]) return false;
    }
    return true;
}

void split_fields(std::string_view line, std::vector<std::string_view>& fields) {
    fields.clear();
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

void strip_line_ending(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

/// Parses a strictly positive finite duration; empty reason on success.
std::string parse_duration(std::string_view field, double& out) {
    const std::string_view text = trim(field);
    if (text.empty()) return "missing duration";
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) {
        return "unparseable duration '" + std::string(text) + "'";
    }
    if (!std::isfinite(out) || !(out > 0.0)) {
        return "non-positive duration '" + std::string(text) + "'";
    }
    return {};
}

class DuplicateTracker {
public:
    /// True when (process_id, case_id) was already seen.
    bool seen(std::string_view process_id, std::string_view case_id) {
        key_.assign(process_id);
        key_.push_back('\x1f');
        key_.append(case_id);
        return !seen_.insert(key_).second;
    }

private:
    std::string key_;
    std::unordered_set<std::string> seen_;
};

ParsedLog parse_csv(std::istream& input) {
    ParsedLog log;
    std::string line;
    if (!std::getline(input, line)) {
        throw FatalParseError("missing header: expected '" + std::string(kCaseLogHeader) + "'");
    }
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);  // UTF-8 BOM
    strip_line_ending(line);

    std::vector<std::string_view> fields;
    split_fields(line, fields);
    static constexpr std::array<std::string_view, 4> kRequired = {"process_id", "case_id",
                                                                  "duration_seconds", "status"};
    if (fields.size() < kRequired.size()) {
        throw FatalParseError("malformed header '" + line + "': expected '" +
                              std::string(kCaseLogHeader) + "'");
    }
    for (std::size_t i = 0; i < kRequired.size(); ++i) {
        if (trim(fields[i]) != kRequired[i]) {
            throw FatalParseError("malformed header '" + line + "': expected '" +
                                  std::string(kCaseLogHeader) + "'");
        }
    }
    const std::size_t column_count = fields.size();
    if (column_count > kRequired.size()) {
        std::string extras;
        for (std::size_t i = kRequired.size(); i < column_count; ++i) {
            if (!extras.empty()) extras += ", ";
            extras += trim(fields[i]);
        }
        log.report.warnings.push_back("ignoring extra column(s): " + extras);
    }

    DuplicateTracker duplicates;
    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        strip_line_ending(line);
        if (trim(line).empty()) continue;

        split_fields(line, fields);
        const auto reject = [&](std::string reason) {
            log.report.rejects.push_back({line_no, std::move(reason)});
        };
        if (fields.size() != column_count) {
            reject("expected " + std::to_string(column_count) + " fields, got " +
                   std::to_string(fields.size()));
            continue;
        }
        const std::string_view process_id = trim(fields[0]);
        const std::string_view case_id = trim(fields[1]);
        const std::string_view status = trim(fields[3]);
        if (process_id.empty()) {
            reject("empty process_id");
            continue;
        }
        if (case_id.empty()) {
            reject("empty case_id");
            continue;
        }
        double duration = 0.0;
        if (std::string reason = parse_duration(fields[2], duration); !reason.empty()) {
            reject(std::move(reason));
            continue;
        }
        if (status.empty()) {
            reject("missing status");
            continue;
        }
        if (duplicates.seen(process_id, case_id)) {
            log.report.warnings.push_back("duplicate case (" + std::string(process_id) + ", " +
                                          std::string(case_id) + ") at line " +
                                          std::to_string(line_no) + "; kept");
        }
        log.records.push_back({std::string(process_id), std::string(case_id), duration,
                               is_success_status(status) ? Outcome::Success : Outcome::Failure,
                               std::string(status)});
    }
    log.report.accepted = log.records.size();
    log.report.rejected = log.report.rejects.size();
    return log;
}

ParsedLog parse_jsonl(std::istream& input) {
    ParsedLog log;
    DuplicateTracker duplicates;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        strip_line_ending(line);
        if (trim(line).empty()) continue;

        const auto reject = [&](std::string reason) {
            log.report.rejects.push_back({line_no, std::move(reason)});
        };
        nlohmann::json row = nlohmann::json::parse(line, nullptr, false);
        if (row.is_discarded() || !row.is_object()) {
            reject("invalid JSON object");
            continue;
        }
        const auto string_field = [&](const char* name) -> std::string {
            const auto it = row.find(name);
            if (it == row.end() || !it->is_string()) return {};
            return it->get<std::string>();
        };
        const std::string process_id = string_field("process_id");
        const std::string case_id = string_field("case_id");
        const std::string status = string_field("status");
        if (process_id.empty()) {
            reject("missing or non-string process_id");
            continue;
        }
        if (case_id.empty()) {
            reject("missing or non-string case_id");
            continue;
        }
        const auto duration_it = row.find("duration_seconds");
        if (duration_it == row.end() || !duration_it->is_number()) {
            reject("missing or non-numeric duration_seconds");
            continue;
        }
        const double duration = duration_it->get<double>();
        if (!std::isfinite(duration) || !(duration > 0.0)) {
            reject("non-positive duration '" + duration_it->dump() + "'");
            continue;
        }
        if (status.empty()) {
            reject("missing status");
            continue;
        }
        if (duplicates.seen(process_id, case_id)) {
            log.report.warnings.push_back("duplicate case (" + process_id + ", " + case_id +
                                          ") at line " + std::to_string(line_no) + "; kept");
        }
        log.records.push_back({process_id, case_id, duration,
                               is_success_status(status) ? Outcome::Success : Outcome::Failure,
                               status});
    }
    log.report.accepted = log.records.size();
    log.report.rejected = log.report.rejects.size();
    return log;
}

}  // namespace

ParsedLog parse_case_log(std::istream& input, LogFormat format) {
    if (input.fail()) throw FatalParseError("input stream is not readable");
    return format == LogFormat::Csv ? parse_csv(input) : parse_jsonl(input);
}

std::vector<ProcessGroup> group_by_process(std::vector<CaseRecord>&& records) {
    std::map<std::string, std::vector<CaseRecord>> buckets;
    for (CaseRecord& record : records) {
        buckets[record.process_id].push_back(std::move(record));
    }
    std::vector<ProcessGroup> groups;
    groups.reserve(buckets.size());
    for (auto& [process_id, bucket] : buckets) {
        groups.push_back({process_id, std::move(bucket)});
    }
    return groups;
}

std::vector<ProcessGroup> group_by_process(std::span<const CaseRecord> records) {
    return group_by_process(std::vector<CaseRecord>(records.begin(), records.end()));
}

std::vector<std::string> validate_process(const ProcessGroup& group, std::size_t min_cases) {
    std::vector<std::string> warnings;
    if (group.records.size() < min_cases) {
        warnings.push_back("process " + group.process_id + " has only " +
                           std::to_string(group.records.size()) + " case(s); fewer than " +
                           std::to_string(min_cases) + " weakens the descriptive statistics");
    }
    return warnings;
}

void write_case_log_csv(std::ostream& out, std::span<const CaseRecord> records) {
    out << kCaseLogHeader << '\n';
    char buffer[64];
    for (const CaseRecord& record : records) {
        const auto [ptr, ec] =
            std::to_chars(buffer, buffer + sizeof(buffer), record.duration_seconds);
        out << record.process_id << ',' << record.case_id << ',';
        out.write(buffer, ptr - buffer);
        const std::string_view status = record.raw_status.empty()
                                            ? (record.outcome == Outcome::Success
                                                   ? std::string_view("success")
                                                   : std::string_view("failure"))
                                            : std::string_view(record.raw_status);
        out << ',' << status << '\n';
    }
}

}  // namespace dispstat
