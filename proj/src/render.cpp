#include "dispstat/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace dispstat {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed(double value, int places) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", places, value);
    return buffer;
}

/// Rounds to four decimals so JSON numbers serialize with short, stable digits.
double round4(double value) {
    return std::round(value * 1e4) / 1e4;
}

std::string json_dump(const ordered_json& doc) {
    return doc.dump(2) + "\n";
}

/// Pipe table with columns padded to their widest cell.
std::string markdown_table(const std::vector<std::string>& header,
                           const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> widths(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) widths[c] = header[c].size();
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) widths[c] = std::max(widths[c], row[c].size());
    }
    std::ostringstream out;
    const auto emit_row = [&](const std::vector<std::string>& row) {
        out << '|';
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << ' ' << row[c] << std::string(widths[c] - row[c].size(), ' ') << " |";
        }
        out << '\n';
    };
    emit_row(header);
    out << '|';
    for (std::size_t c = 0; c < header.size(); ++c) out << std::string(widths[c] + 2, '-') << '|';
    out << '\n';
    for (const auto& row : rows) emit_row(row);
    return out.str();
}

const char* kind_name(BoundKind kind) {
    return kind == BoundKind::Ceiling ? "ceiling" : "floor";
}

const char* direction_name(SortDirection direction) {
    return direction == SortDirection::Ascending ? "ascending" : "descending";
}

std::string describe_trigger(const TriggeredRule& trigger) {
    const char relation = trigger.rule.kind == BoundKind::Ceiling ? '>' : '<';
    return trigger.rule.indicator + relation + fixed(trigger.rule.bound, 4) + " (observed " +
           fixed(trigger.observed, 4) + ")";
}

std::string join(const std::vector<std::string>& parts, const char* separator) {
    std::string out;
    for (const auto& part : parts) {
        if (!out.empty()) out += separator;
        out += part;
    }
    return out;
}

std::string csv_escape(const std::string& cell) {
    if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
    std::string out = "\"";
    for (const char c : cell) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ordered_json column_names_json() {
    ordered_json names = ordered_json::array();
    for (const auto& column : IndicatorTable::kColumnNames) names.push_back(std::string(column));
    return names;
}

}  // namespace

std::string render_indicator_table(const IndicatorTable& table, OutputFormat format) {
    const auto& columns = IndicatorTable::kColumnNames;
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["report"] = "indicator_table";
        doc["columns"] = column_names_json();
        auto& processes = doc["processes"] = ordered_json::array();
        for (const auto& row : table.rows) {
            ordered_json entry;
            entry["process_id"] = row.process_id;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                entry[std::string(columns[c])] = round4(indicator_value(row.indicators, c));
            }
            entry["case_count"] = row.indicators.case_count;
            processes.push_back(std::move(entry));
        }
        return json_dump(doc);
    }
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "process_id";
        for (const auto& column : columns) out << ',' << column;
        out << ",case_count\n";
        for (const auto& row : table.rows) {
            out << row.process_id;
            for (std::size_t c = 0; c < columns.size(); ++c) {
                out << ',' << fixed(indicator_value(row.indicators, c), 4);
            }
            out << ',' << row.indicators.case_count << '\n';
        }
        return out.str();
    }
    std::vector<std::string> header = {"process_id"};
    for (const auto& column : columns) header.emplace_back(column);
    header.emplace_back("case_count");
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : table.rows) {
        std::vector<std::string> cells = {row.process_id};
        for (std::size_t c = 0; c < columns.size(); ++c) {
            cells.push_back(fixed(indicator_value(row.indicators, c), 2));
        }
        cells.push_back(std::to_string(row.indicators.case_count));
        rows.push_back(std::move(cells));
    }
    return markdown_table(header, rows);
}

std::string render_correlation_matrix(const CorrelationMatrix& matrix, OutputFormat format) {
    const auto k = matrix.coefficients.rows();
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["report"] = "correlation_matrix";
        doc["labels"] = matrix.labels;
        auto& rows = doc["coefficients"] = ordered_json::array();
        for (Eigen::Index i = 0; i < k; ++i) {
            ordered_json row = ordered_json::array();
            for (Eigen::Index j = 0; j < k; ++j) {
                if (matrix.defined(i, j)) {
                    row.push_back(round4(matrix.coefficients(i, j)));
                } else {
                    row.push_back(nullptr);
                }
            }
            rows.push_back(std::move(row));
        }
        return json_dump(doc);
    }
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "indicator";
        for (const auto& label : matrix.labels) out << ',' << label;
        out << '\n';
        for (Eigen::Index i = 0; i < k; ++i) {
            out << matrix.labels[static_cast<std::size_t>(i)];
            for (Eigen::Index j = 0; j < k; ++j) {
                out << ',';
                if (matrix.defined(i, j)) out << fixed(matrix.coefficients(i, j), 4);
            }
            out << '\n';
        }
        return out.str();
    }
    std::vector<std::string> header = {"indicator"};
    for (const auto& label : matrix.labels) header.push_back(label);
    std::vector<std::vector<std::string>> rows;
    for (Eigen::Index i = 0; i < k; ++i) {
        std::vector<std::string> cells = {matrix.labels[static_cast<std::size_t>(i)]};
        for (Eigen::Index j = 0; j < k; ++j) {
            cells.push_back(matrix.defined(i, j) ? fixed(matrix.coefficients(i, j), 2) : "n/a");
        }
        rows.push_back(std::move(cells));
    }
    return markdown_table(header, rows);
}

std::string render_benchmark_report(const BenchmarkReport& report, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["report"] = "benchmark_report";
        doc["ranking_key"] = report.ranking_key;
        doc["ranking_direction"] = direction_name(report.ranking_direction);
        auto& thresholds = doc["thresholds"] = ordered_json::array();
        for (const auto& rule : report.thresholds) {
            thresholds.push_back({{"indicator", rule.indicator},
                                  {"kind", kind_name(rule.kind)},
                                  {"bound", round4(rule.bound)}});
        }
        auto& ranking = doc["ranking"] = ordered_json::array();
        for (std::size_t i = 0; i < report.ranking.size(); ++i) {
            ranking.push_back({{"rank", i + 1},
                               {"process_id", report.ranking[i].process_id},
                               {"value", round4(report.ranking[i].value)}});
        }
        auto& flags = doc["flags"] = ordered_json::array();
        for (const auto& flag : report.flags) {
            ordered_json triggers = ordered_json::array();
            for (const auto& trigger : flag.triggers) {
                triggers.push_back({{"indicator", trigger.rule.indicator},
                                    {"kind", kind_name(trigger.rule.kind)},
                                    {"bound", round4(trigger.rule.bound)},
                                    {"observed", round4(trigger.observed)}});
            }
            flags.push_back({{"process_id", flag.process_id},
                             {"flagged", flag.flagged},
                             {"triggers", std::move(triggers)}});
        }
        doc["benchmark_ids"] = report.benchmark_ids;
        return json_dump(doc);
    }
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "rank,process_id," << report.ranking_key << ",flagged,triggers\n";
        for (std::size_t i = 0; i < report.ranking.size(); ++i) {
            const auto& flag = report.flags[i];
            std::vector<std::string> triggers;
            for (const auto& trigger : flag.triggers) triggers.push_back(describe_trigger(trigger));
            out << (i + 1) << ',' << flag.process_id << ',' << fixed(report.ranking[i].value, 4)
                << ',' << (flag.flagged ? "true" : "false") << ','
                << csv_escape(join(triggers, "; ")) << '\n';
        }
        return out.str();
    }
    std::ostringstream out;
    out << "## Thresholds\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (const auto& rule : report.thresholds) {
            rows.push_back({rule.indicator, kind_name(rule.kind), fixed(rule.bound, 2)});
        }
        out << markdown_table({"indicator", "rule", "bound"}, rows);
    }
    out << "\n## Ranking (" << report.ranking_key << ' ' << direction_name(report.ranking_direction)
        << ")\n\n";
    {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < report.ranking.size(); ++i) {
            const auto& flag = report.flags[i];
            std::vector<std::string> triggers;
            for (const auto& trigger : flag.triggers) triggers.push_back(describe_trigger(trigger));
            rows.push_back({std::to_string(i + 1), flag.process_id,
                            fixed(report.ranking[i].value, 2), flag.flagged ? "FLAGGED" : "ok",
                            join(triggers, "; ")});
        }
        out << markdown_table({"rank", "process_id", report.ranking_key, "verdict", "triggers"},
                              rows);
    }
    out << "\nBenchmark candidates: "
        << (report.benchmark_ids.empty() ? "none" : join(report.benchmark_ids, ", ")) << '\n';
    return out.str();
}

std::string render_parse_report(const ParseReport& report, OutputFormat format) {
    if (format == OutputFormat::Json) {
        ordered_json doc;
        doc["report"] = "parse_report";
        doc["accepted"] = report.accepted;
        doc["rejected"] = report.rejected;
        auto& rejects = doc["rejects"] = ordered_json::array();
        for (const auto& reject : report.rejects) {
            rejects.push_back({{"line", reject.line}, {"reason", reject.reason}});
        }
        doc["warnings"] = report.warnings;
        return json_dump(doc);
    }
    if (format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "kind,line,detail\n";
        out << "accepted,," << report.accepted << '\n';
        out << "rejected,," << report.rejected << '\n';
        for (const auto& reject : report.rejects) {
            out << "reject," << reject.line << ',' << csv_escape(reject.reason) << '\n';
        }
        for (const auto& warning : report.warnings) out << "warning,," << csv_escape(warning) << '\n';
        return out.str();
    }
    std::ostringstream out;
    out << "Accepted rows: " << report.accepted << '\n';
    out << "Rejected rows: " << report.rejected << '\n';
    if (!report.rejects.empty()) {
        out << "\n## Rejected\n\n";
        std::vector<std::vector<std::string>> rows;
        for (const auto& reject : report.rejects) {
            rows.push_back({std::to_string(reject.line), reject.reason});
        }
        out << markdown_table({"line", "reason"}, rows);
    }
    if (!report.warnings.empty()) {
        out << "\n## Warnings\n\n";
        for (const auto& warning : report.warnings) out << "- " << warning << '\n';
    }
    return out.str();
}

}  // namespace dispstat
