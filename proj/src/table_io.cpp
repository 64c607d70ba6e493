#include "dispstat/table_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

namespace dispstat {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line_no) {
    std::string_view text = trim(cell);
    if (!text.empty() && text.back() == '%') text = trim(text.substr(0, text.size() - 1));
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
        !std::isfinite(value)) {
        throw FatalParseError("line " + std::to_string(line_no) + ": unparseable value '" +
                              std::string(cell) + "'");
    }
    return value;
}

void set_indicator(IndicatorSet& set, std::size_t column, double value) {
    switch (column) {
        case 0: set.cv = value; break;
        case 1: set.cr = value; break;
        case 2: set.cd = value; break;
        case 3: set.cmd = value; break;
        case 4: set.ciqr90 = value; break;
        case 5: set.gc = value; break;
        case 6: set.oo_os = value; break;
        case 7: set.success_rate = value; break;
        case 8: set.oo_iqr = value; break;
        default: throw UnknownIndicator("column " + std::to_string(column));
    }
}

void require_unique(std::unordered_set<std::string>& seen, const std::string& process_id) {
    if (!seen.insert(process_id).second) {
        throw FatalParseError("duplicate process id '" + process_id + "' in indicator table");
    }
}

}  // namespace

IndicatorTable read_indicator_table_json(std::istream& input) {
    nlohmann::json doc = nlohmann::json::parse(input, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("processes") ||
        !doc["processes"].is_array()) {
        throw FatalParseError("expected an indicator_table JSON document with a 'processes' array");
    }
    IndicatorTable table;
    std::unordered_set<std::string> seen;
    for (const auto& entry : doc["processes"]) {
        if (!entry.is_object() || !entry.contains("process_id") || !entry["process_id"].is_string()) {
            throw FatalParseError("indicator table entry lacks a string process_id");
        }
        IndicatorTable::Row row;
        row.process_id = entry["process_id"].get<std::string>();
        require_unique(seen, row.process_id);
        for (std::size_t c = 0; c < IndicatorTable::kColumnNames.size(); ++c) {
            const std::string name(IndicatorTable::kColumnNames[c]);
            if (!entry.contains(name) || !entry[name].is_number()) {
                throw FatalParseError("process " + row.process_id + " lacks numeric '" + name + "'");
            }
            set_indicator(row.indicators, c, entry[name].get<double>());
        }
        if (entry.contains("case_count") && entry["case_count"].is_number_integer()) {
            row.indicators.case_count = entry["case_count"].get<Eigen::Index>();
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

IndicatorTable read_indicator_table_csv(std::istream& input) {
    std::string line;
    if (!std::getline(input, line)) throw FatalParseError("missing indicator-table header");
    if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::vector<std::string_view> fields;
    const auto split = [&fields](std::string_view text) {
        fields.clear();
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = text.find(',', start);
            if (comma == std::string_view::npos) {
                fields.push_back(text.substr(start));
                return;
            }
            fields.push_back(text.substr(start, comma - start));
            start = comma + 1;
        }
    };

    split(line);
    const std::size_t indicator_count = IndicatorTable::kColumnNames.size();
    const bool has_case_count = fields.size() == indicator_count + 2;
    if (fields.size() < indicator_count + 1 || fields.size() > indicator_count + 2 ||
        trim(fields[0]) != "process_id") {
        throw FatalParseError("malformed indicator-table header '" + line + "'");
    }
    for (std::size_t c = 0; c < indicator_count; ++c) {
        if (trim(fields[c + 1]) != IndicatorTable::kColumnNames[c]) {
            throw FatalParseError("malformed indicator-table header '" + line + "'");
        }
    }
    if (has_case_count && trim(fields.back()) != "case_count") {
        throw FatalParseError("malformed indicator-table header '" + line + "'");
    }

    IndicatorTable table;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(input, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        split(line);
        if (fields.size() != indicator_count + 1 + (has_case_count ? 1 : 0)) {
            throw FatalParseError("line " + std::to_string(line_no) + ": wrong field count");
        }
        IndicatorTable::Row row;
        row.process_id = std::string(trim(fields[0]));
        if (row.process_id.empty()) {
            throw FatalParseError("line " + std::to_string(line_no) + ": empty process_id");
        }
        require_unique(seen, row.process_id);
        for (std::size_t c = 0; c < indicator_count; ++c) {
            set_indicator(row.indicators, c, parse_cell(fields[c + 1], line_no));
        }
        if (has_case_count) {
            row.indicators.case_count =
                static_cast<Eigen::Index>(parse_cell(fields.back(), line_no));
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

}  // namespace dispstat
