#include "dispstat/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace dispstat {

std::size_t IndicatorTable::column_index(std::string_view name) {
    for (std::size_t i = 0; i < kColumnNames.size(); ++i) {
        if (kColumnNames[i] == name) return i;
    }
    throw UnknownIndicator(std::string(name));
}

double indicator_value(const IndicatorSet& set, std::size_t column) {
    switch (column) {
        case 0: return set.cv;
        case 1: return set.cr;
        case 2: return set.cd;
        case 3: return set.cmd;
        case 4: return set.ciqr90;
        case 5: return set.gc;
        case 6: return set.oo_os;
        case 7: return set.success_rate;
        case 8: return set.oo_iqr;
        default: throw UnknownIndicator("column " + std::to_string(column));
    }
}

Eigen::ArrayXd IndicatorTable::column(std::string_view name) const {
    const std::size_t idx = column_index(name);
    Eigen::ArrayXd out(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        out(static_cast<Eigen::Index>(r)) = indicator_value(rows[r].indicators, idx);
    }
    return out;
}

Eigen::MatrixXd IndicatorTable::to_matrix() const {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()),
                        static_cast<Eigen::Index>(kColumnNames.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < kColumnNames.size(); ++c) {
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                indicator_value(rows[r].indicators, c);
        }
    }
    return out;
}

double pearson(const Eigen::Ref<const Eigen::ArrayXd>& xs, const Eigen::Ref<const Eigen::ArrayXd>& ys) {
    if (xs.size() != ys.size()) {
        throw ShapeMismatch("series lengths differ: " + std::to_string(xs.size()) + " vs " +
                            std::to_string(ys.size()));
    }
    if (xs.size() < 2) throw UndefinedCorrelation("need at least two observations");
    if (xs.minCoeff() == xs.maxCoeff() || ys.minCoeff() == ys.maxCoeff()) {
        throw UndefinedCorrelation("correlation of a constant series is undefined");
    }
    const Eigen::ArrayXd xc = xs - xs.mean();
    const Eigen::ArrayXd yc = ys - ys.mean();
    const double sxx = (xc * xc).sum();
    const double syy = (yc * yc).sum();
    if (sxx == 0.0 || syy == 0.0) {
        throw UndefinedCorrelation("correlation of a constant series is undefined");
    }
    const double r = (xc * yc).sum() / std::sqrt(sxx * syy);
    return std::clamp(r, -1.0, 1.0);
}

bool CorrelationMatrix::defined(Eigen::Index i, Eigen::Index j) const {
    return !std::isnan(coefficients(i, j));
}

double CorrelationMatrix::at(std::string_view a, std::string_view b) const {
    const auto find = [this](std::string_view name) -> Eigen::Index {
        for (std::size_t i = 0; i < labels.size(); ++i) {
            if (labels[i] == name) return static_cast<Eigen::Index>(i);
        }
        throw UnknownIndicator(std::string(name));
    };
    return coefficients(find(a), find(b));
}

CorrelationMatrix correlation_matrix(const IndicatorTable& table) {
    if (table.rows.size() < 3) {
        throw InsufficientData("correlation needs at least 3 processes, got " +
                               std::to_string(table.rows.size()));
    }
    const Eigen::MatrixXd m = table.to_matrix();
    const auto k = static_cast<Eigen::Index>(IndicatorTable::kColumnNames.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();

    CorrelationMatrix out;
    out.labels.assign(IndicatorTable::kColumnNames.begin(), IndicatorTable::kColumnNames.end());
    out.coefficients = Eigen::MatrixXd::Constant(k, k, nan);

    std::vector<bool> constant(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        constant[static_cast<std::size_t>(i)] = m.col(i).minCoeff() == m.col(i).maxCoeff();
    }
    for (Eigen::Index i = 0; i < k; ++i) {
        if (constant[static_cast<std::size_t>(i)]) continue;
        out.coefficients(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < k; ++j) {
            if (constant[static_cast<std::size_t>(j)]) continue;
            const double r = pearson(m.col(i).array(), m.col(j).array());
            out.coefficients(i, j) = r;
            out.coefficients(j, i) = r;
        }
    }
    return out;
}

std::vector<RankedProcess> rank_processes(const IndicatorTable& table, std::string_view key,
                                          SortDirection direction) {
    const std::size_t idx = IndicatorTable::column_index(key);
    std::vector<RankedProcess> out;
    out.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        out.push_back({row.process_id, indicator_value(row.indicators, idx)});
    }
    std::sort(out.begin(), out.end(), [direction](const RankedProcess& a, const RankedProcess& b) {
        if (a.value != b.value) {
            return direction == SortDirection::Ascending ? a.value < b.value : a.value > b.value;
        }
        return a.process_id < b.process_id;
    });
    return out;
}

ThresholdSet default_thresholds() {
    return {{"sr", BoundKind::Floor, 90.0}, {"cmd", BoundKind::Ceiling, 0.4}};
}

namespace {

void validate_thresholds(const ThresholdSet& thresholds) {
    if (thresholds.empty()) throw InvalidThreshold("threshold set is empty");
    for (const ThresholdRule& rule : thresholds) {
        bool known = false;
        for (std::string_view name : IndicatorTable::kColumnNames) {
            if (name == rule.indicator) known = true;
        }
        if (!known) throw InvalidThreshold("unknown indicator: " + rule.indicator);
        if (!std::isfinite(rule.bound) || rule.bound < 0.0) {
            throw InvalidThreshold("bound for " + rule.indicator + " must be a nonnegative number");
        }
        if (rule.indicator == "sr" && rule.bound > 100.0) {
            throw InvalidThreshold("success-rate bound must lie in [0, 100]");
        }
    }
}

}  // namespace

BenchmarkReport flag_erratic(const IndicatorTable& table, const ThresholdSet& thresholds,
                             std::string_view ranking_key, SortDirection direction) {
    validate_thresholds(thresholds);

    BenchmarkReport report;
    report.ranking_key = std::string(ranking_key);
    report.ranking_direction = direction;
    report.thresholds = thresholds;
    report.ranking = rank_processes(table, ranking_key, direction);

    std::unordered_map<std::string_view, const IndicatorSet*> by_id;
    by_id.reserve(table.rows.size());
    for (const auto& row : table.rows) by_id.emplace(row.process_id, &row.indicators);

    for (const RankedProcess& ranked : report.ranking) {
        const IndicatorSet& set = *by_id.at(ranked.process_id);
        ProcessFlag flag;
        flag.process_id = ranked.process_id;
        for (const ThresholdRule& rule : thresholds) {
            const double observed = indicator_value(set, IndicatorTable::column_index(rule.indicator));
            const bool breached = rule.kind == BoundKind::Ceiling ? observed > rule.bound
                                                                  : observed < rule.bound;
            if (breached) flag.triggers.push_back({rule, observed});
        }
        flag.flagged = !flag.triggers.empty();
        if (!flag.flagged) report.benchmark_ids.push_back(flag.process_id);
        report.flags.push_back(std::move(flag));
    }
    return report;
}

}  // namespace dispstat
