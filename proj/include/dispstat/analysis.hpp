#ifndef DISPSTAT_ANALYSIS_HPP
#define DISPSTAT_ANALYSIS_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dispstat/errors.hpp"
#include "dispstat/indicators.hpp"

namespace dispstat {

/// Processes x indicators, with the column order of the published indicator
/// tables: cv, cr, cd, cmd, ciqr90, gc, oo_os, sr, oo_iqr.
struct IndicatorTable {
    static constexpr std::array<std::string_view, 9> kColumnNames = {
        "cv", "cr", "cd", "cmd", "ciqr90", "gc", "oo_os", "sr", "oo_iqr"};

    struct Row {
        std::string process_id;
        IndicatorSet indicators;
    };

    std::vector<Row> rows;

    /// Index of a named column; throws UnknownIndicator.
    static std::size_t column_index(std::string_view name);

    /// One named column as a dense array, row order preserved.
    Eigen::ArrayXd column(std::string_view name) const;

    /// rows x 9 matrix in kColumnNames order.
    Eigen::MatrixXd to_matrix() const;
};

/// Value of the k-th table column within one indicator set.
double indicator_value(const IndicatorSet& set, std::size_t column);

/// Pairwise Pearson coefficients over the table columns. NaN marks an entry
/// involving a constant column, for which the coefficient is undefined.
struct CorrelationMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd coefficients;

    bool defined(Eigen::Index i, Eigen::Index j) const;
    double at(std::string_view a, std::string_view b) const;
};

/// Pearson product-moment correlation of two equally sized series.
/// Throws ShapeMismatch on length disagreement and UndefinedCorrelation when
/// either series is constant (or shorter than two values).
double pearson(const Eigen::Ref<const Eigen::ArrayXd>& xs, const Eigen::Ref<const Eigen::ArrayXd>& ys);

/// Full symmetric Pearson matrix over all table columns. Requires at least
/// three rows; constant columns produce undefined (NaN) entries, not errors.
CorrelationMatrix correlation_matrix(const IndicatorTable& table);

enum class SortDirection { Ascending, Descending };

struct RankedProcess {
    std::string process_id;
    double value = 0.0;  // the ranking-key indicator
};

/// Processes ordered by one indicator; ties fall back to process id order.
std::vector<RankedProcess> rank_processes(const IndicatorTable& table, std::string_view key,
                                          SortDirection direction);

/// A ceiling flags values above the bound; a floor flags values below it.
enum class BoundKind { Ceiling, Floor };

struct ThresholdRule {
    std::string indicator;
    BoundKind kind = BoundKind::Ceiling;
    double bound = 0.0;
};

using ThresholdSet = std::vector<ThresholdRule>;

/// Success-rate floor of 90% and CMD ceiling of 0.4, the contrast between a
/// healthy and a failing reference process.
ThresholdSet default_thresholds();

struct TriggeredRule {
    ThresholdRule rule;
    double observed = 0.0;
};

struct ProcessFlag {
    std::string process_id;
    bool flagged = false;
    std::vector<TriggeredRule> triggers;
};

/// Ranking plus per-process erratic verdicts against a threshold set.
struct BenchmarkReport {
    std::string ranking_key;
    SortDirection ranking_direction = SortDirection::Ascending;
    std::vector<RankedProcess> ranking;
    std::vector<ProcessFlag> flags;           // in ranking order
    ThresholdSet thresholds;                  // the bounds the verdicts used
    std::vector<std::string> benchmark_ids;   // unflagged processes, best first
};

/// Flags every process whose indicators breach any threshold; the remainder
/// are the candidate reference processes. Ranking defaults to CMD ascending
/// (most stable first).
BenchmarkReport flag_erratic(const IndicatorTable& table, const ThresholdSet& thresholds,
                             std::string_view ranking_key = "cmd",
                             SortDirection direction = SortDirection::Ascending);

}  // namespace dispstat

#endif  // DISPSTAT_ANALYSIS_HPP
