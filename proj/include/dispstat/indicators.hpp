#ifndef DISPSTAT_INDICATORS_HPP
#define DISPSTAT_INDICATORS_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dispstat/case_record.hpp"
#include "dispstat/errors.hpp"
#include "dispstat/stats.hpp"

namespace dispstat {

/// Quantile pair for the interquantile-range coefficient.
struct QuantilePair {
    double lower = 0.05;
    double upper = 0.95;
};

/// The eight normalized dispersion indicators plus success rate for one process.
/// All eight are dimensionless and invariant under rescaling of the durations,
/// which is what makes processes of very different speeds comparable.
struct IndicatorSet {
    double cv = 0.0;        // sigma / mu
    double cr = 0.0;        // (H - S) / (H + S)
    double cd = 0.0;        // mean absolute deviation from the median, over the median
    double cmd = 0.0;       // mean absolute deviation from the mean, over the mean
    double ciqr90 = 0.0;    // (Q_hi - Q_lo) / (Q_hi + Q_lo)
    double gc = 0.0;        // Gini coefficient over ascending values
    double oo_os = 0.0;     // share of cases outside mu +- sigma
    double oo_iqr = 0.0;    // share of cases outside the boxplot fences
    double success_rate = 0.0;  // percent of successful cases, 0..100
    Eigen::Index case_count = 0;
};

/// Which cases contribute their durations to the dispersion indicators.
/// Success rate is always computed over all cases.
enum class DurationInclusionPolicy { AllCases, SuccessesOnly };

inline double coefficient_of_variation(const DurationSeries& s) {
    return population_std_dev(s) / mean(s);
}

inline double coefficient_of_range(const DurationSeries& s) {
    const double lowest = s.sorted()(0);
    const double highest = s.sorted()(s.size() - 1);
    return (highest - lowest) / (highest + lowest);
}

inline double coefficient_of_dispersion(const DurationSeries& s) {
    const double med = median(s);
    if (med == 0.0) throw DegenerateInput("median is zero");
    const double n = static_cast<double>(s.size());
    return (s.sorted() - med).abs().sum() / (n * med);
}

inline double coefficient_of_mean_deviation(const DurationSeries& s) {
    const double mu = mean(s);
    const double n = static_cast<double>(s.size());
    return (s.sorted() - mu).abs().sum() / (n * mu);
}

/// Normalized spread between two tail quantiles, (0.05, 0.95) by default.
inline double interquantile_range_coefficient(const DurationSeries& s, QuantilePair q = {}) {
    if (q.lower > q.upper) throw InvalidProbability(q.lower);
    const double q_lo = quantile(s, q.lower);
    const double q_hi = quantile(s, q.upper);
    return (q_hi - q_lo) / (q_hi + q_lo);
}

/// Gini coefficient via the rank-weighted form over ascending values:
/// sum_i (2i - n - 1) x_(i) / (n sum_i x_i), i = 1..n.
inline double gini_coefficient(const DurationSeries& s) {
    const Eigen::ArrayXd& v = s.sorted();
    const Eigen::Index n = v.size();
    if (v(0) == v(n - 1)) return 0.0;  // perfect equality
    const double dn = static_cast<double>(n);
    const Eigen::ArrayXd rank_weights = Eigen::ArrayXd::LinSpaced(n, 1.0 - dn, dn - 1.0);
    return (rank_weights * v).sum() / (dn * v.sum());
}

inline double outliers_out_of_one_sigma(const DurationSeries& s) {
    return static_cast<double>(outlier_count_1sd(s)) / static_cast<double>(s.size());
}

inline double outliers_out_of_iqr(const DurationSeries& s) {
    return static_cast<double>(outlier_count_iqr(s)) / static_cast<double>(s.size());
}

/// Percentage of successfully processed cases.
inline double success_rate(std::span<const CaseRecord> records) {
    if (records.empty()) throw EmptySeries("no case records");
    const auto successes = std::count_if(records.begin(), records.end(), [](const CaseRecord& r) {
        return r.outcome == Outcome::Success;
    });
    return 100.0 * static_cast<double>(successes) / static_cast<double>(records.size());
}

/// Assembles one indicator-table row: the eight dispersion indicators on the
/// policy-selected durations plus success rate and case count over all records.
inline IndicatorSet compute_indicator_set(std::span<const CaseRecord> records,
                                          DurationInclusionPolicy policy = DurationInclusionPolicy::AllCases,
                                          QuantilePair ciqr_quantiles = {}) {
    if (records.empty()) throw EmptySeries("no case records");

    std::vector<double> durations;
    durations.reserve(records.size());
    for (const CaseRecord& r : records) {
        if (!std::isfinite(r.duration_seconds) || !(r.duration_seconds > 0.0)) {
            throw InvalidDuration("case " + r.case_id + " has a non-positive duration");
        }
        if (policy == DurationInclusionPolicy::SuccessesOnly && r.outcome != Outcome::Success) {
            continue;
        }
        durations.push_back(r.duration_seconds);
    }
    if (durations.empty()) throw EmptySeries("no durations under the inclusion policy");

    const DurationSeries series(durations);
    const OutlierSummary outliers = outlier_summary(series);
    const double n = static_cast<double>(series.size());

    IndicatorSet set;
    set.cv = coefficient_of_variation(series);
    set.cr = coefficient_of_range(series);
    set.cd = coefficient_of_dispersion(series);
    set.cmd = coefficient_of_mean_deviation(series);
    set.ciqr90 = interquantile_range_coefficient(series, ciqr_quantiles);
    set.gc = gini_coefficient(series);
    set.oo_os = static_cast<double>(outliers.count_1sd) / n;
    set.oo_iqr = static_cast<double>(outliers.count_iqr) / n;
    set.success_rate = success_rate(records);
    set.case_count = static_cast<Eigen::Index>(records.size());
    return set;
}

}  // namespace dispstat

#endif  // DISPSTAT_INDICATORS_HPP
