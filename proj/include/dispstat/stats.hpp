#ifndef DISPSTAT_STATS_HPP
#define DISPSTAT_STATS_HPP

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dispstat/errors.hpp"

namespace dispstat {

template <typename Scalar>
using SeriesArray = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

namespace detail {

inline void require_nonempty(Eigen::Index n) {
    if (n == 0) throw EmptySeries();
}

}  // namespace detail

/// Arithmetic mean. A constant series yields that value exactly, so downstream
/// deviation sums vanish instead of accumulating rounding noise.
template <typename Derived>
typename Derived::Scalar mean(const Eigen::ArrayBase<Derived>& xs) {
    detail::require_nonempty(xs.size());
    const auto lo = xs.minCoeff();
    const auto hi = xs.maxCoeff();
    if (lo == hi) return lo;
    return xs.mean();
}

/// Mean squared deviation from the mean (divisor n).
template <typename Derived>
typename Derived::Scalar population_variance(const Eigen::ArrayBase<Derived>& xs) {
    detail::require_nonempty(xs.size());
    const auto mu = mean(xs);
    return (xs.derived() - mu).square().sum() / static_cast<typename Derived::Scalar>(xs.size());
}

template <typename Derived>
typename Derived::Scalar population_std_dev(const Eigen::ArrayBase<Derived>& xs) {
    using std::sqrt;
    return sqrt(population_variance(xs));
}

/// Ascending copy of the input expression.
template <typename Derived>
SeriesArray<typename Derived::Scalar> sorted_values(const Eigen::ArrayBase<Derived>& xs) {
    SeriesArray<typename Derived::Scalar> v = xs.derived();
    std::sort(v.begin(), v.end());
    return v;
}

/// Quantile of an ascending pre-sorted array: linear interpolation between
/// order statistics at rank h = (n-1)*p, zero-based.
template <typename Scalar>
Scalar quantile_sorted(const SeriesArray<Scalar>& sorted, double p) {
    detail::require_nonempty(sorted.size());
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidProbability(p);
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<Eigen::Index>(std::floor(h));
    const auto hi = static_cast<Eigen::Index>(std::ceil(h));
    const auto frac = static_cast<Scalar>(h - std::floor(h));
    return sorted(lo) + frac * (sorted(hi) - sorted(lo));
}

template <typename Derived>
typename Derived::Scalar quantile(const Eigen::ArrayBase<Derived>& xs, double p) {
    return quantile_sorted(sorted_values(xs), p);
}

/// Middle order statistic; the mean of the two middle ones for even n.
/// Identical to quantile(xs, 0.5) by construction.
template <typename Derived>
typename Derived::Scalar median(const Eigen::ArrayBase<Derived>& xs) {
    return quantile(xs, 0.5);
}

/// Interquartile range Q3 - Q1.
template <typename Derived>
typename Derived::Scalar iqr(const Eigen::ArrayBase<Derived>& xs) {
    const auto v = sorted_values(xs);
    return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

/// Counts and fences for both outlier rules over one series.
struct OutlierSummary {
    Eigen::Index count_1sd = 0;   // values strictly outside mu +- sigma
    Eigen::Index count_iqr = 0;   // values strictly outside the 1.5*IQR fences
    double lower_fence_1sd = 0.0;
    double upper_fence_1sd = 0.0;
    double lower_fence_iqr = 0.0;
    double upper_fence_iqr = 0.0;
};

namespace detail {

/// Shared implementation over an ascending pre-sorted array.
template <typename Scalar>
OutlierSummary outlier_summary_sorted(const SeriesArray<Scalar>& v) {
    require_nonempty(v.size());
    const Scalar mu = mean(v);
    const Scalar sd = population_std_dev(v);
    const Scalar q1 = quantile_sorted(v, 0.25);
    const Scalar q3 = quantile_sorted(v, 0.75);
    const Scalar reach = Scalar(1.5) * (q3 - q1);

    const Scalar lo_sd = mu - sd;
    const Scalar hi_sd = mu + sd;
    const Scalar lo_iqr = q1 - reach;
    const Scalar hi_iqr = q3 + reach;

    OutlierSummary out;
    out.lower_fence_1sd = static_cast<double>(lo_sd);
    out.upper_fence_1sd = static_cast<double>(hi_sd);
    out.lower_fence_iqr = static_cast<double>(lo_iqr);
    out.upper_fence_iqr = static_cast<double>(hi_iqr);
    // n <= 2 puts every value exactly on a sigma fence (mu +- sigma are the
    // points themselves), so the strict rule can never fire; computing it in
    // floating point would let rounding decide.
    out.count_1sd = v.size() <= 2 ? 0 : ((v < lo_sd) || (v > hi_sd)).count();
    out.count_iqr = ((v < lo_iqr) || (v > hi_iqr)).count();
    return out;
}

}  // namespace detail

template <typename Derived>
OutlierSummary outlier_summary(const Eigen::ArrayBase<Derived>& xs) {
    return detail::outlier_summary_sorted(sorted_values(xs));
}

/// Number of values strictly outside mu +- sigma.
template <typename Derived>
Eigen::Index outlier_count_1sd(const Eigen::ArrayBase<Derived>& xs) {
    return outlier_summary(xs).count_1sd;
}

/// Number of values strictly outside Q1 - 1.5*IQR / Q3 + 1.5*IQR, the boxplot rule.
template <typename Derived>
Eigen::Index outlier_count_iqr(const Eigen::ArrayBase<Derived>& xs) {
    return outlier_summary(xs).count_iqr;
}

/// Per-case execution durations of one process, in seconds. Values must be
/// positive and finite. Statistics are evaluated on the ascending-sorted copy,
/// so any permutation of the same values produces bit-identical results.
class DurationSeries {
public:
    explicit DurationSeries(Eigen::ArrayXd values) : values_(std::move(values)) {
        if (values_.size() == 0) throw EmptySeries("duration series needs at least one value");
        if (!values_.isFinite().all() || !(values_ > 0.0).all()) {
            throw InvalidDuration("durations must be positive finite seconds");
        }
        sorted_ = values_;
        std::sort(sorted_.begin(), sorted_.end());
    }

    explicit DurationSeries(const std::vector<double>& values)
        : DurationSeries(Eigen::ArrayXd(Eigen::Map<const Eigen::ArrayXd>(
              values.data(), static_cast<Eigen::Index>(values.size())))) {}

    DurationSeries(std::initializer_list<double> values)
        : DurationSeries(Eigen::ArrayXd(Eigen::Map<const Eigen::ArrayXd>(
              values.begin(), static_cast<Eigen::Index>(values.size())))) {}

    const Eigen::ArrayXd& values() const { return values_; }
    const Eigen::ArrayXd& sorted() const { return sorted_; }
    Eigen::Index size() const { return values_.size(); }

private:
    Eigen::ArrayXd values_;
    Eigen::ArrayXd sorted_;
};

inline double mean(const DurationSeries& s) { return mean(s.sorted()); }
inline double population_variance(const DurationSeries& s) { return population_variance(s.sorted()); }
inline double population_std_dev(const DurationSeries& s) { return population_std_dev(s.sorted()); }
inline double quantile(const DurationSeries& s, double p) { return quantile_sorted(s.sorted(), p); }
inline double median(const DurationSeries& s) { return quantile(s, 0.5); }

inline double iqr(const DurationSeries& s) {
    return quantile(s, 0.75) - quantile(s, 0.25);
}

inline OutlierSummary outlier_summary(const DurationSeries& s) {
    return detail::outlier_summary_sorted(s.sorted());
}

inline Eigen::Index outlier_count_1sd(const DurationSeries& s) {
    return outlier_summary(s).count_1sd;
}

inline Eigen::Index outlier_count_iqr(const DurationSeries& s) {
    return outlier_summary(s).count_iqr;
}

}  // namespace dispstat

#endif  // DISPSTAT_STATS_HPP
