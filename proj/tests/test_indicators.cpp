#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dispstat/indicators.hpp"

using namespace dispstat;

namespace {

// Hand-derived on the sample rows: EFP (213, 215, 210, 214, 211) and
// P1 (166, 173, 180, 182, 8).
constexpr double kEfpCv = 0.00872400611053;
constexpr double kEfpCr = 0.0117647058824;
constexpr double kEfpCd = 0.0075117370892;
constexpr double kEfpCmd = 0.00790216368768;
constexpr double kEfpCiqr90 = 0.0108235294118;
constexpr double kEfpGc = 0.00489181561618;

const DurationSeries kEfp{213, 215, 210, 214, 211};
const DurationSeries kP1{166, 173, 180, 182, 8};
const DurationSeries kP2{208, 199, 203, 496, 488};
const DurationSeries kTriple{10, 20, 30};
const DurationSeries kConstant{6.5, 6.5, 6.5, 6.5};

std::vector<CaseRecord> make_records(const std::vector<double>& durations,
                                     const std::vector<bool>& successes,
                                     const std::string& process_id = "P") {
    std::vector<CaseRecord> records;
    for (std::size_t i = 0; i < durations.size(); ++i) {
        const bool ok = i < successes.size() ? successes[i] : true;
        records.push_back({process_id, "c" + std::to_string(i + 1), durations[i],
                           ok ? Outcome::Success : Outcome::Failure,
                           ok ? "success" : "failure"});
    }
    return records;
}

std::vector<double> random_positive_series(std::mt19937_64& rng, std::size_t max_len = 200) {
    std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
    std::uniform_real_distribution<double> log_dist(-3.0, 6.0);
    std::vector<double> values(len_dist(rng));
    for (double& v : values) v = std::exp(log_dist(rng));
    return values;
}

IndicatorSet indicators_of(const std::vector<double>& durations) {
    return compute_indicator_set(make_records(durations, {}));
}

double gini_by_pairwise_differences(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0, diff_sum = 0.0;
    for (double v : values) sum += v;
    for (double a : values) {
        for (double b : values) diff_sum += std::abs(a - b);
    }
    const double mu = sum / n;
    return diff_sum / (n * n) / (2.0 * mu);
}

bool close_rel(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1e-30});
}

}  // namespace

TEST_CASE("coefficient of variation") {
    CHECK(std::abs(coefficient_of_variation(kTriple) - 0.41) < 0.005);
    CHECK(std::abs(coefficient_of_variation(DurationSeries{100, 200, 300}) - 0.41) < 0.005);
    CHECK(coefficient_of_variation(kConstant) == 0.0);
    CHECK(coefficient_of_variation(kEfp) == doctest::Approx(kEfpCv).epsilon(1e-9));
}

TEST_CASE("coefficient of range") {
    CHECK(coefficient_of_range(kConstant) == 0.0);
    CHECK(coefficient_of_range(kTriple) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(coefficient_of_range(DurationSeries{10, 30}) ==
          doctest::Approx(coefficient_of_range(DurationSeries{1, 3})).epsilon(1e-12));
    CHECK(coefficient_of_range(kEfp) == doctest::Approx(kEfpCr).epsilon(1e-9));
}

TEST_CASE("coefficient of dispersion") {
    CHECK(coefficient_of_dispersion(kTriple) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(coefficient_of_dispersion(kConstant) == 0.0);
    CHECK(coefficient_of_dispersion(kEfp) == doctest::Approx(kEfpCd).epsilon(1e-9));
    CHECK(std::abs(coefficient_of_dispersion(kEfp) - 0.00751) < 1e-5);
}

TEST_CASE("coefficient of mean deviation") {
    CHECK(coefficient_of_mean_deviation(kTriple) == doctest::Approx(1.0 / 3.0).epsilon(1e-9));
    CHECK(coefficient_of_mean_deviation(kConstant) == 0.0);
    CHECK(coefficient_of_mean_deviation(kEfp) == doctest::Approx(kEfpCmd).epsilon(1e-9));
    CHECK(std::abs(coefficient_of_mean_deviation(kEfp) - 0.00790) < 1e-5);
}

TEST_CASE("interquantile range coefficient") {
    CHECK(interquantile_range_coefficient(kConstant) == 0.0);
    CHECK(interquantile_range_coefficient(kTriple) == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(std::abs(interquantile_range_coefficient(DurationSeries{210, 211, 213, 214, 215}) -
                   0.0108) < 1e-4);
    CHECK(interquantile_range_coefficient(kEfp) == doctest::Approx(kEfpCiqr90).epsilon(1e-9));

    // A custom pair behaves like the quantiles it names.
    const double wide = interquantile_range_coefficient(kTriple, {0.0, 1.0});
    CHECK(wide == doctest::Approx(0.5).epsilon(1e-12));  // collapses to the range coefficient
    CHECK_THROWS_AS((void)interquantile_range_coefficient(kTriple, {0.9, 0.1}),
                    InvalidProbability);
    CHECK_THROWS_AS((void)interquantile_range_coefficient(kTriple, {-0.1, 0.9}),
                    InvalidProbability);
}

TEST_CASE("gini coefficient") {
    CHECK(gini_coefficient(kConstant) == 0.0);
    CHECK(gini_coefficient(kTriple) == doctest::Approx(2.0 / 9.0).epsilon(1e-9));
    CHECK(gini_coefficient(kEfp) == doctest::Approx(kEfpGc).epsilon(1e-9));
    // Two points with one vanishing approach maximal inequality for n = 2.
    CHECK(gini_coefficient(DurationSeries{1e-12, 1.0}) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("outlier share indicators") {
    CHECK(outliers_out_of_one_sigma(kTriple) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(outliers_out_of_one_sigma(kConstant) == 0.0);
    CHECK(outliers_out_of_one_sigma(kP1) == doctest::Approx(0.2).epsilon(1e-12));

    CHECK(outliers_out_of_iqr(kP1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(outliers_out_of_iqr(kP2) == 0.0);
    CHECK(outliers_out_of_iqr(kConstant) == 0.0);
}

TEST_CASE("success rate") {
    CHECK(success_rate(make_records({1, 2, 3}, {true, true, true})) == 100.0);
    CHECK(success_rate(make_records({1, 2}, {true, false})) == 50.0);
    std::vector<bool> mostly_failed(20, false);
    mostly_failed[0] = true;
    CHECK(success_rate(make_records(std::vector<double>(20, 1.0), mostly_failed)) == 5.0);
    CHECK_THROWS_AS((void)success_rate({}), EmptySeries);
}

TEST_CASE("indicator set on the sample rows") {
    const IndicatorSet single = indicators_of({17.2});
    CHECK(single.cv == 0.0);
    CHECK(single.cr == 0.0);
    CHECK(single.cd == 0.0);
    CHECK(single.cmd == 0.0);
    CHECK(single.ciqr90 == 0.0);
    CHECK(single.gc == 0.0);
    CHECK(single.oo_os == 0.0);
    CHECK(single.oo_iqr == 0.0);
    CHECK(single.success_rate == 100.0);
    CHECK(single.case_count == 1);

    const IndicatorSet efp = indicators_of({213, 215, 210, 214, 211});
    CHECK(efp.cv == doctest::Approx(kEfpCv).epsilon(1e-9));
    CHECK(efp.cmd == doctest::Approx(kEfpCmd).epsilon(1e-9));
    CHECK(efp.oo_iqr == 0.0);
    CHECK(efp.case_count == 5);

    const IndicatorSet p1 = indicators_of({166, 173, 180, 182, 8});
    CHECK(p1.oo_iqr == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p1.oo_os == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("inclusion policy restricts the duration series, not the success rate") {
    // The failed case is the 8-second outlier; excluding it removes the outlier.
    const auto records = make_records({166, 173, 180, 182, 8},
                                      {true, true, true, true, false});
    const IndicatorSet all = compute_indicator_set(records, DurationInclusionPolicy::AllCases);
    const IndicatorSet ok_only =
        compute_indicator_set(records, DurationInclusionPolicy::SuccessesOnly);

    CHECK(all.oo_iqr == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(ok_only.oo_iqr == 0.0);
    CHECK(all.success_rate == 80.0);
    CHECK(ok_only.success_rate == 80.0);
    CHECK(all.case_count == 5);
    CHECK(ok_only.case_count == 5);
    CHECK(ok_only.cv < all.cv);
}

TEST_CASE("indicator set error paths") {
    CHECK_THROWS_AS((void)compute_indicator_set({}), EmptySeries);

    auto bad = make_records({3.0, -5.0}, {});
    CHECK_THROWS_AS((void)compute_indicator_set(bad), InvalidDuration);

    const auto all_failed = make_records({1, 2, 3}, {false, false, false});
    CHECK_THROWS_AS((void)compute_indicator_set(all_failed,
                                                DurationInclusionPolicy::SuccessesOnly),
                    EmptySeries);
}

TEST_CASE("all eight indicators are scale invariant") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> scale_dist(1e-4, 1e4);
    for (int trial = 0; trial < 300; ++trial) {
        const std::vector<double> values = random_positive_series(rng);
        const double c = scale_dist(rng);
        std::vector<double> scaled = values;
        for (double& v : scaled) v *= c;
        const IndicatorSet a = indicators_of(values);
        const IndicatorSet b = indicators_of(scaled);

        CHECK(close_rel(a.cv, b.cv, 1e-9));
        CHECK(close_rel(a.cr, b.cr, 1e-9));
        CHECK(close_rel(a.cd, b.cd, 1e-9));
        CHECK(close_rel(a.cmd, b.cmd, 1e-9));
        CHECK(close_rel(a.ciqr90, b.ciqr90, 1e-9));
        CHECK(close_rel(a.gc, b.gc, 1e-9));
        CHECK(a.oo_os == b.oo_os);
        CHECK(a.oo_iqr == b.oo_iqr);
    }
}

TEST_CASE("constant series zero out every indicator") {
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> value_dist(1e-6, 1e6);
    std::uniform_int_distribution<std::size_t> len_dist(1, 300);
    for (int trial = 0; trial < 100; ++trial) {
        const IndicatorSet set =
            indicators_of(std::vector<double>(len_dist(rng), value_dist(rng)));
        CHECK(set.cv == 0.0);
        CHECK(set.cr == 0.0);
        CHECK(set.cd == 0.0);
        CHECK(set.cmd == 0.0);
        CHECK(set.ciqr90 == 0.0);
        CHECK(set.gc == 0.0);
        CHECK(set.oo_os == 0.0);
        CHECK(set.oo_iqr == 0.0);
    }
}

TEST_CASE("indicator ranges hold on random data") {
    std::mt19937_64 rng(107);
    for (int trial = 0; trial < 300; ++trial) {
        const std::vector<double> values = random_positive_series(rng);
        const IndicatorSet set = indicators_of(values);
        const double n = static_cast<double>(values.size());

        CHECK(set.cv >= 0.0);
        CHECK(set.cd >= 0.0);
        CHECK(set.cmd >= 0.0);
        CHECK(set.cr >= 0.0);
        CHECK(set.cr < 1.0);
        CHECK(set.ciqr90 >= 0.0);
        CHECK(set.ciqr90 < 1.0);
        CHECK(set.gc >= 0.0);
        CHECK(set.gc <= (n - 1.0) / n);
        CHECK(set.oo_os >= 0.0);
        CHECK(set.oo_os <= 1.0);
        CHECK(set.oo_iqr >= 0.0);
        CHECK(set.oo_iqr <= 1.0);
        CHECK(set.success_rate >= 0.0);
        CHECK(set.success_rate <= 100.0);
        CHECK(std::isfinite(set.cv));
        CHECK(std::isfinite(set.ciqr90));
        CHECK(std::isfinite(set.gc));
    }
}

TEST_CASE("gini agrees with the pairwise-difference definition") {
    std::mt19937_64 rng(109);
    std::uniform_int_distribution<std::size_t> len_dist(1, 64);
    std::uniform_real_distribution<double> log_dist(-2.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> values(len_dist(rng));
        for (double& v : values) v = std::exp(log_dist(rng));
        const double expected = gini_by_pairwise_differences(values);
        const double got = gini_coefficient(DurationSeries(values));
        CHECK(std::abs(got - expected) <= 1e-9);
    }
}

TEST_CASE("permuting records changes nothing") {
    std::mt19937_64 rng(113);
    for (int trial = 0; trial < 50; ++trial) {
        const std::vector<double> values = random_positive_series(rng, 64);
        std::vector<bool> successes(values.size());
        for (std::size_t i = 0; i < successes.size(); ++i) successes[i] = rng() % 3 != 0;
        auto records = make_records(values, successes);
        const IndicatorSet a = compute_indicator_set(records);
        std::shuffle(records.begin(), records.end(), rng);
        const IndicatorSet b = compute_indicator_set(records);

        CHECK(a.cv == b.cv);
        CHECK(a.cr == b.cr);
        CHECK(a.cd == b.cd);
        CHECK(a.cmd == b.cmd);
        CHECK(a.ciqr90 == b.ciqr90);
        CHECK(a.gc == b.gc);
        CHECK(a.oo_os == b.oo_os);
        CHECK(a.oo_iqr == b.oo_iqr);
        CHECK(a.success_rate == b.success_rate);
        CHECK(a.case_count == b.case_count);
    }
}
