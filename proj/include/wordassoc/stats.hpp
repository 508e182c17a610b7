#pragma once

// Descriptive statistics, Pearson correlation and one-way ANOVA, with the
// F and t distribution functions behind their p-values.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordassoc::stats {

enum class SdMode { population, sample };

std::string_view to_string(SdMode mode);
// "population" | "sample"; throws ArgumentError otherwise.
SdMode sd_mode_from_string(std::string_view s);

// Welford single-pass mean/variance accumulator.
class RunningMoments {
public:
    void add(double x);
    std::size_t count() const { return n_; }
    double mean() const { return mean_; }
    // Sum of squared deviations from the mean.
    double sum_squares() const { return m2_; }
    // NaN when undefined (n == 0, or n < 2 in sample mode).
    double variance(SdMode mode) const;
    double sd(SdMode mode) const;

private:
    std::size_t n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

double mean(std::span<const double> values);
double sd(std::span<const double> values, SdMode mode);

struct DescriptiveSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  // NaN for n == 1 in sample mode
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

// Quartiles by linear interpolation between order statistics, at position
// (n - 1) * p of the sorted values. Throws ArgumentError for an empty input.
DescriptiveSummary describe(std::span<const double> values, SdMode mode = SdMode::population);

// p-quantile of already sorted values, same interpolation rule.
double quantile_sorted(std::span<const double> sorted, double p);

struct CorrelationResult {
    double r = 0.0;
    double t = 0.0;
    double p = 1.0;  // two-sided
    std::size_t n = 0;
};

// Throws ArgumentError on length mismatch, n < 3 or zero variance.
CorrelationResult pearson(std::span<const double> x, std::span<const double> y);

struct AnovaResult {
    double f = 0.0;
    std::int64_t df_between = 0;
    std::int64_t df_within = 0;
    double p = 1.0;
    double eta_squared = 0.0;
    double ss_between = 0.0;
    double ss_within = 0.0;
};

// Unbalanced one-way ANOVA. Throws ArgumentError on fewer than 2 groups, an
// empty group or N <= k; UndefinedResultError when the within-group variance is 0.
AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups);

// I_x(a, b) by Lentz's continued fraction with the usual symmetry switch.
double regularized_incomplete_beta(double a, double b, double x);

double f_cdf(double x, std::int64_t d1, std::int64_t d2);
// Upper tail 1 - F_cdf, computed without cancellation.
double f_sf(double x, std::int64_t d1, std::int64_t d2);
double t_cdf(double x, std::int64_t df);
// P(|T| >= |t|).
double t_two_sided_p(double t, std::int64_t df);

// Table style: three decimals without the leading zero, ".000" below 1e-3.
std::string format_p_table(double p);

} // namespace wordassoc::stats
