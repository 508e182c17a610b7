#include "wordassoc/stats.hpp"

#include "wordassoc/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

namespace wordassoc::stats {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kBetaEps = 1e-12;
constexpr int kBetaMaxIter = 200000;

// Continued fraction for I_x(a,b), modified Lentz.
double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kBetaEps) return h;
    }
    throw Error("incomplete beta continued fraction did not converge");
}

void check_df(std::int64_t df, const char* name) {
    if (df < 1) throw ArgumentError(std::string(name) + " must be >= 1");
}

} // namespace

std::string_view to_string(SdMode mode) {
    return mode == SdMode::population ? "population" : "sample";
}

SdMode sd_mode_from_string(std::string_view s) {
    if (s == "population") return SdMode::population;
    if (s == "sample") return SdMode::sample;
    throw ArgumentError("sd mode must be 'population' or 'sample'");
}

void RunningMoments::add(double x) {
    ++n_;
    const double delta = x - mean_;
    mean_ += delta / static_cast<double>(n_);
    m2_ += delta * (x - mean_);
}

double RunningMoments::variance(SdMode mode) const {
    if (n_ == 0) return kNaN;
    if (mode == SdMode::sample) {
        if (n_ < 2) return kNaN;
        return m2_ / static_cast<double>(n_ - 1);
    }
    return m2_ / static_cast<double>(n_);
}

double RunningMoments::sd(SdMode mode) const { return std::sqrt(variance(mode)); }

double mean(std::span<const double> values) {
    RunningMoments m;
    for (double v : values) m.add(v);
    return values.empty() ? kNaN : m.mean();
}

double sd(std::span<const double> values, SdMode mode) {
    RunningMoments m;
    for (double v : values) m.add(v);
    return m.sd(mode);
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ArgumentError("quantile of empty sequence");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

DescriptiveSummary describe(std::span<const double> values, SdMode mode) {
    if (values.empty()) throw ArgumentError("describe() needs at least one value");
    RunningMoments m;
    for (double v : values) m.add(v);
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    DescriptiveSummary s;
    s.n = sorted.size();
    s.mean = m.mean();
    s.sd = m.sd(mode);
    s.min = sorted.front();
    s.max = sorted.back();
    s.q1 = quantile_sorted(sorted, 0.25);
    s.median = quantile_sorted(sorted, 0.5);
    s.q3 = quantile_sorted(sorted, 0.75);
    return s;
}

CorrelationResult pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ArgumentError("pearson(): length mismatch");
    if (x.size() < 3) throw ArgumentError("pearson(): need at least 3 pairs");
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw ArgumentError("pearson(): zero variance");
    CorrelationResult res;
    res.n = x.size();
    res.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    const auto df = static_cast<std::int64_t>(res.n) - 2;
    if (std::fabs(res.r) >= 1.0) {
        res.t = std::copysign(std::numeric_limits<double>::infinity(), res.r);
        res.p = 0.0;
    } else {
        res.t = res.r * std::sqrt(static_cast<double>(df) / (1.0 - res.r * res.r));
        res.p = t_two_sided_p(res.t, df);
    }
    return res;
}

AnovaResult one_way_anova(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) throw ArgumentError("one_way_anova(): need at least 2 groups");
    std::vector<RunningMoments> moments(groups.size());
    RunningMoments grand;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].empty()) throw ArgumentError("one_way_anova(): empty group");
        for (double v : groups[g]) {
            moments[g].add(v);
            grand.add(v);
        }
    }
    const auto n = static_cast<std::int64_t>(grand.count());
    const auto k = static_cast<std::int64_t>(groups.size());
    if (n <= k) throw ArgumentError("one_way_anova(): need more values than groups");

    AnovaResult res;
    for (const auto& m : moments) {
        const double d = m.mean() - grand.mean();
        res.ss_between += static_cast<double>(m.count()) * d * d;
        res.ss_within += m.sum_squares();
    }
    if (res.ss_within <= 0.0) throw UndefinedResultError("one_way_anova(): zero within-group variance");
    res.df_between = k - 1;
    res.df_within = n - k;
    const double ms_between = res.ss_between / static_cast<double>(res.df_between);
    const double ms_within = res.ss_within / static_cast<double>(res.df_within);
    res.f = ms_between / ms_within;
    res.p = f_sf(res.f, res.df_between, res.df_within);
    res.eta_squared = res.ss_between / (res.ss_between + res.ss_within);
    return res;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ArgumentError("incomplete beta needs a, b > 0");
    if (std::isnan(x)) throw ArgumentError("incomplete beta at NaN");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_cdf(double x, std::int64_t d1, std::int64_t d2) {
    check_df(d1, "d1");
    check_df(d2, "d2");
    if (std::isnan(x)) throw ArgumentError("f_cdf at NaN");
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double a = static_cast<double>(d1);
    const double b = static_cast<double>(d2);
    return regularized_incomplete_beta(a / 2.0, b / 2.0, a * x / (a * x + b));
}

double f_sf(double x, std::int64_t d1, std::int64_t d2) {
    check_df(d1, "d1");
    check_df(d2, "d2");
    if (std::isnan(x)) throw ArgumentError("f_sf at NaN");
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double a = static_cast<double>(d1);
    const double b = static_cast<double>(d2);
    return regularized_incomplete_beta(b / 2.0, a / 2.0, b / (b + a * x));
}

double t_cdf(double x, std::int64_t df) {
    check_df(df, "df");
    if (std::isnan(x)) throw ArgumentError("t_cdf at NaN");
    if (x == 0.0) return 0.5;
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    const double v = static_cast<double>(df);
    const double tail = 0.5 * regularized_incomplete_beta(v / 2.0, 0.5, v / (v + x * x));
    return x > 0.0 ? 1.0 - tail : tail;
}

double t_two_sided_p(double t, std::int64_t df) {
    check_df(df, "df");
    if (std::isnan(t)) throw ArgumentError("t_two_sided_p at NaN");
    if (std::isinf(t)) return 0.0;
    const double v = static_cast<double>(df);
    return regularized_incomplete_beta(v / 2.0, 0.5, v / (v + t * t));
}

std::string format_p_table(double p) {
    if (std::isnan(p)) return "NA";
    if (p < 1e-3) return ".000";
    char buf[16];
    std::snprintf(buf, sizeof buf, "%.3f", p);
    std::string s(buf);
    if (s.rfind("0.", 0) == 0) s.erase(0, 1);
    return s;
}

} // namespace wordassoc::stats
