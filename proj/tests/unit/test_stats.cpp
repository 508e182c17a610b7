#include "wordassoc/error.hpp"
#include "wordassoc/stats.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace wordassoc;
using namespace wordassoc::stats;

TEST(Describe, HandCases) {
    const std::vector<double> v{1, 2, 3, 4, 5};
    const auto s = describe(v);
    EXPECT_EQ(s.n, 5u);
    EXPECT_DOUBLE_EQ(s.mean, 3.0);
    EXPECT_DOUBLE_EQ(s.q1, 2.0);
    EXPECT_DOUBLE_EQ(s.median, 3.0);
    EXPECT_DOUBLE_EQ(s.q3, 4.0);
    EXPECT_DOUBLE_EQ(s.min, 1.0);
    EXPECT_DOUBLE_EQ(s.max, 5.0);
    EXPECT_DOUBLE_EQ(s.sd, std::sqrt(2.0));
    EXPECT_DOUBLE_EQ(describe(v, SdMode::sample).sd, std::sqrt(2.5));

    const std::vector<double> one{7};
    const auto s1 = describe(one);
    EXPECT_EQ(s1.mean, 7.0);
    EXPECT_EQ(s1.q1, 7.0);
    EXPECT_EQ(s1.q3, 7.0);
    EXPECT_EQ(s1.sd, 0.0);
    EXPECT_TRUE(std::isnan(describe(one, SdMode::sample).sd));
    EXPECT_THROW(describe(std::vector<double>{}), ArgumentError);
}

TEST(Describe, MatchesTwoPassAndDefinitionOnRandomData) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> norm(1e6, 3.0);  // large offset stresses accumulation
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(1 + rng() % 300);
        for (auto& x : v) x = norm(rng);
        const auto s = describe(v);
        EXPECT_NEAR(s.mean, oracle::mean(v), 1e-9 * 1e6);
        EXPECT_NEAR(s.sd, oracle::pop_sd(v), 1e-6);
        for (double p : {0.25, 0.5, 0.75}) {
            std::vector<double> sorted = v;
            std::sort(sorted.begin(), sorted.end());
            EXPECT_DOUBLE_EQ(quantile_sorted(sorted, p), oracle::quantile(v, p));
        }
        EXPECT_LE(s.min, s.q1);
        EXPECT_LE(s.q1, s.median);
        EXPECT_LE(s.median, s.q3);
        EXPECT_LE(s.q3, s.max);
    }
}

TEST(RunningMoments, EmptyAndSingle) {
    RunningMoments m;
    EXPECT_TRUE(std::isnan(m.variance(SdMode::population)));
    m.add(4.0);
    EXPECT_EQ(m.variance(SdMode::population), 0.0);
    EXPECT_TRUE(std::isnan(m.variance(SdMode::sample)));
    EXPECT_EQ(sd_mode_from_string("sample"), SdMode::sample);
    EXPECT_THROW(sd_mode_from_string("other"), ArgumentError);
}

TEST(Pearson, HandCases) {
    const std::vector<double> x{1, 2, 3}, y{2, 4, 6};
    EXPECT_DOUBLE_EQ(pearson(x, y).r, 1.0);
    EXPECT_EQ(pearson(x, y).p, 0.0);
    const std::vector<double> a{1, 2, 3, 4}, b{1, 3, 2, 4};
    const auto r = pearson(a, b);
    EXPECT_NEAR(r.r, 0.8, 1e-12);
    EXPECT_EQ(r.n, 4u);
    // t = 0.8 * sqrt(2 / 0.36); p from the closed-form t(2) CDF
    EXPECT_NEAR(r.t, 0.8 * std::sqrt(2.0 / 0.36), 1e-12);
    EXPECT_NEAR(r.p, 2.0 * (1.0 - oracle::t_cdf_df2(r.t)), 1e-10);
    const std::vector<double> u{1, 2, 3, 4, 5}, w{2, 1, 0, 1, 2};
    EXPECT_NEAR(pearson(u, w).r, 0.0, 1e-15);
    EXPECT_NEAR(pearson(u, w).p, 1.0, 1e-12);
    EXPECT_THROW(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), ArgumentError);
    EXPECT_THROW(pearson(a, std::vector<double>{1, 2, 3}), ArgumentError);
    EXPECT_THROW(pearson(a, std::vector<double>{1, 1, 1, 1}), ArgumentError);
}

TEST(Pearson, PropertiesOnRandomData) {
    std::mt19937_64 rng(8);
    std::normal_distribution<double> norm;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 3 + rng() % 60;
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = norm(rng);
            y[i] = 0.5 * x[i] + norm(rng);
        }
        const auto r = pearson(x, y);
        EXPECT_NEAR(r.r, oracle::pearson_r(x, y), 1e-12);
        EXPECT_NEAR(pearson(y, x).r, r.r, 1e-14);
        const double a = 0.1 + std::fabs(norm(rng)) * 10, b = norm(rng) * 100;
        std::vector<double> ax(n), nx(n);
        for (std::size_t i = 0; i < n; ++i) {
            ax[i] = a * x[i] + b;
            nx[i] = -a * x[i] + b;
        }
        EXPECT_NEAR(pearson(ax, y).r, r.r, 1e-10);
        EXPECT_NEAR(pearson(nx, y).r, -r.r, 1e-10);
        EXPECT_GE(r.p, 0.0);
        EXPECT_LE(r.p, 1.0);
    }
}

TEST(Anova, HandCases) {
    const auto r = one_way_anova({{1, 2, 3}, {2, 3, 4}, {3, 4, 5}});
    EXPECT_DOUBLE_EQ(r.f, 3.0);
    EXPECT_DOUBLE_EQ(r.eta_squared, 0.5);
    EXPECT_EQ(r.df_between, 2);
    EXPECT_EQ(r.df_within, 6);
    EXPECT_DOUBLE_EQ(r.ss_between, 6.0);
    EXPECT_DOUBLE_EQ(r.ss_within, 6.0);
    EXPECT_NEAR(r.p, 0.125, 1e-12);  // (1 + 2*3/6)^-3

    const auto same = one_way_anova({{1, 2, 3}, {1, 2, 3}});
    EXPECT_EQ(same.f, 0.0);
    EXPECT_EQ(same.eta_squared, 0.0);
    EXPECT_NEAR(same.p, 1.0, 1e-15);

    EXPECT_THROW(one_way_anova({{1, 2}}), ArgumentError);
    EXPECT_THROW(one_way_anova({{1, 2}, {}}), ArgumentError);
    EXPECT_THROW(one_way_anova({{1}, {2}}), ArgumentError);
    EXPECT_THROW(one_way_anova({{1, 1}, {2, 2}}), UndefinedResultError);
}

TEST(Anova, MatchesTwoPassOracleAndInvariances) {
    std::mt19937_64 rng(99);
    std::normal_distribution<double> norm;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::vector<double>> groups(2 + rng() % 4);
        double shift = 0.0;
        for (auto& g : groups) {
            g.resize(2 + rng() % 40);  // unbalanced
            for (auto& x : g) x = norm(rng) + shift;
            shift += norm(rng) * 0.3;
        }
        const auto r = one_way_anova(groups);
        const auto o = oracle::anova(groups);
        EXPECT_NEAR(r.f, o.f, 1e-9 * std::max(1.0, o.f));
        EXPECT_NEAR(r.eta_squared, o.eta2, 1e-12);
        EXPECT_EQ(static_cast<double>(r.df_between), o.dfb);
        EXPECT_EQ(static_cast<double>(r.df_within), o.dfw);
        EXPECT_GE(r.eta_squared, 0.0);
        EXPECT_LE(r.eta_squared, 1.0);
        EXPECT_NEAR(r.p, f_sf(o.f, r.df_between, r.df_within), 1e-12);

        auto shifted = groups, scaled = groups;
        for (auto& g : shifted)
            for (auto& x : g) x += 1234.5;
        for (auto& g : scaled)
            for (auto& x : g) x *= -3.5;
        EXPECT_NEAR(one_way_anova(shifted).f, r.f, 1e-7 * std::max(1.0, r.f));
        EXPECT_NEAR(one_way_anova(scaled).f, r.f, 1e-9 * std::max(1.0, r.f));
    }
}

TEST(Distributions, IncompleteBetaClosedForms) {
    for (double x : {0.0, 0.01, 0.2, 0.5, 0.77, 0.999, 1.0}) {
        for (double b : {0.5, 1.0, 3.0, 40.0}) EXPECT_NEAR(regularized_incomplete_beta(1.0, b, x), 1.0 - std::pow(1.0 - x, b), 1e-12);
        for (double a : {0.5, 2.0, 17.0}) EXPECT_NEAR(regularized_incomplete_beta(a, 1.0, x), std::pow(x, a), 1e-12);
        EXPECT_NEAR(regularized_incomplete_beta(0.5, 0.5, x), 2.0 / M_PI * std::asin(std::sqrt(x)), 1e-11);
    }
    EXPECT_THROW(regularized_incomplete_beta(0.0, 1.0, 0.5), ArgumentError);
}

TEST(Distributions, FCdfOracles) {
    for (double d : {1.0, 5.0, 50.0, 5000.0, 30056.0})
        EXPECT_NEAR(f_cdf(1.0, static_cast<std::int64_t>(d), static_cast<std::int64_t>(d)), 0.5, 1e-10);
    EXPECT_NEAR(f_cdf(3.0, 2, 6), 0.875, 1e-12);
    for (double d2 : {1.0, 3.0, 10.0, 200.0, 30056.0})
        for (double x : {0.01, 0.5, 1.0, 2.5, 10.0, 90.29})
            EXPECT_NEAR(f_cdf(x, 2, static_cast<std::int64_t>(d2)), oracle::f_cdf_d1_two(x, d2), 1e-11);
    for (auto [d1, d2] : {std::pair{4.0, 7.0}, {6.0, 12.0}, {10.0, 30.0}, {4.0, 400.0}})
        for (double x : {0.2, 0.9, 1.7, 4.0})
            EXPECT_NEAR(f_cdf(x, static_cast<std::int64_t>(d1), static_cast<std::int64_t>(d2)),
                        oracle::f_cdf_quadrature(x, d1, d2), 1e-8)
                << d1 << "," << d2 << " x=" << x;
    EXPECT_EQ(f_cdf(0.0, 3, 4), 0.0);
    EXPECT_EQ(f_sf(0.0, 3, 4), 1.0);
    EXPECT_THROW(f_cdf(1.0, 0, 4), ArgumentError);
    // far tail stays positive instead of cancelling to 0
    EXPECT_GT(f_sf(90.29, 3, 30056), 0.0);
    EXPECT_LT(f_sf(90.29, 3, 30056), 1e-50);
}

TEST(Distributions, FCdfProperties) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 400; ++trial) {
        const auto d1 = static_cast<std::int64_t>(1 + rng() % 60);
        const auto d2 = static_cast<std::int64_t>(1 + rng() % 5000);
        double prev = 0.0;
        for (double x = 0.05; x < 20; x *= 1.7) {
            const double c = f_cdf(x, d1, d2);
            EXPECT_GE(c, prev - 1e-15);
            EXPECT_LE(c, 1.0);
            EXPECT_NEAR(c + f_sf(x, d1, d2), 1.0, 1e-12);
            EXPECT_NEAR(c, 1.0 - f_cdf(1.0 / x, d2, d1), 1e-10);
            prev = c;
        }
    }
}

TEST(Distributions, TCdfOracles) {
    for (std::int64_t df : {1, 2, 5, 30, 1000}) EXPECT_EQ(t_cdf(0.0, df), 0.5);
    for (double x : {-50.0, -3.0, -0.4, 0.1, 1.0, 7.5}) {
        EXPECT_NEAR(t_cdf(x, 1), oracle::t_cdf_cauchy(x), 1e-12);
        EXPECT_NEAR(t_cdf(x, 2), oracle::t_cdf_df2(x), 1e-12);
    }
    for (double df : {3.0, 9.0, 60.0})
        for (double x : {-2.5, -0.3, 0.7, 3.1})
            EXPECT_NEAR(t_cdf(x, static_cast<std::int64_t>(df)), oracle::t_cdf_quadrature(x, df), 1e-9);
    std::mt19937_64 rng(12);
    std::normal_distribution<double> norm(0.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const auto df = static_cast<std::int64_t>(1 + rng() % 2000);
        const double t = norm(rng);
        EXPECT_NEAR(t_two_sided_p(t, df), f_sf(t * t, 1, df), 1e-12);
        EXPECT_NEAR(t_cdf(t, df) + t_cdf(-t, df), 1.0, 1e-12);
    }
}

TEST(Format, TableStylePValues) {
    EXPECT_EQ(format_p_table(0.0), ".000");
    EXPECT_EQ(format_p_table(0.00099), ".000");
    EXPECT_EQ(format_p_table(0.125), ".125");
    EXPECT_EQ(format_p_table(0.0456), ".046");
    EXPECT_EQ(format_p_table(1.0), "1.000");
}
