#include "wordassoc/error.hpp"
#include "wordassoc/lexical_metrics.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

using namespace wordassoc;
using wordassoc::testing::human_dataset;

namespace {

LexicalNorms small_norms() {
    return LexicalNorms({{"beach", 4096}, {"sand", 1024}, {"sea", 8192}, {"dog", 2048}, {"cat", 2048}},
                        {{"beach", 4.8}, {"sand", 4.9}, {"dog", 5.0}, {"idea", 1.6}, {"cat", 4.0}});
}

} // namespace

TEST(LexicalMetrics, RelativeFrequencyHandCases) {
    const auto norms = small_norms();
    EXPECT_DOUBLE_EQ(relative_frequency("beach", "sand", norms), -2.0);
    EXPECT_DOUBLE_EQ(relative_frequency("beach", "sea", norms), 1.0);
    EXPECT_DOUBLE_EQ(relative_frequency("beach", "unknownword", norms), -12.0);  // absent -> 1
    EXPECT_DOUBLE_EQ(relative_frequency("nope", "nada", norms), 0.0);
}

TEST(LexicalMetrics, RelativeConcretenessNeedsBothRatings) {
    const auto norms = small_norms();
    EXPECT_DOUBLE_EQ(*relative_concreteness("dog", "cat", norms), 0.8);
    EXPECT_DOUBLE_EQ(*relative_concreteness("idea", "dog", norms), 5.0 / 1.6);
    EXPECT_FALSE(relative_concreteness("dog", "sea", norms));
    EXPECT_FALSE(relative_concreteness("sea", "dog", norms));
}

TEST(LexicalMetrics, AntisymmetryAndReciprocalOnRandomPairs) {
    std::mt19937_64 rng(77);
    FrequencyTable freq;
    ConcretenessTable concr;
    std::vector<std::string> words;
    for (int i = 0; i < 500; ++i) {
        std::string w = "w";
        for (int k = 0; k < 6; ++k) w.push_back(static_cast<char>('a' + rng() % 26));
        words.push_back(w);
        if (rng() % 5) freq[w] = 1 + rng() % 10'000'000;
        if (rng() % 3) concr[w] = 1.0 + 4.0 * static_cast<double>(rng() % 10001) / 10000.0;
    }
    const LexicalNorms norms(freq, concr);
    for (int i = 0; i < 10000; ++i) {
        const auto& a = words[rng() % words.size()];
        const auto& b = words[rng() % words.size()];
        const double ab = relative_frequency(a, b, norms);
        EXPECT_TRUE(std::isfinite(ab));
        EXPECT_EQ(ab, -relative_frequency(b, a, norms));
        const auto cab = relative_concreteness(a, b, norms);
        const auto cba = relative_concreteness(b, a, norms);
        ASSERT_EQ(cab.has_value(), cba.has_value());
        if (cab) {
            EXPECT_GT(*cab, 0.0);
            EXPECT_NEAR(*cab * *cba, 1.0, 1e-12);
        }
    }
}

TEST(LexicalMetrics, UniquePairsDeduplicateAndSort) {
    const auto norms = small_norms();
    const auto d = human_dataset({{"beach", "sand", 1, Rank::R1},
                                  {"beach", "sand", 2, Rank::R1},
                                  {"beach", "sea", 3, Rank::R1},
                                  {"beach", "dog", 1, Rank::R2},
                                  {"dog", "cat", 1, Rank::R1}});
    const auto pm = unique_pair_measures(d, Rank::R1, norms);
    ASSERT_EQ(pm.size(), 3u);
    EXPECT_EQ(pm[0].cue, "beach");
    EXPECT_EQ(pm[0].response, "sand");
    EXPECT_EQ(pm[1].response, "sea");
    EXPECT_EQ(pm[2].cue, "dog");
    EXPECT_DOUBLE_EQ(*pm[2].concreteness_ratio, 0.8);
    EXPECT_FALSE(pm[1].concreteness_ratio);
    EXPECT_EQ(unique_pair_measures(d, Rank::R2, norms).size(), 1u);
    EXPECT_EQ(pair_measures_tsv(pm),
              "cue\tresponse\tlog2_freq_ratio\tconcreteness_ratio\n"
              "beach\tsand\t-2\t1.0208333333333335\n"
              "beach\tsea\t1\tNA\n"
              "dog\tcat\t0\t0.8\n");
}

TEST(BinProfile, FrequencyAxisHandCase) {
    // cue log2 frequencies 0, 5, 10; two bins of width 5, last closed
    const LexicalNorms norms({{"b", 32}, {"c", 1024}}, {});
    std::vector<PairMeasure> pm{{"a", "x", 1.0, {}}, {"a", "y", 3.0, {}}, {"b", "x", 5.0, {}}, {"c", "z", -4.0, {}}};
    BinOptions opt;
    opt.n_bins = 2;
    const auto p = bin_profile(pm, BinAxis::cue_log_frequency, opt, norms);
    ASSERT_EQ(p.bins.size(), 2u);
    EXPECT_EQ(p.bins[0].lower, 0.0);
    EXPECT_EQ(p.bins[0].upper, 5.0);
    EXPECT_EQ(p.bins[1].upper, 10.0);
    EXPECT_EQ(p.bins[0].cue_count, 1u);  // a
    EXPECT_EQ(p.bins[1].cue_count, 2u);  // b at the boundary goes right; c at the closed end
    EXPECT_DOUBLE_EQ(p.bins[0].mean_measure, 2.0);
    EXPECT_DOUBLE_EQ(p.bins[1].mean_measure, 0.5);

    opt.average = BinAverage::cues;
    std::vector<PairMeasure> pm2{{"a", "x", 1.0, {}}, {"a", "y", 3.0, {}}, {"a", "z", 8.0, {}}, {"c", "z", -4.0, {}}};
    const auto byc = bin_profile(pm2, BinAxis::cue_log_frequency, opt, norms);
    EXPECT_DOUBLE_EQ(byc.bins[0].mean_measure, 4.0);
    opt.average = BinAverage::pairs;
    EXPECT_DOUBLE_EQ(bin_profile(pm2, BinAxis::cue_log_frequency, opt, norms).bins[0].mean_measure, 4.0);
    std::vector<PairMeasure> pm3{{"a", "x", 1.0, {}}, {"a", "y", 3.0, {}}, {"b", "z", 8.0, {}}, {"c", "z", -4.0, {}}};
    opt.n_bins = 1;
    opt.average = BinAverage::cues;
    EXPECT_DOUBLE_EQ(bin_profile(pm3, BinAxis::cue_log_frequency, opt, norms).bins[0].mean_measure, (2.0 + 8 - 4) / 3);
    opt.average = BinAverage::pairs;
    EXPECT_DOUBLE_EQ(bin_profile(pm3, BinAxis::cue_log_frequency, opt, norms).bins[0].mean_measure, 2.0);
}

TEST(BinProfile, ConcretenessAxisAndErrors) {
    const LexicalNorms norms({}, {{"a", 1.0}, {"b", 4.9}, {"c", 5.0}, {"x", 2.0}});
    std::vector<PairMeasure> pm{{"a", "x", 0.0, 2.0}, {"b", "x", 0.0, 2.0 / 4.9}, {"c", "x", 0.0, 0.4},
                                {"c", "unrated", 0.0, std::nullopt}, {"d", "x", 0.0, std::nullopt}};
    const auto p = bin_profile(pm, BinAxis::cue_concreteness, default_bin_options(BinAxis::cue_concreteness), norms);
    ASSERT_EQ(p.bins.size(), 8u);
    EXPECT_EQ(p.bins.front().lower, 1.0);
    EXPECT_EQ(p.bins.back().upper, 5.0);
    EXPECT_EQ(p.bins[0].cue_count, 1u);
    EXPECT_EQ(p.bins[7].cue_count, 2u);
    EXPECT_EQ(p.bins[7].pair_count, 2u);
    EXPECT_TRUE(std::isnan(p.bins[3].mean_measure));
    std::size_t cues = 0;
    for (const auto& b : p.bins) cues += b.cue_count;
    EXPECT_EQ(cues, 3u);

    BinOptions bad;
    bad.n_bins = 0;
    EXPECT_THROW(bin_profile(pm, BinAxis::cue_concreteness, bad, norms), ArgumentError);
    EXPECT_THROW(bin_profile(std::vector<PairMeasure>{}, BinAxis::cue_log_frequency, {}, norms), ArgumentError);
    BinOptions narrow;
    narrow.range = std::make_pair(2.0, 4.0);
    EXPECT_THROW(bin_profile(pm, BinAxis::cue_concreteness, narrow, norms), ArgumentError);
}

TEST(BinProfile, SingleAxisValueGivesOneBin) {
    const LexicalNorms norms({}, {});
    std::vector<PairMeasure> pm{{"a", "x", 1.0, {}}, {"b", "y", 2.0, {}}};
    const auto p = bin_profile(pm, BinAxis::cue_log_frequency, {}, norms);
    ASSERT_EQ(p.bins.size(), 1u);
    EXPECT_EQ(p.bins[0].cue_count, 2u);
    EXPECT_DOUBLE_EQ(p.bins[0].mean_measure, 1.5);
}

TEST(BinProfile, PartitionPropertyOnRandomData) {
    std::mt19937_64 rng(21);
    auto letters = [](int i) {
        std::string s = "c";
        do {
            s.push_back(static_cast<char>('a' + i % 26));
            i /= 26;
        } while (i);
        return s;
    };
    for (int trial = 0; trial < 200; ++trial) {
        FrequencyTable freq;
        std::vector<PairMeasure> pm;
        const int cues = 1 + static_cast<int>(rng() % 60);
        for (int c = 0; c < cues; ++c) {
            const auto cue = letters(c);
            if (rng() % 4) freq[cue] = 1 + rng() % 100000;  // some cues absent -> frequency 1
            const int pairs = 1 + static_cast<int>(rng() % 5);
            for (int k = 0; k < pairs; ++k)
                pm.push_back({cue, letters(1000 + k), static_cast<double>(rng() % 100) / 10.0 - 5, {}});
        }
        const LexicalNorms norms(freq, {});
        BinOptions opt;
        opt.n_bins = 1 + static_cast<int>(rng() % 12);
        const auto p = bin_profile(pm, BinAxis::cue_log_frequency, opt, norms);
        std::size_t cue_total = 0, pair_total = 0;
        for (std::size_t i = 0; i < p.bins.size(); ++i) {
            cue_total += p.bins[i].cue_count;
            pair_total += p.bins[i].pair_count;
            if (i) EXPECT_EQ(p.bins[i].lower, p.bins[i - 1].upper);
            if (p.bins.size() > 1) EXPECT_LT(p.bins[i].lower, p.bins[i].upper);
        }
        EXPECT_EQ(cue_total, static_cast<std::size_t>(cues));
        EXPECT_EQ(pair_total, pm.size());
    }
}
