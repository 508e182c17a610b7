#include "wordassoc/text_io.hpp"
#include "wordassoc/error.hpp"
#include "wordassoc/sampling.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>

using namespace wordassoc;
using wordassoc::testing::add_r1_counts;
using wordassoc::testing::human_dataset;

namespace {

std::vector<std::string> inventory(int n) {
    std::vector<std::string> cues;
    for (int i = 0; i < n; ++i) cues.push_back("cue" + std::string(1, static_cast<char>('a' + i % 26)) + std::string(i / 26, 'z'));
    return cues;
}

} // namespace

TEST(Sampling, EngineIsTheStandardMersenneTwister) {
    std::mt19937_64 rng;
    rng.discard(9999);
    EXPECT_EQ(rng(), 9981545732273789042ULL);
}

TEST(Sampling, UniformBelowStaysInRangeAndIsRoughlyUniform) {
    std::mt19937_64 rng(3);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 70000; ++i) {
        const auto v = uniform_below(rng, 7);
        ASSERT_LT(v, 7u);
        ++hist[v];
    }
    for (int h : hist) EXPECT_NEAR(h, 10000, 500);
    EXPECT_EQ(uniform_below(rng, 1), 0u);
    EXPECT_THROW(uniform_below(rng, 0), ArgumentError);
}

TEST(Sampling, DeterministicSortedDistinctSubset) {
    const auto all = inventory(200);
    const auto a = sample_cues(all, 49, 1234);
    const auto b = sample_cues(all, 49, 1234);
    auto shuffled = all;
    std::reverse(shuffled.begin(), shuffled.end());
    shuffled.push_back(all[0]);  // duplicates and input order do not matter
    const auto c = sample_cues(shuffled, 49, 1234);
    EXPECT_EQ(a.sampled_cues, b.sampled_cues);
    EXPECT_EQ(a.sampled_cues, c.sampled_cues);
    EXPECT_EQ(a.sampled_cues.size(), 49u);
    EXPECT_TRUE(std::is_sorted(a.sampled_cues.begin(), a.sampled_cues.end()));
    EXPECT_EQ(std::set<std::string>(a.sampled_cues.begin(), a.sampled_cues.end()).size(), 49u);
    const std::set<std::string> pool(all.begin(), all.end());
    for (const auto& cue : a.sampled_cues) EXPECT_TRUE(pool.count(cue));
    EXPECT_NE(sample_cues(all, 49, 1235).sampled_cues, a.sampled_cues);
    EXPECT_EQ(a.source_cue_count, 200u);
    EXPECT_EQ(a.post_filter_cues, a.sampled_cues);
    EXPECT_EQ(sample_cues(all, 200, 5).sampled_cues.size(), 200u);
    EXPECT_THROW(sample_cues(all, 0, 1), ArgumentError);
    EXPECT_THROW(sample_cues(all, 201, 1), ArgumentError);
}

TEST(Sampling, MatchesPlainPartialFisherYates) {
    auto all = inventory(30);
    std::sort(all.begin(), all.end());
    std::mt19937_64 rng(42);
    for (std::size_t i = 0; i < 5; ++i) {
        const std::uint64_t bound = all.size() - i;
        const std::uint64_t threshold = (0 - bound) % bound;
        std::uint64_t x;
        do x = rng();
        while (x < threshold);
        std::swap(all[i], all[i + x % bound]);
    }
    std::vector<std::string> expect(all.begin(), all.begin() + 5);
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(sample_cues(inventory(30), 5, 42).sampled_cues, expect);
}

TEST(Sampling, InclusionIsUniformAcrossSeeds) {
    const auto all = inventory(20);
    std::map<std::string, int> hits;
    const int runs = 4000;
    for (int s = 0; s < runs; ++s)
        for (const auto& cue : sample_cues(all, 5, static_cast<std::uint64_t>(s)).sampled_cues) ++hits[cue];
    // p = 1/4, sd = sqrt(4000 * 0.25 * 0.75) ~ 27.4; 5 sd
    for (const auto& cue : all) EXPECT_NEAR(hits[cue], 1000, 137) << cue;
}

TEST(Sampling, FilterRecordsReasonsAndManifestRoundTrips) {
    auto m = sample_cues({"a", "b", "c", "d"}, 4, 9);
    std::vector<AssociationInstance> h, g;
    add_r1_counts(h, "a", {{"x", 1}});
    add_r1_counts(h, "b", {{"x", 1}});
    add_r1_counts(h, "c", {{"x", 1}});
    add_r1_counts(g, "a", {{"y", 1}});
    g.push_back({"b", "y", 1, Rank::R2});
    const auto human = human_dataset(h);
    const auto model = AssociationDataset("llm", 1.0, g);
    filter_manifest(m, {std::cref(human), std::cref(model)});
    EXPECT_EQ(m.post_filter_cues, std::vector<std::string>{"a"});
    EXPECT_EQ(m.drop_reasons.at("b"), "no R1 response in llm@1");
    EXPECT_EQ(m.drop_reasons.at("d"), "no R1 response in human");

    const auto text = manifest_tsv(m);
    EXPECT_EQ(text.substr(0, text.find("cue\t")),
              "# seed=9\n# requested_n=4\n# source_cue_count=4\n# sampled=4\n# post_filter=1\n");
    const auto back = parse_manifest(text);
    EXPECT_EQ(back.seed, 9u);
    EXPECT_EQ(back.sampled_cues, m.sampled_cues);
    EXPECT_EQ(back.post_filter_cues, m.post_filter_cues);
    EXPECT_EQ(back.drop_reasons, m.drop_reasons);
    EXPECT_EQ(manifest_tsv(back), text);

    wordassoc::testing::TempDir dir;
    io::write_file_atomic(dir / "m.tsv", text);
    EXPECT_EQ(read_cue_list(dir / "m.tsv"), std::vector<std::string>{"a"});
    io::write_file_atomic(dir / "l.txt", "Beach\n\n# comment\nbeach\ndog\n");
    EXPECT_EQ(read_cue_list(dir / "l.txt"), (std::vector<std::string>{"beach", "dog"}));
    EXPECT_THROW(parse_manifest("cue\tstatus\treason\na\tmaybe\t\n"), ParseError);
}

TEST(Representativeness, IdenticalSetsGiveZeroDifference) {
    std::vector<AssociationInstance> h;
    add_r1_counts(h, "a", {{"x", 3}, {"y", 1}});
    add_r1_counts(h, "b", {{"x", 2}, {"z", 2}, {"w", 1}});
    add_r1_counts(h, "c", {{"q", 4}});
    const auto human = human_dataset(h);
    const LexicalNorms norms({{"x", 8}}, {{"a", 2.0}, {"x", 4.0}});
    const auto rows = representativeness_report({"a", "b", "c"}, human, &norms);
    ASSERT_EQ(rows.size(), 10u);
    for (const auto& r : rows) EXPECT_EQ(r.abs_diff, 0.0) << r.metric;
    const auto sub = representativeness_report({"a"}, human, nullptr);
    ASSERT_EQ(sub.size(), 8u);
    EXPECT_EQ(sub[1].metric, "avg_r1");
    EXPECT_EQ(sub[1].subset, 2.0);
    EXPECT_EQ(sub[1].full, 2.0);
    EXPECT_EQ(sub[2].subset, 2.0);
    EXPECT_EQ(sub[2].full, 6.0);
    EXPECT_EQ(sub[2].abs_diff, 4.0);
    EXPECT_THROW(representativeness_report({}, human), ArgumentError);
    EXPECT_THROW(representativeness_report({"nope"}, human), ArgumentError);
    EXPECT_EQ(representativeness_tsv(sub).substr(0, 28), "metric\tsubset\tfull\tabs_diff\n");
}
