#include "cli.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <initializer_list>
#include <sstream>

namespace fs = std::filesystem;
using wordassoc::testing::TempDir;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run(std::initializer_list<std::string> args) {
    std::vector<std::string> storage{"wordassoc"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : storage) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = wordassoc::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void put(const fs::path& p, const std::string& text) {
    fs::create_directories(p.parent_path());
    std::ofstream(p, std::ios::binary) << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kHumanCsv =
    "cue,R1,R2,R3\n"
    "beach,sand,sea,sun\nbeach,Sand,ocean,towel\nbeach,sea,sand,NA\nbeach,ocean,waves,sun\n"
    "dog,cat,bone,leash\ndog,cat,bark,NA\ndog,bark,cat,pet\ndog,pet,cat,bone\n"
    "tree,leaf,green,wood\ntree,leaf,branch,NA\ntree,wood,leaf,bark\ntree,green,leaf,forest\n";

const char* kSpec = R"({"seed": 11, "cues": {
  "beach": {"tuples": [{"responses": ["sand", "sea", "sun"], "p": 0.7}, {"responses": ["ocean", "sand", "waves"], "p": 0.3}]},
  "dog": {"ranks": [[{"response": "cat", "p": 0.6}, {"response": "bark", "p": 0.4}], [{"response": "bone", "p": 1.0}], [{"response": "pet", "p": 1.0}]]},
  "tree": {"tuples": [{"responses": ["leaf", "wood", "green"], "p": 1.0}]}}})";

const char* kFreq =
    "beach 120 40\nsand 300 90\nsea 800 200\nsun 900 300\nocean 500 100\ntowel 40 20\nwaves 60 20\n"
    "dog 700 200\ncat 650 180\nbone 90 30\nleash 15 9\nbark 70 25\npet 300 80\n"
    "tree 400 120\nleaf 80 30\ngreen 900 300\nwood 350 90\nbranch 60 20\nforest 200 60\nrare 5 1\n";

const char* kConcr =
    "Word\tConc.M\tConc.SD\nbeach\t4.9\t0.3\nsand\t4.9\t0.3\nsea\t4.7\t0.5\nsun\t4.8\t0.4\nocean\t4.8\t0.4\n"
    "dog\t4.9\t0.2\ncat\t4.9\t0.2\nbone\t4.6\t0.6\nbark\t4.1\t1.0\npet\t4.2\t0.9\n"
    "tree\t5.0\t0.0\nleaf\t4.8\t0.4\ngreen\t3.9\t1.1\nwood\t4.8\t0.4\n";

// Ingest, sample, generate and analyse inside `dir`; returns the produced files.
std::vector<fs::path> pipeline(const fs::path& dir) {
    put(dir / "src/human.csv", kHumanCsv);
    put(dir / "src/spec.json", kSpec);
    put(dir / "src/freq.txt", kFreq);
    put(dir / "src/concr.tsv", kConcr);
    auto d = [&](const std::string& rel) { return (dir / rel).string(); };
    const std::vector<std::vector<std::string>> steps = {
        {"ingest", "human", "--input", d("src/human.csv"), "--out", d("human.tsv"), "--rejects", d("rejects.tsv")},
        {"ingest", "frequency", "--input", d("src/freq.txt"), "--out", d("freq.tsv")},
        {"ingest", "concreteness", "--input", d("src/concr.tsv"), "--out", d("concr.tsv")},
        {"sample", "--reference", d("human.tsv"), "--n", "3", "--seed", "5", "--out", d("manifest.tsv")},
        {"generate", "--cues", d("manifest.tsv"), "--synthetic-spec", d("src/spec.json"), "--model", "synth",
         "--temperatures", "0,1", "--repetitions", "30", "--concurrency", "3", "--out-dir", d("gen")},
        {"metrics", "--dataset", d("gen/synth_t1.tsv"), "--freq-norms", d("freq.tsv"), "--concr-norms",
         d("concr.tsv"), "--out", d("pairs.tsv"), "--bins-out", d("bins.tsv")},
        {"typicality", "--reference", d("human.tsv"), "--datasets", d("gen/synth_t0.tsv") + "," + d("gen/synth_t1.tsv"),
         "--out", d("typ.tsv"), "--per-cue-dir", d("percue"), "--text", d("typ.txt")},
        {"report", "--kind", "table1", "--reference", d("human.tsv"), "--datasets",
         d("gen/synth_t0.tsv") + "," + d("gen/synth_t1.tsv"), "--out", d("rep/table1.tsv")},
        {"report", "--kind", "fig2_freq_bins", "--reference", d("human.tsv"), "--datasets",
         d("gen/synth_t0.tsv") + "," + d("gen/synth_t1.tsv"), "--freq-norms", d("freq.tsv"), "--out",
         d("rep/fig2.tsv")},
        {"report", "--kind", "appendix_anova", "--datasets", d("gen/synth_t0.tsv") + "," + d("gen/synth_t1.tsv"),
         "--freq-norms", d("freq.tsv"), "--concr-norms", d("concr.tsv"), "--out", d("rep/anova.tsv")},
    };
    for (const auto& step : steps) {
        std::vector<const char*> argv{"wordassoc"};
        for (const auto& s : step) argv.push_back(s.c_str());
        std::ostringstream out, err;
        const int code = wordassoc::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
        EXPECT_EQ(code, 0) << step[0] << ": " << err.str();
    }
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        // checkpoints are progress logs: wall-clock stamps, completion order
        if (e.is_regular_file() && e.path().string().find("/src/") == std::string::npos &&
            e.path().string().find(".checkpoint.") == std::string::npos)
            files.push_back(fs::relative(e.path(), dir));
    std::sort(files.begin(), files.end());
    return files;
}

} // namespace

TEST(Cli, HelpAndUsageErrors) {
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"bogus"}).code, 2);
    EXPECT_EQ(run({"metrics", "--dataset", "x.tsv", "--no-such-flag"}).code, 2);
    TempDir dir;
    put(dir / "cues.txt", "beach\n");
    const auto r = run({"generate", "--cues", (dir / "cues.txt").string(), "--out-dir", (dir / "g").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("--endpoint"), std::string::npos);
    EXPECT_EQ(run({"report", "--kind", "fig9", "--out", (dir / "x.tsv").string()}).code, 2);
}

TEST(Cli, MissingInputFileIsFatal) {
    TempDir dir;
    const auto r = run({"metrics", "--dataset", (dir / "absent.tsv").string(), "--freq-norms",
                        (dir / "absent_freq.tsv").string()});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, PipelineIsByteIdenticalAcrossRuns) {
    TempDir a, b;
    const auto files_a = pipeline(a.path());
    const auto files_b = pipeline(b.path());
    ASSERT_EQ(files_a, files_b);
    for (const char* expected : {"human.tsv", "gen/synth_t0.tsv", "gen/synth_t1.run.json", "pairs.tsv", "bins.tsv",
                                 "typ.tsv", "typ.txt", "rep/table1.tsv", "rep/table1.tsv.meta.json",
                                 "rep/table1.tsv.txt", "rep/fig2.tsv", "rep/anova.tsv"})
        EXPECT_NE(std::find(files_a.begin(), files_a.end(), fs::path(expected)), files_a.end()) << expected;
    for (const auto& f : files_a) EXPECT_EQ(slurp(a.path() / f), slurp(b.path() / f)) << f;
    // NA cells are missing responses, "Sand" folds into "sand"
    const auto human = slurp(a.path() / "human.tsv");
    EXPECT_EQ(human.find("\tNA\t"), std::string::npos);
    EXPECT_EQ(human.find("Sand"), std::string::npos);
    const auto anova = slurp(a.path() / "rep/anova.tsv");
    EXPECT_NE(anova.find("synth\tlog_freq_ratio"), std::string::npos);
}

TEST(Cli, ResumeAfterInterruptMatchesUninterruptedRun) {
    TempDir dir;
    put(dir / "spec.json", kSpec);
    put(dir / "cues.txt", "beach\ndog\ntree\n");
    const std::string spec = (dir / "spec.json").string(), cues = (dir / "cues.txt").string();
    ASSERT_EQ(run({"generate", "--cues", cues, "--synthetic-spec", spec, "--repetitions", "25", "--out-dir",
                   (dir / "full").string()})
                  .code,
              0);
    const auto stopped = run({"generate", "--cues", cues, "--synthetic-spec", spec, "--repetitions", "25",
                              "--out-dir", (dir / "part").string(), "--stop-after", "20"});
    EXPECT_EQ(stopped.code, 1);
    EXPECT_NE(stopped.err.find("--resume"), std::string::npos);
    // a second start without --resume refuses to clobber the checkpoint
    EXPECT_NE(run({"generate", "--cues", cues, "--synthetic-spec", spec, "--repetitions", "25", "--out-dir",
                   (dir / "part").string()})
                  .code,
              0);
    ASSERT_EQ(run({"generate", "--cues", cues, "--synthetic-spec", spec, "--repetitions", "25", "--out-dir",
                   (dir / "part").string(), "--resume"})
                  .code,
              0);
    EXPECT_EQ(slurp(dir / "full/synthetic_t1.tsv"), slurp(dir / "part/synthetic_t1.tsv"));
}

TEST(Cli, ConfigFileSuppliesDefaults) {
    TempDir dir;
    pipeline(dir.path());
    const auto d = [&](const std::string& rel) { return (dir / rel).string(); };
    put(dir / "stats.toml", "[stats]\ntest = \"anova\"\nmeasure = \"log_freq_ratio\"\ngroups-by = \"label\"\n");
    // four labels -> three between-group degrees of freedom
    for (const char* label : {"m1", "m2", "m3"})
        ASSERT_EQ(run({"generate", "--cues", d("manifest.tsv"), "--synthetic-spec", d("src/spec.json"), "--model",
                       label, "--repetitions", "10", "--out-dir", d("labels")})
                      .code,
                  0);
    const auto r = run({"--config", d("stats.toml"), "stats", "--datasets",
                        d("human.tsv") + "," + d("labels/m1_t1.tsv") + "," + d("labels/m2_t1.tsv") + "," +
                            d("labels/m3_t1.tsv"),
                        "--freq-norms", d("freq.tsv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    EXPECT_EQ(header.substr(0, 16), "groups_by\tgroups");
    EXPECT_EQ(row.substr(0, 27), "label\thuman,m1,m2,m3\tlog_fr");
    std::vector<std::string> cells;
    std::istringstream cs(row);
    for (std::string c; std::getline(cs, c, '\t');) cells.push_back(c);
    ASSERT_GE(cells.size(), 5u);
    EXPECT_EQ(cells[4], "3");
    // a command-line flag overrides the file
    const auto g = run({"--config", d("stats.toml"), "stats", "--groups-by", "dataset", "--datasets",
                        d("labels/m1_t1.tsv") + "," + d("labels/m2_t1.tsv"), "--freq-norms", d("freq.tsv")});
    ASSERT_EQ(g.code, 0) << g.err;
    EXPECT_EQ(g.out.find("label\t"), std::string::npos);
}
