#pragma once

// Offline completion backend that samples responses from per-cue categorical
// distributions. Draws depend only on (seed, cue, repetition, attempt), so runs
// are reproducible regardless of scheduling or resumption.

#include "wordassoc/generation.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace wordassoc {

struct WeightedOption {
    std::vector<std::string> responses;  // one per rank
    double probability = 0.0;
};

// Either a distribution over whole response tuples, or one independent
// distribution per rank.
struct CueDistribution {
    std::vector<WeightedOption> tuples;
    std::vector<std::vector<WeightedOption>> per_rank;  // each option holds one response

    std::size_t response_count() const;
};

struct SyntheticAgentSpec {
    std::uint64_t seed = 0;
    std::map<std::string, CueDistribution> cues;

    // Throws ConfigError: probabilities must be >= 0 and sum to 1 within 1e-9,
    // responses non-empty, tuple lengths consistent within a cue.
    void validate() const;

    // JSON:
    // {"seed": 7, "cues": {
    //    "beach": {"tuples": [{"responses": ["sand","ocean","towel"], "p": 1.0}]},
    //    "dog":   {"ranks": [[{"response": "cat", "p": 0.5}, {"response": "bone", "p": 0.5}]]}}}
    static SyntheticAgentSpec from_json(std::string_view text);
    static SyntheticAgentSpec read(const std::filesystem::path& path);
    std::string to_json() const;
};

class SyntheticAgent final : public CompletionBackend {
public:
    // seed_override replaces the spec seed when set.
    explicit SyntheticAgent(SyntheticAgentSpec spec, std::optional<std::uint64_t> seed_override = {});

    // Samples after reweighting probabilities to p^(1/T) (argmax at T = 0) and
    // answers "a, b, c". Unknown cues get an unparseable reply.
    std::string complete(const CompletionRequest& request) override;
    std::string describe() const override;

    const SyntheticAgentSpec& spec() const { return spec_; }
    std::uint64_t seed() const { return seed_; }

    // Probabilities after the temperature transform.
    static std::vector<double> apply_temperature(const std::vector<double>& probabilities, double temperature);

private:
    SyntheticAgentSpec spec_;
    std::uint64_t seed_;
};

} // namespace wordassoc
