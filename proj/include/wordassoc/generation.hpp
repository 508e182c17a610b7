#pragma once

// Repeated-prompting generation of association datasets: each cue is sent
// `repetitions` times, every completion yields up to three ranked responses and
// the repetition index stands in for the participant.

#include "wordassoc/core_model.hpp"
#include "wordassoc/error.hpp"
#include "wordassoc/norms.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wordassoc {

inline constexpr std::string_view kCuePlaceholder = "{cue}";
inline constexpr std::string_view kDefaultPromptTemplate =
    "Write the first 3 words that come to mind when you read the word \"{cue}\". "
    "Answer with the three words only, separated by commas.";

struct GenerationConfig {
    std::string endpoint_url;
    std::string model_name;
    double temperature = 1.0;
    std::size_t repetitions = 100;
    std::size_t responses_per_prompt = 3;  // at most 3: one per rank
    std::string prompt_template = std::string(kDefaultPromptTemplate);
    std::string system_message;
    int max_tokens = 64;
    int max_retries = 3;
    std::size_t concurrency_limit = 4;
    double requests_per_second = 0.0;  // 0 = unlimited
    std::chrono::milliseconds retry_backoff{500};
    std::optional<std::uint64_t> seed;  // synthetic agent only

    // Throws ConfigError.
    void validate() const;
};

// Substitutes the single {cue} placeholder. Throws ConfigError when the
// template has no placeholder or more than one.
std::string build_prompt(std::string_view prompt_template, std::string_view cue);

// Extracts exactly `expected_count` responses from a completion written as a
// numbered/bulleted list, one word per line, or a comma-separated list.
// Items longer than `max_words` words are treated as prose and ignored; extra
// items beyond expected_count are dropped. Throws ParseError when too few items
// remain.
std::vector<std::string> parse_completion(std::string_view raw_text, std::size_t expected_count,
                                          std::size_t max_words = 3);

// Retryable backend failure (network, 429, 5xx, malformed body).
class TransientBackendError : public Error {
public:
    using Error::Error;
};

// Raised when a run stops early on request; completed work is checkpointed.
class GenerationInterrupted : public Error {
public:
    using Error::Error;
};

struct CompletionRequest {
    std::string cue;
    std::uint32_t repetition = 0;
    std::uint32_t attempt = 0;
    std::string prompt;
    double temperature = 1.0;
};

// Source of completions. Implementations must be callable from several threads.
class CompletionBackend {
public:
    virtual ~CompletionBackend() = default;
    // Returns the completion text. Throws TransientBackendError (retried) or
    // AuthError (fatal); anything else aborts the run.
    virtual std::string complete(const CompletionRequest& request) = 0;
    // Stable identity folded into the run's config hash.
    virtual std::string describe() const = 0;
};

struct RunReport {
    std::string label;
    std::optional<double> temperature;
    std::string config_hash;
    std::size_t cues = 0;
    std::size_t repetitions_requested = 0;
    std::size_t successes = 0;
    std::size_t retries = 0;
    std::size_t gaps = 0;
    std::size_t parse_failures = 0;
    std::size_t transient_failures = 0;
    std::size_t resumed_repetitions = 0;
    std::size_t empty_responses = 0;  // responses that normalized to nothing
    std::vector<std::pair<std::string, std::uint32_t>> gap_list;
    std::vector<std::string> dropped_cues;

    std::string to_json() const;
};

struct RunOptions {
    // Append-only progress log; empty disables checkpointing.
    std::filesystem::path checkpoint;
    // Continue from an existing checkpoint instead of refusing to overwrite it.
    bool resume = false;
    CorrectionMap corrections;
    // Polled between repetitions; returning true interrupts the run.
    std::function<bool()> should_stop;
    // Interrupt after this many newly completed repetitions (0 = never).
    std::size_t stop_after = 0;
    // Progress callback (completed, total); called under the writer lock.
    std::function<void(std::size_t, std::size_t)> on_progress;
};

struct GenerationResult {
    AssociationDataset dataset;
    RunReport report;
};

// Hash of every setting that shapes the generated data (not concurrency or
// retry policy).
std::string config_hash(const GenerationConfig& config, const CompletionBackend& backend);

// Throws ConfigError on a bad config or an empty cue list, ConfigError when a
// resumed checkpoint was written under a different config hash, AuthError on an
// endpoint auth failure, GenerationInterrupted when stopped early.
GenerationResult generate_dataset(const GenerationConfig& config, const std::vector<std::string>& cues,
                                  CompletionBackend& backend, const RunOptions& options = {});

struct SweepOptions {
    std::filesystem::path checkpoint_dir;  // empty disables checkpointing
    bool resume = false;
    CorrectionMap corrections;
    std::function<bool()> should_stop;
};

// One dataset per temperature, each with its own checkpoint
// <dir>/<model>_t<temperature>.checkpoint.tsv. Throws ConfigError on an empty or
// duplicated temperature list.
std::vector<GenerationResult> temperature_sweep(const GenerationConfig& base_config,
                                                const std::vector<double>& temperatures,
                                                const std::vector<std::string>& cues,
                                                CompletionBackend& backend,
                                                const SweepOptions& options = {});

// File-name stem for a model dataset, e.g. "Qwen2.5-32B_t0.3".
std::string dataset_file_stem(std::string_view model, double temperature);

} // namespace wordassoc
