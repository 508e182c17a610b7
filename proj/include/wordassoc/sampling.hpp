#pragma once

// Seeded uniform cue subsampling and the subset-vs-full representativeness check.

#include "wordassoc/core_model.hpp"
#include "wordassoc/norms.hpp"
#include "wordassoc/typicality.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace wordassoc {

struct SampleManifest {
    std::uint64_t seed = 0;
    std::size_t requested_n = 0;
    std::size_t source_cue_count = 0;
    std::vector<std::string> sampled_cues;      // lexicographic
    std::vector<std::string> post_filter_cues;  // subset of sampled_cues
    std::map<std::string, std::string> drop_reasons;
};

// Uniform integer in [0, bound) from a 64-bit engine; portable across standard
// libraries, unlike std::uniform_int_distribution.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// Deduplicates and sorts the inventory, then draws n cues without replacement.
// Throws ArgumentError unless 1 <= n <= inventory size.
SampleManifest sample_cues(std::vector<std::string> all_cues, std::size_t n, std::uint64_t seed);

// Keeps the sampled cues every dataset answers at `rank`; the rest are dropped
// with a reason naming the first dataset that lacks them.
void filter_manifest(SampleManifest& manifest,
                     const std::vector<std::reference_wrapper<const AssociationDataset>>& datasets,
                     Rank rank = Rank::R1);

std::string manifest_tsv(const SampleManifest& manifest);
SampleManifest parse_manifest(std::string_view text);

// A manifest (its post-filter cues) or a plain one-cue-per-line file.
std::vector<std::string> read_cue_list(const std::filesystem::path& path);

struct RepresentativenessRow {
    std::string metric;
    double subset = 0.0;
    double full = 0.0;
    double abs_diff = 0.0;
};

// Human self-summary metrics on the subset vs on every cue of full_dataset.
// Norm-based rows (mean relative frequency / concreteness) are added when norms
// are given. Throws ArgumentError for an empty subset or a cue missing from the
// full dataset.
std::vector<RepresentativenessRow> representativeness_report(const std::vector<std::string>& subset_cues,
                                                             const AssociationDataset& full_dataset,
                                                             const LexicalNorms* norms = nullptr,
                                                             const SummaryOptions& options = {});

std::string representativeness_tsv(const std::vector<RepresentativenessRow>& rows);

} // namespace wordassoc
