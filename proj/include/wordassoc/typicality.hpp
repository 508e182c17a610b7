#pragma once

// Associative strength of human responses (S1), its per-cue z-score (SS1) and
// the per-token / per-type averages used to score how human-typical another
// dataset's responses are, plus the per-dataset variability summary.

#include "wordassoc/core_model.hpp"
#include "wordassoc/stats.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordassoc {

// S1 distribution of the reference responses for one cue at one rank.
struct CueStrengthProfile {
    std::string cue;
    Rank rank = Rank::R1;
    std::map<std::string, double, std::less<>> strengths;  // response -> S1 in (0, 1]
    double mean_strength = 0.0;                            // 1 / #unique responses
    double sd_strength = 0.0;
    stats::SdMode sd_mode = stats::SdMode::population;
    std::size_t response_token_total = 0;

    // SD is zero (single unique response) or undefined (sample mode, n = 1).
    bool degenerate() const { return !(sd_strength > 0.0); }

    // S1 of a response; 0 for responses the reference never gave.
    double strength(std::string_view response) const;
};

// Throws MissingProfileError when the reference has no instance for (cue, rank).
CueStrengthProfile associative_strength(const AssociationDataset& reference, std::string_view cue,
                                        Rank rank = Rank::R1,
                                        stats::SdMode sd_mode = stats::SdMode::population);

// (S1(c,r) - mean) / sd. Throws UndefinedResultError on a degenerate profile.
double standardized_strength(const CueStrengthProfile& profile, std::string_view response);

// Mean SS1 over every response token the dataset gives for the cue.
// Throws UndefinedResultError when the dataset has no such token or the profile
// is degenerate.
double tok_ss1(const AssociationDataset& dataset, std::string_view cue,
               const CueStrengthProfile& reference_profile);

// Mean SS1 over the distinct responses the dataset gives for the cue.
double typ_ss1(const AssociationDataset& dataset, std::string_view cue,
               const CueStrengthProfile& reference_profile);

struct CueTypicalitySummary {
    std::string cue;
    std::size_t variability = 0;  // #R1
    std::optional<double> tok_ss1;
    std::optional<double> typ_ss1;
    bool degenerate = false;          // reference profile has SD 0
    bool missing_reference = false;   // cue absent from the reference
    bool missing_in_dataset = false;  // dataset has no response for the cue
};

struct SummaryOptions {
    Rank rank = Rank::R1;
    stats::SdMode sd_mode = stats::SdMode::population;
};

struct DatasetSummary {
    std::string label;
    std::optional<double> temperature;
    Rank rank = Rank::R1;
    stats::SdMode sd_mode = stats::SdMode::population;
    std::vector<CueTypicalitySummary> per_cue;  // sorted by cue

    std::size_t cue_count = 0;         // cues requested
    std::size_t answered_cues = 0;     // cues the dataset answered
    double avg_variability = 0.0;      // avg#R1 over answered cues
    std::size_t total_types = 0;       // tot#R1: distinct (cue, response) pairs
    std::size_t defined_cues = 0;      // cues with tok/typ defined
    double tok_ss1_mean = 0.0;
    double tok_ss1_sd = 0.0;
    double typ_ss1_mean = 0.0;
    double typ_ss1_sd = 0.0;
    std::size_t degenerate_cues = 0;
    std::size_t missing_reference_cues = 0;
    std::size_t missing_dataset_cues = 0;
};

// Per-cue variability and typicality plus the aggregate row. Degenerate or
// missing cues are excluded from the typicality aggregates and counted. An
// empty cue list means "every cue of the reference".
DatasetSummary dataset_summary(const AssociationDataset& dataset, const AssociationDataset& reference,
                               std::vector<std::string> cues, const SummaryOptions& options = {});

// TSV: cue  variability  tok_ss1  typ_ss1  degenerate_flag
std::string per_cue_typicality_tsv(const DatasetSummary& summary);

// Aggregate table, one row per summary:
// respondent temperature avg_r1 tot_r1 tok_ss1_mean tok_ss1_sd typ_ss1_mean
// typ_ss1_sd cues defined_cues degenerate_cues missing_reference_cues missing_dataset_cues
std::string typicality_table_tsv(std::span<const DatasetSummary> summaries);

} // namespace wordassoc
