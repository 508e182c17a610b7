#pragma once

// Response-to-cue relative frequency (log2 ratio) and relative concreteness
// (plain ratio) over unique cue-response pairs, with equal-width bin profiles
// along cue frequency or cue concreteness.

#include "wordassoc/core_model.hpp"
#include "wordassoc/norms.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace wordassoc {

struct PairMeasure {
    std::string cue;
    std::string response;
    double log2_freq_ratio = 0.0;
    std::optional<double> concreteness_ratio;
};

// log2(freq(response) / freq(cue)); absent tokens count as frequency 1.
double relative_frequency(std::string_view cue, std::string_view response, const LexicalNorms& norms);

// concreteness(response) / concreteness(cue), or nullopt unless both are rated.
std::optional<double> relative_concreteness(std::string_view cue, std::string_view response,
                                            const LexicalNorms& norms);

// One measure per distinct (cue, response) at `rank`, sorted by cue then response.
std::vector<PairMeasure> unique_pair_measures(const AssociationDataset& dataset, Rank rank,
                                              const LexicalNorms& norms);

enum class BinAxis { cue_log_frequency, cue_concreteness };
enum class BinAverage { pairs, cues };

std::string_view to_string(BinAxis axis);
std::string_view to_string(BinAverage average);
BinAverage bin_average_from_string(std::string_view s);

struct BinOptions {
    int n_bins = 10;
    // Fixed axis span; the observed cue range when absent.
    std::optional<std::pair<double, double>> range;
    BinAverage average = BinAverage::pairs;
};

// 10 bins over the observed log2 cue frequency range; 8 bins over [1, 5] for
// concreteness.
BinOptions default_bin_options(BinAxis axis);

struct Bin {
    double lower = 0.0;
    double upper = 0.0;
    std::size_t cue_count = 0;
    std::size_t pair_count = 0;
    double mean_measure = 0.0;  // NaN for an empty bin
};

struct BinProfile {
    BinAxis axis = BinAxis::cue_log_frequency;
    BinAverage average = BinAverage::pairs;
    std::vector<Bin> bins;
};

// Assigns every cue to an equal-width bin along `axis` (the last bin is closed
// on the right) and averages the matching relative measure per bin. For the
// concreteness axis only pairs with a defined ratio take part. When every cue
// shares one axis value a single bin is returned.
// Throws ArgumentError for n_bins < 1, no usable measures, or a value outside a
// fixed range.
BinProfile bin_profile(std::span<const PairMeasure> measures, BinAxis axis, const BinOptions& options,
                       const LexicalNorms& norms);

// TSV: cue  response  log2_freq_ratio  concreteness_ratio (NA when absent)
std::string pair_measures_tsv(std::span<const PairMeasure> measures);
// TSV: axis  bin_lower  bin_upper  cue_count  mean_measure
std::string bin_profile_tsv(const BinProfile& profile);

} // namespace wordassoc
