#include "wordassoc/typicality.hpp"

#include "wordassoc/error.hpp"
#include "wordassoc/text_io.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace wordassoc {

double CueStrengthProfile::strength(std::string_view response) const {
    auto it = strengths.find(response);
    return it == strengths.end() ? 0.0 : it->second;
}

CueStrengthProfile associative_strength(const AssociationDataset& reference, std::string_view cue,
                                        Rank rank, stats::SdMode sd_mode) {
    const auto& tokens = reference.select(cue, rank);
    if (tokens.empty())
        throw MissingProfileError("reference has no responses for cue '" + std::string(cue) +
                                  "' at rank " + std::to_string(rank_number(rank)));
    std::map<std::string, std::size_t, std::less<>> counts;
    for (const auto& inst : tokens) ++counts[inst.response];

    CueStrengthProfile p;
    p.cue = std::string(cue);
    p.rank = rank;
    p.sd_mode = sd_mode;
    p.response_token_total = tokens.size();
    stats::RunningMoments moments;
    const auto total = static_cast<double>(tokens.size());
    for (const auto& [response, count] : counts) {
        const double s = static_cast<double>(count) / total;
        p.strengths.emplace(response, s);
        moments.add(s);
    }
    p.mean_strength = moments.mean();
    p.sd_strength = moments.sd(sd_mode);
    return p;
}

double standardized_strength(const CueStrengthProfile& profile, std::string_view response) {
    if (profile.degenerate())
        throw UndefinedResultError("SS1 undefined for cue '" + profile.cue + "': strength SD is 0");
    return (profile.strength(response) - profile.mean_strength) / profile.sd_strength;
}

namespace {

// response -> multiplicity for (cue, rank) in the dataset
std::map<std::string, std::size_t> response_counts(const AssociationDataset& dataset,
                                                   std::string_view cue, Rank rank) {
    std::map<std::string, std::size_t> counts;
    for (const auto& inst : dataset.select(cue, rank)) ++counts[inst.response];
    return counts;
}

void require_scorable(const std::map<std::string, std::size_t>& counts,
                      const CueStrengthProfile& profile, std::string_view cue) {
    if (counts.empty())
        throw UndefinedResultError("dataset has no responses for cue '" + std::string(cue) + "'");
    if (profile.degenerate())
        throw UndefinedResultError("reference profile for '" + profile.cue + "' is degenerate");
}

} // namespace

double tok_ss1(const AssociationDataset& dataset, std::string_view cue,
               const CueStrengthProfile& reference_profile) {
    const auto counts = response_counts(dataset, cue, reference_profile.rank);
    require_scorable(counts, reference_profile, cue);
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& [response, count] : counts) {
        sum += static_cast<double>(count) * standardized_strength(reference_profile, response);
        n += count;
    }
    return sum / static_cast<double>(n);
}

double typ_ss1(const AssociationDataset& dataset, std::string_view cue,
               const CueStrengthProfile& reference_profile) {
    const auto counts = response_counts(dataset, cue, reference_profile.rank);
    require_scorable(counts, reference_profile, cue);
    double sum = 0.0;
    for (const auto& [response, count] : counts)
        sum += standardized_strength(reference_profile, response);
    return sum / static_cast<double>(counts.size());
}

DatasetSummary dataset_summary(const AssociationDataset& dataset, const AssociationDataset& reference,
                               std::vector<std::string> cues, const SummaryOptions& options) {
    if (cues.empty()) cues = reference.cues();
    std::sort(cues.begin(), cues.end());
    cues.erase(std::unique(cues.begin(), cues.end()), cues.end());

    DatasetSummary s;
    s.label = dataset.label();
    s.temperature = dataset.temperature();
    s.rank = options.rank;
    s.sd_mode = options.sd_mode;
    s.cue_count = cues.size();

    stats::RunningMoments variability;
    stats::RunningMoments tok;
    stats::RunningMoments typ;
    for (const auto& cue : cues) {
        CueTypicalitySummary row;
        row.cue = cue;
        const auto counts = response_counts(dataset, cue, options.rank);
        row.variability = counts.size();
        s.total_types += counts.size();
        if (counts.empty()) {
            row.missing_in_dataset = true;
            ++s.missing_dataset_cues;
        } else {
            variability.add(static_cast<double>(counts.size()));
        }
        if (!reference.has_cue(cue, options.rank)) {
            row.missing_reference = true;
            ++s.missing_reference_cues;
        } else {
            const auto profile = associative_strength(reference, cue, options.rank, options.sd_mode);
            if (profile.degenerate()) {
                row.degenerate = true;
                ++s.degenerate_cues;
            } else if (!counts.empty()) {
                row.tok_ss1 = tok_ss1(dataset, cue, profile);
                row.typ_ss1 = typ_ss1(dataset, cue, profile);
                tok.add(*row.tok_ss1);
                typ.add(*row.typ_ss1);
            }
        }
        s.per_cue.push_back(std::move(row));
    }
    s.answered_cues = variability.count();
    s.avg_variability = variability.count() ? variability.mean() : 0.0;
    s.defined_cues = tok.count();
    s.tok_ss1_mean = tok.count() ? tok.mean() : std::numeric_limits<double>::quiet_NaN();
    s.tok_ss1_sd = tok.sd(options.sd_mode);
    s.typ_ss1_mean = typ.count() ? typ.mean() : std::numeric_limits<double>::quiet_NaN();
    s.typ_ss1_sd = typ.sd(options.sd_mode);
    return s;
}

std::string per_cue_typicality_tsv(const DatasetSummary& summary) {
    std::string out = "cue\tvariability\ttok_ss1\ttyp_ss1\tdegenerate_flag\n";
    for (const auto& row : summary.per_cue) {
        out += row.cue + "\t" + std::to_string(row.variability) + "\t" +
               (row.tok_ss1 ? io::format_double(*row.tok_ss1) : "NA") + "\t" +
               (row.typ_ss1 ? io::format_double(*row.typ_ss1) : "NA") + "\t" +
               (row.degenerate ? "1" : "0") + "\n";
    }
    return out;
}

std::string typicality_table_tsv(std::span<const DatasetSummary> summaries) {
    std::string out =
        "respondent\ttemperature\tavg_r1\ttot_r1\ttok_ss1_mean\ttok_ss1_sd\ttyp_ss1_mean\t"
        "typ_ss1_sd\tcues\tdefined_cues\tdegenerate_cues\tmissing_reference_cues\t"
        "missing_dataset_cues\n";
    for (const auto& s : summaries) {
        out += s.label + "\t" + (s.temperature ? io::format_double(*s.temperature) : "") + "\t" +
               io::format_double(s.avg_variability) + "\t" + std::to_string(s.total_types) + "\t" +
               io::format_double(s.tok_ss1_mean) + "\t" + io::format_double(s.tok_ss1_sd) + "\t" +
               io::format_double(s.typ_ss1_mean) + "\t" + io::format_double(s.typ_ss1_sd) + "\t" +
               std::to_string(s.cue_count) + "\t" + std::to_string(s.defined_cues) + "\t" +
               std::to_string(s.degenerate_cues) + "\t" + std::to_string(s.missing_reference_cues) +
               "\t" + std::to_string(s.missing_dataset_cues) + "\n";
    }
    return out;
}

} // namespace wordassoc
