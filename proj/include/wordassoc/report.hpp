#pragma once

// Data behind each figure and table: boxplot summaries, bin profiles,
// typicality tables and ANOVA rows, written as TSV plus a JSON sidecar holding
// every setting that shaped the numbers.

#include "wordassoc/core_model.hpp"
#include "wordassoc/lexical_metrics.hpp"
#include "wordassoc/norms.hpp"
#include "wordassoc/stats.hpp"
#include "wordassoc/typicality.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wordassoc {

enum class ReportKind {
    fig1_freq_dist,
    fig2_freq_bins,
    fig3_concr_dist,
    fig4_concr_bins,
    fig5_var_typ,
    fig6_scatter,
    table1,
    appendix_anova,
    appendix_dists,
};

std::string_view to_string(ReportKind kind);
ReportKind report_kind_from_string(std::string_view s);
std::vector<std::string_view> report_kind_names();

// Per-pair and per-cue quantities that reports and tests can draw on.
enum class Measure {
    log_freq_ratio,         // pair
    concreteness_ratio,     // pair, both rated
    cue_log_freq,           // pair
    response_log_freq,      // pair
    cue_concreteness,       // pair, both rated
    response_concreteness,  // pair, both rated
    variability,            // cue
    tok_ss1,                // cue, needs reference
    typ_ss1,                // cue, needs reference
};

std::string_view to_string(Measure m);
Measure measure_from_string(std::string_view s);
bool is_pair_level(Measure m);

struct AnalysisSettings {
    Rank rank = Rank::R1;
    stats::SdMode sd_mode = stats::SdMode::population;
    int freq_bins = 10;
    int concr_bins = 8;
    BinAverage bin_average = BinAverage::pairs;
    std::vector<std::string> cues;  // restrict every dataset to these; empty = all
};

struct AnalysisInputs {
    const AssociationDataset* reference = nullptr;  // the human norms
    std::vector<const AssociationDataset*> datasets;
    const LexicalNorms* norms = nullptr;
};

// Rows of aligned values, one column per requested measure; rows where any
// measure is undefined are skipped. Pair- and cue-level measures cannot be mixed.
// Throws ArgumentError when a needed input (norms, reference) is missing.
std::vector<std::vector<double>> measure_table(const AssociationDataset& dataset,
                                               std::span<const Measure> measures,
                                               const AnalysisInputs& inputs,
                                               const AnalysisSettings& settings);

std::vector<double> measure_values(const AssociationDataset& dataset, Measure measure,
                                   const AnalysisInputs& inputs, const AnalysisSettings& settings);

struct ReportTable {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    std::string to_tsv() const;
};

struct ReportBundle {
    ReportKind kind = ReportKind::table1;
    ReportTable payload;
    std::string text;  // formatted rendering for table-style kinds, else empty
    nlohmann::ordered_json metadata;
};

// Throws ArgumentError when the kind needs inputs that are missing (norms for
// the lexical figures, a reference for typicality kinds).
ReportBundle build_report(ReportKind kind, const AnalysisInputs& inputs, const AnalysisSettings& settings);

// Writes out_path (TSV payload), out_path + ".meta.json" and, when the bundle has
// a text rendering, out_path + ".txt". All writes are atomic. Returns the paths.
std::vector<std::filesystem::path> emit_report(const ReportBundle& bundle,
                                               const std::filesystem::path& out_path);

// Order-independent content hash of a dataset.
std::string dataset_fingerprint(const AssociationDataset& dataset);

// Settings and dataset identities as JSON; its hash is the report config hash.
nlohmann::ordered_json analysis_config_json(const AnalysisInputs& inputs, const AnalysisSettings& settings);

// Fixed-width typicality table: "38.4", "9,175", "1.67 (0.60)".
std::string render_typicality_table(std::span<const DatasetSummary> summaries);

// "Model  F  p  eta2" appendix layout.
struct AnovaRow {
    std::string group;
    std::string measure;
    stats::AnovaResult result;
};
std::string render_anova_table(std::span<const AnovaRow> rows);

// 12345 -> "12,345"
std::string with_thousands(std::size_t n);

} // namespace wordassoc
