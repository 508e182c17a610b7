#include "wordassoc/report.hpp"

#include "wordassoc/error.hpp"
#include "wordassoc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>

namespace wordassoc {

namespace {

constexpr std::string_view kQuartileMethod = "linear interpolation at (n-1)p of sorted values";

struct KindName {
    ReportKind kind;
    std::string_view name;
};
constexpr KindName kKindNames[] = {
    {ReportKind::fig1_freq_dist, "fig1_freq_dist"}, {ReportKind::fig2_freq_bins, "fig2_freq_bins"},
    {ReportKind::fig3_concr_dist, "fig3_concr_dist"}, {ReportKind::fig4_concr_bins, "fig4_concr_bins"},
    {ReportKind::fig5_var_typ, "fig5_var_typ"},       {ReportKind::fig6_scatter, "fig6_scatter"},
    {ReportKind::table1, "table1"},                   {ReportKind::appendix_anova, "appendix_anova"},
    {ReportKind::appendix_dists, "appendix_dists"},
};

struct MeasureName {
    Measure measure;
    std::string_view name;
};
constexpr MeasureName kMeasureNames[] = {
    {Measure::log_freq_ratio, "log_freq_ratio"},
    {Measure::concreteness_ratio, "concreteness_ratio"},
    {Measure::cue_log_freq, "cue_log_freq"},
    {Measure::response_log_freq, "response_log_freq"},
    {Measure::cue_concreteness, "cue_concreteness"},
    {Measure::response_concreteness, "response_concreteness"},
    {Measure::variability, "variability"},
    {Measure::tok_ss1, "tok_ss1"},
    {Measure::typ_ss1, "typ_ss1"},
};

std::string temp_cell(const AssociationDataset& d) {
    return d.temperature() ? io::format_double(*d.temperature()) : "";
}

// Datasets restricted to the requested cues, built once per report.
class Restricted {
public:
    Restricted(const AnalysisInputs& inputs, const AnalysisSettings& settings) {
        auto add = [&](const AssociationDataset* d) {
            if (!d || owned_.count(d)) return;
            owned_.emplace(d, settings.cues.empty() ? *d : d->restrict_to(settings.cues));
        };
        add(inputs.reference);
        for (const auto* d : inputs.datasets) add(d);
    }
    const AssociationDataset& operator[](const AssociationDataset* d) const { return owned_.at(d); }

private:
    std::map<const AssociationDataset*, AssociationDataset> owned_;
};

std::vector<std::string> summary_cells(const std::optional<stats::DescriptiveSummary>& s) {
    if (!s) return {"0", "NA", "NA", "NA", "NA", "NA", "NA", "NA"};
    return {std::to_string(s->n),          io::format_double(s->min),    io::format_double(s->q1),
            io::format_double(s->median),  io::format_double(s->q3),     io::format_double(s->max),
            io::format_double(s->mean),    io::format_double(s->sd)};
}

const std::vector<std::string> kBoxColumns{"n", "min", "q1", "median", "q3", "max", "mean", "sd"};

std::optional<stats::DescriptiveSummary> maybe_describe(const std::vector<double>& v, stats::SdMode mode) {
    if (v.empty()) return std::nullopt;
    return stats::describe(v, mode);
}

void require_norms(const AnalysisInputs& inputs, ReportKind kind) {
    if (!inputs.norms)
        throw ArgumentError(std::string(to_string(kind)) + " needs lexical norms (--freq-norms/--concr-norms)");
}

void require_reference(const AnalysisInputs& inputs, ReportKind kind) {
    if (!inputs.reference) throw ArgumentError(std::string(to_string(kind)) + " needs a --reference dataset");
}

std::vector<const AssociationDataset*> series_of(const AnalysisInputs& inputs) {
    std::vector<const AssociationDataset*> out;
    if (inputs.reference) out.push_back(inputs.reference);
    for (const auto* d : inputs.datasets)
        if (d != inputs.reference) out.push_back(d);
    return out;
}

// model label -> its datasets sorted by temperature, in first-seen label order
std::vector<std::pair<std::string, std::vector<const AssociationDataset*>>> models_of(
    const AnalysisInputs& inputs) {
    std::vector<std::pair<std::string, std::vector<const AssociationDataset*>>> out;
    for (const auto* d : inputs.datasets) {
        if (d->is_human()) continue;
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == d->label(); });
        if (it == out.end()) {
            out.emplace_back(d->label(), std::vector<const AssociationDataset*>{});
            it = std::prev(out.end());
        }
        it->second.push_back(d);
    }
    for (auto& [label, ds] : out)
        std::stable_sort(ds.begin(), ds.end(),
                         [](const auto* a, const auto* b) { return *a->temperature() < *b->temperature(); });
    return out;
}

std::string fixed2(double v) { return io::format_fixed(v, 2); }

} // namespace

std::string_view to_string(ReportKind kind) {
    for (const auto& k : kKindNames)
        if (k.kind == kind) return k.name;
    return "?";
}

ReportKind report_kind_from_string(std::string_view s) {
    for (const auto& k : kKindNames)
        if (k.name == s) return k.kind;
    throw ArgumentError("unknown report kind '" + std::string(s) + "'");
}

std::vector<std::string_view> report_kind_names() {
    std::vector<std::string_view> out;
    for (const auto& k : kKindNames) out.push_back(k.name);
    return out;
}

std::string_view to_string(Measure m) {
    for (const auto& k : kMeasureNames)
        if (k.measure == m) return k.name;
    return "?";
}

Measure measure_from_string(std::string_view s) {
    for (const auto& k : kMeasureNames)
        if (k.name == s) return k.measure;
    throw ArgumentError("unknown measure '" + std::string(s) + "'");
}

bool is_pair_level(Measure m) {
    return m != Measure::variability && m != Measure::tok_ss1 && m != Measure::typ_ss1;
}

std::vector<std::vector<double>> measure_table(const AssociationDataset& dataset,
                                               std::span<const Measure> measures,
                                               const AnalysisInputs& inputs,
                                               const AnalysisSettings& settings) {
    if (measures.empty()) throw ArgumentError("no measures requested");
    const bool pair_level = is_pair_level(measures.front());
    for (auto m : measures)
        if (is_pair_level(m) != pair_level)
            throw ArgumentError("cannot align pair-level and cue-level measures");

    std::vector<std::vector<double>> rows;
    if (pair_level) {
        if (!inputs.norms) throw ArgumentError("pair measures need lexical norms");
        const auto& norms = *inputs.norms;
        const auto source = settings.cues.empty() ? dataset : dataset.restrict_to(settings.cues);
        for (const auto& pm : unique_pair_measures(source, settings.rank, norms)) {
            std::vector<double> row;
            for (auto m : measures) {
                std::optional<double> v;
                switch (m) {
                case Measure::log_freq_ratio: v = pm.log2_freq_ratio; break;
                case Measure::concreteness_ratio: v = pm.concreteness_ratio; break;
                case Measure::cue_log_freq: v = std::log2(static_cast<double>(norms.lookup_frequency(pm.cue))); break;
                case Measure::response_log_freq:
                    v = std::log2(static_cast<double>(norms.lookup_frequency(pm.response)));
                    break;
                case Measure::cue_concreteness:
                    if (pm.concreteness_ratio) v = norms.concreteness(pm.cue);
                    break;
                case Measure::response_concreteness:
                    if (pm.concreteness_ratio) v = norms.concreteness(pm.response);
                    break;
                default: break;
                }
                if (!v) break;
                row.push_back(*v);
            }
            if (row.size() == measures.size()) rows.push_back(std::move(row));
        }
        return rows;
    }

    const bool needs_reference =
        std::any_of(measures.begin(), measures.end(), [](Measure m) { return m != Measure::variability; });
    if (needs_reference && !inputs.reference) throw ArgumentError("typicality measures need a reference dataset");
    const auto cues = settings.cues.empty() ? dataset.cues() : settings.cues;
    std::vector<CueTypicalitySummary> per_cue;
    if (needs_reference) {
        per_cue = dataset_summary(dataset, *inputs.reference, cues, {settings.rank, settings.sd_mode}).per_cue;
    } else {
        auto sorted = cues;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (const auto& cue : sorted) {
            CueTypicalitySummary s;
            s.cue = cue;
            s.variability = dataset.unique_responses(cue, settings.rank).size();
            s.missing_in_dataset = s.variability == 0;
            per_cue.push_back(std::move(s));
        }
    }
    for (const auto& s : per_cue) {
        if (s.missing_in_dataset) continue;
        std::vector<double> row;
        for (auto m : measures) {
            std::optional<double> v;
            if (m == Measure::variability) v = static_cast<double>(s.variability);
            else if (m == Measure::tok_ss1) v = s.tok_ss1;
            else v = s.typ_ss1;
            if (!v) break;
            row.push_back(*v);
        }
        if (row.size() == measures.size()) rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<double> measure_values(const AssociationDataset& dataset, Measure measure,
                                   const AnalysisInputs& inputs, const AnalysisSettings& settings) {
    const Measure ms[] = {measure};
    std::vector<double> out;
    for (auto& row : measure_table(dataset, ms, inputs, settings)) out.push_back(row.front());
    return out;
}

std::string ReportTable::to_tsv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "\t" : "") + columns[i];
    out += "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "\t" : "") + row[i];
        out += "\n";
    }
    return out;
}

std::string dataset_fingerprint(const AssociationDataset& dataset) {
    std::uint64_t h = io::fnv1a64(dataset.label());
    h = io::fnv1a64(dataset.temperature() ? io::format_double(*dataset.temperature()) : "-", h);
    dataset.for_each([&](const AssociationInstance& inst) {
        h = io::fnv1a64(inst.cue, h);
        h = io::fnv1a64("\t", h);
        h = io::fnv1a64(inst.response, h);
        h = io::fnv1a64("\t" + std::to_string(inst.participant) + "\t" + std::to_string(rank_number(inst.rank)) + "\n", h);
    });
    return io::hex64(h);
}

nlohmann::ordered_json analysis_config_json(const AnalysisInputs& inputs, const AnalysisSettings& settings) {
    nlohmann::ordered_json j;
    j["rank"] = rank_number(settings.rank);
    j["sd_mode"] = std::string(stats::to_string(settings.sd_mode));
    j["freq_bins"] = settings.freq_bins;
    j["concr_bins"] = settings.concr_bins;
    j["bin_average"] = std::string(to_string(settings.bin_average));
    j["cue_restriction"] = settings.cues.size();
    j["cue_restriction_hash"] = [&] {
        auto cues = settings.cues;
        std::sort(cues.begin(), cues.end());
        std::uint64_t h = io::fnv1a64("");
        for (const auto& c : cues) h = io::fnv1a64(c + "\n", h);
        return io::hex64(h);
    }();
    auto ds = nlohmann::ordered_json::array();
    for (const auto* d : series_of(inputs)) {
        nlohmann::ordered_json e;
        e["respondent"] = d->label();
        e["temperature"] = d->temperature() ? nlohmann::ordered_json(*d->temperature()) : nlohmann::ordered_json();
        e["role"] = d == inputs.reference ? "reference" : "dataset";
        e["instances"] = d->size();
        e["cues"] = d->cues().size();
        e["fingerprint"] = dataset_fingerprint(*d);
        ds.push_back(std::move(e));
    }
    j["datasets"] = std::move(ds);
    if (inputs.norms) {
        j["norms"] = {{"frequency_entries", inputs.norms->frequency_table().size()},
                      {"concreteness_entries", inputs.norms->concreteness_table().size()}};
    }
    return j;
}

std::string with_thousands(std::size_t n) {
    std::string digits = std::to_string(n);
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i && (digits.size() - i) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

std::string render_typicality_table(std::span<const DatasetSummary> summaries) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %6s %8s %9s %14s %14s\n", "Resp.", "Temp.", "avg#R1", "tot#R1",
                  "tok-SS1", "typ-SS1");
    out += buf;
    for (const auto& s : summaries) {
        const std::string temp = s.temperature ? io::format_fixed(*s.temperature, 1) : "-";
        const std::string tok = fixed2(s.tok_ss1_mean) + " (" + fixed2(s.tok_ss1_sd) + ")";
        const std::string typ = fixed2(s.typ_ss1_mean) + " (" + fixed2(s.typ_ss1_sd) + ")";
        std::snprintf(buf, sizeof buf, "%-16s %6s %8s %9s %14s %14s\n", s.label.c_str(), temp.c_str(),
                      io::format_fixed(s.avg_variability, 1).c_str(), with_thousands(s.total_types).c_str(),
                      tok.c_str(), typ.c_str());
        out += buf;
    }
    return out;
}

std::string render_anova_table(std::span<const AnovaRow> rows) {
    std::string out;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-20s %10s %6s %6s\n", "Model", "Measure", "F", "p", "eta2");
    out += buf;
    for (const auto& r : rows) {
        std::string eta = io::format_fixed(r.result.eta_squared, 3);
        if (eta.rfind("0.", 0) == 0) eta.erase(0, 1);
        std::snprintf(buf, sizeof buf, "%-16s %-20s %10s %6s %6s\n", r.group.c_str(), r.measure.c_str(),
                      io::format_fixed(r.result.f, 2).c_str(), stats::format_p_table(r.result.p).c_str(),
                      eta.c_str());
        out += buf;
    }
    return out;
}

ReportBundle build_report(ReportKind kind, const AnalysisInputs& inputs, const AnalysisSettings& settings) {
    if (settings.freq_bins < 1 || settings.concr_bins < 1) throw ArgumentError("bin counts must be >= 1");
    ReportBundle bundle;
    bundle.kind = kind;
    bundle.payload.name = std::string(to_string(kind));
    auto& table = bundle.payload;
    const Restricted restricted(inputs, settings);
    const auto series = series_of(inputs);
    const SummaryOptions summary_options{settings.rank, settings.sd_mode};
    // measures on restricted datasets: cue restriction already applied
    AnalysisSettings unrestricted = settings;
    unrestricted.cues.clear();
    nlohmann::ordered_json notes = nlohmann::ordered_json::array();

    auto lexical_series = [&](Measure measure) {
        require_norms(inputs, kind);
        table.columns = {"respondent", "temperature", "measure"};
        table.columns.insert(table.columns.end(), kBoxColumns.begin(), kBoxColumns.end());
        for (const auto* d : series) {
            const auto values = measure_values(restricted[d], measure, inputs, unrestricted);
            std::vector<std::string> row{d->label(), temp_cell(*d), std::string(to_string(measure))};
            auto cells = summary_cells(maybe_describe(values, settings.sd_mode));
            row.insert(row.end(), cells.begin(), cells.end());
            table.rows.push_back(std::move(row));
        }
    };

    auto bin_series = [&](BinAxis axis) {
        require_norms(inputs, kind);
        table.columns = {"respondent", "temperature", "axis",      "bin_lower",
                         "bin_upper",  "cue_count",   "pair_count", "mean_measure"};
        BinOptions options;
        options.average = settings.bin_average;
        std::vector<std::vector<PairMeasure>> measures;
        for (const auto* d : series) measures.push_back(unique_pair_measures(restricted[d], settings.rank, *inputs.norms));
        if (axis == BinAxis::cue_concreteness) {
            options.n_bins = settings.concr_bins;
            options.range = std::make_pair(kMinConcreteness, kMaxConcreteness);
        } else {
            // shared range so bins line up across respondents
            options.n_bins = settings.freq_bins;
            double lo = std::numeric_limits<double>::infinity(), hi = -lo;
            for (const auto& ms : measures)
                for (const auto& m : ms) {
                    const double v = std::log2(static_cast<double>(inputs.norms->lookup_frequency(m.cue)));
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            if (lo <= hi) {
                options.range = std::make_pair(lo, hi);
                notes.push_back("log2 cue frequency range shared by all series: [" + io::format_double(lo) + ", " +
                                io::format_double(hi) + "]");
            }
        }
        for (std::size_t i = 0; i < series.size(); ++i) {
            const auto* d = series[i];
            BinProfile profile;
            try {
                profile = bin_profile(measures[i], axis, options, *inputs.norms);
            } catch (const ArgumentError& e) {
                notes.push_back(d->display_name() + ": " + e.what());
                continue;
            }
            for (const auto& b : profile.bins)
                table.rows.push_back({d->label(), temp_cell(*d), std::string(to_string(axis)),
                                      io::format_double(b.lower), io::format_double(b.upper),
                                      std::to_string(b.cue_count), std::to_string(b.pair_count),
                                      io::format_double(b.mean_measure)});
        }
    };

    auto summaries = [&] {
        require_reference(inputs, kind);
        const auto& reference = restricted[inputs.reference];
        std::vector<DatasetSummary> out;
        for (const auto* d : series) out.push_back(dataset_summary(restricted[d], reference, {}, summary_options));
        return out;
    };

    switch (kind) {
    case ReportKind::fig1_freq_dist: lexical_series(Measure::log_freq_ratio); break;
    case ReportKind::fig3_concr_dist: lexical_series(Measure::concreteness_ratio); break;
    case ReportKind::fig2_freq_bins: bin_series(BinAxis::cue_log_frequency); break;
    case ReportKind::fig4_concr_bins: bin_series(BinAxis::cue_concreteness); break;
    case ReportKind::fig5_var_typ: {
        const auto sums = summaries();
        table.columns = {"respondent", "temperature", "metric"};
        table.columns.insert(table.columns.end(), kBoxColumns.begin(), kBoxColumns.end());
        for (const auto& s : sums) {
            std::vector<double> var, tok;
            for (const auto& c : s.per_cue) {
                if (!c.missing_in_dataset) var.push_back(static_cast<double>(c.variability));
                if (c.tok_ss1) tok.push_back(*c.tok_ss1);
            }
            const std::string temp = s.temperature ? io::format_double(*s.temperature) : "";
            for (const auto& [metric, values] : {std::pair{"variability", &var}, std::pair{"tok_ss1", &tok}}) {
                std::vector<std::string> row{s.label, temp, metric};
                auto cells = summary_cells(maybe_describe(*values, settings.sd_mode));
                row.insert(row.end(), cells.begin(), cells.end());
                table.rows.push_back(std::move(row));
            }
        }
        break;
    }
    case ReportKind::fig6_scatter: {
        const auto sums = summaries();
        table.columns = {"respondent", "temperature", "avg_r1", "tok_ss1_mean"};
        for (const auto& s : sums)
            table.rows.push_back({s.label, s.temperature ? io::format_double(*s.temperature) : "",
                                  io::format_double(s.avg_variability), io::format_double(s.tok_ss1_mean)});
        break;
    }
    case ReportKind::table1: {
        const auto sums = summaries();
        table.columns = {"respondent",   "temperature",  "avg_r1",     "tot_r1",
                         "tok_ss1_mean", "tok_ss1_sd",   "typ_ss1_mean", "typ_ss1_sd",
                         "cues",         "defined_cues", "degenerate_cues", "missing_reference_cues",
                         "missing_dataset_cues"};
        for (const auto& s : sums)
            table.rows.push_back({s.label, s.temperature ? io::format_double(*s.temperature) : "",
                                  io::format_double(s.avg_variability), std::to_string(s.total_types),
                                  io::format_double(s.tok_ss1_mean), io::format_double(s.tok_ss1_sd),
                                  io::format_double(s.typ_ss1_mean), io::format_double(s.typ_ss1_sd),
                                  std::to_string(s.cue_count), std::to_string(s.defined_cues),
                                  std::to_string(s.degenerate_cues), std::to_string(s.missing_reference_cues),
                                  std::to_string(s.missing_dataset_cues)});
        bundle.text = render_typicality_table(sums);
        break;
    }
    case ReportKind::appendix_anova: {
        require_norms(inputs, kind);
        table.columns = {"model", "measure", "f", "df_between", "df_within", "p", "eta_squared", "p_table"};
        std::vector<AnovaRow> anova_rows;
        for (const auto& [model, ds] : models_of(inputs)) {
            if (ds.size() < 2) {
                notes.push_back(model + ": fewer than two temperatures, no ANOVA");
                continue;
            }
            for (Measure m : {Measure::log_freq_ratio, Measure::concreteness_ratio}) {
                std::vector<std::vector<double>> groups;
                for (const auto* d : ds) groups.push_back(measure_values(restricted[d], m, inputs, unrestricted));
                try {
                    anova_rows.push_back({model, std::string(to_string(m)), stats::one_way_anova(groups)});
                } catch (const Error& e) {
                    notes.push_back(model + " " + std::string(to_string(m)) + ": " + e.what());
                }
            }
        }
        for (const auto& r : anova_rows)
            table.rows.push_back({r.group, r.measure, io::format_double(r.result.f), std::to_string(r.result.df_between),
                                  std::to_string(r.result.df_within), io::format_double(r.result.p),
                                  io::format_double(r.result.eta_squared), stats::format_p_table(r.result.p)});
        bundle.text = render_anova_table(anova_rows);
        break;
    }
    case ReportKind::appendix_dists: {
        require_norms(inputs, kind);
        table.columns = {"model", "respondent", "temperature", "measure"};
        table.columns.insert(table.columns.end(), kBoxColumns.begin(), kBoxColumns.end());
        for (const auto& [model, ds] : models_of(inputs)) {
            std::vector<const AssociationDataset*> group;
            if (inputs.reference) group.push_back(inputs.reference);
            group.insert(group.end(), ds.begin(), ds.end());
            for (Measure m : {Measure::log_freq_ratio, Measure::concreteness_ratio}) {
                for (const auto* d : group) {
                    const auto values = measure_values(restricted[d], m, inputs, unrestricted);
                    std::vector<std::string> row{model, d->label(), temp_cell(*d), std::string(to_string(m))};
                    auto cells = summary_cells(maybe_describe(values, settings.sd_mode));
                    row.insert(row.end(), cells.begin(), cells.end());
                    table.rows.push_back(std::move(row));
                }
            }
        }
        break;
    }
    }

    auto config = analysis_config_json(inputs, settings);
    auto& meta = bundle.metadata;
    meta["kind"] = std::string(to_string(kind));
    meta["config_hash"] = io::hex64(io::fnv1a64(config.dump()));
    meta["rank"] = rank_number(settings.rank);
    meta["columns"] = table.columns;
    meta["rows"] = table.rows.size();
    meta["flags"] = {
        {"sd_mode", std::string(stats::to_string(settings.sd_mode))},
        {"quartile_method", std::string(kQuartileMethod)},
        {"bin_average", std::string(to_string(settings.bin_average))},
        {"freq_bins", settings.freq_bins},
        {"freq_bin_axis", "equal-width on log2 cue frequency over the range observed across all series"},
        {"concr_bins", settings.concr_bins},
        {"concr_bin_range", {kMinConcreteness, kMaxConcreteness}},
        {"degenerate_cues", "excluded from typicality aggregates and counted"},
        {"absent_reference_response_strength", 0},
        {"absent_token_frequency", 1},
        {"frequency_measure", "total occurrences"},
        {"concreteness_pairs", "only pairs with both cue and response rated"},
        {"pair_dedup", "unique (cue, response) pairs at the selected rank"},
        {"avg_r1_over", "cues with at least one response in the dataset"},
        {"p_values", "full precision in TSV; .000 below 1e-3 in text tables"},
    };
    meta["config"] = std::move(config);
    if (!notes.empty()) meta["notes"] = std::move(notes);
    return bundle;
}

std::vector<std::filesystem::path> emit_report(const ReportBundle& bundle, const std::filesystem::path& out_path) {
    if (out_path.has_parent_path()) std::filesystem::create_directories(out_path.parent_path());
    std::vector<std::filesystem::path> written;
    io::write_file_atomic(out_path, bundle.payload.to_tsv());
    written.push_back(out_path);
    auto meta_path = out_path;
    meta_path += ".meta.json";
    io::write_file_atomic(meta_path, bundle.metadata.dump(2) + "\n");
    written.push_back(meta_path);
    if (!bundle.text.empty()) {
        auto text_path = out_path;
        text_path += ".txt";
        io::write_file_atomic(text_path, bundle.text);
        written.push_back(text_path);
    }
    return written;
}

} // namespace wordassoc
