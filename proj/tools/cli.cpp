#include "cli.hpp"

#include "wordassoc/core_model.hpp"
#include "wordassoc/error.hpp"
#include "wordassoc/generation.hpp"
#include "wordassoc/http_backend.hpp"
#include "wordassoc/lexical_metrics.hpp"
#include "wordassoc/norms.hpp"
#include "wordassoc/report.hpp"
#include "wordassoc/sampling.hpp"
#include "wordassoc/stats.hpp"
#include "wordassoc/synthetic_agent.hpp"
#include "wordassoc/text_io.hpp"
#include "wordassoc/typicality.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <deque>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace wordassoc::cli {

namespace {

namespace fs = std::filesystem;

// Bad flag combinations the parser cannot express; exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted.store(true); }

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    io::write_file_atomic(p, content);
}

struct NormsFlags {
    std::string freq;
    std::string concr;
    std::string word_col = "Word";
    std::string rating_col = "Conc.M";
    std::uint64_t min_doc_count = 3;

    void add_to(CLI::App& app) {
        app.add_option("--freq-norms", freq, "token frequency list: token count [doc_count]");
        app.add_option("--concr-norms", concr, "concreteness ratings table");
        app.add_option("--word-col", word_col, "word column of the concreteness table")->capture_default_str();
        app.add_option("--rating-col", rating_col, "rating column of the concreteness table")
            ->capture_default_str();
        app.add_option("--min-doc-count", min_doc_count, "drop frequency entries seen in fewer documents")
            ->capture_default_str();
    }

    std::optional<LexicalNorms> load(std::ostream& err) const {
        if (freq.empty() && concr.empty()) return std::nullopt;
        FrequencyTable frequency;
        ConcretenessTable concreteness;
        if (!freq.empty()) {
            auto r = parse_frequency_norms(freq, min_doc_count);
            for (const auto& w : r.warnings) err << "warning: " << w << "\n";
            if (!r.rejects.empty()) err << "warning: " << r.rejects.size() << " unusable frequency lines\n";
            frequency = std::move(r.frequency);
        }
        if (!concr.empty()) {
            auto r = parse_concreteness_norms(concr, {word_col, rating_col, 0});
            if (!r.rejects.empty()) err << "warning: " << r.rejects.size() << " unusable concreteness rows\n";
            concreteness = std::move(r.concreteness);
        }
        return LexicalNorms(std::move(frequency), std::move(concreteness));
    }
};

struct AnalysisFlags {
    int rank = 1;
    std::string sd_mode = "population";
    std::string reference;
    std::vector<std::string> datasets;
    std::string cues;

    void add_to(CLI::App& app, bool with_reference = true) {
        app.add_option("--rank", rank, "association rank to analyse")->check(CLI::Range(1, 3))->capture_default_str();
        app.add_option("--sd-mode", sd_mode, "standard deviation divisor")
            ->check(CLI::IsMember({"population", "sample"}))
            ->capture_default_str();
        if (with_reference) app.add_option("--reference", reference, "human reference dataset");
        app.add_option("--datasets", datasets, "dataset files (comma-separated or repeated)")->delimiter(',');
        app.add_option("--cues", cues, "cue list or sample manifest restricting the analysis");
    }

    Rank rank_value() const { return rank_from_int(rank); }
    stats::SdMode sd_value() const { return stats::sd_mode_from_string(sd_mode); }
    std::vector<std::string> cue_list() const { return cues.empty() ? std::vector<std::string>{} : read_cue_list(cues); }
};

// Owns loaded datasets and norms; pointers stay valid for its lifetime.
struct Loaded {
    std::deque<AssociationDataset> store;
    const AssociationDataset* reference = nullptr;
    std::vector<const AssociationDataset*> datasets;
    std::optional<LexicalNorms> norms;

    AnalysisInputs inputs() const { return {reference, datasets, norms ? &*norms : nullptr}; }
};

Loaded load_inputs(const AnalysisFlags& flags, const NormsFlags* norms, std::ostream& err) {
    Loaded l;
    if (!flags.reference.empty()) {
        l.store.push_back(read_dataset(flags.reference));
        l.reference = &l.store.back();
    }
    for (const auto& path : flags.datasets) {
        l.store.push_back(read_dataset(path));
        l.datasets.push_back(&l.store.back());
    }
    if (norms) l.norms = norms->load(err);
    return l;
}

std::string temp_cell(const AssociationDataset& d) {
    return d.temperature() ? io::format_double(*d.temperature()) : "";
}

// ---- ingest ----------------------------------------------------------------

void add_ingest(CLI::App& app, std::ostream& out, std::ostream& err) {
    auto* ingest = app.add_subcommand("ingest", "convert source files into canonical form");
    ingest->require_subcommand(1);

    struct HumanOpts {
        std::string input, output, rejects, corrections, layout = "wide", cue_col = "cue";
        std::vector<std::string> rank_cols{"R1", "R2", "R3"};
        std::string response_col = "response", rank_col = "rank", participant_col, delimiter;
        std::string label = std::string(kHumanLabel);
    };
    auto h = std::make_shared<HumanOpts>();
    auto* human = ingest->add_subcommand("human", "human association table -> canonical dataset TSV");
    human->add_option("--input", h->input, "source table")->required();
    human->add_option("--out", h->output, "canonical dataset TSV")->required();
    human->add_option("--rejects", h->rejects, "reject log TSV");
    human->add_option("--corrections", h->corrections, "spelling correction TSV (from, to)");
    human->add_option("--layout", h->layout, "wide (one column per rank) or long")
        ->check(CLI::IsMember({"wide", "long"}))
        ->capture_default_str();
    human->add_option("--cue-col", h->cue_col)->capture_default_str();
    human->add_option("--rank-cols", h->rank_cols, "wide layout rank columns")->delimiter(',')->capture_default_str();
    human->add_option("--response-col", h->response_col)->capture_default_str();
    human->add_option("--rank-col", h->rank_col)->capture_default_str();
    human->add_option("--participant-col", h->participant_col);
    human->add_option("--delimiter", h->delimiter, "tab, comma or a single character (default: sniff)");
    human->add_option("--label", h->label)->capture_default_str();
    human->callback([h, &out, &err] {
        HumanColumnMapping mapping;
        mapping.layout = h->layout == "long" ? HumanColumnMapping::Layout::long_format
                                             : HumanColumnMapping::Layout::wide;
        mapping.cue = h->cue_col;
        mapping.rank_columns = h->rank_cols;
        mapping.response = h->response_col;
        mapping.rank = h->rank_col;
        mapping.participant = h->participant_col;
        if (h->delimiter == "tab" || h->delimiter == "\\t") mapping.delimiter = '\t';
        else if (h->delimiter == "comma") mapping.delimiter = ',';
        else if (h->delimiter.size() == 1) mapping.delimiter = h->delimiter[0];
        else if (!h->delimiter.empty()) throw UsageError("--delimiter must be tab, comma or one character");
        const auto corrections = h->corrections.empty() ? CorrectionMap{} : CorrectionMap::read(h->corrections);
        auto result = parse_human_norms(h->input, mapping, corrections, h->label);
        write_dataset(result.dataset, h->output);
        if (!h->rejects.empty()) write_output(h->rejects, result.rejects.to_tsv(), out);
        err << "ingested " << result.dataset.size() << " instances over " << result.dataset.cues().size()
            << " cues (" << result.source_cue_count << " in source, " << result.dropped_cues.size()
            << " dropped, " << result.rejects.size() << " rejected rows)\n";
    });

    struct FreqOpts {
        std::string input, output, rejects;
        std::uint64_t min_doc_count = 3;
    };
    auto f = std::make_shared<FreqOpts>();
    auto* freq = ingest->add_subcommand("frequency", "frequency list -> filtered token<TAB>count table");
    freq->add_option("--input", f->input)->required();
    freq->add_option("--out", f->output)->required();
    freq->add_option("--rejects", f->rejects, "reject log TSV");
    freq->add_option("--min-doc-count", f->min_doc_count)->capture_default_str();
    freq->callback([f, &out, &err] {
        auto r = parse_frequency_norms(f->input, f->min_doc_count);
        for (const auto& w : r.warnings) err << "warning: " << w << "\n";
        std::vector<std::pair<std::string, std::uint64_t>> rows(r.frequency.begin(), r.frequency.end());
        std::sort(rows.begin(), rows.end());
        std::string text;
        for (const auto& [token, count] : rows) text += token + "\t" + std::to_string(count) + "\n";
        write_output(f->output, text, out);
        if (!f->rejects.empty()) write_output(f->rejects, r.rejects.to_tsv(), out);
        err << "kept " << rows.size() << " tokens (" << r.filtered_digits << " with digits, "
            << r.filtered_doc_count << " below doc count, " << r.rejects.size() << " rejected)\n";
    });

    struct ConcrOpts {
        std::string input, output, rejects, word_col = "Word", rating_col = "Conc.M";
    };
    auto c = std::make_shared<ConcrOpts>();
    auto* concr = ingest->add_subcommand("concreteness", "concreteness ratings -> Word<TAB>Conc.M table");
    concr->add_option("--input", c->input)->required();
    concr->add_option("--out", c->output)->required();
    concr->add_option("--rejects", c->rejects, "reject log TSV");
    concr->add_option("--word-col", c->word_col)->capture_default_str();
    concr->add_option("--rating-col", c->rating_col)->capture_default_str();
    concr->callback([c, &out, &err] {
        auto r = parse_concreteness_norms(c->input, {c->word_col, c->rating_col, 0});
        std::vector<std::pair<std::string, double>> rows(r.concreteness.begin(), r.concreteness.end());
        std::sort(rows.begin(), rows.end());
        std::string text = "Word\tConc.M\n";
        for (const auto& [word, rating] : rows) text += word + "\t" + io::format_double(rating) + "\n";
        write_output(c->output, text, out);
        if (!c->rejects.empty()) write_output(c->rejects, r.rejects.to_tsv(), out);
        err << "kept " << rows.size() << " ratings (" << r.rejects.size() << " rejected)\n";
    });
}

// ---- sample ----------------------------------------------------------------

void add_sample(CLI::App& app, std::ostream& out, std::ostream& err) {
    struct Opts {
        std::string reference, inventory, output, representativeness;
        std::vector<std::string> filter;
        std::size_t n = 0;
        std::uint64_t seed = 0;
        int rank = 1;
        std::string sd_mode = "population";
        NormsFlags norms;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("sample", "draw a seeded cue sample and write its manifest");
    sub->add_option("--reference", o->reference, "dataset whose cues form the inventory");
    sub->add_option("--inventory", o->inventory, "cue list used as the inventory instead");
    sub->add_option("--n", o->n, "number of cues to draw")->required();
    sub->add_option("--seed", o->seed)->required();
    sub->add_option("--filter-datasets", o->filter, "keep only cues every listed dataset answers")->delimiter(',');
    sub->add_option("--rank", o->rank)->check(CLI::Range(1, 3))->capture_default_str();
    sub->add_option("--sd-mode", o->sd_mode)->check(CLI::IsMember({"population", "sample"}))->capture_default_str();
    sub->add_option("--out", o->output, "manifest TSV (default stdout)");
    sub->add_option("--representativeness", o->representativeness, "subset-vs-full comparison TSV");
    o->norms.add_to(*sub);
    sub->callback([o, &out, &err] {
        if (o->reference.empty() == o->inventory.empty())
            throw UsageError("sample needs exactly one of --reference or --inventory");
        std::optional<AssociationDataset> reference;
        std::vector<std::string> inventory;
        if (!o->reference.empty()) {
            reference = read_dataset(o->reference);
            inventory = reference->cues();
        } else {
            inventory = read_cue_list(o->inventory);
        }
        auto manifest = sample_cues(std::move(inventory), o->n, o->seed);
        std::deque<AssociationDataset> filters;
        std::vector<std::reference_wrapper<const AssociationDataset>> refs;
        for (const auto& path : o->filter) refs.emplace_back(filters.emplace_back(read_dataset(path)));
        filter_manifest(manifest, refs, rank_from_int(o->rank));
        write_output(o->output, manifest_tsv(manifest), out);
        if (!o->representativeness.empty()) {
            if (!reference) throw UsageError("--representativeness needs --reference");
            const auto norms = o->norms.load(err);
            const auto rows = representativeness_report(manifest.post_filter_cues, *reference,
                                                        norms ? &*norms : nullptr,
                                                        {rank_from_int(o->rank), stats::sd_mode_from_string(o->sd_mode)});
            write_output(o->representativeness, representativeness_tsv(rows), out);
        }
        err << "sampled " << manifest.sampled_cues.size() << " of " << manifest.source_cue_count << " cues, "
            << manifest.post_filter_cues.size() << " kept after filtering\n";
    });
}

// ---- generate --------------------------------------------------------------

void add_generate(CLI::App& app, std::ostream& out, std::ostream& err) {
    struct Opts {
        std::string cues, endpoint, synthetic_spec, model, prompt_template, prompt_file, system_message;
        std::string out_dir, checkpoint_dir, corrections;
        double temperature = 1.0;
        std::vector<double> temperatures;
        std::size_t repetitions = 100, responses = 3, concurrency = 4, stop_after = 0;
        double rps = 0.0;
        int max_retries = 3, max_tokens = 64, timeout_s = 60, backoff_ms = 500;
        std::optional<std::uint64_t> seed;
        bool resume = false, no_checkpoint = false;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("generate", "collect association datasets from a model or synthetic agent");
    sub->add_option("--cues", o->cues, "cue list or sample manifest")->required();
    sub->add_option("--endpoint", o->endpoint, "OpenAI-compatible chat completions URL");
    sub->add_option("--synthetic-spec", o->synthetic_spec, "synthetic agent JSON spec");
    sub->add_option("--model", o->model, "model name (dataset label)");
    auto* single = sub->add_option("--temperature", o->temperature)->capture_default_str();
    sub->add_option("--temperatures", o->temperatures, "temperature sweep, comma-separated")
        ->delimiter(',')
        ->excludes(single);
    sub->add_option("--repetitions", o->repetitions)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--responses-per-prompt", o->responses)->check(CLI::Range(1, 3))->capture_default_str();
    sub->add_option("--concurrency", o->concurrency)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--rps", o->rps, "request rate limit, 0 = none")->check(CLI::NonNegativeNumber)->capture_default_str();
    sub->add_option("--max-retries", o->max_retries)->check(CLI::NonNegativeNumber)->capture_default_str();
    sub->add_option("--retry-backoff-ms", o->backoff_ms)->check(CLI::NonNegativeNumber)->capture_default_str();
    sub->add_option("--max-tokens", o->max_tokens)->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--timeout", o->timeout_s, "HTTP timeout in seconds")->check(CLI::PositiveNumber)->capture_default_str();
    auto* tmpl = sub->add_option("--prompt-template", o->prompt_template, "prompt with one {cue} placeholder");
    sub->add_option("--prompt-file", o->prompt_file, "file holding the prompt template")->excludes(tmpl);
    sub->add_option("--system", o->system_message, "system message");
    sub->add_option("--seed", o->seed, "synthetic agent seed override");
    sub->add_option("--out-dir", o->out_dir, "directory for <model>_t<T>.tsv and run reports")->required();
    sub->add_option("--checkpoint-dir", o->checkpoint_dir, "checkpoint directory (default: --out-dir)");
    sub->add_flag("--no-checkpoint", o->no_checkpoint, "disable checkpointing");
    sub->add_flag("--resume", o->resume, "continue from existing checkpoints");
    sub->add_option("--corrections", o->corrections, "spelling correction TSV applied to responses");
    sub->add_option("--stop-after", o->stop_after, "interrupt after N repetitions (testing)")->group("");
    sub->callback([o, &out, &err] {
        if (o->endpoint.empty() == o->synthetic_spec.empty())
            throw UsageError("generate needs exactly one of --endpoint or --synthetic-spec");
        std::unique_ptr<CompletionBackend> backend;
        if (!o->synthetic_spec.empty()) {
            backend = std::make_unique<SyntheticAgent>(SyntheticAgentSpec::read(o->synthetic_spec), o->seed);
            if (o->model.empty()) o->model = "synthetic";
        } else {
            if (o->model.empty()) throw UsageError("--endpoint needs --model");
            HttpBackendOptions http;
            http.endpoint_url = o->endpoint;
            http.model = o->model;
            http.api_key = api_key_from_env();
            http.system_message = o->system_message;
            http.max_tokens = o->max_tokens;
            http.timeout = std::chrono::seconds(o->timeout_s);
            backend = std::make_unique<HttpChatBackend>(std::move(http));
        }

        GenerationConfig config;
        config.endpoint_url = o->endpoint;
        config.model_name = o->model;
        config.repetitions = o->repetitions;
        config.responses_per_prompt = o->responses;
        if (!o->prompt_file.empty()) {
            config.prompt_template = io::read_file(o->prompt_file);
            while (!config.prompt_template.empty() &&
                   (config.prompt_template.back() == '\n' || config.prompt_template.back() == '\r'))
                config.prompt_template.pop_back();
        } else if (!o->prompt_template.empty()) {
            config.prompt_template = o->prompt_template;
        }
        config.system_message = o->system_message;
        config.max_tokens = o->max_tokens;
        config.max_retries = o->max_retries;
        config.concurrency_limit = o->concurrency;
        config.requests_per_second = o->rps;
        config.retry_backoff = std::chrono::milliseconds(o->backoff_ms);
        config.seed = o->seed;

        std::vector<double> temps = o->temperatures.empty() ? std::vector<double>{o->temperature} : o->temperatures;
        if (std::set<double>(temps.begin(), temps.end()).size() != temps.size())
            throw UsageError("--temperatures lists a value twice");
        const auto cues = read_cue_list(o->cues);
        const auto corrections = o->corrections.empty() ? CorrectionMap{} : CorrectionMap::read(o->corrections);
        const fs::path out_dir(o->out_dir);
        const fs::path ck_dir(o->checkpoint_dir.empty() ? o->out_dir : o->checkpoint_dir);
        fs::create_directories(out_dir);
        if (!o->no_checkpoint) fs::create_directories(ck_dir);

        g_interrupted.store(false);
        auto previous = std::signal(SIGINT, on_sigint);
        struct Restore {
            decltype(previous) handler;
            ~Restore() { std::signal(SIGINT, handler); }
        } restore{previous};

        for (double t : temps) {
            config.temperature = t;
            const auto stem = dataset_file_stem(config.model_name, t);
            RunOptions run;
            if (!o->no_checkpoint) run.checkpoint = ck_dir / (stem + ".checkpoint.tsv");
            run.resume = o->resume;
            run.corrections = corrections;
            run.should_stop = [] { return g_interrupted.load(); };
            run.stop_after = o->stop_after;
            auto result = generate_dataset(config, cues, *backend, run);
            write_dataset(result.dataset, out_dir / (stem + ".tsv"));
            io::write_file_atomic(out_dir / (stem + ".run.json"), result.report.to_json() + "\n");
            err << stem << ": " << result.report.successes << " repetitions, " << result.report.gaps << " gaps, "
                << result.report.retries << " retries, " << result.report.dropped_cues.size() << " dropped cues\n";
        }
        (void)out;
    });
}

// ---- metrics ---------------------------------------------------------------

void add_metrics(CLI::App& app, std::ostream& out, std::ostream& err) {
    struct Opts {
        std::string dataset, output, bins_out, axis = "freq", bin_average = "pairs", cues;
        int rank = 1, bins = 0;
        NormsFlags norms;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("metrics", "relative frequency and concreteness of unique cue-response pairs");
    sub->add_option("--dataset", o->dataset)->required();
    sub->add_option("--rank", o->rank)->check(CLI::Range(1, 3))->capture_default_str();
    sub->add_option("--cues", o->cues, "cue list or sample manifest");
    sub->add_option("--out", o->output, "pair measures TSV (default stdout)");
    sub->add_option("--bins-out", o->bins_out, "bin profile TSV");
    sub->add_option("--axis", o->axis, "bin axis")->check(CLI::IsMember({"freq", "concr"}))->capture_default_str();
    sub->add_option("--bins", o->bins, "bin count (default 10 for freq, 8 for concr)")->check(CLI::NonNegativeNumber);
    sub->add_option("--bin-average", o->bin_average)->check(CLI::IsMember({"pairs", "cues"}))->capture_default_str();
    o->norms.add_to(*sub);
    sub->callback([o, &out, &err] {
        const auto norms = o->norms.load(err);
        if (!norms) throw UsageError("metrics needs --freq-norms and/or --concr-norms");
        auto dataset = read_dataset(o->dataset);
        if (!o->cues.empty()) dataset = dataset.restrict_to(read_cue_list(o->cues));
        const auto measures = unique_pair_measures(dataset, rank_from_int(o->rank), *norms);
        write_output(o->output, pair_measures_tsv(measures), out);
        if (!o->bins_out.empty()) {
            const auto axis = o->axis == "concr" ? BinAxis::cue_concreteness : BinAxis::cue_log_frequency;
            auto options = default_bin_options(axis);
            if (o->bins > 0) options.n_bins = o->bins;
            options.average = bin_average_from_string(o->bin_average);
            write_output(o->bins_out, bin_profile_tsv(bin_profile(measures, axis, options, *norms)), out);
        }
    });
}

// ---- typicality ------------------------------------------------------------

void add_typicality(CLI::App& app, std::ostream& out, std::ostream& err) {
    struct Opts {
        AnalysisFlags flags;
        std::string output, per_cue_dir, text;
    };
    auto o = std::make_shared<Opts>();
    auto* sub = app.add_subcommand("typicality", "variability and typicality summaries against the human reference");
    o->flags.add_to(*sub);
    sub->add_option("--out", o->output, "summary TSV (default stdout)");
    sub->add_option("--per-cue-dir", o->per_cue_dir, "directory for per-cue TSVs");
    sub->add_option("--text", o->text, "formatted table");
    sub->callback([o, &out, &err] {
        if (o->flags.reference.empty()) throw UsageError("typicality needs --reference");
        const auto loaded = load_inputs(o->flags, nullptr, err);
        const SummaryOptions options{o->flags.rank_value(), o->flags.sd_value()};
        const auto cues = o->flags.cue_list();
        std::vector<const AssociationDataset*> series{loaded.reference};
        for (const auto* d : loaded.datasets)
            if (d != loaded.reference) series.push_back(d);
        std::vector<DatasetSummary> summaries;
        for (const auto* d : series) summaries.push_back(dataset_summary(*d, *loaded.reference, cues, options));
        write_output(o->output, typicality_table_tsv(summaries), out);
        if (!o->text.empty()) write_output(o->text, render_typicality_table(summaries), out);
        if (!o->per_cue_dir.empty()) {
            fs::create_directories(o->per_cue_dir);
            for (std::size_t i = 0; i < summaries.size(); ++i) {
                const auto& d = *series[i];
                const auto stem = d.is_human() ? d.label() : dataset_file_stem(d.label(), *d.temperature());
                io::write_file_atomic(fs::path(o->per_cue_dir) / (stem + ".per_cue.tsv"),
                                      per_cue_typicality_tsv(summaries[i]));
            }
        }
    });
}

// ---- stats -----------------------------------------------------------------

std::string group_key(const AssociationDataset& d, const std::string& by) {
    if (by == "label") return d.label();
    if (by == "temperature") return d.temperature() ? io::format_double(*d.temperature()) : "human";
    return d.display_name();
}

void add_stats(CLI::App& app, std::ostream& out, std::ostream& err) {
    struct Opts {
        AnalysisFlags flags;
        NormsFlags norms;
        std::string test, measure = "log_freq_ratio", x = "cue_concreteness", y = "response_concreteness";
        std::string groups_by = "dataset", output;
    };
    auto o = std::make_shared<Opts>();
    std::vector<std::string> measure_names;
    for (auto m : {Measure::log_freq_ratio, Measure::concreteness_ratio, Measure::cue_log_freq,
                   Measure::response_log_freq, Measure::cue_concreteness, Measure::response_concreteness,
                   Measure::variability, Measure::tok_ss1, Measure::typ_ss1})
        measure_names.emplace_back(to_string(m));
    auto* sub = app.add_subcommand("stats", "descriptive statistics, one-way ANOVA and Pearson correlation");
    sub->add_option("--test", o->test, "describe, anova or pearson")
        ->required()
        ->check(CLI::IsMember({"describe", "anova", "pearson"}));
    sub->add_option("--measure", o->measure)->check(CLI::IsMember(measure_names))->capture_default_str();
    sub->add_option("--x", o->x, "pearson x measure")->check(CLI::IsMember(measure_names))->capture_default_str();
    sub->add_option("--y", o->y, "pearson y measure")->check(CLI::IsMember(measure_names))->capture_default_str();
    sub->add_option("--groups-by", o->groups_by, "ANOVA grouping of datasets")
        ->check(CLI::IsMember({"label", "temperature", "dataset"}))
        ->capture_default_str();
    sub->add_option("--out", o->output, "result TSV (default stdout)");
    o->flags.add_to(*sub);
    o->norms.add_to(*sub);
    sub->callback([o, &out, &err] {
        const auto loaded = load_inputs(o->flags, &o->norms, err);
        const auto inputs = loaded.inputs();
        AnalysisSettings settings;
        settings.rank = o->flags.rank_value();
        settings.sd_mode = o->flags.sd_value();
        settings.cues = o->flags.cue_list();
        std::vector<const AssociationDataset*> series = loaded.datasets;
        if (series.empty() && loaded.reference) series.push_back(loaded.reference);
        if (series.empty()) throw UsageError("stats needs --datasets or --reference");

        std::string text;
        if (o->test == "describe") {
            const auto measure = measure_from_string(o->measure);
            text = "respondent\ttemperature\tmeasure\tn\tmin\tq1\tmedian\tq3\tmax\tmean\tsd\n";
            for (const auto* d : series) {
                const auto values = measure_values(*d, measure, inputs, settings);
                text += d->label() + "\t" + temp_cell(*d) + "\t" + o->measure;
                if (values.empty()) {
                    text += "\t0\tNA\tNA\tNA\tNA\tNA\tNA\tNA\n";
                    continue;
                }
                const auto s = stats::describe(values, settings.sd_mode);
                text += "\t" + std::to_string(s.n);
                for (double v : {s.min, s.q1, s.median, s.q3, s.max, s.mean, s.sd}) text += "\t" + io::format_double(v);
                text += "\n";
            }
        } else if (o->test == "anova") {
            const auto measure = measure_from_string(o->measure);
            std::vector<std::string> keys;
            std::vector<std::vector<double>> groups;
            for (const auto* d : series) {
                const auto key = group_key(*d, o->groups_by);
                auto it = std::find(keys.begin(), keys.end(), key);
                if (it == keys.end()) {
                    keys.push_back(key);
                    groups.emplace_back();
                    it = std::prev(keys.end());
                }
                auto values = measure_values(*d, measure, inputs, settings);
                auto& g = groups[static_cast<std::size_t>(it - keys.begin())];
                g.insert(g.end(), values.begin(), values.end());
            }
            const auto r = stats::one_way_anova(groups);
            std::string joined;
            for (const auto& k : keys) joined += (joined.empty() ? "" : ",") + k;
            text = "groups_by\tgroups\tmeasure\tf\tdf_between\tdf_within\tp\teta_squared\tp_table\n";
            text += o->groups_by + "\t" + joined + "\t" + o->measure + "\t" + io::format_double(r.f) + "\t" +
                    std::to_string(r.df_between) + "\t" + std::to_string(r.df_within) + "\t" +
                    io::format_double(r.p) + "\t" + io::format_double(r.eta_squared) + "\t" +
                    stats::format_p_table(r.p) + "\n";
        } else {
            const Measure ms[] = {measure_from_string(o->x), measure_from_string(o->y)};
            text = "respondent\ttemperature\tx\ty\tn\tr\tt\tp\n";
            for (const auto* d : series) {
                std::vector<double> xs, ys;
                for (const auto& row : measure_table(*d, ms, inputs, settings)) {
                    xs.push_back(row[0]);
                    ys.push_back(row[1]);
                }
                const auto r = stats::pearson(xs, ys);
                text += d->label() + "\t" + temp_cell(*d) + "\t" + o->x + "\t" + o->y + "\t" + std::to_string(r.n) +
                        "\t" + io::format_double(r.r) + "\t" + io::format_double(r.t) + "\t" +
                        io::format_double(r.p) + "\n";
            }
        }
        write_output(o->output, text, out);
    });
}

// ---- report ----------------------------------------------------------------

void add_report(CLI::App& app, std::ostream& out, std::ostream& err) {
    struct Opts {
        AnalysisFlags flags;
        NormsFlags norms;
        std::string kind, output, bin_average = "pairs";
        int bins = 10, concr_bins = 8;
    };
    auto o = std::make_shared<Opts>();
    std::vector<std::string> kinds;
    for (auto k : report_kind_names()) kinds.emplace_back(k);
    auto* sub = app.add_subcommand("report", "data behind a figure or table: TSV plus JSON metadata");
    sub->add_option("--kind", o->kind)->required()->check(CLI::IsMember(kinds));
    sub->add_option("--out", o->output, "payload TSV; sidecars get .meta.json / .txt")->required();
    sub->add_option("--bins", o->bins, "frequency bins")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--concr-bins", o->concr_bins, "concreteness bins")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--bin-average", o->bin_average)->check(CLI::IsMember({"pairs", "cues"}))->capture_default_str();
    o->flags.add_to(*sub);
    o->norms.add_to(*sub);
    sub->callback([o, &out, &err] {
        const auto loaded = load_inputs(o->flags, &o->norms, err);
        AnalysisSettings settings;
        settings.rank = o->flags.rank_value();
        settings.sd_mode = o->flags.sd_value();
        settings.freq_bins = o->bins;
        settings.concr_bins = o->concr_bins;
        settings.bin_average = bin_average_from_string(o->bin_average);
        settings.cues = o->flags.cue_list();
        const auto bundle = build_report(report_kind_from_string(o->kind), loaded.inputs(), settings);
        for (const auto& p : emit_report(bundle, o->output)) err << "wrote " << p.string() << "\n";
        (void)out;
    });
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Word association norms: ingest, sample, generate and analyse"};
    app.name("wordassoc");
    app.set_config("--config", "", "TOML/INI file of option defaults; command-line flags override it");
    app.require_subcommand(1);
    add_ingest(app, out, err);
    add_sample(app, out, err);
    add_generate(app, out, err);
    add_metrics(app, out, err);
    add_typicality(app, out, err);
    add_stats(app, out, err);
    add_report(app, out, err);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const GenerationInterrupted& e) {
        err << "interrupted: " << e.what() << "; rerun with --resume to continue\n";
        return kExitFatal;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFatal;
    }
    return kExitOk;
}

} // namespace wordassoc::cli
