#include "wordassoc/sampling.hpp"

#include "wordassoc/error.hpp"
#include "wordassoc/lexical_metrics.hpp"
#include "wordassoc/stats.hpp"
#include "wordassoc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace wordassoc {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == 0) throw ArgumentError("uniform_below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x >= threshold) return x % bound;
    }
}

SampleManifest sample_cues(std::vector<std::string> all_cues, std::size_t n, std::uint64_t seed) {
    std::sort(all_cues.begin(), all_cues.end());
    all_cues.erase(std::unique(all_cues.begin(), all_cues.end()), all_cues.end());
    if (n < 1 || n > all_cues.size())
        throw ArgumentError("sample size " + std::to_string(n) + " outside [1, " +
                            std::to_string(all_cues.size()) + "]");
    SampleManifest m;
    m.seed = seed;
    m.requested_n = n;
    m.source_cue_count = all_cues.size();

    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        const auto j = i + static_cast<std::size_t>(uniform_below(rng, all_cues.size() - i));
        std::swap(all_cues[i], all_cues[j]);
    }
    all_cues.resize(n);
    std::sort(all_cues.begin(), all_cues.end());
    m.sampled_cues = all_cues;
    m.post_filter_cues = std::move(all_cues);
    return m;
}

void filter_manifest(SampleManifest& manifest,
                     const std::vector<std::reference_wrapper<const AssociationDataset>>& datasets,
                     Rank rank) {
    manifest.post_filter_cues.clear();
    manifest.drop_reasons.clear();
    for (const auto& cue : manifest.sampled_cues) {
        std::string reason;
        for (const auto& d : datasets) {
            if (!d.get().has_cue(cue, rank)) {
                reason = "no R" + std::to_string(rank_number(rank)) + " response in " +
                         d.get().display_name();
                break;
            }
        }
        if (reason.empty())
            manifest.post_filter_cues.push_back(cue);
        else
            manifest.drop_reasons.emplace(cue, std::move(reason));
    }
}

std::string manifest_tsv(const SampleManifest& m) {
    std::string out;
    out += "# seed=" + std::to_string(m.seed) + "\n";
    out += "# requested_n=" + std::to_string(m.requested_n) + "\n";
    out += "# source_cue_count=" + std::to_string(m.source_cue_count) + "\n";
    out += "# sampled=" + std::to_string(m.sampled_cues.size()) + "\n";
    out += "# post_filter=" + std::to_string(m.post_filter_cues.size()) + "\n";
    out += "cue\tstatus\treason\n";
    for (const auto& cue : m.sampled_cues) {
        auto it = m.drop_reasons.find(cue);
        if (it == m.drop_reasons.end())
            out += cue + "\tkept\t\n";
        else
            out += cue + "\tdropped\t" + it->second + "\n";
    }
    return out;
}

SampleManifest parse_manifest(std::string_view text) {
    SampleManifest m;
    bool header = false;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            auto body = io::trim(line.substr(1));
            auto eq = body.find('=');
            if (eq == std::string_view::npos) continue;
            auto key = body.substr(0, eq);
            auto value = io::parse_int(body.substr(eq + 1));
            if (!value) throw ParseError("manifest: bad value for " + std::string(key));
            if (key == "seed") m.seed = static_cast<std::uint64_t>(*value);
            else if (key == "requested_n") m.requested_n = static_cast<std::size_t>(*value);
            else if (key == "source_cue_count") m.source_cue_count = static_cast<std::size_t>(*value);
            continue;
        }
        if (!header) {
            if (line != "cue\tstatus\treason") throw ParseError("manifest: bad header");
            header = true;
            continue;
        }
        auto f = io::split(line, '\t');
        if (f.size() != 3) throw ParseError("manifest: expected 3 fields");
        std::string cue(f[0]);
        m.sampled_cues.push_back(cue);
        if (f[1] == "kept") {
            m.post_filter_cues.push_back(cue);
        } else if (f[1] == "dropped") {
            m.drop_reasons.emplace(cue, std::string(f[2]));
        } else {
            throw ParseError("manifest: bad status '" + std::string(f[1]) + "'");
        }
    }
    if (!header) throw ParseError("manifest: missing header");
    return m;
}

std::vector<std::string> read_cue_list(const std::filesystem::path& path) {
    const auto text = io::read_file(path);
    if (text.rfind("# seed=", 0) == 0 || text.rfind("cue\tstatus\treason", 0) == 0)
        return parse_manifest(text).post_filter_cues;
    std::vector<std::string> cues;
    std::set<std::string> seen;
    for (const auto& line : io::read_lines(path)) {
        auto cue = normalize_token(line);
        if (cue.empty() || cue.front() == '#') continue;
        if (seen.insert(cue).second) cues.push_back(cue);
    }
    return cues;
}

std::vector<RepresentativenessRow> representativeness_report(const std::vector<std::string>& subset_cues,
                                                             const AssociationDataset& full_dataset,
                                                             const LexicalNorms* norms,
                                                             const SummaryOptions& options) {
    if (subset_cues.empty()) throw ArgumentError("representativeness: empty subset");
    for (const auto& cue : subset_cues)
        if (!full_dataset.has_cue(cue, options.rank))
            throw ArgumentError("representativeness: cue '" + cue + "' not in the full dataset");

    const auto all = full_dataset.cues();
    const auto sub = dataset_summary(full_dataset, full_dataset, subset_cues, options);
    const auto full = dataset_summary(full_dataset, full_dataset, all, options);

    std::vector<RepresentativenessRow> rows;
    auto add = [&](std::string metric, double a, double b) {
        // identical inputs must give an exact zero, NaN included
        const double diff = (a == b || (std::isnan(a) && std::isnan(b))) ? 0.0 : std::fabs(a - b);
        rows.push_back({std::move(metric), a, b, diff});
    };
    add("cues", static_cast<double>(sub.cue_count), static_cast<double>(full.cue_count));
    add("avg_r1", sub.avg_variability, full.avg_variability);
    add("tot_r1", static_cast<double>(sub.total_types), static_cast<double>(full.total_types));
    add("tok_ss1_mean", sub.tok_ss1_mean, full.tok_ss1_mean);
    add("tok_ss1_sd", sub.tok_ss1_sd, full.tok_ss1_sd);
    add("typ_ss1_mean", sub.typ_ss1_mean, full.typ_ss1_mean);
    add("typ_ss1_sd", sub.typ_ss1_sd, full.typ_ss1_sd);
    add("degenerate_cues", static_cast<double>(sub.degenerate_cues),
        static_cast<double>(full.degenerate_cues));

    if (norms) {
        auto means = [&](const AssociationDataset& d) {
            stats::RunningMoments freq, conc;
            for (const auto& m : unique_pair_measures(d, options.rank, *norms)) {
                freq.add(m.log2_freq_ratio);
                if (m.concreteness_ratio) conc.add(*m.concreteness_ratio);
            }
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return std::make_pair(freq.count() ? freq.mean() : nan, conc.count() ? conc.mean() : nan);
        };
        const auto [sf, sc] = means(full_dataset.restrict_to(subset_cues));
        const auto [ff, fc] = means(full_dataset);
        add("mean_log2_freq_ratio", sf, ff);
        add("mean_concreteness_ratio", sc, fc);
    }
    return rows;
}

std::string representativeness_tsv(const std::vector<RepresentativenessRow>& rows) {
    std::string out = "metric\tsubset\tfull\tabs_diff\n";
    for (const auto& r : rows)
        out += r.metric + "\t" + io::format_double(r.subset) + "\t" + io::format_double(r.full) + "\t" +
               io::format_double(r.abs_diff) + "\n";
    return out;
}

} // namespace wordassoc
