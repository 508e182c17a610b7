#include "wordassoc/lexical_metrics.hpp"

#include "wordassoc/error.hpp"
#include "wordassoc/stats.hpp"
#include "wordassoc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace wordassoc {

double relative_frequency(std::string_view cue, std::string_view response, const LexicalNorms& norms) {
    const auto fc = static_cast<double>(norms.lookup_frequency(cue));
    const auto fr = static_cast<double>(norms.lookup_frequency(response));
    return std::log2(fr) - std::log2(fc);
}

std::optional<double> relative_concreteness(std::string_view cue, std::string_view response,
                                            const LexicalNorms& norms) {
    auto cc = norms.concreteness(cue);
    auto rc = norms.concreteness(response);
    if (!cc || !rc) return std::nullopt;
    return *rc / *cc;
}

std::vector<PairMeasure> unique_pair_measures(const AssociationDataset& dataset, Rank rank,
                                              const LexicalNorms& norms) {
    std::vector<PairMeasure> out;
    for (const auto& cue : dataset.cues()) {
        for (const auto& response : dataset.unique_responses(cue, rank)) {
            out.push_back({cue, response, relative_frequency(cue, response, norms),
                           relative_concreteness(cue, response, norms)});
        }
    }
    return out;
}

std::string_view to_string(BinAxis axis) {
    return axis == BinAxis::cue_log_frequency ? "cue_log_frequency" : "cue_concreteness";
}

std::string_view to_string(BinAverage average) {
    return average == BinAverage::pairs ? "pairs" : "cues";
}

BinAverage bin_average_from_string(std::string_view s) {
    if (s == "pairs") return BinAverage::pairs;
    if (s == "cues") return BinAverage::cues;
    throw ArgumentError("bin average must be 'pairs' or 'cues'");
}

BinOptions default_bin_options(BinAxis axis) {
    BinOptions o;
    if (axis == BinAxis::cue_concreteness) {
        o.n_bins = 8;
        o.range = std::make_pair(kMinConcreteness, kMaxConcreteness);
    }
    return o;
}

BinProfile bin_profile(std::span<const PairMeasure> measures, BinAxis axis, const BinOptions& options,
                       const LexicalNorms& norms) {
    if (options.n_bins < 1) throw ArgumentError("bin_profile(): n_bins must be >= 1");
    if (measures.empty()) throw ArgumentError("bin_profile(): no measures");

    // cue -> (axis value, measures of its pairs)
    std::map<std::string, std::pair<double, std::vector<double>>> per_cue;
    for (const auto& m : measures) {
        double value = 0.0;
        double measure = 0.0;
        if (axis == BinAxis::cue_log_frequency) {
            value = std::log2(static_cast<double>(norms.lookup_frequency(m.cue)));
            measure = m.log2_freq_ratio;
        } else {
            auto c = norms.concreteness(m.cue);
            if (!c || !m.concreteness_ratio) continue;
            value = *c;
            measure = *m.concreteness_ratio;
        }
        auto& slot = per_cue[m.cue];
        slot.first = value;
        slot.second.push_back(measure);
    }
    if (per_cue.empty()) throw ArgumentError("bin_profile(): no cue has a value on this axis");

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [cue, entry] : per_cue) {
        lo = std::min(lo, entry.first);
        hi = std::max(hi, entry.first);
    }
    if (options.range) {
        const auto [rlo, rhi] = *options.range;
        if (!(rlo <= rhi)) throw ArgumentError("bin_profile(): empty range");
        if (lo < rlo || hi > rhi) throw ArgumentError("bin_profile(): axis value outside fixed range");
        lo = rlo;
        hi = rhi;
    }

    const int n = (hi > lo) ? options.n_bins : 1;
    const double width = (hi - lo) / n;
    auto lower_of = [&](int i) { return lo + width * i; };

    BinProfile profile;
    profile.axis = axis;
    profile.average = options.average;
    profile.bins.resize(n);
    std::vector<stats::RunningMoments> acc(n);
    for (int i = 0; i < n; ++i) {
        profile.bins[i].lower = lower_of(i);
        profile.bins[i].upper = (i == n - 1) ? hi : lower_of(i + 1);
    }
    for (const auto& [cue, entry] : per_cue) {
        const double v = entry.first;
        int idx = 0;
        if (n > 1) {
            idx = std::clamp(static_cast<int>(std::floor((v - lo) / width)), 0, n - 1);
            // keep assignment consistent with the reported bounds
            while (idx > 0 && v < profile.bins[idx].lower) --idx;
            while (idx < n - 1 && v >= profile.bins[idx + 1].lower) ++idx;
        }
        auto& bin = profile.bins[idx];
        ++bin.cue_count;
        bin.pair_count += entry.second.size();
        if (options.average == BinAverage::pairs) {
            for (double m : entry.second) acc[idx].add(m);
        } else {
            acc[idx].add(stats::mean(entry.second));
        }
    }
    for (int i = 0; i < n; ++i)
        profile.bins[i].mean_measure =
            acc[i].count() ? acc[i].mean() : std::numeric_limits<double>::quiet_NaN();
    return profile;
}

std::string pair_measures_tsv(std::span<const PairMeasure> measures) {
    std::string out = "cue\tresponse\tlog2_freq_ratio\tconcreteness_ratio\n";
    for (const auto& m : measures) {
        out += m.cue + "\t" + m.response + "\t" + io::format_double(m.log2_freq_ratio) + "\t" +
               (m.concreteness_ratio ? io::format_double(*m.concreteness_ratio) : "NA") + "\n";
    }
    return out;
}

std::string bin_profile_tsv(const BinProfile& profile) {
    std::string out = "axis\tbin_lower\tbin_upper\tcue_count\tmean_measure\n";
    for (const auto& b : profile.bins) {
        out += std::string(to_string(profile.axis)) + "\t" + io::format_double(b.lower) + "\t" +
               io::format_double(b.upper) + "\t" + std::to_string(b.cue_count) + "\t" +
               io::format_double(b.mean_measure) + "\n";
    }
    return out;
}

} // namespace wordassoc
