#include "wordassoc/synthetic_agent.hpp"

#include "wordassoc/text_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace wordassoc {

namespace {

constexpr double kSumTolerance = 1e-9;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

void check_options(const std::vector<WeightedOption>& options, const std::string& where) {
    if (options.empty()) throw ConfigError(where + ": no options");
    double sum = 0.0;
    for (const auto& o : options) {
        if (!(o.probability >= 0.0) || !std::isfinite(o.probability))
            throw ConfigError(where + ": negative or non-finite probability");
        if (o.responses.empty()) throw ConfigError(where + ": option without responses");
        for (const auto& r : o.responses)
            if (io::trim(r).empty()) throw ConfigError(where + ": empty response");
        sum += o.probability;
    }
    if (std::fabs(sum - 1.0) > kSumTolerance)
        throw ConfigError(where + ": probabilities sum to " + io::format_double(sum));
}

// Uniform double in [0, 1) with 53 random bits.
double unit_interval(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t draw(const std::vector<double>& probs, std::mt19937_64& rng) {
    const double u = unit_interval(rng);
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] <= 0.0) continue;
        last_positive = i;
        acc += probs[i];
        if (u < acc) return i;
    }
    return last_positive;  // rounding slack at the top end
}

std::vector<double> probabilities_of(const std::vector<WeightedOption>& options) {
    std::vector<double> p;
    p.reserve(options.size());
    for (const auto& o : options) p.push_back(o.probability);
    return p;
}

} // namespace

std::size_t CueDistribution::response_count() const {
    if (!tuples.empty()) return tuples.front().responses.size();
    return per_rank.size();
}

void SyntheticAgentSpec::validate() const {
    if (cues.empty()) throw ConfigError("synthetic spec has no cues");
    for (const auto& [cue, dist] : cues) {
        const std::string where = "synthetic cue '" + cue + "'";
        if (dist.tuples.empty() == dist.per_rank.empty())
            throw ConfigError(where + ": give exactly one of 'tuples' or 'ranks'");
        if (!dist.tuples.empty()) {
            check_options(dist.tuples, where);
            for (const auto& t : dist.tuples)
                if (t.responses.size() != dist.tuples.front().responses.size())
                    throw ConfigError(where + ": tuples differ in length");
        } else {
            if (dist.per_rank.size() > 3) throw ConfigError(where + ": more than 3 ranks");
            for (std::size_t r = 0; r < dist.per_rank.size(); ++r) {
                check_options(dist.per_rank[r], where + " rank " + std::to_string(r + 1));
                for (const auto& o : dist.per_rank[r])
                    if (o.responses.size() != 1) throw ConfigError(where + ": rank options take one response");
            }
        }
    }
}

SyntheticAgentSpec SyntheticAgentSpec::from_json(std::string_view text) {
    SyntheticAgentSpec spec;
    try {
        const auto j = nlohmann::json::parse(text);
        spec.seed = j.value("seed", std::uint64_t{0});
        for (const auto& [cue, body] : j.at("cues").items()) {
            CueDistribution dist;
            if (body.contains("tuples")) {
                for (const auto& t : body.at("tuples"))
                    dist.tuples.push_back({t.at("responses").get<std::vector<std::string>>(), t.at("p").get<double>()});
            }
            if (body.contains("ranks")) {
                for (const auto& rank : body.at("ranks")) {
                    std::vector<WeightedOption> opts;
                    for (const auto& o : rank)
                        opts.push_back({{o.at("response").get<std::string>()}, o.at("p").get<double>()});
                    dist.per_rank.push_back(std::move(opts));
                }
            }
            spec.cues.emplace(normalize_token(cue), std::move(dist));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synthetic spec: ") + e.what());
    }
    spec.validate();
    return spec;
}

SyntheticAgentSpec SyntheticAgentSpec::read(const std::filesystem::path& path) {
    return from_json(io::read_file(path));
}

std::string SyntheticAgentSpec::to_json() const {
    nlohmann::ordered_json j;
    j["seed"] = seed;
    auto& jc = j["cues"] = nlohmann::ordered_json::object();
    for (const auto& [cue, dist] : cues) {
        nlohmann::ordered_json body;
        if (!dist.tuples.empty()) {
            for (const auto& t : dist.tuples) body["tuples"].push_back({{"responses", t.responses}, {"p", t.probability}});
        } else {
            for (const auto& rank : dist.per_rank) {
                auto jr = nlohmann::ordered_json::array();
                for (const auto& o : rank) jr.push_back({{"response", o.responses.front()}, {"p", o.probability}});
                body["ranks"].push_back(std::move(jr));
            }
        }
        jc[cue] = std::move(body);
    }
    return j.dump(2) + "\n";
}

SyntheticAgent::SyntheticAgent(SyntheticAgentSpec spec, std::optional<std::uint64_t> seed_override)
    : spec_(std::move(spec)), seed_(seed_override.value_or(spec_.seed)) {
    spec_.validate();
}

std::vector<double> SyntheticAgent::apply_temperature(const std::vector<double>& probabilities,
                                                      double temperature) {
    std::vector<double> out(probabilities.size(), 0.0);
    if (probabilities.empty()) return out;
    if (temperature <= 0.0) {
        const auto best = std::max_element(probabilities.begin(), probabilities.end()) - probabilities.begin();
        out[static_cast<std::size_t>(best)] = 1.0;
        return out;
    }
    if (temperature == 1.0) return probabilities;
    // work in log space so small probabilities survive low temperatures
    double max_log = -std::numeric_limits<double>::infinity();
    for (double p : probabilities)
        if (p > 0.0) max_log = std::max(max_log, std::log(p) / temperature);
    double sum = 0.0;
    for (std::size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 0.0) out[i] = std::exp(std::log(probabilities[i]) / temperature - max_log);
        sum += out[i];
    }
    for (double& p : out) p /= sum;
    return out;
}

std::string SyntheticAgent::complete(const CompletionRequest& request) {
    auto it = spec_.cues.find(request.cue);
    if (it == spec_.cues.end()) return "I am not sure what to say about that word.";

    std::uint64_t s = splitmix64(seed_);
    s = splitmix64(s ^ io::fnv1a64(request.cue));
    s = splitmix64(s ^ request.repetition);
    s = splitmix64(s ^ (static_cast<std::uint64_t>(request.attempt) << 32));
    std::mt19937_64 rng(s);

    std::vector<std::string> picked;
    const auto& dist = it->second;
    if (!dist.tuples.empty()) {
        const auto probs = apply_temperature(probabilities_of(dist.tuples), request.temperature);
        picked = dist.tuples[draw(probs, rng)].responses;
    } else {
        for (const auto& rank : dist.per_rank) {
            const auto probs = apply_temperature(probabilities_of(rank), request.temperature);
            picked.push_back(rank[draw(probs, rng)].responses.front());
        }
    }
    std::string text;
    for (std::size_t i = 0; i < picked.size(); ++i) {
        if (i) text += ", ";
        text += picked[i];
    }
    return text;
}

std::string SyntheticAgent::describe() const {
    return "synthetic:" + io::hex64(io::fnv1a64(spec_.to_json())) + ":seed=" + std::to_string(seed_);
}

} // namespace wordassoc
