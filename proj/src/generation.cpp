#include "wordassoc/generation.hpp"

#include "wordassoc/text_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ctime>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace wordassoc {

namespace {

using RepKey = std::pair<std::string, std::uint32_t>;

struct CompletedRep {
    std::vector<AssociationInstance> instances;
    bool gap = false;
};

constexpr std::string_view kCheckpointMagic = "# wordassoc-checkpoint v1";

std::size_t count_placeholders(std::string_view tmpl) {
    std::size_t n = 0;
    for (auto pos = tmpl.find(kCuePlaceholder); pos != std::string_view::npos;
         pos = tmpl.find(kCuePlaceholder, pos + kCuePlaceholder.size()))
        ++n;
    return n;
}

std::string utc_now_iso() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string_view strip_item(std::string_view item) {
    item = io::trim(item);
    // list markers: "-", "*", "•", "1.", "1)", "(1)"
    if (item.rfind("\xE2\x80\xA2", 0) == 0) item.remove_prefix(3);
    while (!item.empty() && (item.front() == '-' || item.front() == '*')) item.remove_prefix(1);
    item = io::trim(item);
    if (!item.empty() && item.front() == '(') {
        auto close = item.find(')');
        if (close != std::string_view::npos && close > 1 &&
            std::all_of(item.begin() + 1, item.begin() + close, [](char c) { return c >= '0' && c <= '9'; }))
            item.remove_prefix(close + 1);
    }
    std::size_t digits = 0;
    while (digits < item.size() && item[digits] >= '0' && item[digits] <= '9') ++digits;
    if (digits > 0 && digits < item.size() &&
        (item[digits] == '.' || item[digits] == ')' || item[digits] == ':'))
        item.remove_prefix(digits + 1);
    // "Here are my words: sand"
    if (auto colon = item.rfind(':'); colon != std::string_view::npos) item.remove_prefix(colon + 1);
    item = io::trim(item);
    auto is_wrapper = [](char c) {
        return c == '"' || c == '\'' || c == '*' || c == '`' || c == '_' || c == '.' || c == '!' ||
               c == '?';
    };
    while (!item.empty() && is_wrapper(item.back())) item.remove_suffix(1);
    while (!item.empty() && is_wrapper(item.front())) item.remove_prefix(1);
    return io::trim(item);
}

class RateLimiter {
public:
    explicit RateLimiter(double per_second) : per_second_(per_second) {}

    void acquire() {
        if (per_second_ <= 0.0) return;
        const auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
            std::chrono::duration<double>(1.0 / per_second_));
        std::chrono::steady_clock::time_point slot;
        {
            std::lock_guard lock(mu_);
            const auto now = std::chrono::steady_clock::now();
            slot = std::max(now, next_);
            next_ = slot + interval;
        }
        std::this_thread::sleep_until(slot);
    }

private:
    double per_second_;
    std::mutex mu_;
    std::chrono::steady_clock::time_point next_{};
};

struct ParsedCheckpoint {
    std::string config_hash;
    std::vector<std::string> header_comments;
    std::map<RepKey, CompletedRep> done;
};

ParsedCheckpoint parse_checkpoint(const std::string& text, const std::filesystem::path& path) {
    ParsedCheckpoint cp;
    std::map<RepKey, std::vector<AssociationInstance>> pending;
    bool saw_columns = false;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string::npos) break;  // torn final line from an interrupted write
        std::string_view line(text.data() + start, end - start);
        start = end + 1;
        ++line_no;
        if (line.empty()) continue;
        auto fail = [&](const std::string& why) {
            return ParseError(path.string() + ":" + std::to_string(line_no) + ": " + why);
        };
        if (line.rfind("#done\t", 0) == 0) {
            auto f = io::split(line, '\t');
            auto rep = f.size() == 4 ? io::parse_int(f[2]) : std::nullopt;
            if (!rep || *rep < 1 || (f[3] != "ok" && f[3] != "gap")) throw fail("bad #done record");
            RepKey key{std::string(f[1]), static_cast<std::uint32_t>(*rep)};
            CompletedRep c;
            c.gap = f[3] == "gap";
            if (auto it = pending.find(key); it != pending.end()) {
                c.instances = std::move(it->second);
                pending.erase(it);
            }
            cp.done[key] = std::move(c);
            continue;
        }
        if (line.front() == '#') {
            if (line_no == 1 && line != kCheckpointMagic) throw fail("not a checkpoint file");
            cp.header_comments.emplace_back(line);
            if (line.rfind("# config_hash=", 0) == 0)
                cp.config_hash = std::string(line.substr(std::string_view("# config_hash=").size()));
            continue;
        }
        if (!saw_columns) {
            if (line != kDatasetHeader) throw fail("expected dataset header");
            saw_columns = true;
            continue;
        }
        auto f = io::split(line, '\t');
        if (f.size() != 6) throw fail("expected 6 fields");
        auto participant = io::parse_int(f[4]);
        auto rank = io::parse_int(f[5]);
        if (!participant || *participant < 1 || !rank || *rank < 1 || *rank > 3) throw fail("bad row");
        AssociationInstance inst{std::string(f[2]), std::string(f[3]),
                                 static_cast<std::uint32_t>(*participant), rank_from_int(*rank)};
        pending[{inst.cue, inst.participant}].push_back(std::move(inst));
    }
    if (cp.config_hash.empty()) throw ParseError(path.string() + ": checkpoint has no config hash");
    return cp;
}

std::string render_block(const std::string& label, const std::string& temp, const RepKey& key,
                         const CompletedRep& rep) {
    std::string out;
    for (const auto& inst : rep.instances) {
        out += label + "\t" + temp + "\t" + inst.cue + "\t" + inst.response + "\t" +
               std::to_string(inst.participant) + "\t" + std::to_string(rank_number(inst.rank)) + "\n";
    }
    out += "#done\t" + key.first + "\t" + std::to_string(key.second) + "\t" + (rep.gap ? "gap" : "ok") + "\n";
    return out;
}

} // namespace

void GenerationConfig::validate() const {
    if (model_name.empty()) throw ConfigError("model name is empty");
    if (model_name.find_first_of("\t\n") != std::string::npos)
        throw ConfigError("model name contains a tab or newline");
    if (model_name == kHumanLabel) throw ConfigError("model name cannot be 'human'");
    if (!std::isfinite(temperature) || temperature < 0.0)
        throw ConfigError("temperature must be a non-negative real");
    if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
    if (repetitions > 0xffffffffULL) throw ConfigError("repetitions too large");
    if (responses_per_prompt < 1 || responses_per_prompt > 3)
        throw ConfigError("responses per prompt must be between 1 and 3 (one per rank)");
    if (count_placeholders(prompt_template) != 1)
        throw ConfigError("prompt template must contain {cue} exactly once");
    if (max_retries < 0) throw ConfigError("max retries must be >= 0");
    if (concurrency_limit < 1) throw ConfigError("concurrency limit must be >= 1");
    if (max_tokens < 1) throw ConfigError("max tokens must be >= 1");
    if (requests_per_second < 0.0) throw ConfigError("rate limit must be >= 0");
}

std::string build_prompt(std::string_view prompt_template, std::string_view cue) {
    if (count_placeholders(prompt_template) != 1)
        throw ConfigError("prompt template must contain {cue} exactly once");
    const auto pos = prompt_template.find(kCuePlaceholder);
    std::string out(prompt_template.substr(0, pos));
    out += cue;
    out += prompt_template.substr(pos + kCuePlaceholder.size());
    return out;
}

std::vector<std::string> parse_completion(std::string_view raw_text, std::size_t expected_count,
                                          std::size_t max_words) {
    if (expected_count == 0) throw ArgumentError("expected_count must be >= 1");
    std::vector<std::string> items;
    for (auto line : io::split(raw_text, '\n')) {
        line = io::trim(line);
        if (line.empty() || line.back() == ':') continue;
        std::size_t start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i < line.size() && line[i] != ',' && line[i] != ';') continue;
            auto item = strip_item(line.substr(start, i - start));
            start = i + 1;
            if (item.empty()) continue;
            if (io::split_whitespace(item).size() > max_words) continue;
            items.emplace_back(item);
        }
    }
    if (items.size() < expected_count)
        throw ParseError("completion has " + std::to_string(items.size()) + " usable items, expected " +
                         std::to_string(expected_count));
    items.resize(expected_count);
    return items;
}

std::string RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["label"] = label;
    j["temperature"] = temperature ? nlohmann::ordered_json(*temperature) : nlohmann::ordered_json();
    j["config_hash"] = config_hash;
    j["cues"] = cues;
    j["repetitions_requested"] = repetitions_requested;
    j["successes"] = successes;
    j["retries"] = retries;
    j["gaps"] = gaps;
    j["parse_failures"] = parse_failures;
    j["transient_failures"] = transient_failures;
    j["resumed_repetitions"] = resumed_repetitions;
    j["empty_responses"] = empty_responses;
    auto gaps_json = nlohmann::ordered_json::array();
    for (const auto& [cue, rep] : gap_list) gaps_json.push_back({{"cue", cue}, {"repetition", rep}});
    j["gap_list"] = std::move(gaps_json);
    j["dropped_cues"] = dropped_cues;
    return j.dump(2) + "\n";
}

std::string config_hash(const GenerationConfig& c, const CompletionBackend& backend) {
    nlohmann::ordered_json j;
    j["backend"] = backend.describe();
    j["endpoint"] = c.endpoint_url;
    j["model"] = c.model_name;
    j["temperature"] = io::format_double(c.temperature);
    j["repetitions"] = c.repetitions;
    j["responses_per_prompt"] = c.responses_per_prompt;
    j["prompt_template"] = c.prompt_template;
    j["system_message"] = c.system_message;
    j["max_tokens"] = c.max_tokens;
    j["seed"] = c.seed ? nlohmann::ordered_json(*c.seed) : nlohmann::ordered_json();
    return io::hex64(io::fnv1a64(j.dump()));
}

GenerationResult generate_dataset(const GenerationConfig& config, const std::vector<std::string>& cues,
                                  CompletionBackend& backend, const RunOptions& options) {
    config.validate();
    if (cues.empty()) throw ConfigError("no cues to generate for");
    std::vector<std::string> cue_list;
    {
        std::set<std::string> seen;
        for (const auto& c : cues) {
            if (c.empty()) throw ConfigError("empty cue in cue list");
            if (seen.insert(c).second) cue_list.push_back(c);
        }
    }

    const std::string hash = config_hash(config, backend);
    const std::string label = config.model_name;
    const std::string temp_text = io::format_double(config.temperature);

    RunReport report;
    report.label = label;
    report.temperature = config.temperature;
    report.config_hash = hash;
    report.cues = cue_list.size();
    report.repetitions_requested = cue_list.size() * config.repetitions;

    std::map<RepKey, CompletedRep> done;
    std::ofstream checkpoint;
    if (!options.checkpoint.empty()) {
        const bool exists = std::filesystem::exists(options.checkpoint);
        std::string preamble;
        if (exists && options.resume) {
            auto cp = parse_checkpoint(io::read_file(options.checkpoint), options.checkpoint);
            if (cp.config_hash != hash)
                throw ConfigError("checkpoint " + options.checkpoint.string() +
                                  " was written with a different configuration (hash " + cp.config_hash +
                                  ", now " + hash + ")");
            for (const auto& line : cp.header_comments) preamble += line + "\n";
            preamble += std::string(kDatasetHeader) + "\n";
            // compact: keep only committed blocks, dropping torn tails
            for (const auto& [key, rep] : cp.done) preamble += render_block(label, temp_text, key, rep);
            done = std::move(cp.done);
        } else if (exists) {
            throw ConfigError("checkpoint " + options.checkpoint.string() +
                              " already exists; resume it or remove it");
        } else {
            preamble = std::string(kCheckpointMagic) + "\n# config_hash=" + hash + "\n# started=" +
                       utc_now_iso() + "\n# model=" + label + "\n# temperature=" + temp_text +
                       "\n# max_tokens=" + std::to_string(config.max_tokens) + "\n" +
                       std::string(kDatasetHeader) + "\n";
        }
        io::write_file_atomic(options.checkpoint, preamble);
        checkpoint.open(options.checkpoint, std::ios::binary | std::ios::app);
        if (!checkpoint) throw IoError("cannot append to " + options.checkpoint.string());
    }

    // drop completed entries for cues no longer requested
    const std::set<std::string> wanted(cue_list.begin(), cue_list.end());
    for (auto it = done.begin(); it != done.end();)
        it = (wanted.count(it->first.first) && it->first.second <= config.repetitions) ? std::next(it)
                                                                                      : done.erase(it);
    report.resumed_repetitions = done.size();

    std::vector<RepKey> tasks;
    for (const auto& cue : cue_list)
        for (std::uint32_t rep = 1; rep <= config.repetitions; ++rep)
            if (!done.count({cue, rep})) tasks.emplace_back(cue, rep);

    std::mutex mu;  // guards done, report, checkpoint
    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::atomic<bool> interrupted{false};
    std::exception_ptr fatal;
    std::size_t newly_completed = 0;
    const std::size_t total = report.repetitions_requested;
    RateLimiter limiter(config.requests_per_second);

    auto run_task = [&](const RepKey& key) {
        CompletedRep result;
        std::size_t retries = 0, parse_failures = 0, transient = 0, empties = 0;
        bool ok = false;
        const std::string prompt = build_prompt(config.prompt_template, key.first);
        for (int attempt = 0; attempt <= config.max_retries && !ok; ++attempt) {
            if (attempt > 0) {
                ++retries;
                if (config.retry_backoff.count() > 0)
                    std::this_thread::sleep_for(config.retry_backoff * (1 << std::min(attempt - 1, 6)));
            }
            limiter.acquire();
            CompletionRequest req{key.first, key.second, static_cast<std::uint32_t>(attempt), prompt,
                                  config.temperature};
            std::string text;
            try {
                text = backend.complete(req);
            } catch (const TransientBackendError&) {
                ++transient;
                continue;
            }
            try {
                auto raw = parse_completion(text, config.responses_per_prompt);
                for (std::size_t i = 0; i < raw.size(); ++i) {
                    auto token = normalize_token(raw[i], options.corrections);
                    if (token.empty()) {
                        ++empties;
                        continue;
                    }
                    result.instances.push_back({key.first, std::move(token), key.second,
                                                static_cast<Rank>(i + 1)});
                }
                ok = true;
            } catch (const ParseError&) {
                ++parse_failures;
            }
        }
        result.gap = !ok;

        std::lock_guard lock(mu);
        report.retries += retries;
        report.parse_failures += parse_failures;
        report.transient_failures += transient;
        report.empty_responses += empties;
        if (checkpoint.is_open()) {
            checkpoint << render_block(label, temp_text, key, result);
            checkpoint.flush();
            if (!checkpoint) throw IoError("checkpoint write failed");
        }
        done[key] = std::move(result);
        ++newly_completed;
        if (options.on_progress) options.on_progress(done.size(), total);
        if (options.stop_after && newly_completed >= options.stop_after) {
            interrupted = true;
            stop = true;
        }
    };

    auto worker = [&] {
        try {
            for (;;) {
                if (stop) return;
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                // a claimed but unstarted task is simply redone on resume
                if (options.should_stop && options.should_stop()) {
                    interrupted = true;
                    stop = true;
                    return;
                }
                run_task(tasks[i]);
            }
        } catch (...) {
            std::lock_guard lock(mu);
            if (!fatal) fatal = std::current_exception();
            stop = true;
        }
    };

    const std::size_t n_workers = std::min(config.concurrency_limit, std::max<std::size_t>(tasks.size(), 1));
    if (n_workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (checkpoint.is_open()) checkpoint.close();
    if (fatal) std::rethrow_exception(fatal);
    if (interrupted)
        throw GenerationInterrupted("generation interrupted after " + std::to_string(done.size()) + " of " +
                                    std::to_string(total) + " repetitions");

    std::vector<AssociationInstance> instances;
    std::set<std::string> answered;
    for (auto& [key, rep] : done) {
        if (rep.gap) {
            ++report.gaps;
            report.gap_list.push_back(key);
            continue;
        }
        ++report.successes;
        for (auto& inst : rep.instances) {
            answered.insert(inst.cue);
            instances.push_back(std::move(inst));
        }
    }
    for (const auto& cue : cue_list)
        if (!answered.count(cue)) report.dropped_cues.push_back(cue);
    std::sort(report.dropped_cues.begin(), report.dropped_cues.end());

    return {AssociationDataset(label, config.temperature, std::move(instances)), std::move(report)};
}

std::string dataset_file_stem(std::string_view model, double temperature) {
    std::string stem;
    for (char c : model) {
        const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                          c == '.' || c == '-' || c == '_';
        stem.push_back(safe ? c : '_');
    }
    return stem + "_t" + io::format_double(temperature);
}

std::vector<GenerationResult> temperature_sweep(const GenerationConfig& base_config,
                                                const std::vector<double>& temperatures,
                                                const std::vector<std::string>& cues,
                                                CompletionBackend& backend, const SweepOptions& options) {
    if (temperatures.empty()) throw ConfigError("temperature sweep needs at least one temperature");
    std::set<double> unique(temperatures.begin(), temperatures.end());
    if (unique.size() != temperatures.size()) throw ConfigError("duplicate temperature in sweep");

    std::vector<GenerationResult> results;
    for (double t : temperatures) {
        GenerationConfig cfg = base_config;
        cfg.temperature = t;
        RunOptions run;
        run.resume = options.resume;
        run.corrections = options.corrections;
        run.should_stop = options.should_stop;
        if (!options.checkpoint_dir.empty()) {
            std::filesystem::create_directories(options.checkpoint_dir);
            run.checkpoint = options.checkpoint_dir / (dataset_file_stem(cfg.model_name, t) + ".checkpoint.tsv");
        }
        results.push_back(generate_dataset(cfg, cues, backend, run));
    }
    return results;
}

} // namespace wordassoc
