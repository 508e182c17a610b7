#include "wordassoc/core_model.hpp"

#include "wordassoc/error.hpp"
#include "wordassoc/text_io.hpp"

#include <algorithm>
#include <cmath>

namespace wordassoc {

Rank rank_from_int(long long value) {
    if (value < 1 || value > 3) throw ArgumentError("rank must be 1, 2 or 3, got " + std::to_string(value));
    return static_cast<Rank>(value);
}

AssociationDataset::AssociationDataset(std::string label, std::optional<double> temperature,
                                       std::vector<AssociationInstance> instances)
    : label_(std::move(label)), temperature_(temperature) {
    if (label_.empty()) throw ArgumentError("dataset label is empty");
    if (label_.find_first_of("\t\n") != std::string::npos)
        throw ArgumentError("dataset label contains a tab or newline");
    if (temperature_) {
        if (!std::isfinite(*temperature_) || *temperature_ < 0.0)
            throw ArgumentError("temperature must be a non-negative real");
        if (label_ == kHumanLabel)
            throw ArgumentError("the human respondent cannot carry a temperature");
    }

    for (auto& inst : instances) {
        if (inst.cue.empty() || inst.response.empty())
            throw ArgumentError("instance with empty cue or response");
        if (inst.participant < 1) throw ArgumentError("participant index must be >= 1");
        auto& slot = cue_index_[inst.cue][rank_number(inst.rank) - 1];
        slot.push_back(std::move(inst));
    }
    for (auto& [cue, per_rank] : cue_index_) {
        for (auto& v : per_rank) {
            std::sort(v.begin(), v.end(),
                      [](const auto& a, const auto& b) { return a.participant < b.participant; });
            auto dup = std::adjacent_find(v.begin(), v.end(), [](const auto& a, const auto& b) {
                return a.participant == b.participant;
            });
            if (dup != v.end())
                throw ArgumentError("duplicate participant " + std::to_string(dup->participant) +
                                    " for cue '" + cue + "' at rank " +
                                    std::to_string(rank_number(dup->rank)));
            size_ += v.size();
        }
    }
}

std::vector<std::string> AssociationDataset::cues() const {
    std::vector<std::string> out;
    out.reserve(cue_index_.size());
    for (const auto& [cue, _] : cue_index_) out.push_back(cue);
    return out;
}

bool AssociationDataset::has_cue(std::string_view cue) const {
    return cue_index_.find(cue) != cue_index_.end();
}

bool AssociationDataset::has_cue(std::string_view cue, Rank rank) const {
    return !select(cue, rank).empty();
}

const std::vector<AssociationInstance>& AssociationDataset::select(std::string_view cue,
                                                                   Rank rank) const {
    static const std::vector<AssociationInstance> kEmpty;
    auto it = cue_index_.find(cue);
    if (it == cue_index_.end()) return kEmpty;
    return it->second[rank_number(rank) - 1];
}

std::set<std::string> AssociationDataset::unique_responses(std::string_view cue, Rank rank) const {
    std::set<std::string> out;
    for (const auto& inst : select(cue, rank)) out.insert(inst.response);
    return out;
}

void AssociationDataset::for_each(const std::function<void(const AssociationInstance&)>& fn) const {
    for (const auto& [cue, per_rank] : cue_index_) {
        // merge the three rank lists by participant, rank order breaking ties
        std::array<std::size_t, 3> pos{0, 0, 0};
        for (;;) {
            int best = -1;
            for (int r = 0; r < 3; ++r) {
                if (pos[r] >= per_rank[r].size()) continue;
                if (best < 0 ||
                    per_rank[r][pos[r]].participant < per_rank[best][pos[best]].participant)
                    best = r;
            }
            if (best < 0) break;
            fn(per_rank[best][pos[best]++]);
        }
    }
}

std::vector<AssociationInstance> AssociationDataset::instances() const {
    std::vector<AssociationInstance> out;
    out.reserve(size_);
    for_each([&](const AssociationInstance& inst) { out.push_back(inst); });
    return out;
}

AssociationDataset AssociationDataset::restrict_to(const std::vector<std::string>& cues) const {
    std::vector<AssociationInstance> kept;
    for (const auto& cue : cues) {
        auto it = cue_index_.find(cue);
        if (it == cue_index_.end()) continue;
        for (const auto& v : it->second) kept.insert(kept.end(), v.begin(), v.end());
    }
    return AssociationDataset(label_, temperature_, std::move(kept));
}

std::string AssociationDataset::display_name() const {
    if (!temperature_) return label_;
    return label_ + "@" + io::format_double(*temperature_);
}

bool operator==(const AssociationDataset& a, const AssociationDataset& b) {
    return a.label_ == b.label_ && a.temperature_ == b.temperature_ && a.cue_index_ == b.cue_index_;
}

std::string serialize_dataset(const AssociationDataset& dataset) {
    std::string out;
    out.reserve(dataset.size() * 32 + kDatasetHeader.size() + 1);
    out += kDatasetHeader;
    out += '\n';
    const std::string temp = dataset.temperature() ? io::format_double(*dataset.temperature()) : "";
    dataset.for_each([&](const AssociationInstance& inst) {
        out += dataset.label();
        out += '\t';
        out += temp;
        out += '\t';
        out += inst.cue;
        out += '\t';
        out += inst.response;
        out += '\t';
        out += std::to_string(inst.participant);
        out += '\t';
        out += std::to_string(rank_number(inst.rank));
        out += '\n';
    });
    return out;
}

AssociationDataset parse_dataset(std::string_view text, std::string_view source_name) {
    auto fail = [&](std::size_t line_no, const std::string& why) {
        return ParseError(std::string(source_name) + ":" + std::to_string(line_no) + ": " + why);
    };

    std::vector<AssociationInstance> instances;
    std::optional<std::string> label;
    std::optional<double> temperature;
    bool saw_header = false;
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (!saw_header) {
            if (line != kDatasetHeader) throw fail(line_no, "expected dataset header");
            saw_header = true;
            continue;
        }
        auto f = io::split(line, '\t');
        if (f.size() != 6) throw fail(line_no, "expected 6 fields, got " + std::to_string(f.size()));

        std::optional<double> row_temp;
        if (!f[1].empty()) {
            row_temp = io::parse_double(f[1]);
            if (!row_temp) throw fail(line_no, "bad temperature '" + std::string(f[1]) + "'");
        }
        if (!label) {
            label = std::string(f[0]);
            temperature = row_temp;
        } else if (*label != f[0] || temperature != row_temp) {
            throw fail(line_no, "rows disagree on label/temperature");
        }
        auto participant = io::parse_int(f[4]);
        if (!participant || *participant < 1 || *participant > 0xffffffffLL)
            throw fail(line_no, "bad participant '" + std::string(f[4]) + "'");
        auto rank = io::parse_int(f[5]);
        if (!rank || *rank < 1 || *rank > 3) throw fail(line_no, "bad rank '" + std::string(f[5]) + "'");
        if (f[2].empty() || f[3].empty()) throw fail(line_no, "empty cue or response");
        instances.push_back({std::string(f[2]), std::string(f[3]),
                             static_cast<std::uint32_t>(*participant), rank_from_int(*rank)});
    }
    if (!saw_header) throw ParseError(std::string(source_name) + ": missing dataset header");
    if (!label) throw ParseError(std::string(source_name) + ": dataset has no instances");
    try {
        return AssociationDataset(*label, temperature, std::move(instances));
    } catch (const ArgumentError& e) {
        throw ParseError(std::string(source_name) + ": " + e.what());
    }
}

AssociationDataset read_dataset(const std::filesystem::path& path) {
    return parse_dataset(io::read_file(path), path.string());
}

void write_dataset(const AssociationDataset& dataset, const std::filesystem::path& path) {
    io::write_file_atomic(path, serialize_dataset(dataset));
}

} // namespace wordassoc
