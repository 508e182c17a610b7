#pragma once

// Domain types for word-association data: one record per (cue, response,
// participant, rank), grouped into immutable datasets indexed by cue.

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wordassoc {

enum class Rank : std::uint8_t { R1 = 1, R2 = 2, R3 = 3 };

inline constexpr std::array<Rank, 3> kAllRanks{Rank::R1, Rank::R2, Rank::R3};

constexpr int rank_number(Rank r) { return static_cast<int>(r); }

// Throws ArgumentError outside 1..3.
Rank rank_from_int(long long value);

inline constexpr std::string_view kHumanLabel = "human";

struct AssociationInstance {
    std::string cue;
    std::string response;
    std::uint32_t participant = 0;  // 1-based
    Rank rank = Rank::R1;

    friend bool operator==(const AssociationInstance&, const AssociationInstance&) = default;
};

// Immutable after construction. Instances for a cue are kept per rank, sorted by
// participant; cues iterate in lexicographic order.
class AssociationDataset {
public:
    AssociationDataset() = default;

    // Validates the invariants and throws ArgumentError on violation:
    // non-empty tokens, participant >= 1, unique participant per (cue, rank),
    // and "human" labels carry no temperature.
    AssociationDataset(std::string label, std::optional<double> temperature,
                       std::vector<AssociationInstance> instances);

    const std::string& label() const { return label_; }
    const std::optional<double>& temperature() const { return temperature_; }
    bool is_human() const { return !temperature_.has_value(); }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    // Sorted cue inventory.
    std::vector<std::string> cues() const;
    bool has_cue(std::string_view cue) const;
    bool has_cue(std::string_view cue, Rank rank) const;

    // Instances for (cue, rank) in ascending participant order; empty when absent.
    const std::vector<AssociationInstance>& select(std::string_view cue, Rank rank) const;

    std::set<std::string> unique_responses(std::string_view cue, Rank rank) const;

    // Every instance in (cue, participant, rank) order.
    std::vector<AssociationInstance> instances() const;

    void for_each(const std::function<void(const AssociationInstance&)>& fn) const;

    // Dataset with only the listed cues (absent cues are ignored).
    AssociationDataset restrict_to(const std::vector<std::string>& cues) const;

    // Short human-readable respondent tag, e.g. "human" or "mistral@1".
    std::string display_name() const;

    friend bool operator==(const AssociationDataset& a, const AssociationDataset& b);

private:
    using PerRank = std::array<std::vector<AssociationInstance>, 3>;

    std::string label_;
    std::optional<double> temperature_;
    std::map<std::string, PerRank, std::less<>> cue_index_;
    std::size_t size_ = 0;
};

// Free-function forms of the (cue, rank) subset selection.
inline const std::vector<AssociationInstance>& select(const AssociationDataset& d,
                                                      std::string_view cue, Rank rank) {
    return d.select(cue, rank);
}

inline std::set<std::string> unique_responses(const AssociationDataset& d, std::string_view cue,
                                              Rank rank) {
    return d.unique_responses(cue, rank);
}

// Canonical interchange format: TSV with header
//   label  temperature  cue  response  participant  rank
// one instance per line, temperature empty for human data.
inline constexpr std::string_view kDatasetHeader =
    "label\ttemperature\tcue\tresponse\tparticipant\trank";

std::string serialize_dataset(const AssociationDataset& dataset);
AssociationDataset parse_dataset(std::string_view text, std::string_view source_name = "<memory>");

AssociationDataset read_dataset(const std::filesystem::path& path);
void write_dataset(const AssociationDataset& dataset, const std::filesystem::path& path);

} // namespace wordassoc
