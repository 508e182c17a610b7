#pragma once

// Token normalization and ingestion of human association tables and lexical
// norms (corpus frequency, concreteness ratings).

#include "wordassoc/core_model.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wordassoc {

// One rejected input row, kept for the sidecar rejects file.
struct Reject {
    std::size_t line_number = 0;
    std::string reason;
    std::string raw_content;
};

class RejectLog {
public:
    void add(std::size_t line_number, std::string reason, std::string_view raw);
    const std::vector<Reject>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    // TSV: line_number  reason  raw_content (tabs in raw content become spaces).
    std::string to_tsv() const;

private:
    std::vector<Reject> entries_;
};

// raw -> corrected spelling map. Keys and values are stored normalized and
// chains (a->b, b->c) are resolved, so applying the map is idempotent.
class CorrectionMap {
public:
    CorrectionMap() = default;
    // Throws ArgumentError on a correction cycle or an empty corrected token.
    explicit CorrectionMap(const std::vector<std::pair<std::string, std::string>>& pairs);

    // Two-column TSV "raw<TAB>corrected"; blank lines and '#' comments skipped.
    static CorrectionMap read(const std::filesystem::path& path);

    // Applies to an already trimmed+lowercased token.
    const std::string& apply(const std::string& token) const;
    std::size_t size() const { return map_.size(); }

private:
    std::unordered_map<std::string, std::string> map_;
};

// Trim, collapse internal whitespace to single spaces, ASCII-lowercase,
// then substitute through the correction map. An empty result means "discard".
std::string normalize_token(std::string_view raw, const CorrectionMap& corrections = {});

// Column layout of a human association table.
struct HumanColumnMapping {
    enum class Layout { wide, long_format };
    Layout layout = Layout::wide;
    std::string cue = "cue";
    // wide: one column per rank, in rank order (1 to 3 columns)
    std::vector<std::string> rank_columns{"R1", "R2", "R3"};
    // long: response + rank columns, optional participant column
    std::string response = "response";
    std::string rank = "rank";
    std::string participant;
    // 0 = sniff from the header line (tab, else comma)
    char delimiter = 0;
    // Raw (trimmed) cell values treated as a missing response.
    std::vector<std::string> missing_markers{"NA", "No more responses", "Unknown word"};
};

struct HumanIngestResult {
    AssociationDataset dataset;
    RejectLog rejects;
    std::size_t source_cue_count = 0;   // distinct non-empty cues seen before filtering
    std::vector<std::string> dropped_cues;  // cues with zero surviving responses
};

// Throws IoError when the file cannot be read, ParseError when the header lacks
// a mapped column.
HumanIngestResult parse_human_norms(const std::filesystem::path& path,
                                    const HumanColumnMapping& mapping,
                                    const CorrectionMap& corrections,
                                    std::string label = std::string(kHumanLabel));

HumanIngestResult parse_human_norms_text(std::string_view text, const HumanColumnMapping& mapping,
                                         const CorrectionMap& corrections,
                                         std::string label = std::string(kHumanLabel));

using FrequencyTable = std::unordered_map<std::string, std::uint64_t>;
using ConcretenessTable = std::unordered_map<std::string, double>;

struct FrequencyIngestResult {
    FrequencyTable frequency;
    RejectLog rejects;            // unparseable lines
    std::size_t filtered_digits = 0;
    std::size_t filtered_doc_count = 0;
    bool has_doc_column = false;
    std::vector<std::string> warnings;
};

// Lines "token count [doc_count]". Throws ParseError when no line is usable.
FrequencyIngestResult parse_frequency_norms(const std::filesystem::path& path,
                                            std::uint64_t min_doc_count = 3);
FrequencyIngestResult parse_frequency_norms_text(std::string_view text,
                                                 std::uint64_t min_doc_count = 3);

struct ConcretenessColumns {
    std::string word = "Word";
    std::string rating = "Conc.M";
    char delimiter = 0;  // 0 = sniff
};

struct ConcretenessIngestResult {
    ConcretenessTable concreteness;
    RejectLog rejects;
};

ConcretenessIngestResult parse_concreteness_norms(const std::filesystem::path& path,
                                                  const ConcretenessColumns& columns = {});
ConcretenessIngestResult parse_concreteness_norms_text(std::string_view text,
                                                       const ConcretenessColumns& columns = {});

inline constexpr double kMinConcreteness = 1.0;
inline constexpr double kMaxConcreteness = 5.0;

// Frequency and concreteness lookups over normalized tokens.
class LexicalNorms {
public:
    LexicalNorms() = default;
    // Throws ArgumentError if a count is 0, a frequency token has a digit, or a
    // rating falls outside [1, 5].
    LexicalNorms(FrequencyTable frequency, ConcretenessTable concreteness);

    // Stored count, or 1 for tokens absent from the table. Exact match.
    std::uint64_t lookup_frequency(std::string_view token) const;
    bool has_frequency(std::string_view token) const;

    std::optional<double> concreteness(std::string_view token) const;
    bool has_concreteness(std::string_view token) const { return concreteness(token).has_value(); }

    const FrequencyTable& frequency_table() const { return frequency_; }
    const ConcretenessTable& concreteness_table() const { return concreteness_; }

private:
    FrequencyTable frequency_;
    ConcretenessTable concreteness_;
};

inline std::uint64_t lookup_frequency(const LexicalNorms& norms, std::string_view token) {
    return norms.lookup_frequency(token);
}

} // namespace wordassoc
