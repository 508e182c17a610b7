#include "wordassoc/norms.hpp"

#include "wordassoc/error.hpp"
#include "wordassoc/text_io.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <iterator>
#include <array>

namespace wordassoc {

namespace {

char lower_ascii(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// trim + whitespace collapse + lowercase, no corrections
std::string canonical_form(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (is_ws(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(lower_ascii(c));
    }
    return out;
}

bool has_digit(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

char sniff_delimiter(std::string_view header) {
    return header.find('\t') != std::string_view::npos ? '\t' : ',';
}

// Index of a named column; throws ParseError when missing.
std::size_t column_index(const std::vector<std::string>& header, const std::string& name,
                         std::string_view what) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (io::trim(header[i]) == name) return i;
    throw ParseError("column '" + name + "' (" + std::string(what) + ") not found in header");
}

std::vector<std::string_view> lines_of(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        auto end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

} // namespace

void RejectLog::add(std::size_t line_number, std::string reason, std::string_view raw) {
    entries_.push_back({line_number, std::move(reason), std::string(raw)});
}

std::string RejectLog::to_tsv() const {
    std::string out = "line_number\treason\traw_content\n";
    for (const auto& r : entries_) {
        std::string raw = r.raw_content;
        std::replace(raw.begin(), raw.end(), '\t', ' ');
        out += std::to_string(r.line_number) + "\t" + r.reason + "\t" + raw + "\n";
    }
    return out;
}

CorrectionMap::CorrectionMap(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::unordered_map<std::string, std::string> direct;
    for (const auto& [raw, corrected] : pairs) {
        auto key = canonical_form(raw);
        auto value = canonical_form(corrected);
        if (key.empty()) continue;
        if (value.empty()) throw ArgumentError("correction for '" + raw + "' is empty");
        if (key == value) continue;
        direct[key] = value;
    }
    for (const auto& [key, value] : direct) {
        std::string target = value;
        std::set<std::string> seen{key};
        for (auto it = direct.find(target); it != direct.end(); it = direct.find(target)) {
            if (!seen.insert(target).second)
                throw ArgumentError("correction cycle through '" + target + "'");
            target = it->second;
        }
        map_.emplace(key, std::move(target));
    }
}

CorrectionMap CorrectionMap::read(const std::filesystem::path& path) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t line_no = 0;
    for (const auto& line : io::read_lines(path)) {
        ++line_no;
        auto t = io::trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto f = io::split(line, '\t');
        if (f.size() != 2)
            throw ParseError(path.string() + ":" + std::to_string(line_no) +
                             ": expected 'raw<TAB>corrected'");
        pairs.emplace_back(std::string(f[0]), std::string(f[1]));
    }
    return CorrectionMap(pairs);
}

const std::string& CorrectionMap::apply(const std::string& token) const {
    auto it = map_.find(token);
    return it == map_.end() ? token : it->second;
}

std::string normalize_token(std::string_view raw, const CorrectionMap& corrections) {
    auto token = canonical_form(raw);
    if (token.empty()) return token;
    return corrections.apply(token);
}

HumanIngestResult parse_human_norms(const std::filesystem::path& path,
                                    const HumanColumnMapping& mapping,
                                    const CorrectionMap& corrections, std::string label) {
    return parse_human_norms_text(io::read_file(path), mapping, corrections, std::move(label));
}

HumanIngestResult parse_human_norms_text(std::string_view text, const HumanColumnMapping& mapping,
                                         const CorrectionMap& corrections, std::string label) {
    auto lines = lines_of(text);
    std::size_t header_at = 0;
    while (header_at < lines.size() && io::trim(lines[header_at]).empty()) ++header_at;
    if (header_at == lines.size()) throw ParseError("human norms file is empty");

    const char delim = mapping.delimiter ? mapping.delimiter : sniff_delimiter(lines[header_at]);
    auto header = io::split_quoted(lines[header_at], delim);
    if (!header) throw ParseError("unterminated quote in header");

    const bool wide = mapping.layout == HumanColumnMapping::Layout::wide;
    const std::size_t cue_col = column_index(*header, mapping.cue, "cue");
    std::vector<std::size_t> rank_cols;
    std::size_t response_col = 0, rank_col = 0;
    std::optional<std::size_t> participant_col;
    if (wide) {
        if (mapping.rank_columns.empty() || mapping.rank_columns.size() > 3)
            throw ArgumentError("wide layout needs 1 to 3 rank columns");
        for (const auto& name : mapping.rank_columns)
            rank_cols.push_back(column_index(*header, name, "rank response"));
    } else {
        response_col = column_index(*header, mapping.response, "response");
        rank_col = column_index(*header, mapping.rank, "rank");
        if (!mapping.participant.empty())
            participant_col = column_index(*header, mapping.participant, "participant");
    }

    const std::set<std::string, std::less<>> missing(mapping.missing_markers.begin(),
                                                     mapping.missing_markers.end());
    auto clean = [&](std::string_view cell) -> std::string {
        auto t = io::trim(cell);
        if (missing.count(t)) return {};
        return normalize_token(t, corrections);
    };

    HumanIngestResult result;
    std::vector<AssociationInstance> instances;
    std::set<std::string> seen_cues;
    std::set<std::string> kept_cues;
    // per-cue participant counters (wide, long without ids)
    std::map<std::string, std::uint32_t> next_participant;
    std::map<std::string, std::array<std::uint32_t, 3>> next_by_rank;
    // long format with ids: (cue, raw id) -> participant index
    std::map<std::pair<std::string, std::string>, std::uint32_t> participant_ids;
    std::set<std::tuple<std::string, std::uint32_t, int>> taken;

    for (std::size_t i = header_at + 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto line = lines[i];
        if (io::trim(line).empty()) continue;
        auto fields = io::split_quoted(line, delim);
        if (!fields) {
            result.rejects.add(line_no, "unterminated quote", line);
            continue;
        }
        if (fields->size() != header->size()) {
            result.rejects.add(line_no,
                               "expected " + std::to_string(header->size()) + " fields, got " +
                                   std::to_string(fields->size()),
                               line);
            continue;
        }
        const std::string cue = normalize_token((*fields)[cue_col], corrections);
        if (cue.empty()) {
            result.rejects.add(line_no, "empty cue", line);
            continue;
        }
        seen_cues.insert(cue);

        if (wide) {
            std::vector<std::pair<std::string, Rank>> responses;
            for (std::size_t r = 0; r < rank_cols.size(); ++r) {
                auto resp = clean((*fields)[rank_cols[r]]);
                if (!resp.empty()) responses.emplace_back(std::move(resp), static_cast<Rank>(r + 1));
            }
            if (responses.empty()) {
                result.rejects.add(line_no, "no usable responses", line);
                continue;
            }
            const std::uint32_t participant = ++next_participant[cue];
            for (auto& [resp, rank] : responses)
                instances.push_back({cue, std::move(resp), participant, rank});
            kept_cues.insert(cue);
        } else {
            auto rank_value = io::parse_int((*fields)[rank_col]);
            if (!rank_value || *rank_value < 1 || *rank_value > 3) {
                result.rejects.add(line_no, "bad rank", line);
                continue;
            }
            auto resp = clean((*fields)[response_col]);
            if (resp.empty()) {
                result.rejects.add(line_no, "empty response", line);
                continue;
            }
            const Rank rank = rank_from_int(*rank_value);
            std::uint32_t participant = 0;
            if (participant_col) {
                auto key = std::make_pair(cue, std::string(io::trim((*fields)[*participant_col])));
                auto it = participant_ids.find(key);
                if (it == participant_ids.end())
                    it = participant_ids.emplace(key, ++next_participant[cue]).first;
                participant = it->second;
            } else {
                participant = ++next_by_rank[cue][rank_number(rank) - 1];
            }
            if (!taken.emplace(cue, participant, rank_number(rank)).second) {
                result.rejects.add(line_no, "duplicate participant response at rank", line);
                continue;
            }
            instances.push_back({cue, std::move(resp), participant, rank});
            kept_cues.insert(cue);
        }
    }

    result.source_cue_count = seen_cues.size();
    std::set_difference(seen_cues.begin(), seen_cues.end(), kept_cues.begin(), kept_cues.end(),
                        std::back_inserter(result.dropped_cues));
    result.dataset = AssociationDataset(std::move(label), std::nullopt, std::move(instances));
    return result;
}

FrequencyIngestResult parse_frequency_norms(const std::filesystem::path& path,
                                            std::uint64_t min_doc_count) {
    return parse_frequency_norms_text(io::read_file(path), min_doc_count);
}

FrequencyIngestResult parse_frequency_norms_text(std::string_view text, std::uint64_t min_doc_count) {
    FrequencyIngestResult result;
    std::optional<std::size_t> expected_fields;
    std::size_t line_no = 0;
    for (auto line : lines_of(text)) {
        ++line_no;
        auto fields = io::split_whitespace(line);
        if (fields.empty()) continue;
        if (!expected_fields) {
            if (fields.size() != 2 && fields.size() != 3) {
                result.rejects.add(line_no, "expected 'token count [doc_count]'", line);
                continue;
            }
            expected_fields = fields.size();
            result.has_doc_column = fields.size() == 3;
            if (!result.has_doc_column)
                result.warnings.push_back(
                    "frequency file has no document-count column; min_doc_count filter skipped");
        }
        if (fields.size() != *expected_fields) {
            result.rejects.add(line_no, "field count differs from first line", line);
            continue;
        }
        auto count = io::parse_int(fields[1]);
        if (!count || *count < 1) {
            result.rejects.add(line_no, "count is not a positive integer", line);
            continue;
        }
        std::optional<long long> docs;
        if (result.has_doc_column) {
            docs = io::parse_int(fields[2]);
            if (!docs || *docs < 0) {
                result.rejects.add(line_no, "document count is not a non-negative integer", line);
                continue;
            }
        }
        auto token = normalize_token(fields[0]);
        if (has_digit(token)) {
            ++result.filtered_digits;
            continue;
        }
        if (docs && static_cast<std::uint64_t>(*docs) < min_doc_count) {
            ++result.filtered_doc_count;
            continue;
        }
        // case variants collapse onto one normalized token
        result.frequency[token] += static_cast<std::uint64_t>(*count);
    }
    if (result.frequency.empty()) throw ParseError("frequency norms contain no usable line");
    return result;
}

ConcretenessIngestResult parse_concreteness_norms(const std::filesystem::path& path,
                                                  const ConcretenessColumns& columns) {
    return parse_concreteness_norms_text(io::read_file(path), columns);
}

ConcretenessIngestResult parse_concreteness_norms_text(std::string_view text,
                                                       const ConcretenessColumns& columns) {
    auto lines = lines_of(text);
    std::size_t header_at = 0;
    while (header_at < lines.size() && io::trim(lines[header_at]).empty()) ++header_at;
    if (header_at == lines.size()) throw ParseError("concreteness norms file is empty");
    const char delim = columns.delimiter ? columns.delimiter : sniff_delimiter(lines[header_at]);
    auto header = io::split_quoted(lines[header_at], delim);
    if (!header) throw ParseError("unterminated quote in header");
    const auto word_col = column_index(*header, columns.word, "word");
    const auto rating_col = column_index(*header, columns.rating, "rating");

    ConcretenessIngestResult result;
    for (std::size_t i = header_at + 1; i < lines.size(); ++i) {
        const std::size_t line_no = i + 1;
        auto line = lines[i];
        if (io::trim(line).empty()) continue;
        auto fields = io::split_quoted(line, delim);
        if (!fields || fields->size() <= std::max(word_col, rating_col)) {
            result.rejects.add(line_no, "malformed row", line);
            continue;
        }
        auto word = normalize_token((*fields)[word_col]);
        if (word.empty()) {
            result.rejects.add(line_no, "empty word", line);
            continue;
        }
        auto rating = io::parse_double((*fields)[rating_col]);
        if (!rating || !std::isfinite(*rating)) {
            result.rejects.add(line_no, "rating is not a number", line);
            continue;
        }
        if (*rating < kMinConcreteness || *rating > kMaxConcreteness) {
            result.rejects.add(line_no, "rating outside [1,5]", line);
            continue;
        }
        if (!result.concreteness.emplace(word, *rating).second)
            result.rejects.add(line_no, "duplicate word", line);
    }
    return result;
}

LexicalNorms::LexicalNorms(FrequencyTable frequency, ConcretenessTable concreteness)
    : frequency_(std::move(frequency)), concreteness_(std::move(concreteness)) {
    for (const auto& [token, count] : frequency_) {
        if (count < 1) throw ArgumentError("frequency of '" + token + "' is zero");
        if (has_digit(token)) throw ArgumentError("frequency token '" + token + "' contains a digit");
    }
    for (const auto& [token, rating] : concreteness_) {
        if (!(rating >= kMinConcreteness && rating <= kMaxConcreteness))
            throw ArgumentError("concreteness of '" + token + "' outside [1,5]");
    }
}

std::uint64_t LexicalNorms::lookup_frequency(std::string_view token) const {
    auto it = frequency_.find(std::string(token));
    return it == frequency_.end() ? 1 : it->second;
}

bool LexicalNorms::has_frequency(std::string_view token) const {
    return frequency_.count(std::string(token)) > 0;
}

std::optional<double> LexicalNorms::concreteness(std::string_view token) const {
    auto it = concreteness_.find(std::string(token));
    if (it == concreteness_.end()) return std::nullopt;
    return it->second;
}

} // namespace wordassoc
