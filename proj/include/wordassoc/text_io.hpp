#pragma once

// Small text and file helpers shared by the parsers and report writers.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wordassoc::io {

std::string_view trim(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char delim);

// Splits on runs of ASCII whitespace.
std::vector<std::string_view> split_whitespace(std::string_view s);

// Splits one delimited record, honouring double-quoted fields ("" escapes a quote).
// Returns nullopt when a quoted field is left open.
std::optional<std::vector<std::string>> split_quoted(std::string_view line, char delim);

std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

// Shortest representation that round-trips through parse_double.
std::string format_double(double v);

// Fixed-point with the given number of decimals.
std::string format_fixed(double v, int decimals);

// Reads a file into lines, stripping a trailing '\r'. Throws IoError.
std::vector<std::string> read_lines(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

// Writes through a sibling temp file and renames it over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string hex64(std::uint64_t v);

} // namespace wordassoc::io
