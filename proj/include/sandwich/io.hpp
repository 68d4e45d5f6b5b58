#pragma once

// Line-oriented text formats. Matrix: first line "rows cols", then one line of
// 0/1 characters per row (leftmost character = column 0). Scheme files bundle
// dimensions, the A/B/T matrices and a reference to a keyed-map file; a
// separate header distinguishes single-core and multi-branch files.

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sandwich/scheme.hpp"

namespace sandwich {

std::string matrix_to_text(const BitMatrix& m);

void write_matrix_file(const std::filesystem::path& path, const BitMatrix& m);
BitMatrix read_matrix_file(const std::filesystem::path& path);

void write_nlmap_file(const std::filesystem::path& path, const KeyedMap& f);
KeyedMap read_nlmap_file(const std::filesystem::path& path);

// `nlmap_ref` is stored verbatim and resolved relative to the scheme file's
// directory on read.
void write_scheme_file(const std::filesystem::path& path, const SchemeSpec& spec,
                       const std::string& nlmap_ref);
SchemeSpec read_scheme_spec(const std::filesystem::path& path);  // unvalidated
Scheme parse_scheme_file(const std::filesystem::path& path);     // fully validated

void write_mbscheme_file(const std::filesystem::path& path, const MultiBranchSpec& spec,
                         const std::vector<std::string>& nlmap_refs);
MultiBranchSpec read_mbscheme_spec(const std::filesystem::path& path);
MultiBranchScheme parse_mbscheme_file(const std::filesystem::path& path);

// Peeks at the header line.
bool is_mbscheme_file(const std::filesystem::path& path);

// CLI bit-string helper: 0/1 characters, leftmost = coordinate 0; ParseError
// names `what` on bad input or width mismatch.
BitVector parse_bits(const std::string& s, std::size_t expected_len, const std::string& what);

} // namespace sandwich
