#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cartan/matrix.hpp"

namespace cartan {

// ".cmat" text format:
//   rows cols
//   re,im re,im ...      (one line per row, cols entries)
// Numbers are written with 17 significant digits so they round-trip.

std::string format_double(double x);
/// Parses the whole of `text` as a finite double; throws ParseError otherwise.
double parse_double(std::string_view text);

void write_cmat(std::ostream& out, const Matrix& m);
/// Reads one matrix block starting at the next non-blank line.
Matrix read_cmat(std::istream& in);

std::string to_cmat_string(const Matrix& m);
Matrix from_cmat_string(const std::string& text);

/// Reads a file holding exactly one matrix.
Matrix load_cmat(const std::filesystem::path& path);
void save_cmat(const std::filesystem::path& path, const Matrix& m);

/// Next line that is not empty or whitespace; false at end of stream.
bool next_content_line(std::istream& in, std::string& line);

}  // namespace cartan
