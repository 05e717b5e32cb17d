#include "cartan/cmat_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t parse_dimension(std::string_view token) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size() || value == 0) {
    throw ParseError("cmat: invalid dimension '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

double parse_double(std::string_view text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || first == last || !std::isfinite(value)) {
    throw ParseError("invalid number '" + std::string(text) + "'");
  }
  return value;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

void write_cmat(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j).real()) << ',' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

Matrix read_cmat(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("cmat: missing header line");
  const auto header = split_ws(line);
  if (header.size() != 2) throw ParseError("cmat: header must be 'rows cols', got '" + line + "'");
  const std::size_t rows = parse_dimension(header[0]);
  const std::size_t cols = parse_dimension(header[1]);

  std::vector<Complex> data;
  data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!next_content_line(in, line)) {
      throw ParseError("cmat: expected " + std::to_string(rows) + " rows, found " + std::to_string(i));
    }
    const auto tokens = split_ws(line);
    if (tokens.size() != cols) {
      throw ParseError("cmat: row " + std::to_string(i) + " has " + std::to_string(tokens.size()) +
                       " entries, expected " + std::to_string(cols));
    }
    for (std::string_view tok : tokens) {
      const auto comma = tok.find(',');
      if (comma == std::string_view::npos) throw ParseError("cmat: entry '" + std::string(tok) + "' is not re,im");
      const double re = parse_double(tok.substr(0, comma));
      const double im = parse_double(tok.substr(comma + 1));
      data.emplace_back(re, im);
    }
  }
  try {
    return Matrix(rows, cols, std::move(data));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("cmat: ") + e.what());
  }
}

std::string to_cmat_string(const Matrix& m) {
  std::ostringstream out;
  write_cmat(out, m);
  return out.str();
}

Matrix from_cmat_string(const std::string& text) {
  std::istringstream in(text);
  Matrix m = read_cmat(in);
  std::string rest;
  if (next_content_line(in, rest)) throw ParseError("cmat: trailing content after matrix");
  return m;
}

Matrix load_cmat(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  Matrix m = read_cmat(in);
  std::string rest;
  if (next_content_line(in, rest)) throw ParseError("cmat: trailing content after matrix in " + path.string());
  return m;
}

void save_cmat(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_cmat(out, m);
}

}  // namespace cartan
