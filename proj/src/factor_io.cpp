#include "cartan/factor_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cmat_io.hpp"
#include "cartan/errors.hpp"

namespace cartan {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

void expect_section(std::istream& in, const std::string& name) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("missing section " + name);
  if (trim(line) != name) throw ParseError("expected section " + name + ", found '" + trim(line) + "'");
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::size_t parse_count(const std::string& token) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(token, &pos);
    if (pos != token.size()) throw ParseError("invalid count '" + token + "'");
    return static_cast<std::size_t>(v);
  } catch (const std::logic_error&) {
    throw ParseError("invalid count '" + token + "'");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

}  // namespace

void write_csd(std::ostream& out, const CsdFactors& f) {
  out << "U1\n";
  write_cmat(out, f.u1);
  out << "U2\n";
  write_cmat(out, f.u2);
  out << "THETA\n";
  for (std::size_t j = 0; j < f.theta.size(); ++j) out << (j ? " " : "") << format_double(f.theta[j]);
  out << '\n';
  out << "U3\n";
  write_cmat(out, f.u3);
  out << "U4\n";
  write_cmat(out, f.u4);
}

CsdFactors read_csd(std::istream& in) {
  CsdFactors f;
  expect_section(in, "U1");
  f.u1 = read_cmat(in);
  expect_section(in, "U2");
  f.u2 = read_cmat(in);
  expect_section(in, "THETA");
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("csd: missing theta line");
  for (const std::string& t : tokens(line)) f.theta.push_back(parse_double(t));
  expect_section(in, "U3");
  f.u3 = read_cmat(in);
  expect_section(in, "U4");
  f.u4 = read_cmat(in);
  const std::size_t m = f.theta.size();
  for (const Matrix* u : {&f.u1, &f.u2, &f.u3, &f.u4}) {
    if (u->rows() != m || u->cols() != m) {
      throw ParseError("csd: factor is " + std::to_string(u->rows()) + "x" + std::to_string(u->cols()) +
                       " but THETA has " + std::to_string(m) + " angles");
    }
  }
  return f;
}

void write_kgd(std::ostream& out, const KgdFactors& f) {
  out << "K1\n";
  write_cmat(out, f.k1);
  out << "A\n";
  write_cmat(out, f.a);
  out << "K2\n";
  write_cmat(out, f.k2);
  out << "REPORT\n";
  for (const ReportEntry& e : f.report.entries()) {
    out << e.name << ' ' << format_double(e.residual) << ' ' << format_double(e.tolerance) << ' '
        << (e.passed() ? "pass" : "fail") << '\n';
  }
}

KgdFactors read_kgd(std::istream& in) {
  KgdFactors f;
  expect_section(in, "K1");
  f.k1 = read_cmat(in);
  expect_section(in, "A");
  f.a = read_cmat(in);
  expect_section(in, "K2");
  f.k2 = read_cmat(in);
  if (f.k1.rows() != f.a.rows() || f.k2.rows() != f.a.rows() || !f.a.is_square() || !f.k1.is_square() ||
      !f.k2.is_square()) {
    throw ParseError("kgd: factor dimensions disagree");
  }
  expect_section(in, "REPORT");
  std::string line;
  while (next_content_line(in, line)) {
    const auto t = tokens(line);
    if (t.size() != 4 || (t[3] != "pass" && t[3] != "fail")) {
      throw ParseError("kgd: malformed report line '" + trim(line) + "'");
    }
    f.report.add(t[0], parse_double(t[1]), parse_double(t[2]));
  }
  return f;
}

void write_basis(std::ostream& out, const SubalgebraBasis& b) {
  out << "BASIS " << to_string(b.kind) << ' ' << b.n_qubits << ' ' << b.elements.size() << '\n';
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    out << "ELEMENT " << i << '\n';
    write_cmat(out, b.elements[i]);
  }
}

SubalgebraBasis read_basis(std::istream& in) {
  std::string line;
  if (!next_content_line(in, line)) throw ParseError("basis: missing header");
  const auto head = tokens(line);
  if (head.size() != 4 || head[0] != "BASIS") throw ParseError("basis: header must be 'BASIS kind n count'");
  SubalgebraBasis b{SubalgebraKind::AAiii, parse_count(head[2]), {}};
  try {
    b.kind = parse_subalgebra_kind(head[1]);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  const std::size_t count = parse_count(head[3]);
  for (std::size_t i = 0; i < count; ++i) {
    expect_section(in, "ELEMENT " + std::to_string(i));
    b.elements.push_back(read_cmat(in));
  }
  return b;
}

void save_csd(const std::filesystem::path& path, const CsdFactors& f) {
  auto out = open_output(path);
  write_csd(out, f);
}

CsdFactors load_csd(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_csd(in);
}

void save_kgd(const std::filesystem::path& path, const KgdFactors& f) {
  auto out = open_output(path);
  write_kgd(out, f);
}

KgdFactors load_kgd(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_kgd(in);
}

void save_basis(const std::filesystem::path& path, const SubalgebraBasis& b) {
  auto out = open_output(path);
  write_basis(out, b);
}

SubalgebraBasis load_basis(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_basis(in);
}

}  // namespace cartan
