#include "cartan/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "cartan/cmat_io.hpp"
#include "cartan/csd.hpp"
#include "cartan/errors.hpp"
#include "cartan/factor_io.hpp"
#include "cartan/kgd.hpp"
#include "cartan/linalg.hpp"
#include "cartan/random.hpp"
#include "cartan/subalgebras.hpp"

namespace cartan::cli {

namespace {

struct Settings {
  std::optional<double> tol;
  bool quiet = false;
  std::ostream* out = nullptr;

  double gate(double fallback) const { return tol.value_or(fallback); }
  std::ostream& detail() const {
    static std::ostream null_stream(nullptr);
    return quiet ? null_stream : *out;
  }
};

void print_report(const Settings& s, const VerificationReport& report) {
  for (const ReportEntry& e : report.entries()) {
    s.detail() << e.name << ' ' << format_double(e.residual) << ' ' << format_double(e.tolerance) << ' '
               << (e.passed() ? "pass" : "fail") << '\n';
  }
}

int finish(const Settings& s, const VerificationReport& report) {
  print_report(s, report);
  const bool ok = report.passed();
  *s.out << "RESULT " << (ok ? "pass" : "fail") << ' ' << format_double(report.worst_residual()) << '\n';
  return ok ? kPass : kVerificationFailed;
}

void add_csd_checks(VerificationReport& report, const Settings& s, const Matrix& v, const CsdFactors& f) {
  const CsdResiduals r = csd_residuals(v, f);
  report.add("reconstruction", r.reconstruction, s.gate(1e-10));
  report.add("unitarity", r.unitarity, s.gate(1e-11));
  report.add("determinant", r.determinant, s.gate(1e-9));
  report.add("theta_order", r.theta_ordered ? 0.0 : 1.0, 0.0);
}

int cmd_csd(const Settings& s, const std::string& input, const std::string& output) {
  const Matrix v = load_cmat(input);
  CsdOptions options;
  options.unitarity_tol = s.gate(options.unitarity_tol);
  const CsdFactors f = csd(v, options);
  save_csd(output, f);
  s.detail() << "theta";
  for (double t : f.theta) s.detail() << ' ' << format_double(t);
  s.detail() << '\n';
  VerificationReport report;
  add_csd_checks(report, s, v, f);
  return finish(s, report);
}

int cmd_kgd(const Settings& s, std::size_t n, const std::string& input, const std::string& output) {
  if (n < 3) throw PreconditionError("kgd: requires n >= 3 qubits, got " + std::to_string(n));
  const Matrix v = load_cmat(input);
  const KgdFactors f = kgd(n, v, s.gate(kDefaultMembershipTol));
  save_kgd(output, f);
  return finish(s, f.report);
}

int cmd_verify_csd_file(const Settings& s, const std::vector<std::string>& args) {
  if (args.size() != 2) throw PreconditionError("verify csd-file: expected <original.cmat> <factors.csd>");
  const Matrix v = load_cmat(args[0]);
  const CsdFactors f = load_csd(args[1]);
  if (2 * f.half() != v.rows() || !v.is_square()) throw PreconditionError("verify csd-file: dimensions disagree");
  VerificationReport report;
  add_csd_checks(report, s, v, f);
  return finish(s, report);
}

int cmd_verify_kgd_file(const Settings& s, const std::vector<std::string>& args) {
  if (args.size() != 2) throw PreconditionError("verify kgd-file: expected <original.cmat> <factors.kgd>");
  const Matrix v = load_cmat(args[0]);
  const KgdFactors f = load_kgd(args[1]);
  if (!v.is_square() || v.rows() != f.k1.rows()) throw PreconditionError("verify kgd-file: dimensions disagree");
  const std::size_t n = qubits_for_dimension(v.rows());
  return finish(s, verify_kgd(n, v, f.k1, f.a, f.k2, s.gate(kDefaultMembershipTol)));
}

std::size_t parse_qubits(const std::vector<std::string>& args, const char* verb) {
  if (args.size() != 1) throw PreconditionError(std::string("verify ") + verb + ": expected <n>");
  std::size_t pos = 0;
  unsigned long n = 0;
  try {
    n = std::stoul(args[0], &pos);
  } catch (const std::logic_error&) {
    pos = 0;
  }
  if (pos == 0 || pos != args[0].size()) throw ParseError("invalid qubit count '" + args[0] + "'");
  if (n < 3 || n > 10) throw PreconditionError("qubit count must be in [3, 10], got " + args[0]);
  return n;
}

int cmd_verify_eq9(const Settings& s, const std::vector<std::string>& args) {
  const std::size_t n = parse_qubits(args, "eq9");
  const Matrix k = translation_matrix(n);
  const SubalgebraBasis translated = conjugate_basis(k, basis(SubalgebraKind::ATilde, n));
  const SubalgebraBasis target = basis(SubalgebraKind::AAiii, n);
  const std::vector<Matrix> pauli_form = a_aiii_pauli_strings(n);
  VerificationReport report;
  report.add("translation_unitarity", unitarity_residual(k), s.gate(1e-13));
  report.add("translation_offblock", off_block_norm(k), s.gate(1e-13));
  report.add("translated_span", subspace_equal(translated, target), s.gate(1e-12));
  report.add("pauli_presentation_span", subspace_equal(pauli_form, target.elements), s.gate(1e-12));
  return finish(s, report);
}

int cmd_verify_prop(const Settings& s, const std::vector<std::string>& args, std::uint64_t seed) {
  const std::size_t n = parse_qubits(args, "prop");
  const std::size_t dim = std::size_t{1} << n;
  const std::size_t half = dim / 2;
  VerificationReport report;

  double item1 = 0.0;
  for (const Matrix& g : k_aiii_generators(n)) item1 = std::max(item1, in_k_algebra(n, swap_conjugate(n, g)));
  for (const Matrix& g : kgd_k_generators(n)) item1 = std::max(item1, in_k_algebra(n, g));
  report.add("item1_k_algebra", item1, s.gate(1e-13));

  Rng rng(seed);
  double item2 = 0.0;
  double item4 = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix u = haar_random_special_unitary(half, seed + 101 * trial + 1);
    const Matrix w = haar_random_special_unitary(half, seed + 101 * trial + 2);
    item2 = std::max(item2, in_k_group(n, swap_conjugate(n, direct_sum(u, w))));
    std::vector<double> t(half);
    for (double& x : t) x = rng.uniform(-3.0, 3.0);
    item4 = std::max(item4, in_a_group(n, swap_conjugate(n, cs_exp(t))));
  }
  report.add("item2_k_group", item2, s.gate(1e-12));

  SubalgebraBasis pulled = basis(SubalgebraKind::ASwapped, n);
  for (Matrix& e : pulled.elements) e = swap_conjugate(n, e);
  report.add("item3_a_algebra", subspace_equal(pulled, basis(SubalgebraKind::AAiii, n)), s.gate(1e-12));
  report.add("item4_a_group", item4, s.gate(1e-12));
  return finish(s, report);
}

int cmd_random(const Settings& s, std::size_t dim, std::uint64_t seed, bool special, const std::string& output) {
  if (dim == 0 || dim > 4096) throw PreconditionError("random: dimension must be in [1, 4096]");
  const Matrix u = special ? haar_random_special_unitary(dim, seed) : haar_random_unitary(dim, seed);
  save_cmat(output, u);
  VerificationReport report;
  report.add("unitarity", unitarity_residual(u), s.gate(1e-12));
  if (special) report.add("determinant", std::abs(det(u) - 1.0), s.gate(1e-10));
  return finish(s, report);
}

int cmd_basis(const Settings& s, const std::string& kind, std::size_t n, const std::string& output) {
  if (n > 10) throw PreconditionError("basis: qubit count must be at most 10");
  const SubalgebraBasis b = basis(parse_subalgebra_kind(kind), n);
  save_basis(output, b);
  s.detail() << "elements " << b.elements.size() << '\n';
  VerificationReport report;
  double anti = 0.0;
  for (const Matrix& e : b.elements) anti = std::max(anti, anti_hermitian_residual(e));
  report.add("anti_hermitian", anti, s.gate(1e-13));
  report.add("commutator", max_commutator(b.elements), s.gate(1e-13));
  return finish(s, report);
}

int cmd_translate(const Settings& s, std::size_t n, const std::string& output) {
  if (n > 10) throw PreconditionError("translate: qubit count must be at most 10");
  const Matrix k = translation_matrix(n);
  save_cmat(output, k);
  VerificationReport report;
  report.add("unitarity", unitarity_residual(k), s.gate(1e-13));
  return finish(s, report);
}

int fail_with(std::ostream& out, std::ostream& err, int code, const std::string& message) {
  err << "error: " << message << '\n';
  out << "RESULT fail nan\n";
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cosine-sine and Khaneja-Glaser decompositions of unitaries", "cartan"};
  app.require_subcommand(1);
  // Set before the subcommands are added so they inherit it.
  app.fallthrough();
  Settings settings;
  settings.out = &out;
  double tol_value = 0.0;
  auto* tol_opt = app.add_option("--tol", tol_value, "Override every pass/fail tolerance");
  app.add_flag("--quiet", settings.quiet, "Print only the RESULT line");

  std::string input;
  std::string output;
  std::size_t n_qubits = 0;

  auto* csd_cmd = app.add_subcommand("csd", "Cosine-sine decomposition of a .cmat unitary");
  csd_cmd->add_option("input", input, "Input .cmat")->required();
  csd_cmd->add_option("output", output, "Output .csd")->required();

  auto* kgd_cmd = app.add_subcommand("kgd", "Khaneja-Glaser decomposition of an SU(2^n) matrix");
  kgd_cmd->add_option("n", n_qubits, "Qubit count")->required();
  kgd_cmd->add_option("input", input, "Input .cmat")->required();
  kgd_cmd->add_option("output", output, "Output .kgd")->required();

  std::string verify_kind;
  std::vector<std::string> verify_args;
  std::uint64_t seed = 1;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check factor files or the algebraic identities");
  verify_cmd->add_option("kind", verify_kind, "csd-file | kgd-file | eq9 | prop")
      ->required()
      ->check(CLI::IsMember({"csd-file", "kgd-file", "eq9", "prop"}));
  verify_cmd->add_option("args", verify_args, "Arguments for the chosen kind");
  verify_cmd->add_option("--seed", seed, "Seed for randomized checks (prop)");

  std::size_t dim = 0;
  std::uint64_t random_seed = 0;
  bool special = false;
  auto* random_cmd = app.add_subcommand("random", "Write a Haar-random unitary");
  random_cmd->add_option("dim", dim, "Matrix dimension")->required();
  random_cmd->add_option("output", output, "Output .cmat")->required();
  random_cmd->add_option("--seed", random_seed, "64-bit seed")->required();
  random_cmd->add_flag("--special", special, "Rescale into SU(N)");

  std::string kind;
  auto* basis_cmd = app.add_subcommand("basis", "Write a commutative subalgebra basis");
  basis_cmd->add_option("kind", kind, "A_AIII | A_SWAPPED | A_TILDE | H_N")->required();
  basis_cmd->add_option("n", n_qubits, "Qubit count")->required();
  basis_cmd->add_option("output", output, "Output file")->required();

  auto* translate_cmd = app.add_subcommand("translate", "Write the subalgebra translation matrix");
  translate_cmd->add_option("n", n_qubits, "Qubit count")->required();
  translate_cmd->add_option("output", output, "Output .cmat")->required();


  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    out << "RESULT pass 0\n";
    return kPass;
  } catch (const CLI::ParseError& e) {
    return fail_with(out, err, kParseError, e.what());
  }
  if (*tol_opt) {
    if (!(tol_value >= 0.0) || !std::isfinite(tol_value)) {
      return fail_with(out, err, kParseError, "--tol must be a finite nonnegative number");
    }
    settings.tol = tol_value;
  }

  try {
    if (*csd_cmd) return cmd_csd(settings, input, output);
    if (*kgd_cmd) return cmd_kgd(settings, n_qubits, input, output);
    if (*verify_cmd) {
      if (verify_kind == "csd-file") return cmd_verify_csd_file(settings, verify_args);
      if (verify_kind == "kgd-file") return cmd_verify_kgd_file(settings, verify_args);
      if (verify_kind == "eq9") return cmd_verify_eq9(settings, verify_args);
      return cmd_verify_prop(settings, verify_args, seed);
    }
    if (*random_cmd) return cmd_random(settings, dim, random_seed, special, output);
    if (*basis_cmd) return cmd_basis(settings, kind, n_qubits, output);
    if (*translate_cmd) return cmd_translate(settings, n_qubits, output);
  } catch (const ParseError& e) {
    return fail_with(out, err, kParseError, e.what());
  } catch (const PreconditionError& e) {
    return fail_with(out, err, kPrecondition, e.what());
  } catch (const NumericalError& e) {
    return fail_with(out, err, kNumericalFailure, e.what());
  } catch (const Error& e) {
    return fail_with(out, err, kParseError, e.what());
  }
  return fail_with(out, err, kParseError, "no command given");
}

}  // namespace cartan::cli
