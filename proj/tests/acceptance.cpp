// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cli.hpp"
#include "cartan/cmat_io.hpp"
#include "cartan/csd.hpp"
#include "cartan/factor_io.hpp"
#include "cartan/gates.hpp"
#include "cartan/kgd.hpp"
#include "cartan/linalg.hpp"
#include "cartan/random.hpp"
#include "cartan/subalgebras.hpp"
#include "oracles.hpp"

using namespace cartan;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

// Collects named sub-checks; the criterion passes iff all of them do.
class Outcome {
 public:
  void check(const std::string& what, double residual, double bound) {
    worst_ = std::max(worst_, residual);
    if (!(residual <= bound)) {
      std::ostringstream msg;
      msg << what << " = " << residual << " > " << bound;
      failures_.push_back(msg.str());
    }
  }
  void expect(const std::string& what, bool ok) {
    if (!ok) failures_.push_back(what);
  }
  bool passed() const { return failures_.empty(); }
  double worst() const { return worst_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  double worst_ = 0.0;
  std::vector<std::string> failures_;
};

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> body;
};

void check_csd(Outcome& o, const std::string& label, const Matrix& v) {
  const CsdFactors f = csd(v);
  const CsdResiduals r = csd_residuals(v, f);
  o.check(label + " reconstruction", r.reconstruction, 1e-10);
  o.check(label + " unitarity", r.unitarity, 1e-11);
  o.expect(label + " theta order", r.theta_ordered);
}

Matrix special_block_diagonal(std::size_t half, std::uint64_t seed) {
  return project_to_special(direct_sum(haar_random_unitary(half, seed), haar_random_unitary(half, seed + 1))).v;
}

std::vector<double> uniform_angles(std::size_t m, double lo, double hi, Rng& rng) {
  std::vector<double> t(m);
  for (double& x : t) x = rng.uniform(lo, hi);
  return t;
}

void criterion_roundtrip(Outcome& o) {
  for (std::size_t n : {2, 4, 8, 16, 32, 64}) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      check_csd(o, "N=" + std::to_string(n) + " seed " + std::to_string(seed),
                haar_random_special_unitary(n, 1'000'000 * n + seed));
    }
  }
}

void criterion_degenerate(Outcome& o) {
  const std::vector<std::pair<std::string, std::vector<double>>> angle_sets = {
      {"repeated", {0.3, 0.3, 0.3, 0.3}},
      {"zeros", {0.0, 0.0, 0.0, 0.0}},
      {"right angles", {kHalfPi, kHalfPi, kHalfPi, kHalfPi}},
      {"mixed", {0.0, 0.0, 0.7, 0.7, kHalfPi, kHalfPi}},
      {"single", {0.0}},
  };
  for (const auto& [name, t] : angle_sets) check_csd(o, "Gamma " + name, cs_exp(t));
  for (std::size_t m : {1, 2, 4, 16}) {
    check_csd(o, "u+w m=" + std::to_string(m),
              direct_sum(haar_random_unitary(m, 10 + m), haar_random_unitary(m, 20 + m)));
    Matrix sine(2 * m, 2 * m);
    sine.set_block(0, m, -Matrix::identity(m));
    sine.set_block(m, 0, Matrix::identity(m));
    check_csd(o, "[[0,-I],[I,0]] m=" + std::to_string(m), sine);
  }
}

void criterion_swap_conjugation(Outcome& o) {
  Rng rng(3);
  for (std::size_t n : {3, 4, 5}) {
    const std::string tag = "n=" + std::to_string(n) + " ";
    const std::size_t half = std::size_t{1} << (n - 1);

    double item_a = 0.0;
    for (const Matrix& g : k_aiii_generators(n)) item_a = std::max(item_a, in_k_algebra(n, swap_conjugate(n, g)));
    o.check(tag + "(a) k-algebra", item_a, 1e-13);

    double item_b = 0.0;
    double item_d = 0.0;
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      item_b = std::max(item_b, in_k_group(n, swap_conjugate(n, special_block_diagonal(half, 50 * n + 2 * trial))));
      item_d = std::max(item_d, in_a_group(n, swap_conjugate(n, cs_exp(uniform_angles(half, -3.0, 3.0, rng)))));
    }
    o.check(tag + "(b) k-group", item_b, 1e-12);

    SubalgebraBasis pulled = basis(SubalgebraKind::ASwapped, n);
    for (Matrix& e : pulled.elements) e = swap_conjugate(n, e);
    o.check(tag + "(c) a-algebra", subspace_equal(pulled, basis(SubalgebraKind::AAiii, n)), 1e-12);

    o.check(tag + "(d) a-group", item_d, 1e-12);
  }
}

void criterion_kgd(Outcome& o) {
  const auto backward = [&](std::size_t n, int seeds) {
    for (int seed = 0; seed < seeds; ++seed) {
      const Matrix v = haar_random_special_unitary(std::size_t{1} << n, 2'000'000 + 1000 * n + seed);
      const KgdFactors f = kgd(n, v);
      const std::string tag = "n=" + std::to_string(n) + " seed " + std::to_string(seed);
      o.check(tag + " reconstruction", f.report.find("reconstruction")->residual, 1e-10);
      o.expect(tag + " membership report", f.report.passed());
    }
  };
  backward(3, 100);
  backward(4, 20);
  backward(5, 20);

  Rng rng(4);
  for (std::size_t n : {3, 4, 5}) {
    const std::size_t half = std::size_t{1} << (n - 1);
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
      const Matrix k1 = swap_conjugate(n, special_block_diagonal(half, 3'000'000 + 100 * n + 4 * trial));
      const Matrix a = swap_conjugate(n, cs_exp(uniform_angles(half, 0.0, kHalfPi, rng)));
      const Matrix k2 = swap_conjugate(n, special_block_diagonal(half, 3'000'000 + 100 * n + 4 * trial + 2));
      const Matrix v = k1 * a * k2;
      const std::string tag = "forward n=" + std::to_string(n) + " trial " + std::to_string(trial);
      o.expect(tag + " accepted", verify_kgd(n, v, k1, a, k2).passed());
      o.expect(tag + " re-decomposed", kgd(n, v).report.passed());
    }
  }
}

void criterion_identities(Outcome& o) {
  const SpecialGates g = special_gates();
  const Matrix x = pauli(Pauli::X);
  const Matrix y = pauli(Pauli::Y);
  const Matrix z = pauli(Pauli::Z);
  const Matrix i2 = Matrix::identity(2);
  const Matrix ed = g.e.adjoint();
  o.check("E'(XX)E = ZZ", (ed * kron(x, x) * g.e - kron(z, z)).max_abs(), 1e-14);
  o.check("E'(YY)E = -ZI", (ed * kron(y, y) * g.e + kron(z, i2)).max_abs(), 1e-14);
  o.check("E'(ZZ)E = IZ", (ed * kron(z, z) * g.e - kron(i2, z)).max_abs(), 1e-14);
  o.check("HZH = X", (g.h * z * g.h - x).max_abs(), 1e-14);
  o.check("S(iX)S' = iY", (g.s * (x * kI) * g.s.adjoint() - y * kI).max_abs(), 1e-14);
}

void criterion_translation(Outcome& o) {
  for (std::size_t n : {3, 4, 5}) {
    const SubalgebraBasis translated = conjugate_basis(translation_matrix(n), basis(SubalgebraKind::ATilde, n));
    o.check("n=" + std::to_string(n) + " translated span", subspace_equal(translated, basis(SubalgebraKind::AAiii, n)),
            1e-12);
  }
}

void criterion_commutativity(Outcome& o) {
  for (std::size_t n : {3, 4, 5}) {
    for (SubalgebraKind k :
         {SubalgebraKind::AAiii, SubalgebraKind::ASwapped, SubalgebraKind::ATilde, SubalgebraKind::HN}) {
      const SubalgebraBasis b = basis(k, n);
      const std::string tag = std::string(to_string(k)) + " n=" + std::to_string(n);
      o.expect(tag + " count", b.elements.size() == (std::size_t{1} << (n - 1)));
      o.check(tag + " commutator", max_commutator(b.elements), 1e-13);
    }
  }
}

void criterion_series(Outcome& o) {
  Rng rng(8);
  for (std::size_t m : {1, 2, 4, 8, 16}) {
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<double> t = uniform_angles(m, -std::numbers::pi, std::numbers::pi, rng);
      Matrix generator(2 * m, 2 * m);
      for (std::size_t j = 0; j < m; ++j) {
        generator(j, j + m) = -t[j];
        generator(j + m, j) = t[j];
      }
      o.check("N=" + std::to_string(2 * m), distance(cs_exp(t), oracle::series_exp(generator, 30)), 1e-12);
    }
  }
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void criterion_cli(Outcome& o) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "cartan_acceptance";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto p = [&](const char* name) { return (dir / name).string(); };
  const auto exit_is = [&](const std::string& what, const std::vector<std::string>& args, int expected) {
    const int code = cli_run(args).code;
    o.expect(what + " exit " + std::to_string(code) + " (want " + std::to_string(expected) + ")", code == expected);
  };

  save_cmat(p("id.cmat"), Matrix::identity(8));
  exit_is("csd identity", {"csd", p("id.cmat"), p("id.csd")}, cli::kPass);
  const CsdFactors id_factors = load_csd(p("id.csd"));
  o.expect("csd identity theta zero",
           std::all_of(id_factors.theta.begin(), id_factors.theta.end(), [](double t) { return t == 0.0; }));

  exit_is("random", {"random", "16", "--seed", "5", "--special", p("v.cmat")}, cli::kPass);
  exit_is("csd haar", {"csd", p("v.cmat"), p("v.csd")}, cli::kPass);

  Matrix skew = Matrix::identity(4);
  skew(0, 1) = 0.25;
  save_cmat(p("skew.cmat"), skew);
  exit_is("csd non-unitary", {"csd", p("skew.cmat"), p("skew.csd")}, cli::kPrecondition);

  exit_is("kgd identity", {"kgd", "3", p("id.cmat"), p("id.kgd")}, cli::kPass);
  const Matrix forward = swap_conjugate(3, special_block_diagonal(4, 1)) *
                         swap_conjugate(3, cs_exp(std::vector<double>{0.2, 0.4, 0.6, 0.8})) *
                         swap_conjugate(3, special_block_diagonal(4, 3));
  save_cmat(p("fwd.cmat"), forward);
  exit_is("kgd forward", {"kgd", "3", p("fwd.cmat"), p("fwd.kgd")}, cli::kPass);
  save_cmat(p("id4.cmat"), Matrix::identity(4));
  exit_is("kgd n=2", {"kgd", "2", p("id4.cmat"), p("id4.kgd")}, cli::kPrecondition);

  exit_is("verify eq9 3", {"verify", "eq9", "3"}, cli::kPass);
  exit_is("verify prop 3", {"verify", "prop", "3"}, cli::kPass);

  CsdFactors tampered = load_csd(p("v.csd"));
  tampered.u3(0, 0) += 1e-5;
  save_csd(p("tampered.csd"), tampered);
  exit_is("verify tampered csd-file", {"verify", "csd-file", p("v.cmat"), p("tampered.csd")}, cli::kVerificationFailed);

  exit_is("random a", {"random", "8", "--seed", "7", p("a.cmat")}, cli::kPass);
  exit_is("random b", {"random", "8", "--seed", "7", p("b.cmat")}, cli::kPass);
  o.expect("random determinism", slurp(p("a.cmat")) == slurp(p("b.cmat")) && !slurp(p("a.cmat")).empty());

  exit_is("basis A_TILDE 3", {"basis", "A_TILDE", "3", p("tilde.txt")}, cli::kPass);
  o.expect("basis A_TILDE 3 has 4 elements", load_basis(p("tilde.txt")).elements.size() == 4);

  exit_is("translate 3", {"translate", "3", p("k.cmat")}, cli::kPass);
  const Matrix k = load_cmat(p("k.cmat"));
  o.check("translate 3 unitarity", unitarity_residual(k), 1e-13);

  std::filesystem::remove_all(dir);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "CSD roundtrip on Haar special unitaries", criterion_roundtrip},
      {2, "CSD degeneracy suite", criterion_degenerate},
      {3, "SWAP conjugation of k, K, a and A", criterion_swap_conjugation},
      {4, "KGD and CSD equivalence", criterion_kgd},
      {5, "exact gate identities", criterion_identities},
      {6, "translation of A_TILDE onto A_AIII", criterion_translation},
      {7, "subalgebra dimension and commutativity", criterion_commutativity},
      {8, "cs_exp against the power series", criterion_series},
      {9, "CLI exit codes and determinism", criterion_cli},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(outcome);
    } catch (const std::exception& e) {
      outcome.expect(std::string("exception: ") + e.what(), false);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::printf("[%s] %d %s: worst %.3g, %.2f s", outcome.passed() ? "PASS" : "FAIL", c.id, c.title, outcome.worst(),
                seconds);
    if (!outcome.passed()) {
      ++failed;
      const auto& f = outcome.failures();
      std::printf("; %zu failing: %s", f.size(), f.front().c_str());
      for (std::size_t i = 1; i < std::min<std::size_t>(f.size(), 4); ++i) std::printf(" | %s", f[i].c_str());
      if (f.size() > 4) std::printf(" | ...");
    }
    std::printf("\n");
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
