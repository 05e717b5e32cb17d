#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sys/wait.h>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cartan/cli.hpp"
#include "cartan/cmat_io.hpp"
#include "cartan/csd.hpp"
#include "cartan/factor_io.hpp"
#include "cartan/kgd.hpp"
#include "cartan/linalg.hpp"
#include "cartan/random.hpp"

using namespace cartan;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string last_line(const std::string& text) {
  const std::size_t end = text.find_last_not_of('\n');
  if (end == std::string::npos) return "";
  const std::size_t start = text.rfind('\n', end);
  return text.substr(start == std::string::npos ? 0 : start + 1, end - (start == std::string::npos ? 0 : start + 1) + 1);
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class Scratch {
 public:
  Scratch() {
    static int counter = 0;
    dir_ = std::filesystem::temp_directory_path() / ("cartan_test_cli_" + std::to_string(counter++));
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  ~Scratch() { std::filesystem::remove_all(dir_); }
  std::string operator()(const std::string& name) const { return (dir_ / name).string(); }

 private:
  std::filesystem::path dir_;
};

}  // namespace

TEST_CASE("csd verb on the identity") {
  Scratch tmp;
  save_cmat(tmp("id.cmat"), Matrix::identity(8));
  const Outcome r = run_cli({"csd", tmp("id.cmat"), tmp("id.csd")});
  CHECK(r.code == cli::kPass);
  CHECK(last_line(r.out) == "RESULT pass 0");
  CHECK(r.out.find("theta 0 0 0 0\n") != std::string::npos);
  const CsdFactors f = load_csd(tmp("id.csd"));
  for (double t : f.theta) CHECK(t == 0.0);
}

TEST_CASE("random then csd pipeline") {
  Scratch tmp;
  Outcome r = run_cli({"random", "16", "--seed", "11", "--special", tmp("v.cmat")});
  CHECK(r.code == cli::kPass);
  r = run_cli({"csd", tmp("v.cmat"), tmp("v.csd")});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("reconstruction ") != std::string::npos);
  const std::string result = last_line(r.out);
  REQUIRE(result.rfind("RESULT pass ", 0) == 0);
  CHECK(parse_double(result.substr(12)) <= 1e-10);

  r = run_cli({"verify", "csd-file", tmp("v.cmat"), tmp("v.csd")});
  CHECK(r.code == cli::kPass);
}

TEST_CASE("csd verb rejects non-unitary and odd input") {
  Scratch tmp;
  Matrix m = Matrix::identity(4);
  m(0, 1) = 0.5;
  save_cmat(tmp("bad.cmat"), m);
  Outcome r = run_cli({"csd", tmp("bad.cmat"), tmp("bad.csd")});
  CHECK(r.code == cli::kPrecondition);
  CHECK(r.err.find("unitarity residual") != std::string::npos);
  CHECK(last_line(r.out) == "RESULT fail nan");
  CHECK_FALSE(std::filesystem::exists(tmp("bad.csd")));

  save_cmat(tmp("odd.cmat"), Matrix::identity(3));
  r = run_cli({"csd", tmp("odd.cmat"), tmp("odd.csd")});
  CHECK(r.code == cli::kPrecondition);

  // A loose --tol admits the same input.
  m(0, 1) = 1e-7;
  save_cmat(tmp("near.cmat"), m);
  CHECK(run_cli({"csd", tmp("near.cmat"), tmp("near.csd")}).code == cli::kPrecondition);
  CHECK(run_cli({"--tol", "1e-5", "csd", tmp("near.cmat"), tmp("near.csd")}).code == cli::kPass);
}

TEST_CASE("parse errors exit 2") {
  Scratch tmp;
  std::ofstream(tmp("junk.cmat")) << "2 2\n1,0 0,0\nnot,numbers here\n";
  CHECK(run_cli({"csd", tmp("junk.cmat"), tmp("junk.csd")}).code == cli::kParseError);
  CHECK(run_cli({"csd", tmp("missing.cmat"), tmp("x.csd")}).code == cli::kParseError);
  CHECK(run_cli({}).code == cli::kParseError);
  CHECK(run_cli({"frobnicate"}).code == cli::kParseError);
  CHECK(run_cli({"csd", tmp("only-one-arg")}).code == cli::kParseError);
  CHECK(run_cli({"random", "8", tmp("r.cmat")}).code == cli::kParseError);
  CHECK(run_cli({"--tol", "-1", "translate", "3", tmp("t.cmat")}).code == cli::kParseError);
  CHECK(run_cli({"verify", "nonsense", "3"}).code == cli::kParseError);
  CHECK(run_cli({"verify", "eq9", "three"}).code == cli::kParseError);
  const Outcome r = run_cli({"kgd", "x", tmp("a"), tmp("b")});
  CHECK(r.code == cli::kParseError);
  CHECK(last_line(r.out) == "RESULT fail nan");
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("kgd verb") {
  Scratch tmp;
  save_cmat(tmp("id.cmat"), Matrix::identity(8));
  CHECK(run_cli({"kgd", "3", tmp("id.cmat"), tmp("id.kgd")}).code == cli::kPass);

  save_cmat(tmp("id4.cmat"), Matrix::identity(4));
  CHECK(run_cli({"kgd", "2", tmp("id4.cmat"), tmp("id4.kgd")}).code == cli::kPrecondition);
  CHECK(run_cli({"kgd", "4", tmp("id.cmat"), tmp("x.kgd")}).code == cli::kPrecondition);

  // Forward-constructed product.
  const std::size_t n = 4;
  const Matrix k1 = swap_conjugate(
      n, project_to_special(direct_sum(haar_random_unitary(8, 1), haar_random_unitary(8, 2))).v);
  const Matrix k2 = swap_conjugate(
      n, project_to_special(direct_sum(haar_random_unitary(8, 3), haar_random_unitary(8, 4))).v);
  const Matrix a = swap_conjugate(n, cs_exp(std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8}));
  save_cmat(tmp("v.cmat"), k1 * a * k2);
  const Outcome r = run_cli({"kgd", "4", tmp("v.cmat"), tmp("v.kgd")});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.find("offblock_k1 ") != std::string::npos);
  CHECK(run_cli({"verify", "kgd-file", tmp("v.cmat"), tmp("v.kgd")}).code == cli::kPass);

  KgdFactors f = load_kgd(tmp("v.kgd"));
  f.a(0, 0) += 1e-4;
  save_kgd(tmp("tampered.kgd"), f);
  CHECK(run_cli({"verify", "kgd-file", tmp("v.cmat"), tmp("tampered.kgd")}).code == cli::kVerificationFailed);
}

TEST_CASE("verify csd-file detects tampering") {
  Scratch tmp;
  CHECK(run_cli({"random", "8", "--seed", "3", tmp("v.cmat")}).code == cli::kPass);
  CHECK(run_cli({"csd", tmp("v.cmat"), tmp("v.csd")}).code == cli::kPass);
  CsdFactors f = load_csd(tmp("v.csd"));
  f.u2(1, 2) += 1e-6;
  save_csd(tmp("tampered.csd"), f);
  const Outcome r = run_cli({"verify", "csd-file", tmp("v.cmat"), tmp("tampered.csd")});
  CHECK(r.code == cli::kVerificationFailed);
  CHECK(r.out.find("reconstruction ") != std::string::npos);
  CHECK(last_line(r.out).rfind("RESULT fail ", 0) == 0);

  f = load_csd(tmp("v.csd"));
  f.theta = {0.4, 0.3, 0.2, 0.1};
  save_csd(tmp("unordered.csd"), f);
  CHECK(run_cli({"verify", "csd-file", tmp("v.cmat"), tmp("unordered.csd")}).code == cli::kVerificationFailed);

  CHECK(run_cli({"verify", "csd-file", tmp("v.cmat")}).code == cli::kPrecondition);
}

TEST_CASE("verify eq9") {
  for (const char* n : {"3", "4", "5"}) {
    const Outcome r = run_cli({"verify", "eq9", n});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("translated_span ") != std::string::npos);
  }
  CHECK(run_cli({"verify", "eq9", "2"}).code == cli::kPrecondition);
}

TEST_CASE("verify prop prints every item") {
  const Outcome r = run_cli({"verify", "prop", "3", "--seed", "5"});
  for (const char* item : {"item1_k_algebra ", "item2_k_group ", "item3_a_algebra ", "item4_a_group "}) {
    CHECK(r.out.find(item) != std::string::npos);
  }
  CHECK(r.out.find("item1_k_algebra") < r.out.find("item4_a_group"));
  CHECK(run_cli({"verify", "prop", "3", "--seed", "5"}).out == r.out);
}

TEST_CASE("random is deterministic") {
  Scratch tmp;
  CHECK(run_cli({"random", "8", "--seed", "7", tmp("a.cmat")}).code == cli::kPass);
  CHECK(run_cli({"random", "8", "--seed", "7", tmp("b.cmat")}).code == cli::kPass);
  CHECK(run_cli({"random", "8", "--seed", "8", tmp("c.cmat")}).code == cli::kPass);
  CHECK(slurp(tmp("a.cmat")) == slurp(tmp("b.cmat")));
  CHECK(slurp(tmp("a.cmat")) != slurp(tmp("c.cmat")));
  CHECK(load_cmat(tmp("a.cmat")) == haar_random_unitary(8, 7));

  CHECK(run_cli({"random", "4", "--seed", "7", "--special", tmp("s.cmat")}).code == cli::kPass);
  CHECK(std::abs(det(load_cmat(tmp("s.cmat"))) - 1.0) <= 1e-12);
  CHECK(run_cli({"random", "0", "--seed", "1", tmp("z.cmat")}).code == cli::kPrecondition);
}

TEST_CASE("basis and translate verbs") {
  Scratch tmp;
  Outcome r = run_cli({"basis", "A_TILDE", "3", tmp("b.txt")});
  CHECK(r.code == cli::kPass);
  CHECK(load_basis(tmp("b.txt")).elements.size() == 4);
  CHECK(run_cli({"basis", "H_N", "4", tmp("h.txt")}).code == cli::kPass);
  CHECK(run_cli({"basis", "A_NOPE", "3", tmp("x.txt")}).code == cli::kPrecondition);
  CHECK(run_cli({"basis", "A_AIII", "2", tmp("x.txt")}).code == cli::kPrecondition);

  r = run_cli({"translate", "3", tmp("k.cmat")});
  CHECK(r.code == cli::kPass);
  const Matrix k = load_cmat(tmp("k.cmat"));
  CHECK(k.rows() == 8);
  CHECK(unitarity_residual(k) <= 1e-13);
  CHECK(r.out.find("unitarity ") != std::string::npos);
}

TEST_CASE("quiet prints only the result line") {
  Scratch tmp;
  const Outcome r = run_cli({"--quiet", "translate", "3", tmp("k.cmat")});
  CHECK(r.code == cli::kPass);
  CHECK(r.out.rfind("RESULT pass ", 0) == 0);
  CHECK(r.out.find('\n') == r.out.size() - 1);
  // Global flags also accepted after the verb.
  const Outcome late = run_cli({"translate", "3", tmp("k.cmat"), "--quiet"});
  CHECK(late.out == r.out);
}

TEST_CASE("a loose tolerance turns a failing gate into a pass") {
  Scratch tmp;
  CHECK(run_cli({"random", "8", "--seed", "3", tmp("v.cmat")}).code == cli::kPass);
  CHECK(run_cli({"csd", tmp("v.cmat"), tmp("v.csd")}).code == cli::kPass);
  CsdFactors f = load_csd(tmp("v.csd"));
  f.u1(0, 0) += 1e-9;
  save_csd(tmp("t.csd"), f);
  CHECK(run_cli({"verify", "csd-file", tmp("v.cmat"), tmp("t.csd")}).code == cli::kVerificationFailed);
  CHECK(run_cli({"--tol", "1e-6", "verify", "csd-file", tmp("v.cmat"), tmp("t.csd")}).code == cli::kPass);
}

TEST_CASE("installed executable") {
  const char* exe = std::getenv("CARTAN_CLI");
  if (exe == nullptr) {
    MESSAGE("CARTAN_CLI not set; skipping subprocess check");
    return;
  }
  Scratch tmp;
  const std::string log = tmp("log.txt");
  const auto shell = [&](const std::string& args) {
    const int status = std::system(("\"" + std::string(exe) + "\" " + args + " > \"" + log + "\" 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(shell("translate 3 \"" + tmp("k.cmat") + "\"") == 0);
  CHECK(last_line(slurp(log)).rfind("RESULT pass ", 0) == 0);
  CHECK(shell("kgd 2 \"" + tmp("k.cmat") + "\" \"" + tmp("k.kgd") + "\"") == 3);
  CHECK(shell("bogus") == 2);
}
