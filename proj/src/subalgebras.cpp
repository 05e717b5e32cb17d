#include "cartan/subalgebras.hpp"

#include <algorithm>
#include <cmath>

#include "cartan/errors.hpp"
#include "cartan/gates.hpp"
#include "cartan/kgd.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

namespace {

void require_qubits(std::size_t n_qubits, const char* op) {
  if (n_qubits < 3) {
    throw PreconditionError(std::string(op) + ": requires n >= 3 qubits, got " + std::to_string(n_qubits));
  }
}

// Real coordinates of a complex matrix: all real parts, then all imaginary parts.
std::vector<double> realify(const Matrix& m) {
  const auto d = m.data();
  std::vector<double> out(2 * d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    out[k] = d[k].real();
    out[d.size() + k] = d[k].imag();
  }
  return out;
}

// Orthonormal basis of the real span, as columns of a real-valued Matrix.
class SpanProjector {
 public:
  explicit SpanProjector(std::span<const Matrix> elements) {
    if (elements.empty()) return;
    const std::size_t len = 2 * elements.front().data().size();
    Matrix stacked(len, elements.size());
    for (std::size_t k = 0; k < elements.size(); ++k) {
      if (2 * elements[k].data().size() != len) throw PreconditionError("span: element shapes differ");
      const auto coords = realify(elements[k]);
      for (std::size_t i = 0; i < len; ++i) stacked(i, k) = coords[i];
    }
    q_ = qr(stacked).q;
  }

  double residual(const Matrix& x) const {
    std::vector<double> r = realify(x);
    if (q_.cols() == 0) return x.frobenius_norm();
    if (r.size() != q_.rows()) throw PreconditionError("span_residual: dimension mismatch");
    // Two passes of Gram-Schmidt against the basis columns.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < q_.cols(); ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < r.size(); ++i) dot += q_(i, k).real() * r[i];
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= dot * q_(i, k).real();
      }
    }
    double ss = 0.0;
    for (double v : r) ss += v * v;
    return std::sqrt(ss);
  }

 private:
  Matrix q_;
};

Matrix unit(std::size_t n, std::size_t i, std::size_t j) {
  Matrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

// Basis of 𝔰𝔲(m): antisymmetric real, symmetric imaginary, traceless diagonal.
std::vector<Matrix> su_basis(std::size_t m) {
  std::vector<Matrix> out;
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t q = p + 1; q < m; ++q) {
      out.push_back(unit(m, p, q) - unit(m, q, p));
      out.push_back(kI * (unit(m, p, q) + unit(m, q, p)));
    }
  }
  for (std::size_t p = 0; p + 1 < m; ++p) out.push_back(kI * (unit(m, p, p) - unit(m, p + 1, p + 1)));
  return out;
}

std::vector<Matrix> a_tilde_elements(std::size_t n_qubits) {
  const Matrix ix = kI * pauli(Pauli::X);
  const std::size_t middle = n_qubits - 3;
  std::vector<Matrix> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << middle); ++bits) {
    Matrix prefix = ix;
    for (std::size_t q = 0; q < middle; ++q) {
      const bool set = (bits >> (middle - 1 - q)) & 1;
      prefix = kron(prefix, pauli(set ? Pauli::X : Pauli::I));
    }
    for (Pauli p : {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z}) {
      out.push_back(kron(prefix, kron(pauli(p), pauli(p))));
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(SubalgebraKind kind) {
  switch (kind) {
    case SubalgebraKind::AAiii:
      return "A_AIII";
    case SubalgebraKind::ASwapped:
      return "A_SWAPPED";
    case SubalgebraKind::ATilde:
      return "A_TILDE";
    case SubalgebraKind::HN:
      return "H_N";
  }
  return "?";
}

SubalgebraKind parse_subalgebra_kind(std::string_view name) {
  for (SubalgebraKind k : {SubalgebraKind::AAiii, SubalgebraKind::ASwapped, SubalgebraKind::ATilde, SubalgebraKind::HN}) {
    if (to_string(k) == name) return k;
  }
  throw PreconditionError("unknown subalgebra kind '" + std::string(name) +
                          "' (expected A_AIII, A_SWAPPED, A_TILDE or H_N)");
}

SubalgebraBasis basis(SubalgebraKind kind, std::size_t n_qubits) {
  require_qubits(n_qubits, "basis");
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t half = dim / 2;
  SubalgebraBasis b{kind, n_qubits, {}};
  switch (kind) {
    case SubalgebraKind::AAiii:
      for (std::size_t j = 0; j < half; ++j) {
        Matrix e(dim, dim);
        e(j, j + half) = -1.0;
        e(j + half, j) = 1.0;
        b.elements.push_back(std::move(e));
      }
      break;
    case SubalgebraKind::ASwapped:
      for (std::size_t j = 0; j < half; ++j) {
        Matrix e(dim, dim);
        e(j, dim - 1 - j) = 1.0;
        e(dim - 1 - j, j) = -1.0;
        b.elements.push_back(swap_conjugate(n_qubits, e));
      }
      break;
    case SubalgebraKind::ATilde:
      b.elements = a_tilde_elements(n_qubits);
      break;
    case SubalgebraKind::HN:
      for (const Matrix& e : a_tilde_elements(n_qubits)) b.elements.push_back(swap_conjugate(n_qubits, e));
      break;
  }
  return b;
}

std::vector<Matrix> a_aiii_pauli_strings(std::size_t n_qubits) {
  require_qubits(n_qubits, "a_aiii_pauli_strings");
  const Matrix iy = kI * pauli(Pauli::Y);
  const std::size_t rest = n_qubits - 1;
  std::vector<Matrix> out;
  for (std::size_t bits = 0; bits < (std::size_t{1} << rest); ++bits) {
    Matrix e = iy;
    for (std::size_t q = 0; q < rest; ++q) {
      const bool set = (bits >> (rest - 1 - q)) & 1;
      e = kron(e, pauli(set ? Pauli::Z : Pauli::I));
    }
    out.push_back(std::move(e));
  }
  return out;
}

Matrix translation_matrix(std::size_t n_qubits) {
  require_qubits(n_qubits, "translation_matrix");
  const SpecialGates g = special_gates();
  return kron(kron(g.s, kron_power(g.h, n_qubits - 3)), g.e.adjoint());
}

SubalgebraBasis conjugate_basis(const Matrix& k, const SubalgebraBasis& b) {
  SubalgebraBasis out{b.kind, b.n_qubits, {}};
  const Matrix k_dag = k.adjoint();
  for (const Matrix& e : b.elements) {
    if (e.rows() != k.cols()) throw PreconditionError("conjugate_basis: dimension mismatch");
    out.elements.push_back(k * e * k_dag);
  }
  return out;
}

double span_residual(const Matrix& x, std::span<const Matrix> elements) {
  return SpanProjector(elements).residual(x);
}

double span_residual(const Matrix& x, const SubalgebraBasis& b) { return span_residual(x, b.elements); }

double subspace_equal(std::span<const Matrix> lhs, std::span<const Matrix> rhs) {
  const SpanProjector left(lhs);
  const SpanProjector right(rhs);
  double worst = 0.0;
  for (const Matrix& e : lhs) worst = std::max(worst, right.residual(e));
  for (const Matrix& e : rhs) worst = std::max(worst, left.residual(e));
  return worst;
}

double subspace_equal(const SubalgebraBasis& lhs, const SubalgebraBasis& rhs) {
  return subspace_equal(lhs.elements, rhs.elements);
}

double max_commutator(std::span<const Matrix> elements) {
  double worst = 0.0;
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      worst = std::max(worst, commutator(elements[i], elements[j]).frobenius_norm());
  return worst;
}

double gram_min_eigenvalue(std::span<const Matrix> elements) {
  if (elements.empty()) return 0.0;
  Matrix gram(elements.size(), elements.size());
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = 0; j < elements.size(); ++j) gram(i, j) = hs_inner(elements[i], elements[j]);
  // Singular values of a symmetric positive semidefinite matrix are its eigenvalues.
  return svd(gram).sigma.back();
}

std::vector<Matrix> k_aiii_generators(std::size_t n_qubits) {
  require_qubits(n_qubits, "k_aiii_generators");
  const std::size_t half = std::size_t{1} << (n_qubits - 1);
  const Matrix zero(half, half);
  std::vector<Matrix> out;
  for (const Matrix& x : su_basis(half)) {
    out.push_back(direct_sum(x, zero));
    out.push_back(direct_sum(zero, x));
  }
  out.push_back(kI * direct_sum(Matrix::identity(half), -Matrix::identity(half)));
  return out;
}

std::vector<Matrix> kgd_k_generators(std::size_t n_qubits) {
  require_qubits(n_qubits, "kgd_k_generators");
  const std::size_t half = std::size_t{1} << (n_qubits - 1);
  const Matrix z = pauli(Pauli::Z);
  const Matrix id = pauli(Pauli::I);
  std::vector<Matrix> out;
  for (const Matrix& x : su_basis(half)) {
    out.push_back(kron(x, z));
    out.push_back(kron(x, id));
  }
  out.push_back(kI * kron(Matrix::identity(half), z));
  return out;
}

}  // namespace cartan
