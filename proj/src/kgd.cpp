#include "cartan/kgd.hpp"

#include <algorithm>
#include <sstream>

#include "cartan/errors.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

SwapPermutation::SwapPermutation(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 2 || n_qubits > 30) {
    throw PreconditionError("SwapPermutation: qubit count " + std::to_string(n_qubits) + " outside [2, 30]");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  const std::size_t top = std::size_t{1} << (n_qubits - 1);
  index_map_.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const bool first = (i & top) != 0;
    const bool last = (i & 1) != 0;
    std::size_t j = i & ~(top | std::size_t{1});
    if (first) j |= 1;
    if (last) j |= top;
    index_map_[i] = j;
  }
}

Matrix SwapPermutation::matrix() const {
  Matrix p(dimension(), dimension());
  for (std::size_t i = 0; i < dimension(); ++i) p(index_map_[i], i) = 1.0;
  return p;
}

std::size_t qubits_for_dimension(std::size_t dim) {
  if (dim < 2 || (dim & (dim - 1)) != 0) {
    throw PreconditionError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  return n;
}

Matrix swap_conjugate(std::size_t n_qubits, const Matrix& m) {
  const SwapPermutation chi(n_qubits);
  if (m.rows() != chi.dimension() || m.cols() != chi.dimension()) {
    throw PreconditionError("swap_conjugate: matrix is " + std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected " + std::to_string(chi.dimension()) +
                            " for " + std::to_string(n_qubits) + " qubits");
  }
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(chi(i), chi(j)) = m(i, j);
  return out;
}

double off_block_norm(const Matrix& m) {
  if (!m.is_square() || m.rows() % 2 != 0) throw PreconditionError("off_block_norm: needs even square matrix");
  const std::size_t h = m.rows() / 2;
  return std::max(m.block(0, h, h, h).frobenius_norm(), m.block(h, 0, h, h).frobenius_norm());
}

void VerificationReport::add(std::string name, double residual, double tolerance) {
  entries_.push_back({std::move(name), residual, tolerance});
}

const ReportEntry* VerificationReport::find(const std::string& name) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const ReportEntry& e) { return e.name == name; });
  return it == entries_.end() ? nullptr : &*it;
}

bool VerificationReport::passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const ReportEntry& e) { return e.passed(); });
}

double VerificationReport::worst_residual() const {
  double w = 0.0;
  for (const ReportEntry& e : entries_) w = std::max(w, e.residual);
  return w;
}

namespace {

void require_register(std::size_t n_qubits, const Matrix& m, const char* op) {
  const SwapPermutation chi(n_qubits);
  if (m.rows() != chi.dimension() || m.cols() != chi.dimension()) {
    throw PreconditionError(std::string(op) + ": expected a " + std::to_string(chi.dimension()) + "x" +
                            std::to_string(chi.dimension()) + " matrix");
  }
}

}  // namespace

VerificationReport verify_kgd(std::size_t n_qubits, const Matrix& v, const Matrix& k1, const Matrix& a,
                              const Matrix& k2, double tol) {
  for (const Matrix* m : {&v, &k1, &a, &k2}) require_register(n_qubits, *m, "verify_kgd");
  VerificationReport report;
  report.add("reconstruction", distance(v, k1 * a * k2), tol);
  report.add("unitarity_k1", unitarity_residual(k1), tol);
  report.add("unitarity_a", unitarity_residual(a), tol);
  report.add("unitarity_k2", unitarity_residual(k2), tol);
  report.add("offblock_k1", off_block_norm(swap_conjugate(n_qubits, k1)), tol);
  report.add("offblock_k2", off_block_norm(swap_conjugate(n_qubits, k2)), tol);
  report.add("gamma_structure_a", in_a_group(n_qubits, a), tol);
  report.add("det_k1", std::abs(det(k1) - 1.0), tol);
  report.add("det_k2", std::abs(det(k2) - 1.0), tol);
  return report;
}

KgdFactors kgd(std::size_t n_qubits, const Matrix& v, double tol) {
  if (n_qubits < 3) {
    throw PreconditionError("kgd: requires n >= 3 qubits, got " + std::to_string(n_qubits));
  }
  require_register(n_qubits, v, "kgd");
  const Complex d = det(v);
  if (!(std::abs(d - 1.0) <= tol)) {
    std::ostringstream msg;
    msg << "kgd: input is not special unitary (|det v - 1| = " << std::abs(d - 1.0) << ")";
    throw PreconditionError(msg.str());
  }
  const CsdFactors f = csd(swap_conjugate(n_qubits, v));
  KgdFactors out;
  out.k1 = swap_conjugate(n_qubits, direct_sum(f.u1, f.u2));
  out.a = swap_conjugate(n_qubits, cs_exp(f.theta));
  out.k2 = swap_conjugate(n_qubits, direct_sum(f.u3, f.u4));
  out.report = verify_kgd(n_qubits, v, out.k1, out.a, out.k2, tol);
  return out;
}

double in_k_group(std::size_t n_qubits, const Matrix& k) {
  require_register(n_qubits, k, "in_k_group");
  return std::max({unitarity_residual(k), off_block_norm(swap_conjugate(n_qubits, k)), std::abs(det(k) - 1.0)});
}

double in_k_algebra(std::size_t n_qubits, const Matrix& x) {
  require_register(n_qubits, x, "in_k_algebra");
  return std::max(
      {anti_hermitian_residual(x), std::abs(x.trace()), off_block_norm(swap_conjugate(n_qubits, x))});
}

double in_a_group(std::size_t n_qubits, const Matrix& a) {
  require_register(n_qubits, a, "in_a_group");
  return cs_structure_residual(swap_conjugate(n_qubits, a));
}

}  // namespace cartan
