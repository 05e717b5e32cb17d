#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cartan/csd.hpp"
#include "cartan/matrix.hpp"

namespace cartan {

// χ, the SWAP of qubits 1 and n on an n-qubit register. Qubit 1 is the most
// significant bit of a basis index, so χ exchanges the top and bottom bits.
class SwapPermutation {
 public:
  /// Throws PreconditionError for n_qubits < 2.
  explicit SwapPermutation(std::size_t n_qubits);

  std::size_t n_qubits() const noexcept { return n_qubits_; }
  std::size_t dimension() const noexcept { return index_map_.size(); }
  std::size_t operator()(std::size_t index) const { return index_map_.at(index); }
  const std::vector<std::size_t>& index_map() const noexcept { return index_map_; }

  /// χ as an explicit permutation matrix.
  Matrix matrix() const;

 private:
  std::size_t n_qubits_;
  std::vector<std::size_t> index_map_;
};

/// log2 of a power-of-two dimension; throws PreconditionError otherwise.
std::size_t qubits_for_dimension(std::size_t dim);

/// χ·m·χ by simultaneous row and column permutation (exact).
Matrix swap_conjugate(std::size_t n_qubits, const Matrix& m);

/// max(‖top-right block‖_F, ‖bottom-left block‖_F) for the N/2 split.
double off_block_norm(const Matrix& m);

struct ReportEntry {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return residual <= tolerance; }
};

// Named residuals with their gates; an entry passes iff residual <= tolerance.
class VerificationReport {
 public:
  void add(std::string name, double residual, double tolerance);
  const std::vector<ReportEntry>& entries() const noexcept { return entries_; }
  const ReportEntry* find(const std::string& name) const;
  bool passed() const;
  /// Largest residual (0 for an empty report).
  double worst_residual() const;

 private:
  std::vector<ReportEntry> entries_;
};

struct KgdFactors {
  Matrix k1;
  Matrix a;
  Matrix k2;
  VerificationReport report;
};

inline constexpr double kDefaultMembershipTol = 1e-10;

/// Residuals of a candidate factorization v = k1·a·k2: reconstruction,
/// unitarity of each factor, off-block norms of χk_jχ, Γ-structure of χaχ
/// and |det k_j − 1|.
VerificationReport verify_kgd(std::size_t n_qubits, const Matrix& v, const Matrix& k1, const Matrix& a,
                              const Matrix& k2, double tol = kDefaultMembershipTol);

/// Khaneja–Glaser factors of v ∈ SU(2^n) from the CSD of χvχ:
/// k1 = χ(u1 ⊕ u2)χ, a = χΓχ, k2 = χ(u3 ⊕ u4)χ. Requires n >= 3.
KgdFactors kgd(std::size_t n_qubits, const Matrix& v, double tol = kDefaultMembershipTol);

/// max(‖k†k − I‖_F, off-block norm of χkχ, |det k − 1|).
double in_k_group(std::size_t n_qubits, const Matrix& k);
/// max(‖x + x†‖_F, |tr x|, off-block norm of χxχ).
double in_k_algebra(std::size_t n_qubits, const Matrix& x);
/// Distance of χaχ from the cosine-sine pattern.
double in_a_group(std::size_t n_qubits, const Matrix& a);

}  // namespace cartan
