#pragma once

#include <cstdint>
#include <random>

#include "cartan/matrix.hpp"

namespace cartan {

// Reproducible random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniform and Gaussian variates are
// derived here (53-bit mantissa, Box–Muller) rather than through the
// implementation-defined std distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal.
  double gaussian();
  /// Complex normal with E|z|² = 1.
  Complex complex_gaussian();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// rows × cols matrix of independent complex normals.
Matrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// R-diagonal phases divided out. Deterministic in (n_dim, seed).
Matrix haar_random_unitary(std::size_t n_dim, std::uint64_t seed);

struct SpecialProjection {
  Matrix v;       // phase⁻¹·u, det(v) = 1
  Complex phase;  // principal N-th root of det(u)
};

/// Rescale a unitary into SU(N). Throws PreconditionError when
/// ‖u†u − I‖_F exceeds `unitarity_tol`.
SpecialProjection project_to_special(const Matrix& u, double unitarity_tol = 1e-10);

/// project_to_special(haar_random_unitary(n_dim, seed)).v
Matrix haar_random_special_unitary(std::size_t n_dim, std::uint64_t seed);

}  // namespace cartan
