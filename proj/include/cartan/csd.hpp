#pragma once

#include <span>
#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

// Balanced cosine-sine decomposition of an N×N unitary, N = 2m:
//
//   v = (u1 ⊕ u2) · Γ(θ) · (u3 ⊕ u4),   Γ(θ) = [[cos T, −sin T], [sin T, cos T]],
//
// with T = diag(θ), each u_j an m×m unitary and θ ascending in [0, π/2].
struct CsdFactors {
  Matrix u1;
  Matrix u2;
  std::vector<double> theta;
  Matrix u3;
  Matrix u4;

  std::size_t half() const noexcept { return theta.size(); }
};

struct CsdOptions {
  // Inputs with ‖v†v − I‖_F above this are rejected.
  double unitarity_tol = 1e-10;
  // Rescale the factors by a common phase so that det(u1 ⊕ u2) = 1 (and
  // det(u3 ⊕ u4) = det v). Disable to keep real inputs' factors real.
  bool special_normalize = true;
};

/// Computes the CSD. Throws PreconditionError for odd or non-square input or
/// a unitarity residual above options.unitarity_tol, and NumericalError if
/// the factors fail the internal cross-check even after refinement.
CsdFactors csd(const Matrix& v, const CsdOptions& options = {});

/// (u1 ⊕ u2)·Γ(θ)·(u3 ⊕ u4). Throws PreconditionError on inconsistent shapes.
Matrix reconstruct(const CsdFactors& f);

/// Γ(t), the closed-form exponential of [[0, −T], [T, 0]].
Matrix cs_exp(std::span<const double> t);

/// Inverse of cs_exp on the sign convention θ ∈ [0, π/2]. Throws
/// StructureError (carrying the worst entry) if g deviates from the Γ
/// pattern by more than `tol` in any entry, or an angle leaves [0, π/2].
std::vector<double> cs_log(const Matrix& g, double tol = 1e-8);

/// Frobenius distance from g to the nearest-fit Γ(t), any angles allowed.
double cs_structure_residual(const Matrix& g);

struct CsdResiduals {
  double reconstruction = 0.0;  // ‖v − reconstruct(f)‖_F
  double unitarity = 0.0;       // max over the four factors
  double determinant = 0.0;     // max(|det(u1)det(u2) − 1|, |det(u3)det(u4) − det v|)
  bool theta_ordered = false;   // ascending and inside [0, π/2]
};

CsdResiduals csd_residuals(const Matrix& v, const CsdFactors& f);

}  // namespace cartan
