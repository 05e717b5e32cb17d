#include "cartan/csd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include "cartan/errors.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

namespace {

// Cross-check thresholds: above kRefineTrigger the last factor is recomputed
// by polar projection; above the failure gate the decomposition is abandoned.
// The gate widens with the input's own unitarity residual.
constexpr double kRefineTrigger = 1e-12;
constexpr double kFailureGate = 1e-8;
constexpr double kInputSlack = 10.0;

Matrix scale_column(const Matrix& col, double s) { return col * Complex{1.0 / s}; }

// Row j of u4 from the block with the larger coefficient:
//   u2†·v22 = C·u4,   u1†·v12 = −S·u4.
Matrix solve_u4(const Matrix& u1, const Matrix& u2, const std::vector<double>& theta, const Matrix& v12,
                const Matrix& v22) {
  const std::size_t m = theta.size();
  const Matrix from_cos = u2.adjoint() * v22;
  const Matrix from_sin = u1.adjoint() * v12;
  Matrix u4(m, m);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = std::cos(theta[j]);
    const double s = std::sin(theta[j]);
    if (c >= s) {
      u4.set_block(j, 0, from_cos.row(j) * Complex{1.0 / c});
    } else {
      u4.set_block(j, 0, from_sin.row(j) * Complex{-1.0 / s});
    }
  }
  return u4;
}

// Least-squares fit of u4 to both relations at once, projected onto the unitaries.
Matrix refine_u4(const Matrix& u1, const Matrix& u2, const std::vector<double>& theta, const Matrix& v12,
                 const Matrix& v22) {
  const std::size_t m = theta.size();
  std::vector<double> c(m);
  std::vector<double> s(m);
  for (std::size_t j = 0; j < m; ++j) {
    c[j] = std::cos(theta[j]);
    s[j] = std::sin(theta[j]);
  }
  const Matrix candidate = Matrix::diagonal(std::span<const double>(c)) * (u2.adjoint() * v22) -
                           Matrix::diagonal(std::span<const double>(s)) * (u1.adjoint() * v12);
  return polar_unitary(candidate);
}

double cross_check(const Matrix& v, const CsdFactors& f) {
  const CsdResiduals r = csd_residuals(v, f);
  return std::max(r.reconstruction, r.unitarity);
}

void sort_by_theta(CsdFactors& f) {
  const std::size_t m = f.half();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return f.theta[a] < f.theta[b]; });
  CsdFactors g{Matrix(m, m), Matrix(m, m), std::vector<double>(m), Matrix(m, m), Matrix(m, m)};
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t j = order[k];
    g.theta[k] = f.theta[j];
    g.u1.set_block(0, k, f.u1.column(j));
    g.u2.set_block(0, k, f.u2.column(j));
    g.u3.set_block(k, 0, f.u3.row(j));
    g.u4.set_block(k, 0, f.u4.row(j));
  }
  f = std::move(g);
}

void normalize_determinants(CsdFactors& f) {
  const Complex d = det(f.u1) * det(f.u2);
  const double n = 2.0 * static_cast<double>(f.half());
  double angle = std::arg(d);
  if (angle <= -std::numbers::pi) angle = std::numbers::pi;
  // φ = d^{-1/N} on the principal branch: det(φ(u1 ⊕ u2)) = φ^N d = 1.
  const Complex phi = std::polar(1.0, -angle / n);
  f.u1 *= phi;
  f.u2 *= phi;
  f.u3 *= std::conj(phi);
  f.u4 *= std::conj(phi);
}

}  // namespace

CsdFactors csd(const Matrix& v, const CsdOptions& options) {
  if (!v.is_square()) throw PreconditionError("csd: matrix is not square");
  if (v.rows() == 0 || v.rows() % 2 != 0) {
    throw PreconditionError("csd: dimension " + std::to_string(v.rows()) + " is not even");
  }
  const double unit_res = unitarity_residual(v);
  if (!(unit_res <= options.unitarity_tol)) {
    std::ostringstream msg;
    msg << "csd: unitarity residual " << unit_res << " exceeds tolerance " << options.unitarity_tol;
    throw PreconditionError(msg.str());
  }

  const std::size_t m = v.rows() / 2;
  const Matrix v11 = v.block(0, 0, m, m);
  const Matrix v12 = v.block(0, m, m, m);
  const Matrix v21 = v.block(m, 0, m, m);
  const Matrix v22 = v.block(m, m, m, m);

  // v11 = u1·C·u3 with the cosines descending.
  const SvdResult top = svd(v11);
  Matrix u1 = top.u;
  Matrix u3 = top.v_dagger;
  std::vector<double> cosines = top.sigma;
  std::vector<double> sines(m);

  // Columns [0, k) have cos > 1/√2: their sines are small and the SVD of v11
  // cannot resolve them. Columns [k, m) have well-determined sines.
  const double split = std::numbers::sqrt2 / 2.0;
  const std::size_t k = static_cast<std::size_t>(
      std::count_if(cosines.begin(), cosines.end(), [&](double c) { return c > split; }));

  const Matrix x = v21 * u3.adjoint();  // = u2·S
  Matrix u2(m, m);
  for (std::size_t j = k; j < m; ++j) {
    const Matrix col = x.column(j);
    sines[j] = col.frobenius_norm();
    u2.set_block(0, j, scale_column(col, sines[j]));
  }

  if (k > 0) {
    // Resolve the small-sine subspace directly from v21: SVD of the leftover
    // columns expressed in a basis orthogonal to the resolved u2 columns.
    const Matrix complement = orthonormal_complement(u2.block(0, k, m, m - k));
    const Matrix small = complement.adjoint() * x.block(0, 0, m, k);
    const SvdResult inner = svd(small);
    u2.set_block(0, 0, complement * inner.u);
    u3.set_block(0, 0, inner.v_dagger * u3.block(0, 0, k, m));
    const Matrix y = v11 * u3.block(0, 0, k, m).adjoint();  // = u1·C on these columns
    for (std::size_t j = 0; j < k; ++j) {
      sines[j] = inner.sigma[j];
      const Matrix col = y.column(j);
      cosines[j] = col.frobenius_norm();
      u1.set_block(0, j, scale_column(col, cosines[j]));
    }
  }

  CsdFactors f{std::move(u1), std::move(u2), std::vector<double>(m), std::move(u3), Matrix()};
  for (std::size_t j = 0; j < m; ++j) f.theta[j] = std::atan2(sines[j], cosines[j]);
  f.u4 = solve_u4(f.u1, f.u2, f.theta, v12, v22);
  sort_by_theta(f);

  if (cross_check(v, f) > kRefineTrigger) {
    f.u4 = refine_u4(f.u1, f.u2, f.theta, v.block(0, m, m, m), v.block(m, m, m, m));
  }
  const double residual = cross_check(v, f);
  const double gate = std::max(kFailureGate, kInputSlack * unit_res);
  if (residual > gate) {
    std::ostringstream msg;
    msg << "csd: cross-check residual " << residual << " exceeds " << gate << " after refinement";
    throw NumericalError(msg.str());
  }

  if (options.special_normalize) normalize_determinants(f);
  return f;
}

Matrix reconstruct(const CsdFactors& f) {
  const std::size_t m = f.half();
  for (const Matrix* u : {&f.u1, &f.u2, &f.u3, &f.u4}) {
    if (u->rows() != m || u->cols() != m) {
      throw PreconditionError("reconstruct: factor is " + std::to_string(u->rows()) + "x" +
                              std::to_string(u->cols()) + ", expected " + std::to_string(m) + "x" +
                              std::to_string(m));
    }
  }
  return direct_sum(f.u1, f.u2) * cs_exp(f.theta) * direct_sum(f.u3, f.u4);
}

Matrix cs_exp(std::span<const double> t) {
  const std::size_t m = t.size();
  Matrix g(2 * m, 2 * m);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = std::cos(t[j]);
    const double s = std::sin(t[j]);
    g(j, j) = c;
    g(j, j + m) = -s;
    g(j + m, j) = s;
    g(j + m, j + m) = c;
  }
  return g;
}

namespace {

std::vector<double> fit_angles(const Matrix& g) {
  if (!g.is_square() || g.rows() == 0 || g.rows() % 2 != 0) {
    throw PreconditionError("cosine-sine structure requires a square matrix of even dimension");
  }
  const std::size_t m = g.rows() / 2;
  std::vector<double> t(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double c = 0.5 * (g(j, j).real() + g(j + m, j + m).real());
    const double s = 0.5 * (g(j + m, j).real() - g(j, j + m).real());
    t[j] = std::atan2(s, c);
  }
  return t;
}

}  // namespace

double cs_structure_residual(const Matrix& g) { return distance(g, cs_exp(fit_angles(g))); }

std::vector<double> cs_log(const Matrix& g, double tol) {
  std::vector<double> t = fit_angles(g);
  const Matrix fitted = cs_exp(t);
  const std::size_t n = g.rows();
  const std::size_t m = n / 2;
  double worst = 0.0;
  std::size_t wi = 0;
  std::size_t wj = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dev = std::abs(g(i, j) - fitted(i, j));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "cs_log: entry (" << wi << ", " << wj << ") deviates from the cosine-sine pattern by " << worst;
    throw StructureError(msg.str(), wi, wj);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (t[j] < -tol || t[j] > std::numbers::pi / 2 + tol) {
      std::ostringstream msg;
      msg << "cs_log: angle " << t[j] << " at index " << j << " is outside [0, pi/2]";
      throw StructureError(msg.str(), j + m, j);
    }
    t[j] = std::clamp(t[j], 0.0, std::numbers::pi / 2);
  }
  return t;
}

CsdResiduals csd_residuals(const Matrix& v, const CsdFactors& f) {
  CsdResiduals r;
  r.reconstruction = distance(v, reconstruct(f));
  for (const Matrix* u : {&f.u1, &f.u2, &f.u3, &f.u4}) r.unitarity = std::max(r.unitarity, unitarity_residual(*u));
  r.determinant = std::max(std::abs(det(f.u1) * det(f.u2) - 1.0), std::abs(det(f.u3) * det(f.u4) - det(v)));
  r.theta_ordered = std::is_sorted(f.theta.begin(), f.theta.end()) &&
                    std::all_of(f.theta.begin(), f.theta.end(),
                                [](double t) { return t >= 0.0 && t <= std::numbers::pi / 2; });
  return r;
}

}  // namespace cartan
