#include "cartan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "cartan/errors.hpp"

namespace cartan {

namespace {

constexpr int kMaxJacobiSweeps = 30;
constexpr double kEps = std::numeric_limits<double>::epsilon();
// Columns shorter than this are treated as exactly null by the SVD.
constexpr double kNullColumn = std::numeric_limits<double>::min() / kEps;

Complex unit_phase(Complex z) {
  const double r = std::abs(z);
  return r == 0.0 ? Complex{1.0} : z / r;
}

// Householder reflectors stored column by column; reflector k acts on rows k..m-1.
struct Reflectors {
  std::vector<std::vector<Complex>> v;  // unit vectors, empty when the step was skipped
};

// Reduces a (m×n, m >= n) to upper-triangular form in place.
Reflectors householder_triangularize(Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Reflectors refl;
  refl.v.resize(n);
  for (std::size_t k = 0; k < n && k < m; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k; i < m; ++i) norm2 += std::norm(a(i, k));
    const double norm = std::sqrt(norm2);
    if (norm == 0.0) continue;
    const Complex alpha = -unit_phase(a(k, k)) * norm;
    std::vector<Complex> v(m - k);
    for (std::size_t i = k; i < m; ++i) v[i - k] = a(i, k);
    v[0] -= alpha;
    double vnorm2 = 0.0;
    for (const Complex& z : v) vnorm2 += std::norm(z);
    if (vnorm2 == 0.0) continue;
    const double vnorm = std::sqrt(vnorm2);
    for (Complex& z : v) z /= vnorm;
    // a <- (I - 2 v v†) a on the trailing block.
    for (std::size_t j = k; j < n; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = k; i < m; ++i) dot += std::conj(v[i - k]) * a(i, j);
      dot *= 2.0;
      for (std::size_t i = k; i < m; ++i) a(i, j) -= dot * v[i - k];
    }
    for (std::size_t i = k + 1; i < m; ++i) a(i, k) = 0.0;
    refl.v[k] = std::move(v);
  }
  return refl;
}

// Product of the reflectors applied to the first `ncols` columns of I_m.
Matrix accumulate_q(const Reflectors& refl, std::size_t m, std::size_t ncols) {
  Matrix q(m, ncols);
  for (std::size_t i = 0; i < std::min(m, ncols); ++i) q(i, i) = 1.0;
  for (std::size_t kk = refl.v.size(); kk-- > 0;) {
    const auto& v = refl.v[kk];
    if (v.empty()) continue;
    for (std::size_t j = 0; j < ncols; ++j) {
      Complex dot = 0.0;
      for (std::size_t i = kk; i < m; ++i) dot += std::conj(v[i - kk]) * q(i, j);
      dot *= 2.0;
      for (std::size_t i = kk; i < m; ++i) q(i, j) -= dot * v[i - kk];
    }
  }
  return q;
}

// One-sided Jacobi on a tall matrix (rows >= cols).
SvdResult jacobi_svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  const double tol = std::sqrt(static_cast<double>(std::max<std::size_t>(m, 1))) * kEps;

  bool converged = n < 2;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(w(i, p));
          beta += std::norm(w(i, q));
          gamma += std::conj(w(i, p)) * w(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= tol * std::sqrt(alpha) * std::sqrt(beta)) continue;
        rotated = true;
        const Complex phase_conj = std::conj(gamma / g);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const Complex wp = w(i, p);
          const Complex wq = w(i, q) * phase_conj;
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const Complex vp = v(i, p);
          const Complex vq = v(i, q) * phase_conj;
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    converged = !rotated;
  }
  if (!converged) {
    throw NumericalError("svd: one-sided Jacobi did not converge in " + std::to_string(kMaxJacobiSweeps) +
                         " sweeps");
  }

  std::vector<double> norms(n);
  for (std::size_t j = 0; j < n; ++j) norms[j] = w.column(j).frobenius_norm();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

  SvdResult out;
  out.sigma.resize(n);
  Matrix u_thin(m, n);
  Matrix v_sorted(n, n);
  std::size_t rank = 0;
  for (std::size_t jj = 0; jj < n; ++jj) {
    const std::size_t j = order[jj];
    out.sigma[jj] = norms[j];
    for (std::size_t i = 0; i < n; ++i) v_sorted(i, jj) = v(i, j);
    if (norms[j] > kNullColumn) {
      for (std::size_t i = 0; i < m; ++i) u_thin(i, jj) = w(i, j) / norms[j];
      ++rank;
    } else {
      out.sigma[jj] = 0.0;
    }
  }
  // Null columns sort last; fill them, and any extra rows, from the complement.
  out.u = Matrix(m, m);
  const Matrix range = u_thin.block(0, 0, m, rank);
  out.u.set_block(0, 0, range);
  out.u.set_block(0, rank, orthonormal_complement(range));
  out.v_dagger = v_sorted.adjoint();
  return out;
}

}  // namespace

QrResult qr(const Matrix& a) {
  if (a.rows() < a.cols()) throw PreconditionError("qr: requires rows >= cols");
  Matrix r = a;
  const Reflectors refl = householder_triangularize(r);
  QrResult out{accumulate_q(refl, a.rows(), a.cols()), r.block(0, 0, a.cols(), a.cols())};
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const Complex d = unit_phase(out.r(k, k));
    if (d == Complex{1.0}) continue;
    for (std::size_t i = 0; i < a.rows(); ++i) out.q(i, k) *= d;
    for (std::size_t j = k; j < a.cols(); ++j) out.r(k, j) *= std::conj(d);
    out.r(k, k) = std::abs(out.r(k, k));
  }
  return out;
}

Matrix orthonormal_complement(const Matrix& q) {
  const std::size_t m = q.rows();
  const std::size_t k = q.cols();
  if (k > m) throw PreconditionError("orthonormal_complement: more columns than rows");
  Matrix work = q;
  const Reflectors refl = householder_triangularize(work);
  return accumulate_q(refl, m, m).block(0, k, m, m - k);
}

SvdResult svd(const Matrix& a) {
  if (a.rows() >= a.cols()) return jacobi_svd_tall(a);
  SvdResult t = jacobi_svd_tall(a.adjoint());
  return SvdResult{t.v_dagger.adjoint(), std::move(t.sigma), t.u.adjoint()};
}

Matrix svd_reconstruct(const SvdResult& s) {
  Matrix d(s.u.cols(), s.v_dagger.rows());
  for (std::size_t k = 0; k < s.sigma.size(); ++k) d(k, k) = s.sigma[k];
  return s.u * d * s.v_dagger;
}

Complex det(const Matrix& a) {
  if (!a.is_square()) throw PreconditionError("det: matrix is not square");
  Matrix lu = a;
  const std::size_t n = a.rows();
  Complex result = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(pivot, k))) pivot = i;
    if (lu(pivot, k) == Complex{}) return 0.0;
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(pivot, j));
      result = -result;
    }
    result *= lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu(i, k) / lu(k, k);
      if (f == Complex{}) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
  return result;
}

Matrix polar_unitary(const Matrix& a) {
  if (!a.is_square()) throw PreconditionError("polar_unitary: matrix is not square");
  const SvdResult s = svd(a);
  return s.u * s.v_dagger;
}

}  // namespace cartan
