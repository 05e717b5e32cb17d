#include "cartan/random.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cartan/errors.hpp"
#include "cartan/linalg.hpp"

namespace cartan {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex{re, im} / std::sqrt(2.0);
}

Matrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Complex& z : m.data()) z = rng.complex_gaussian();
  return m;
}

Matrix haar_random_unitary(std::size_t n_dim, std::uint64_t seed) {
  if (n_dim == 0) throw PreconditionError("haar_random_unitary: dimension must be positive");
  Rng rng(seed);
  // qr() already returns r with a real nonnegative diagonal, i.e. the
  // column phases of q have been corrected.
  return qr(random_gaussian_matrix(n_dim, n_dim, rng)).q;
}

SpecialProjection project_to_special(const Matrix& u, double unitarity_tol) {
  if (!u.is_square()) throw PreconditionError("project_to_special: matrix is not square");
  const double res = unitarity_residual(u);
  if (!(res <= unitarity_tol)) {
    std::ostringstream msg;
    msg << "project_to_special: unitarity residual " << res << " exceeds tolerance " << unitarity_tol;
    throw PreconditionError(msg.str());
  }
  const Complex d = det(u);
  double angle = std::arg(d);
  if (angle <= -std::numbers::pi) angle = std::numbers::pi;  // principal branch for det = -1 - 0i
  const Complex phase = std::polar(1.0, angle / static_cast<double>(u.rows()));
  return {u * (1.0 / phase), phase};
}

Matrix haar_random_special_unitary(std::size_t n_dim, std::uint64_t seed) {
  return project_to_special(haar_random_unitary(n_dim, seed)).v;
}

}  // namespace cartan
