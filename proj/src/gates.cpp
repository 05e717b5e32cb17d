#include "cartan/gates.hpp"

#include <cmath>

namespace cartan {

Matrix pauli(Pauli kind) {
  switch (kind) {
    case Pauli::I:
      return Matrix::identity(2);
    case Pauli::X:
      return Matrix{{0.0, 1.0}, {1.0, 0.0}};
    case Pauli::Y:
      return Matrix{{0.0, -kI}, {kI, 0.0}};
    case Pauli::Z:
      return Matrix{{1.0, 0.0}, {0.0, -1.0}};
  }
  return {};
}

Matrix pauli_string(std::initializer_list<Pauli> factors) {
  Matrix m = Matrix::identity(1);
  for (Pauli p : factors) m = kron(m, pauli(p));
  return m;
}

SpecialGates special_gates() {
  const double r = 1.0 / std::sqrt(2.0);
  Matrix e{{1.0, 0.0, kI, 0.0},   //
           {0.0, 1.0, 0.0, kI},   //
           {0.0, -1.0, 0.0, kI},  //
           {1.0, 0.0, -kI, 0.0}};
  e *= r;
  Matrix h{{r, r}, {r, -r}};
  Matrix s{{1.0, 0.0}, {0.0, kI}};
  return {std::move(e), std::move(h), std::move(s)};
}

}  // namespace cartan
