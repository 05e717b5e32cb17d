#pragma once

#include "cartan/matrix.hpp"

namespace cartan {

enum class Pauli { I, X, Y, Z };

/// Standard 2×2 Pauli matrix, σ^y = [[0, −i], [i, 0]].
Matrix pauli(Pauli kind);

/// Tensor product of single-qubit Paulis, qubit 1 leftmost.
Matrix pauli_string(std::initializer_list<Pauli> factors);

// Fixed gates used to translate between commutative subalgebras:
//   e  the 4×4 two-qubit basis change with E†(σx⊗σx)E = σz⊗σz,
//      E†(σy⊗σy)E = −σz⊗I and E†(σz⊗σz)E = I⊗σz;
//   h  the Hadamard gate;
//   s  the phase gate diag(1, i).
struct SpecialGates {
  Matrix e;
  Matrix h;
  Matrix s;
};

SpecialGates special_gates();

}  // namespace cartan
