#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cartan/matrix.hpp"

namespace cartan {

// The four maximal commutative subalgebras relating the CSD and the
// Khaneja–Glaser decomposition on n >= 3 qubits (N = 2^n):
//   A_AIII     {[[0, −T], [T, 0]] : T real diagonal}
//   A_SWAPPED  χ(|j⟩⟨N−1−j| − |N−1−j⟩⟨j|)χ,  0 <= j < N/2
//   A_TILDE    iσx ⊗ (σx or I on qubits 2..n−2) ⊗ σj⊗σj,  j ∈ {0, x, y, z}
//   H_N        χ·A_TILDE·χ
enum class SubalgebraKind { AAiii, ASwapped, ATilde, HN };

std::string_view to_string(SubalgebraKind kind);
/// Accepts "A_AIII", "A_SWAPPED", "A_TILDE", "H_N"; throws PreconditionError otherwise.
SubalgebraKind parse_subalgebra_kind(std::string_view name);

struct SubalgebraBasis {
  SubalgebraKind kind;
  std::size_t n_qubits;
  std::vector<Matrix> elements;
};

/// Deterministically ordered basis with N/2 elements. Throws for n_qubits < 3.
SubalgebraBasis basis(SubalgebraKind kind, std::size_t n_qubits);

/// A_AIII written as Pauli strings iσy ⊗ (σz or I)^{⊗(n−1)}.
std::vector<Matrix> a_aiii_pauli_strings(std::size_t n_qubits);

/// S ⊗ H^{⊗(n−3)} ⊗ E†, which carries A_TILDE onto A_AIII.
Matrix translation_matrix(std::size_t n_qubits);

/// Elementwise k·e·k†.
SubalgebraBasis conjugate_basis(const Matrix& k, const SubalgebraBasis& b);

/// Frobenius distance from x to the real span of `elements` under the
/// inner product Re tr(A†B).
double span_residual(const Matrix& x, std::span<const Matrix> elements);
double span_residual(const Matrix& x, const SubalgebraBasis& b);

/// Largest span_residual of either basis's elements against the other.
double subspace_equal(std::span<const Matrix> lhs, std::span<const Matrix> rhs);
double subspace_equal(const SubalgebraBasis& lhs, const SubalgebraBasis& rhs);

/// max ‖[e_i, e_j]‖_F over all pairs.
double max_commutator(std::span<const Matrix> elements);
/// Smallest eigenvalue of the Gram matrix G_ij = Re tr(e_i† e_j).
double gram_min_eigenvalue(std::span<const Matrix> elements);

/// Basis of 𝔰[𝔲(N/2) ⊕ 𝔲(N/2)]: block-diagonal anti-Hermitian, trace zero.
std::vector<Matrix> k_aiii_generators(std::size_t n_qubits);
/// Basis of span{X ⊗ σz, Y ⊗ I_2, i I_{N/2} ⊗ σz : X, Y ∈ 𝔰𝔲(N/2)}.
std::vector<Matrix> kgd_k_generators(std::size_t n_qubits);

}  // namespace cartan
