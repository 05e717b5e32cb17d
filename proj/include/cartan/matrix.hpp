#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace cartan {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Dense row-major complex matrix. Used for unitaries, Lie-algebra elements
// and everything in between.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  // Throws PreconditionError if data.size() != rows*cols or an entry is not finite.
  Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t n);
  static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
  static Matrix diagonal(std::span<const Complex> d);
  static Matrix diagonal(std::span<const double> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  Matrix adjoint() const;
  Matrix transpose() const;
  Matrix conj() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const Matrix& b);
  Matrix column(std::size_t j) const { return block(0, j, rows_, 1); }
  Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator-(Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(Complex s, Matrix a);
Matrix operator*(Matrix a, Complex s);

/// a ⊕ b as a block-diagonal matrix.
Matrix direct_sum(const Matrix& a, const Matrix& b);

/// Kronecker product; dimensions multiply.
Matrix kron(const Matrix& a, const Matrix& b);
Matrix kron(std::initializer_list<Matrix> factors);
/// a^{⊗count}; the 1×1 identity when count is zero.
Matrix kron_power(const Matrix& a, std::size_t count);

/// XY − YX.
Matrix commutator(const Matrix& x, const Matrix& y);

/// ‖a†a − I‖_F.
double unitarity_residual(const Matrix& a);
/// ‖a + a†‖_F.
double anti_hermitian_residual(const Matrix& a);
/// Frobenius norm of a − b.
double distance(const Matrix& a, const Matrix& b);

/// Hilbert–Schmidt inner product Re tr(a†b).
double hs_inner(const Matrix& a, const Matrix& b);

}  // namespace cartan
