#pragma once

// Dense complex matrices with the handful of operations the rest of the
// toolkit needs: Hermitian eigendecomposition (cyclic Jacobi), trace norm,
// Kronecker products and partial traces. Dimensions stay small (<= a few
// hundred), so everything is plain row-major storage.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace avqc {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  // |i><j| on an n-dimensional space.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  // |v><v| for a (not necessarily normalized) ket.
  static ComplexMatrix outer(std::span<const Complex> ket);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return entries_; }
  std::span<Complex> entries() noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  // Adds scalar * other in place; the workhorse for mixtures.
  void add_scaled(const ComplexMatrix& other, Complex scalar);

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

// Frobenius distance ||a - b||_F; shapes must agree.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Real inner product Re tr(a^dagger b) over the entries.
double real_inner(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianSpectrum {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, eigenvectors in columns
};

inline constexpr double kHermitianTolerance = 1e-9;
inline constexpr double kJacobiOffDiagonalTolerance = 1e-12;

// Throws NonSquare / NotHermitian. The input is symmetrized after the check.
HermitianSpectrum hermitian_eig(const ComplexMatrix& m);

// Same as hermitian_eig without accumulating eigenvectors.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm(const ComplexMatrix& m);

// Kronecker product; entry (i_a*rows_b + i_b, j_a*cols_b + j_b) = a(i_a,j_a)*b(i_b,j_b).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product of a list of factors, evaluated left to right.
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors);

struct BipartiteDims {
  std::size_t first;
  std::size_t second;
};

enum class Keep { First, Second };

// Traces out the factor not named by `keep`.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Keep keep);

// ||m - m^dagger||_F <= tol * max(1, ||m||_F)
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTolerance);

// (m + m^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

}  // namespace avqc
