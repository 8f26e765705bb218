#include "avqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "avqc/error.hpp"

namespace avqc {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : ComplexMatrix(rows, cols, std::vector<Complex>(rows * cols)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows_ == 0 || cols_ == 0) {
    throw Error(ErrorKind::DimensionMismatch, "matrix dimensions must be at least 1");
  }
  if (entries_.size() != rows_ * cols_) {
    throw Error(ErrorKind::DimensionMismatch,
                "entries length " + std::to_string(entries_.size()) + " != " +
                    std::to_string(rows_) + " x " + std::to_string(cols_));
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  const std::size_t n = ket.size();
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = ket[i] * std::conj(ket[j]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw Error(ErrorKind::NonSquare, "trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

static void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "shape " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " vs " +
                                                  std::to_string(b.rows()) + "x" +
                                                  std::to_string(b.cols()));
  }
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

void ComplexMatrix::add_scaled(const ComplexMatrix& other, Complex scalar) {
  require_same_shape(*this, other);
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += scalar * other.entries_[k];
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix m) { return m *= scalar; }
ComplexMatrix operator*(ComplexMatrix m, Complex scalar) { return m *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch,
                "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                    " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0)) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double s = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) s += std::norm(ea[k] - eb[k]);
  return std::sqrt(s);
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  double s = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k)
    s += ea[k].real() * eb[k].real() + ea[k].imag() * eb[k].imag();
  return s;
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (!m.is_square()) return false;
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) s += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(s) <= tol * std::max(1.0, m.frobenius_norm());
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw Error(ErrorKind::NonSquare, "Hermitian part of a non-square matrix");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  for (std::size_t i = 0; i < m.rows(); ++i) out(i, i) = out(i, i).real();
  return out;
}

namespace {

ComplexMatrix checked_hermitian(const ComplexMatrix& m) {
  if (!m.is_square()) {
    throw Error(ErrorKind::NonSquare, "expected a square matrix, got " + std::to_string(m.rows()) +
                                          "x" + std::to_string(m.cols()));
  }
  if (!is_hermitian(m)) {
    throw Error(ErrorKind::NotHermitian, "||m - m^dagger||_F exceeds 1e-9 relative tolerance");
  }
  return hermitian_part(m);
}

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * std::norm(a(i, j));
  return std::sqrt(s);
}

// Cyclic Jacobi on a Hermitian matrix. Each rotation first removes the phase of
// a(p,q) and then applies the real symmetric Jacobi rotation, so the combined
// unitary G satisfies (G^dagger A G)(p,q) = 0.
void jacobi(ComplexMatrix& a, ComplexMatrix* v) {
  const std::size_t n = a.rows();
  const double scale = std::max(1.0, a.frobenius_norm());
  const double target = kJacobiOffDiagonalTolerance * scale;
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_mass(a) <= target) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const Complex phase = apq / r;  // e^{i phi}
        const Complex phase_conj = std::conj(phase);
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] acting on columns p, q.
        const Complex g_qp = -s * phase_conj;
        const Complex g_qq = c * phase_conj;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * g_qp;
          a(k, q) = akp * s + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(g_qp) * aqk;
          a(q, k) = s * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        if (v != nullptr) {
          ComplexMatrix& vm = *v;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex vkp = vm(k, p);
            const Complex vkq = vm(k, q);
            vm(k, p) = vkp * c + vkq * g_qp;
            vm(k, q) = vkp * s + vkq * g_qq;
          }
        }
      }
    }
  }
  if (off_diagonal_mass(a) > 1e3 * target) {
    throw Error(ErrorKind::NumericalFailure, "Jacobi eigensolver did not converge");
  }
}

}  // namespace

HermitianSpectrum hermitian_eig(const ComplexMatrix& m) {
  ComplexMatrix a = checked_hermitian(m);
  const std::size_t n = a.rows();
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi(a, &v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianSpectrum out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  ComplexMatrix a = checked_hermitian(m);
  jacobi(a, nullptr);
  std::vector<double> values(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

double trace_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (double lambda : hermitian_eigenvalues(m)) s += std::abs(lambda);
  return s;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rb = b.rows();
  const std::size_t cb = b.cols();
  ComplexMatrix out(a.rows() * rb, a.cols() * cb);
  for (std::size_t ia = 0; ia < a.rows(); ++ia)
    for (std::size_t ja = 0; ja < a.cols(); ++ja) {
      const Complex x = a(ia, ja);
      if (x == Complex(0.0)) continue;
      for (std::size_t ib = 0; ib < rb; ++ib)
        for (std::size_t jb = 0; jb < cb; ++jb) out(ia * rb + ib, ja * cb + jb) = x * b(ib, jb);
    }
  return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor(out, factors[k]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Keep keep) {
  const std::size_t n = dims.first * dims.second;
  if (!m.is_square() || m.rows() != n || n == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                "partial trace expects a square matrix of side " + std::to_string(n) + ", got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
  if (keep == Keep::First) {
    ComplexMatrix out(dims.first, dims.first);
    for (std::size_t i = 0; i < dims.first; ++i)
      for (std::size_t j = 0; j < dims.first; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < dims.second; ++k)
          s += m(i * dims.second + k, j * dims.second + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(dims.second, dims.second);
  for (std::size_t i = 0; i < dims.second; ++i)
    for (std::size_t j = 0; j < dims.second; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < dims.first; ++k) s += m(k * dims.second + i, k * dims.second + j);
      out(i, j) = s;
    }
  return out;
}

}  // namespace avqc
