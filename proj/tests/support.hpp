#pragma once

// Helpers shared by the unit tests. Random objects are built here without
// going through the library so they can serve as independent inputs.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "avqc/channels.hpp"
#include "avqc/linalg.hpp"

namespace testing_support {

using avqc::Complex;
using avqc::ComplexMatrix;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& g = rng()) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (auto& e : m.entries()) e = {n(g), n(g)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t d, std::mt19937_64& g = rng()) {
  ComplexMatrix a = random_matrix(d, d, g);
  ComplexMatrix h(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
  return h;
}

// Ginibre-distributed mixed state.
inline avqc::DensityOperator random_state(std::size_t d, std::mt19937_64& g = rng()) {
  ComplexMatrix a = random_matrix(d, d, g);
  ComplexMatrix r = a * a.adjoint();
  r *= Complex(1.0 / r.trace().real());
  return avqc::DensityOperator(r);
}

inline std::vector<Complex> random_ket(std::size_t d, std::mt19937_64& g = rng()) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<Complex> v(d);
  double norm = 0.0;
  for (auto& x : v) {
    x = {n(g), n(g)};
    norm += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(norm);
  return v;
}

// Isometry (rows x cols, rows >= cols) from modified Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_isometry(std::size_t rows, std::size_t cols, std::mt19937_64& g = rng()) {
  ComplexMatrix m = random_matrix(rows, cols, g);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      Complex dot = 0.0;
      for (std::size_t r = 0; r < rows; ++r) dot += std::conj(m(r, p)) * m(r, c);
      for (std::size_t r = 0; r < rows; ++r) m(r, c) -= dot * m(r, p);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < rows; ++r) norm += std::norm(m(r, c));
    for (std::size_t r = 0; r < rows; ++r) m(r, c) /= std::sqrt(norm);
  }
  return m;
}

inline ComplexMatrix random_unitary(std::size_t d, std::mt19937_64& g = rng()) { return random_isometry(d, d, g); }

// Channel with `count` Kraus operators cut out of a random isometry
// C^{din} -> C^{dout} (x) C^{count}, output index major.
inline avqc::KrausChannel random_channel(std::size_t din, std::size_t dout, std::size_t count,
                                         std::mt19937_64& g = rng()) {
  ComplexMatrix v = random_isometry(dout * count, din, g);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < count; ++k) {
    ComplexMatrix a(dout, din);
    for (std::size_t o = 0; o < dout; ++o)
      for (std::size_t i = 0; i < din; ++i) a(o, i) = v(o * count + k, i);
    ops.push_back(a);
  }
  return avqc::KrausChannel(ops);
}

inline std::vector<double> random_distribution(std::size_t n, std::mt19937_64& g = rng()) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = e(g));
  for (auto& x : p) x /= s;
  return p;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

inline ComplexMatrix ket_bra_basis(std::size_t d, std::size_t i) { return ComplexMatrix::unit(d, i, i); }

}  // namespace testing_support
