#pragma once

// Entropic quantities, all in bits.

#include <cstddef>
#include <span>
#include <vector>

#include "avqc/channels.hpp"
#include "avqc/linalg.hpp"

namespace avqc {

// Eigenvalues in [-kEigenClamp, 0) are treated as 0; anything lower is an error.
inline constexpr double kEigenClamp = 1e-9;

struct Ensemble {
  std::vector<double> prior;
  std::vector<DensityOperator> states;

  Ensemble(std::vector<double> prior, std::vector<DensityOperator> states);
};

// -sum p log2 p over a probability (or clamped spectrum) vector, 0 log 0 = 0.
double shannon_entropy(std::span<const double> p);

double vn_entropy(const DensityOperator& rho);

// Entropy of a Hermitian PSD matrix that has not been wrapped as a DensityOperator
// (trace is not re-checked). Throws InvalidState for eigenvalues below -1e-9.
double vn_entropy_of(const ComplexMatrix& m);

double binary_entropy(double nu);

double holevo(const Ensemble& e);

// Holevo quantity on raw matrices; `states` must share one dimension and be
// Hermitian PSD. Used by the optimizers to avoid revalidating every iterate.
double holevo_of(std::span<const double> prior, std::span<const ComplexMatrix> states);

// S(P|Q) = S(PQ) - S(Q) for a state on C^{dP} (x) C^{dQ}.
double conditional_entropy(const DensityOperator& joint, BipartiteDims dims);

// Probability matrix indexed [x][y], row-major.
struct JointDistribution {
  std::size_t rows;
  std::size_t cols;
  std::vector<double> p;

  double operator()(std::size_t x, std::size_t y) const { return p[x * cols + y]; }
};

double classical_mi(const JointDistribution& joint);

}  // namespace avqc
