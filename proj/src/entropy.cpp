#include "avqc/entropy.hpp"

#include <cmath>
#include <string>

#include "avqc/error.hpp"

namespace avqc {

Ensemble::Ensemble(std::vector<double> prior_in, std::vector<DensityOperator> states_in)
    : prior(std::move(prior_in)), states(std::move(states_in)) {
  if (prior.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::ShapeMismatch, "ensemble prior and state list lengths differ");
  }
  validate_distribution(prior, kPriorTolerance, "ensemble prior");
  for (const auto& s : states)
    if (s.dim() != states.front().dim())
      throw Error(ErrorKind::DimensionMismatch, "ensemble states must share one dimension");
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log2(x);
  return h;
}

double vn_entropy_of(const ComplexMatrix& m) {
  auto eig = hermitian_eigenvalues(m);
  for (double& lambda : eig) {
    if (lambda < -kEigenClamp) {
      throw Error(ErrorKind::InvalidState,
                  "eigenvalue " + std::to_string(lambda) + " below -1e-9 in entropy evaluation");
    }
    if (lambda < 0.0) lambda = 0.0;
  }
  return shannon_entropy(eig);
}

double vn_entropy(const DensityOperator& rho) { return vn_entropy_of(rho.matrix()); }

double binary_entropy(double nu) {
  if (!(nu >= 0.0 && nu <= 1.0)) {
    throw Error(ErrorKind::OutOfRange, "binary entropy argument must lie in [0, 1]");
  }
  const double p[2] = {nu, 1.0 - nu};
  return shannon_entropy(p);
}

double holevo_of(std::span<const double> prior, std::span<const ComplexMatrix> states) {
  if (prior.size() != states.size() || states.empty()) {
    throw Error(ErrorKind::ShapeMismatch, "ensemble prior and state list lengths differ");
  }
  const std::size_t d = states.front().rows();
  ComplexMatrix average(d, d);
  double mean_entropy = 0.0;
  for (std::size_t x = 0; x < states.size(); ++x) {
    if (prior[x] <= 0.0) continue;
    average.add_scaled(states[x], prior[x]);
    mean_entropy += prior[x] * vn_entropy_of(states[x]);
  }
  const double chi = vn_entropy_of(average) - mean_entropy;
  if (chi < 0.0 && chi >= -kEigenClamp) return 0.0;
  return chi;
}

double holevo(const Ensemble& e) {
  std::vector<ComplexMatrix> mats;
  mats.reserve(e.states.size());
  for (const auto& s : e.states) mats.push_back(s.matrix());
  return holevo_of(e.prior, mats);
}

double conditional_entropy(const DensityOperator& joint, BipartiteDims dims) {
  const ComplexMatrix reduced = partial_trace(joint.matrix(), dims, Keep::Second);
  return vn_entropy(joint) - vn_entropy_of(reduced);
}

double classical_mi(const JointDistribution& joint) {
  if (joint.p.size() != joint.rows * joint.cols || joint.p.empty()) {
    throw Error(ErrorKind::InvalidDistribution, "joint distribution shape mismatch");
  }
  validate_distribution(joint.p, 1e-9, "joint distribution");
  std::vector<double> px(joint.rows, 0.0);
  std::vector<double> py(joint.cols, 0.0);
  for (std::size_t x = 0; x < joint.rows; ++x)
    for (std::size_t y = 0; y < joint.cols; ++y) {
      px[x] += joint(x, y);
      py[y] += joint(x, y);
    }
  double mi = 0.0;
  for (std::size_t x = 0; x < joint.rows; ++x)
    for (std::size_t y = 0; y < joint.cols; ++y) {
      const double pxy = joint(x, y);
      if (pxy > 0.0) mi += pxy * std::log2(pxy / (px[x] * py[y]));
    }
  return mi < 0.0 ? 0.0 : mi;
}

}  // namespace avqc
