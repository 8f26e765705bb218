#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "avqc/channels.hpp"
#include "avqc/symmetrizability.hpp"

namespace avqc {

struct ChannelDistanceOptions {
  std::size_t starts = 32;
  std::uint64_t seed = 0;
  std::size_t bloch_polar_steps = 128;  // azimuthal steps are twice this
};

struct ChannelDistance {
  // max over pure inputs of ||a(rho) - b(rho)||_1 found by the search; a
  // lower bound on the induced 1-norm distance.
  double value = 0.0;
  std::vector<Complex> argmax;
  // For dim_in = 2: grid maximum plus the Lipschitz allowance for the grid's
  // covering radius, which bounds the true maximum from above.
  std::optional<double> upper_bound;
  std::optional<double> gap_estimate;
};

ChannelDistance channel_distance(const KrausChannel& a, const KrausChannel& b,
                                 const ChannelDistanceOptions& opts = {});

/// mu log(d-1) + h(mu) for 0 <= mu < 1/e, d >= 2.
double fannes_audenaert(double mu, std::size_t d);

struct SignedBound {
  double corrected = 0.0;  // with +h, used for every guarantee check
  double literal = 0.0;    // with -h as printed in the source statement
};

/// 4 eps log(d-1) +/- 2h(eps) for 0 <= eps < 1.
SignedBound alicki_fannes(double eps, std::size_t d);

/// 16 delta log(dim_q - 1) +/- 8h(delta) for 0 <= delta < 1/e.
SignedBound secrecy_continuity_bound(double delta, std::size_t dim_q);

struct ClassicalContinuityCheck {
  std::vector<double> prior;
  double mi_first = 0.0;
  double mi_second = 0.0;
  double difference = 0.0;  // |I(X;B) - I(X;B')|
  bool violated = false;
};

struct ClassicalContinuityReport {
  double epsilon = 0.0;  // max_a sum_b |W(b|a) - W'(b|a)|
  double bound = 0.0;    // epsilon * log |A|
  std::vector<ClassicalContinuityCheck> checks;
  bool any_violation = false;
};

/// Mutual information of the joint P(a) W(b|a).
double channel_mutual_information(const StochasticMatrix& w, std::span<const double> prior);

/// epsilon log|A| and its comparison with |Delta I| on every supplied prior
/// (the uniform prior when none are given).
ClassicalContinuityReport classical_mi_continuity(const StochasticMatrix& w, const StochasticMatrix& w2,
                                                  std::size_t alphabet_size,
                                                  const std::vector<std::vector<double>>& priors = {});

}  // namespace avqc
