#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "avqc/channels.hpp"

namespace avqc {

inline constexpr std::size_t kMaxSymmetrizationBlock = 3;
inline constexpr std::size_t kMaxThetaSequences = 256;
inline constexpr double kProbeDistinctness = 1e-6;
inline constexpr double kSymmetrizableThreshold = 1e-6;

/// Input states on which the symmetrization constraints are imposed.
class ProbeSet {
 public:
  explicit ProbeSet(std::size_t dim) : dim_(dim) {}

  // The d^2 states |j><j|, (|j>+|k>)(<j|+<k|)/2, (|j>+i|k>)(<j|-i<k|)/2 (j < k).
  static ProbeSet spanning(std::size_t dim);

  // Appends a state unless it is within trace distance 1e-6 of an existing
  // probe. Returns whether it was added.
  bool add(const DensityOperator& rho);

  // Appends `pairs` pairs of Haar-random pure states.
  void add_random_pure_pairs(std::size_t pairs, std::uint64_t seed);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return states_.size(); }
  const std::vector<DensityOperator>& states() const noexcept { return states_; }

  // Gram matrix of the vectorized states has rank dim^2 (within 1e-8).
  bool spans_hermitian_space() const;

  std::string description;

 private:
  std::size_t dim_;
  std::vector<DensityOperator> states_;
};

struct SymmetrizerOptions {
  std::size_t restarts = 10;
  std::size_t max_iterations = 20000;
  std::size_t stall_window = 100;
  double stall_tolerance = 1e-12;
  // Projected subgradient iterations on the max-pair objective after the
  // smooth phase.
  std::size_t minimax_iterations = 2000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct SymmetrizerSolution {
  // tau[i] is the distribution over Theta^L (lexicographic, first use most
  // significant) attached to probe i.
  std::vector<std::vector<double>> tau;
  double residual_frobenius = 0.0;   // max over probe pairs
  double residual_trace_norm = 0.0;  // max over probe pairs
  // Lower bound on min_tau max_pairs ||.||_F from the Frank-Wolfe gap of the
  // sum-of-squares relaxation. Positive values certify non-symmetrizability
  // on the probe set independently of solver convergence.
  double certified_lower_bound = 0.0;
  std::size_t worst_pair_first = 0;
  std::size_t worst_pair_second = 0;
  std::size_t restart_index = 0;

  bool symmetrizable_on_probe_set(double threshold = kSymmetrizableThreshold) const {
    return residual_frobenius <= threshold;
  }
};

/// All Theta^L sequences in lexicographic order.
std::vector<std::vector<std::size_t>> theta_sequences(std::size_t theta_count, std::size_t length);

/// Jointly optimizes one distribution over Theta^L per probe so that
/// sum tau_i(t) N_t(rho_j) = sum tau_j(t) N_t(rho_i) for all probe pairs.
SymmetrizerSolution symmetrizability_residual(const AVQCFamily& fam, std::size_t block_length,
                                              const ProbeSet& probes,
                                              const SymmetrizerOptions& opts = {});

enum class SymmetrizerRule {
  // q_rho(theta^L) = 2^{-L} <g(theta^L)| rho |g(theta^L)> with g mapping
  // k^(s) to k - 1; defined for families labelled {1+, 1-, 2+, 2-} on C^2.
  ComputationalBasis,
};

/// Max trace-norm residual of the closed-form symmetrizer over all probe pairs.
double verify_explicit_symmetrizer(const AVQCFamily& fam, std::size_t block_length,
                                   SymmetrizerRule rule, const ProbeSet& probes);

struct FlOptions {
  SymmetrizerOptions solver{};
  std::size_t extra_random_pairs = 2;
  std::vector<DensityOperator> extra_probes;
};

struct FlResult {
  double value = 0.0;  // max trace-norm residual at the optimizer
  SymmetrizerSolution solution;
  std::size_t probe_count = 0;
  std::string probe_description;
};

/// F_L indicator on the spanning probe set augmented with random pure pairs
/// and any caller-supplied probes.
FlResult f_l(const AVQCFamily& fam, std::size_t block_length, const FlOptions& opts = {});

struct FTotalResult {
  double value = 0.0;       // sum_{L=1}^{L_max} 2^{-L} F_L
  double tail_bound = 0.0;  // 2 * 2^{-L_max}
  std::vector<double> per_block;
};

FTotalResult f_total(const AVQCFamily& fam, std::size_t max_block_length,
                     const FlOptions& opts = {});

/// Row-stochastic matrix W[a][b] = W(b|a).
using StochasticMatrix = std::vector<std::vector<double>>;

struct ClassicalSymmetrizerResult {
  double max_violation = 0.0;
  std::vector<std::vector<double>> tau;  // tau[a] over Theta
};

/// Linear feasibility of sum_theta tau(theta|a) W_theta(b|a') =
/// sum_theta tau(theta|a') W_theta(b|a); reports the max absolute violation.
ClassicalSymmetrizerResult classical_symmetrizability(const std::vector<StochasticMatrix>& channels,
                                                      const SymmetrizerOptions& opts = {});

}  // namespace avqc
