#pragma once

// Finite-blocklength secrecy functionals for AVQCs and compound channels.
//
// Priors are i.i.d. over the source alphabet and the jammer mixture q is
// i.i.d. across channel uses. Under these conventions every Holevo term is
// additive over uses of a product ensemble, so optimization runs on single
// letters; reported values are recomputed on the explicit n-fold ensembles.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "avqc/channels.hpp"
#include "avqc/simplex.hpp"

namespace avqc {

inline constexpr std::size_t kMaxSecrecyBlocklength = 3;
inline constexpr std::size_t kMaxCompoundBlocklength = 2;
inline constexpr std::size_t kMaxEnumeration = 4096;

struct PreprocessedSource {
  std::vector<std::string> u_alphabet;
  std::vector<double> p_u;
  std::vector<std::vector<double>> kernel;  // kernel[u][a] = E(a|u)
};

/// Source over U with states sum_a E(a|u) F(a) and prior p_U.
CQSource with_preprocessing(const CQSource& src, const PreprocessedSource& pre);

struct FunctionalOptions {
  SimplexSearchOptions prior_search{};
  SimplexSearchOptions q_search{};
  // When false the source's own prior is used instead of optimizing it.
  bool optimize_prior = true;
  unsigned threads = 1;
};

struct FunctionalReport {
  double value = 0.0;  // bits per channel use, may be negative
  double clamped_value = 0.0;
  double legitimate_chi = 0.0;  // chi(P^n, B_q^n) / n at the reported arguments
  double eavesdropper_chi = 0.0;  // chi(P^n, Z_{theta^n}) / n
  std::vector<double> argmax_prior;
  std::vector<double> argmin_q;  // over Theta
  std::vector<std::size_t> argmax_theta_seq;
  std::size_t n = 1;
  std::size_t distinct_legitimate_outputs = 0;  // jammer states after merging identical outputs
};

/// (1/n) max_P [ min_q chi(P, B_q^n) - max_{theta^n} chi(P, Z_{theta^n}) ].
FunctionalReport avqc_secrecy_functional(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                         const FunctionalOptions& opts = {});
FunctionalReport avqc_secrecy_functional(const AVQCFamily& fam, const CQSource& src,
                                         const PreprocessedSource& pre, std::size_t n,
                                         const FunctionalOptions& opts = {});

struct EavesdropperResult {
  double value = 0.0;  // chi of the n-fold environment ensemble (not normalized)
  std::vector<std::size_t> argmax_theta_seq;
};

/// Exact max over theta^n of chi(P^n, Z_{theta^n}) with P the source prior.
EavesdropperResult eavesdropper_chi_worstcase(const AVQCFamily& fam, const CQSource& src,
                                              std::size_t n, unsigned threads = 1);

/// chi of the n-fold product ensemble {V'_{theta^n}(F^n(a^n))} under P^n.
double eavesdropper_chi(const AVQCFamily& fam, const CQSource& src, std::span<const double> prior,
                        std::span<const std::size_t> theta_seq);

/// chi of the n-fold product ensemble {B_q^{(x)n}(F^n(a^n))} under P^n.
double legitimate_chi(const AVQCFamily& fam, const CQSource& src, std::span<const double> prior,
                      std::span<const double> q, std::size_t n);

struct CompoundReport {
  double value = 0.0;
  double clamped_value = 0.0;
  std::size_t n = 1;
  std::vector<double> argmax_prior;  // at the minimizing branch for CSI
  std::size_t argmin_theta = 0;      // CSI: minimizing branch; no-CSI: legit minimizer
  std::size_t argmax_theta = 0;      // no-CSI: eavesdropper maximizer
  std::vector<double> per_branch;    // CSI only
};

/// min_theta (1/n) max_P [chi(P, B_theta^n) - chi(P, Z_theta^n)].
CompoundReport compound_secrecy_csi(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                    const FunctionalOptions& opts = {});

/// (1/n) max_P [min_theta chi(P, B_theta^n) - max_theta chi(P, Z_theta^n)].
CompoundReport compound_secrecy_nocsi(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                      const FunctionalOptions& opts = {});

struct AuxiliarySearchOptions {
  FunctionalOptions functional{};
  std::size_t u_size = 0;        // 0 selects |A| + 1
  std::size_t random_kernels = 8;
  std::uint64_t seed = 0;
};

struct AuxiliaryReport {
  FunctionalReport best;
  PreprocessedSource kernel;
};

/// Searches over preprocessing kernels E(a|u): the identity kernel padded by
/// a uniform row plus seeded random kernels, each with an optimized p_U.
AuxiliaryReport auxiliary_secrecy_search(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                         const AuxiliarySearchOptions& opts = {});

}  // namespace avqc
