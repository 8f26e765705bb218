#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "avqc/linalg.hpp"

namespace avqc {

inline constexpr double kStateTolerance = 1e-9;
inline constexpr double kTracePreservingTolerance = 1e-9;
inline constexpr double kPriorTolerance = 1e-12;
inline constexpr std::size_t kMaxChannelPower = 4;

/// Hermitian, positive semidefinite, unit-trace matrix. Construction validates
/// all three properties and stores the Hermitian part.
class DensityOperator {
 public:
  explicit DensityOperator(const ComplexMatrix& m);

  // Skips validation; used for outputs of channels that are CPTP by construction.
  static DensityOperator trusted(ComplexMatrix m);

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

  static DensityOperator pure(std::span<const Complex> ket);
  static DensityOperator basis(std::size_t dim, std::size_t index);
  static DensityOperator maximally_mixed(std::size_t dim);

 private:
  struct TrustedTag {};
  DensityOperator(ComplexMatrix m, TrustedTag) : matrix_(std::move(m)) {}
  ComplexMatrix matrix_;
};

/// Completely positive trace-preserving map given by Kraus operators, each
/// dim_out x dim_in, with sum A_i^dagger A_i = I.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> kraus);

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  std::size_t kraus_count() const noexcept { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

  // sum_i A_i m A_i^dagger for an arbitrary dim_in x dim_in matrix (linear extension).
  ComplexMatrix apply_matrix(const ComplexMatrix& m) const;

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
};

struct StinespringIsometry {
  std::size_t dim_in;
  std::size_t dim_out;
  std::size_t dim_env;
  ComplexMatrix u;  // (dim_out * dim_env) x dim_in, output factor first
};

/// Classical-quantum front end: labelled input states with a prior.
struct CQSource {
  std::vector<std::string> alphabet;
  std::vector<DensityOperator> states;  // aligned with alphabet
  std::vector<double> prior;            // aligned with alphabet

  CQSource(std::vector<std::string> alphabet, std::vector<DensityOperator> states,
           std::vector<double> prior);

  std::size_t size() const noexcept { return alphabet.size(); }
  std::size_t dim() const noexcept { return states.front().dim(); }
};

/// Finite family {N_theta} sharing input and output dimensions.
class AVQCFamily {
 public:
  AVQCFamily(std::vector<std::string> theta, std::vector<KrausChannel> channels);

  std::size_t size() const noexcept { return theta_.size(); }
  std::size_t dim_in() const noexcept { return channels_.front().dim_in(); }
  std::size_t dim_out() const noexcept { return channels_.front().dim_out(); }
  const std::vector<std::string>& theta() const noexcept { return theta_; }
  const std::vector<KrausChannel>& channels() const noexcept { return channels_; }
  const KrausChannel& channel(std::size_t index) const { return channels_.at(index); }
  const KrausChannel& channel(const std::string& label) const;
  std::size_t index_of(const std::string& label) const;

 private:
  std::vector<std::string> theta_;
  std::vector<KrausChannel> channels_;
};

// Throws InvalidDistribution unless entries are >= 0 and sum to 1 within tol.
void validate_distribution(std::span<const double> p, double tol = kPriorTolerance,
                           const std::string& what = "distribution");

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho);

/// Canonical dilation U = sum_j A_j (x) |j>_E.
StinespringIsometry to_stinespring(const KrausChannel& ch);

/// Channel to the environment of the canonical dilation:
/// V'(rho)[j,k] = tr(A_k^dagger A_j rho). Its Kraus operators are
/// B_i[j,:] = row i of A_j, so dim_out(V') = kraus_count(ch).
KrausChannel complementary(const KrausChannel& ch);

/// Kraus set {A_i (x) B_j}, i major.
KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b);

/// n-fold tensor power, 1 <= n <= 4.
KrausChannel channel_power(const KrausChannel& ch, std::size_t n);

/// Kraus set {sqrt(q_theta) A_i^(theta)} with zero-weight members dropped.
KrausChannel mixture_channel(const AVQCFamily& fam, std::span<const double> q);

/// Product channel N_{theta_1} (x) ... (x) N_{theta_n} for an index sequence.
KrausChannel sequence_channel(const AVQCFamily& fam, std::span<const std::size_t> sequence);

/// W(P) = sum_x P(x) N(F(x)).
DensityOperator apply_to_source(const KrausChannel& ch, const CQSource& src);

/// Identity channel on a d-dimensional system.
KrausChannel identity_channel(std::size_t dim);

}  // namespace avqc
