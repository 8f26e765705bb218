#include "avqc/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "avqc/error.hpp"

namespace avqc {

DensityOperator::DensityOperator(const ComplexMatrix& m) : matrix_(1, 1) {
  if (!m.is_square()) {
    throw Error(ErrorKind::InvalidState, "density operator must be square");
  }
  if (!is_hermitian(m, kStateTolerance)) {
    throw Error(ErrorKind::InvalidState, "density operator must be Hermitian to 1e-9");
  }
  ComplexMatrix h = hermitian_part(m);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    throw Error(ErrorKind::InvalidState,
                "density operator must have trace within 1e-9 of 1 (got " + std::to_string(tr) + ")");
  }
  const auto eig = hermitian_eigenvalues(h);
  if (eig.front() < -kStateTolerance) {
    throw Error(ErrorKind::InvalidState, "density operator must have min eigenvalue >= -1e-9 (got " +
                                             std::to_string(eig.front()) + ")");
  }
  matrix_ = std::move(h);
}

DensityOperator DensityOperator::trusted(ComplexMatrix m) {
  return DensityOperator(std::move(m), TrustedTag{});
}

DensityOperator DensityOperator::pure(std::span<const Complex> ket) {
  double norm2 = 0.0;
  for (const auto& z : ket) norm2 += std::norm(z);
  if (ket.empty() || norm2 <= 0.0) throw Error(ErrorKind::InvalidState, "zero ket");
  ComplexMatrix m = ComplexMatrix::outer(ket);
  m *= 1.0 / norm2;
  return DensityOperator(m);
}

DensityOperator DensityOperator::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw Error(ErrorKind::OutOfRange, "basis index outside dimension");
  return trusted(ComplexMatrix::unit(dim, index, index));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m *= 1.0 / static_cast<double>(dim);
  return trusted(std::move(m));
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus)
    : dim_in_(0), dim_out_(0), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw Error(ErrorKind::InvalidChannel, "channel needs at least one Kraus operator");
  dim_out_ = kraus_.front().rows();
  dim_in_ = kraus_.front().cols();
  ComplexMatrix sum(dim_in_, dim_in_);
  for (const auto& a : kraus_) {
    if (a.rows() != dim_out_ || a.cols() != dim_in_) {
      throw Error(ErrorKind::InvalidChannel, "Kraus operators must share shape " +
                                                 std::to_string(dim_out_) + "x" +
                                                 std::to_string(dim_in_));
    }
    sum += a.adjoint() * a;
  }
  const double defect = frobenius_distance(sum, ComplexMatrix::identity(dim_in_));
  if (defect > kTracePreservingTolerance) {
    throw Error(ErrorKind::InvalidChannel,
                "sum of A_i^dagger A_i must equal the identity to 1e-9 (defect " +
                    std::to_string(defect) + ")");
  }
}

ComplexMatrix KrausChannel::apply_matrix(const ComplexMatrix& m) const {
  if (m.rows() != dim_in_ || m.cols() != dim_in_) {
    throw Error(ErrorKind::DimensionMismatch, "channel input dimension " + std::to_string(dim_in_) +
                                                  ", state dimension " + std::to_string(m.rows()));
  }
  ComplexMatrix out(dim_out_, dim_out_);
  for (const auto& a : kraus_) out += a * m * a.adjoint();
  return out;
}

CQSource::CQSource(std::vector<std::string> alphabet_in, std::vector<DensityOperator> states_in,
                   std::vector<double> prior_in)
    : alphabet(std::move(alphabet_in)), states(std::move(states_in)), prior(std::move(prior_in)) {
  if (alphabet.empty()) throw Error(ErrorKind::ShapeMismatch, "source alphabet is empty");
  if (states.size() != alphabet.size() || prior.size() != alphabet.size()) {
    throw Error(ErrorKind::ShapeMismatch, "source alphabet, states and prior lengths differ");
  }
  validate_distribution(prior, kPriorTolerance, "source prior");
  for (const auto& s : states) {
    if (s.dim() != states.front().dim()) {
      throw Error(ErrorKind::DimensionMismatch, "all source states must share one dimension");
    }
  }
}

AVQCFamily::AVQCFamily(std::vector<std::string> theta, std::vector<KrausChannel> channels)
    : theta_(std::move(theta)), channels_(std::move(channels)) {
  if (theta_.empty()) throw Error(ErrorKind::InvalidChannel, "family must have at least one member");
  if (theta_.size() != channels_.size()) {
    throw Error(ErrorKind::ShapeMismatch, "theta labels and channels differ in length");
  }
  for (std::size_t i = 0; i < theta_.size(); ++i) {
    for (std::size_t j = i + 1; j < theta_.size(); ++j)
      if (theta_[i] == theta_[j]) throw Error(ErrorKind::SchemaViolation, "duplicate theta label " + theta_[i]);
    if (channels_[i].dim_in() != channels_.front().dim_in() ||
        channels_[i].dim_out() != channels_.front().dim_out()) {
      throw Error(ErrorKind::DimensionMismatch, "family members must share dim_in and dim_out");
    }
  }
}

std::size_t AVQCFamily::index_of(const std::string& label) const {
  auto it = std::find(theta_.begin(), theta_.end(), label);
  if (it == theta_.end()) throw Error(ErrorKind::OutOfRange, "unknown theta label " + label);
  return static_cast<std::size_t>(it - theta_.begin());
}

const KrausChannel& AVQCFamily::channel(const std::string& label) const {
  return channels_[index_of(label)];
}

void validate_distribution(std::span<const double> p, double tol, const std::string& what) {
  if (p.empty()) throw Error(ErrorKind::InvalidDistribution, what + " is empty");
  double sum = 0.0;
  for (double x : p) {
    if (!std::isfinite(x) || x < 0.0) {
      throw Error(ErrorKind::InvalidDistribution, what + " has a negative or non-finite entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw Error(ErrorKind::InvalidDistribution, what + " must sum to 1 (got " + std::to_string(sum) + ")");
  }
}

DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
  return DensityOperator::trusted(hermitian_part(ch.apply_matrix(rho.matrix())));
}

StinespringIsometry to_stinespring(const KrausChannel& ch) {
  const std::size_t k = ch.kraus_count();
  ComplexMatrix u(ch.dim_out() * k, ch.dim_in());
  for (std::size_t j = 0; j < k; ++j) {
    const auto& a = ch.kraus()[j];
    for (std::size_t row = 0; row < ch.dim_out(); ++row)
      for (std::size_t col = 0; col < ch.dim_in(); ++col) u(row * k + j, col) = a(row, col);
  }
  return StinespringIsometry{ch.dim_in(), ch.dim_out(), k, std::move(u)};
}

KrausChannel complementary(const KrausChannel& ch) {
  const std::size_t k = ch.kraus_count();
  std::vector<ComplexMatrix> out;
  out.reserve(ch.dim_out());
  for (std::size_t i = 0; i < ch.dim_out(); ++i) {
    ComplexMatrix b(k, ch.dim_in());
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t col = 0; col < ch.dim_in(); ++col) b(j, col) = ch.kraus()[j](i, col);
    out.push_back(std::move(b));
  }
  return KrausChannel(std::move(out));
}

KrausChannel tensor_channels(const KrausChannel& a, const KrausChannel& b) {
  std::vector<ComplexMatrix> out;
  out.reserve(a.kraus_count() * b.kraus_count());
  for (const auto& x : a.kraus())
    for (const auto& y : b.kraus()) out.push_back(tensor(x, y));
  return KrausChannel(std::move(out));
}

KrausChannel channel_power(const KrausChannel& ch, std::size_t n) {
  if (n == 0 || n > kMaxChannelPower) {
    throw Error(ErrorKind::BlocklengthTooLarge,
                "channel power requires 1 <= n <= 4, got " + std::to_string(n));
  }
  KrausChannel out = ch;
  for (std::size_t i = 1; i < n; ++i) out = tensor_channels(out, ch);
  return out;
}

KrausChannel mixture_channel(const AVQCFamily& fam, std::span<const double> q) {
  if (q.size() != fam.size()) {
    throw Error(ErrorKind::InvalidDistribution, "mixture weights must match the family size");
  }
  validate_distribution(q, 1e-9, "mixture weights");
  std::vector<ComplexMatrix> out;
  for (std::size_t t = 0; t < fam.size(); ++t) {
    if (q[t] <= 0.0) continue;
    const double w = std::sqrt(q[t]);
    for (const auto& a : fam.channel(t).kraus()) out.push_back(a * Complex(w));
  }
  return KrausChannel(std::move(out));
}

KrausChannel sequence_channel(const AVQCFamily& fam, std::span<const std::size_t> sequence) {
  if (sequence.empty()) throw Error(ErrorKind::OutOfRange, "empty channel sequence");
  KrausChannel out = fam.channel(sequence[0]);
  for (std::size_t i = 1; i < sequence.size(); ++i) out = tensor_channels(out, fam.channel(sequence[i]));
  return out;
}

DensityOperator apply_to_source(const KrausChannel& ch, const CQSource& src) {
  ComplexMatrix out(ch.dim_out(), ch.dim_out());
  for (std::size_t x = 0; x < src.size(); ++x) {
    out.add_scaled(ch.apply_matrix(src.states[x].matrix()), src.prior[x]);
  }
  return DensityOperator::trusted(hermitian_part(out));
}

KrausChannel identity_channel(std::size_t dim) {
  return KrausChannel({ComplexMatrix::identity(dim)});
}

}  // namespace avqc
