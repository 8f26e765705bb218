#include "avqc/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "avqc/entropy.hpp"
#include "avqc/error.hpp"
#include "avqc/simplex.hpp"

namespace avqc {

namespace {

constexpr double kInverseE = 0.36787944117144233;

ComplexMatrix pure_projector(std::span<const Complex> ket) {
  double norm = 0.0;
  for (const auto& z : ket) norm += std::norm(z);
  norm = std::sqrt(norm);
  ComplexMatrix m(ket.size(), ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]) / (norm * norm);
  return m;
}

double difference_norm(const KrausChannel& a, const KrausChannel& b, std::span<const Complex> ket) {
  const ComplexMatrix rho = pure_projector(ket);
  return trace_norm(hermitian_part(a.apply_matrix(rho) - b.apply_matrix(rho)));
}

std::vector<Complex> to_ket(std::span<const double> x) {
  std::vector<Complex> ket(x.size() / 2);
  for (std::size_t i = 0; i < ket.size(); ++i) ket[i] = Complex(x[2 * i], x[2 * i + 1]);
  return ket;
}

std::vector<Complex> normalized(std::vector<Complex> ket) {
  double norm = 0.0;
  for (const auto& z : ket) norm += std::norm(z);
  norm = std::sqrt(norm);
  for (auto& z : ket) z /= norm;
  return ket;
}

}  // namespace

ChannelDistance channel_distance(const KrausChannel& a, const KrausChannel& b,
                                 const ChannelDistanceOptions& opts) {
  if (a.dim_in() != b.dim_in() || a.dim_out() != b.dim_out()) {
    throw Error(ErrorKind::DimensionMismatch, "channels must share input and output dimensions");
  }
  const std::size_t d = a.dim_in();

  std::vector<std::vector<double>> starts;
  for (std::size_t i = 0; i < d && starts.size() < opts.starts; ++i) {
    std::vector<double> x(2 * d, 0.0);
    x[2 * i] = 1.0;
    starts.push_back(std::move(x));
  }
  for (std::size_t i = 0; i < d && starts.size() < opts.starts; ++i)
    for (std::size_t j = i + 1; j < d && starts.size() < opts.starts; ++j) {
      std::vector<double> plus(2 * d, 0.0), phase(2 * d, 0.0);
      plus[2 * i] = plus[2 * j] = 1.0;
      phase[2 * i] = 1.0;
      phase[2 * j + 1] = 1.0;
      starts.push_back(std::move(plus));
      if (starts.size() < opts.starts) starts.push_back(std::move(phase));
    }
  Rng rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (starts.size() < opts.starts) {
    std::vector<double> x(2 * d);
    for (double& v : x) v = gauss(rng);
    starts.push_back(std::move(x));
  }

  auto objective = [&](std::span<const double> x) {
    double norm = 0.0;
    for (double v : x) norm += v * v;
    if (norm < 1e-24) return 0.0;
    return -difference_norm(a, b, to_ket(x));
  };

  ChannelDistance out;
  out.value = -1.0;
  NelderMeadOptions nm;
  nm.initial_step = 0.25;
  nm.max_evaluations = 3000;
  for (const auto& s : starts) {
    const double start_value = -objective(s);
    if (start_value > out.value) {
      out.value = start_value;
      out.argmax = normalized(to_ket(s));
    }
    const OptimumPoint local = nelder_mead(objective, s, nm);
    if (-local.value > out.value) {
      out.value = -local.value;
      out.argmax = normalized(to_ket(local.point));
    }
  }

  if (d == 2 && opts.bloch_polar_steps > 0) {
    const std::size_t polar = opts.bloch_polar_steps;
    const std::size_t azimuth = 2 * polar;
    double grid_max = 0.0;
    std::vector<Complex> grid_arg;
    for (std::size_t i = 0; i < polar; ++i) {
      const double theta = (static_cast<double>(i) + 0.5) * std::numbers::pi / static_cast<double>(polar);
      for (std::size_t j = 0; j < azimuth; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(azimuth);
        const std::vector<Complex> ket{std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi)};
        const double v = difference_norm(a, b, ket);
        if (v > grid_max) {
          grid_max = v;
          grid_arg = ket;
        }
      }
    }
    if (grid_max > out.value) {
      out.value = grid_max;
      out.argmax = grid_arg;
    }
    // Every Bloch vector lies within chord distance pi/(2 polar) + pi/azimuth
    // of a grid point; the objective is 2-Lipschitz in ||rho - sigma||_1,
    // which equals the Bloch chord distance for pure qubit states.
    const double covering = std::numbers::pi / (2.0 * static_cast<double>(polar)) +
                            std::numbers::pi / static_cast<double>(azimuth);
    // The cap at 2 can sit an ulp below a rounded value of 2.
    out.upper_bound = std::max(out.value, std::min(2.0, grid_max + 2.0 * covering));
    out.gap_estimate = *out.upper_bound - out.value;
  }
  return out;
}

double fannes_audenaert(double mu, std::size_t d) {
  if (!(mu >= 0.0 && mu < kInverseE)) {
    throw Error(ErrorKind::OutOfRange, "Fannes-Audenaert requires 0 <= mu < 1/e");
  }
  if (d < 2) throw Error(ErrorKind::OutOfRange, "Fannes-Audenaert requires d >= 2");
  return mu * std::log2(static_cast<double>(d - 1)) + binary_entropy(mu);
}

SignedBound alicki_fannes(double eps, std::size_t d) {
  if (!(eps >= 0.0 && eps < 1.0)) throw Error(ErrorKind::OutOfRange, "Alicki-Fannes requires 0 <= eps < 1");
  if (d < 2) throw Error(ErrorKind::OutOfRange, "Alicki-Fannes requires d >= 2");
  const double linear = 4.0 * eps * std::log2(static_cast<double>(d - 1));
  const double h = 2.0 * binary_entropy(eps);
  return {linear + h, linear - h};
}

SignedBound secrecy_continuity_bound(double delta, std::size_t dim_q) {
  if (!(delta >= 0.0 && delta < kInverseE)) {
    throw Error(ErrorKind::OutOfRange, "secrecy continuity bound requires 0 <= delta < 1/e");
  }
  if (dim_q < 2) throw Error(ErrorKind::OutOfRange, "secrecy continuity bound requires dim >= 2");
  const double linear = 16.0 * delta * std::log2(static_cast<double>(dim_q - 1));
  const double h = 8.0 * binary_entropy(delta);
  return {linear + h, linear - h};
}

double channel_mutual_information(const StochasticMatrix& w, std::span<const double> prior) {
  if (w.empty() || prior.size() != w.size()) {
    throw Error(ErrorKind::ShapeMismatch, "prior length must equal the number of channel rows");
  }
  const std::size_t cols = w.front().size();
  JointDistribution joint{w.size(), cols, std::vector<double>(w.size() * cols)};
  for (std::size_t x = 0; x < w.size(); ++x) {
    if (w[x].size() != cols) throw Error(ErrorKind::ShapeMismatch, "ragged channel matrix");
    for (std::size_t y = 0; y < cols; ++y) joint.p[x * cols + y] = prior[x] * w[x][y];
  }
  return classical_mi(joint);
}

ClassicalContinuityReport classical_mi_continuity(const StochasticMatrix& w, const StochasticMatrix& w2,
                                                  std::size_t alphabet_size,
                                                  const std::vector<std::vector<double>>& priors) {
  if (w.empty() || w.size() != w2.size()) throw Error(ErrorKind::ShapeMismatch, "channel row counts differ");
  for (std::size_t a = 0; a < w.size(); ++a) {
    if (w[a].size() != w2[a].size() || w[a].size() != w.front().size()) {
      throw Error(ErrorKind::ShapeMismatch, "channel column counts differ");
    }
    validate_distribution(w[a], 1e-9, "channel row");
    validate_distribution(w2[a], 1e-9, "channel row");
  }
  if (alphabet_size == 0) throw Error(ErrorKind::OutOfRange, "alphabet size must be positive");

  ClassicalContinuityReport r;
  for (std::size_t a = 0; a < w.size(); ++a) {
    double row = 0.0;
    for (std::size_t b = 0; b < w[a].size(); ++b) row += std::abs(w[a][b] - w2[a][b]);
    r.epsilon = std::max(r.epsilon, row);
  }
  r.bound = r.epsilon * std::log2(static_cast<double>(alphabet_size));

  std::vector<std::vector<double>> checks = priors;
  if (checks.empty()) checks.push_back(std::vector<double>(w.size(), 1.0 / static_cast<double>(w.size())));
  for (const auto& p : checks) {
    ClassicalContinuityCheck c;
    c.prior = p;
    c.mi_first = channel_mutual_information(w, p);
    c.mi_second = channel_mutual_information(w2, p);
    c.difference = std::abs(c.mi_first - c.mi_second);
    c.violated = c.difference > r.bound + 1e-12;
    r.any_violation = r.any_violation || c.violated;
    r.checks.push_back(std::move(c));
  }
  return r;
}

}  // namespace avqc
