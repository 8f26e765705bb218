#include "avqc/symmetrizability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "avqc/error.hpp"
#include "avqc/parallel.hpp"
#include "avqc/simplex.hpp"

namespace avqc {

// ---------------------------------------------------------------------------
// Probe sets

ProbeSet ProbeSet::spanning(std::size_t dim) {
  ProbeSet set(dim);
  for (std::size_t j = 0; j < dim; ++j) set.add(DensityOperator::basis(dim, j));
  const double h = 1.0 / std::numbers::sqrt2;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k) {
      std::vector<Complex> plus(dim, 0.0), phase(dim, 0.0);
      plus[j] = h;
      plus[k] = h;
      phase[j] = h;
      phase[k] = Complex(0.0, h);
      set.add(DensityOperator::pure(plus));
      set.add(DensityOperator::pure(phase));
    }
  set.description = "spanning(d=" + std::to_string(dim) + ")";
  return set;
}

bool ProbeSet::add(const DensityOperator& rho) {
  if (rho.dim() != dim_) {
    throw Error(ErrorKind::ProbeDimensionMismatch, "probe of dimension " + std::to_string(rho.dim()) +
                                                       " in a probe set of dimension " +
                                                       std::to_string(dim_));
  }
  for (const auto& s : states_) {
    if (0.5 * trace_norm(s.matrix() - rho.matrix()) < kProbeDistinctness) return false;
  }
  states_.push_back(rho);
  return true;
}

void ProbeSet::add_random_pure_pairs(std::size_t pairs, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t p = 0; p < 2 * pairs; ++p) {
    std::vector<Complex> ket(dim_);
    for (auto& z : ket) z = Complex(gauss(rng), gauss(rng));
    add(DensityOperator::pure(ket));
  }
}

namespace {

// Orthonormal real coordinates of a Hermitian matrix (Frobenius-isometric).
void append_hermitian_coordinates(const ComplexMatrix& m, std::vector<double>& out) {
  const std::size_t d = m.rows();
  for (std::size_t j = 0; j < d; ++j) out.push_back(m(j, j).real());
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      out.push_back(std::numbers::sqrt2 * m(j, k).real());
      out.push_back(std::numbers::sqrt2 * m(j, k).imag());
    }
}

}  // namespace

bool ProbeSet::spans_hermitian_space() const {
  const std::size_t n = states_.size();
  const std::size_t need = dim_ * dim_;
  if (n < need) return false;
  std::vector<std::vector<double>> coords(n);
  for (std::size_t i = 0; i < n; ++i) append_hermitian_coordinates(states_[i].matrix(), coords[i]);
  ComplexMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t v = 0; v < need; ++v) s += coords[i][v] * coords[j][v];
      gram(i, j) = s;
    }
  const auto eig = hermitian_eigenvalues(gram);
  const std::size_t rank = static_cast<std::size_t>(
      std::count_if(eig.begin(), eig.end(), [](double x) { return x > 1e-8; }));
  return rank == need;
}

std::vector<std::vector<std::size_t>> theta_sequences(std::size_t theta_count, std::size_t length) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> current(length, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < length; ++i) total *= theta_count;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t pos = length; pos-- > 0;) {
      current[pos] = rem % theta_count;
      rem /= theta_count;
    }
    out.push_back(current);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Solver core: K probes, T channel sequences, each output realified to a
// length-V vector. Minimizes g(tau) = sum_{i<j} ||M_j tau_i - M_i tau_j||^2
// over a product of simplices, then refines the max-pair objective.

namespace {

class SymmetrizerCore {
 public:
  SymmetrizerCore(std::size_t probes, std::size_t sequences, std::size_t length,
                  std::vector<double> outputs)
      : k_(probes), t_(sequences), v_(length), out_(std::move(outputs)), gram_(k_ * k_ * t_ * t_) {
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b)
        for (std::size_t s = 0; s < t_; ++s)
          for (std::size_t t = 0; t < t_; ++t) {
            const double* x = output(a, s);
            const double* y = output(b, t);
            double acc = 0.0;
            for (std::size_t v = 0; v < v_; ++v) acc += x[v] * y[v];
            gram_[gram_index(a, b, s, t)] = acc;
          }
    diag_sum_.assign(t_ * t_, 0.0);
    for (std::size_t j = 0; j < k_; ++j)
      for (std::size_t s = 0; s < t_ * t_; ++s) diag_sum_[s] += gram_[gram_index(j, j, 0, 0) + s];
  }

  std::size_t probes() const { return k_; }
  std::size_t sequences() const { return t_; }
  std::size_t pair_count() const { return k_ * (k_ - 1) / 2; }

  // r_ij = M_j tau_i - M_i tau_j
  void residual(const std::vector<double>& tau, std::size_t i, std::size_t j,
                std::vector<double>& r) const {
    r.assign(v_, 0.0);
    for (std::size_t s = 0; s < t_; ++s) {
      const double wi = tau[i * t_ + s];
      const double wj = tau[j * t_ + s];
      const double* oj = output(j, s);
      const double* oi = output(i, s);
      for (std::size_t v = 0; v < v_; ++v) r[v] += wi * oj[v] - wj * oi[v];
    }
  }

  // Gradient of g via the Gram blocks; returns g = tau . grad / 2.
  double gradient(const std::vector<double>& tau, std::vector<double>& grad) const {
    grad.assign(k_ * t_, 0.0);
    for (std::size_t i = 0; i < k_; ++i) {
      double* gi = &grad[i * t_];
      const double* hii = &gram_[gram_index(i, i, 0, 0)];
      for (std::size_t s = 0; s < t_; ++s) {
        double acc = 0.0;
        for (std::size_t t = 0; t < t_; ++t) acc += (diag_sum_[s * t_ + t] - hii[s * t_ + t]) * tau[i * t_ + t];
        gi[s] = acc;
      }
      for (std::size_t j = 0; j < k_; ++j) {
        if (j == i) continue;
        const double* hji = &gram_[gram_index(j, i, 0, 0)];
        const double* tj = &tau[j * t_];
        for (std::size_t s = 0; s < t_; ++s) {
          double acc = 0.0;
          for (std::size_t t = 0; t < t_; ++t) acc += hji[s * t_ + t] * tj[t];
          gi[s] -= acc;
        }
      }
      for (std::size_t s = 0; s < t_; ++s) gi[s] *= 2.0;
    }
    double g = 0.0;
    for (std::size_t x = 0; x < k_ * t_; ++x) g += tau[x] * grad[x];
    return 0.5 * g;
  }

  // Exact objective, exact gradient and max pair norm from explicit residuals.
  struct ExactEval {
    double sum_squares = 0.0;
    double max_pair = 0.0;
    std::size_t worst_i = 0;
    std::size_t worst_j = 0;
    std::vector<double> grad;
  };

  ExactEval exact(const std::vector<double>& tau, bool with_gradient) const {
    ExactEval e;
    if (with_gradient) e.grad.assign(k_ * t_, 0.0);
    std::vector<double> r;
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = i + 1; j < k_; ++j) {
        residual(tau, i, j, r);
        double n2 = 0.0;
        for (double x : r) n2 += x * x;
        e.sum_squares += n2;
        const double n = std::sqrt(n2);
        if (n > e.max_pair || (i == 0 && j == 1)) {
          e.max_pair = n;
          e.worst_i = i;
          e.worst_j = j;
        }
        if (with_gradient) {
          for (std::size_t s = 0; s < t_; ++s) {
            const double* oj = output(j, s);
            const double* oi = output(i, s);
            double di = 0.0, dj = 0.0;
            for (std::size_t v = 0; v < v_; ++v) {
              di += oj[v] * r[v];
              dj -= oi[v] * r[v];
            }
            e.grad[i * t_ + s] += 2.0 * di;
            e.grad[j * t_ + s] += 2.0 * dj;
          }
        }
      }
    return e;
  }

  // Squared pair norms from the Gram blocks (cheap, cancellation-limited).
  double pair_norm_squared(const std::vector<double>& tau, std::size_t i, std::size_t j) const {
    const double* ti = &tau[i * t_];
    const double* tj = &tau[j * t_];
    const double* hjj = &gram_[gram_index(j, j, 0, 0)];
    const double* hii = &gram_[gram_index(i, i, 0, 0)];
    const double* hji = &gram_[gram_index(j, i, 0, 0)];
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t s = 0; s < t_; ++s)
      for (std::size_t t = 0; t < t_; ++t) {
        a += ti[s] * hjj[s * t_ + t] * ti[t];
        c += tj[s] * hii[s * t_ + t] * tj[t];
        b += ti[s] * hji[s * t_ + t] * tj[t];
      }
    return std::max(0.0, a - 2.0 * b + c);
  }

  // Derivative of ||r_ij||^2 w.r.t. tau_i and tau_j.
  void pair_gradient(const std::vector<double>& tau, std::size_t i, std::size_t j,
                     std::vector<double>& grad) const {
    std::fill(grad.begin(), grad.end(), 0.0);
    const double* ti = &tau[i * t_];
    const double* tj = &tau[j * t_];
    const double* hjj = &gram_[gram_index(j, j, 0, 0)];
    const double* hii = &gram_[gram_index(i, i, 0, 0)];
    const double* hji = &gram_[gram_index(j, i, 0, 0)];
    for (std::size_t s = 0; s < t_; ++s) {
      double gi = 0.0, gj = 0.0;
      for (std::size_t t = 0; t < t_; ++t) {
        gi += hjj[s * t_ + t] * ti[t] - hji[s * t_ + t] * tj[t];
        gj += hii[s * t_ + t] * tj[t] - hji[t * t_ + s] * ti[t];
      }
      grad[i * t_ + s] = 2.0 * gi;
      grad[j * t_ + s] = 2.0 * gj;
    }
  }

  void project(std::vector<double>& tau) const {
    for (std::size_t i = 0; i < k_; ++i) project_to_simplex(std::span<double>(&tau[i * t_], t_));
  }

  double lipschitz() const {
    std::vector<double> x(k_ * t_, 1.0), g;
    double lambda = 0.0;
    for (int it = 0; it < 60; ++it) {
      double norm = 0.0;
      for (double v : x) norm += v * v;
      norm = std::sqrt(norm);
      if (norm == 0.0) return 1.0;
      for (double& v : x) v /= norm;
      gradient(x, g);
      double next = 0.0;
      for (std::size_t m = 0; m < x.size(); ++m) next += x[m] * g[m];
      lambda = std::max(lambda, next);
      x = g;
    }
    return std::max(lambda * 1.05, 1e-12);
  }

 private:
  std::size_t gram_index(std::size_t a, std::size_t b, std::size_t s, std::size_t t) const {
    return ((a * k_ + b) * t_ + s) * t_ + t;
  }
  const double* output(std::size_t probe, std::size_t seq) const { return &out_[(probe * t_ + seq) * v_]; }

  std::size_t k_, t_, v_;
  std::vector<double> out_;
  std::vector<double> gram_;
  std::vector<double> diag_sum_;
};

struct CoreSolution {
  std::vector<double> tau;
  double max_pair = 0.0;
  double lower_bound = 0.0;
  std::size_t worst_i = 0;
  std::size_t worst_j = 0;
  std::size_t restart = 0;
};

CoreSolution solve_from(const SymmetrizerCore& core, std::vector<double> tau, double lipschitz,
                        const SymmetrizerOptions& opts) {
  const std::size_t n = tau.size();
  const double step = 1.0 / lipschitz;
  std::vector<double> x = tau, y = tau, x_prev = tau, grad(n);
  double momentum = 1.0;
  double window_start = std::sqrt(core.exact(x, false).sum_squares);
  for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
    core.gradient(y, grad);
    x_prev = x;
    for (std::size_t m = 0; m < n; ++m) x[m] = y[m] - step * grad[m];
    core.project(x);
    // Gradient-based adaptive restart keeps FISTA monotone in practice.
    double restart_test = 0.0;
    for (std::size_t m = 0; m < n; ++m) restart_test += grad[m] * (x[m] - x_prev[m]);
    double next_momentum = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    if (restart_test > 0.0) {
      momentum = 1.0;
      next_momentum = 1.0;
    }
    const double beta = (momentum - 1.0) / next_momentum;
    for (std::size_t m = 0; m < n; ++m) y[m] = x[m] + beta * (x[m] - x_prev[m]);
    momentum = next_momentum;

    if (it % opts.stall_window == 0) {
      const double now = std::sqrt(core.exact(x, false).sum_squares);
      if (now <= 1e-13 || window_start - now < opts.stall_tolerance) break;
      window_start = now;
    }
  }

  auto exact = core.exact(x, true);
  CoreSolution best{x, exact.max_pair, 0.0, exact.worst_i, exact.worst_j, 0};

  // Frank-Wolfe gap: g(x) - g* <= sum_i (<grad_i, x_i> - min_s grad_i[s]).
  const std::size_t t = core.sequences();
  double gap = 0.0;
  for (std::size_t i = 0; i < core.probes(); ++i) {
    double inner = 0.0, lowest = exact.grad[i * t];
    for (std::size_t s = 0; s < t; ++s) {
      inner += exact.grad[i * t + s] * x[i * t + s];
      lowest = std::min(lowest, exact.grad[i * t + s]);
    }
    gap += inner - lowest;
  }
  const double pairs = static_cast<double>(std::max<std::size_t>(core.pair_count(), 1));
  best.lower_bound = std::sqrt(std::max(0.0, exact.sum_squares - gap) / pairs);

  if (opts.minimax_iterations == 0 || exact.max_pair <= 1e-9 || core.pair_count() <= 1) return best;

  // Projected subgradient on max_{i<j} ||r_ij|| with step c / sqrt(t).
  std::vector<double> z = x, pair_grad(n), best_z = x;
  double best_value = exact.max_pair;
  const double c = 0.1 * exact.max_pair / std::max(1e-300, std::sqrt(lipschitz));
  for (std::size_t it = 1; it <= opts.minimax_iterations; ++it) {
    double worst = -1.0;
    std::size_t wi = 0, wj = 1;
    for (std::size_t i = 0; i < core.probes(); ++i)
      for (std::size_t j = i + 1; j < core.probes(); ++j) {
        const double v = core.pair_norm_squared(z, i, j);
        if (v > worst) {
          worst = v;
          wi = i;
          wj = j;
        }
      }
    const double value = std::sqrt(worst);
    if (value < best_value) {
      best_value = value;
      best_z = z;
    }
    core.pair_gradient(z, wi, wj, pair_grad);
    double gnorm = 0.0;
    for (double g : pair_grad) gnorm += g * g;
    gnorm = std::sqrt(gnorm);
    if (gnorm <= 0.0) break;
    const double alpha = c / std::sqrt(static_cast<double>(it)) / gnorm;
    for (std::size_t m = 0; m < n; ++m) z[m] -= alpha * pair_grad[m];
    core.project(z);
  }
  auto refined = core.exact(best_z, false);
  if (refined.max_pair < best.max_pair) {
    best.tau = best_z;
    best.max_pair = refined.max_pair;
    best.worst_i = refined.worst_i;
    best.worst_j = refined.worst_j;
  }
  return best;
}

CoreSolution solve(const SymmetrizerCore& core, const SymmetrizerOptions& opts) {
  const std::size_t k = core.probes();
  const std::size_t t = core.sequences();
  const double lipschitz = core.lipschitz();
  const std::size_t restarts = std::max<std::size_t>(opts.restarts, 1);
  auto results = parallel_map(restarts, opts.threads, [&](std::size_t r) {
    std::vector<double> tau(k * t, 1.0 / static_cast<double>(t));
    if (r > 0) {
      Rng rng(opts.seed * 1000003ULL + r);
      for (std::size_t i = 0; i < k; ++i) {
        auto p = random_simplex_point(t, rng);
        std::copy(p.begin(), p.end(), tau.begin() + static_cast<std::ptrdiff_t>(i * t));
      }
    }
    CoreSolution s = solve_from(core, std::move(tau), lipschitz, opts);
    s.restart = r;
    return s;
  });
  std::size_t best = 0;
  double lower = 0.0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    if (results[r].max_pair < results[best].max_pair) best = r;
    lower = std::max(lower, results[r].lower_bound);
  }
  CoreSolution out = results[best];
  out.lower_bound = std::min(lower, out.max_pair);
  return out;
}

void validate_block(const AVQCFamily& fam, std::size_t block_length) {
  if (block_length == 0 || block_length > kMaxSymmetrizationBlock) {
    throw Error(ErrorKind::BlocklengthTooLarge,
                "symmetrization block length must be 1..3, got " + std::to_string(block_length));
  }
  double sequences = std::pow(static_cast<double>(fam.size()), static_cast<double>(block_length));
  if (sequences > static_cast<double>(kMaxThetaSequences)) {
    throw Error(ErrorKind::BlocklengthTooLarge,
                "|Theta|^L = " + std::to_string(static_cast<long long>(sequences)) + " exceeds 256");
  }
}

std::size_t block_dimension(std::size_t dim, std::size_t block_length) {
  std::size_t d = 1;
  for (std::size_t i = 0; i < block_length; ++i) d *= dim;
  return d;
}

// outputs[t][i] = N_{theta^L_t}(probe_i)
std::vector<std::vector<ComplexMatrix>> block_outputs(const AVQCFamily& fam, std::size_t block_length,
                                                      const ProbeSet& probes) {
  const auto seqs = theta_sequences(fam.size(), block_length);
  std::vector<std::vector<ComplexMatrix>> out;
  out.reserve(seqs.size());
  for (const auto& seq : seqs) {
    const KrausChannel ch = sequence_channel(fam, seq);
    std::vector<ComplexMatrix> row;
    row.reserve(probes.size());
    for (const auto& rho : probes.states()) row.push_back(hermitian_part(ch.apply_matrix(rho.matrix())));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

SymmetrizerSolution symmetrizability_residual(const AVQCFamily& fam, std::size_t block_length,
                                              const ProbeSet& probes, const SymmetrizerOptions& opts) {
  validate_block(fam, block_length);
  const std::size_t dim = block_dimension(fam.dim_in(), block_length);
  if (probes.dim() != dim) {
    throw Error(ErrorKind::ProbeDimensionMismatch, "probes live on dimension " +
                                                       std::to_string(probes.dim()) + ", expected " +
                                                       std::to_string(dim));
  }
  if (probes.size() < 2) {
    throw Error(ErrorKind::ProbeDimensionMismatch, "at least two probe states are required");
  }
  const auto outputs = block_outputs(fam, block_length, probes);
  const std::size_t t_count = outputs.size();
  const std::size_t k = probes.size();
  const std::size_t d_out = outputs.front().front().rows();
  const std::size_t v_len = d_out * d_out;

  std::vector<double> flat;
  flat.reserve(k * t_count * v_len);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t t = 0; t < t_count; ++t) append_hermitian_coordinates(outputs[t][i], flat);

  SymmetrizerCore core(k, t_count, v_len, std::move(flat));
  CoreSolution sol = solve(core, opts);

  SymmetrizerSolution out;
  out.tau.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.tau[i].assign(sol.tau.begin() + static_cast<std::ptrdiff_t>(i * t_count),
                      sol.tau.begin() + static_cast<std::ptrdiff_t>((i + 1) * t_count));
    for (double& x : out.tau[i]) x = std::max(x, 0.0);
  }
  out.residual_frobenius = sol.max_pair;
  out.certified_lower_bound = sol.lower_bound;
  out.worst_pair_first = sol.worst_i;
  out.worst_pair_second = sol.worst_j;
  out.restart_index = sol.restart;

  double max_trace = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      ComplexMatrix r(d_out, d_out);
      for (std::size_t t = 0; t < t_count; ++t) {
        r.add_scaled(outputs[t][j], out.tau[i][t]);
        r.add_scaled(outputs[t][i], -out.tau[j][t]);
      }
      max_trace = std::max(max_trace, trace_norm(hermitian_part(r)));
    }
  out.residual_trace_norm = max_trace;
  return out;
}

double verify_explicit_symmetrizer(const AVQCFamily& fam, std::size_t block_length,
                                   SymmetrizerRule rule, const ProbeSet& probes) {
  if (rule != SymmetrizerRule::ComputationalBasis) {
    throw Error(ErrorKind::RuleNotApplicable, "unknown symmetrizer rule");
  }
  validate_block(fam, block_length);
  if (fam.size() != 4 || fam.dim_in() != 2) {
    throw Error(ErrorKind::RuleNotApplicable,
                "computational-basis rule needs a four-member family on C^2");
  }
  // group[t] = k - 1 for label k^(s)
  std::vector<std::size_t> group(fam.size());
  const std::vector<std::string> labels{"1+", "1-", "2+", "2-"};
  for (std::size_t t = 0; t < fam.size(); ++t) {
    const auto& label = fam.theta()[t];
    if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
      throw Error(ErrorKind::RuleNotApplicable, "label " + label + " is not one of 1+, 1-, 2+, 2-");
    }
    group[t] = label[0] == '1' ? 0 : 1;
  }
  const std::size_t dim = block_dimension(2, block_length);
  if (probes.dim() != dim) {
    throw Error(ErrorKind::ProbeDimensionMismatch, "probes live on dimension " +
                                                       std::to_string(probes.dim()) + ", expected " +
                                                       std::to_string(dim));
  }
  const auto seqs = theta_sequences(fam.size(), block_length);
  const auto outputs = block_outputs(fam, block_length, probes);
  const double weight = 1.0 / static_cast<double>(dim);  // 2^{-L}

  auto tau = [&](const DensityOperator& rho) {
    std::vector<double> q(seqs.size());
    for (std::size_t t = 0; t < seqs.size(); ++t) {
      std::size_t index = 0;
      for (std::size_t pos = 0; pos < block_length; ++pos) index = 2 * index + group[seqs[t][pos]];
      q[t] = weight * rho.matrix()(index, index).real();
    }
    return q;
  };

  std::vector<std::vector<double>> taus;
  for (const auto& rho : probes.states()) taus.push_back(tau(rho));
  const std::size_t d_out = outputs.front().front().rows();
  double worst = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i)
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      ComplexMatrix r(d_out, d_out);
      for (std::size_t t = 0; t < seqs.size(); ++t) {
        r.add_scaled(outputs[t][j], taus[i][t]);
        r.add_scaled(outputs[t][i], -taus[j][t]);
      }
      worst = std::max(worst, trace_norm(hermitian_part(r)));
    }
  return worst;
}

FlResult f_l(const AVQCFamily& fam, std::size_t block_length, const FlOptions& opts) {
  validate_block(fam, block_length);
  const std::size_t dim = block_dimension(fam.dim_in(), block_length);
  ProbeSet probes = ProbeSet::spanning(dim);
  std::size_t supplied = 0;
  for (const auto& rho : opts.extra_probes) {
    probes.add(rho);
    ++supplied;
  }
  probes.add_random_pure_pairs(opts.extra_random_pairs, opts.solver.seed + 7919 * block_length);
  probes.description = "spanning(d=" + std::to_string(dim) + ") + " + std::to_string(supplied) +
                       " supplied + " + std::to_string(opts.extra_random_pairs) +
                       " random pure pairs (seed " + std::to_string(opts.solver.seed) + ")";
  FlResult out;
  out.solution = symmetrizability_residual(fam, block_length, probes, opts.solver);
  out.value = out.solution.residual_trace_norm;
  out.probe_count = probes.size();
  out.probe_description = probes.description;
  return out;
}

FTotalResult f_total(const AVQCFamily& fam, std::size_t max_block_length, const FlOptions& opts) {
  if (max_block_length == 0 || max_block_length > kMaxSymmetrizationBlock) {
    throw Error(ErrorKind::BlocklengthTooLarge, "L_max must be 1..3");
  }
  FTotalResult out;
  double scale = 1.0;
  for (std::size_t l = 1; l <= max_block_length; ++l) {
    scale *= 0.5;
    const double value = f_l(fam, l, opts).value;
    out.per_block.push_back(value);
    out.value += scale * value;
  }
  out.tail_bound = 2.0 * scale;
  return out;
}

ClassicalSymmetrizerResult classical_symmetrizability(const std::vector<StochasticMatrix>& channels,
                                                      const SymmetrizerOptions& opts) {
  if (channels.empty() || channels.front().empty() || channels.front().front().empty()) {
    throw Error(ErrorKind::ShapeMismatch, "need at least one non-empty channel matrix");
  }
  const std::size_t inputs = channels.front().size();
  const std::size_t outputs = channels.front().front().size();
  for (const auto& w : channels) {
    if (w.size() != inputs) throw Error(ErrorKind::ShapeMismatch, "channel input counts differ");
    for (const auto& row : w) {
      if (row.size() != outputs) throw Error(ErrorKind::ShapeMismatch, "channel output counts differ");
      validate_distribution(row, 1e-9, "channel row");
    }
  }
  const std::size_t t_count = channels.size();
  ClassicalSymmetrizerResult result;
  if (inputs < 2) {
    result.tau.assign(inputs, std::vector<double>(t_count, 1.0 / static_cast<double>(t_count)));
    return result;
  }
  std::vector<double> flat;
  flat.reserve(inputs * t_count * outputs);
  for (std::size_t a = 0; a < inputs; ++a)
    for (std::size_t t = 0; t < t_count; ++t)
      for (std::size_t b = 0; b < outputs; ++b) flat.push_back(channels[t][a][b]);
  SymmetrizerCore core(inputs, t_count, outputs, std::move(flat));
  CoreSolution sol = solve(core, opts);

  result.tau.resize(inputs);
  for (std::size_t a = 0; a < inputs; ++a)
    result.tau[a].assign(sol.tau.begin() + static_cast<std::ptrdiff_t>(a * t_count),
                         sol.tau.begin() + static_cast<std::ptrdiff_t>((a + 1) * t_count));
  std::vector<double> r;
  for (std::size_t i = 0; i < inputs; ++i)
    for (std::size_t j = i + 1; j < inputs; ++j) {
      core.residual(sol.tau, i, j, r);
      for (double x : r) result.max_violation = std::max(result.max_violation, std::abs(x));
    }
  return result;
}

}  // namespace avqc
