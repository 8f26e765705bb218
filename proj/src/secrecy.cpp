#include "avqc/secrecy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "avqc/entropy.hpp"
#include "avqc/error.hpp"
#include "avqc/parallel.hpp"
#include "avqc/symmetrizability.hpp"

namespace avqc {

namespace {

constexpr double kSameOutputTolerance = 1e-12;
constexpr double kArgmaxTieTolerance = 1e-12;

std::size_t checked_power(std::size_t base, std::size_t exponent, const std::string& what) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    out *= base;
    if (out > kMaxEnumeration) {
      throw Error(ErrorKind::BlocklengthTooLarge, what + " exceeds 4096 at blocklength " +
                                                      std::to_string(exponent));
    }
  }
  return out;
}

void validate_blocklength(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                          std::size_t max_n) {
  if (n == 0 || n > max_n) {
    throw Error(ErrorKind::BlocklengthTooLarge,
                "blocklength must be 1.." + std::to_string(max_n) + ", got " + std::to_string(n));
  }
  checked_power(fam.size(), n, "|Theta|^n");
  checked_power(src.size(), n, "|A|^n");
  if (src.dim() != fam.dim_in()) {
    throw Error(ErrorKind::DimensionMismatch, "source states have dimension " + std::to_string(src.dim()) +
                                                  ", channels expect " + std::to_string(fam.dim_in()));
  }
}

// chi of the product ensemble a^n -> (x)_i per_use[i][a_i] under the i.i.d.
// prior, streamed so only one n-fold state is held at a time.
double product_ensemble_chi(std::span<const double> prior,
                            const std::vector<const std::vector<ComplexMatrix>*>& per_use) {
  const std::size_t a = prior.size();
  const std::size_t n = per_use.size();
  std::size_t count = 1;
  std::size_t dim = 1;
  for (std::size_t i = 0; i < n; ++i) {
    count *= a;
    dim *= per_use[i]->front().rows();
  }
  ComplexMatrix average(dim, dim);
  double mean_entropy = 0.0;
  std::vector<std::size_t> digits(n);
  for (std::size_t idx = 0; idx < count; ++idx) {
    std::size_t rem = idx;
    double weight = 1.0;
    for (std::size_t pos = n; pos-- > 0;) {
      digits[pos] = rem % a;
      rem /= a;
      weight *= prior[digits[pos]];
    }
    if (weight <= 0.0) continue;
    ComplexMatrix state = (*per_use[0])[digits[0]];
    for (std::size_t pos = 1; pos < n; ++pos) state = tensor(state, (*per_use[pos])[digits[pos]]);
    average.add_scaled(state, weight);
    mean_entropy += weight * vn_entropy_of(state);
  }
  const double chi = vn_entropy_of(average) - mean_entropy;
  if (chi < 0.0 && chi >= -kEigenClamp) return 0.0;
  return chi;
}

std::vector<ComplexMatrix> outputs_on_source(const KrausChannel& ch, const CQSource& src) {
  std::vector<ComplexMatrix> out;
  out.reserve(src.size());
  for (const auto& s : src.states) out.push_back(hermitian_part(ch.apply_matrix(s.matrix())));
  return out;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

// Single-letter data: legitimate outputs merged across jammer states that act
// identically on the source, environment outputs per jammer state.
struct LetterData {
  std::vector<std::vector<ComplexMatrix>> legit;  // [group][a]
  std::vector<std::vector<std::size_t>> members;  // [group] -> theta indices
  std::vector<std::vector<ComplexMatrix>> env;    // [theta][a]
  std::vector<std::vector<ComplexMatrix>> bob;    // [theta][a]
};

LetterData letter_data(const AVQCFamily& fam, const CQSource& src) {
  LetterData d;
  for (std::size_t t = 0; t < fam.size(); ++t) {
    d.bob.push_back(outputs_on_source(fam.channel(t), src));
    d.env.push_back(outputs_on_source(complementary(fam.channel(t)), src));
    const auto& out = d.bob.back();
    bool merged = false;
    for (std::size_t g = 0; g < d.legit.size() && !merged; ++g) {
      bool same = true;
      for (std::size_t a = 0; a < src.size() && same; ++a)
        same = max_abs_difference(d.legit[g][a], out[a]) <= kSameOutputTolerance;
      if (same) {
        d.members[g].push_back(t);
        merged = true;
      }
    }
    if (!merged) {
      d.legit.push_back(out);
      d.members.push_back({t});
    }
  }
  return d;
}

std::vector<ComplexMatrix> mix(const std::vector<std::vector<ComplexMatrix>>& outputs,
                               std::span<const double> q) {
  std::vector<ComplexMatrix> out(outputs.front().size(),
                                 ComplexMatrix(outputs.front().front().rows(), outputs.front().front().rows()));
  for (std::size_t g = 0; g < outputs.size(); ++g) {
    if (q[g] <= 0.0) continue;
    for (std::size_t a = 0; a < out.size(); ++a) out[a].add_scaled(outputs[g][a], q[g]);
  }
  return out;
}

struct ArgMax {
  double value = -std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

ArgMax max_chi(std::span<const double> prior, const std::vector<std::vector<ComplexMatrix>>& outputs) {
  ArgMax best;
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    const double v = holevo_of(prior, outputs[t]);
    if (v > best.value + kArgmaxTieTolerance) best = {v, t};
  }
  return best;
}

ArgMax min_chi(std::span<const double> prior, const std::vector<std::vector<ComplexMatrix>>& outputs) {
  ArgMax best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t t = 0; t < outputs.size(); ++t) {
    const double v = holevo_of(prior, outputs[t]);
    if (v < best.value - kArgmaxTieTolerance) best = {v, t};
  }
  return best;
}

OptimumPoint min_over_q(const LetterData& d, std::span<const double> prior, const SimplexSearchOptions& opts) {
  return minimize_on_simplex(
      [&](std::span<const double> q) { return holevo_of(prior, mix(d.legit, q)); }, d.legit.size(), opts);
}

OptimumPoint max_over_prior(const std::function<double(std::span<const double>)>& objective,
                            const CQSource& src, const FunctionalOptions& opts) {
  if (!opts.optimize_prior) return OptimumPoint{src.prior, -objective(src.prior), 1};
  auto negated = [&](std::span<const double> p) { return -objective(p); };
  return minimize_on_simplex(negated, src.size(), opts.prior_search);
}

std::vector<double> clean_distribution(std::vector<double> p) {
  for (double& x : p) x = std::max(x, 0.0);
  double sum = 0.0;
  for (double x : p) sum += x;
  for (double& x : p) x /= sum;
  return p;
}

}  // namespace

CQSource with_preprocessing(const CQSource& src, const PreprocessedSource& pre) {
  const std::size_t u = pre.u_alphabet.size();
  if (u == 0 || pre.p_u.size() != u || pre.kernel.size() != u) {
    throw Error(ErrorKind::ShapeMismatch, "U alphabet, p_U and kernel rows must have equal nonzero length");
  }
  std::vector<DensityOperator> states;
  for (std::size_t row = 0; row < u; ++row) {
    if (pre.kernel[row].size() != src.size()) {
      throw Error(ErrorKind::ShapeMismatch, "kernel row " + std::to_string(row) + " has " +
                                                std::to_string(pre.kernel[row].size()) +
                                                " entries, source alphabet has " +
                                                std::to_string(src.size()));
    }
    validate_distribution(pre.kernel[row], kPriorTolerance, "kernel row " + std::to_string(row));
    ComplexMatrix m(src.dim(), src.dim());
    for (std::size_t a = 0; a < src.size(); ++a) m.add_scaled(src.states[a].matrix(), pre.kernel[row][a]);
    states.push_back(DensityOperator::trusted(hermitian_part(m)));
  }
  return CQSource(pre.u_alphabet, std::move(states), pre.p_u);
}

double eavesdropper_chi(const AVQCFamily& fam, const CQSource& src, std::span<const double> prior,
                        std::span<const std::size_t> theta_seq) {
  if (theta_seq.empty()) throw Error(ErrorKind::BlocklengthTooLarge, "empty jammer sequence");
  validate_distribution(prior, 1e-9, "prior");
  std::vector<std::vector<ComplexMatrix>> env(fam.size());
  std::vector<const std::vector<ComplexMatrix>*> per_use;
  for (std::size_t t : theta_seq) {
    if (t >= fam.size()) throw Error(ErrorKind::OutOfRange, "jammer index out of range");
    if (env[t].empty()) env[t] = outputs_on_source(complementary(fam.channel(t)), src);
  }
  for (std::size_t t : theta_seq) per_use.push_back(&env[t]);
  return product_ensemble_chi(prior, per_use);
}

double legitimate_chi(const AVQCFamily& fam, const CQSource& src, std::span<const double> prior,
                      std::span<const double> q, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::BlocklengthTooLarge, "blocklength must be positive");
  validate_distribution(prior, 1e-9, "prior");
  const auto out = outputs_on_source(mixture_channel(fam, q), src);
  std::vector<const std::vector<ComplexMatrix>*> per_use(n, &out);
  return product_ensemble_chi(prior, per_use);
}

EavesdropperResult eavesdropper_chi_worstcase(const AVQCFamily& fam, const CQSource& src,
                                              std::size_t n, unsigned threads) {
  validate_blocklength(fam, src, n, kMaxSecrecyBlocklength);
  std::vector<std::vector<ComplexMatrix>> env;
  for (const auto& ch : fam.channels()) env.push_back(outputs_on_source(complementary(ch), src));
  const auto seqs = theta_sequences(fam.size(), n);
  const auto values = parallel_map(seqs.size(), threads, [&](std::size_t s) {
    std::vector<const std::vector<ComplexMatrix>*> per_use;
    for (std::size_t t : seqs[s]) per_use.push_back(&env[t]);
    return product_ensemble_chi(src.prior, per_use);
  });
  EavesdropperResult out{-std::numeric_limits<double>::infinity(), {}};
  for (std::size_t s = 0; s < seqs.size(); ++s) {
    if (values[s] > out.value + kArgmaxTieTolerance) {
      out.value = values[s];
      out.argmax_theta_seq = seqs[s];
    }
  }
  return out;
}

FunctionalReport avqc_secrecy_functional(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                         const FunctionalOptions& opts) {
  validate_blocklength(fam, src, n, kMaxSecrecyBlocklength);
  const LetterData d = letter_data(fam, src);

  auto objective = [&](std::span<const double> p) {
    return min_over_q(d, p, opts.q_search).value - max_chi(p, d.env).value;
  };
  const OptimumPoint prior_opt = max_over_prior(objective, src, opts);
  const std::vector<double> prior = clean_distribution(prior_opt.point);

  const OptimumPoint q_opt = min_over_q(d, prior, opts.q_search);
  const std::vector<double> group_q = clean_distribution(q_opt.point);
  std::vector<double> q(fam.size(), 0.0);
  for (std::size_t g = 0; g < d.members.size(); ++g)
    for (std::size_t t : d.members[g]) q[t] = group_q[g] / static_cast<double>(d.members[g].size());
  const ArgMax eve = max_chi(prior, d.env);

  FunctionalReport r;
  r.n = n;
  r.argmax_prior = prior;
  r.argmin_q = q;
  r.argmax_theta_seq.assign(n, eve.index);
  r.distinct_legitimate_outputs = d.legit.size();
  const double nd = static_cast<double>(n);
  r.legitimate_chi = legitimate_chi(fam, src, prior, q, n) / nd;
  r.eavesdropper_chi = eavesdropper_chi(fam, src, prior, r.argmax_theta_seq) / nd;
  r.value = r.legitimate_chi - r.eavesdropper_chi;
  r.clamped_value = std::max(0.0, r.value);
  return r;
}

FunctionalReport avqc_secrecy_functional(const AVQCFamily& fam, const CQSource& src,
                                         const PreprocessedSource& pre, std::size_t n,
                                         const FunctionalOptions& opts) {
  return avqc_secrecy_functional(fam, with_preprocessing(src, pre), n, opts);
}

CompoundReport compound_secrecy_csi(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                    const FunctionalOptions& opts) {
  validate_blocklength(fam, src, n, kMaxCompoundBlocklength);
  const LetterData d = letter_data(fam, src);
  CompoundReport r;
  r.n = n;
  std::vector<std::vector<double>> priors;
  for (std::size_t t = 0; t < fam.size(); ++t) {
    auto objective = [&](std::span<const double> p) {
      return holevo_of(p, d.bob[t]) - holevo_of(p, d.env[t]);
    };
    const OptimumPoint opt = max_over_prior(objective, src, opts);
    priors.push_back(clean_distribution(opt.point));
    r.per_branch.push_back(objective(priors.back()));
  }
  for (std::size_t t = 1; t < fam.size(); ++t)
    if (r.per_branch[t] < r.per_branch[r.argmin_theta] - kArgmaxTieTolerance) r.argmin_theta = t;
  r.argmax_theta = r.argmin_theta;
  r.argmax_prior = priors[r.argmin_theta];

  std::vector<double> point(fam.size(), 0.0);
  point[r.argmin_theta] = 1.0;
  const std::vector<std::size_t> seq(n, r.argmin_theta);
  const double nd = static_cast<double>(n);
  r.value = (legitimate_chi(fam, src, r.argmax_prior, point, n) -
             eavesdropper_chi(fam, src, r.argmax_prior, seq)) / nd;
  r.clamped_value = std::max(0.0, r.value);
  return r;
}

CompoundReport compound_secrecy_nocsi(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                      const FunctionalOptions& opts) {
  validate_blocklength(fam, src, n, kMaxCompoundBlocklength);
  const LetterData d = letter_data(fam, src);
  auto objective = [&](std::span<const double> p) {
    return min_chi(p, d.bob).value - max_chi(p, d.env).value;
  };
  const OptimumPoint opt = max_over_prior(objective, src, opts);
  CompoundReport r;
  r.n = n;
  r.argmax_prior = clean_distribution(opt.point);
  r.argmin_theta = min_chi(r.argmax_prior, d.bob).index;
  r.argmax_theta = max_chi(r.argmax_prior, d.env).index;

  std::vector<double> point(fam.size(), 0.0);
  point[r.argmin_theta] = 1.0;
  const std::vector<std::size_t> seq(n, r.argmax_theta);
  const double nd = static_cast<double>(n);
  r.value = (legitimate_chi(fam, src, r.argmax_prior, point, n) -
             eavesdropper_chi(fam, src, r.argmax_prior, seq)) / nd;
  r.clamped_value = std::max(0.0, r.value);
  return r;
}

AuxiliaryReport auxiliary_secrecy_search(const AVQCFamily& fam, const CQSource& src, std::size_t n,
                                         const AuxiliarySearchOptions& opts) {
  const std::size_t a = src.size();
  const std::size_t u = opts.u_size == 0 ? a + 1 : opts.u_size;
  PreprocessedSource kernel;
  for (std::size_t i = 0; i < u; ++i) kernel.u_alphabet.push_back("u" + std::to_string(i));
  kernel.p_u.assign(u, 1.0 / static_cast<double>(u));

  std::vector<std::vector<std::vector<double>>> candidates;
  {
    std::vector<std::vector<double>> identity(u, std::vector<double>(a, 1.0 / static_cast<double>(a)));
    for (std::size_t i = 0; i < std::min(u, a); ++i) {
      std::fill(identity[i].begin(), identity[i].end(), 0.0);
      identity[i][i] = 1.0;
    }
    candidates.push_back(std::move(identity));
  }
  Rng rng(opts.seed);
  for (std::size_t k = 0; k < opts.random_kernels; ++k) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < u; ++i) rows.push_back(random_simplex_point(a, rng));
    candidates.push_back(std::move(rows));
  }

  AuxiliaryReport best;
  bool have = false;
  for (auto& rows : candidates) {
    kernel.kernel = rows;
    FunctionalOptions fo = opts.functional;
    fo.optimize_prior = true;
    FunctionalReport rep = avqc_secrecy_functional(fam, src, kernel, n, fo);
    if (!have || rep.value > best.best.value + kArgmaxTieTolerance) {
      best.best = rep;
      best.kernel = kernel;
      best.kernel.p_u = rep.argmax_prior;
      have = true;
    }
  }
  return best;
}

}  // namespace avqc
