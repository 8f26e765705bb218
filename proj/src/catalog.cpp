#include "avqc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "avqc/continuity.hpp"
#include "avqc/error.hpp"
#include "avqc/secrecy.hpp"
#include "avqc/simplex.hpp"
#include "avqc/symmetrizability.hpp"

namespace avqc {

namespace {

ComplexMatrix ket_bra(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
  ComplexMatrix m(rows, cols);
  m(i, j) = 1.0;
  return m;
}

// A_theta for the four Example-1 branches, as 3x2 matrices.
std::vector<ComplexMatrix> example1_kraus() {
  return {
      ket_bra(3, 2, 0, 0) + ket_bra(3, 2, 1, 1),
      ket_bra(3, 2, 0, 0) - ket_bra(3, 2, 1, 1),
      ket_bra(3, 2, 1, 0) + ket_bra(3, 2, 2, 1),
      ket_bra(3, 2, 1, 0) - ket_bra(3, 2, 2, 1),
  };
}

const std::vector<std::string> kExample1Labels{"1+", "1-", "2+", "2-"};

ComplexMatrix random_density(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) g(i, j) = Complex(gauss(rng), gauss(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho *= Complex(1.0 / rho.trace().real());
  return hermitian_part(rho);
}

std::vector<Complex> random_ket(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Complex> ket(dim);
  for (auto& z : ket) z = Complex(gauss(rng), gauss(rng));
  return ket;
}

Claim at_most(std::string id, std::string description, double value, double bound) {
  return {std::move(id), std::move(description), value, bound, "<=", 0.0, value <= bound};
}

Claim greater_than(std::string id, std::string description, double value, double bound) {
  return {std::move(id), std::move(description), value, bound, ">", 0.0, value > bound};
}

Claim at_least(std::string id, std::string description, double value, double bound) {
  return {std::move(id), std::move(description), value, bound, ">=", 0.0, value >= bound};
}

Claim close_to(std::string id, std::string description, double value, double target, double tol) {
  return {std::move(id), std::move(description), value, target, "|x-b|<=tol", tol,
          std::abs(value - target) <= tol};
}

FlOptions fl_options(const VerifyOptions& opts) {
  FlOptions fo;
  fo.solver.seed = opts.seed;
  fo.solver.threads = opts.threads;
  return fo;
}

}  // namespace

AVQCFamily example1_family() {
  std::vector<KrausChannel> channels;
  for (auto& a : example1_kraus()) channels.emplace_back(std::vector<ComplexMatrix>{a});
  return AVQCFamily(kExample1Labels, std::move(channels));
}

AVQCFamily lambda_family(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorKind::OutOfRange, "lambda must lie in [0, 1]");
  const auto base = example1_kraus();
  const double keep = std::sqrt(1.0 - lambda);
  const double flag = std::sqrt(lambda);
  std::vector<KrausChannel> channels;
  for (std::size_t t = 0; t < base.size(); ++t) {
    ComplexMatrix a(7, 2);
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 2; ++c) a(r, c) = keep * base[t](r, c);
    std::vector<ComplexMatrix> kraus{a};
    if (lambda > 0.0) {
      kraus.push_back(ket_bra(7, 2, 3 + t, 0) * Complex(flag));
      kraus.push_back(ket_bra(7, 2, 3 + t, 1) * Complex(flag));
    }
    channels.emplace_back(std::move(kraus));
  }
  return AVQCFamily(kExample1Labels, std::move(channels));
}

AVQCFamily superactivation_pair() {
  KrausChannel w1({ket_bra(4, 4, 0, 0) + ket_bra(4, 4, 1, 1), ket_bra(4, 4, 2, 2), ket_bra(4, 4, 2, 3)});
  KrausChannel w2({ket_bra(4, 4, 0, 0), ket_bra(4, 4, 0, 1), ket_bra(4, 4, 2, 2) + ket_bra(4, 4, 3, 3)});
  return AVQCFamily({"1", "2"}, {w1, w2});
}

AVQCFamily product_family(const AVQCFamily& a, const AVQCFamily& b) {
  std::vector<std::string> labels;
  std::vector<KrausChannel> channels;
  for (std::size_t s = 0; s < a.size(); ++s)
    for (std::size_t t = 0; t < b.size(); ++t) {
      labels.push_back("(" + a.theta()[s] + "," + b.theta()[t] + ")");
      channels.push_back(tensor_channels(a.channel(s), b.channel(t)));
    }
  return AVQCFamily(std::move(labels), std::move(channels));
}

CQSource basis_source(std::size_t dim, std::size_t count) {
  if (count == 0 || count > dim) throw Error(ErrorKind::OutOfRange, "basis source needs 1..dim states");
  std::vector<std::string> alphabet;
  std::vector<DensityOperator> states;
  for (std::size_t i = 0; i < count; ++i) {
    alphabet.push_back(std::to_string(i));
    states.push_back(DensityOperator::basis(dim, i));
  }
  return CQSource(std::move(alphabet), std::move(states),
                  std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

ComplexMatrix embed_env(const ComplexMatrix& env, const std::vector<std::size_t>& map, std::size_t dim) {
  if (map.size() != env.rows()) throw Error(ErrorKind::DimensionMismatch, "relabeling does not match env size");
  ComplexMatrix out(dim, dim);
  for (std::size_t i = 0; i < env.rows(); ++i)
    for (std::size_t j = 0; j < env.cols(); ++j) out(map.at(i), map.at(j)) = env(i, j);
  return out;
}

bool VerificationReport::all_passed() const {
  return std::all_of(claims.begin(), claims.end(), [](const Claim& c) { return c.passed; });
}

VerificationReport verify_example1(const VerifyOptions& opts) {
  VerificationReport r;
  r.name = "example1";
  const AVQCFamily fam = example1_family();
  const CQSource src = basis_source(2, 2);
  const FlOptions fo = fl_options(opts);

  for (std::size_t l : {1u, 2u}) {
    const FlResult f = f_l(fam, l, fo);
    r.probe_descriptions.push_back(f.probe_description);
    r.claims.push_back(at_most("a.f_l.L" + std::to_string(l), "F_L of the family vanishes on the probe set",
                               f.value, kSymmetrizableThreshold));
  }

  Rng rng(opts.seed);
  std::vector<DensityOperator> singles{DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)};
  const double h = 1.0 / std::numbers::sqrt2;
  const std::vector<Complex> plus{h, h};
  singles.push_back(DensityOperator::pure(plus));
  singles.push_back(DensityOperator(random_density(2, rng)));
  ProbeSet one(2);
  for (const auto& s : singles) one.add(s);
  ProbeSet two(4);
  for (const auto& x : singles)
    for (const auto& y : singles) two.add(DensityOperator::trusted(tensor(x.matrix(), y.matrix())));
  r.claims.push_back(at_most("b.explicit.L1", "closed-form symmetrizer residual",
                             verify_explicit_symmetrizer(fam, 1, SymmetrizerRule::ComputationalBasis, one), 1e-9));
  r.claims.push_back(at_most("b.explicit.L2", "closed-form symmetrizer residual on product probes",
                             verify_explicit_symmetrizer(fam, 2, SymmetrizerRule::ComputationalBasis, two), 1e-9));

  FunctionalOptions fopt;
  fopt.threads = opts.threads;
  fopt.prior_search.seed = opts.seed;
  fopt.q_search.seed = opts.seed;
  const FunctionalReport rep = avqc_secrecy_functional(fam, src, 1, fopt);
  r.claims.push_back(close_to("c.functional", "randomness-assisted functional on classical inputs", rep.value,
                              0.5, 1e-4));
  r.claims.push_back(close_to("c.argmin_q", "inner minimum mass on the index-1 group", rep.argmin_q[0] + rep.argmin_q[1],
                              0.5, 1e-4));

  double worst = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) worst = std::max(worst, std::abs(eavesdropper_chi_worstcase(fam, src, n, opts.threads).value));
  r.claims.push_back(at_most("d.leakage", "worst-case eavesdropper chi over theta^n, n <= 3", worst, 1e-9));
  return r;
}

VerificationReport verify_lambda(double lambda, const VerifyOptions& opts) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw Error(ErrorKind::OutOfRange, "lambda must lie in (0, 1]");
  VerificationReport r;
  r.name = "lambda:" + std::to_string(lambda);
  const AVQCFamily fam = lambda_family(lambda);
  const AVQCFamily base = lambda_family(0.0);
  const CQSource src = basis_source(2, 2);

  const FlResult f = f_l(fam, 1, fl_options(opts));
  r.probe_descriptions.push_back(f.probe_description);
  r.claims.push_back(greater_than("a.f_l.L1", "F_1 is strictly positive (not symmetrizable)", f.value, 1e-4));

  for (std::size_t n : {1u, 2u}) {
    const double chi = eavesdropper_chi_worstcase(fam, src, n, opts.threads).value / static_cast<double>(n);
    r.claims.push_back(at_most("b.leakage.n" + std::to_string(n), "per-use eavesdropper chi at the uniform prior",
                               chi, lambda + 1e-9));
  }

  FunctionalOptions fopt;
  fopt.optimize_prior = false;
  fopt.q_search.seed = opts.seed;
  const double v_lambda = avqc_secrecy_functional(fam, src, 1, fopt).legitimate_chi;
  const double v_zero = avqc_secrecy_functional(base, src, 1, fopt).legitimate_chi;
  double delta = 0.0;
  ChannelDistanceOptions dopt;
  dopt.seed = opts.seed;
  for (std::size_t t = 0; t < fam.size(); ++t) {
    const ChannelDistance d = channel_distance(fam.channel(t), base.channel(t), dopt);
    delta = std::max(delta, d.upper_bound.value_or(2.0));
  }
  const double trivial = std::log2(static_cast<double>(fam.dim_out()));
  double tolerance = trivial;
  if (delta < 0.36787944117144233) {
    tolerance = std::min(trivial, secrecy_continuity_bound(delta, fam.dim_out()).corrected);
  }
  r.claims.push_back(at_most("c.continuity", "|min_q chi(lambda) - min_q chi(0)| within the continuity tolerance",
                             std::abs(v_lambda - v_zero), tolerance));
  return r;
}

VerificationReport verify_superactivation(const VerifyOptions& opts) {
  VerificationReport r;
  r.name = "superactivation";
  const AVQCFamily pair = superactivation_pair();
  FunctionalOptions fopt;
  fopt.threads = opts.threads;
  fopt.prior_search.seed = opts.seed;
  fopt.q_search.seed = opts.seed;

  Rng rng(opts.seed);
  std::vector<CQSource> sources{basis_source(4, 4)};
  {
    std::vector<DensityOperator> states;
    for (int i = 0; i < 3; ++i) states.push_back(DensityOperator::pure(random_ket(4, rng)));
    sources.emplace_back(std::vector<std::string>{"r0", "r1", "r2"}, std::move(states),
                         std::vector<double>(3, 1.0 / 3.0));
  }
  double worst = -1e300;
  for (const auto& s : sources) worst = std::max(worst, avqc_secrecy_functional(pair, s, 1, fopt).value);
  r.claims.push_back(at_most("a.pair_functional", "functional of the pair never exceeds zero", worst, 1e-9));

  const AVQCFamily tensor_fam = product_family(pair, example1_family());
  FlOptions fo = fl_options(opts);
  const double h = 1.0 / std::numbers::sqrt2;
  std::vector<Complex> rho1(8, 0.0), rho2(8, 0.0);
  rho1[0] = rho1[2] = h;  // (|0>+|1>)/sqrt2 (x) |0>
  rho2[4] = rho2[6] = h;  // (|2>+|3>)/sqrt2 (x) |0>
  fo.extra_probes = {DensityOperator::pure(rho1), DensityOperator::pure(rho2)};
  const FlResult f = f_l(tensor_fam, 1, fo);
  r.probe_descriptions.push_back(f.probe_description + " incl. rho1, rho2");
  r.claims.push_back(greater_than("b.f_l.tensor", "F_1 of the tensor family is strictly positive", f.value, 1e-4));

  std::vector<DensityOperator> states{DensityOperator::basis(8, 0), DensityOperator::basis(8, 1)};
  const CQSource combined_src({"00", "01"}, std::move(states), {0.5, 0.5});
  const FunctionalReport combined = avqc_secrecy_functional(tensor_fam, combined_src, 1, fopt);
  r.claims.push_back(at_least("c.combined_functional", "functional of the tensor family", combined.value,
                              0.5 - 1e-4));
  return r;
}

}  // namespace avqc
