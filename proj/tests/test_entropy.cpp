#include <doctest.h>

#include <array>
#include <cmath>

#include "avqc/catalog.hpp"
#include "avqc/entropy.hpp"
#include "avqc/error.hpp"
#include "support.hpp"

using namespace avqc;
using namespace testing_support;

namespace {

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

DensityOperator diag_state(const std::vector<double>& p) { return DensityOperator(ComplexMatrix::diagonal(p)); }

// Classical oracles evaluated straight from the definitions.
double oracle_mi(const std::vector<std::vector<double>>& p) {
  const std::size_t nx = p.size(), ny = p[0].size();
  std::vector<double> px(nx, 0.0), py(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      px[x] += p[x][y];
      py[y] += p[x][y];
    }
  double i = 0.0;
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      if (p[x][y] > 0) i += p[x][y] * std::log2(p[x][y] / (px[x] * py[y]));
  return i;
}

double oracle_conditional(const std::vector<std::vector<double>>& p) {
  double h = 0.0;
  const std::size_t nx = p.size(), ny = p[0].size();
  for (std::size_t y = 0; y < ny; ++y) {
    double py = 0.0;
    for (std::size_t x = 0; x < nx; ++x) py += p[x][y];
    for (std::size_t x = 0; x < nx; ++x)
      if (p[x][y] > 0) h -= p[x][y] * std::log2(p[x][y] / py);
  }
  return h;
}

}  // namespace

TEST_CASE("vn_entropy examples") {
  const std::array<Complex, 3> ket{0.6, Complex(0.0, 0.8), 0.0};
  CHECK(vn_entropy(DensityOperator::pure(ket)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(vn_entropy(DensityOperator::maximally_mixed(2)) == doctest::Approx(1.0));
  CHECK(vn_entropy(diag_state({0.25, 0.75})) == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(vn_entropy(diag_state({0.25, 0.75})) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
}

TEST_CASE("vn_entropy bounds and unitary invariance") {
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t d = 2 + rep % 4;
    const auto rho = random_state(d);
    const double s = vn_entropy(rho);
    CHECK(s >= 0.0);
    CHECK(s <= std::log2(static_cast<double>(d)) + 1e-9);
    const auto u = random_unitary(d);
    CHECK(vn_entropy(DensityOperator(u * rho.matrix() * u.adjoint())) == doctest::Approx(s).epsilon(1e-9));
  }
}

TEST_CASE("vn_entropy is concave") {
  for (int rep = 0; rep < 20; ++rep) {
    const auto a = random_state(3), b = random_state(3);
    const auto mid = DensityOperator(0.5 * (a.matrix() + b.matrix()));
    CHECK(vn_entropy(mid) >= 0.5 * vn_entropy(a) + 0.5 * vn_entropy(b) - 1e-9);
  }
}

TEST_CASE("vn_entropy_of clamps tiny negative eigenvalues") {
  const std::array<double, 2> drift{1.0 + 5e-10, -5e-10};
  CHECK(vn_entropy_of(ComplexMatrix::diagonal(drift)) == doctest::Approx(0.0).epsilon(1e-8));
  const std::array<double, 2> bad{1.1, -0.1};
  CHECK_THROWS_AS(vn_entropy_of(ComplexMatrix::diagonal(bad)), Error);
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
  for (int i = 1; i < 100; ++i) {
    const double v = i / 100.0;
    CHECK(binary_entropy(v) == doctest::Approx(binary_entropy(1.0 - v)).epsilon(1e-12));
    CHECK(binary_entropy(v) == doctest::Approx(h2(v)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(binary_entropy(-0.01), Error);
  CHECK_THROWS_AS(binary_entropy(1.01), Error);
}

TEST_CASE("holevo examples") {
  const auto r = random_state(3);
  CHECK(holevo(Ensemble({0.3, 0.7}, {r, r})) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(holevo(Ensemble({0.5, 0.5}, {DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)})) ==
        doctest::Approx(1.0));

  // Basis inputs through the uniform mixture of the four Example-1 channels.
  const auto fam = example1_family();
  const std::array<double, 4> q{0.25, 0.25, 0.25, 0.25};
  const auto mix = mixture_channel(fam, q);
  const Ensemble e({0.5, 0.5}, {apply(mix, DensityOperator::basis(2, 0)), apply(mix, DensityOperator::basis(2, 1))});
  CHECK(holevo(e) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("holevo bounds") {
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t k = 2 + rep % 3, d = 2 + rep % 2;
    std::vector<DensityOperator> states;
    for (std::size_t i = 0; i < k; ++i) states.push_back(random_state(d));
    const double chi = holevo(Ensemble(random_distribution(k), states));
    CHECK(chi >= 0.0);
    CHECK(chi <= std::log2(static_cast<double>(k)) + 1e-9);
    CHECK(chi <= std::log2(static_cast<double>(d)) + 1e-9);
  }
}

TEST_CASE("holevo equals classical mutual information on commuting ensembles") {
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t nx = 2 + rep % 3, ny = 2 + (rep / 3) % 3;
    const auto flat = random_distribution(nx * ny);
    std::vector<std::vector<double>> p(nx, std::vector<double>(ny));
    JointDistribution joint{nx, ny, flat};
    std::vector<double> px(nx, 0.0);
    std::vector<DensityOperator> states;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) px[x] += (p[x][y] = flat[x * ny + y]);
      std::vector<double> row(ny);
      for (std::size_t y = 0; y < ny; ++y) row[y] = p[x][y] / px[x];
      states.push_back(diag_state(row));
    }
    const double mi = classical_mi(joint);
    CHECK(mi == doctest::Approx(oracle_mi(p)).epsilon(1e-10));
    CHECK(holevo(Ensemble(px, states)) == doctest::Approx(mi).epsilon(1e-9));
  }
}

TEST_CASE("classical_mi examples and errors") {
  CHECK(classical_mi({2, 2, {0.25, 0.25, 0.25, 0.25}}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(classical_mi({2, 3, {0.1 * 0.2, 0.1 * 0.3, 0.1 * 0.5, 0.9 * 0.2, 0.9 * 0.3, 0.9 * 0.5}}) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(classical_mi({2, 2, {0.5, 0.0, 0.0, 0.5}}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(classical_mi({2, 2, {0.5, 0.5, 0.5, -0.5}}), Error);
  CHECK_THROWS_AS(classical_mi({2, 2, {0.5, 0.5}}), Error);
  CHECK_THROWS_AS(classical_mi({2, 2, {0.2, 0.2, 0.2, 0.2}}), Error);
}

TEST_CASE("conditional_entropy") {
  const auto r = random_state(2), s = random_state(3);
  CHECK(conditional_entropy(DensityOperator(tensor(r.matrix(), s.matrix())), {2, 3}) ==
        doctest::Approx(vn_entropy(r)).epsilon(1e-10));

  const double h = 1.0 / std::sqrt(2.0);
  const std::array<Complex, 4> bell{h, 0.0, 0.0, h};
  CHECK(conditional_entropy(DensityOperator::pure(bell), {2, 2}) == doctest::Approx(-1.0).epsilon(1e-12));

  for (int rep = 0; rep < 10; ++rep) {
    const auto flat = random_distribution(6);
    std::vector<std::vector<double>> p(2, std::vector<double>(3));
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 3; ++y) p[x][y] = flat[x * 3 + y];
    CHECK(conditional_entropy(diag_state(flat), {2, 3}) == doctest::Approx(oracle_conditional(p)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(conditional_entropy(DensityOperator::maximally_mixed(5), {2, 3}), Error);
}
