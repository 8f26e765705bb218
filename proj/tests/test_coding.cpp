#include <doctest.h>

#include <array>
#include <cmath>

#include "avqc/catalog.hpp"
#include "avqc/coding.hpp"
#include "avqc/error.hpp"
#include "code_oracle.hpp"
#include "support.hpp"

using namespace avqc;
using namespace testing_support;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no avqc::Error thrown");
  return ErrorKind::NumericalFailure;
}

ComplexMatrix proj(std::size_t d, std::size_t i) { return ComplexMatrix::unit(d, i, i); }

BlockCode example1_code() {
  return BlockCode(1, {{1, 0}, {0, 1}}, {proj(3, 0), ComplexMatrix::identity(3) - proj(3, 0)});
}

BlockCode example1_swapped() {
  return BlockCode(1, {{0, 1}, {1, 0}}, {proj(3, 0), ComplexMatrix::identity(3) - proj(3, 0)});
}

// Random POVM with J outcomes from a random isometry C^d -> C^d (x) C^J.
std::vector<ComplexMatrix> random_povm(std::size_t d, std::size_t j, std::mt19937_64& g) {
  const auto v = random_isometry(d * j, d, g);
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 0; k < j; ++k) {
    ComplexMatrix block(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) block(r, c) = v(r * j + k, c);
    out.push_back(block.adjoint() * block);
  }
  return out;
}

CQSource random_source(std::size_t count, std::size_t dim, std::mt19937_64& g) {
  std::vector<std::string> labels;
  std::vector<DensityOperator> states;
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(std::to_string(i));
    states.push_back(random_state(dim, g));
  }
  return CQSource(labels, states, std::vector<double>(count, 1.0 / static_cast<double>(count)));
}

}  // namespace

TEST_CASE("perfect code on the identity channel") {
  const AVQCFamily fam({"id"}, {identity_channel(2)});
  const auto src = basis_source(2, 2);
  const BlockCode code(1, {{1, 0}, {0, 1}}, {proj(2, 0), proj(2, 1)});
  const std::array<std::size_t, 1> seq{0};
  CHECK(avg_error(code, fam, src, seq) == doctest::Approx(0.0));
  CHECK(max_error(code, fam, src, seq) == doctest::Approx(0.0));
  const auto wc = worst_case(code, fam, src, ErrorCriterion::Maximal);
  CHECK(wc.value == doctest::Approx(0.0));
  CHECK(wc.argmax_theta_seq == std::vector<std::size_t>{0});
}

TEST_CASE("Example-1 basis code") {
  const auto fam = example1_family();
  const auto src = basis_source(2, 2);
  const auto code = example1_code();
  const std::array<std::size_t, 1> two_plus{2}, one_minus{1};
  CHECK(avg_error(code, fam, src, two_plus) == doctest::Approx(0.5));
  CHECK(max_error(code, fam, src, two_plus) == doctest::Approx(1.0));
  CHECK(avg_error(code, fam, src, one_minus) == doctest::Approx(0.0));

  const auto wmax = worst_case(code, fam, src, ErrorCriterion::Maximal);
  CHECK(wmax.value == doctest::Approx(1.0));
  CHECK(wmax.argmax_theta_seq == std::vector<std::size_t>{2});
  const auto wavg = worst_case(code, fam, src, ErrorCriterion::Average);
  CHECK(wavg.value == doctest::Approx(0.5));

  for (std::size_t t = 0; t < 4; ++t) {
    const std::array<std::size_t, 1> s{t};
    CHECK(leakage(code, fam, src, s) == doctest::Approx(0.0).epsilon(1e-9));
  }
  CHECK(worst_case_leakage(code, fam, src).value <= 1e-9);
}

TEST_CASE("uniform decoder errs with probability 1 - 1/J") {
  const auto fam = example1_family();
  const auto src = basis_source(2, 2);
  for (std::size_t j : {2u, 3u, 5u}) {
    std::vector<std::vector<double>> enc(j, std::vector<double>{0.5, 0.5});
    std::vector<ComplexMatrix> dec(j, (1.0 / static_cast<double>(j)) * ComplexMatrix::identity(3));
    const BlockCode code(1, enc, dec);
    const std::array<std::size_t, 1> s{3};
    CHECK(avg_error(code, fam, src, s) == doctest::Approx(1.0 - 1.0 / static_cast<double>(j)).epsilon(1e-12));
    CHECK(max_error(code, fam, src, s) == doctest::Approx(1.0 - 1.0 / static_cast<double>(j)).epsilon(1e-12));
  }
}

TEST_CASE("scores agree with the brute-force oracle") {
  std::mt19937_64 g(9);
  for (int rep = 0; rep < 6; ++rep) {
    const std::size_t n = 1 + rep % 2, j = 2 + rep % 3;
    const AVQCFamily fam({"a", "b"}, {random_channel(2, 2, 2, g), random_channel(2, 2, 3, g)});
    const auto src = random_source(2, 2, g);
    std::vector<std::vector<double>> enc;
    for (std::size_t m = 0; m < j; ++m) enc.push_back(random_distribution(n == 1 ? 2 : 4, g));
    const auto dec = random_povm(n == 1 ? 2 : 4, j, g);
    const BlockCode code(n, enc, dec);
    for (const auto& seq : std::vector<std::vector<std::size_t>>{{0, 1}, {1, 1}, {1, 0}}) {
      const std::vector<std::size_t> theta(seq.begin(), seq.begin() + static_cast<long>(n));
      const auto s = score_code(code, fam, src, theta);
      const auto o = oracle_score(n, enc, dec, fam, src, theta);
      CHECK(s.avg_error == doctest::Approx(o.avg_error).epsilon(1e-10));
      CHECK(s.max_error == doctest::Approx(o.max_error).epsilon(1e-10));
      CHECK(s.leakage == doctest::Approx(o.leakage).epsilon(1e-9));
      CHECK(s.max_error >= s.avg_error - 1e-12);
      CHECK(s.leakage <= std::log2(static_cast<double>(j)) + 1e-9);
    }
    CHECK(worst_case(code, fam, src, ErrorCriterion::Maximal).value >=
          worst_case(code, fam, src, ErrorCriterion::Average).value - 1e-12);
  }
}

TEST_CASE("error and leakage are affine in the encoder") {
  std::mt19937_64 g(10);
  const AVQCFamily fam({"a"}, {random_channel(2, 3, 2, g)});
  const auto src = random_source(3, 2, g);
  const auto dec = random_povm(3, 2, g);
  for (int rep = 0; rep < 5; ++rep) {
    const std::vector<std::vector<double>> e1{random_distribution(3, g), random_distribution(3, g)};
    const std::vector<std::vector<double>> e2{random_distribution(3, g), random_distribution(3, g)};
    const double w = 0.3;
    std::vector<std::vector<double>> mix(2, std::vector<double>(3));
    for (int m = 0; m < 2; ++m)
      for (int x = 0; x < 3; ++x) mix[m][x] = w * e1[m][x] + (1 - w) * e2[m][x];
    const std::array<std::size_t, 1> s{0};
    const double a1 = avg_error(BlockCode(1, e1, dec), fam, src, s);
    const double a2 = avg_error(BlockCode(1, e2, dec), fam, src, s);
    CHECK(avg_error(BlockCode(1, mix, dec), fam, src, s) == doctest::Approx(w * a1 + (1 - w) * a2).epsilon(1e-9));
    // Leakage is a Holevo quantity, so mixing the encoders cannot exceed the
    // mixture of leakages (joint convexity of relative entropy).
    const double l1 = leakage(BlockCode(1, e1, dec), fam, src, s);
    const double l2 = leakage(BlockCode(1, e2, dec), fam, src, s);
    CHECK(leakage(BlockCode(1, mix, dec), fam, src, s) <= w * l1 + (1 - w) * l2 + 1e-9);
  }
}

TEST_CASE("leakage examples") {
  const AVQCFamily copy({"d"}, {KrausChannel({proj(2, 0), proj(2, 1)})});
  const BlockCode code(2, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
                       {proj(4, 0), proj(4, 1), proj(4, 2), proj(4, 3)});
  const std::array<std::size_t, 2> s{0, 0};
  CHECK(leakage(code, copy, basis_source(2, 2), s) == doctest::Approx(2.0).epsilon(1e-12));

  for (double lambda : {0.1, 0.3, 0.5}) {
    const auto fam = lambda_family(lambda);
    std::vector<ComplexMatrix> dec{proj(7, 0), ComplexMatrix::identity(7) - proj(7, 0)};
    const BlockCode c(1, {{1, 0}, {0, 1}}, dec);
    const auto wl = worst_case_leakage(c, fam, basis_source(2, 2));
    CHECK(wl.value <= lambda + 1e-9);
  }
}

TEST_CASE("worst case is invariant under duplicating a family member") {
  const auto fam = example1_family();
  const AVQCFamily dup({"1+", "1-", "2+", "2-", "2+copy"},
                       {fam.channel(0), fam.channel(1), fam.channel(2), fam.channel(3), fam.channel(2)});
  const auto src = basis_source(2, 2);
  const auto code = example1_code();
  for (auto c : {ErrorCriterion::Average, ErrorCriterion::Maximal})
    CHECK(worst_case(code, fam, src, c).value == worst_case(code, dup, src, c).value);

  const AVQCFamily single({"2+"}, {fam.channel(2)});
  const std::array<std::size_t, 1> s{0};
  CHECK(worst_case(code, single, src, ErrorCriterion::Average).value == avg_error(code, single, src, s));
}

TEST_CASE("randomized codes") {
  const auto fam = example1_family();
  const auto src = basis_source(2, 2);
  const RandomizedCode rc({example1_code(), example1_swapped()}, {0.5, 0.5});
  for (std::size_t t = 0; t < 4; ++t) {
    const std::array<std::size_t, 1> s{t};
    const double weighted = 0.5 * avg_error(example1_code(), fam, src, s) + 0.5 * avg_error(example1_swapped(), fam, src, s);
    CHECK(weighted == doctest::Approx(0.5));
  }
  const auto r = randomized_eval(rc, fam, src, ErrorCriterion::Average);
  CHECK(r.error.value == doctest::Approx(0.5));
  CHECK(r.error.argmax_theta_seq == std::vector<std::size_t>{0});
  CHECK(r.leakage.value <= 1e-9);

  const RandomizedCode point({example1_code(), example1_swapped()}, {1.0, 0.0});
  const auto p = randomized_eval(point, fam, src, ErrorCriterion::Maximal);
  const auto d = worst_case(example1_code(), fam, src, ErrorCriterion::Maximal);
  CHECK(p.error.value == d.value);
  CHECK(p.error.argmax_theta_seq == d.argmax_theta_seq);

  const RandomizedCode one({example1_code()}, {1.0});
  CHECK(randomized_eval(one, fam, src, ErrorCriterion::Average).error.value ==
        worst_case(example1_code(), fam, src, ErrorCriterion::Average).value);

  CHECK(kind_of([&] { RandomizedCode({example1_code()}, {0.5, 0.5}); }) == ErrorKind::InvalidCode);
}

TEST_CASE("code validation") {
  CHECK(kind_of([] { BlockCode(1, {{0.5, 0.6}}, {ComplexMatrix::identity(2)}); }) ==
        ErrorKind::InvalidDistribution);
  CHECK(kind_of([] { BlockCode(1, {{1, 0}, {0, 1}}, {proj(2, 0), proj(2, 0)}); }) == ErrorKind::InvalidCode);
  // Sums to the identity but neither operator is PSD.
  const std::array<double, 2> neg{1.5, -0.5}, rest{-0.5, 1.5};
  CHECK(kind_of([&] {
          BlockCode(1, {{1, 0}, {0, 1}}, {ComplexMatrix::diagonal(neg), ComplexMatrix::diagonal(rest)});
        }) == ErrorKind::InvalidCode);
  CHECK(kind_of([] { BlockCode(1, {{1, 0}}, {proj(2, 0), proj(2, 1)}); }) == ErrorKind::InvalidCode);

  const auto fam = example1_family();
  const auto src = basis_source(2, 2);
  const std::array<std::size_t, 2> two{0, 0};
  CHECK(kind_of([&] { avg_error(example1_code(), fam, src, two); }) == ErrorKind::DimensionMismatch);
  const BlockCode wrong_dim(1, {{1, 0}, {0, 1}}, {proj(2, 0), proj(2, 1)});
  const std::array<std::size_t, 1> one{0};
  CHECK(kind_of([&] { avg_error(wrong_dim, fam, src, one); }) == ErrorKind::DimensionMismatch);
  const BlockCode wide(1, {{1, 0, 0}, {0, 1, 0}}, {proj(3, 0), ComplexMatrix::identity(3) - proj(3, 0)});
  CHECK(kind_of([&] { avg_error(wide, fam, src, one); }) == ErrorKind::DimensionMismatch);
}
