#include <doctest.h>

#include <array>
#include <cmath>

#include "avqc/catalog.hpp"
#include "avqc/channels.hpp"
#include "avqc/error.hpp"
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

void check_density(const ComplexMatrix& m) {
  CHECK(is_hermitian(m));
  CHECK(std::abs(m.trace() - Complex(1.0)) <= 1e-9);
  CHECK(hermitian_eigenvalues(m).front() >= -1e-9);
}

// Spanning probe set built directly: |j><j| and the two phase combinations.
std::vector<DensityOperator> probes(std::size_t d) {
  std::vector<DensityOperator> out;
  for (std::size_t j = 0; j < d; ++j) out.push_back(DensityOperator::basis(d, j));
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = j + 1; k < d; ++k) {
      std::vector<Complex> a(d), b(d);
      a[j] = b[j] = 1.0;
      a[k] = 1.0;
      b[k] = Complex(0.0, 1.0);
      out.push_back(DensityOperator::pure(a));
      out.push_back(DensityOperator::pure(b));
    }
  return out;
}

}  // namespace

TEST_CASE("DensityOperator validation") {
  CHECK(kind_of([] { DensityOperator(ComplexMatrix(2, 3)); }) == ErrorKind::InvalidState);
  const std::array<double, 2> trace_heavy{0.6, 0.6};
  CHECK(kind_of([&] { DensityOperator(ComplexMatrix::diagonal(trace_heavy)); }) == ErrorKind::InvalidState);
  const std::array<double, 2> negative{1.5, -0.5};
  CHECK(kind_of([&] { DensityOperator(ComplexMatrix::diagonal(negative)); }) == ErrorKind::InvalidState);
  ComplexMatrix skew = ComplexMatrix::unit(2, 0, 0);
  skew(0, 1) = 0.3;
  CHECK(kind_of([&] { DensityOperator{skew}; }) == ErrorKind::InvalidState);

  const std::array<Complex, 2> ket{3.0, Complex(0.0, 4.0)};
  const auto pure = DensityOperator::pure(ket);
  CHECK(pure.matrix()(0, 0).real() == doctest::Approx(9.0 / 25.0));
  CHECK(std::abs(pure.matrix()(0, 1) - Complex(0.0, -12.0 / 25.0)) <= 1e-15);
  CHECK(kind_of([] { DensityOperator::basis(2, 2); }) == ErrorKind::OutOfRange);
}

TEST_CASE("KrausChannel validation") {
  CHECK(kind_of([] { KrausChannel({}); }) == ErrorKind::InvalidChannel);
  CHECK(kind_of([] { KrausChannel({0.5 * ComplexMatrix::identity(2)}); }) == ErrorKind::InvalidChannel);
  CHECK(kind_of([] { KrausChannel({ComplexMatrix::identity(2), ComplexMatrix(3, 2)}); }) ==
        ErrorKind::InvalidChannel);
  const auto ch = random_channel(2, 3, 2);
  CHECK(kind_of([&] { apply(ch, DensityOperator::basis(3, 0)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("apply on examples") {
  const auto rho = random_state(3);
  CHECK(max_abs_diff(apply(identity_channel(3), rho).matrix(), rho.matrix()) <= 1e-15);

  const auto fam = example1_family();
  const auto out = apply(fam.channel("2+"), DensityOperator::basis(2, 0));
  CHECK(max_abs_diff(out.matrix(), ComplexMatrix::unit(3, 1, 1)) <= 1e-15);

  for (int rep = 0; rep < 20; ++rep) {
    const auto ch = random_channel(3, 4, 1 + rep % 5);
    check_density(apply(ch, random_state(3)).matrix());
  }
}

TEST_CASE("Stinespring dilation") {
  const auto fam = example1_family();
  const auto iso = to_stinespring(fam.channel("1+"));
  CHECK(iso.dim_env == 1);
  CHECK(max_abs_diff(iso.u, fam.channel("1+").kraus()[0]) == 0.0);

  for (int rep = 0; rep < 10; ++rep) {
    const auto ch = random_channel(2, 3, 2 + rep % 3);
    const auto u = to_stinespring(ch);
    CHECK(u.dim_env == ch.kraus_count());
    CHECK(frobenius_distance(u.u.adjoint() * u.u, ComplexMatrix::identity(2)) <= 1e-9);
    const auto env = complementary(ch);
    for (const auto& p : probes(2)) {
      const ComplexMatrix big = u.u * p.matrix() * u.u.adjoint();
      const BipartiteDims dims{u.dim_out, u.dim_env};
      CHECK(max_abs_diff(partial_trace(big, dims, Keep::First), apply(ch, p).matrix()) <= 1e-9);
      CHECK(max_abs_diff(partial_trace(big, dims, Keep::Second), apply(env, p).matrix()) <= 1e-9);
    }
  }
}

TEST_CASE("complementary channel") {
  // Entry formula V'(rho)[j,k] = tr(A_k^dagger A_j rho) as an oracle.
  for (int rep = 0; rep < 10; ++rep) {
    const auto ch = random_channel(3, 2, 4);
    const auto rho = random_state(3);
    const auto env = apply(complementary(ch), rho).matrix();
    REQUIRE(env.rows() == 4);
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) {
        const Complex expect = (ch.kraus()[k].adjoint() * ch.kraus()[j] * rho.matrix()).trace();
        CHECK(std::abs(env(j, k) - expect) <= 1e-12);
      }
    CHECK(std::abs(env.trace() - Complex(1.0)) <= 1e-9);
  }

  const auto fam = example1_family();
  const auto env_plus = complementary(fam.channel("1+"));
  for (int rep = 0; rep < 5; ++rep)
    CHECK(max_abs_diff(apply(env_plus, random_state(2)).matrix(), ComplexMatrix::unit(1, 0, 0)) <= 1e-12);

  const auto env_id = complementary(identity_channel(3));
  const auto a = apply(env_id, random_state(3)).matrix();
  const auto b = apply(env_id, random_state(3)).matrix();
  CHECK(max_abs_diff(a, b) <= 1e-12);
  CHECK(hermitian_eigenvalues(a).back() == doctest::Approx(1.0));
}

TEST_CASE("tensor_channels") {
  const auto id2 = identity_channel(2);
  const auto id4 = tensor_channels(id2, id2);
  CHECK(id4.kraus_count() == 1);
  CHECK(max_abs_diff(id4.kraus()[0], ComplexMatrix::identity(4)) == 0.0);

  const auto a = random_channel(2, 2, 2), b = random_channel(3, 2, 3);
  const auto ab = tensor_channels(a, b);
  CHECK(ab.kraus_count() == 6);
  CHECK(ab.dim_in() == 6);
  CHECK(ab.dim_out() == 4);
  const auto r = random_state(2), s = random_state(3);
  const auto joint = DensityOperator(tensor(r.matrix(), s.matrix()));
  CHECK(max_abs_diff(apply(ab, joint).matrix(), tensor(apply(a, r).matrix(), apply(b, s).matrix())) <= 1e-12);

  // Super-activation input rho_1 = |0><0| (x) |0><0| through W_hat_1 (x) W_1+.
  const auto pair = superactivation_pair();
  const auto ex = example1_family();
  const auto prod = tensor_channels(pair.channel("1"), ex.channel("1+"));
  const auto in = DensityOperator(tensor(ComplexMatrix::unit(4, 0, 0), ComplexMatrix::unit(2, 0, 0)));
  const auto expect = tensor(apply(pair.channel("1"), DensityOperator::basis(4, 0)).matrix(),
                             apply(ex.channel("1+"), DensityOperator::basis(2, 0)).matrix());
  CHECK(max_abs_diff(apply(prod, in).matrix(), expect) <= 1e-12);
}

TEST_CASE("channel_power") {
  const auto ch = random_channel(2, 2, 3);
  const auto one = channel_power(ch, 1);
  CHECK(one.kraus_count() == 3);
  CHECK(max_abs_diff(one.kraus()[1], ch.kraus()[1]) == 0.0);
  CHECK(channel_power(ch, 2).kraus_count() == 9);
  CHECK(kind_of([&] { channel_power(ch, 5); }) == ErrorKind::BlocklengthTooLarge);
  CHECK(kind_of([&] { channel_power(ch, 0); }) == ErrorKind::BlocklengthTooLarge);

  const auto w = example1_family().channel("1+");
  const auto w2 = channel_power(w, 2);
  const auto in = DensityOperator::basis(4, 1);  // |01>
  // |0> -> |0>, |1> -> |1> in C^3, so |01> -> index 0*3 + 1.
  CHECK(max_abs_diff(apply(w2, in).matrix(), ComplexMatrix::unit(9, 1, 1)) <= 1e-15);
}

TEST_CASE("mixture_channel") {
  const auto fam = example1_family();
  const std::array<double, 4> point{0.0, 0.0, 1.0, 0.0};
  const auto m = mixture_channel(fam, point);
  const auto rho = random_state(2);
  CHECK(max_abs_diff(apply(m, rho).matrix(), apply(fam.channel("2+"), rho).matrix()) <= 1e-15);

  const std::array<double, 4> uniform{0.25, 0.25, 0.25, 0.25};
  const std::array<double, 3> half{0.5, 0.5, 0.0};
  CHECK(max_abs_diff(apply(mixture_channel(fam, uniform), DensityOperator::basis(2, 0)).matrix(),
                     ComplexMatrix::diagonal(half)) <= 1e-15);

  for (int rep = 0; rep < 10; ++rep) {
    const AVQCFamily f({"a", "b", "c"}, {random_channel(2, 3, 2), random_channel(2, 3, 1), random_channel(2, 3, 3)});
    const auto q = random_distribution(3);
    const auto r = random_state(2);
    ComplexMatrix expect(3, 3);
    for (std::size_t t = 0; t < 3; ++t) expect.add_scaled(apply(f.channel(t), r).matrix(), q[t]);
    const auto got = apply(mixture_channel(f, q), r).matrix();
    CHECK(max_abs_diff(got, expect) <= 1e-12);
    CHECK(std::abs(got.trace() - Complex(1.0)) <= 1e-12);
  }

  const std::array<double, 4> bad{0.5, 0.5, 0.5, -0.5};
  CHECK(kind_of([&] { mixture_channel(fam, bad); }) == ErrorKind::InvalidDistribution);
  const std::array<double, 2> short_q{0.5, 0.5};
  CHECK(kind_of([&] { mixture_channel(fam, short_q); }) == ErrorKind::InvalidDistribution);
}

TEST_CASE("sequence_channel equals the tensor of its members") {
  const auto fam = example1_family();
  const std::array<std::size_t, 2> seq{2, 1};
  const auto s = sequence_channel(fam, seq);
  const auto t = tensor_channels(fam.channel(2), fam.channel(1));
  CHECK(max_abs_diff(s.kraus()[0], t.kraus()[0]) == 0.0);
}

TEST_CASE("CQSource and AVQCFamily invariants") {
  CHECK(kind_of([] { CQSource({"a"}, {DensityOperator::basis(2, 0)}, {0.9}); }) == ErrorKind::InvalidDistribution);
  CHECK(kind_of([] {
          CQSource({"a", "b"}, {DensityOperator::basis(2, 0), DensityOperator::basis(3, 0)}, {0.5, 0.5});
        }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { CQSource({"a", "b"}, {DensityOperator::basis(2, 0)}, {0.5, 0.5}); }) ==
        ErrorKind::ShapeMismatch);
  CHECK(kind_of([] { AVQCFamily({"x", "y"}, {identity_channel(2), identity_channel(3)}); }) ==
        ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { AVQCFamily({"x", "x"}, {identity_channel(2), identity_channel(2)}); }) ==
        ErrorKind::SchemaViolation);
  const AVQCFamily f({"x", "y"}, {identity_channel(2), identity_channel(2)});
  CHECK(f.index_of("y") == 1);
  CHECK(kind_of([&] { f.index_of("z"); }) == ErrorKind::OutOfRange);

  const CQSource src({"0", "1"}, {DensityOperator::basis(2, 0), DensityOperator::basis(2, 1)}, {0.25, 0.75});
  const std::array<double, 2> d{0.25, 0.75};
  CHECK(max_abs_diff(apply_to_source(identity_channel(2), src).matrix(), ComplexMatrix::diagonal(d)) <= 1e-15);
}
