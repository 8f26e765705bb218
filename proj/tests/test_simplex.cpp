#include <doctest.h>

#include <cmath>
#include <numeric>

#include "avqc/simplex.hpp"

using namespace avqc;

TEST_CASE("simplex projection") {
  std::vector<double> x{0.2, 0.3, 0.5};
  project_to_simplex(x);
  CHECK(x[0] == doctest::Approx(0.2));
  CHECK(x[2] == doctest::Approx(0.5));

  x = {2.0, 0.0, 0.0};
  project_to_simplex(x);
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == 0.0);

  x = {0.5, 0.5, -1.0};
  project_to_simplex(x);
  CHECK(x[0] == doctest::Approx(0.5));
  CHECK(x[2] == 0.0);

  Rng rng(7);
  std::normal_distribution<double> g(0.0, 2.0);
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> y(5);
    for (auto& v : y) v = g(rng);
    const auto p = projected(y);
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    for (double v : p) CHECK(v >= 0.0);
    // Optimality: no vertex is closer to y after accounting for the constraint.
    double best = 0.0;
    for (std::size_t i = 0; i < 5; ++i) best += (p[i] - y[i]) * (p[i] - y[i]);
    for (int trial = 0; trial < 20; ++trial) {
      const auto z = random_simplex_point(5, rng);
      double dz = 0.0;
      for (std::size_t i = 0; i < 5; ++i) dz += (z[i] - y[i]) * (z[i] - y[i]);
      CHECK(dz >= best - 1e-12);
    }
  }
}

TEST_CASE("simplex grid") {
  CHECK(simplex_grid_size(3, 4) == 15);
  CHECK(simplex_grid_size(1, 10) == 1);
  std::size_t visits = 0;
  for_each_simplex_grid_point(4, 3, [&](std::span<const double> p) {
    ++visits;
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0));
  });
  CHECK(visits == simplex_grid_size(4, 3));
  CHECK(visits == 20);
}

TEST_CASE("nelder_mead finds a quadratic minimum") {
  const auto f = [](std::span<const double> x) {
    return (x[0] - 1.0) * (x[0] - 1.0) + 3.0 * (x[1] + 2.0) * (x[1] + 2.0);
  };
  const auto r = nelder_mead(f, {0.0, 0.0});
  CHECK(r.point[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.point[1] == doctest::Approx(-2.0).epsilon(1e-4));
}

TEST_CASE("minimize_on_simplex") {
  const std::vector<double> target{0.1, 0.6, 0.3};
  const auto f = [&](std::span<const double> p) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += (p[i] - target[i]) * (p[i] - target[i]);
    return s;
  };
  const auto r = minimize_on_simplex(f, 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(r.point[i] == doctest::Approx(target[i]).epsilon(1e-4));

  // Linear objective on a larger simplex: the optimum is a vertex.
  const auto lin = [](std::span<const double> p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += static_cast<double>((i * 7) % 5) * p[i];
    return s;
  };
  const auto v = minimize_on_simplex(lin, 6, {.seed = 3});
  CHECK(v.value == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(std::accumulate(v.point.begin(), v.point.end(), 0.0) == doctest::Approx(1.0));
}
