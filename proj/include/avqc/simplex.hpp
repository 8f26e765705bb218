#pragma once

// Optimization over probability simplices: Euclidean projection, exhaustive
// grids, and a Nelder-Mead search that evaluates the objective at the
// projection of each trial point.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace avqc {

using Rng = std::mt19937_64;

// Euclidean projection onto {x >= 0, sum x = 1}.
void project_to_simplex(std::span<double> x);
std::vector<double> projected(std::vector<double> x);

// Uniform (Dirichlet(1,...,1)) random point.
std::vector<double> random_simplex_point(std::size_t dim, Rng& rng);

// Number of grid points {k / resolution} in a dim-simplex.
std::size_t simplex_grid_size(std::size_t dim, std::size_t resolution);

// Visits every point of the grid in lexicographic order of numerators.
void for_each_simplex_grid_point(std::size_t dim, std::size_t resolution,
                                 const std::function<void(std::span<const double>)>& visit);

struct NelderMeadOptions {
  double initial_step = 0.1;
  double f_tolerance = 1e-13;
  double x_tolerance = 1e-10;
  std::size_t max_evaluations = 4000;
};

struct OptimumPoint {
  std::vector<double> point;
  double value;
  std::size_t evaluations = 0;
};

using SimplexObjective = std::function<double(std::span<const double>)>;

// Unconstrained Nelder-Mead minimization of `f` starting at x0.
OptimumPoint nelder_mead(const SimplexObjective& f, std::vector<double> x0,
                         const NelderMeadOptions& opts = {});

struct SimplexSearchOptions {
  std::size_t grid_resolution = 64;
  std::size_t grid_max_dim = 3;      // exhaustive grid when dim <= this
  std::size_t multistart_count = 16; // otherwise
  std::uint64_t seed = 0;
  NelderMeadOptions refine{};
};

// Minimizes f over the probability simplex of the given dimension. For dim <=
// grid_max_dim the whole grid is scanned and the best point refined; larger
// simplices use multistart Nelder-Mead (barycenter, vertices, random points).
// The returned point lies on the simplex.
OptimumPoint minimize_on_simplex(const SimplexObjective& f, std::size_t dim,
                                 const SimplexSearchOptions& opts = {});

}  // namespace avqc
