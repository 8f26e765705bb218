#include "avqc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "avqc/error.hpp"

namespace avqc {

void project_to_simplex(std::span<double> x) {
  const std::size_t n = x.size();
  if (n == 0) return;
  std::vector<double> u(x.begin(), x.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cumulative += u[k];
    const double candidate = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - candidate > 0.0) theta = candidate;
  }
  double sum = 0.0;
  for (double& v : x) {
    v = std::max(v - theta, 0.0);
    sum += v;
  }
  if (sum > 0.0)
    for (double& v : x) v /= sum;
}

std::vector<double> projected(std::vector<double> x) {
  project_to_simplex(x);
  return x;
}

std::vector<double> random_simplex_point(std::size_t dim, Rng& rng) {
  std::exponential_distribution<double> exp1(1.0);
  std::vector<double> x(dim);
  double sum = 0.0;
  for (double& v : x) {
    v = exp1(rng);
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

std::size_t simplex_grid_size(std::size_t dim, std::size_t resolution) {
  // C(resolution + dim - 1, dim - 1)
  double c = 1.0;
  for (std::size_t k = 1; k < dim; ++k) c = c * static_cast<double>(resolution + k) / static_cast<double>(k);
  return static_cast<std::size_t>(std::llround(c));
}

namespace {

void grid_recurse(std::size_t pos, std::size_t remaining, std::size_t resolution,
                  std::vector<double>& point,
                  const std::function<void(std::span<const double>)>& visit) {
  const std::size_t dim = point.size();
  if (pos + 1 == dim) {
    point[pos] = static_cast<double>(remaining) / static_cast<double>(resolution);
    visit(point);
    return;
  }
  for (std::size_t k = 0; k <= remaining; ++k) {
    point[pos] = static_cast<double>(k) / static_cast<double>(resolution);
    grid_recurse(pos + 1, remaining - k, resolution, point, visit);
  }
}

}  // namespace

void for_each_simplex_grid_point(std::size_t dim, std::size_t resolution,
                                 const std::function<void(std::span<const double>)>& visit) {
  if (dim == 0 || resolution == 0) throw Error(ErrorKind::OutOfRange, "empty simplex grid");
  std::vector<double> point(dim, 0.0);
  grid_recurse(0, resolution, resolution, point, visit);
}

OptimumPoint nelder_mead(const SimplexObjective& f, std::vector<double> x0,
                         const NelderMeadOptions& opts) {
  const std::size_t n = x0.size();
  if (n == 0) throw Error(ErrorKind::OutOfRange, "Nelder-Mead needs at least one coordinate");
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };

  std::vector<std::vector<double>> verts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) verts[i + 1][i] += opts.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(verts[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  while (evals < opts.max_evaluations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second_worst = order[n - 1];

    double spread = std::abs(values[worst] - values[best]);
    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(verts[i][k] - verts[best][k]));
    if (spread <= opts.f_tolerance && size <= opts.x_tolerance) break;
    if (size <= 1e-14) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < n; ++k) centroid[k] += verts[i][k] / static_cast<double>(n);
    }
    for (std::size_t k = 0; k < n; ++k) trial[k] = centroid[k] + (centroid[k] - verts[worst][k]);
    const double fr = eval(trial);
    if (fr < values[best]) {
      for (std::size_t k = 0; k < n; ++k) trial2[k] = centroid[k] + 2.0 * (centroid[k] - verts[worst][k]);
      const double fe = eval(trial2);
      if (fe < fr) {
        verts[worst] = trial2;
        values[worst] = fe;
      } else {
        verts[worst] = trial;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      verts[worst] = trial;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    for (std::size_t k = 0; k < n; ++k) {
      trial2[k] = outside ? centroid[k] + 0.5 * (trial[k] - centroid[k])
                          : centroid[k] + 0.5 * (verts[worst][k] - centroid[k]);
    }
    const double fc = eval(trial2);
    if (fc < std::min(fr, values[worst])) {
      verts[worst] = trial2;
      values[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < n; ++k) verts[i][k] = verts[best][k] + 0.5 * (verts[i][k] - verts[best][k]);
      values[i] = eval(verts[i]);
    }
  }
  const std::size_t best =
      static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  return OptimumPoint{verts[best], values[best], evals};
}

OptimumPoint minimize_on_simplex(const SimplexObjective& f, std::size_t dim,
                                 const SimplexSearchOptions& opts) {
  if (dim == 0) throw Error(ErrorKind::OutOfRange, "simplex dimension must be positive");
  if (dim == 1) {
    std::vector<double> one{1.0};
    return OptimumPoint{one, f(one), 1};
  }
  auto on_simplex = [&](std::span<const double> x) {
    std::vector<double> p(x.begin(), x.end());
    project_to_simplex(p);
    return f(p);
  };

  std::vector<std::vector<double>> starts;
  std::size_t evaluations = 0;
  if (dim <= opts.grid_max_dim) {
    std::vector<double> best_point;
    double best_value = 0.0;
    for_each_simplex_grid_point(dim, opts.grid_resolution, [&](std::span<const double> p) {
      const double v = f(p);
      ++evaluations;
      if (best_point.empty() || v < best_value) {
        best_value = v;
        best_point.assign(p.begin(), p.end());
      }
    });
    starts.push_back(std::move(best_point));
  } else {
    starts.push_back(std::vector<double>(dim, 1.0 / static_cast<double>(dim)));
    for (std::size_t i = 0; i < dim && starts.size() < opts.multistart_count; ++i) {
      std::vector<double> v(dim, 0.0);
      v[i] = 1.0;
      starts.push_back(std::move(v));
    }
    Rng rng(opts.seed);
    while (starts.size() < opts.multistart_count) starts.push_back(random_simplex_point(dim, rng));
  }

  OptimumPoint best{{}, 0.0, 0};
  for (const auto& start : starts) {
    const double start_value = f(start);
    ++evaluations;
    OptimumPoint local = nelder_mead(on_simplex, start, opts.refine);
    evaluations += local.evaluations;
    std::vector<double> point = projected(local.point);
    double value = f(point);
    ++evaluations;
    if (start_value <= value) {
      point = start;
      value = start_value;
    }
    if (best.point.empty() || value < best.value) best = OptimumPoint{point, value, 0};
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace avqc
