#include "phonfreq/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include <boost/math/tools/minima.hpp>

namespace phonfreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double finite_or_inf(double v) { return std::isfinite(v) ? v : kInf; }

}  // namespace

ScalarMinimum minimize_bracketed(const std::function<double(double)>& f, double lo, double hi,
                                 int max_iterations) {
  std::uintmax_t iterations = static_cast<std::uintmax_t>(max_iterations);
  const auto [x, value] = boost::math::tools::brent_find_minima(
      [&](double t) { return finite_or_inf(f(t)); }, lo, hi,
      std::numeric_limits<double>::digits / 2, iterations);
  return {x, value};
}

VectorMinimum nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const NelderMeadOptions& options) {
  const std::size_t dim = start.size();
  std::vector<double> step = options.initial_step;
  if (step.empty()) step.assign(dim, 0.1);

  int evaluations = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evaluations;
    return finite_or_inf(f(x));
  };

  std::vector<double> best = std::move(start);
  double best_value = eval(best);
  bool converged = false;

  for (int round = 0; round <= options.restarts; ++round) {
    std::vector<std::vector<double>> simplex(dim + 1, best);
    std::vector<double> values(dim + 1, best_value);
    for (std::size_t i = 0; i < dim; ++i) {
      simplex[i + 1][i] += step[i];
      values[i + 1] = eval(simplex[i + 1]);
    }

    std::vector<std::size_t> order(dim + 1);
    converged = false;
    // On a flat ridge rounding noise keeps the simplex from shrinking; stop
    // once the best value has not moved for a while.
    double stall_value = kInf;
    int stall_iterations = 0;
    const int stall_limit = 50 * static_cast<int>(dim + 1);
    while (evaluations < options.max_evaluations) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t lo = order.front();
      const std::size_t hi = order.back();
      const std::size_t second = order[dim - 1];

      double spread = 0.0;
      for (std::size_t i = 0; i <= dim; ++i)
        for (std::size_t d = 0; d < dim; ++d)
          spread = std::max(spread, std::abs(simplex[i][d] - simplex[lo][d]));
      const double f_gap = values[hi] - values[lo];
      if (std::isfinite(values[hi]) &&
          f_gap <= options.f_tolerance * (std::abs(values[lo]) + 1e-300) &&
          spread <= options.x_tolerance * (1.0 + std::abs(simplex[lo][0]))) {
        converged = true;
        break;
      }
      if (spread <= 1e-15) {
        converged = true;
        break;
      }
      if (values[lo] < stall_value - options.f_tolerance * (std::abs(values[lo]) + 1.0)) {
        stall_value = values[lo];
        stall_iterations = 0;
      } else if (++stall_iterations >= stall_limit) {
        converged = true;
        break;
      }

      std::vector<double> centroid(dim, 0.0);
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == hi) continue;
        for (std::size_t d = 0; d < dim; ++d) centroid[d] += simplex[i][d] / static_cast<double>(dim);
      }
      auto along = [&](double t) {
        std::vector<double> p(dim);
        for (std::size_t d = 0; d < dim; ++d) p[d] = centroid[d] + t * (simplex[hi][d] - centroid[d]);
        return p;
      };

      auto reflected = along(-1.0);
      const double fr = eval(reflected);
      if (fr < values[lo]) {
        auto expanded = along(-2.0);
        const double fe = eval(expanded);
        if (fe < fr) {
          simplex[hi] = std::move(expanded);
          values[hi] = fe;
        } else {
          simplex[hi] = std::move(reflected);
          values[hi] = fr;
        }
        continue;
      }
      if (fr < values[second]) {
        simplex[hi] = std::move(reflected);
        values[hi] = fr;
        continue;
      }
      const bool outside = fr < values[hi];
      auto contracted = along(outside ? -0.5 : 0.5);
      const double fc = eval(contracted);
      if (fc < (outside ? fr : values[hi])) {
        simplex[hi] = std::move(contracted);
        values[hi] = fc;
        continue;
      }
      for (std::size_t i = 0; i <= dim; ++i) {
        if (i == lo) continue;
        for (std::size_t d = 0; d < dim; ++d)
          simplex[i][d] = simplex[lo][d] + 0.5 * (simplex[i][d] - simplex[lo][d]);
        values[i] = eval(simplex[i]);
      }
    }

    const auto it = std::min_element(values.begin(), values.end());
    const std::size_t idx = static_cast<std::size_t>(it - values.begin());
    if (values[idx] <= best_value) {
      best = simplex[idx];
      best_value = values[idx];
    }
    if (evaluations >= options.max_evaluations) break;
    // Shrink the restart simplex so later rounds polish rather than re-explore.
    for (double& s : step) s *= 0.1;
  }

  return {best, best_value, evaluations, converged};
}

}  // namespace phonfreq
