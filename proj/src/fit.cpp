#include "phonfreq/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "phonfreq/errors.hpp"
#include "phonfreq/ks.hpp"
#include "phonfreq/optimize.hpp"

namespace phonfreq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double sum_log(std::span<const Count> tail) {
  double s = 0.0;
  for (Count x : tail) s += std::log(static_cast<double>(x));
  return s;
}

ModelParams fit_power_law(std::span<const Count> tail, Count xmin, const FitConfig& config) {
  const double n = static_cast<double>(tail.size());
  const double s = sum_log(tail);
  const double q = static_cast<double>(xmin);
  const auto best = minimize_bracketed(
      [&](double alpha) { return alpha * s + n * std::log(hurwitz_zeta(alpha, q)); },
      config.alpha_lo, config.alpha_hi);
  return PowerLawParams{best.x};
}

ModelParams fit_exponential(std::span<const Count> tail, Count xmin) {
  // Geometric on x - xmin: ratio q = m / (1 + m) with m the mean excess.
  double excess = 0.0;
  for (Count x : tail) excess += static_cast<double>(x - xmin);
  const double m = excess / static_cast<double>(tail.size());
  return ExponentialParams{std::log1p(1.0 / m)};
}

ModelParams fit_poisson(std::span<const Count> tail, Count xmin) {
  const double hi = static_cast<double>(tail.back()) * 2.0 + 10.0;
  const auto best = minimize_bracketed(
      [&](double log_rate) {
        return -DiscreteModel(PoissonParams{std::exp(log_rate)}, xmin).log_likelihood(tail);
      },
      std::log(1e-8), std::log(hi));
  return PoissonParams{std::exp(best.x)};
}

ModelParams fit_lognormal(std::span<const Count> tail, Count xmin, const FitConfig& config) {
  const double n = static_cast<double>(tail.size());
  double mean = 0.0;
  for (Count x : tail) mean += std::log(static_cast<double>(x));
  mean /= n;
  double var = 0.0;
  for (Count x : tail) {
    const double d = std::log(static_cast<double>(x)) - mean;
    var += d * d;
  }
  const double sd = std::clamp(std::sqrt(var / n), std::max(0.05, config.sigma_log_lo), config.sigma_log_hi);
  const double log_lo = std::log(config.sigma_log_lo);
  const double log_hi = std::log(config.sigma_log_hi);

  // The tail is sorted; each distinct value is evaluated once.
  std::vector<std::pair<Count, double>> distinct;
  for (Count x : tail) {
    if (!distinct.empty() && distinct.back().first == x)
      distinct.back().second += 1.0;
    else
      distinct.emplace_back(x, 1.0);
  }
  auto objective = [&](std::span<const double> p) {
    if (std::abs(p[0]) > config.mu_log_bound || p[1] < log_lo || p[1] > log_hi) return kInf;
    const DiscreteModel model(LognormalParams{p[0], std::exp(p[1])}, xmin);
    double ll = 0.0;
    for (const auto& [x, m] : distinct) ll += m * model.log_pmf(x);
    return -ll;
  };
  NelderMeadOptions options;
  options.initial_step = {0.25 * sd + 0.05, 0.25};
  options.x_tolerance = config.optimizer_tolerance;
  options.restarts = 1;
  const double start = std::clamp(mean, -config.mu_log_bound, config.mu_log_bound);
  const auto best = nelder_mead(objective, {start, std::log(sd)}, options);
  return LognormalParams{best.x[0], std::exp(best.x[1])};
}

}  // namespace

void FitConfig::validate() const {
  if (min_tail < 2) throw DomainError("min_tail must be >= 2");
  if (!(alpha_lo > 1.0) || !(alpha_hi > alpha_lo) || !std::isfinite(alpha_hi))
    throw DomainError("alpha bounds must satisfy 1 < lo < hi");
  if (!(optimizer_tolerance > 0.0)) throw DomainError("optimizer tolerance must be positive");
  if (!(mu_log_bound > 0.0) || !(sigma_log_lo > 0.0) || !(sigma_log_hi > sigma_log_lo) ||
      !std::isfinite(mu_log_bound) || !std::isfinite(sigma_log_hi))
    throw DomainError("lognormal search box must be finite and ordered");
}

std::string_view to_string(FitStatus status) {
  switch (status) {
    case FitStatus::Ok:
      return "ok";
    case FitStatus::InsufficientData:
      return "insufficient-data";
    case FitStatus::Degenerate:
      return "degenerate";
    case FitStatus::NonConverged:
      return "non-converged";
  }
  return "unknown";
}

std::vector<Count> tail_of(std::span<const Count> data, Count xmin) {
  std::vector<Count> tail;
  tail.reserve(data.size());
  for (Count x : data)
    if (x >= xmin) tail.push_back(x);
  std::sort(tail.begin(), tail.end());
  return tail;
}

FittedModel fit_fixed_xmin(ModelKind kind, std::span<const Count> data, Count xmin,
                           const FitConfig& config) {
  config.validate();
  if (xmin < 1) throw DomainError("xmin must be >= 1");
  for (Count x : data)
    if (x < 1) throw DomainError("data values must be positive integers");

  const std::vector<Count> tail = tail_of(data, xmin);
  if (tail.size() < config.min_tail)
    throw InsufficientDataError("tail at xmin " + std::to_string(xmin) + " has " +
                                std::to_string(tail.size()) + " points, need " +
                                std::to_string(config.min_tail));
  if (tail.front() == tail.back())
    throw DegenerateDataError("all tail values equal " + std::to_string(tail.front()));

  ModelParams params;
  switch (kind) {
    case ModelKind::PowerLaw:
      params = fit_power_law(tail, xmin, config);
      break;
    case ModelKind::Lognormal:
      params = fit_lognormal(tail, xmin, config);
      break;
    case ModelKind::Exponential:
      params = fit_exponential(tail, xmin);
      break;
    case ModelKind::Poisson:
      params = fit_poisson(tail, xmin);
      break;
  }

  const DiscreteModel model(params, xmin);
  FittedModel fit;
  fit.params = params;
  fit.xmin = xmin;
  fit.n_tail = tail.size();
  fit.log_likelihood = model.log_likelihood(tail);
  fit.ks = ks_distance(tail, model);
  return fit;
}

FittedModel fit_with_xmin_scan(ModelKind kind, std::span<const Count> data, const FitConfig& config) {
  config.validate();
  std::vector<Count> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());

  std::optional<FittedModel> best;
  bool any_candidate = false;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    if (sorted.size() - i < config.min_tail) break;
    any_candidate = true;
    try {
      FittedModel fit = fit_fixed_xmin(kind, sorted, sorted[i], config);
      if (!best || fit.ks < best->ks) best = std::move(fit);
    } catch (const DegenerateDataError&) {
    }
  }
  if (!any_candidate)
    throw InsufficientDataError("no xmin candidate leaves " + std::to_string(config.min_tail) +
                                " points");
  if (!best) throw DegenerateDataError("every xmin candidate has a constant tail");
  best->xmin_scanned = true;
  return *best;
}

std::vector<FitAttempt> fit_all(std::span<const Count> data, const FitConfig& config) {
  if (data.empty()) throw InsufficientDataError("fit_all: empty data");
  const Count lowest = *std::min_element(data.begin(), data.end());
  std::vector<FitAttempt> out;
  out.reserve(2 * kAllModelKinds.size());
  for (ModelKind kind : kAllModelKinds)
    out.push_back(attempt_fit(kind, false, [&] { return fit_fixed_xmin(kind, data, lowest, config); }));
  for (ModelKind kind : kAllModelKinds)
    out.push_back(attempt_fit(kind, true, [&] { return fit_with_xmin_scan(kind, data, config); }));
  return out;
}

}  // namespace phonfreq
