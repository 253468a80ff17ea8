#include "phonfreq/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "phonfreq/errors.hpp"
#include "phonfreq/rng.hpp"

namespace phonfreq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMinAlpha = 1.0 + 1e-9;

// B_{2j} / (2j)! for j = 1..7.
constexpr std::array<double, 7> kEulerMaclaurin = {
    1.0 / 12.0,          -1.0 / 720.0,
    1.0 / 30240.0,       -1.0 / 1209600.0,
    1.0 / 47900160.0,    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
};

// log P(Z > z) for standard normal Z.
double log_normal_sf(double z) {
  if (z < 35.0) return std::log(0.5 * std::erfc(z / std::numbers::sqrt2));
  const double z2 = z * z;
  return -0.5 * z2 - std::log(z * std::sqrt(2.0 * std::numbers::pi)) +
         std::log1p(-1.0 / z2 + 3.0 / (z2 * z2));
}

double log_normal_cdf(double z) { return log_normal_sf(-z); }

// log P(za < Z <= zb), za < zb.
double log_normal_mass(double za, double zb) {
  double hi, lo;
  if (za > 0.0) {
    hi = log_normal_sf(za);
    lo = log_normal_sf(zb);
  } else {
    hi = log_normal_cdf(zb);
    lo = log_normal_cdf(za);
  }
  const double ratio = std::exp(lo - hi);
  if (!(ratio < 1.0)) return -std::numeric_limits<double>::infinity();
  return hi + std::log1p(-ratio);
}

// log P(X >= k) for X ~ Poisson(rate), untruncated.
double log_poisson_upper(Count k, double rate) {
  if (k <= 0) return 0.0;
  const double kd = static_cast<double>(k);
  const double p = boost::math::gamma_p(kd, rate);
  if (p > 1e-280) return std::log(p);
  // Far upper tail (k >> rate): P(X >= k) = P(X = k) * sum_j rate^j k!/(k+j)!.
  double term = 1.0;
  double total = 1.0;
  for (double j = 1.0; term > 1e-17 * total; j += 1.0) {
    term *= rate / (kd + j);
    total += term;
  }
  return kd * std::log(rate) - rate - std::lgamma(kd + 1.0) + std::log(total);
}

double lognormal_z(const LognormalParams& p, double t) {
  return (std::log(t) - p.mu_log) / p.sigma_log;
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::PowerLaw:
      return "powerlaw";
    case ModelKind::Lognormal:
      return "lognormal";
    case ModelKind::Exponential:
      return "exponential";
    case ModelKind::Poisson:
      return "poisson";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "powerlaw" || name == "power_law" || name == "pl") return ModelKind::PowerLaw;
  if (name == "lognormal" || name == "ln") return ModelKind::Lognormal;
  if (name == "exponential" || name == "exp") return ModelKind::Exponential;
  if (name == "poisson") return ModelKind::Poisson;
  return std::nullopt;
}

ModelKind kind_of(const ModelParams& params) {
  return std::visit(overloaded{
                        [](const PowerLawParams&) { return ModelKind::PowerLaw; },
                        [](const LognormalParams&) { return ModelKind::Lognormal; },
                        [](const ExponentialParams&) { return ModelKind::Exponential; },
                        [](const PoissonParams&) { return ModelKind::Poisson; },
                    },
                    params);
}

void validate(const ModelParams& params) {
  std::visit(overloaded{
                 [](const PowerLawParams& p) {
                   if (!std::isfinite(p.alpha) || p.alpha <= kMinAlpha)
                     throw DomainError("power law requires finite alpha > 1");
                 },
                 [](const LognormalParams& p) {
                   if (!std::isfinite(p.mu_log) || !std::isfinite(p.sigma_log) ||
                       p.sigma_log <= 0.0)
                     throw DomainError("lognormal requires finite mu_log and sigma_log > 0");
                 },
                 [](const ExponentialParams& p) {
                   if (!std::isfinite(p.lambda) || p.lambda <= 0.0)
                     throw DomainError("exponential requires finite lambda > 0");
                 },
                 [](const PoissonParams& p) {
                   if (!std::isfinite(p.rate) || p.rate <= 0.0)
                     throw DomainError("poisson requires finite rate > 0");
                 },
             },
             params);
}

std::vector<double> param_values(const ModelParams& params) {
  return std::visit(overloaded{
                        [](const PowerLawParams& p) { return std::vector<double>{p.alpha}; },
                        [](const LognormalParams& p) {
                          return std::vector<double>{p.mu_log, p.sigma_log};
                        },
                        [](const ExponentialParams& p) { return std::vector<double>{p.lambda}; },
                        [](const PoissonParams& p) { return std::vector<double>{p.rate}; },
                    },
                    params);
}

std::vector<std::string_view> param_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::PowerLaw:
      return {"alpha"};
    case ModelKind::Lognormal:
      return {"mu_log", "sigma_log"};
    case ModelKind::Exponential:
      return {"lambda"};
    case ModelKind::Poisson:
      return {"rate"};
  }
  return {};
}

double hurwitz_zeta(double alpha, double q) {
  if (!std::isfinite(alpha) || !std::isfinite(q))
    throw DomainError("hurwitz_zeta: non-finite argument");
  if (alpha <= kMinAlpha) throw DomainError("hurwitz_zeta: series diverges for alpha <= 1");
  if (q < 1.0) throw DomainError("hurwitz_zeta: q must be >= 1");

  // Direct terms until the shifted argument is large enough for the
  // Euler-Maclaurin tail to be accurate to double precision.
  const double threshold = std::max(16.0, 1.5 * alpha + 8.0);
  const double direct = std::max(0.0, std::ceil(threshold - q));
  const double a = q + direct;

  double tail = std::pow(a, 1.0 - alpha) / (alpha - 1.0) + 0.5 * std::pow(a, -alpha);
  double factor = alpha * std::pow(a, -alpha - 1.0);
  const double inv_a2 = 1.0 / (a * a);
  for (std::size_t j = 0; j < kEulerMaclaurin.size(); ++j) {
    tail += kEulerMaclaurin[j] * factor;
    const double m = 2.0 * static_cast<double>(j + 1);
    factor *= (alpha + m - 1.0) * (alpha + m) * inv_a2;
  }

  double sum = tail;
  for (double k = direct - 1.0; k >= 0.0; k -= 1.0) sum += std::pow(q + k, -alpha);
  return sum;
}

double hurwitz_zeta(double alpha, Count xmin) {
  if (xmin < 1) throw DomainError("hurwitz_zeta: xmin must be >= 1");
  return hurwitz_zeta(alpha, static_cast<double>(xmin));
}

DiscreteModel::DiscreteModel(const ModelParams& params, Count xmin) : params_(params), xmin_(xmin) {
  if (xmin < 1) throw DomainError("xmin must be >= 1");
  validate(params_);
  const double lo = static_cast<double>(xmin_);
  log_norm_ = std::visit(
      overloaded{
          [&](const PowerLawParams& p) { return std::log(hurwitz_zeta(p.alpha, lo)); },
          [&](const LognormalParams& p) { return log_normal_sf(lognormal_z(p, lo - 0.5)); },
          [&](const ExponentialParams& p) { return std::log(-std::expm1(-p.lambda)) + p.lambda * lo; },
          [&](const PoissonParams& p) { return log_poisson_upper(xmin_, p.rate); },
      },
      params_);
}

void DiscreteModel::check_support(Count x) const {
  if (x < xmin_) throw DomainError("value " + std::to_string(x) + " below xmin " + std::to_string(xmin_));
}

double DiscreteModel::log_pmf(Count x) const {
  check_support(x);
  const double xd = static_cast<double>(x);
  return std::visit(
      overloaded{
          [&](const PowerLawParams& p) { return -p.alpha * std::log(xd) - log_norm_; },
          [&](const LognormalParams& p) {
            return log_normal_mass(lognormal_z(p, xd - 0.5), lognormal_z(p, xd + 0.5)) - log_norm_;
          },
          // log_norm_ already folds in the xmin shift
          [&](const ExponentialParams& p) { return -p.lambda * xd + log_norm_; },
          [&](const PoissonParams& p) {
            return xd * std::log(p.rate) - p.rate - std::lgamma(xd + 1.0) - log_norm_;
          },
      },
      params_);
}

double DiscreteModel::pmf(Count x) const { return std::exp(log_pmf(x)); }

double DiscreteModel::sf(Count x) const {
  check_support(x);
  const double xd = static_cast<double>(x);
  return std::visit(
      overloaded{
          [&](const PowerLawParams& p) {
            return std::exp(std::log(hurwitz_zeta(p.alpha, xd + 1.0)) - log_norm_);
          },
          [&](const LognormalParams& p) {
            return std::exp(log_normal_sf(lognormal_z(p, xd + 0.5)) - log_norm_);
          },
          [&](const ExponentialParams& p) {
            return std::exp(-p.lambda * (xd - static_cast<double>(xmin_) + 1.0));
          },
          [&](const PoissonParams& p) {
            return std::exp(log_poisson_upper(x + 1, p.rate) - log_norm_);
          },
      },
      params_);
}

double DiscreteModel::cdf(Count x) const {
  check_support(x);
  const double xd = static_cast<double>(x);
  return std::visit(
      overloaded{
          [&](const PowerLawParams&) { return 1.0 - sf(x); },
          [&](const LognormalParams& p) {
            const double lo = static_cast<double>(xmin_) - 0.5;
            return std::exp(log_normal_mass(lognormal_z(p, lo), lognormal_z(p, xd + 0.5)) - log_norm_);
          },
          [&](const ExponentialParams& p) {
            return -std::expm1(-p.lambda * (xd - static_cast<double>(xmin_) + 1.0));
          },
          [&](const PoissonParams& p) {
            return -std::expm1(log_poisson_upper(x + 1, p.rate) - log_norm_);
          },
      },
      params_);
}

double DiscreteModel::log_likelihood(std::span<const Count> data) const {
  if (data.empty()) throw DomainError("log_likelihood: empty data");
  double total = 0.0;
  for (Count x : data) total += log_pmf(x);
  return total;
}

double pmf(const ModelParams& params, Count xmin, Count x) { return DiscreteModel(params, xmin).pmf(x); }

double cdf(const ModelParams& params, Count xmin, Count x) { return DiscreteModel(params, xmin).cdf(x); }

double log_likelihood(const ModelParams& params, Count xmin, std::span<const Count> data) {
  return DiscreteModel(params, xmin).log_likelihood(data);
}

Sampler::Sampler(DiscreteModel model, std::size_t max_table) : model_(std::move(model)) {
  // Uniform draws are multiples of 2^-53, so survival below that is never hit.
  constexpr double kSmallestDraw = 0x1.0p-53;
  survival_.reserve(std::min<std::size_t>(max_table, 1024));
  for (Count x = model_.xmin(); survival_.size() < std::max<std::size_t>(max_table, 1); ++x) {
    const double s = model_.sf(x);
    survival_.push_back(s);
    if (s < kSmallestDraw || x >= kMaxSampleValue) break;
  }
}

Count Sampler::quantile_upper(double v) const {
  const Count xmin = model_.xmin();
  if (v > survival_.back()) {
    const auto it = std::partition_point(survival_.begin(), survival_.end(),
                                         [v](double s) { return s >= v; });
    return xmin + static_cast<Count>(it - survival_.begin());
  }
  // Past the table: find a bracket by doubling, then bisect.
  Count lo = xmin + static_cast<Count>(survival_.size()) - 1;
  Count step = static_cast<Count>(survival_.size());
  Count hi = std::min(kMaxSampleValue, lo + step);
  while (hi < kMaxSampleValue && model_.sf(hi) >= v) {
    lo = hi;
    step *= 2;
    hi = std::min(kMaxSampleValue, lo + step);
  }
  if (hi == kMaxSampleValue && model_.sf(hi) >= v) return kMaxSampleValue;
  while (hi - lo > 1) {
    const Count mid = lo + (hi - lo) / 2;
    if (model_.sf(mid) >= v)
      lo = mid;
    else
      hi = mid;
  }
  return hi;
}

Sample sample(const ModelParams& params, Count xmin, std::size_t n, std::uint64_t seed) {
  DiscreteModel model(params, xmin);
  Sample out{{}, seed};
  if (n == 0) return out;
  const Sampler sampler(model);
  Rng rng(seed);
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.values.push_back(sampler(rng));
  return out;
}

}  // namespace phonfreq
