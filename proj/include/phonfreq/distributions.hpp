#pragma once

// Discrete candidate distributions on the support {xmin, xmin+1, ...}.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace phonfreq {

using Count = std::int64_t;

/// Largest value a sampler will return. Keeps draws exactly representable as
/// doubles; only reachable by very heavy power-law tails.
inline constexpr Count kMaxSampleValue = Count{1} << 53;

enum class ModelKind { PowerLaw, Lognormal, Exponential, Poisson };

inline constexpr std::array<ModelKind, 4> kAllModelKinds = {
    ModelKind::PowerLaw, ModelKind::Lognormal, ModelKind::Exponential, ModelKind::Poisson};

std::string_view to_string(ModelKind kind);
/// Accepts "powerlaw", "power_law", "lognormal", "exponential", "exp", "poisson".
std::optional<ModelKind> parse_model_kind(std::string_view name);

struct PowerLawParams {
  double alpha;
};

struct LognormalParams {
  double mu_log;
  double sigma_log;
};

/// p(x) proportional to exp(-lambda * x).
struct ExponentialParams {
  double lambda;
};

struct PoissonParams {
  double rate;
};

using ModelParams = std::variant<PowerLawParams, LognormalParams, ExponentialParams, PoissonParams>;

ModelKind kind_of(const ModelParams& params);

/// Throws DomainError when a parameter violates its constraint.
void validate(const ModelParams& params);

/// Parameters as a flat vector, in declaration order.
std::vector<double> param_values(const ModelParams& params);
std::vector<std::string_view> param_names(ModelKind kind);

/// Sum over x >= xmin of x^-alpha. alpha > 1, xmin >= 1.
double hurwitz_zeta(double alpha, Count xmin);
/// Same, for real q >= 1.
double hurwitz_zeta(double alpha, double q);

/// A validated distribution bound to its support, with the normalizing
/// constant precomputed.
class DiscreteModel {
 public:
  DiscreteModel(const ModelParams& params, Count xmin);

  ModelKind kind() const { return kind_of(params_); }
  const ModelParams& params() const { return params_; }
  Count xmin() const { return xmin_; }

  double log_pmf(Count x) const;
  double pmf(Count x) const;
  /// P(X <= x).
  double cdf(Count x) const;
  /// P(X > x). Computed directly, so it keeps precision far into the tail.
  double sf(Count x) const;

  /// Sum of log_pmf over data; throws DomainError on empty data or x < xmin.
  double log_likelihood(std::span<const Count> data) const;

 private:
  void check_support(Count x) const;

  ModelParams params_;
  Count xmin_;
  double log_norm_;
};

double pmf(const ModelParams& params, Count xmin, Count x);
double cdf(const ModelParams& params, Count xmin, Count x);
double log_likelihood(const ModelParams& params, Count xmin, std::span<const Count> data);

/// Inverse-CDF sampler. Survival values are tabulated for the bulk of the
/// support; draws past the table fall back to a doubling search on the
/// analytic survival function, so every draw is exact to the pmf.
class Sampler {
 public:
  explicit Sampler(DiscreteModel model, std::size_t max_table = 1 << 16);

  /// Smallest x with P(X > x) < v, for v in (0, 1].
  Count quantile_upper(double v) const;

  template <class Rng>
  Count operator()(Rng& rng) const {
    return quantile_upper(1.0 - rng.uniform());
  }

  const DiscreteModel& model() const { return model_; }

 private:
  DiscreteModel model_;
  std::vector<double> survival_;  // survival_[i] = sf(xmin + i)
};

struct Sample {
  std::vector<Count> values;
  std::uint64_t seed;
};

Sample sample(const ModelParams& params, Count xmin, std::size_t n, std::uint64_t seed);

}  // namespace phonfreq
