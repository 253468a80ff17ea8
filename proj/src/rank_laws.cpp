#include "phonfreq/rank_laws.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "phonfreq/errors.hpp"
#include "phonfreq/optimize.hpp"

namespace phonfreq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kMaxRankAlpha = 20.0;
constexpr double kMinLogLambda = -20.0;

void validate(const RankParams& params) {
  std::visit(overloaded{
                 [](const ZipfParams& p) {
                   if (!std::isfinite(p.alpha) || p.alpha < 0.0)
                     throw DomainError("zipf requires alpha >= 0");
                 },
                 [](const GeometricRankParams& p) {
                   if (!(p.lambda > 0.0 && p.lambda <= 1.0))
                     throw DomainError("geometric rank law requires 0 < lambda <= 1");
                 },
                 [](const WhitworthParams&) {},
                 [](const NegLogParams&) {},
                 [](const YuleSimonParams& p) {
                   if (!std::isfinite(p.alpha) || p.alpha < 0.0 || !(p.lambda > 0.0 && p.lambda <= 1.0))
                     throw DomainError("yule-simon requires alpha >= 0 and 0 < lambda <= 1");
                 },
             },
             params);
}

RankSpectrum normalized(std::vector<double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  for (double& w : weights) w /= total;
  return RankSpectrum{std::move(weights)};
}

double squared_log_error(const RankSpectrum& observed, const RankParams& params) {
  const RankSpectrum expected = expected_spectrum(observed.size(), params);
  double ss = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double d = std::log(observed.rel_freqs[k]) - std::log(expected.rel_freqs[k]);
    ss += d * d;
  }
  return ss;
}

RankParams fit_parameters(const RankSpectrum& observed, RankModelKind kind) {
  switch (kind) {
    case RankModelKind::Zipf: {
      const auto best = minimize_bracketed(
          [&](double a) { return squared_log_error(observed, ZipfParams{a}); }, 0.0, kMaxRankAlpha);
      return ZipfParams{best.x};
    }
    case RankModelKind::GeometricRank: {
      const auto best = minimize_bracketed(
          [&](double log_lambda) {
            return squared_log_error(observed, GeometricRankParams{std::exp(log_lambda)});
          },
          kMinLogLambda, 0.0);
      return GeometricRankParams{std::exp(best.x)};
    }
    case RankModelKind::YuleSimon: {
      const auto zipf = std::get<ZipfParams>(fit_parameters(observed, RankModelKind::Zipf));
      auto objective = [&](std::span<const double> p) {
        if (p[0] < 0.0 || p[0] > kMaxRankAlpha || p[1] > 0.0 || p[1] < kMinLogLambda)
          return std::numeric_limits<double>::infinity();
        return squared_log_error(observed, YuleSimonParams{p[0], std::exp(p[1])});
      };
      NelderMeadOptions options;
      options.initial_step = {0.1, -0.05};
      const auto best = nelder_mead(objective, {zipf.alpha, -0.05}, options);
      const double zipf_error = squared_log_error(observed, zipf);
      // The search can only improve on the nested Zipf solution.
      if (zipf_error <= best.value) return YuleSimonParams{zipf.alpha, 1.0};
      return YuleSimonParams{best.x[0], std::exp(best.x[1])};
    }
    case RankModelKind::Whitworth:
      return WhitworthParams{};
    case RankModelKind::NegLog:
      return NegLogParams{};
  }
  throw DomainError("unknown rank model");
}

}  // namespace

std::string_view to_string(RankModelKind kind) {
  switch (kind) {
    case RankModelKind::Zipf:
      return "zipf";
    case RankModelKind::GeometricRank:
      return "geometric";
    case RankModelKind::Whitworth:
      return "whitworth";
    case RankModelKind::NegLog:
      return "neglog";
    case RankModelKind::YuleSimon:
      return "yule-simon";
  }
  return "unknown";
}

std::optional<RankModelKind> parse_rank_model_kind(std::string_view name) {
  if (name == "zipf") return RankModelKind::Zipf;
  if (name == "geometric") return RankModelKind::GeometricRank;
  if (name == "whitworth") return RankModelKind::Whitworth;
  if (name == "neglog") return RankModelKind::NegLog;
  if (name == "yule-simon" || name == "yule_simon" || name == "yule") return RankModelKind::YuleSimon;
  return std::nullopt;
}

RankModelKind kind_of(const RankParams& params) {
  return std::visit(overloaded{
                        [](const ZipfParams&) { return RankModelKind::Zipf; },
                        [](const GeometricRankParams&) { return RankModelKind::GeometricRank; },
                        [](const WhitworthParams&) { return RankModelKind::Whitworth; },
                        [](const NegLogParams&) { return RankModelKind::NegLog; },
                        [](const YuleSimonParams&) { return RankModelKind::YuleSimon; },
                    },
                    params);
}

RankSpectrum rank_spectrum(const FrequencyTable& table) {
  if (table.entries.empty()) throw DomainError("rank_spectrum: empty table");
  auto counts = table.counts();
  std::sort(counts.begin(), counts.end(), std::greater<>());
  const double total = static_cast<double>(table.n_tokens());
  std::vector<double> rel;
  rel.reserve(counts.size());
  for (auto c : counts) rel.push_back(static_cast<double>(c) / total);
  return RankSpectrum{std::move(rel)};
}

RankSpectrum expected_spectrum(std::size_t n, const RankParams& params) {
  if (n == 0) throw DomainError("expected_spectrum: n must be >= 1");
  validate(params);
  std::vector<double> w(n);
  std::visit(overloaded{
                 [&](const ZipfParams& p) {
                   for (std::size_t k = 1; k <= n; ++k) w[k - 1] = std::pow(static_cast<double>(k), -p.alpha);
                 },
                 [&](const GeometricRankParams& p) {
                   for (std::size_t k = 1; k <= n; ++k) w[k - 1] = std::pow(p.lambda, static_cast<double>(k));
                 },
                 [&](const WhitworthParams&) {
                   double harmonic_tail = 0.0;
                   for (std::size_t k = n; k >= 1; --k) {
                     harmonic_tail += 1.0 / static_cast<double>(k);
                     w[k - 1] = harmonic_tail;
                   }
                 },
                 [&](const NegLogParams&) {
                   const double m = static_cast<double>(n + 1);
                   for (std::size_t k = 1; k <= n; ++k) w[k - 1] = -std::log(static_cast<double>(k) / m);
                 },
                 [&](const YuleSimonParams& p) {
                   for (std::size_t k = 1; k <= n; ++k) {
                     const double kd = static_cast<double>(k);
                     w[k - 1] = std::pow(kd, -p.alpha) * std::pow(p.lambda, kd);
                   }
                 },
             },
             params);
  return normalized(std::move(w));
}

bool yule_simon_reductions_check(std::size_t n, double alpha, double lambda) {
  auto close = [](const RankSpectrum& a, const RankSpectrum& b) {
    for (std::size_t k = 0; k < a.size(); ++k)
      if (std::abs(a.rel_freqs[k] - b.rel_freqs[k]) > 1e-12) return false;
    return true;
  };
  const bool zipf = close(expected_spectrum(n, YuleSimonParams{alpha, 1.0}), expected_spectrum(n, ZipfParams{alpha}));
  const bool geometric = close(expected_spectrum(n, YuleSimonParams{0.0, lambda}),
                               expected_spectrum(n, GeometricRankParams{lambda}));
  return zipf && geometric;
}

RankModelFit fit_rank_model(const RankSpectrum& observed, RankModelKind kind) {
  const bool parameter_free = kind == RankModelKind::Whitworth || kind == RankModelKind::NegLog;
  const std::size_t needed = parameter_free ? 1 : 3;
  if (observed.size() < needed)
    throw InsufficientDataError("fit_rank_model: " + std::string(to_string(kind)) + " needs at least " +
                                std::to_string(needed) + " ranks");
  for (double f : observed.rel_freqs)
    if (!(f > 0.0)) throw DomainError("fit_rank_model: relative frequencies must be positive");

  RankParams params = fit_parameters(observed, kind);
  RankSpectrum expected = expected_spectrum(observed.size(), params);

  double mean = 0.0;
  for (double f : observed.rel_freqs) mean += std::log(f);
  mean /= static_cast<double>(observed.size());
  double ss_tot = 0.0;
  double ss_res = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double y = std::log(observed.rel_freqs[k]);
    ss_tot += (y - mean) * (y - mean);
    const double r = y - std::log(expected.rel_freqs[k]);
    ss_res += r * r;
  }
  // Flat spectra have no variance to explain; report a perfect fit only when
  // the residual also vanishes.
  const double r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res < 1e-24 ? 1.0 : 0.0);
  return RankModelFit{std::move(params), r_squared, std::move(expected)};
}

}  // namespace phonfreq
