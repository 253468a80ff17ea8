#include "phonfreq/bootstrap.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "phonfreq/errors.hpp"
#include "phonfreq/parallel.hpp"

namespace phonfreq {

double bootstrap_p_value(double observed_ks, std::span<const double> replicate_ks) {
  if (replicate_ks.empty()) throw DomainError("bootstrap_p_value: no replicates");
  const auto hits = std::count_if(replicate_ks.begin(), replicate_ks.end(),
                                  [observed_ks](double ks) { return ks >= observed_ks; });
  return static_cast<double>(hits) / static_cast<double>(replicate_ks.size());
}

std::vector<Count> draw_replicate(std::span<const Count> below_xmin, std::size_t n,
                                  std::size_t n_tail, const Sampler& sampler, Rng& rng) {
  const double p_model = static_cast<double>(n_tail) / static_cast<double>(n);
  std::vector<Count> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (below_xmin.empty() || rng.uniform() < p_model)
      out.push_back(sampler(rng));
    else
      out.push_back(below_xmin[rng.below(below_xmin.size())]);
  }
  return out;
}

BootstrapResult bootstrap_p(std::span<const Count> data, const FittedModel& fitted,
                            std::size_t iterations, std::uint64_t seed, const FitConfig& config,
                            unsigned threads) {
  if (iterations == 0) throw DomainError("bootstrap_p: iterations must be >= 1");
  if (data.empty()) throw DomainError("bootstrap_p: empty data");

  std::vector<Count> below;
  for (Count x : data)
    if (x < fitted.xmin) below.push_back(x);
  std::sort(below.begin(), below.end());

  const ModelKind kind = fitted.kind();
  const Sampler sampler(fitted.model());
  const std::size_t n = data.size();

  std::vector<double> replicate_ks(iterations);
  std::vector<char> failed(iterations, 0);
  parallel_for(iterations, threads, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    for (std::size_t attempt = 0; attempt < kReplicateRetries; ++attempt) {
      const auto replicate = draw_replicate(below, n, fitted.n_tail, sampler, rng);
      try {
        const FittedModel refit = fitted.xmin_scanned
                                      ? fit_with_xmin_scan(kind, replicate, config)
                                      : fit_fixed_xmin(kind, replicate, fitted.xmin, config);
        replicate_ks[i] = refit.ks;
        return;
      } catch (const InsufficientDataError&) {
      } catch (const DegenerateDataError&) {
      }
    }
    // Counted as at least as bad as the observed fit.
    replicate_ks[i] = std::numeric_limits<double>::infinity();
    failed[i] = 1;
  });

  BootstrapResult result;
  result.iterations = iterations;
  result.observed_ks = fitted.ks;
  result.seed = seed;
  result.refit_xmin = fitted.xmin_scanned;
  result.exceeding = static_cast<std::size_t>(
      std::count_if(replicate_ks.begin(), replicate_ks.end(),
                    [&](double ks) { return ks >= fitted.ks; }));
  result.p_value = static_cast<double>(result.exceeding) / static_cast<double>(iterations);
  result.failed_replicates = static_cast<std::size_t>(std::count(failed.begin(), failed.end(), 1));
  return result;
}

}  // namespace phonfreq
