#pragma once

// Semi-parametric bootstrap of the KS statistic for fitted models.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "phonfreq/distributions.hpp"
#include "phonfreq/fit.hpp"
#include "phonfreq/rng.hpp"

namespace phonfreq {

inline constexpr double kDefaultPlausibilityThreshold = 0.1;
inline constexpr std::size_t kReplicateRetries = 10;

struct BootstrapResult {
  std::size_t iterations = 0;
  double observed_ks = 0.0;
  double p_value = 0.0;
  std::uint64_t seed = 0;
  bool refit_xmin = false;
  std::size_t exceeding = 0;  // replicates with KS >= observed (failures included)
  std::size_t failed_replicates = 0;  // exhausted the retry budget

  bool converged() const { return failed_replicates == 0; }
  /// Plausible when p exceeds the threshold; p <= threshold rejects.
  bool plausible(double threshold = kDefaultPlausibilityThreshold) const {
    return p_value > threshold;
  }
};

/// Fraction of replicate statistics >= observed.
double bootstrap_p_value(double observed_ks, std::span<const double> replicate_ks);

/// Draws one semi-parametric replicate of size data.size(): each point comes
/// from `sampler` with probability n_tail / n, otherwise uniformly from the
/// observed points below the fit's xmin.
std::vector<Count> draw_replicate(std::span<const Count> below_xmin, std::size_t n,
                                  std::size_t n_tail, const Sampler& sampler, Rng& rng);

/// Bootstrapped plausibility of `fitted` for `data`. Replicates are refitted
/// with the same kind, rescanning xmin exactly when the original fit did.
/// Replicate i uses the stream derive_seed(seed, i), so the result does not
/// depend on `threads` (0 = hardware concurrency).
BootstrapResult bootstrap_p(std::span<const Count> data, const FittedModel& fitted,
                            std::size_t iterations, std::uint64_t seed,
                            const FitConfig& config = {}, unsigned threads = 0);

}  // namespace phonfreq
