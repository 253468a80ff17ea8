#pragma once

// Stochastic generators used as synthetic-data sources and fitter oracles.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "phonfreq/corpus.hpp"
#include "phonfreq/rank_laws.hpp"

namespace phonfreq {

struct UrnConfig {
  std::size_t n_urns = 25;
  std::size_t n_balls = 10000;  // includes the one seed ball per urn
  std::uint64_t seed = 0;
  std::string language_id = "urn";

  void validate() const;
};

struct BirthDeathConfig {
  double birth_rate = 2.0;
  double death_rate = 1.0;
  std::size_t n_types = 25;
  std::size_t steps = 100000;
  std::uint64_t seed = 0;
  std::string language_id = "birth-death";

  void validate() const;
};

/// Polya urn: every urn starts with one ball, then each further ball joins an
/// urn chosen with probability proportional to its contents. Segment labels
/// are "s1".."sN" in urn order.
FrequencyTable simulate_preferential_attachment(const UrnConfig& config);

/// Every type starts with one token. Each step is a birth (one token added to
/// a uniformly chosen type) with probability birth_rate / (birth_rate +
/// death_rate), otherwise a death (one token removed from a type chosen in
/// proportion to its count; types never drop below one token).
FrequencyTable simulate_birth_death(const BirthDeathConfig& config);

/// Breaks [0, 1] at n - 1 uniform points per run; parts sorted descending.
std::vector<RankSpectrum> simulate_stick_breaking(std::size_t n, std::size_t runs, std::uint64_t seed);

}  // namespace phonfreq
