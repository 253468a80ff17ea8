#include "phonfreq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "phonfreq/errors.hpp"
#include "phonfreq/rng.hpp"

namespace phonfreq {

namespace {

FrequencyTable to_table(const std::string& language_id, const std::vector<std::int64_t>& counts) {
  FrequencyTable table{language_id, {}};
  table.entries.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i)
    table.entries.push_back({"s" + std::to_string(i + 1), counts[i]});
  return table;
}

}  // namespace

void UrnConfig::validate() const {
  if (n_urns == 0) throw DomainError("urn simulation needs at least one urn");
  if (n_balls < n_urns) throw DomainError("urn simulation needs n_balls >= n_urns");
}

void BirthDeathConfig::validate() const {
  if (!std::isfinite(birth_rate) || birth_rate <= 0.0) throw DomainError("birth rate must be finite and > 0");
  if (!std::isfinite(death_rate) || death_rate < 0.0) throw DomainError("death rate must be finite and >= 0");
  if (n_types == 0) throw DomainError("birth-death simulation needs at least one type");
}

FrequencyTable simulate_preferential_attachment(const UrnConfig& config) {
  config.validate();
  Rng rng(config.seed);
  // owner[b] is the urn holding ball b; a uniformly drawn ball picks its urn
  // with probability proportional to that urn's contents.
  std::vector<std::uint32_t> owner;
  owner.reserve(config.n_balls);
  std::vector<std::int64_t> counts(config.n_urns, 1);
  for (std::size_t u = 0; u < config.n_urns; ++u) owner.push_back(static_cast<std::uint32_t>(u));
  while (owner.size() < config.n_balls) {
    const std::uint32_t urn = owner[rng.below(owner.size())];
    owner.push_back(urn);
    ++counts[urn];
  }
  return to_table(config.language_id, counts);
}

FrequencyTable simulate_birth_death(const BirthDeathConfig& config) {
  config.validate();
  Rng rng(config.seed);
  std::vector<std::int64_t> counts(config.n_types, 1);
  auto total = static_cast<std::int64_t>(config.n_types);
  const double p_birth = config.birth_rate / (config.birth_rate + config.death_rate);
  for (std::size_t step = 0; step < config.steps; ++step) {
    if (rng.uniform() < p_birth) {
      ++counts[rng.below(counts.size())];
      ++total;
      continue;
    }
    auto token = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(total)));
    std::size_t type = 0;
    while (token >= counts[type]) token -= counts[type++];
    if (counts[type] > 1) {
      --counts[type];
      --total;
    }
  }
  return to_table(config.language_id, counts);
}

std::vector<RankSpectrum> simulate_stick_breaking(std::size_t n, std::size_t runs, std::uint64_t seed) {
  if (n == 0) throw DomainError("stick breaking needs n >= 1");
  if (runs == 0) throw DomainError("stick breaking needs runs >= 1");
  Rng rng(seed);
  std::vector<RankSpectrum> out;
  out.reserve(runs);
  std::vector<double> cuts(n + 1);
  for (std::size_t r = 0; r < runs; ++r) {
    cuts.front() = 0.0;
    cuts.back() = 1.0;
    for (std::size_t i = 1; i < n; ++i) cuts[i] = rng.uniform();
    std::sort(cuts.begin() + 1, cuts.end() - 1);
    std::vector<double> parts(n);
    for (std::size_t i = 0; i < n; ++i) parts[i] = cuts[i + 1] - cuts[i];
    std::sort(parts.begin(), parts.end(), std::greater<>());
    out.push_back(RankSpectrum{std::move(parts)});
  }
  return out;
}

}  // namespace phonfreq
