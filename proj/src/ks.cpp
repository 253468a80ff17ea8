#include "phonfreq/ks.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "phonfreq/errors.hpp"

namespace phonfreq {

double ks_distance(std::span<const Count> tail, const std::function<double(Count)>& model_cdf) {
  if (tail.empty()) throw DomainError("ks_distance: empty tail");
  std::vector<Count> sorted(tail.begin(), tail.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double empirical = static_cast<double>(j) / n;
    worst = std::max(worst, std::abs(empirical - model_cdf(sorted[i])));
    i = j;
  }
  return worst;
}

double ks_distance(std::span<const Count> tail, const DiscreteModel& model) {
  return ks_distance(tail, [&model](Count x) { return model.cdf(x); });
}

double ks_distance(std::span<const Count> tail, const ModelParams& params, Count xmin) {
  return ks_distance(tail, DiscreteModel(params, xmin));
}

}  // namespace phonfreq
