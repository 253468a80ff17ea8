#pragma once

// Independent reference computations. Deliberately naive: direct sums and
// exhaustive loops, sharing no numerics with the library beyond pmf.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "phonfreq/distributions.hpp"
#include "phonfreq/fit.hpp"

namespace oracle {

using phonfreq::Count;

// sum_{x >= q} x^-a as a 10^7-term partial sum plus an Euler-Maclaurin tail.
inline double zeta(double a, double q, long terms = 10'000'000) {
  long double s = 0.0L;
  for (long i = terms - 1; i >= 0; --i) s += std::pow(static_cast<long double>(q + i), -a);
  const long double m = q + terms;
  s += std::pow(m, 1.0L - a) / (a - 1.0L) + 0.5L * std::pow(m, -a) + a / 12.0L * std::pow(m, -a - 1.0L);
  return static_cast<double>(s);
}

// KS by explicit counting: model cdf summed term by term from xmin.
inline double ks(std::span<const Count> tail, const phonfreq::DiscreteModel& model) {
  std::vector<Count> v(tail.begin(), tail.end());
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double worst = 0.0;
  long double cdf = 0.0L;
  Count x = model.xmin();
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    for (; x <= v[i]; ++x) cdf += model.pmf(x);
    worst = std::max(worst, std::abs(static_cast<double>(j) / n - static_cast<double>(cdf)));
    i = j;
  }
  return worst;
}

struct Candidate {
  Count xmin;
  double ks;
};

// KS of every admissible candidate, recomputed with the oracle above.
inline std::vector<Candidate> scan_candidates(phonfreq::ModelKind kind, std::span<const Count> data,
                                              const phonfreq::FitConfig& config = {}) {
  std::vector<Count> v(data.begin(), data.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  std::vector<Candidate> out;
  for (Count c : v) {
    const auto tail = phonfreq::tail_of(data, c);
    if (tail.size() < config.min_tail || tail.front() == tail.back()) continue;
    const auto fit = phonfreq::fit_fixed_xmin(kind, data, c, config);
    out.push_back({c, ks(tail, fit.model())});
  }
  return out;
}

// Smallest candidate whose KS is within `slack` of the minimum.
inline Count best_xmin(std::span<const Candidate> candidates, double slack = 1e-12) {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) lo = std::min(lo, c.ks);
  for (const auto& c : candidates)
    if (c.ks <= lo + slack) return c.xmin;
  return 0;
}

}  // namespace oracle
