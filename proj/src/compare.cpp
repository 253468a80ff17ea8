#include "phonfreq/compare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phonfreq/errors.hpp"

namespace phonfreq {

std::string_view to_string(Favored f) {
  switch (f) {
    case Favored::A:
      return "A";
    case Favored::B:
      return "B";
    case Favored::None:
      return "none";
  }
  return "none";
}

VuongResult vuong_test(std::span<const Count> tail, const FittedModel& a, const FittedModel& b) {
  if (a.xmin != b.xmin)
    throw ProtocolError("vuong_test: fits use different xmin (" + std::to_string(a.xmin) + " vs " +
                        std::to_string(b.xmin) + ")");
  if (tail.size() < 2) throw DomainError("vuong_test: need at least two tail points");
  const DiscreteModel ma = a.model();
  const DiscreteModel mb = b.model();

  std::vector<double> ratios;
  ratios.reserve(tail.size());
  for (Count x : tail) ratios.push_back(ma.log_pmf(x) - mb.log_pmf(x));

  const double n = static_cast<double>(ratios.size());
  double sum = 0.0;
  for (double r : ratios) sum += r;

  VuongResult out;
  out.n = ratios.size();
  out.log_ratio_sum = sum;

  const bool constant = std::all_of(ratios.begin(), ratios.end(),
                                    [&](double r) { return r == ratios.front(); });
  if (constant) {
    if (sum != 0.0)
      throw DegenerateDataError("vuong_test: log ratios are constant and nonzero");
    return out;
  }

  const double mean = sum / n;
  double ss = 0.0;
  for (double r : ratios) ss += (r - mean) * (r - mean);
  // Moment estimator (divide by n), as in Vuong's variance term.
  const double sd = std::sqrt(ss / n);

  out.statistic = sum / (sd * std::sqrt(n));
  out.p_two_sided = std::erfc(std::abs(out.statistic) / std::numbers::sqrt2);
  if (out.statistic > 0.0)
    out.favored = Favored::A;
  else if (out.statistic < 0.0)
    out.favored = Favored::B;
  return out;
}

std::pair<SharedXminComparison, SharedXminComparison> pairwise_with_shared_xmin(
    std::span<const Count> data, ModelKind kind_a, ModelKind kind_b, const FitConfig& config) {
  const FittedModel scanned_a = fit_with_xmin_scan(kind_a, data, config);
  const FittedModel scanned_b = fit_with_xmin_scan(kind_b, data, config);

  const FittedModel b_at_a = fit_fixed_xmin(kind_b, data, scanned_a.xmin, config);
  const auto tail_a = tail_of(data, scanned_a.xmin);
  SharedXminComparison first{XminSource::A, scanned_a.xmin, scanned_a, b_at_a,
                             vuong_test(tail_a, scanned_a, b_at_a)};

  const FittedModel a_at_b = fit_fixed_xmin(kind_a, data, scanned_b.xmin, config);
  const auto tail_b = tail_of(data, scanned_b.xmin);
  SharedXminComparison second{XminSource::B, scanned_b.xmin, a_at_b, scanned_b,
                              vuong_test(tail_b, a_at_b, scanned_b)};
  return {std::move(first), std::move(second)};
}

std::vector<double> bonferroni_adjust(std::span<const double> p_values, std::size_t m) {
  if (m == 0) throw DomainError("bonferroni_adjust: m must be >= 1");
  if (m < p_values.size()) throw DomainError("bonferroni_adjust: m smaller than the number of tests");
  std::vector<double> out;
  out.reserve(p_values.size());
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bonferroni_adjust: p outside [0, 1]");
    out.push_back(std::min(1.0, p * static_cast<double>(m)));
  }
  return out;
}

}  // namespace phonfreq
