#pragma once

// Vuong's normalized log-likelihood-ratio test for non-nested models.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "phonfreq/fit.hpp"

namespace phonfreq {

enum class Favored { A, B, None };

std::string_view to_string(Favored f);

struct VuongResult {
  double statistic = 0.0;  // > 0 favors A
  double p_two_sided = 1.0;
  Favored favored = Favored::None;
  double log_ratio_sum = 0.0;
  std::size_t n = 0;
};

/// Per-point log ratios ln pA(x) - ln pB(x) over `tail`, normalized by
/// sd * sqrt(n). Both fits must share xmin and every tail value must be >= it.
/// Throws ProtocolError on mismatched xmin and DegenerateDataError when the
/// ratios are constant but nonzero.
VuongResult vuong_test(std::span<const Count> tail, const FittedModel& a, const FittedModel& b);

enum class XminSource { A, B };

struct SharedXminComparison {
  XminSource xmin_from;
  Count xmin;
  FittedModel fit_a;
  FittedModel fit_b;
  VuongResult result;
};

/// Two tests: B refitted at A's scanned xmin, then A refitted at B's. In both
/// the statistic is signed so that positive favors kind_a.
std::pair<SharedXminComparison, SharedXminComparison> pairwise_with_shared_xmin(
    std::span<const Count> data, ModelKind kind_a, ModelKind kind_b, const FitConfig& config = {});

/// min(1, p * m) elementwise. Throws DomainError when m == 0, m is smaller
/// than the number of tests, or some p is outside [0, 1].
std::vector<double> bonferroni_adjust(std::span<const double> p_values, std::size_t m);

}  // namespace phonfreq
