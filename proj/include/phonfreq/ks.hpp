#pragma once

#include <functional>
#include <span>

#include "phonfreq/distributions.hpp"

namespace phonfreq {

/// Largest |empirical CDF - model CDF| over the distinct values of `tail`.
/// `tail` need not be sorted. Throws DomainError on an empty tail.
double ks_distance(std::span<const Count> tail, const std::function<double(Count)>& model_cdf);

/// As above, against a candidate distribution; every value must be >= xmin.
double ks_distance(std::span<const Count> tail, const ModelParams& params, Count xmin);
double ks_distance(std::span<const Count> tail, const DiscreteModel& model);

}  // namespace phonfreq
