#pragma once

// Maximum-likelihood fits at a fixed lower bound, and lower-bound selection by
// KS-distance minimization.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phonfreq/distributions.hpp"

namespace phonfreq {

struct FitConfig {
  std::size_t min_tail = 5;
  double alpha_lo = 1.000001;
  double alpha_hi = 20.0;
  double optimizer_tolerance = 1e-8;  // coordinate tolerance of the lognormal search
  // Lognormal search box. Heavy tails can push the likelihood maximum toward
  // mu_log -> -inf; such fits stop on the box edge.
  double mu_log_bound = 100.0;  // |mu_log| <= bound
  double sigma_log_lo = 1e-5;
  double sigma_log_hi = 400.0;

  /// Throws DomainError on an inconsistent configuration.
  void validate() const;
};

struct FittedModel {
  ModelParams params;
  Count xmin = 1;
  std::size_t n_tail = 0;
  double log_likelihood = 0.0;
  double ks = 0.0;
  bool xmin_scanned = false;

  ModelKind kind() const { return kind_of(params); }
  DiscreteModel model() const { return DiscreteModel(params, xmin); }
};

/// Values >= xmin, sorted ascending.
std::vector<Count> tail_of(std::span<const Count> data, Count xmin);

/// MLE of `kind` on the points >= xmin.
/// Throws InsufficientDataError when fewer than min_tail points remain and
/// DegenerateDataError when they are all equal.
FittedModel fit_fixed_xmin(ModelKind kind, std::span<const Count> data, Count xmin,
                           const FitConfig& config = {});

/// Candidate xmin values are the distinct data values leaving at least
/// min_tail points; the fit with smallest KS wins, ties to the smallest xmin.
/// Candidates whose tail is degenerate are skipped.
FittedModel fit_with_xmin_scan(ModelKind kind, std::span<const Count> data,
                               const FitConfig& config = {});

enum class FitStatus { Ok, InsufficientData, Degenerate, NonConverged };

std::string_view to_string(FitStatus status);

struct FitAttempt {
  ModelKind kind;
  bool xmin_scanned;
  FitStatus status;
  std::optional<FittedModel> fit;
  std::string message;
};

/// Runs `fit` and converts fitting errors into a failure record.
template <class Fn>
FitAttempt attempt_fit(ModelKind kind, bool scanned, Fn&& fit);

/// Eight attempts: every kind at xmin = min(data), then every kind with an
/// xmin scan. Errors are recorded per entry.
std::vector<FitAttempt> fit_all(std::span<const Count> data, const FitConfig& config = {});

}  // namespace phonfreq

#include "phonfreq/errors.hpp"

namespace phonfreq {

template <class Fn>
FitAttempt attempt_fit(ModelKind kind, bool scanned, Fn&& fit) {
  FitAttempt out{kind, scanned, FitStatus::Ok, std::nullopt, {}};
  try {
    out.fit = fit();
  } catch (const InsufficientDataError& e) {
    out.status = FitStatus::InsufficientData;
    out.message = e.what();
  } catch (const DegenerateDataError& e) {
    out.status = FitStatus::Degenerate;
    out.message = e.what();
  }
  return out;
}

}  // namespace phonfreq
