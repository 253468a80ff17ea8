#pragma once

// Derivative-free minimizers shared by the likelihood and rank-law fitters.

#include <functional>
#include <span>
#include <vector>

namespace phonfreq {

struct ScalarMinimum {
  double x;
  double value;
};

/// Brent's method on [lo, hi]. Non-finite objective values are treated as +inf.
ScalarMinimum minimize_bracketed(const std::function<double(double)>& f, double lo, double hi,
                                 int max_iterations = 200);

struct NelderMeadOptions {
  std::vector<double> initial_step;  // per coordinate; empty = 0.1 each
  double f_tolerance = 1e-13;
  double x_tolerance = 1e-10;
  int max_evaluations = 20000;
  int restarts = 2;  // fresh simplex around the incumbent after convergence
};

struct VectorMinimum {
  std::vector<double> x;
  double value;
  int evaluations;
  bool converged;
};

/// Nelder-Mead simplex search. Non-finite objective values are treated as +inf,
/// which lets callers encode box constraints by returning infinity.
VectorMinimum nelder_mead(const std::function<double(std::span<const double>)>& f,
                          std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace phonfreq
