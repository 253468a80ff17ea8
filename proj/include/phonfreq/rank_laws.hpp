#pragma once

// Legacy rank-frequency laws (Zipf, geometric, Whitworth, negative-log,
// Yule-Simon) fitted by least squares on log relative frequency. Kept for
// comparison with older literature only; R^2 is not evidence of plausibility.

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "phonfreq/corpus.hpp"

namespace phonfreq {

/// Relative frequencies by rank, largest first.
struct RankSpectrum {
  std::vector<double> rel_freqs;

  std::size_t size() const { return rel_freqs.size(); }
};

enum class RankModelKind { Zipf, GeometricRank, Whitworth, NegLog, YuleSimon };

std::string_view to_string(RankModelKind kind);
std::optional<RankModelKind> parse_rank_model_kind(std::string_view name);

struct ZipfParams {
  double alpha;
};
struct GeometricRankParams {
  double lambda;  // (0, 1]
};
struct WhitworthParams {};
struct NegLogParams {};
struct YuleSimonParams {
  double alpha;
  double lambda;  // (0, 1]
};

using RankParams =
    std::variant<ZipfParams, GeometricRankParams, WhitworthParams, NegLogParams, YuleSimonParams>;

RankModelKind kind_of(const RankParams& params);

struct RankModelFit {
  RankParams params;
  double r_squared;
  RankSpectrum expected;

  RankModelKind kind() const { return kind_of(params); }
};

/// Counts sorted descending and divided by the token total.
RankSpectrum rank_spectrum(const FrequencyTable& table);

/// p_k for k = 1..n, normalized and nonincreasing:
///   Zipf        k^-alpha              (alpha >= 0)
///   Geometric   lambda^k              (0 < lambda <= 1)
///   Whitworth   sum_{i=k..n} 1/i      (expected sorted stick-breaking parts)
///   NegLog      -ln(k / (n + 1))
///   YuleSimon   lambda^k / k^alpha
RankSpectrum expected_spectrum(std::size_t n, const RankParams& params);

/// Whether Yule-Simon reduces to Zipf at lambda = 1 and to the geometric law
/// at alpha = 0, elementwise within 1e-12.
bool yule_simon_reductions_check(std::size_t n, double alpha, double lambda);

/// Minimizes squared error in log relative frequency. Parameter-free kinds
/// only evaluate. Needs >= 3 ranks for parameterized kinds.
RankModelFit fit_rank_model(const RankSpectrum& observed, RankModelKind kind);

}  // namespace phonfreq
