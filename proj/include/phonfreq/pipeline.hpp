#pragma once

// Batch analysis across languages: fit, bootstrap, summarize, export.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "phonfreq/bootstrap.hpp"
#include "phonfreq/compare.hpp"
#include "phonfreq/corpus.hpp"
#include "phonfreq/fit.hpp"
#include "phonfreq/rank_laws.hpp"

namespace phonfreq {

inline constexpr std::size_t kDefaultIterations = 10000;

struct RunConfig {
  std::size_t iterations = kDefaultIterations;
  std::uint64_t master_seed = 1;
  double threshold = kDefaultPlausibilityThreshold;
  FitConfig fit;
  unsigned threads = 0;
  std::vector<ModelKind> kinds{kAllModelKinds.begin(), kAllModelKinds.end()};
  bool without_xmin = true;
  bool with_xmin = true;
};

struct AnalysisRow {
  std::string language_id;
  ModelKind kind = ModelKind::PowerLaw;
  bool used_xmin_scan = false;
  FitStatus status = FitStatus::Ok;
  std::optional<FittedModel> fit;
  std::size_t n_types = 0;
  double prop_fitted = 0.0;  // n_tail / n_types
  std::optional<double> p_value;  // set iff status is Ok
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t failed_replicates = 0;
  std::string message;
};

/// Seed for one language; independent of the other languages in the batch.
std::uint64_t language_seed(std::uint64_t master_seed, const std::string& language_id);
/// Seed for one (kind, variant) analysis of a language.
std::uint64_t analysis_seed(std::uint64_t language_seed, ModelKind kind, bool used_xmin_scan);

/// Fit and bootstrap every configured (kind, variant) for every table.
/// Failures become row statuses. Rows are ordered by (language_id, kind,
/// variant) with the unscanned variant first. Throws DomainError on empty
/// input or repeated language ids.
std::vector<AnalysisRow> run_batch(const std::vector<FrequencyTable>& tables, const RunConfig& config);

/// One-language version of run_batch for a single (kind, variant).
AnalysisRow analyze(const FrequencyTable& table, ModelKind kind, bool used_xmin_scan,
                    const RunConfig& config);

struct SummaryEntry {
  ModelKind kind;
  bool used_xmin_scan;
  std::size_t n_rows = 0;
  std::size_t n_ok = 0;
  std::size_t plausible_count = 0;
  double plausible_pct = 0.0;  // of n_rows
  std::string parameter;       // first parameter of the kind
  bool has_stats = false;      // any ok rows
  double mean = 0.0;
  double sd = 0.0;
  bool sd_defined = false;  // needs two or more ok rows
  double min = 0.0;
  double max = 0.0;
  double mean_prop_fitted = 0.0;
  double mean_ks = 0.0;
};

struct SummaryTable {
  double threshold = kDefaultPlausibilityThreshold;
  std::vector<SummaryEntry> entries;  // one per (kind, variant) present in rows
};

/// Plausible rows have status Ok and p_value > threshold.
SummaryTable summarize(std::span<const AnalysisRow> rows, double threshold = kDefaultPlausibilityThreshold);

/// TSV: rank, frequency, log10_rank, log10_frequency, then one expected
/// frequency column per fit, blank where the observed value is below the
/// fit's xmin. The expected value at rank k is the smallest x >= xmin with
/// P(X > x) < (k - 0.5) / n_tail.
void emit_plot_data(std::ostream& out, const FrequencyTable& table, std::span<const FittedModel> fits);

void write_rows_csv(std::ostream& out, std::span<const AnalysisRow> rows);
nlohmann::json rows_to_json(std::span<const AnalysisRow> rows);
void write_summary_csv(std::ostream& out, const SummaryTable& summary);
nlohmann::json summary_to_json(const SummaryTable& summary);

nlohmann::json fit_to_json(const FittedModel& fit);
nlohmann::json vuong_to_json(const VuongResult& result);
nlohmann::json rank_fit_to_json(const RankModelFit& fit);

}  // namespace phonfreq
