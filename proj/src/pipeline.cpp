#include "phonfreq/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "phonfreq/errors.hpp"
#include "phonfreq/rng.hpp"

namespace phonfreq {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t kind_index(ModelKind kind) {
  return static_cast<std::size_t>(
      std::find(kAllModelKinds.begin(), kAllModelKinds.end(), kind) - kAllModelKinds.begin());
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

nlohmann::json params_to_json(const ModelParams& params) {
  nlohmann::json j = nlohmann::json::object();
  const auto names = param_names(kind_of(params));
  const auto values = param_values(params);
  for (std::size_t i = 0; i < names.size(); ++i) j[std::string(names[i])] = values[i];
  return j;
}

constexpr std::array<std::string_view, 5> kParamColumns = {"alpha", "mu_log", "sigma_log", "lambda", "rate"};

}  // namespace

std::uint64_t language_seed(std::uint64_t master_seed, const std::string& language_id) {
  return derive_seed(master_seed, hash_string(language_id));
}

std::uint64_t analysis_seed(std::uint64_t lang_seed, ModelKind kind, bool used_xmin_scan) {
  return derive_seed(lang_seed, 2 * kind_index(kind) + (used_xmin_scan ? 1 : 0));
}

AnalysisRow analyze(const FrequencyTable& table, ModelKind kind, bool used_xmin_scan,
                    const RunConfig& config) {
  AnalysisRow row;
  row.language_id = table.language_id;
  row.kind = kind;
  row.used_xmin_scan = used_xmin_scan;
  row.n_types = table.n_types();
  row.iterations = config.iterations;
  row.seed = analysis_seed(language_seed(config.master_seed, table.language_id), kind, used_xmin_scan);

  const auto data = table.counts();
  const FitAttempt attempt = attempt_fit(kind, used_xmin_scan, [&] {
    if (data.empty()) throw InsufficientDataError("empty frequency table");
    if (used_xmin_scan) return fit_with_xmin_scan(kind, data, config.fit);
    return fit_fixed_xmin(kind, data, *std::min_element(data.begin(), data.end()), config.fit);
  });
  row.status = attempt.status;
  row.message = attempt.message;
  row.fit = attempt.fit;
  if (!row.fit) return row;

  row.prop_fitted = static_cast<double>(row.fit->n_tail) / static_cast<double>(row.n_types);
  const BootstrapResult boot =
      bootstrap_p(data, *row.fit, config.iterations, row.seed, config.fit, config.threads);
  row.failed_replicates = boot.failed_replicates;
  if (boot.converged()) {
    row.p_value = boot.p_value;
  } else {
    row.status = FitStatus::NonConverged;
    row.message = std::to_string(boot.failed_replicates) + " replicate(s) failed to refit";
  }
  return row;
}

std::vector<AnalysisRow> run_batch(const std::vector<FrequencyTable>& tables, const RunConfig& config) {
  if (tables.empty()) throw DomainError("run_batch: no frequency tables");
  config.fit.validate();
  if (config.iterations == 0) throw DomainError("run_batch: iterations must be >= 1");

  std::vector<const FrequencyTable*> ordered;
  std::set<std::string> ids;
  for (const auto& t : tables) {
    if (!ids.insert(t.language_id).second)
      throw DomainError("run_batch: duplicate language id '" + t.language_id + "'");
    ordered.push_back(&t);
  }
  std::sort(ordered.begin(), ordered.end(),
            [](const FrequencyTable* a, const FrequencyTable* b) { return a->language_id < b->language_id; });

  std::vector<ModelKind> kinds = config.kinds;
  std::sort(kinds.begin(), kinds.end(), [](ModelKind a, ModelKind b) { return kind_index(a) < kind_index(b); });
  kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());

  std::vector<AnalysisRow> rows;
  for (const FrequencyTable* table : ordered) {
    for (ModelKind kind : kinds) {
      if (config.without_xmin) rows.push_back(analyze(*table, kind, false, config));
      if (config.with_xmin) rows.push_back(analyze(*table, kind, true, config));
    }
  }
  return rows;
}

SummaryTable summarize(std::span<const AnalysisRow> rows, double threshold) {
  SummaryTable summary;
  summary.threshold = threshold;
  std::map<std::pair<std::size_t, bool>, std::vector<const AnalysisRow*>> groups;
  for (const auto& row : rows) groups[{kind_index(row.kind), row.used_xmin_scan}].push_back(&row);

  for (const auto& [key, members] : groups) {
    SummaryEntry e;
    e.kind = kAllModelKinds[key.first];
    e.used_xmin_scan = key.second;
    e.parameter = std::string(param_names(e.kind).front());
    e.n_rows = members.size();

    std::vector<double> values;
    double prop_sum = 0.0;
    double ks_sum = 0.0;
    for (const AnalysisRow* row : members) {
      if (row->status != FitStatus::Ok || !row->fit) continue;
      ++e.n_ok;
      if (row->p_value && *row->p_value > threshold) ++e.plausible_count;
      values.push_back(param_values(row->fit->params).front());
      prop_sum += row->prop_fitted;
      ks_sum += row->fit->ks;
    }
    e.plausible_pct = e.n_rows == 0 ? 0.0
                                    : 100.0 * static_cast<double>(e.plausible_count) /
                                          static_cast<double>(e.n_rows);
    if (!values.empty()) {
      const double n = static_cast<double>(values.size());
      e.has_stats = true;
      double sum = 0.0;
      for (double v : values) sum += v;
      e.mean = sum / n;
      e.min = *std::min_element(values.begin(), values.end());
      e.max = *std::max_element(values.begin(), values.end());
      if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - e.mean) * (v - e.mean);
        e.sd = std::sqrt(ss / (n - 1.0));
        e.sd_defined = true;
      }
      e.mean_prop_fitted = prop_sum / n;
      e.mean_ks = ks_sum / n;
    }
    summary.entries.push_back(std::move(e));
  }
  return summary;
}

void emit_plot_data(std::ostream& out, const FrequencyTable& table, std::span<const FittedModel> fits) {
  if (table.entries.empty()) throw DomainError("emit_plot_data: empty table");
  auto counts = table.counts();
  std::sort(counts.begin(), counts.end(), std::greater<>());

  out << "rank\tfrequency\tlog10_rank\tlog10_frequency";
  for (const auto& fit : fits) out << "\texpected_" << to_string(fit.kind()) << (fit.xmin_scanned ? "_xmin" : "");
  out << '\n';

  std::vector<Sampler> quantiles;
  quantiles.reserve(fits.size());
  for (const auto& fit : fits) quantiles.emplace_back(fit.model(), 4096);

  for (std::size_t i = 0; i < counts.size(); ++i) {
    const auto rank = i + 1;
    out << rank << '\t' << counts[i] << '\t' << format_double(std::log10(static_cast<double>(rank))) << '\t'
        << format_double(std::log10(static_cast<double>(counts[i])));
    for (std::size_t f = 0; f < fits.size(); ++f) {
      out << '\t';
      if (counts[i] < fits[f].xmin || rank > fits[f].n_tail) continue;
      const double level = (static_cast<double>(rank) - 0.5) / static_cast<double>(fits[f].n_tail);
      out << quantiles[f].quantile_upper(level);
    }
    out << '\n';
  }
}

void write_rows_csv(std::ostream& out, std::span<const AnalysisRow> rows) {
  out << "language,kind,xmin_scan,status";
  for (auto c : kParamColumns) out << ',' << c;
  out << ",xmin,n_tail,n_types,prop_fitted,log_likelihood,ks,p_value,iterations,seed,failed_replicates\n";
  for (const auto& row : rows) {
    out << row.language_id << ',' << to_string(row.kind) << ',' << (row.used_xmin_scan ? "true" : "false") << ','
        << to_string(row.status);
    std::map<std::string_view, double> params;
    if (row.fit) {
      const auto names = param_names(row.kind);
      const auto values = param_values(row.fit->params);
      for (std::size_t i = 0; i < names.size(); ++i) params[names[i]] = values[i];
    }
    for (auto c : kParamColumns) {
      out << ',';
      if (auto it = params.find(c); it != params.end()) out << format_double(it->second);
    }
    out << ',';
    if (row.fit) out << row.fit->xmin;
    out << ',';
    if (row.fit) out << row.fit->n_tail;
    out << ',' << row.n_types << ',';
    if (row.fit) out << format_double(row.prop_fitted);
    out << ',';
    if (row.fit) out << format_double(row.fit->log_likelihood);
    out << ',';
    if (row.fit) out << format_double(row.fit->ks);
    out << ',';
    if (row.p_value) out << format_double(*row.p_value);
    out << ',' << row.iterations << ',' << row.seed << ',' << row.failed_replicates << '\n';
  }
}

nlohmann::json fit_to_json(const FittedModel& fit) {
  return {{"kind", to_string(fit.kind())},
          {"xmin_scan", fit.xmin_scanned},
          {"params", params_to_json(fit.params)},
          {"xmin", fit.xmin},
          {"n_tail", fit.n_tail},
          {"log_likelihood", fit.log_likelihood},
          {"ks", fit.ks}};
}

nlohmann::json rows_to_json(std::span<const AnalysisRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json j = {{"language", row.language_id},
                        {"kind", to_string(row.kind)},
                        {"xmin_scan", row.used_xmin_scan},
                        {"status", to_string(row.status)},
                        {"n_types", row.n_types},
                        {"iterations", row.iterations},
                        {"seed", row.seed},
                        {"failed_replicates", row.failed_replicates}};
    if (row.fit) {
      j["params"] = params_to_json(row.fit->params);
      j["xmin"] = row.fit->xmin;
      j["n_tail"] = row.fit->n_tail;
      j["prop_fitted"] = row.prop_fitted;
      j["log_likelihood"] = row.fit->log_likelihood;
      j["ks"] = row.fit->ks;
    }
    j["p_value"] = row.p_value ? nlohmann::json(*row.p_value) : nlohmann::json(nullptr);
    if (!row.message.empty()) j["message"] = row.message;
    arr.push_back(std::move(j));
  }
  return arr;
}

void write_summary_csv(std::ostream& out, const SummaryTable& summary) {
  out << "kind,xmin_scan,n_languages,n_ok,plausible_count,plausible_pct,parameter,mean,sd,sd_defined,min,max,"
         "mean_prop_fitted,mean_ks\n";
  for (const auto& e : summary.entries) {
    out << to_string(e.kind) << ',' << (e.used_xmin_scan ? "true" : "false") << ',' << e.n_rows << ',' << e.n_ok
        << ',' << e.plausible_count << ',' << format_double(e.plausible_pct) << ',' << e.parameter << ',';
    if (e.has_stats) {
      out << format_double(e.mean) << ',' << format_double(e.sd) << ',' << (e.sd_defined ? "true" : "false") << ','
          << format_double(e.min) << ',' << format_double(e.max) << ',' << format_double(e.mean_prop_fitted) << ','
          << format_double(e.mean_ks);
    } else {
      out << ",,false,,,,";
    }
    out << '\n';
  }
}

nlohmann::json summary_to_json(const SummaryTable& summary) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : summary.entries) {
    nlohmann::json j = {{"kind", to_string(e.kind)},
                        {"xmin_scan", e.used_xmin_scan},
                        {"n_languages", e.n_rows},
                        {"n_ok", e.n_ok},
                        {"plausible_count", e.plausible_count},
                        {"plausible_pct", e.plausible_pct},
                        {"parameter", e.parameter}};
    if (e.has_stats) {
      j["mean"] = e.mean;
      j["sd"] = e.sd;
      j["sd_defined"] = e.sd_defined;
      j["min"] = e.min;
      j["max"] = e.max;
      j["mean_prop_fitted"] = e.mean_prop_fitted;
      j["mean_ks"] = e.mean_ks;
    }
    entries.push_back(std::move(j));
  }
  return {{"threshold", summary.threshold}, {"entries", entries}};
}

nlohmann::json vuong_to_json(const VuongResult& r) {
  return {{"statistic", r.statistic},
          {"p_two_sided", r.p_two_sided},
          {"favored", to_string(r.favored)},
          {"log_ratio_sum", r.log_ratio_sum},
          {"n", r.n}};
}

nlohmann::json rank_fit_to_json(const RankModelFit& fit) {
  nlohmann::json params = std::visit(overloaded{
                                         [](const ZipfParams& p) { return nlohmann::json{{"alpha", p.alpha}}; },
                                         [](const GeometricRankParams& p) {
                                           return nlohmann::json{{"lambda", p.lambda}};
                                         },
                                         [](const WhitworthParams&) { return nlohmann::json::object(); },
                                         [](const NegLogParams&) { return nlohmann::json::object(); },
                                         [](const YuleSimonParams& p) {
                                           return nlohmann::json{{"alpha", p.alpha}, {"lambda", p.lambda}};
                                         },
                                     },
                                     fit.params);
  return {{"model", to_string(fit.kind())},
          {"legacy", true},
          {"params", params},
          {"r_squared", fit.r_squared},
          {"expected", fit.expected.rel_freqs}};
}

}  // namespace phonfreq
