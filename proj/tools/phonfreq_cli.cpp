// phonfreq: fit heavy-tailed distributions to phoneme frequency tables.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "phonfreq/bootstrap.hpp"
#include "phonfreq/compare.hpp"
#include "phonfreq/corpus.hpp"
#include "phonfreq/distributions.hpp"
#include "phonfreq/errors.hpp"
#include "phonfreq/fit.hpp"
#include "phonfreq/generators.hpp"
#include "phonfreq/pipeline.hpp"
#include "phonfreq/rank_laws.hpp"

using namespace phonfreq;
using nlohmann::json;

namespace {

struct InputOptions {
  std::string path = "-";
  bool wordlist = false;
  std::size_t min_words = kDefaultMinWords;
  std::string language;
};

struct OutputOptions {
  std::string format = "csv";
  std::string path = "-";
};

void add_input(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path, "Frequency TSV (language, segment, count); '-' for stdin")->required();
  cmd->add_flag("--wordlist", in.wordlist, "Input is a wordlist TSV (language, word) instead");
  cmd->add_option("--min-words", in.min_words, "Minimum wordlist size when reading wordlists")
      ->default_val(kDefaultMinWords);
  cmd->add_option("--language", in.language, "Only analyse this language");
}

void add_output(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->default_val("csv");
  cmd->add_option("-o,--output", out.path, "Output file; '-' for stdout")->default_val("-");
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<FrequencyTable> load_tables(const InputOptions& in) {
  std::istringstream text(read_all(in.path));
  std::vector<FrequencyTable> tables;
  if (in.wordlist) {
    for (const auto& list : filter_min_words(parse_wordlist(text), in.min_words))
      tables.push_back(count_segments(list));
  } else {
    tables = parse_frequency_table(text);
  }
  if (!in.language.empty()) {
    std::erase_if(tables, [&](const FrequencyTable& t) { return t.language_id != in.language; });
    if (tables.empty()) throw std::runtime_error("language '" + in.language + "' not found in input");
  }
  return tables;
}

std::vector<ModelKind> parse_kinds(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllModelKinds.begin(), kAllModelKinds.end()};
  std::vector<ModelKind> kinds;
  for (const auto& n : names) {
    auto k = parse_model_kind(n);
    if (!k) throw std::runtime_error("unknown distribution '" + n + "'");
    kinds.push_back(*k);
  }
  return kinds;
}

ModelKind parse_kind(const std::string& name) { return parse_kinds({name}).front(); }

std::string csv_field(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

// ---------------------------------------------------------------------------

int run_ingest(const InputOptions& in, const std::string& out_path) {
  std::istringstream text(read_all(in.path));
  std::vector<FrequencyTable> tables;
  for (const auto& list : filter_min_words(parse_wordlist(text), in.min_words)) tables.push_back(count_segments(list));
  Output out(out_path);
  write_frequency_table(out.stream(), tables);
  return 0;
}

int run_fit(const InputOptions& in, const OutputOptions& fmt, const FitConfig& config, bool legacy) {
  const auto tables = load_tables(in);
  Output out(fmt.path);
  json doc = json::array();
  std::ostringstream csv;
  csv << "language,kind,xmin_scan,status,params,xmin,n_tail,prop_fitted,log_likelihood,ks\n";
  for (const auto& table : tables) {
    const auto data = table.counts();
    json lang = {{"language", table.language_id}, {"n_types", table.n_types()}, {"n_tokens", table.n_tokens()}};
    json fits = json::array();
    for (const auto& a : fit_all(data, config)) {
      json j = {{"kind", to_string(a.kind)}, {"xmin_scan", a.xmin_scanned}, {"status", to_string(a.status)}};
      csv << table.language_id << ',' << to_string(a.kind) << ',' << (a.xmin_scanned ? "true" : "false") << ','
          << to_string(a.status) << ',';
      if (a.fit) {
        j.update(fit_to_json(*a.fit));
        const auto names = param_names(a.kind);
        const auto values = param_values(a.fit->params);
        for (std::size_t i = 0; i < names.size(); ++i) csv << (i ? ";" : "") << names[i] << '=' << csv_field(values[i]);
        csv << ',' << a.fit->xmin << ',' << a.fit->n_tail << ','
            << csv_field(static_cast<double>(a.fit->n_tail) / static_cast<double>(table.n_types())) << ','
            << csv_field(a.fit->log_likelihood) << ',' << csv_field(a.fit->ks);
      } else {
        j["message"] = a.message;
        csv << ",,,,,";
      }
      csv << '\n';
      fits.push_back(std::move(j));
    }
    lang["fits"] = std::move(fits);
    if (legacy) {
      json rank = json::array();
      const auto spectrum = rank_spectrum(table);
      for (auto kind : {RankModelKind::Zipf, RankModelKind::GeometricRank, RankModelKind::Whitworth,
                        RankModelKind::NegLog, RankModelKind::YuleSimon}) {
        try {
          rank.push_back(rank_fit_to_json(fit_rank_model(spectrum, kind)));
        } catch (const InsufficientDataError& e) {
          rank.push_back({{"model", to_string(kind)}, {"legacy", true}, {"error", e.what()}});
        }
      }
      lang["legacy_rank_fits"] = std::move(rank);
    }
    doc.push_back(std::move(lang));
  }
  if (fmt.format == "json") {
    out.stream() << doc.dump(2) << '\n';
    return 0;
  }
  out.stream() << csv.str();
  if (legacy) {
    out.stream() << "\nlanguage,legacy_rank_model,params,r_squared\n";
    for (const auto& lang : doc)
      for (const auto& r : lang["legacy_rank_fits"]) {
        out.stream() << lang["language"].get<std::string>() << ',' << r["model"].get<std::string>() << ',';
        if (r.contains("error")) {
          out.stream() << ",\n";
          continue;
        }
        bool first = true;
        for (const auto& [k, v] : r["params"].items()) {
          out.stream() << (first ? "" : ";") << k << '=' << csv_field(v.get<double>());
          first = false;
        }
        out.stream() << ',' << csv_field(r["r_squared"].get<double>()) << '\n';
      }
  }
  return 0;
}

int run_gof_or_batch(const InputOptions& in, const OutputOptions& fmt, const RunConfig& config,
                     const std::string& summary_path, bool with_summary) {
  const auto tables = load_tables(in);
  const auto rows = run_batch(tables, config);
  Output out(fmt.path);
  if (fmt.format == "json") {
    json doc = {{"rows", rows_to_json(rows)}};
    if (with_summary) doc["summary"] = summary_to_json(summarize(rows, config.threshold));
    out.stream() << doc.dump(2) << '\n';
    if (with_summary && !summary_path.empty()) {
      Output s(summary_path);
      s.stream() << summary_to_json(summarize(rows, config.threshold)).dump(2) << '\n';
    }
    return 0;
  }
  write_rows_csv(out.stream(), rows);
  if (with_summary) {
    const auto summary = summarize(rows, config.threshold);
    if (!summary_path.empty()) {
      Output s(summary_path);
      write_summary_csv(s.stream(), summary);
    } else {
      out.stream() << '\n';
      write_summary_csv(out.stream(), summary);
    }
  }
  return 0;
}

int run_compare(const InputOptions& in, const OutputOptions& fmt, const FitConfig& config, const std::string& a_name,
                const std::string& b_name, std::size_t tests) {
  const auto tables = load_tables(in);
  const ModelKind ka = parse_kind(a_name);
  const ModelKind kb = parse_kind(b_name);

  struct Record {
    std::string language;
    std::string mode;
    Count xmin = 0;
    std::optional<VuongResult> result;
    std::string error;
  };
  std::vector<Record> records;
  for (const auto& table : tables) {
    const auto data = table.counts();
    const Count lowest = *std::min_element(data.begin(), data.end());
    Record plain{table.language_id, "without-xmin", lowest, std::nullopt, {}};
    try {
      const auto fa = fit_fixed_xmin(ka, data, lowest, config);
      const auto fb = fit_fixed_xmin(kb, data, lowest, config);
      plain.result = vuong_test(tail_of(data, lowest), fa, fb);
    } catch (const std::exception& e) {
      plain.error = e.what();
    }
    records.push_back(plain);
    try {
      const auto [first, second] = pairwise_with_shared_xmin(data, ka, kb, config);
      records.push_back({table.language_id, "xmin-from-a", first.xmin, first.result, {}});
      records.push_back({table.language_id, "xmin-from-b", second.xmin, second.result, {}});
    } catch (const std::exception& e) {
      records.push_back({table.language_id, "xmin-from-a", 0, std::nullopt, e.what()});
      records.push_back({table.language_id, "xmin-from-b", 0, std::nullopt, e.what()});
    }
  }
  // Bonferroni over the languages tested in each mode.
  const std::size_t m = tests != 0 ? tests : tables.size();
  std::vector<double> adjusted(records.size(), 1.0);
  for (std::size_t i = 0; i < records.size(); ++i)
    if (records[i].result) adjusted[i] = bonferroni_adjust(std::vector<double>{records[i].result->p_two_sided}, m)[0];

  Output out(fmt.path);
  if (fmt.format == "json") {
    json doc = json::array();
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      json j = {{"language", r.language}, {"a", to_string(ka)}, {"b", to_string(kb)}, {"mode", r.mode}};
      if (r.result) {
        j["xmin"] = r.xmin;
        j["vuong"] = vuong_to_json(*r.result);
        j["p_bonferroni"] = adjusted[i];
        j["bonferroni_m"] = m;
      } else {
        j["error"] = r.error;
      }
      doc.push_back(std::move(j));
    }
    out.stream() << doc.dump(2) << '\n';
    return 0;
  }
  out.stream() << "language,a,b,mode,xmin,statistic,p_two_sided,p_bonferroni,favored,n_tail,error\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    out.stream() << r.language << ',' << to_string(ka) << ',' << to_string(kb) << ',' << r.mode << ',';
    if (r.result) {
      const std::string favored = r.result->favored == Favored::A   ? std::string(to_string(ka))
                                  : r.result->favored == Favored::B ? std::string(to_string(kb))
                                                                    : "none";
      out.stream() << r.xmin << ',' << csv_field(r.result->statistic) << ',' << csv_field(r.result->p_two_sided)
                   << ',' << csv_field(adjusted[i]) << ',' << favored << ',' << r.result->n << ",\n";
    } else {
      out.stream() << ",,,,,,\"" << r.error << "\"\n";
    }
  }
  return 0;
}

struct SimulateOptions {
  std::string process;
  std::uint64_t seed = 1;
  std::size_t languages = 1;
  std::size_t urns = 25;
  std::size_t balls = 10000;
  double birth_rate = 2.0;
  double death_rate = 1.0;
  std::size_t types = 25;
  std::size_t steps = 100000;
  std::size_t n = 25;
  std::size_t runs = 1000;
  std::string kind = "exponential";
  double alpha = 2.5;
  double mu_log = 1.0;
  double sigma_log = 1.0;
  double lambda = 0.01;
  double rate = 10.0;
  Count xmin = 1;
};

ModelParams sample_params(const SimulateOptions& o) {
  switch (parse_kind(o.kind)) {
    case ModelKind::PowerLaw:
      return PowerLawParams{o.alpha};
    case ModelKind::Lognormal:
      return LognormalParams{o.mu_log, o.sigma_log};
    case ModelKind::Exponential:
      return ExponentialParams{o.lambda};
    case ModelKind::Poisson:
      return PoissonParams{o.rate};
  }
  throw std::runtime_error("unknown distribution");
}

int run_simulate(const SimulateOptions& o, const std::string& out_path) {
  Output out(out_path);
  if (o.process == "stick") {
    out.stream() << "run\trank\trel_freq\n";
    const auto spectra = simulate_stick_breaking(o.n, o.runs, o.seed);
    for (std::size_t r = 0; r < spectra.size(); ++r)
      for (std::size_t k = 0; k < spectra[r].size(); ++k)
        out.stream() << r + 1 << '\t' << k + 1 << '\t' << csv_field(spectra[r].rel_freqs[k]) << '\n';
    return 0;
  }
  std::vector<FrequencyTable> tables;
  for (std::size_t l = 0; l < o.languages; ++l) {
    std::ostringstream id;
    id << "lang" << std::setw(3) << std::setfill('0') << l + 1;
    const std::uint64_t seed = derive_seed(o.seed, l);
    if (o.process == "urn") {
      tables.push_back(simulate_preferential_attachment({o.urns, o.balls, seed, id.str()}));
    } else if (o.process == "birth-death") {
      tables.push_back(simulate_birth_death({o.birth_rate, o.death_rate, o.types, o.steps, seed, id.str()}));
    } else {
      const auto s = sample(sample_params(o), o.xmin, o.n, seed);
      FrequencyTable t{id.str(), {}};
      for (std::size_t i = 0; i < s.values.size(); ++i) t.entries.push_back({"s" + std::to_string(i + 1), s.values[i]});
      tables.push_back(std::move(t));
    }
  }
  write_frequency_table(out.stream(), tables);
  return 0;
}

int run_plot(const InputOptions& in, const std::string& out_path, const FitConfig& config,
             const std::vector<std::string>& kind_names) {
  const auto tables = load_tables(in);
  if (tables.size() != 1) throw std::runtime_error("plot needs exactly one language; use --language");
  const auto kinds = parse_kinds(kind_names);
  std::vector<FittedModel> fits;
  for (const auto& a : fit_all(tables.front().counts(), config))
    if (a.fit && std::find(kinds.begin(), kinds.end(), a.kind) != kinds.end()) fits.push_back(*a.fit);
  Output out(out_path);
  emit_plot_data(out.stream(), tables.front(), fits);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fit discrete heavy-tailed distributions to phoneme frequency data"};
  app.require_subcommand(1);

  InputOptions in;
  OutputOptions fmt;
  FitConfig fit_config;
  RunConfig run;
  std::size_t min_tail = fit_config.min_tail;
  std::vector<std::string> kind_names;
  std::string variant = "both";
  std::string summary_path;
  bool legacy = false;

  auto add_fit_options = [&](CLI::App* cmd) {
    cmd->add_option("--min-tail", min_tail, "Smallest tail a fit may use")->default_val(5)->check(CLI::Range(2, 1 << 30));
  };
  auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--iterations", run.iterations, "Bootstrap replicates per fit")
        ->default_val(kDefaultIterations)
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", run.master_seed, "Master seed")->default_val(1);
    cmd->add_option("--threshold", run.threshold, "Plausibility threshold (p > threshold is plausible)")
        ->default_val(kDefaultPlausibilityThreshold);
    cmd->add_option("--threads", run.threads, "Worker threads (0 = all cores)")->default_val(0);
  };

  auto* ingest = app.add_subcommand("ingest", "Wordlist TSV -> frequency TSV");
  ingest->add_option("input", in.path, "Wordlist TSV (language, word); '-' for stdin")->required();
  ingest->add_option("--min-words", in.min_words, "Drop wordlists shorter than this")->default_val(kDefaultMinWords);
  ingest->add_option("-o,--output", fmt.path, "Output file; '-' for stdout")->default_val("-");

  auto* fit = app.add_subcommand("fit", "Maximum-likelihood fits, with and without xmin");
  add_input(fit, in);
  add_output(fit, fmt);
  add_fit_options(fit);
  fit->add_flag("--legacy", legacy, "Also report legacy rank-frequency fits (R^2 on log frequency)");

  auto* gof = app.add_subcommand("gof", "Bootstrapped KS plausibility for selected fits");
  add_input(gof, in);
  add_output(gof, fmt);
  add_fit_options(gof);
  add_run_options(gof);
  gof->add_option("--kind", kind_names, "Distribution(s): powerlaw, lognormal, exponential, poisson");
  gof->add_option("--variant", variant, "Which fits to test")
      ->check(CLI::IsMember({"both", "with-xmin", "without-xmin"}))
      ->default_val("both");

  auto* compare = app.add_subcommand("compare", "Vuong likelihood-ratio tests between two distributions");
  add_input(compare, in);
  add_output(compare, fmt);
  add_fit_options(compare);
  std::string a_name = "exponential";
  std::string b_name = "lognormal";
  std::size_t tests = 0;
  compare->add_option("--a", a_name, "Model A")->default_val("exponential");
  compare->add_option("--b", b_name, "Model B")->default_val("lognormal");
  compare->add_option("--tests", tests, "Bonferroni test count (default: number of languages)");

  auto* batch = app.add_subcommand("batch", "Fit, bootstrap and summarize every language");
  add_input(batch, in);
  add_output(batch, fmt);
  add_fit_options(batch);
  add_run_options(batch);
  batch->add_option("--summary", summary_path, "Write the summary table to this file");

  auto* simulate = app.add_subcommand("simulate", "Generate synthetic frequency data");
  SimulateOptions sim;
  simulate->add_option("process", sim.process, "urn | birth-death | stick | sample")
      ->required()
      ->check(CLI::IsMember({"urn", "birth-death", "stick", "sample"}));
  simulate->add_option("--seed", sim.seed, "Master seed")->default_val(1);
  simulate->add_option("--languages", sim.languages, "Number of synthetic languages")->default_val(1);
  simulate->add_option("--urns", sim.urns, "Urns (urn)")->default_val(25);
  simulate->add_option("--balls", sim.balls, "Total balls (urn)")->default_val(10000);
  simulate->add_option("--birth-rate", sim.birth_rate, "Birth rate (birth-death)")->default_val(2.0);
  simulate->add_option("--death-rate", sim.death_rate, "Death rate (birth-death)")->default_val(1.0);
  simulate->add_option("--types", sim.types, "Types (birth-death)")->default_val(25);
  simulate->add_option("--steps", sim.steps, "Events (birth-death)")->default_val(100000);
  simulate->add_option("--n", sim.n, "Parts (stick) or types per language (sample)")->default_val(25);
  simulate->add_option("--runs", sim.runs, "Runs (stick)")->default_val(1000);
  simulate->add_option("--kind", sim.kind, "Distribution to sample (sample)")->default_val("exponential");
  simulate->add_option("--alpha", sim.alpha, "Power-law exponent")->default_val(2.5);
  simulate->add_option("--mu-log", sim.mu_log, "Lognormal mu")->default_val(1.0);
  simulate->add_option("--sigma-log", sim.sigma_log, "Lognormal sigma")->default_val(1.0);
  simulate->add_option("--lambda", sim.lambda, "Exponential rate")->default_val(0.01);
  simulate->add_option("--rate", sim.rate, "Poisson rate")->default_val(10.0);
  simulate->add_option("--xmin", sim.xmin, "Support lower bound (sample)")->default_val(1);
  simulate->add_option("-o,--output", fmt.path, "Output file; '-' for stdout")->default_val("-");

  auto* plot = app.add_subcommand("plot", "Rank-frequency plot data with fitted expectations");
  add_input(plot, in);
  add_fit_options(plot);
  plot->add_option("--kind", kind_names, "Restrict fitted columns to these distributions");
  plot->add_option("-o,--output", fmt.path, "Output file; '-' for stdout")->default_val("-");

  CLI11_PARSE(app, argc, argv);

  try {
    fit_config.min_tail = min_tail;
    run.fit = fit_config;
    if (ingest->parsed()) return run_ingest(in, fmt.path);
    if (fit->parsed()) return run_fit(in, fmt, fit_config, legacy);
    if (gof->parsed()) {
      run.kinds = parse_kinds(kind_names);
      run.without_xmin = variant != "with-xmin";
      run.with_xmin = variant != "without-xmin";
      return run_gof_or_batch(in, fmt, run, {}, false);
    }
    if (batch->parsed()) return run_gof_or_batch(in, fmt, run, summary_path, true);
    if (compare->parsed()) return run_compare(in, fmt, fit_config, a_name, b_name, tests);
    if (simulate->parsed()) return run_simulate(sim, fmt.path);
    if (plot->parsed()) return run_plot(in, fmt.path, fit_config, kind_names);
  } catch (const ParseError& e) {
    std::cerr << "phonfreq: parse error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "phonfreq: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
