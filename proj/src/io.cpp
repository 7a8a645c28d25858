#include "radsel/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace radsel {

namespace {

using nlohmann::json;

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "scenario", "n",       "signal",      "sigma",   "kappa_grid", "kappa",
      "K",        "x_weight", "penalty",    "mode",    "replicates", "master_seed",
      "max_dim",  "alpha",   "tol",         "t_grid",  "x_grid",     "n_grid",
      "dims",     "samples", "talagrand",   "workers",
  };
  return keys;
}

}  // namespace

std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_rational(std::int64_t numerator, std::int64_t denominator) {
  return std::to_string(numerator) + "/" + std::to_string(denominator);
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::cutoff_sweep: return "cutoff_sweep";
    case Scenario::norm_curve: return "norm_curve";
    case Scenario::oracle_ratio: return "oracle_ratio";
    case Scenario::lower_bound: return "lower_bound";
    case Scenario::rate_study: return "rate_study";
    case Scenario::concentration_suite: return "concentration_suite";
    case Scenario::talagrand_suite: return "talagrand_suite";
  }
  throw std::logic_error("unreachable scenario");
}

Scenario scenario_from_name(const std::string& name) {
  if (name == "cutoff_sweep") return Scenario::cutoff_sweep;
  if (name == "norm_curve") return Scenario::norm_curve;
  if (name == "oracle_ratio") return Scenario::oracle_ratio;
  if (name == "lower_bound") return Scenario::lower_bound;
  if (name == "rate_study") return Scenario::rate_study;
  if (name == "concentration_suite") return Scenario::concentration_suite;
  if (name == "talagrand_suite") return Scenario::talagrand_suite;
  throw ConfigValidationError("unknown scenario \"" + name + "\"", {"scenario"});
}

namespace {

std::string penalty_name(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::linear_dim: return "linear_dim";
    case PenaltyKind::mallows: return "mallows";
    case PenaltyKind::theorem_style: return "theorem_style";
  }
  throw std::logic_error("unreachable penalty kind");
}

std::string mode_name(RiskMode mode) {
  switch (mode) {
    case RiskMode::vector: return "vector";
    case RiskMode::functional_empirical: return "functional_empirical";
    case RiskMode::functional_l2: return "functional_l2";
  }
  throw std::logic_error("unreachable risk mode");
}

std::string signal_kind_name(SignalKind kind) {
  switch (kind) {
    case SignalKind::zero: return "zero";
    case SignalKind::figure1: return "figure1";
    case SignalKind::sobolev: return "sobolev";
    case SignalKind::coefficients: return "coefficients";
  }
  throw std::logic_error("unreachable signal kind");
}

ExperimentConfig config_from_json(const json& root) {
  ExperimentConfig config;
  std::vector<std::string> bad;

  if (!root.is_object()) {
    throw ConfigValidationError("config must be a JSON object", {"<root>"});
  }
  for (const auto& [key, value] : root.items()) {
    (void)value;
    bool known = false;
    for (const std::string& k : known_keys()) {
      if (k == key) {
        known = true;
        break;
      }
    }
    if (!known) bad.push_back(key);
  }
  if (!bad.empty()) {
    throw ConfigValidationError("unknown configuration keys", bad);
  }

  if (!root.contains("scenario") || !root["scenario"].is_string()) {
    throw ConfigValidationError("scenario is required", {"scenario"});
  }
  config.scenario = scenario_from_name(root["scenario"].get<std::string>());

  const auto get_int = [&](const char* key, int fallback, int lo) {
    if (!root.contains(key)) return fallback;
    if (!root[key].is_number_integer() || root[key].get<std::int64_t>() < lo) {
      bad.push_back(key);
      return fallback;
    }
    return root[key].get<int>();
  };
  const auto get_double = [&](const char* key, double fallback, bool positive) {
    if (!root.contains(key)) return fallback;
    if (!root[key].is_number() || (positive && !(root[key].get<double>() > 0.0))) {
      bad.push_back(key);
      return fallback;
    }
    return root[key].get<double>();
  };

  config.n = get_int("n", config.n, 1);
  config.sigma = get_double("sigma", config.sigma, false);
  if (config.sigma < 0.0) bad.push_back("sigma");
  config.kappa = get_double("kappa", config.kappa, false);
  config.K = get_double("K", config.K, true);
  config.x_weight = get_double("x_weight", config.x_weight, true);
  config.replicates = get_int("replicates", config.replicates, 1);
  config.max_dim = get_int("max_dim", config.max_dim, 0);
  config.alpha_weight = get_double("alpha", config.alpha_weight, true);
  config.tol = get_double("tol", config.tol, true);
  config.workers = get_int("workers", config.workers, 0);
  config.samples = get_int("samples", static_cast<int>(config.samples), 1000);

  if (root.contains("master_seed")) {
    if (root["master_seed"].is_number_unsigned() || root["master_seed"].is_number_integer()) {
      config.master_seed = root["master_seed"].get<std::uint64_t>();
    } else {
      bad.push_back("master_seed");
    }
  }

  if (root.contains("signal")) {
    const json& signal = root["signal"];
    if (signal.is_string()) {
      const std::string name = signal.get<std::string>();
      if (name == "zero") {
        config.signal = SignalKind::zero;
      } else if (name == "figure1") {
        config.signal = SignalKind::figure1;
      } else {
        bad.push_back("signal");
      }
    } else if (signal.is_object() && signal.contains("sobolev")) {
      config.signal = SignalKind::sobolev;
      const json& s = signal["sobolev"];
      config.sobolev.alpha = s.value("alpha", config.sobolev.alpha);
      config.sobolev.R = s.value("R", config.sobolev.R);
      config.sobolev.fill = s.value("fill", config.sobolev.fill);
      if (config.sobolev.alpha < 1 || !(config.sobolev.R > 0.0) ||
          !(config.sobolev.fill > 0.0) || config.sobolev.fill > 1.0) {
        bad.push_back("signal");
      }
    } else if (signal.is_object() && signal.contains("coefficients")) {
      config.signal = SignalKind::coefficients;
      if (!signal["coefficients"].is_array()) {
        bad.push_back("signal");
      } else {
        config.coefficients = signal["coefficients"].get<std::vector<double>>();
      }
    } else {
      bad.push_back("signal");
    }
  }

  if (root.contains("kappa_grid")) {
    const json& grid = root["kappa_grid"];
    if (grid.is_array()) {
      config.kappa_grid = grid.get<std::vector<double>>();
    } else if (grid.is_object() && grid.contains("from") && grid.contains("to") &&
               grid.contains("step")) {
      const double from = grid["from"].get<double>();
      const double to = grid["to"].get<double>();
      const double step = grid["step"].get<double>();
      if (!(step > 0.0) || to < from) {
        bad.push_back("kappa_grid");
      } else {
        for (int i = 0;; ++i) {
          const double v = from + i * step;
          if (v > to + 1e-12) break;
          config.kappa_grid.push_back(v);
        }
      }
    } else {
      bad.push_back("kappa_grid");
    }
    for (std::size_t i = 1; i < config.kappa_grid.size(); ++i) {
      if (!(config.kappa_grid[i] > config.kappa_grid[i - 1])) {
        bad.push_back("kappa_grid");
        break;
      }
    }
  }

  if (root.contains("penalty")) {
    const std::string name = root["penalty"].get<std::string>();
    if (name == "linear_dim") {
      config.penalty = PenaltyKind::linear_dim;
    } else if (name == "mallows") {
      config.penalty = PenaltyKind::mallows;
    } else if (name == "theorem_style") {
      config.penalty = PenaltyKind::theorem_style;
    } else {
      bad.push_back("penalty");
    }
  }

  if (root.contains("mode")) {
    const std::string name = root["mode"].get<std::string>();
    if (name == "vector") {
      config.mode = RiskMode::vector;
    } else if (name == "functional_empirical") {
      config.mode = RiskMode::functional_empirical;
    } else if (name == "functional_l2") {
      config.mode = RiskMode::functional_l2;
    } else {
      bad.push_back("mode");
    }
  }

  const auto get_double_array = [&](const char* key, std::vector<double>& out) {
    if (!root.contains(key)) return;
    if (!root[key].is_array()) {
      bad.push_back(key);
      return;
    }
    out = root[key].get<std::vector<double>>();
  };
  get_double_array("t_grid", config.t_grid);
  get_double_array("x_grid", config.x_grid);

  if (root.contains("n_grid")) {
    if (!root["n_grid"].is_array()) {
      bad.push_back("n_grid");
    } else {
      config.n_grid = root["n_grid"].get<std::vector<int>>();
      for (int v : config.n_grid) {
        if (v < 2) {
          bad.push_back("n_grid");
          break;
        }
      }
    }
  }
  if (root.contains("dims")) {
    if (!root["dims"].is_array()) {
      bad.push_back("dims");
    } else {
      config.dims = root["dims"].get<std::vector<int>>();
      for (int v : config.dims) {
        if (v < 1) {
          bad.push_back("dims");
          break;
        }
      }
    }
  }

  if (root.contains("talagrand")) {
    const json& t = root["talagrand"];
    if (!t.is_object()) {
      bad.push_back("talagrand");
    } else {
      config.cube_n = t.value("cube_n", config.cube_n);
      if (config.cube_n < 1 || config.cube_n > 14) bad.push_back("talagrand.cube_n");
      if (t.contains("sets")) {
        config.sets.clear();
        for (const json& entry : t["sets"]) {
          TalagrandSet set;
          if (entry.is_string() && entry.get<std::string>() == "singleton") {
            set.kind = TalagrandSet::Kind::singleton;
          } else if (entry.is_object() && entry.contains("hamming_ball")) {
            set.kind = TalagrandSet::Kind::hamming_ball;
            set.radius = entry["hamming_ball"].value("radius", 1);
          } else if (entry.is_object() && entry.contains("random_set")) {
            set.kind = TalagrandSet::Kind::random_set;
            set.size = entry["random_set"].value("size", 16);
          } else {
            bad.push_back("talagrand.sets");
            continue;
          }
          config.sets.push_back(set);
        }
      }
    }
  }

  if (!bad.empty()) {
    throw ConfigValidationError("invalid configuration values", bad);
  }
  return config;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    const auto [line, column] = line_column(text, err.byte > 0 ? err.byte - 1 : 0);
    std::ostringstream message;
    message << origin << ":" << line << ":" << column << ": " << err.what();
    throw ConfigParseError(message.str(), line, column);
  }
  return config_from_json(root);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigNotFoundError("config file not found: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  json root;
  root["scenario"] = scenario_name(config.scenario);
  root["n"] = config.n;
  switch (config.signal) {
    case SignalKind::zero:
    case SignalKind::figure1:
      root["signal"] = signal_kind_name(config.signal);
      break;
    case SignalKind::sobolev:
      root["signal"] = {{"sobolev", {{"alpha", config.sobolev.alpha},
                                     {"R", config.sobolev.R},
                                     {"fill", config.sobolev.fill}}}};
      break;
    case SignalKind::coefficients:
      root["signal"] = {{"coefficients", config.coefficients}};
      break;
  }
  root["sigma"] = config.sigma;
  if (!config.kappa_grid.empty()) root["kappa_grid"] = config.kappa_grid;
  root["kappa"] = config.kappa;
  root["K"] = config.K;
  root["x_weight"] = config.x_weight;
  root["penalty"] = penalty_name(config.penalty);
  root["mode"] = mode_name(config.mode);
  root["replicates"] = config.replicates;
  root["master_seed"] = config.master_seed;
  root["max_dim"] = config.max_dim;
  root["alpha"] = config.alpha_weight;
  root["tol"] = config.tol;
  root["t_grid"] = config.t_grid;
  root["x_grid"] = config.x_grid;
  if (!config.n_grid.empty()) root["n_grid"] = config.n_grid;
  root["dims"] = config.dims;
  root["samples"] = config.samples;
  {
    json sets = json::array();
    for (const TalagrandSet& set : config.sets) {
      switch (set.kind) {
        case TalagrandSet::Kind::singleton:
          sets.push_back("singleton");
          break;
        case TalagrandSet::Kind::hamming_ball:
          sets.push_back({{"hamming_ball", {{"radius", set.radius}}}});
          break;
        case TalagrandSet::Kind::random_set:
          sets.push_back({{"random_set", {{"size", set.size}}}});
          break;
      }
    }
    root["talagrand"] = {{"cube_n", config.cube_n}, {"sets", sets}};
  }
  root["workers"] = config.workers;
  return root;
}

std::string config_hash(const ExperimentConfig& config) {
  const std::uint64_t hash = fnv1a(config_to_json(config).dump());
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i > 0) buffer_ += ',';
    buffer_ += header[i];
  }
  buffer_ += '\n';
}

void CsvWriter::begin_row() {
  row_open_ = true;
  in_row_ = 0;
}

void CsvWriter::add(const std::string& field) {
  if (!row_open_) throw std::logic_error("CsvWriter: add outside a row");
  if (in_row_ > 0) buffer_ += ',';
  buffer_ += field;
  ++in_row_;
}

void CsvWriter::add(double value) { add(format_double(value)); }

void CsvWriter::add(std::int64_t value) { add(std::to_string(value)); }

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw std::logic_error("CsvWriter: column count mismatch");
  buffer_ += '\n';
  row_open_ = false;
}

std::string cutoff_csv(const SweepResult& result) {
  CsvWriter csv({"kappa", "replicate", "D_hat", "crit_min"});
  for (const CutoffRow& row : result.raw) {
    csv.begin_row();
    csv.add(row.kappa);
    csv.add(row.replicate);
    csv.add(row.d_hat);
    csv.add(row.crit_min);
    csv.end_row();
  }
  return csv.str();
}

std::string norm_curve_csv(const NormCurveResult& result) {
  CsvWriter csv({"D", "replicate", "sq_norm"});
  for (const NormCurveRow& row : result.raw) {
    csv.begin_row();
    csv.add(row.dimension);
    csv.add(row.replicate);
    csv.add(row.sq_norm);
    csv.end_row();
  }
  return csv.str();
}

std::string oracle_csv(const OracleRatioResult& result) {
  CsvWriter csv({"replicate", "selected_dim", "selected_risk"});
  for (std::size_t r = 0; r < result.replicate_risks.size(); ++r) {
    csv.begin_row();
    csv.add(static_cast<int>(r));
    csv.add(result.replicate_dims[r]);
    csv.add(result.replicate_risks[r]);
    csv.end_row();
  }
  return csv.str();
}

std::string lower_bound_csv(const LowerBoundResult& result) {
  CsvWriter csv({"replicate", "D_hat", "risk_empirical", "risk_l2"});
  for (std::size_t r = 0; r < result.replicate_dims.size(); ++r) {
    csv.begin_row();
    csv.add(static_cast<int>(r));
    csv.add(result.replicate_dims[r]);
    csv.add(result.replicate_risks_empirical[r]);
    csv.add(result.replicate_risks_l2[r]);
    csv.end_row();
  }
  return csv.str();
}

std::string rate_csv(const RateStudyResult& result) {
  CsvWriter csv({"n", "replicate", "l2_risk"});
  for (const RateRow& row : result.raw) {
    csv.begin_row();
    csv.add(row.n);
    csv.add(row.replicate);
    csv.add(row.l2_risk);
    csv.end_row();
  }
  return csv.str();
}

std::string concentration_csv(const ConcentrationSuiteResult& result) {
  CsvWriter csv({"statistic", "t_or_x", "empirical", "bound", "margin", "pass"});
  for (const TailRow& row : result.combined.rows) {
    csv.begin_row();
    csv.add(row.statistic);
    csv.add(row.t_or_x);
    csv.add(row.empirical);
    csv.add(row.bound);
    csv.add(row.margin);
    csv.add(row.pass);
    csv.end_row();
  }
  return csv.str();
}

std::string talagrand_csv(const CubeInequalityReport& report) {
  CsvWriter csv({"t", "prob_A", "prob_tail", "product", "bound", "pass", "prob_A_exact",
                 "prob_tail_exact"});
  const double cube = static_cast<double>(report.cube_size);
  for (const CubeInequalityRow& row : report.rows) {
    csv.begin_row();
    csv.add(row.t);
    csv.add(static_cast<double>(report.count_A) / cube);
    csv.add(static_cast<double>(row.tail_count) / cube);
    csv.add(row.product);
    csv.add(row.bound);
    csv.add(row.pass);
    csv.add(format_rational(report.count_A, report.cube_size));
    csv.add(format_rational(row.tail_count, report.cube_size));
    csv.end_row();
  }
  return csv.str();
}

namespace {

json summary_base(const ExperimentConfig& config) {
  json root;
  root["scenario"] = scenario_name(config.scenario);
  root["config_hash"] = config_hash(config);
  root["master_seed"] = config.master_seed;
  return root;
}

}  // namespace

nlohmann::json cutoff_summary(const ExperimentConfig& config, const SweepResult& result) {
  json root = summary_base(config);
  json stats = json::array();
  for (const KappaStats& s : result.stats) {
    stats.push_back({{"kappa", s.kappa},
                     {"mean", s.mean},
                     {"median", s.median},
                     {"q25", s.q25},
                     {"q75", s.q75},
                     {"frac_half", s.frac_half}});
  }
  root["per_kappa"] = stats;
  root["dim_threshold"] = result.dim_threshold;
  if (std::isnan(result.jump_location)) {
    root["jump_location"] = nullptr;
  } else {
    root["jump_location"] = result.jump_location;
  }
  root["median_monotone"] = result.median_monotone;
  root["pass"] = result.median_monotone;
  return root;
}

nlohmann::json norm_curve_summary(const ExperimentConfig& config, const NormCurveResult& result) {
  json root = summary_base(config);
  root["window"] = {result.window_lo, result.window_hi};
  root["mean_kappa_hat"] = result.mean_kappa_hat;
  root["sd_kappa_hat"] = result.sd_kappa_hat;
  root["kappa_hats"] = result.kappa_hats;
  root["mean_curve_fit"] = {{"slope", result.mean_curve_fit.slope},
                            {"slope_stderr", result.mean_curve_fit.slope_stderr},
                            {"intercept", result.mean_curve_fit.intercept},
                            {"kappa_hat", result.mean_curve_fit.kappa_hat},
                            {"kappa_stderr", result.mean_curve_fit.kappa_stderr}};
  root["pass"] = true;
  return root;
}

nlohmann::json oracle_summary(const ExperimentConfig& config, const OracleRatioResult& result) {
  json root = summary_base(config);
  root["selected_risk"] = result.selected_risk;
  root["oracle_risk"] = result.oracle_risk;
  root["oracle_dim"] = result.oracle_dim;
  root["ratio"] = result.ratio;
  root["pass"] = true;
  return root;
}

nlohmann::json lower_bound_summary(const ExperimentConfig& config, const LowerBoundResult& result) {
  json root = summary_base(config);
  root["mean_risk_empirical"] = result.mean_risk_empirical;
  root["mean_risk_l2"] = result.mean_risk_l2;
  root["stderr_empirical"] = result.stderr_empirical;
  root["stderr_l2"] = result.stderr_l2;
  root["bound"] = result.bound;
  root["frac_half"] = result.frac_half;
  root["pass"] = result.pass_risk;
  return root;
}

nlohmann::json rate_summary(const ExperimentConfig& config, const RateStudyResult& result) {
  json root = summary_base(config);
  root["mean_risks"] = result.mean_risks;
  root["fitted_slope"] = result.fitted_slope;
  root["slope_stderr"] = result.slope_stderr;
  root["residuals"] = result.residuals;
  root["pass"] = true;
  return root;
}

nlohmann::json concentration_summary(const ExperimentConfig& config,
                                     const ConcentrationSuiteResult& result) {
  json root = summary_base(config);
  json rows = json::array();
  for (const TailRow& row : result.combined.rows) {
    rows.push_back({{"statistic", row.statistic},
                    {"t_or_x", row.t_or_x},
                    {"empirical", row.empirical},
                    {"bound", row.bound},
                    {"margin", row.margin},
                    {"pass", row.pass}});
  }
  root["rows"] = rows;
  root["n_samples"] = result.combined.n_samples;
  root["pass"] = result.all_pass;
  return root;
}

nlohmann::json talagrand_summary(const ExperimentConfig& config,
                                 const TalagrandSuiteResult& result) {
  json root = summary_base(config);
  json entries = json::array();
  for (const auto& entry : result.entries) {
    json rows = json::array();
    double max_ratio = 0.0;
    for (const CubeInequalityRow& row : entry.report.rows) {
      rows.push_back({{"t", row.t},
                      {"prob_A_exact", format_rational(entry.report.count_A, entry.report.cube_size)},
                      {"prob_tail_exact", format_rational(row.tail_count, entry.report.cube_size)},
                      {"product", row.product},
                      {"bound", row.bound},
                      {"pass", row.pass}});
      max_ratio = std::max(max_ratio, row.product / row.bound);
    }
    json mean_rows = json::array();
    for (const MeanConcentrationRow& row : entry.report.mean_rows) {
      mean_rows.push_back({{"t", row.t},
                           {"upper_prob", row.upper_prob},
                           {"lower_prob", row.lower_prob},
                           {"bound", row.bound},
                           {"pass", row.pass}});
    }
    entries.push_back({{"set", entry.set_name},
                       {"count_A", entry.report.count_A},
                       {"cube_size", entry.report.cube_size},
                       {"mean_distance", entry.report.mean_distance},
                       {"max_product_over_bound", max_ratio},
                       {"rows", rows},
                       {"mean_concentration", mean_rows}});
  }
  root["sets"] = entries;
  root["pass"] = result.all_pass;
  return root;
}

nlohmann::json manifest_to_json(const RunManifest& manifest) {
  json root;
  root["tool"] = manifest.tool;
  root["version"] = manifest.version;
  root["scenario"] = manifest.scenario;
  root["config_hash"] = manifest.config_digest;
  root["master_seed"] = manifest.master_seed;
  root["started_at"] = manifest.started_at;
  root["finished_at"] = manifest.finished_at;
  root["outputs"] = manifest.outputs;
  root["config"] = manifest.config_echo;
  return root;
}

std::string tool_version() { return "0.1.0"; }

std::string iso8601_utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buffer;
}

}  // namespace radsel
