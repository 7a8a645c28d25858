#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "radsel/experiments.hpp"

namespace radsel {

// Full round-trip decimal rendering (17 significant digits).
std::string format_double(double v);

// Exact rational rendering, e.g. "11/1024". Kept unreduced over the dyadic
// denominator.
std::string format_rational(std::int64_t numerator, std::int64_t denominator);

class ConfigNotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigParseError : public std::runtime_error {
 public:
  ConfigParseError(const std::string& message, int line, int column)
      : std::runtime_error(message), line(line), column(column) {}

  int line = 0;
  int column = 0;
};

class ConfigValidationError : public std::runtime_error {
 public:
  ConfigValidationError(const std::string& message, std::vector<std::string> keys)
      : std::runtime_error(message), keys(std::move(keys)) {}

  std::vector<std::string> keys;
};

std::string scenario_name(Scenario scenario);
Scenario scenario_from_name(const std::string& name);

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<inline>");

nlohmann::json config_to_json(const ExperimentConfig& config);

// Stable digest of the canonicalized (defaults-resolved) config.
std::string config_hash(const ExperimentConfig& config);

// Simple CSV assembly: header row, LF endings, doubles at full precision.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void begin_row();
  void add(const std::string& field);
  void add(double value);
  void add(std::int64_t value);
  void add(int value) { add(static_cast<std::int64_t>(value)); }
  void add(bool value) { add(static_cast<std::int64_t>(value ? 1 : 0)); }
  void end_row();

  const std::string& str() const { return buffer_; }

 private:
  std::string buffer_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
  bool row_open_ = false;
};

// Scenario CSV payloads (deterministic given the result structs).
std::string cutoff_csv(const SweepResult& result);
std::string norm_curve_csv(const NormCurveResult& result);
std::string oracle_csv(const OracleRatioResult& result);
std::string lower_bound_csv(const LowerBoundResult& result);
std::string rate_csv(const RateStudyResult& result);
std::string concentration_csv(const ConcentrationSuiteResult& result);
std::string talagrand_csv(const CubeInequalityReport& report);

// Scenario JSON summaries (also deterministic; timestamps live in the manifest).
nlohmann::json cutoff_summary(const ExperimentConfig& config, const SweepResult& result);
nlohmann::json norm_curve_summary(const ExperimentConfig& config, const NormCurveResult& result);
nlohmann::json oracle_summary(const ExperimentConfig& config, const OracleRatioResult& result);
nlohmann::json lower_bound_summary(const ExperimentConfig& config, const LowerBoundResult& result);
nlohmann::json rate_summary(const ExperimentConfig& config, const RateStudyResult& result);
nlohmann::json concentration_summary(const ExperimentConfig& config,
                                     const ConcentrationSuiteResult& result);
nlohmann::json talagrand_summary(const ExperimentConfig& config,
                                 const TalagrandSuiteResult& result);

struct RunManifest {
  std::string tool = "radsel";
  std::string version;
  std::string scenario;
  std::string config_digest;
  std::uint64_t master_seed = 0;
  std::string started_at;
  std::string finished_at;
  std::vector<std::string> outputs;
  nlohmann::json config_echo;
};

nlohmann::json manifest_to_json(const RunManifest& manifest);

std::string tool_version();
std::string iso8601_utc_now();

}  // namespace radsel
