#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radsel/concentration.hpp"
#include "radsel/functional.hpp"
#include "radsel/selection.hpp"
#include "radsel/talagrand.hpp"

namespace radsel {

enum class Scenario {
  cutoff_sweep,
  norm_curve,
  oracle_ratio,
  lower_bound,
  rate_study,
  concentration_suite,
  talagrand_suite,
};

enum class SignalKind { zero, figure1, sobolev, coefficients };

enum class RiskMode { vector, functional_empirical, functional_l2 };

struct SobolevParams {
  int alpha = 1;
  double R = 1.0;
  double fill = 0.9;

  friend bool operator==(const SobolevParams&, const SobolevParams&) = default;
};

struct TalagrandSet {
  enum class Kind { singleton, hamming_ball, random_set };
  Kind kind = Kind::singleton;
  int radius = 1;  // hamming_ball
  int size = 16;   // random_set

  std::string name() const;

  friend bool operator==(const TalagrandSet&, const TalagrandSet&) = default;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::cutoff_sweep;
  int n = 100;
  SignalKind signal = SignalKind::figure1;
  SobolevParams sobolev;
  std::vector<double> coefficients;  // signal = coefficients
  double sigma = 1.0;
  std::vector<double> kappa_grid;    // cutoff_sweep; defaulted in parsing
  double kappa = 2.0;                // oracle_ratio / lower_bound, linear penalties
  double K = 1.5;                    // theorem_style constant
  double x_weight = 0.02;            // theorem_style weights x_D = x_weight * D
  PenaltyKind penalty = PenaltyKind::mallows;
  RiskMode mode = RiskMode::functional_empirical;
  int replicates = 200;
  std::uint64_t master_seed = 1;
  int max_dim = 0;                   // 0 means n-1
  double alpha_weight = 1.0;         // nested-collection weights x_D = alpha * D
  double tol = 1e-8;
  std::vector<double> t_grid = {0.5, 1.0, 1.5, 2.0, 3.0};
  std::vector<double> x_grid = {0.5, 1.0, 2.0};
  std::vector<int> n_grid;           // rate_study; defaulted in parsing
  std::vector<int> dims = {5, 20, 50};  // concentration suite model sizes
  std::int64_t samples = 100000;        // concentration suite draw count
  int cube_n = 10;
  std::vector<TalagrandSet> sets = {
      TalagrandSet{TalagrandSet::Kind::singleton, 1, 16},
      TalagrandSet{TalagrandSet::Kind::hamming_ball, 1, 16},
      TalagrandSet{TalagrandSet::Kind::random_set, 1, 16},
  };
  int workers = 0;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Signal realisation: coefficient sequence of the target (1-based Fourier
// indexing packed into a 0-based vector). Sobolev targets draw from `seed`.
Eigen::VectorXd realize_signal(const ExperimentConfig& config, int J, Seed seed);

// Largest index (as a dimension) carrying a nonzero coefficient; 3 for the
// built-in three-coefficient target, 0 for pure noise.
int true_dimension(const ExperimentConfig& config, int J);

struct CutoffRow {
  double kappa = 0.0;
  int replicate = 0;
  int d_hat = 0;
  double crit_min = 0.0;
};

struct KappaStats {
  double kappa = 0.0;
  double mean = 0.0;
  double median = 0.0;
  double q25 = 0.0;
  double q75 = 0.0;
  double frac_half = 0.0;  // fraction of replicates with D >= N/2
};

struct SweepResult {
  std::vector<CutoffRow> raw;  // kappa-major, replicate-minor
  std::vector<KappaStats> stats;
  double jump_location = 0.0;  // NaN when the median never drops
  int dim_threshold = 0;
  bool median_monotone = true;
};

SweepResult cutoff_sweep(const ExperimentConfig& config);

struct NormCurveRow {
  int dimension = 0;
  int replicate = 0;
  double sq_norm = 0.0;
};

struct NormCurveResult {
  std::vector<NormCurveRow> raw;  // dimension-major
  std::vector<double> mean_curve;  // indexed by dimension-1
  std::vector<double> kappa_hats;  // one OLS fit per replicate
  double mean_kappa_hat = 0.0;
  double sd_kappa_hat = 0.0;
  SlopeFit mean_curve_fit;
  int window_lo = 0;
  int window_hi = 0;
};

NormCurveResult norm_curve(const ExperimentConfig& config);

struct OracleRatioResult {
  double selected_risk = 0.0;
  double oracle_risk = 0.0;
  double ratio = 0.0;
  int oracle_dim = 0;
  std::vector<double> replicate_risks;
  std::vector<int> replicate_dims;
};

OracleRatioResult oracle_ratio(const ExperimentConfig& config);

struct LowerBoundResult {
  double mean_risk_empirical = 0.0;
  double mean_risk_l2 = 0.0;
  double stderr_empirical = 0.0;
  double stderr_l2 = 0.0;
  double bound = 0.0;
  double frac_half = 0.0;
  bool pass_risk = false;
  std::vector<int> replicate_dims;
  std::vector<double> replicate_risks_empirical;
  std::vector<double> replicate_risks_l2;
};

LowerBoundResult lower_bound_check(const ExperimentConfig& config);

struct RateRow {
  int n = 0;
  int replicate = 0;
  double l2_risk = 0.0;
};

struct RateStudyResult {
  std::vector<RateRow> raw;  // n-major
  std::vector<double> mean_risks;  // aligned with the n grid
  double fitted_slope = 0.0;
  double slope_stderr = 0.0;
  std::vector<double> residuals;
};

RateStudyResult rate_study(const ExperimentConfig& config);

struct ConcentrationSuiteResult {
  TailReport combined;  // all rows, grouped by statistic
  bool all_pass = false;
};

ConcentrationSuiteResult concentration_suite(const ExperimentConfig& config);

struct TalagrandSuiteResult {
  struct Entry {
    std::string set_name;
    CubeInequalityReport report;
  };
  std::vector<Entry> entries;
  bool all_pass = true;
};

TalagrandSuiteResult talagrand_suite(const ExperimentConfig& config);

}  // namespace radsel
