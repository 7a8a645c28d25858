#include "radsel/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "radsel/parallel.hpp"

namespace radsel {

namespace {

// Stream ids under the master seed; replicates are children of these.
constexpr std::uint64_t kNoiseStream = 0;
constexpr std::uint64_t kSignalStream = 1;
constexpr std::uint64_t kBasisStream = 2;
constexpr std::uint64_t kSetStream = 3;

double quantile_sorted(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct MeanStderr {
  double mean = 0.0;
  double stderr_ = 0.0;
};

MeanStderr mean_stderr(const std::vector<double>& values) {
  MeanStderr out;
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  if (values.size() > 1) out.stderr_ = std::sqrt(ss / (n - 1) / n);
  return out;
}

int resolve_max_dim(const ExperimentConfig& config, int limit) {
  const int max_dim = config.max_dim > 0 ? std::min(config.max_dim, limit) : limit;
  if (max_dim < 1) throw std::invalid_argument("experiment needs at least one model");
  return max_dim;
}

// Weights double as the x_m of theorem-style penalties.
double collection_alpha(const ExperimentConfig& config) {
  return config.penalty == PenaltyKind::theorem_style ? config.x_weight : config.alpha_weight;
}

PenaltyRule make_penalty(const ExperimentConfig& config, double kappa, PenaltyScale scale) {
  switch (config.penalty) {
    case PenaltyKind::linear_dim:
      return PenaltyRule::linear_dim(kappa, config.sigma * config.sigma, scale);
    case PenaltyKind::mallows:
      return PenaltyRule::mallows(config.sigma * config.sigma, scale);
    case PenaltyKind::theorem_style:
      return PenaltyRule::theorem_style(config.K, config.sigma * config.sigma, scale);
  }
  throw std::logic_error("unreachable penalty kind");
}

std::vector<double> default_kappa_grid() {
  std::vector<double> grid;
  for (int i = 2; i <= 20; ++i) grid.push_back(static_cast<double>(i) / 10.0);
  return grid;
}

std::vector<int> default_n_grid() { return {128, 256, 512, 1024, 2048, 4096}; }

}  // namespace

std::string TalagrandSet::name() const {
  switch (kind) {
    case Kind::singleton:
      return "singleton";
    case Kind::hamming_ball:
      return "ball_r" + std::to_string(radius);
    case Kind::random_set:
      return "random_" + std::to_string(size);
  }
  return "unknown";
}

Eigen::VectorXd realize_signal(const ExperimentConfig& config, int J, Seed seed) {
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(J);
  switch (config.signal) {
    case SignalKind::zero:
      break;
    case SignalKind::figure1: {
      if (J < 3) throw std::invalid_argument("three-coefficient target needs J >= 3");
      theta[0] = 2.0;
      theta[1] = 0.7;
      theta[2] = 0.5;
      break;
    }
    case SignalKind::sobolev: {
      SobolevSpec spec{config.sobolev.alpha, config.sobolev.R};
      theta = sobolev_signal(spec, J, seed, config.sobolev.fill);
      break;
    }
    case SignalKind::coefficients: {
      if (static_cast<int>(config.coefficients.size()) > J) {
        throw std::invalid_argument("explicit coefficients exceed the model range");
      }
      for (std::size_t i = 0; i < config.coefficients.size(); ++i) {
        theta[static_cast<Eigen::Index>(i)] = config.coefficients[i];
      }
      break;
    }
  }
  return theta;
}

int true_dimension(const ExperimentConfig& config, int J) {
  switch (config.signal) {
    case SignalKind::zero:
      return 0;
    case SignalKind::figure1:
      return 3;
    case SignalKind::sobolev:
      return J;
    case SignalKind::coefficients: {
      int d = 0;
      for (std::size_t i = 0; i < config.coefficients.size(); ++i) {
        if (config.coefficients[i] != 0.0) d = static_cast<int>(i) + 1;
      }
      return d;
    }
  }
  return 0;
}

SweepResult cutoff_sweep(const ExperimentConfig& config) {
  if (config.scenario != Scenario::cutoff_sweep) {
    throw std::invalid_argument("cutoff_sweep: config scenario mismatch");
  }
  const std::vector<double> grid = config.kappa_grid.empty() ? default_kappa_grid() : config.kappa_grid;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("kappa_grid must be strictly increasing");
  }
  const int n = config.n;
  const int max_dim = resolve_max_dim(config, n - 1);
  const OrthonormalBasis design = fourier_design_matrix(n, max_dim);
  const ModelCollection collection = build_nested(design, max_dim, collection_alpha(config));
  const Seed master{config.master_seed};
  const Seed noise_stream = derive_seed(master, kNoiseStream);
  const Eigen::VectorXd theta =
      realize_signal(config, max_dim, derive_seed(derive_seed(master, kSignalStream), 0));
  const Eigen::VectorXd f_grid = design.columns() * theta;

  const int reps = config.replicates;
  const std::size_t cells = grid.size() * static_cast<std::size_t>(reps);
  std::vector<int> d_hat(cells, 0);
  std::vector<double> crit_min(cells, 0.0);

  run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
    const SignVector eps = rademacher_vector(derive_seed(noise_stream, static_cast<std::uint64_t>(r)), n);
    const Eigen::VectorXd y = f_grid + config.sigma * eps;
    for (std::size_t ik = 0; ik < grid.size(); ++ik) {
      const PenaltyRule pen =
          PenaltyRule::linear_dim(grid[ik], config.sigma * config.sigma, PenaltyScale::one_over_n(n));
      const SelectionOutcome outcome = select(y, design, collection, pen);
      const std::size_t cell = ik * static_cast<std::size_t>(reps) + static_cast<std::size_t>(r);
      d_hat[cell] = outcome.chosen_dim;
      crit_min[cell] = *std::min_element(outcome.criterion_trace.begin(), outcome.criterion_trace.end());
    }
  });

  SweepResult result;
  result.dim_threshold = std::max(10, 2 * true_dimension(config, max_dim));
  result.raw.reserve(cells);
  result.jump_location = std::numeric_limits<double>::quiet_NaN();
  double previous_median = std::numeric_limits<double>::infinity();
  for (std::size_t ik = 0; ik < grid.size(); ++ik) {
    std::vector<double> values(static_cast<std::size_t>(reps));
    std::int64_t large = 0;
    for (int r = 0; r < reps; ++r) {
      const std::size_t cell = ik * static_cast<std::size_t>(reps) + static_cast<std::size_t>(r);
      result.raw.push_back(CutoffRow{grid[ik], r, d_hat[cell], crit_min[cell]});
      values[static_cast<std::size_t>(r)] = static_cast<double>(d_hat[cell]);
      if (d_hat[cell] >= static_cast<double>(max_dim) / 2.0) ++large;
    }
    std::sort(values.begin(), values.end());
    KappaStats stats;
    stats.kappa = grid[ik];
    stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / reps;
    stats.median = quantile_sorted(values, 0.5);
    stats.q25 = quantile_sorted(values, 0.25);
    stats.q75 = quantile_sorted(values, 0.75);
    stats.frac_half = static_cast<double>(large) / reps;
    if (stats.median > previous_median) result.median_monotone = false;
    previous_median = stats.median;
    if (std::isnan(result.jump_location) && stats.median <= result.dim_threshold) {
      result.jump_location = grid[ik];
    }
    result.stats.push_back(stats);
  }
  return result;
}

NormCurveResult norm_curve(const ExperimentConfig& config) {
  if (config.scenario != Scenario::norm_curve) {
    throw std::invalid_argument("norm_curve: config scenario mismatch");
  }
  const int n = config.n;
  const int max_dim = resolve_max_dim(config, n - 1);
  const OrthonormalBasis design = fourier_design_matrix(n, max_dim);
  const ModelCollection collection = build_nested(design, max_dim, collection_alpha(config));
  const Seed master{config.master_seed};
  const Seed noise_stream = derive_seed(master, kNoiseStream);
  const Eigen::VectorXd theta =
      realize_signal(config, max_dim, derive_seed(derive_seed(master, kSignalStream), 0));
  const Eigen::VectorXd f_grid = design.columns() * theta;
  const int reps = config.replicates;

  NormCurveResult result;
  result.window_lo = std::max(2, true_dimension(config, max_dim) + 2);
  result.window_hi = max_dim;

  // squared-norm curves per replicate, slot per (replicate, dimension)
  std::vector<double> curves(static_cast<std::size_t>(reps) * static_cast<std::size_t>(max_dim));
  run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
    const SignVector eps = rademacher_vector(derive_seed(noise_stream, static_cast<std::uint64_t>(r)), n);
    const Eigen::VectorXd y = f_grid + config.sigma * eps;
    const Eigen::VectorXd coef = design.columns().transpose() * y / static_cast<double>(n);
    double running = 0.0;
    for (int d = 1; d <= max_dim; ++d) {
      running += coef[d - 1] * coef[d - 1];
      curves[static_cast<std::size_t>(r) * max_dim + static_cast<std::size_t>(d - 1)] = running;
    }
  });

  const double sigma2 = config.sigma > 0.0 ? config.sigma * config.sigma : 1.0;
  result.mean_curve.assign(static_cast<std::size_t>(max_dim), 0.0);
  for (int d = 1; d <= max_dim; ++d) {
    for (int r = 0; r < reps; ++r) {
      const double v = curves[static_cast<std::size_t>(r) * max_dim + static_cast<std::size_t>(d - 1)];
      result.raw.push_back(NormCurveRow{d, r, v});
      result.mean_curve[static_cast<std::size_t>(d - 1)] += v;
    }
    result.mean_curve[static_cast<std::size_t>(d - 1)] /= reps;
  }

  for (int r = 0; r < reps; ++r) {
    std::map<int, double> curve;
    for (int d = 1; d <= max_dim; ++d) {
      curve[d] = curves[static_cast<std::size_t>(r) * max_dim + static_cast<std::size_t>(d - 1)];
    }
    const SlopeFit fit = slope_fit(curve, result.window_lo, result.window_hi, sigma2, n);
    result.kappa_hats.push_back(fit.kappa_hat);
  }
  const MeanStderr k = mean_stderr(result.kappa_hats);
  result.mean_kappa_hat = k.mean;
  result.sd_kappa_hat = k.stderr_ * std::sqrt(static_cast<double>(reps));

  std::map<int, double> mean_map;
  for (int d = 1; d <= max_dim; ++d) mean_map[d] = result.mean_curve[static_cast<std::size_t>(d - 1)];
  result.mean_curve_fit = slope_fit(mean_map, result.window_lo, result.window_hi, sigma2, n);
  return result;
}

namespace {

// Oracle over the nested family in coefficient space: squared bias tail plus
// sigma^2 D / n; valid because the target lives in the model span.
std::pair<double, int> functional_oracle(const Eigen::VectorXd& theta, int max_dim, double sigma2,
                                         int n) {
  std::vector<double> tail(static_cast<std::size_t>(max_dim) + 1, 0.0);
  for (int d = max_dim; d >= 1; --d) {
    const double extra = d <= theta.size() ? theta[d - 1] * theta[d - 1] : 0.0;
    tail[static_cast<std::size_t>(d - 1)] = tail[static_cast<std::size_t>(d)] + extra;
  }
  double best = std::numeric_limits<double>::infinity();
  int best_dim = 1;
  for (int d = 1; d <= max_dim; ++d) {
    const double risk = tail[static_cast<std::size_t>(d)] + sigma2 * d / n;
    if (risk < best) {
      best = risk;
      best_dim = d;
    }
  }
  return {best, best_dim};
}

}  // namespace

OracleRatioResult oracle_ratio(const ExperimentConfig& config) {
  if (config.scenario != Scenario::oracle_ratio) {
    throw std::invalid_argument("oracle_ratio: config scenario mismatch");
  }
  if (config.penalty == PenaltyKind::linear_dim && config.kappa <= 1.0) {
    throw std::invalid_argument("oracle_ratio needs kappa > 1 (use lower_bound below the cut-off)");
  }
  const Seed master{config.master_seed};
  const Seed noise_stream = derive_seed(master, kNoiseStream);
  const Seed signal_seed = derive_seed(derive_seed(master, kSignalStream), 0);
  const int reps = config.replicates;
  const double sigma2 = config.sigma * config.sigma;

  OracleRatioResult result;
  result.replicate_risks.resize(static_cast<std::size_t>(reps));
  result.replicate_dims.resize(static_cast<std::size_t>(reps));

  if (config.mode == RiskMode::vector) {
    const int n = config.n;
    const int max_dim = resolve_max_dim(config, n);
    const OrthonormalBasis basis = OrthonormalBasis::standard(n);
    const ModelCollection collection = build_nested(basis, max_dim, collection_alpha(config));
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd theta = realize_signal(config, max_dim, signal_seed);
    f.head(theta.size()) = theta;

    double oracle = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < collection.size(); ++i) {
      const double risk = exact_risk(f, basis, collection.model(i), config.sigma);
      if (risk < oracle) {
        oracle = risk;
        result.oracle_dim = collection.model(i).dimension();
      }
    }
    result.oracle_risk = oracle;

    const PenaltyRule pen = make_penalty(config, config.kappa, PenaltyScale::unit());
    run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
      const SignVector eps = rademacher_vector(derive_seed(noise_stream, static_cast<std::uint64_t>(r)), n);
      const Eigen::VectorXd y = f + config.sigma * eps;
      const SelectionOutcome outcome = select(y, basis, collection, pen);
      const Projection proj = project(y, basis, outcome.chosen);
      result.replicate_risks[static_cast<std::size_t>(r)] = (proj.fitted - f).squaredNorm();
      result.replicate_dims[static_cast<std::size_t>(r)] = outcome.chosen_dim;
    });
  } else {
    const int n = config.n;
    const int max_dim = resolve_max_dim(config, n - 1);
    const OrthonormalBasis design = fourier_design_matrix(n, max_dim);
    const ModelCollection collection = build_nested(design, max_dim, collection_alpha(config));
    const Eigen::VectorXd theta = realize_signal(config, max_dim, signal_seed);
    const Eigen::VectorXd f_grid = design.columns() * theta;

    const auto [oracle, oracle_dim] = functional_oracle(theta, max_dim, sigma2, n);
    result.oracle_risk = oracle;
    result.oracle_dim = oracle_dim;

    // On the model span the design norm and the L2 norm agree, so both
    // functional modes reduce to the coefficient-space sum of squares.
    const PenaltyRule pen = make_penalty(config, config.kappa, PenaltyScale::one_over_n(n));
    run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
      const SignVector eps = rademacher_vector(derive_seed(noise_stream, static_cast<std::uint64_t>(r)), n);
      const Eigen::VectorXd y = f_grid + config.sigma * eps;
      const SelectionOutcome outcome = select(y, design, collection, pen);
      double risk = theta.squaredNorm();
      for (int k = 0; k < outcome.chosen_dim; ++k) {
        const int j = outcome.chosen.indices[static_cast<std::size_t>(k)];
        const double diff = outcome.estimator_coefficients[k] - theta[j];
        risk += diff * diff - theta[j] * theta[j];
      }
      result.replicate_risks[static_cast<std::size_t>(r)] = risk;
      result.replicate_dims[static_cast<std::size_t>(r)] = outcome.chosen_dim;
    });
  }

  result.selected_risk = std::accumulate(result.replicate_risks.begin(),
                                         result.replicate_risks.end(), 0.0) / reps;
  result.ratio = result.selected_risk / result.oracle_risk;
  return result;
}

LowerBoundResult lower_bound_check(const ExperimentConfig& config) {
  if (config.scenario != Scenario::lower_bound) {
    throw std::invalid_argument("lower_bound_check: config scenario mismatch");
  }
  if (config.kappa >= 1.0) {
    throw std::invalid_argument("lower_bound_check needs kappa < 1");
  }
  const Seed master{config.master_seed};
  const Seed noise_stream = derive_seed(master, kNoiseStream);
  const Seed signal_seed = derive_seed(derive_seed(master, kSignalStream), 0);
  const int reps = config.replicates;
  const double sigma2 = config.sigma * config.sigma;

  LowerBoundResult result;
  result.replicate_dims.resize(static_cast<std::size_t>(reps));
  result.replicate_risks_empirical.resize(static_cast<std::size_t>(reps));
  result.replicate_risks_l2.resize(static_cast<std::size_t>(reps));

  if (config.mode == RiskMode::vector) {
    const int n = config.n;
    const int max_dim = resolve_max_dim(config, n);
    const OrthonormalBasis basis = OrthonormalBasis::standard(n);
    const ModelCollection collection = build_nested(basis, max_dim, collection_alpha(config));
    Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd theta = realize_signal(config, max_dim, signal_seed);
    f.head(theta.size()) = theta;
    const Projection largest = project(f, basis, collection.model(collection.size() - 1));
    result.bound = (f - largest.fitted).squaredNorm() + sigma2 * max_dim / 4.0;

    const PenaltyRule pen =
        PenaltyRule::linear_dim(config.kappa, sigma2, PenaltyScale::unit());
    run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
      const SignVector eps = rademacher_vector(derive_seed(noise_stream, static_cast<std::uint64_t>(r)), n);
      const Eigen::VectorXd y = f + config.sigma * eps;
      const SelectionOutcome outcome = select(y, basis, collection, pen);
      const Projection proj = project(y, basis, outcome.chosen);
      const double risk = (proj.fitted - f).squaredNorm();
      result.replicate_dims[static_cast<std::size_t>(r)] = outcome.chosen_dim;
      result.replicate_risks_empirical[static_cast<std::size_t>(r)] = risk;
      result.replicate_risks_l2[static_cast<std::size_t>(r)] = risk;
    });
  } else {
    const int n = config.n;
    const int max_dim = resolve_max_dim(config, n - 1);
    const OrthonormalBasis design = fourier_design_matrix(n, max_dim);
    const ModelCollection collection = build_nested(design, max_dim, collection_alpha(config));
    const Eigen::VectorXd theta = realize_signal(config, max_dim, signal_seed);
    const Eigen::VectorXd f_grid = design.columns() * theta;
    result.bound = sigma2 / 4.0;

    const PenaltyRule pen =
        PenaltyRule::linear_dim(config.kappa, sigma2, PenaltyScale::one_over_n(n));
    run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
      const SignVector eps = rademacher_vector(derive_seed(noise_stream, static_cast<std::uint64_t>(r)), n);
      const Eigen::VectorXd y = f_grid + config.sigma * eps;
      const SelectionOutcome outcome = select(y, design, collection, pen);
      double risk = theta.squaredNorm();
      for (int k = 0; k < outcome.chosen_dim; ++k) {
        const int j = outcome.chosen.indices[static_cast<std::size_t>(k)];
        const double diff = outcome.estimator_coefficients[k] - theta[j];
        risk += diff * diff - theta[j] * theta[j];
      }
      result.replicate_dims[static_cast<std::size_t>(r)] = outcome.chosen_dim;
      // target and estimator live in the model span: the two norms agree
      result.replicate_risks_empirical[static_cast<std::size_t>(r)] = risk;
      result.replicate_risks_l2[static_cast<std::size_t>(r)] = risk;
    });
  }

  const int max_dim = config.mode == RiskMode::vector ? resolve_max_dim(config, config.n)
                                                      : resolve_max_dim(config, config.n - 1);
  std::int64_t large = 0;
  for (int d : result.replicate_dims) {
    if (d >= static_cast<double>(max_dim) / 2.0) ++large;
  }
  result.frac_half = static_cast<double>(large) / reps;

  const MeanStderr emp = mean_stderr(result.replicate_risks_empirical);
  const MeanStderr l2 = mean_stderr(result.replicate_risks_l2);
  result.mean_risk_empirical = emp.mean;
  result.stderr_empirical = emp.stderr_;
  result.mean_risk_l2 = l2.mean;
  result.stderr_l2 = l2.stderr_;
  result.pass_risk = emp.mean >= result.bound - 3.0 * emp.stderr_ &&
                     l2.mean >= result.bound - 3.0 * l2.stderr_;
  return result;
}

RateStudyResult rate_study(const ExperimentConfig& config) {
  if (config.scenario != Scenario::rate_study) {
    throw std::invalid_argument("rate_study: config scenario mismatch");
  }
  const std::vector<int> n_grid = config.n_grid.empty() ? default_n_grid() : config.n_grid;
  const Seed master{config.master_seed};
  const Seed noise_stream = derive_seed(master, kNoiseStream);
  const Seed signal_stream = derive_seed(master, kSignalStream);
  const int reps = config.replicates;

  RateStudyResult result;
  result.mean_risks.reserve(n_grid.size());

  for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
    const int n = n_grid[ni];
    const int max_dim = n - 1;
    const OrthonormalBasis design = fourier_design_matrix(n, max_dim);
    const ModelCollection collection = build_nested(design, max_dim, config.x_weight);
    const PenaltyRule pen =
        PenaltyRule::theorem_style(config.K, config.sigma * config.sigma, PenaltyScale::one_over_n(n));

    std::vector<double> risks(static_cast<std::size_t>(reps));
    run_indexed(reps, config.workers, [&](std::ptrdiff_t r) {
      const std::uint64_t idx = static_cast<std::uint64_t>(ni) * static_cast<std::uint64_t>(reps) +
                                static_cast<std::uint64_t>(r);
      const Eigen::VectorXd theta = realize_signal(config, max_dim, derive_seed(signal_stream, idx));
      const Eigen::VectorXd f_grid = design.columns() * theta;
      const SignVector eps = rademacher_vector(derive_seed(noise_stream, idx), n);
      const Eigen::VectorXd y = f_grid + config.sigma * eps;
      const SelectionOutcome outcome = select(y, design, collection, pen);
      double risk = theta.squaredNorm();
      for (int k = 0; k < outcome.chosen_dim; ++k) {
        const int j = outcome.chosen.indices[static_cast<std::size_t>(k)];
        const double diff = outcome.estimator_coefficients[k] - theta[j];
        risk += diff * diff - theta[j] * theta[j];
      }
      risks[static_cast<std::size_t>(r)] = risk;
    });

    double mean = 0.0;
    for (int r = 0; r < reps; ++r) {
      result.raw.push_back(RateRow{n, r, risks[static_cast<std::size_t>(r)]});
      mean += risks[static_cast<std::size_t>(r)];
    }
    result.mean_risks.push_back(mean / reps);
  }

  // log-log fit of the mean risk against n
  std::map<int, double> curve;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    curve[static_cast<int>(i)] = std::log(result.mean_risks[i]);
  }
  double mx = 0.0, my = 0.0;
  const int k = static_cast<int>(n_grid.size());
  std::vector<double> lx(n_grid.size());
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    lx[i] = std::log(static_cast<double>(n_grid[i]));
    mx += lx[i];
    my += std::log(result.mean_risks[i]);
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (std::log(result.mean_risks[i]) - my);
  }
  result.fitted_slope = sxy / sxx;
  const double icept = my - result.fitted_slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    const double resid = std::log(result.mean_risks[i]) - (icept + result.fitted_slope * lx[i]);
    result.residuals.push_back(resid);
    rss += resid * resid;
  }
  result.slope_stderr = k > 2 ? std::sqrt(rss / (k - 2) / sxx) : 0.0;
  return result;
}

ConcentrationSuiteResult concentration_suite(const ExperimentConfig& config) {
  if (config.scenario != Scenario::concentration_suite) {
    throw std::invalid_argument("concentration_suite: config scenario mismatch");
  }
  const Seed master{config.master_seed};
  const std::int64_t samples = config.samples;
  const int workers = config.workers;

  ConcentrationSuiteResult result;
  result.combined.n_samples = samples;

  // single inner product, unit vector in dimension 8
  {
    Eigen::VectorXd b = Eigen::VectorXd::Constant(8, 1.0 / std::sqrt(8.0));
    const TailReport rep =
        hoeffding_report(b, config.t_grid, samples, derive_seed(master, 100), workers);
    result.combined.rows.insert(result.combined.rows.end(), rep.rows.begin(), rep.rows.end());
  }

  // supremum over an orthonormal frame of size 10 in dimension 50
  {
    const OrthonormalBasis frame = OrthonormalBasis::random_rotation(50, derive_seed(master, 101));
    const TailReport rep = sup_tail_report(frame, ModelSpec::leading(10), config.t_grid, samples,
                                           derive_seed(master, 102), workers);
    result.combined.rows.insert(result.combined.rows.end(), rep.rows.begin(), rep.rows.end());
  }

  const OrthonormalBasis basis =
      OrthonormalBasis::random_rotation(config.n, derive_seed(master, kBasisStream));
  std::uint64_t stream_id = 200;
  for (int d : config.dims) {
    if (d < 1 || d > basis.size()) throw std::invalid_argument("concentration suite dimension out of range");
    const ModelSpec model = ModelSpec::leading(d);
    const Seed stream = derive_seed(master, stream_id++);

    const TailReport tails = chi_tail_report(basis, model, config.x_grid, samples, stream, workers);
    result.combined.rows.insert(result.combined.rows.end(), tails.rows.begin(), tails.rows.end());

    const EfronSteinCheck es = efron_stein_check(basis, model, samples, stream, workers);
    result.combined.rows.push_back(TailRow{"efron_stein_D" + std::to_string(d), 0.0,
                                           es.empirical_variance, es.bound, es.margin, es.pass});

    const ChiExpectationCheck mean = chi_expectation_check(basis, model, samples, stream, workers);
    result.combined.rows.push_back(TailRow{"chi_mean_upper_D" + std::to_string(d), 0.0, mean.mean_chi,
                                           mean.upper, mean.margin,
                                           mean.mean_chi <= mean.upper + mean.margin});
    result.combined.rows.push_back(TailRow{"chi_mean_lower_D" + std::to_string(d), 0.0, mean.mean_chi,
                                           mean.lower, mean.margin,
                                           mean.mean_chi >= mean.lower - mean.margin});
  }

  result.all_pass = result.combined.all_pass();
  return result;
}

TalagrandSuiteResult talagrand_suite(const ExperimentConfig& config) {
  if (config.scenario != Scenario::talagrand_suite) {
    throw std::invalid_argument("talagrand_suite: config scenario mismatch");
  }
  const Seed master{config.master_seed};
  TalagrandSuiteResult result;
  std::uint64_t set_index = 0;
  for (const TalagrandSet& spec : config.sets) {
    FinitePointSet set;
    switch (spec.kind) {
      case TalagrandSet::Kind::singleton:
        set = singleton_all_ones(config.cube_n);
        break;
      case TalagrandSet::Kind::hamming_ball:
        set = hamming_ball_all_ones(config.cube_n, spec.radius);
        break;
      case TalagrandSet::Kind::random_set:
        set = random_cube_subset(config.cube_n, spec.size,
                                 derive_seed(derive_seed(master, kSetStream), set_index));
        break;
    }
    ++set_index;
    CubeInequalityReport report = verify_convex_distance_inequality(
        set, config.cube_n, config.t_grid, config.tol, config.workers);
    result.all_pass = result.all_pass && report.all_pass;
    result.entries.push_back(TalagrandSuiteResult::Entry{spec.name(), std::move(report)});
  }
  return result;
}

}  // namespace radsel
