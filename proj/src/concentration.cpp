#include "radsel/concentration.hpp"

#include <cmath>
#include <stdexcept>

#include "radsel/parallel.hpp"

namespace radsel {

double bound_hoeffding(double t) {
  if (t < 0.0) throw std::invalid_argument("bound_hoeffding: t must be nonnegative");
  return std::exp(-t * t / 2.0);
}

double bound_sup_rademacher(double t) {
  if (t < 0.0) throw std::invalid_argument("bound_sup_rademacher: t must be nonnegative");
  return std::exp(-t * t / 8.0);
}

double chi_upper_quantile(int D, double x) {
  if (D < 1) throw std::invalid_argument("chi_upper_quantile: D must be at least 1");
  if (x < 0.0) throw std::invalid_argument("chi_upper_quantile: x must be nonnegative");
  return std::sqrt(static_cast<double>(D)) + 2.0 * std::sqrt(2.0 * x);
}

double chi_lower_quantile(int D, double x) {
  if (D < 1) throw std::invalid_argument("chi_lower_quantile: D must be at least 1");
  if (x < 0.0) throw std::invalid_argument("chi_lower_quantile: x must be nonnegative");
  const double dm2 = D > 2 ? static_cast<double>(D - 2) : 0.0;
  return std::sqrt(dm2) - 2.0 * std::sqrt(2.0 * x);
}

bool TailReport::all_pass() const {
  for (const TailRow& row : rows) {
    if (!row.pass) return false;
  }
  return true;
}

namespace {

double frequency_of(const std::vector<double>& values, double threshold, bool upper) {
  std::int64_t count = 0;
  for (double v : values) {
    if (upper ? (v >= threshold) : (v <= threshold)) ++count;
  }
  return static_cast<double>(count) / static_cast<double>(values.size());
}

double freq_stderr(double p, std::int64_t n) {
  return std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(n));
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
  double mean_stderr = 0.0;
  double variance_stderr = 0.0;
};

Moments compute_moments(const std::vector<double>& values) {
  const std::int64_t n = static_cast<std::int64_t>(values.size());
  Moments m;
  for (double v : values) m.mean += v;
  m.mean /= static_cast<double>(n);
  double m2 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - m.mean;
    m2 += d * d;
    m4 += d * d * d * d;
  }
  m2 /= static_cast<double>(n);
  m4 /= static_cast<double>(n);
  m.variance = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
  m.mean_stderr = std::sqrt(m2 / static_cast<double>(n));
  // large-sample standard error of the sample variance
  m.variance_stderr = std::sqrt(std::max(m4 - m2 * m2, 0.0) / static_cast<double>(n));
  return m;
}

void require_samples(std::int64_t n_samples) {
  if (n_samples < 1000) throw std::invalid_argument("Monte Carlo checks need at least 1000 samples");
}

}  // namespace

std::vector<double> sample_chi(const OrthonormalBasis& basis, const ModelSpec& model,
                               std::int64_t n_samples, Seed stream, int workers) {
  model.validate(basis.size());
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  const Eigen::Index n = basis.ambient_dimension();
  run_indexed(n_samples, workers, [&](std::ptrdiff_t i) {
    const SignVector eps = rademacher_vector(derive_seed(stream, static_cast<std::uint64_t>(i)), n);
    values[static_cast<std::size_t>(i)] = std::sqrt(chi_square(eps, basis, model));
  });
  return values;
}

std::vector<double> sample_sup_frame(const OrthonormalBasis& basis, const ModelSpec& model,
                                     std::int64_t n_samples, Seed stream, int workers) {
  model.validate(basis.size());
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  const Eigen::Index n = basis.ambient_dimension();
  const double scale = basis.ip_scale();
  run_indexed(n_samples, workers, [&](std::ptrdiff_t i) {
    const SignVector eps = rademacher_vector(derive_seed(stream, static_cast<std::uint64_t>(i)), n);
    double sup = -std::numeric_limits<double>::infinity();
    for (int j : model.indices) {
      sup = std::max(sup, basis.column(j).dot(eps) * scale);
    }
    values[static_cast<std::size_t>(i)] = sup;
  });
  return values;
}

std::vector<double> sample_dot(const Eigen::VectorXd& b, std::int64_t n_samples,
                               Seed stream, int workers) {
  std::vector<double> values(static_cast<std::size_t>(n_samples));
  run_indexed(n_samples, workers, [&](std::ptrdiff_t i) {
    const SignVector eps = rademacher_vector(derive_seed(stream, static_cast<std::uint64_t>(i)), b.size());
    values[static_cast<std::size_t>(i)] = b.dot(eps);
  });
  return values;
}

TailReport hoeffding_report(const Eigen::VectorXd& b, const std::vector<double>& t_grid,
                            std::int64_t n_samples, Seed stream, int workers) {
  require_samples(n_samples);
  const std::vector<double> values = sample_dot(b, n_samples, stream, workers);
  TailReport report;
  report.n_samples = n_samples;
  for (double t : t_grid) {
    TailRow row;
    row.statistic = "hoeffding";
    row.t_or_x = t;
    row.empirical = frequency_of(values, t, true);
    row.bound = bound_hoeffding(t);
    row.margin = 3.0 * freq_stderr(row.empirical, n_samples);
    row.pass = row.empirical <= row.bound + row.margin;
    report.rows.push_back(row);
  }
  return report;
}

TailReport sup_tail_report(const OrthonormalBasis& basis, const ModelSpec& model,
                           const std::vector<double>& t_grid, std::int64_t n_samples,
                           Seed stream, int workers) {
  require_samples(n_samples);
  const std::vector<double> values = sample_sup_frame(basis, model, n_samples, stream, workers);
  const Moments m = compute_moments(values);
  // The centering uses the plug-in mean; counting against a mean shifted by
  // three of its standard errors keeps the frequency an upper bound for the
  // tail beyond the true expectation.
  const double shift = 3.0 * m.mean_stderr;
  TailReport report;
  report.n_samples = n_samples;
  for (double t : t_grid) {
    TailRow upper;
    upper.statistic = "sup_upper";
    upper.t_or_x = t;
    upper.empirical = frequency_of(values, m.mean + t - shift, true);
    upper.bound = bound_sup_rademacher(t);
    upper.margin = 3.0 * freq_stderr(upper.empirical, n_samples);
    upper.pass = upper.empirical <= upper.bound + upper.margin;
    report.rows.push_back(upper);

    TailRow lower;
    lower.statistic = "sup_lower";
    lower.t_or_x = t;
    lower.empirical = frequency_of(values, m.mean - t + shift, false);
    lower.bound = bound_sup_rademacher(t);
    lower.margin = 3.0 * freq_stderr(lower.empirical, n_samples);
    lower.pass = lower.empirical <= lower.bound + lower.margin;
    report.rows.push_back(lower);
  }
  return report;
}

TailReport chi_tail_report(const OrthonormalBasis& basis, const ModelSpec& model,
                           const std::vector<double>& x_grid, std::int64_t n_samples,
                           Seed stream, int workers) {
  require_samples(n_samples);
  const std::vector<double> values = sample_chi(basis, model, n_samples, stream, workers);
  const int d = model.dimension();
  TailReport report;
  report.n_samples = n_samples;
  for (double x : x_grid) {
    TailRow upper;
    upper.statistic = "chi_upper_D" + std::to_string(d);
    upper.t_or_x = x;
    upper.empirical = frequency_of(values, chi_upper_quantile(d, x), true);
    upper.bound = std::exp(-x);
    upper.margin = 3.0 * freq_stderr(upper.empirical, n_samples);
    upper.pass = upper.empirical <= upper.bound + upper.margin;
    report.rows.push_back(upper);

    TailRow lower;
    lower.statistic = "chi_lower_D" + std::to_string(d);
    lower.t_or_x = x;
    lower.empirical = frequency_of(values, chi_lower_quantile(d, x), false);
    lower.bound = std::exp(-x);
    lower.margin = 3.0 * freq_stderr(lower.empirical, n_samples);
    lower.pass = lower.empirical <= lower.bound + lower.margin;
    report.rows.push_back(lower);
  }
  return report;
}

EfronSteinCheck efron_stein_check(const OrthonormalBasis& basis, const ModelSpec& model,
                                  std::int64_t n_samples, Seed stream, int workers) {
  require_samples(n_samples);
  const std::vector<double> values = sample_chi(basis, model, n_samples, stream, workers);
  const Moments m = compute_moments(values);
  EfronSteinCheck check;
  check.empirical_variance = m.variance;
  check.bound = 2.0;
  check.margin = 3.0 * m.variance_stderr;
  check.pass = check.empirical_variance <= check.bound + check.margin;
  return check;
}

ChiExpectationCheck chi_expectation_check(const OrthonormalBasis& basis, const ModelSpec& model,
                                          std::int64_t n_samples, Seed stream, int workers) {
  require_samples(n_samples);
  const std::vector<double> values = sample_chi(basis, model, n_samples, stream, workers);
  const Moments m = compute_moments(values);
  const int d = model.dimension();
  ChiExpectationCheck check;
  check.mean_chi = m.mean;
  check.lower = d > 2 ? std::sqrt(static_cast<double>(d - 2)) : 0.0;
  check.upper = std::sqrt(static_cast<double>(d));
  check.margin = 3.0 * m.mean_stderr;
  check.pass = check.mean_chi >= check.lower - check.margin &&
               check.mean_chi <= check.upper + check.margin;
  return check;
}

}  // namespace radsel
