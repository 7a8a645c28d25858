#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "radsel/linear_models.hpp"
#include "radsel/random.hpp"

namespace radsel {

// Closed-form tail bounds. All equal 1 at argument 0 and decrease in the
// tail argument.
double bound_hoeffding(double t);       // exp(-t^2/2), single inner product
double bound_sup_rademacher(double t);  // exp(-t^2/8), supremum over the unit ball

// Quantile shapes for the chi statistic: outside probability <= exp(-x),
// chi <= sqrt(D) + 2 sqrt(2x) and chi >= sqrt((D-2)+) - 2 sqrt(2x).
double chi_upper_quantile(int D, double x);
double chi_lower_quantile(int D, double x);

struct TailRow {
  std::string statistic;
  double t_or_x = 0.0;
  double empirical = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool pass = false;
};

struct TailReport {
  std::vector<TailRow> rows;
  std::int64_t n_samples = 0;

  bool all_pass() const;
};

// Sampling kernels. One seeded stream per draw via derive_seed, results
// written into per-draw slots: identical output for any worker count.
std::vector<double> sample_chi(const OrthonormalBasis& basis, const ModelSpec& model,
                               std::int64_t n_samples, Seed stream, int workers);
std::vector<double> sample_sup_frame(const OrthonormalBasis& basis, const ModelSpec& model,
                                     std::int64_t n_samples, Seed stream, int workers);
std::vector<double> sample_dot(const Eigen::VectorXd& b, std::int64_t n_samples,
                               Seed stream, int workers);

// Monte Carlo verifiers. Each compares an empirical frequency against the
// closed-form bound plus three standard errors of the estimate.
TailReport hoeffding_report(const Eigen::VectorXd& b, const std::vector<double>& t_grid,
                            std::int64_t n_samples, Seed stream, int workers = 0);
TailReport sup_tail_report(const OrthonormalBasis& basis, const ModelSpec& model,
                           const std::vector<double>& t_grid, std::int64_t n_samples,
                           Seed stream, int workers = 0);
TailReport chi_tail_report(const OrthonormalBasis& basis, const ModelSpec& model,
                           const std::vector<double>& x_grid, std::int64_t n_samples,
                           Seed stream, int workers = 0);

struct EfronSteinCheck {
  double empirical_variance = 0.0;
  double bound = 2.0;
  double margin = 0.0;
  bool pass = false;
};

EfronSteinCheck efron_stein_check(const OrthonormalBasis& basis, const ModelSpec& model,
                                  std::int64_t n_samples, Seed stream, int workers = 0);

struct ChiExpectationCheck {
  double mean_chi = 0.0;
  double lower = 0.0;  // sqrt((D-2)+)
  double upper = 0.0;  // sqrt(D)
  double margin = 0.0;
  bool pass = false;
};

ChiExpectationCheck chi_expectation_check(const OrthonormalBasis& basis, const ModelSpec& model,
                                          std::int64_t n_samples, Seed stream, int workers = 0);

}  // namespace radsel
