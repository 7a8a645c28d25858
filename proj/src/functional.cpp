#include "radsel/functional.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace radsel {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double fourier_basis_value(int j, double t) {
  if (j < 1) throw std::invalid_argument("fourier_basis_value: index is 1-based");
  if (j == 1) return 1.0;
  const int freq = j / 2;
  return (j % 2 == 0) ? kSqrt2 * std::cos(kTwoPi * freq * t)
                      : kSqrt2 * std::sin(kTwoPi * freq * t);
}

OrthonormalBasis fourier_design_matrix(int n, int J) {
  if (n < 2) throw std::invalid_argument("fourier_design_matrix: n must be at least 2");
  if (J < 1 || J > n - 1) {
    throw std::invalid_argument("fourier_design_matrix: J must satisfy 1 <= J <= n-1");
  }
  const GridDesign grid{n};
  Eigen::MatrixXd m(n, J);
  for (int j = 1; j <= J; ++j) {
    for (int k = 1; k <= n; ++k) {
      m(k - 1, j - 1) = fourier_basis_value(j, grid.t(k));
    }
  }
  // Orthonormality for J <= n-1 is a discrete trigonometric identity; the
  // O(n J^2) Gram validation is covered by tests instead of every build.
  return OrthonormalBasis::trusted(std::move(m), InnerProduct::empirical);
}

double empirical_norm(const Eigen::VectorXd& values) {
  if (values.size() == 0) return 0.0;
  return std::sqrt(values.squaredNorm() / static_cast<double>(values.size()));
}

double SobolevSpec::r() const { return R / std::pow(std::numbers::pi, alpha); }

double SobolevSpec::c(int j) const {
  if (j < 1) throw std::invalid_argument("SobolevSpec::c: index is 1-based");
  const int base = (j % 2 == 0) ? j : j - 1;
  return std::pow(static_cast<double>(base), alpha);
}

double SobolevSpec::ellipsoid_sum(const Eigen::VectorXd& theta) const {
  double sum = 0.0;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    const double cj = c(static_cast<int>(i) + 1);
    sum += cj * cj * theta[i] * theta[i];
  }
  return sum;
}

Eigen::VectorXd sobolev_signal(const SobolevSpec& spec, int J, Seed seed,
                               double fill_fraction) {
  if (J < 1) throw std::invalid_argument("sobolev_signal: J must be at least 1");
  if (!(fill_fraction > 0.0) || fill_fraction > 1.0) {
    throw std::invalid_argument("sobolev_signal: fill_fraction must lie in (0,1]");
  }
  RandomStream stream(seed);
  Eigen::VectorXd theta(J);
  theta[0] = stream.uniform(-1.0, 1.0);  // c_1 = 0 leaves the constant term free
  double constrained = 0.0;
  for (int j = 2; j <= J; ++j) {
    const double magnitude = stream.uniform(0.5, 1.0) * std::pow(static_cast<double>(j), -(spec.alpha + 1.0));
    theta[j - 1] = stream.sign() * magnitude;
    const double cj = spec.c(j);
    constrained += cj * cj * theta[j - 1] * theta[j - 1];
  }
  if (J > 1) {
    const double target = fill_fraction * spec.r() * spec.r();
    const double lambda = std::sqrt(target / constrained);
    for (int j = 2; j <= J; ++j) theta[j - 1] *= lambda;
  }
  return theta;
}

Eigen::VectorXd fourier_evaluate(const Eigen::VectorXd& theta, const GridDesign& design) {
  Eigen::VectorXd values = Eigen::VectorXd::Zero(design.n);
  for (int k = 1; k <= design.n; ++k) {
    double v = 0.0;
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
      if (theta[i] != 0.0) v += theta[i] * fourier_basis_value(static_cast<int>(i) + 1, design.t(k));
    }
    values[k - 1] = v;
  }
  return values;
}

Eigen::VectorXd functional_estimate(const Eigen::VectorXd& y, const GridDesign& design,
                                    const ModelSpec& model) {
  if (y.size() != design.n) throw std::invalid_argument("functional_estimate: response length mismatch");
  model.validate(design.n - 1);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(design.n - 1);
  for (int j : model.indices) {
    double c = 0.0;
    for (int k = 1; k <= design.n; ++k) {
      c += y[k - 1] * fourier_basis_value(j + 1, design.t(k));
    }
    theta[j] = c / design.n;
  }
  return theta;
}

RiskPair l2_and_empirical_risks(const Eigen::VectorXd& theta_hat,
                                const Eigen::VectorXd& theta_true,
                                const GridDesign& design) {
  const Eigen::Index len = std::max(theta_hat.size(), theta_true.size());
  Eigen::VectorXd diff = Eigen::VectorXd::Zero(len);
  diff.head(theta_hat.size()) = theta_hat;
  diff.head(theta_true.size()) -= theta_true;

  RiskPair risks;
  risks.l2_risk = diff.squaredNorm();
  const Eigen::VectorXd grid_diff = fourier_evaluate(diff, design);
  const double nrm = empirical_norm(grid_diff);
  risks.empirical_risk = nrm * nrm;
  return risks;
}

}  // namespace radsel
