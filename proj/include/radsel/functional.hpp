#pragma once

#include <Eigen/Core>

#include "radsel/linear_models.hpp"
#include "radsel/random.hpp"

namespace radsel {

// Regular design t_k = k/n for k = 1..n.
struct GridDesign {
  int n = 0;

  double t(int k) const { return static_cast<double>(k) / n; }
};

// Trigonometric system on [0,1]: phi_1 = 1, phi_{2j} = sqrt(2) cos(2 pi j t),
// phi_{2j+1} = sqrt(2) sin(2 pi j t). `j` is 1-based here.
double fourier_basis_value(int j, double t);

// Columns phi_1..phi_J evaluated on the grid, orthonormal for the empirical
// inner product as long as J <= n-1.
OrthonormalBasis fourier_design_matrix(int n, int J);

// sqrt of the design mean square.
double empirical_norm(const Eigen::VectorXd& values);

// Fourier-coefficient ellipsoid sum c_j^2 theta_j^2 <= r^2 with r = R/pi^alpha
// and c_j = j^alpha (j even), (j-1)^alpha (j odd); c_1 = 0, so theta_1 is free.
struct SobolevSpec {
  int alpha = 1;
  double R = 1.0;

  double r() const;
  double c(int j) const;  // 1-based coefficient index
  double ellipsoid_sum(const Eigen::VectorXd& theta) const;
  bool contains(const Eigen::VectorXd& theta) const { return ellipsoid_sum(theta) <= r() * r(); }
};

// Random member of the ellipsoid: signed magnitudes with decay j^-(alpha+1),
// rescaled so the ellipsoid sum equals fill_fraction * r^2 exactly.
Eigen::VectorXd sobolev_signal(const SobolevSpec& spec, int J, Seed seed,
                               double fill_fraction = 0.9);

// g(t_k) for k = 1..n from a coefficient sequence (indices above the design
// resolution alias instead of being dropped).
Eigen::VectorXd fourier_evaluate(const Eigen::VectorXd& theta, const GridDesign& design);

// Least-squares coefficients (1/n) sum_k Y_k phi_j(t_k) on the model, zero
// elsewhere; returned with ambient length n-1.
Eigen::VectorXd functional_estimate(const Eigen::VectorXd& y, const GridDesign& design,
                                    const ModelSpec& model);

struct RiskPair {
  double l2_risk = 0.0;        // sum of squared coefficient differences (Parseval)
  double empirical_risk = 0.0; // design-grid mean square of the difference
};

RiskPair l2_and_empirical_risks(const Eigen::VectorXd& theta_hat,
                                const Eigen::VectorXd& theta_true,
                                const GridDesign& design);

}  // namespace radsel
