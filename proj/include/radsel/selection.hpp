#pragma once

#include <map>
#include <optional>
#include <vector>

#include "radsel/linear_models.hpp"

namespace radsel {

struct PenaltyScale {
  double factor = 1.0;

  static PenaltyScale unit() { return PenaltyScale{1.0}; }
  static PenaltyScale one_over_n(int n) { return PenaltyScale{1.0 / static_cast<double>(n)}; }

  friend bool operator==(const PenaltyScale&, const PenaltyScale&) = default;
};

enum class PenaltyKind { linear_dim, mallows, theorem_style };

// pen(m), one of
//   linear_dim:    kappa * sigma^2 * D_m * scale
//   mallows:       2 * sigma^2 * D_m * scale
//   theorem_style: K * sigma^2 * (sqrt(D_m) + 2 sqrt(2 x_m))^2 * scale,  K > 1
// The theorem-style rule needs a weight x_m per model; it can carry its own
// map, or pick the weight up from the collection inside select().
class PenaltyRule {
 public:
  static PenaltyRule linear_dim(double kappa, double sigma2, PenaltyScale scale);
  static PenaltyRule mallows(double sigma2, PenaltyScale scale);
  static PenaltyRule theorem_style(double K, double sigma2, PenaltyScale scale);
  static PenaltyRule theorem_style(double K, double sigma2, PenaltyScale scale,
                                   std::map<std::vector<int>, double> weights);

  PenaltyKind kind() const { return kind_; }
  double constant() const { return constant_; }
  double sigma2() const { return sigma2_; }
  PenaltyScale scale() const { return scale_; }

  // Evaluate with an explicit weight (ignored unless theorem_style).
  double evaluate(const ModelSpec& model, double x_m) const;

  // Evaluate using the stored weight map; throws for theorem_style without one.
  double operator()(const ModelSpec& model) const;

  bool has_weights() const { return weights_.has_value(); }

 private:
  PenaltyRule(PenaltyKind kind, double constant, double sigma2, PenaltyScale scale);

  PenaltyKind kind_;
  double constant_;
  double sigma2_;
  PenaltyScale scale_;
  std::optional<std::map<std::vector<int>, double>> weights_;
};

struct SelectionOutcome {
  ModelSpec chosen;
  int chosen_dim = 0;
  std::vector<double> criterion_trace;    // aligned with the collection order
  Eigen::VectorXd estimator_coefficients; // aligned with chosen.indices
};

// crit(m) = -|f_hat_m|^2 + pen(m), norms under the basis's tagged inner product.
double criterion(const Eigen::VectorXd& y, const OrthonormalBasis& basis,
                 const ModelSpec& model, const PenaltyRule& pen);

// Argmin of the criterion over the collection. Ties go to the smaller
// dimension, then to the lexicographically smaller index set.
SelectionOutcome select(const Eigen::VectorXd& y, const OrthonormalBasis& basis,
                        const ModelCollection& collection, const PenaltyRule& pen);

struct SlopeFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double intercept = 0.0;
  double kappa_hat = 0.0;
  double kappa_stderr = 0.0;
  int points = 0;
};

// Ordinary least squares of the squared-norm curve against the dimension over
// [d_lo, d_hi]; kappa_hat = slope * scale_n / sigma2 (pass scale_n = 1 for
// unit-scale penalties).
SlopeFit slope_fit(const std::map<int, double>& norm_curve, int d_lo, int d_hi,
                   double sigma2, int scale_n);

}  // namespace radsel
