#include "radsel/selection.hpp"

#include <cmath>
#include <stdexcept>

namespace radsel {

PenaltyRule::PenaltyRule(PenaltyKind kind, double constant, double sigma2, PenaltyScale scale)
    : kind_(kind), constant_(constant), sigma2_(sigma2), scale_(scale) {
  if (!(constant_ >= 0.0)) throw std::invalid_argument("penalty constant must be nonnegative");
  if (!(sigma2_ >= 0.0)) throw std::invalid_argument("sigma2 must be nonnegative");
  if (kind_ == PenaltyKind::theorem_style && !(constant_ > 1.0)) {
    throw std::invalid_argument("theorem_style penalty requires K > 1");
  }
}

PenaltyRule PenaltyRule::linear_dim(double kappa, double sigma2, PenaltyScale scale) {
  return PenaltyRule(PenaltyKind::linear_dim, kappa, sigma2, scale);
}

PenaltyRule PenaltyRule::mallows(double sigma2, PenaltyScale scale) {
  return PenaltyRule(PenaltyKind::mallows, 2.0, sigma2, scale);
}

PenaltyRule PenaltyRule::theorem_style(double K, double sigma2, PenaltyScale scale) {
  return PenaltyRule(PenaltyKind::theorem_style, K, sigma2, scale);
}

PenaltyRule PenaltyRule::theorem_style(double K, double sigma2, PenaltyScale scale,
                                       std::map<std::vector<int>, double> weights) {
  PenaltyRule rule(PenaltyKind::theorem_style, K, sigma2, scale);
  rule.weights_ = std::move(weights);
  return rule;
}

double PenaltyRule::evaluate(const ModelSpec& model, double x_m) const {
  const double d = static_cast<double>(model.dimension());
  switch (kind_) {
    case PenaltyKind::linear_dim:
      return constant_ * sigma2_ * d * scale_.factor;
    case PenaltyKind::mallows:
      return 2.0 * sigma2_ * d * scale_.factor;
    case PenaltyKind::theorem_style: {
      if (!(x_m > 0.0)) throw std::invalid_argument("theorem_style weight x_m must be positive");
      const double root = std::sqrt(d) + 2.0 * std::sqrt(2.0 * x_m);
      return constant_ * sigma2_ * root * root * scale_.factor;
    }
  }
  throw std::logic_error("unreachable penalty kind");
}

double PenaltyRule::operator()(const ModelSpec& model) const {
  if (kind_ != PenaltyKind::theorem_style) return evaluate(model, 0.0);
  if (!weights_) {
    throw std::invalid_argument("theorem_style penalty evaluated without a weight map");
  }
  const auto it = weights_->find(model.indices);
  if (it == weights_->end()) {
    throw std::invalid_argument("theorem_style penalty has no weight for this model");
  }
  return evaluate(model, it->second);
}

double criterion(const Eigen::VectorXd& y, const OrthonormalBasis& basis,
                 const ModelSpec& model, const PenaltyRule& pen) {
  const Projection p = project(y, basis, model);
  return -p.coefficients.squaredNorm() + pen(model);
}

SelectionOutcome select(const Eigen::VectorXd& y, const OrthonormalBasis& basis,
                        const ModelCollection& collection, const PenaltyRule& pen) {
  if (y.size() != basis.ambient_dimension()) {
    throw std::invalid_argument("select: vector dimension does not match the basis");
  }
  if (collection.size() == 0) throw std::invalid_argument("select: empty collection");

  // One pass over the basis indices that actually occur, then per-model sums.
  std::vector<char> used(static_cast<std::size_t>(basis.size()), 0);
  for (const ModelSpec& m : collection.models()) {
    m.validate(basis.size());
    for (int j : m.indices) used[static_cast<std::size_t>(j)] = 1;
  }
  std::vector<double> coef(static_cast<std::size_t>(basis.size()), 0.0);
  const double scale = basis.ip_scale();
  for (Eigen::Index j = 0; j < basis.size(); ++j) {
    if (used[static_cast<std::size_t>(j)]) coef[static_cast<std::size_t>(j)] = basis.column(j).dot(y) * scale;
  }

  SelectionOutcome out;
  out.criterion_trace.resize(collection.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < collection.size(); ++i) {
    const ModelSpec& m = collection.model(i);
    double sq = 0.0;
    for (int j : m.indices) {
      const double c = coef[static_cast<std::size_t>(j)];
      sq += c * c;
    }
    const double pen_value = pen.kind() == PenaltyKind::theorem_style && !pen.has_weights()
                                 ? pen.evaluate(m, collection.weight(i))
                                 : pen(m);
    out.criterion_trace[i] = -sq + pen_value;
    if (i > 0) {
      const double cur = out.criterion_trace[i];
      const double inc = out.criterion_trace[best];
      if (cur < inc || (cur == inc && model_before(m, collection.model(best)))) {
        best = i;
      }
    }
  }

  out.chosen = collection.model(best);
  out.chosen_dim = out.chosen.dimension();
  out.estimator_coefficients.resize(out.chosen.dimension());
  for (int k = 0; k < out.chosen.dimension(); ++k) {
    out.estimator_coefficients[k] = coef[static_cast<std::size_t>(out.chosen.indices[static_cast<std::size_t>(k)])];
  }
  return out;
}

SlopeFit slope_fit(const std::map<int, double>& norm_curve, int d_lo, int d_hi,
                   double sigma2, int scale_n) {
  if (!(sigma2 > 0.0)) throw std::invalid_argument("slope_fit: sigma2 must be positive");
  if (scale_n < 1) throw std::invalid_argument("slope_fit: scale_n must be at least 1");
  std::vector<std::pair<double, double>> pts;
  for (const auto& [d, v] : norm_curve) {
    if (d >= d_lo && d <= d_hi) pts.emplace_back(static_cast<double>(d), v);
  }
  const int k = static_cast<int>(pts.size());
  if (k < 3) throw std::invalid_argument("slope_fit: window must contain at least 3 dimensions");

  double mx = 0.0, my = 0.0;
  for (const auto& [x, v] : pts) {
    mx += x;
    my += v;
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, v] : pts) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (v - my);
  }
  SlopeFit fit;
  fit.points = k;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (const auto& [x, v] : pts) {
    const double r = v - (fit.intercept + fit.slope * x);
    rss += r * r;
  }
  fit.slope_stderr = k > 2 ? std::sqrt(rss / (k - 2) / sxx) : 0.0;
  const double to_kappa = static_cast<double>(scale_n) / sigma2;
  fit.kappa_hat = fit.slope * to_kappa;
  fit.kappa_stderr = fit.slope_stderr * to_kappa;
  return fit;
}

}  // namespace radsel
