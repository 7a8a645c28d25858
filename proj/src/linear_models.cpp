#include "radsel/linear_models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace radsel {

OrthonormalBasis::OrthonormalBasis(Eigen::MatrixXd columns, InnerProduct ip) {
  columns_ = std::move(columns);
  ip_ = ip;
  if (columns_.cols() > columns_.rows()) {
    throw std::invalid_argument("orthonormal basis cannot have more vectors than the ambient dimension");
  }
  if (gram_deviation() > kGramTolerance) {
    throw std::invalid_argument("supplied family is not orthonormal under the tagged inner product");
  }
}

OrthonormalBasis OrthonormalBasis::trusted(Eigen::MatrixXd columns, InnerProduct ip) {
  OrthonormalBasis b;
  b.columns_ = std::move(columns);
  b.ip_ = ip;
  return b;
}

OrthonormalBasis OrthonormalBasis::standard(Eigen::Index n) {
  return trusted(Eigen::MatrixXd::Identity(n, n), InnerProduct::euclidean);
}

OrthonormalBasis OrthonormalBasis::hadamard(Eigen::Index n) {
  if (n <= 0 || (n & (n - 1)) != 0) {
    throw std::invalid_argument("hadamard basis requires a power-of-two dimension");
  }
  Eigen::MatrixXd h(1, 1);
  h(0, 0) = 1.0;
  while (h.rows() < n) {
    const Eigen::Index m = h.rows();
    Eigen::MatrixXd next(2 * m, 2 * m);
    next.topLeftCorner(m, m) = h;
    next.topRightCorner(m, m) = h;
    next.bottomLeftCorner(m, m) = h;
    next.bottomRightCorner(m, m) = -h;
    h = std::move(next);
  }
  h *= 1.0 / std::sqrt(static_cast<double>(n));
  return trusted(std::move(h), InnerProduct::euclidean);
}

OrthonormalBasis OrthonormalBasis::random_rotation(Eigen::Index n, Seed seed) {
  RandomStream stream(seed);
  Eigen::MatrixXd raw(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      raw(i, j) = stream.uniform(-1.0, 1.0);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(raw);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return OrthonormalBasis(std::move(q), InnerProduct::euclidean);
}

OrthonormalBasis OrthonormalBasis::orthonormalized(Eigen::MatrixXd raw, InnerProduct ip) {
  const double scale = ip == InnerProduct::empirical ? 1.0 / static_cast<double>(raw.rows()) : 1.0;
  for (Eigen::Index j = 0; j < raw.cols(); ++j) {
    for (Eigen::Index i = 0; i < j; ++i) {
      raw.col(j) -= (raw.col(i).dot(raw.col(j)) * scale) * raw.col(i);
    }
    const double norm = std::sqrt(raw.col(j).squaredNorm() * scale);
    if (norm < 1e-12) {
      throw std::invalid_argument("orthonormalized: columns are numerically dependent");
    }
    raw.col(j) /= norm;
  }
  return OrthonormalBasis(std::move(raw), ip);
}

double OrthonormalBasis::gram_deviation() const {
  const Eigen::MatrixXd gram = columns_.transpose() * columns_ * ip_scale();
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

ModelSpec ModelSpec::leading(int d) {
  ModelSpec m;
  m.indices.resize(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) m.indices[static_cast<std::size_t>(j)] = j;
  return m;
}

void ModelSpec::validate(Eigen::Index basis_size) const {
  int prev = -1;
  for (int j : indices) {
    if (j <= prev) throw std::invalid_argument("model indices must be strictly increasing");
    if (j < 0 || j >= basis_size) throw std::invalid_argument("model index out of basis range");
    prev = j;
  }
}

bool model_before(const ModelSpec& a, const ModelSpec& b) {
  if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
  return std::lexicographical_compare(a.indices.begin(), a.indices.end(),
                                      b.indices.begin(), b.indices.end());
}

ModelCollection::ModelCollection(std::vector<ModelSpec> models, std::vector<double> weights)
    : models_(std::move(models)), weights_(std::move(weights)) {
  if (models_.empty()) throw std::invalid_argument("model collection must be nonempty");
  if (models_.size() != weights_.size()) {
    throw std::invalid_argument("one weight per model required");
  }
  for (std::size_t i = 0; i < models_.size(); ++i) {
    if (!(weights_[i] > 0.0)) throw std::invalid_argument("model weights must be positive");
    for (std::size_t k = i + 1; k < models_.size(); ++k) {
      if (models_[i] == models_[k]) throw std::invalid_argument("models must be distinct");
    }
  }
  sigma_ = 0.0;
  for (double x : weights_) sigma_ += std::exp(-x);
}

ModelCollection build_nested(const OrthonormalBasis& basis, int max_dim, double alpha) {
  if (max_dim < 1 || max_dim > basis.size()) {
    throw std::invalid_argument("build_nested: max_dim out of range");
  }
  if (!(alpha > 0.0)) throw std::invalid_argument("build_nested: alpha must be positive");
  std::vector<ModelSpec> models;
  std::vector<double> weights;
  models.reserve(static_cast<std::size_t>(max_dim));
  weights.reserve(static_cast<std::size_t>(max_dim));
  for (int d = 1; d <= max_dim; ++d) {
    models.push_back(ModelSpec::leading(d));
    weights.push_back(alpha * d);
  }
  return ModelCollection(std::move(models), std::move(weights));
}

Projection project(const Eigen::VectorXd& y, const OrthonormalBasis& basis,
                   const ModelSpec& model) {
  if (y.size() != basis.ambient_dimension()) {
    throw std::invalid_argument("project: vector dimension does not match the basis");
  }
  model.validate(basis.size());
  Projection p;
  p.coefficients.resize(model.dimension());
  p.fitted = Eigen::VectorXd::Zero(y.size());
  const double scale = basis.ip_scale();
  for (int k = 0; k < model.dimension(); ++k) {
    const int j = model.indices[static_cast<std::size_t>(k)];
    const double c = basis.column(j).dot(y) * scale;
    p.coefficients[k] = c;
    p.fitted += c * basis.column(j);
  }
  return p;
}

double chi_square(const SignVector& eps, const OrthonormalBasis& basis,
                  const ModelSpec& model) {
  if (eps.size() != basis.ambient_dimension()) {
    throw std::invalid_argument("chi_square: vector dimension does not match the basis");
  }
  model.validate(basis.size());
  const double scale = basis.ip_scale();
  double total = 0.0;
  for (int j : model.indices) {
    const double c = basis.column(j).dot(eps) * scale;
    total += c * c;
  }
  return total;
}

double exact_risk(const Eigen::VectorXd& f, const OrthonormalBasis& basis,
                  const ModelSpec& model, double sigma) {
  const Projection p = project(f, basis, model);
  const double bias = basis.squared_norm(f - p.fitted);
  return bias + sigma * sigma * model.dimension();
}

}  // namespace radsel
