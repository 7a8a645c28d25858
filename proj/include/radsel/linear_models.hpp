#pragma once

#include <Eigen/Dense>
#include <vector>

#include "radsel/random.hpp"

namespace radsel {

enum class InnerProduct { euclidean, empirical };

// An ordered orthonormal family, stored densely, one vector per column.
// The tag selects the inner product: plain u.v or the design average u.v/n.
// Construction rejects (rather than repairs) families whose Gram matrix
// deviates from the identity by more than kGramTolerance.
class OrthonormalBasis {
 public:
  static constexpr double kGramTolerance = 1e-10;

  OrthonormalBasis(Eigen::MatrixXd columns, InnerProduct ip);

  // Identity columns of R^n.
  static OrthonormalBasis standard(Eigen::Index n);

  // Sylvester-Hadamard columns scaled by 1/sqrt(n); n must be a power of two.
  // Entries are powers of two, so inner products of sign vectors are exact.
  static OrthonormalBasis hadamard(Eigen::Index n);

  // Full orthonormal basis obtained by QR of a seeded random matrix.
  static OrthonormalBasis random_rotation(Eigen::Index n, Seed seed);

  // Modified Gram-Schmidt on the given columns (explicit repair pass).
  static OrthonormalBasis orthonormalized(Eigen::MatrixXd raw, InnerProduct ip);

  // Constructions whose orthonormality holds by an exact identity may skip
  // the O(N^2 n) Gram validation (it dominates at n in the thousands).
  static OrthonormalBasis trusted(Eigen::MatrixXd columns, InnerProduct ip);

  Eigen::Index ambient_dimension() const { return columns_.rows(); }
  Eigen::Index size() const { return columns_.cols(); }
  const Eigen::MatrixXd& columns() const { return columns_; }
  Eigen::MatrixXd::ConstColXpr column(Eigen::Index j) const { return columns_.col(j); }
  InnerProduct inner_product() const { return ip_; }

  double ip_scale() const {
    return ip_ == InnerProduct::empirical ? 1.0 / static_cast<double>(columns_.rows()) : 1.0;
  }

  double dot(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const {
    return u.dot(v) * ip_scale();
  }

  double squared_norm(const Eigen::VectorXd& u) const { return dot(u, u); }

  // max_{i,j} |<phi_i, phi_j> - delta_ij|
  double gram_deviation() const;

 private:
  OrthonormalBasis() = default;

  Eigen::MatrixXd columns_;
  InnerProduct ip_ = InnerProduct::euclidean;
};

// An index subset of a basis (0-based, strictly increasing).
struct ModelSpec {
  std::vector<int> indices;

  int dimension() const { return static_cast<int>(indices.size()); }

  // First D indices {0,...,D-1}.
  static ModelSpec leading(int d);

  void validate(Eigen::Index basis_size) const;

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

// Tie-break order used by selection: dimension first, then lexicographic.
bool model_before(const ModelSpec& a, const ModelSpec& b);

// Models with positive weights x_m; sigma() caches sum exp(-x_m).
class ModelCollection {
 public:
  ModelCollection(std::vector<ModelSpec> models, std::vector<double> weights);

  std::size_t size() const { return models_.size(); }
  const ModelSpec& model(std::size_t i) const { return models_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  const std::vector<ModelSpec>& models() const { return models_; }
  double sigma() const { return sigma_; }

 private:
  std::vector<ModelSpec> models_;
  std::vector<double> weights_;
  double sigma_ = 0.0;
};

// Nested family {0..D-1} for D = 1..max_dim with weights x_D = alpha*D.
ModelCollection build_nested(const OrthonormalBasis& basis, int max_dim, double alpha);

struct Projection {
  Eigen::VectorXd fitted;        // ambient dimension
  Eigen::VectorXd coefficients;  // aligned with model.indices
};

Projection project(const Eigen::VectorXd& y, const OrthonormalBasis& basis,
                   const ModelSpec& model);

// sum_{j in m} <eps, phi_j>^2 under the basis's tagged inner product.
double chi_square(const SignVector& eps, const OrthonormalBasis& basis,
                  const ModelSpec& model);

// Bias-variance decomposition of the least-squares risk: |f_m - f|^2 + sigma^2 D_m.
double exact_risk(const Eigen::VectorXd& f, const OrthonormalBasis& basis,
                  const ModelSpec& model, double sigma);

}  // namespace radsel
