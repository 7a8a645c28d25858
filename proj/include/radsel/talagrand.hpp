#pragma once

#include <Eigen/Core>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "radsel/random.hpp"

namespace radsel {

// Finite subset of a discrete product space, one point per column; here the
// points are sign vectors.
struct FinitePointSet {
  Eigen::MatrixXd points;  // n rows, one column per point

  Eigen::Index dimension() const { return points.rows(); }
  Eigen::Index size() const { return points.cols(); }

  void validate() const;  // nonempty, equal dimensions, distinct columns
};

// 0/1 matrix with entry (i,k) = 1 iff x_i differs from the i-th coordinate of
// the k-th point of A.
Eigen::MatrixXd mismatch_matrix(const Eigen::VectorXd& x, const FinitePointSet& A);

struct ConvexDistanceResult {
  double value = 0.0;             // d_T(x, A)
  Eigen::VectorXd dual_weights;   // probability vector over the points of A
  Eigen::VectorXd primal_alpha;   // nonnegative, Euclidean norm <= 1
  double duality_gap = 0.0;       // certified |value - primal objective|
  long iterations = 0;
};

class ConvexDistanceError : public std::runtime_error {
 public:
  ConvexDistanceError(const std::string& message, ConvexDistanceResult best)
      : std::runtime_error(message), best_iterate(std::move(best)) {}

  ConvexDistanceResult best_iterate;
};

// Talagrand's convex distance sup_{alpha} inf_{y in A} sum_i alpha_i 1[x_i != y_i]
// computed from the dual side: minimize |M nu|_2 over the probability simplex
// (M the mismatch matrix) with away-step Frank-Wolfe; the normalized M nu is
// the primal certificate and the returned gap bounds |value - primal|.
ConvexDistanceResult convex_distance(const Eigen::VectorXd& x, const FinitePointSet& A,
                                     double tol = 1e-8, long max_iterations = 100000);

// Exhaustive evaluation of |M nu|_2 over the simplex grid with the given
// resolution. Supports |A| <= 4; overestimates the minimum by at most
// grid_oracle_modulus.
double convex_distance_grid_oracle(const Eigen::VectorXd& x, const FinitePointSet& A,
                                   int grid_resolution);
double grid_oracle_modulus(const Eigen::VectorXd& x, const FinitePointSet& A,
                           int grid_resolution);

struct CubeInequalityRow {
  double t = 0.0;
  std::int64_t tail_count = 0;  // # cube points with d_T >= t (upper-certified)
  double product = 0.0;         // P(A) P(d_T >= t), exact dyadic numerators
  double bound = 0.0;           // exp(-t^2/4)
  bool pass = false;
};

// Two-sided control of d_T around its cube average, each side against
// exp(-t^2/2); follows from the distance being 1-Lipschitz in the
// bounded-differences sense.
struct MeanConcentrationRow {
  double t = 0.0;
  std::int64_t upper_count = 0;
  std::int64_t lower_count = 0;
  double upper_prob = 0.0;
  double lower_prob = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct CubeInequalityReport {
  int n = 0;
  std::int64_t cube_size = 0;  // 2^n
  std::int64_t count_A = 0;    // |A|, all points lie on the cube
  std::vector<double> distances;  // indexed by cube point bit pattern
  double mean_distance = 0.0;
  std::vector<CubeInequalityRow> rows;
  std::vector<MeanConcentrationRow> mean_rows;
  bool all_pass = true;
};

// Enumerates the cube {-1,1}^n (n <= 14), computes d_T(x, A) for every x and
// certifies P(X in A) P(d_T(X,A) >= t) <= exp(-t^2/4) with exact k/2^n
// probabilities (integer counts; floats appear only on the bound side).
CubeInequalityReport verify_convex_distance_inequality(const FinitePointSet& A, int n,
                                                       std::span<const double> t_grid,
                                                       double tol = 1e-8, int workers = 0);

// Cube point from a bit pattern: coordinate i is +1 when bit i is set.
Eigen::VectorXd cube_point(std::uint64_t pattern, int n);

// Canned cube subsets used by the verification suite.
FinitePointSet singleton_all_ones(int n);
FinitePointSet hamming_ball_all_ones(int n, int radius);
FinitePointSet random_cube_subset(int n, int size, Seed seed);

}  // namespace radsel
