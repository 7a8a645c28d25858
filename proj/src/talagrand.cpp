#include "radsel/talagrand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "radsel/parallel.hpp"

namespace radsel {

void FinitePointSet::validate() const {
  if (points.cols() < 1) throw std::invalid_argument("point set must be nonempty");
  for (Eigen::Index a = 0; a < points.cols(); ++a) {
    for (Eigen::Index b = a + 1; b < points.cols(); ++b) {
      if (points.col(a) == points.col(b)) {
        throw std::invalid_argument("point set must have distinct points");
      }
    }
  }
}

Eigen::MatrixXd mismatch_matrix(const Eigen::VectorXd& x, const FinitePointSet& A) {
  A.validate();
  if (x.size() != A.dimension()) {
    throw std::invalid_argument("mismatch_matrix: point dimension does not match the set");
  }
  Eigen::MatrixXd m(A.dimension(), A.size());
  for (Eigen::Index k = 0; k < A.size(); ++k) {
    for (Eigen::Index i = 0; i < A.dimension(); ++i) {
      m(i, k) = x[i] != A.points(i, k) ? 1.0 : 0.0;
    }
  }
  return m;
}

namespace {

ConvexDistanceResult member_result(Eigen::Index member, Eigen::Index set_size, Eigen::Index n) {
  ConvexDistanceResult r;
  r.value = 0.0;
  r.dual_weights = Eigen::VectorXd::Zero(set_size);
  r.dual_weights[member] = 1.0;
  r.primal_alpha = Eigen::VectorXd::Zero(n);
  r.duality_gap = 0.0;
  return r;
}

}  // namespace

// Away-step Frank-Wolfe on q(nu) = nu^T M^T M nu over the simplex, with exact
// line search (q is quadratic). The certificate is the standard Frank-Wolfe
// gap: with grad = 2 G nu, value v = sqrt(q) and primal alpha = M nu / v, the
// achievable primal objective is min_k grad_k / (2v), so
// v - primal = (2q - min_k grad_k) / (2v), driven below tol.
ConvexDistanceResult convex_distance(const Eigen::VectorXd& x, const FinitePointSet& A,
                                     double tol, long max_iterations) {
  if (!(tol > 0.0)) throw std::invalid_argument("convex_distance: tol must be positive");
  const Eigen::MatrixXd m = mismatch_matrix(x, A);
  const Eigen::Index set_size = m.cols();

  for (Eigen::Index k = 0; k < set_size; ++k) {
    if ((m.col(k).array() == 0.0).all()) {
      return member_result(k, set_size, x.size());
    }
  }

  if (set_size == 1) {
    ConvexDistanceResult r;
    r.value = m.col(0).norm();  // sqrt of the mismatch count
    r.dual_weights = Eigen::VectorXd::Ones(1);
    r.primal_alpha = m.col(0) / r.value;
    r.duality_gap = 0.0;
    return r;
  }

  const Eigen::MatrixXd gram = m.transpose() * m;

  Eigen::VectorXd nu = Eigen::VectorXd::Zero(set_size);
  Eigen::Index start = 0;
  gram.diagonal().minCoeff(&start);
  nu[start] = 1.0;

  Eigen::VectorXd gram_nu = gram.col(start);
  double q = gram(start, start);
  double gap = std::numeric_limits<double>::infinity();

  for (long iter = 1; iter <= max_iterations; ++iter) {
    // gradient / 2 is gram_nu; vertices scanned with deterministic tie-breaks
    Eigen::Index fw = 0, away = -1;
    double grad_min = std::numeric_limits<double>::infinity();
    double grad_max_support = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < set_size; ++k) {
      const double g = gram_nu[k];
      if (g < grad_min) {
        grad_min = g;
        fw = k;
      }
      if (nu[k] > 0.0 && g > grad_max_support) {
        grad_max_support = g;
        away = k;
      }
    }

    const double v = std::sqrt(std::max(q, 0.0));
    gap = (q - grad_min) / v;  // (2q - 2 grad_min/2... ) simplified: (2q - min grad)/(2v)
    if (gap <= tol) {
      ConvexDistanceResult r;
      r.value = v;
      r.dual_weights = nu;
      r.primal_alpha = (m * nu) / v;
      r.duality_gap = gap;
      r.iterations = iter - 1;
      return r;
    }

    const double gap_fw = q - grad_min;              // <grad/2, nu - e_fw>
    const double gap_away = grad_max_support - q;    // <grad/2, e_away - nu>

    Eigen::VectorXd direction;
    double gamma_max;
    bool is_away;
    if (gap_fw >= gap_away) {
      direction = -nu;
      direction[fw] += 1.0;
      gamma_max = 1.0;
      is_away = false;
    } else {
      direction = nu;
      direction[away] -= 1.0;
      gamma_max = nu[away] / (1.0 - nu[away]);
      is_away = true;
    }

    const Eigen::VectorXd gram_dir = gram * direction;
    const double curvature = direction.dot(gram_dir);
    const double slope = direction.dot(gram_nu);  // d q / d gamma at 0, halved
    double gamma;
    if (curvature > 0.0) {
      gamma = std::clamp(-slope / curvature, 0.0, gamma_max);
    } else {
      gamma = slope < 0.0 ? gamma_max : 0.0;
    }

    nu += gamma * direction;
    gram_nu += gamma * gram_dir;
    q += gamma * (2.0 * slope + gamma * curvature);
    if (is_away && gamma >= gamma_max) nu[away] = 0.0;  // drop step
    for (Eigen::Index k = 0; k < set_size; ++k) {
      if (nu[k] < 0.0) nu[k] = 0.0;
    }

    // periodic refresh against floating-point drift
    if (iter % 256 == 0) {
      nu /= nu.sum();
      gram_nu = gram * nu;
      q = nu.dot(gram_nu);
    }
  }

  ConvexDistanceResult best;
  best.value = std::sqrt(std::max(q, 0.0));
  best.dual_weights = nu;
  best.primal_alpha = best.value > 0.0 ? Eigen::VectorXd((m * nu) / best.value)
                                       : Eigen::VectorXd::Zero(x.size());
  best.duality_gap = gap;
  best.iterations = max_iterations;
  throw ConvexDistanceError("convex_distance: gap tolerance not reached within the iteration cap",
                            std::move(best));
}

double convex_distance_grid_oracle(const Eigen::VectorXd& x, const FinitePointSet& A,
                                   int grid_resolution) {
  if (A.size() > 4) throw std::invalid_argument("grid oracle supports |A| <= 4");
  if (grid_resolution < 1) throw std::invalid_argument("grid resolution must be positive");
  const Eigen::MatrixXd m = mismatch_matrix(x, A);
  const Eigen::MatrixXd gram = m.transpose() * m;
  const int res = grid_resolution;
  const Eigen::Index set_size = A.size();

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd nu(set_size);
  std::vector<int> counts(static_cast<std::size_t>(set_size), 0);

  // enumerate compositions of `res` into |A| parts
  const auto evaluate = [&]() {
    for (Eigen::Index k = 0; k < set_size; ++k) {
      nu[k] = static_cast<double>(counts[static_cast<std::size_t>(k)]) / res;
    }
    best = std::min(best, nu.dot(gram * nu));
  };
  if (set_size == 1) {
    counts[0] = res;
    evaluate();
  } else if (set_size == 2) {
    for (int a = 0; a <= res; ++a) {
      counts[0] = a;
      counts[1] = res - a;
      evaluate();
    }
  } else if (set_size == 3) {
    for (int a = 0; a <= res; ++a) {
      for (int b = 0; b <= res - a; ++b) {
        counts[0] = a;
        counts[1] = b;
        counts[2] = res - a - b;
        evaluate();
      }
    }
  } else {
    for (int a = 0; a <= res; ++a) {
      for (int b = 0; b <= res - a; ++b) {
        for (int c = 0; c <= res - a - b; ++c) {
          counts[0] = a;
          counts[1] = b;
          counts[2] = c;
          counts[3] = res - a - b - c;
          evaluate();
        }
      }
    }
  }
  return std::sqrt(std::max(best, 0.0));
}

double grid_oracle_modulus(const Eigen::VectorXd& x, const FinitePointSet& A,
                           int grid_resolution) {
  const Eigen::MatrixXd m = mismatch_matrix(x, A);
  // |f(nu) - f(nu')| <= |M|_2 |nu - nu'|_2 and sum-preserving rounding keeps
  // every coordinate within 1/res of the optimum.
  return m.norm() * std::sqrt(static_cast<double>(A.size())) / grid_resolution;
}

Eigen::VectorXd cube_point(std::uint64_t pattern, int n) {
  Eigen::VectorXd x(n);
  for (int i = 0; i < n; ++i) {
    x[i] = (pattern >> i) & 1u ? 1.0 : -1.0;
  }
  return x;
}

CubeInequalityReport verify_convex_distance_inequality(const FinitePointSet& A, int n,
                                                       std::span<const double> t_grid,
                                                       double tol, int workers) {
  if (n < 1 || n > 14) {
    throw std::invalid_argument("cube verification supports 1 <= n <= 14");
  }
  A.validate();
  if (A.dimension() != n) throw std::invalid_argument("point set dimension must equal n");
  for (Eigen::Index k = 0; k < A.size(); ++k) {
    if (!is_sign_vector(A.points.col(k))) {
      throw std::invalid_argument("point set must consist of sign vectors");
    }
  }

  CubeInequalityReport report;
  report.n = n;
  report.cube_size = std::int64_t{1} << n;
  report.count_A = A.size();
  report.distances.resize(static_cast<std::size_t>(report.cube_size));

  run_indexed(report.cube_size, workers, [&](std::ptrdiff_t i) {
    const Eigen::VectorXd x = cube_point(static_cast<std::uint64_t>(i), n);
    report.distances[static_cast<std::size_t>(i)] = convex_distance(x, A, tol).value;
  });

  double sum = 0.0;
  for (double d : report.distances) sum += d;
  report.mean_distance = sum / static_cast<double>(report.cube_size);

  const double cube = static_cast<double>(report.cube_size);
  for (double t : t_grid) {
    CubeInequalityRow row;
    row.t = t;
    std::int64_t tail = 0;
    for (double d : report.distances) {
      if (d >= t) ++tail;  // certified upper values: over-counts the tail
    }
    row.tail_count = tail;
    row.product = (static_cast<double>(report.count_A) / cube) * (static_cast<double>(tail) / cube);
    row.bound = std::exp(-t * t / 4.0);
    row.pass = row.product <= row.bound;
    report.all_pass = report.all_pass && row.pass;
    report.rows.push_back(row);
  }

  for (double t : t_grid) {
    MeanConcentrationRow row;
    row.t = t;
    for (double d : report.distances) {
      if (d >= report.mean_distance + t) ++row.upper_count;
      if (d <= report.mean_distance - t) ++row.lower_count;
    }
    row.upper_prob = static_cast<double>(row.upper_count) / cube;
    row.lower_prob = static_cast<double>(row.lower_count) / cube;
    row.bound = std::exp(-t * t / 2.0);
    row.pass = row.upper_prob <= row.bound && row.lower_prob <= row.bound;
    report.all_pass = report.all_pass && row.pass;
    report.mean_rows.push_back(row);
  }

  return report;
}

FinitePointSet singleton_all_ones(int n) {
  FinitePointSet set;
  set.points = Eigen::MatrixXd::Ones(n, 1);
  return set;
}

FinitePointSet hamming_ball_all_ones(int n, int radius) {
  if (radius < 0 || radius > n) throw std::invalid_argument("hamming ball radius out of range");
  std::vector<std::uint64_t> patterns;
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t p = 0; p <= all; ++p) {
    if (std::popcount(all ^ p) <= radius) patterns.push_back(p);
  }
  FinitePointSet set;
  set.points.resize(n, static_cast<Eigen::Index>(patterns.size()));
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    set.points.col(static_cast<Eigen::Index>(k)) = cube_point(patterns[k], n);
  }
  return set;
}

FinitePointSet random_cube_subset(int n, int size, Seed seed) {
  if (size < 1 || static_cast<std::int64_t>(size) > (std::int64_t{1} << n)) {
    throw std::invalid_argument("random cube subset size out of range");
  }
  RandomStream stream(seed);
  std::unordered_set<std::uint64_t> chosen;
  std::vector<std::uint64_t> order;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  while (order.size() < static_cast<std::size_t>(size)) {
    const std::uint64_t p = stream.word() & mask;
    if (chosen.insert(p).second) order.push_back(p);
  }
  FinitePointSet set;
  set.points.resize(n, size);
  for (int k = 0; k < size; ++k) {
    set.points.col(k) = cube_point(order[static_cast<std::size_t>(k)], n);
  }
  return set;
}

}  // namespace radsel
