#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "framelab/framelab.hpp"

namespace framelab::testing {

inline Scalar random_rational(std::mt19937_64& rng, long long range = 9, long long max_den = 7) {
  std::uniform_int_distribution<long long> num(-range, range);
  std::uniform_int_distribution<long long> den(1, max_den);
  return Scalar::ratio(num(rng), den(rng));
}

inline Vec random_rational_vec(std::mt19937_64& rng, std::size_t dim) {
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = random_rational(rng);
  return v;
}

inline LinearMapMatrix random_rational_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  LinearMapMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = random_rational(rng);
  return m;
}

inline Eigen::MatrixXd random_gaussian(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = g(rng);
  return m;
}

/// Random n x m analysis matrix with m <= n, n <= max_n, m <= max_m.
inline Eigen::MatrixXd random_frame(std::mt19937_64& rng, std::size_t max_n = 6, std::size_t max_m = 4) {
  std::uniform_int_distribution<std::size_t> mdist(1, max_m);
  const std::size_t m = mdist(rng);
  std::uniform_int_distribution<std::size_t> ndist(m, max_n);
  return random_gaussian(rng, ndist(rng), m);
}

/// Rank-deficient r x c matrix of the given rank.
inline Eigen::MatrixXd random_of_rank(std::mt19937_64& rng, std::size_t rows, std::size_t cols, std::size_t rank) {
  if (rank == 0) return Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  return random_gaussian(rng, rows, rank) * random_gaussian(rng, rank, cols);
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXd& m) { return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues(); }

}  // namespace framelab::testing
