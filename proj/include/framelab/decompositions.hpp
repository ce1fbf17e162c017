#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include <Eigen/SVD>

#include "framelab/matrix.hpp"

namespace framelab {

/// Relative rank tolerance: sigma_i counts toward the rank when
/// sigma_i > kRankTolerance * sigma_max.
inline constexpr double kRankTolerance = 1e-10;

struct SvdTriplet {
  double sigma_min = 0.0;  ///< smallest singular value above the rank tolerance
  double sigma_max = 0.0;
  std::size_t rank = 0;
  std::vector<double> singular_values;  ///< all min(rows, cols) values, descending

  /// The min(rows, cols)-th singular value, zero included.
  double smallest() const { return singular_values.empty() ? 0.0 : singular_values.back(); }
};

inline SvdTriplet svd_triplet(const LinearMapMatrix& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.to_eigen());
  const Eigen::VectorXd& s = svd.singularValues();
  SvdTriplet out;
  out.singular_values.assign(s.data(), s.data() + s.size());
  out.sigma_max = s.size() > 0 ? s(0) : 0.0;
  const double cutoff = kRankTolerance * out.sigma_max;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      ++out.rank;
      out.sigma_min = s(i);
    }
  }
  return out;
}

/// Moore-Penrose inverse through a thin SVD, discarding singular values at or
/// below the relative rank tolerance.
inline LinearMapMatrix pseudoinverse_svd(const LinearMapMatrix& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.to_eigen(), Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? kRankTolerance * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  const Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  return LinearMapMatrix::from_eigen(pinv);
}

/// Exact rank factorization for all-rational input, SVD otherwise.
inline LinearMapMatrix pseudoinverse(const LinearMapMatrix& m) {
  return m.is_exact() ? pseudoinverse_exact(m) : pseudoinverse_svd(m);
}

/// Exact rank for exact matrices, tolerance rank otherwise.
inline std::size_t rank_of(const LinearMapMatrix& m) {
  return m.is_exact() ? exact_rank(m) : svd_triplet(m).rank;
}

struct SingularPair {
  double value = 0.0;
  Eigen::VectorXd right;  ///< unit right singular vector
};

/// Smallest singular value over the orthogonal complement of the kernel
/// (the smallest nonzero one), with its right singular vector. A zero matrix
/// yields value 0 and the first basis vector.
inline SingularPair smallest_nonzero_singular_pair(const LinearMapMatrix& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.to_eigen(), Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  SingularPair out;
  out.right = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m.cols()));
  out.right(0) = 1.0;
  const double cutoff = s.size() > 0 ? kRankTolerance * s(0) : 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > cutoff && s(i) > 0.0) {
      out.value = s(i);
      out.right = svd.matrixV().col(i);
    }
  }
  return out;
}

/// Smallest singular value counting the kernel, i.e. min ||Mx|| / ||x|| over
/// all x, with a minimizing unit vector.
inline SingularPair smallest_singular_pair(const LinearMapMatrix& m) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.to_eigen(), Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  SingularPair out;
  const auto n = static_cast<Eigen::Index>(m.cols());
  if (s.size() < n) {
    out.value = 0.0;
    out.right = svd.matrixV().col(n - 1);
  } else {
    out.value = s(n - 1);
    out.right = svd.matrixV().col(n - 1);
  }
  return out;
}

}  // namespace framelab
