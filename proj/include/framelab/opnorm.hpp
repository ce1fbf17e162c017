#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "framelab/decompositions.hpp"
#include "framelab/errors.hpp"
#include "framelab/matrix.hpp"
#include "framelab/sequence_space.hpp"

namespace framelab {

enum class NormMode { oracle, heuristic };

/// Maximum number of columns the grid oracle accepts.
inline constexpr std::size_t kOracleMaxCols = 4;

/// lower <= true value <= upper.
struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  double width() const { return upper - lower; }
};

/// Brackets for the extreme stretches min / max of ||Mx||_to / ||x||_from.
struct SphereExtremes {
  Bracket min;
  Bracket max;
  Eigen::VectorXd argmin;  ///< best minimizing direction found, unit in ||.||_from
  Eigen::VectorXd argmax;
  bool certified = false;
  std::string method;
};

namespace detail {

inline double plain_pnorm(const Eigen::VectorXd& v, double p) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v(i)) / scale, p);
  return scale * std::pow(acc, 1.0 / p);
}

/// Folds diagonal weights into the matrix so both norms become plain l^p:
/// ||x||_{p,w} = ||D_w^{1/p} x||_p.
inline Eigen::MatrixXd weighted_operator(const LinearMapMatrix& m, const SequenceSpaceSpec& from,
                                         const SequenceSpaceSpec& to) {
  Eigen::MatrixXd a = m.to_eigen();
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    a.row(r) *= std::pow(to.weight(static_cast<std::size_t>(r)), 1.0 / to.p());
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    a.col(c) /= std::pow(from.weight(static_cast<std::size_t>(c)), 1.0 / from.p());
  return a;
}

inline Eigen::VectorXd unweight_direction(Eigen::VectorXd x, const SequenceSpaceSpec& from) {
  for (Eigen::Index c = 0; c < x.size(); ++c)
    x(c) /= std::pow(from.weight(static_cast<std::size_t>(c)), 1.0 / from.p());
  return x;
}

/// Maps a direction d of the plain-norm picture back to x = D^{-1/p} d and
/// scales it to unit weighted norm.
inline Eigen::VectorXd unit_direction(const Eigen::VectorXd& d, const SequenceSpaceSpec& from) {
  return unweight_direction(d, from) / plain_pnorm(d, from.p());
}

struct RatioFn {
  const Eigen::MatrixXd& a;
  double p_from;
  double p_to;
  double operator()(const Eigen::VectorXd& x) const {
    const double den = plain_pnorm(x, p_from);
    if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return plain_pnorm(a * x, p_to) / den;
  }
};

/// Compass search on the scale-invariant ratio. sign = +1 maximizes, -1 minimizes.
inline Eigen::VectorXd compass_polish(const RatioFn& f, Eigen::VectorXd x, double step, int sign) {
  x /= x.cwiseAbs().maxCoeff();
  double best = sign * f(x);
  while (step > 1e-13) {
    bool improved = false;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      for (double dir : {1.0, -1.0}) {
        Eigen::VectorXd y = x;
        y(j) += dir * step;
        const double scale = y.cwiseAbs().maxCoeff();
        if (scale == 0.0) continue;
        y /= scale;
        const double val = sign * f(y);
        if (std::isfinite(val) && val > best) {
          best = val;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

/// Equivalence constant c with ||v||_a <= c ||v||_b in R^d.
inline double norm_equivalence(std::size_t d, double a, double b) {
  return std::pow(static_cast<double>(d), std::max(0.0, 1.0 / a - 1.0 / b));
}

/// Rigorous upper bound on max ||Ax||_q / ||x||_p from Holder's inequality
/// applied row-wise and column-wise, and from the spectral norm.
inline double analytic_upper(const Eigen::MatrixXd& a, double p, double q) {
  const double pc = p / (p - 1.0);
  double rows_bound = 0.0;
  {
    Eigen::VectorXd row_norms(a.rows());
    for (Eigen::Index r = 0; r < a.rows(); ++r) row_norms(r) = plain_pnorm(a.row(r).transpose(), pc);
    rows_bound = plain_pnorm(row_norms, q);
  }
  double cols_bound = 0.0;
  {
    Eigen::VectorXd col_norms(a.cols());
    for (Eigen::Index c = 0; c < a.cols(); ++c) col_norms(c) = plain_pnorm(a.col(c), q);
    cols_bound = plain_pnorm(col_norms, pc);
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double spectral = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double spectral_bound = spectral * norm_equivalence(static_cast<std::size_t>(a.rows()), q, 2.0) *
                                norm_equivalence(static_cast<std::size_t>(a.cols()), 2.0, p);
  double bound = std::min({rows_bound, cols_bound, spectral_bound});
  if (p == q) {
    // Riesz-Thorin between the 1 -> 1 and inf -> inf norms.
    const double one = a.cwiseAbs().colwise().sum().maxCoeff();
    const double inf = a.cwiseAbs().rowwise().sum().maxCoeff();
    bound = std::min(bound, std::pow(one, 1.0 / p) * std::pow(inf, 1.0 - 1.0 / p));
  }
  return bound;
}

/// Rigorous lower bound on min ||Ax||_q / ||x||_p from the smallest singular value.
inline double analytic_lower_of_min(const Eigen::MatrixXd& a, double p, double q) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& s = svd.singularValues();
  if (s.size() < a.cols()) return 0.0;
  const double smallest = s(s.size() - 1);
  const double via_spectrum = smallest / (norm_equivalence(static_cast<std::size_t>(a.rows()), 2.0, q) *
                                          norm_equivalence(static_cast<std::size_t>(a.cols()), p, 2.0));
  if (smallest <= kRankTolerance * s(0)) return via_spectrum;
  // x = A^+ A x, so ||x||_p <= ||A^+||_{q -> p} ||A x||_q.
  const Eigen::MatrixXd left_inverse = a.completeOrthogonalDecomposition().pseudoInverse();
  return std::max(via_spectrum, 1.0 / analytic_upper(left_inverse, q, p));
}

/// Number of grid points per free coordinate so that the whole grid stays
/// within `budget` ratio evaluations.
inline std::size_t grid_points_per_axis(std::size_t n, std::size_t budget) {
  if (n <= 1) return 1;
  const double per_face = static_cast<double>(budget) / static_cast<double>(n);
  auto k = static_cast<std::size_t>(std::floor(std::pow(per_face, 1.0 / static_cast<double>(n - 1))));
  return std::max<std::size_t>(k, 3);
}

}  // namespace detail

/// Grid oracle over the unit sphere of ||.||_from, always run (no shortcut).
///
/// Directions are sampled on the faces {x_j = 1} of the l^inf unit cube with
/// spacing h. Every direction has a representative on some face within
/// eps = (n-1)^{1/p} h / 2 in l^p of a grid point, and ||x||_p >= 1 there, so
/// with G the best grid value and N the true norm
///   N <= G (1 + eps) / (1 - eps),   min >= G_min - (G_min + N) eps.
/// The grid winners are then polished by compass search, which only moves the
/// realized (inner) side of each bracket.
inline SphereExtremes sphere_extremes_grid(const LinearMapMatrix& m, const SequenceSpaceSpec& from,
                                           const SequenceSpaceSpec& to, std::size_t budget = 400000) {
  const std::size_t n = m.cols();
  if (n > kOracleMaxCols) {
    throw Error(ErrorKind::oracle_dimension_exceeded,
                "oracle needs at most " + std::to_string(kOracleMaxCols) + " columns, got " + std::to_string(n));
  }
  const Eigen::MatrixXd a = detail::weighted_operator(m, from, to);
  const detail::RatioFn ratio{a, from.p(), to.p()};

  const std::size_t k = detail::grid_points_per_axis(n, budget);
  const double h = k > 1 ? 2.0 / static_cast<double>(k - 1) : 0.0;
  double g_max = -1.0;
  double g_min = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_max = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd best_min = best_max;

  std::vector<std::size_t> counter(n > 0 ? n - 1 : 0, 0);
  Eigen::VectorXd x(static_cast<Eigen::Index>(n));
  for (std::size_t face = 0; face < n; ++face) {
    std::fill(counter.begin(), counter.end(), 0);
    while (true) {
      std::size_t free_idx = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == face) {
          x(static_cast<Eigen::Index>(j)) = 1.0;
        } else {
          x(static_cast<Eigen::Index>(j)) = -1.0 + h * static_cast<double>(counter[free_idx++]);
        }
      }
      const double v = ratio(x);
      if (v > g_max) {
        g_max = v;
        best_max = x;
      }
      if (v < g_min) {
        g_min = v;
        best_min = x;
      }
      std::size_t pos = 0;
      while (pos < counter.size() && ++counter[pos] == k) counter[pos++] = 0;
      if (pos == counter.size()) break;
    }
  }

  const double eps = n > 1 ? std::pow(static_cast<double>(n - 1), 1.0 / from.p()) * h / 2.0 : 0.0;
  SphereExtremes out;
  out.method = "grid-oracle";
  const double analytic = detail::analytic_upper(a, from.p(), to.p());
  double upper_max = analytic;
  if (eps < 1.0) upper_max = std::min(upper_max, g_max * (1.0 + eps) / (1.0 - eps));

  const Eigen::VectorXd polished_max = detail::compass_polish(ratio, best_max, std::max(h, 1e-3), +1);
  const Eigen::VectorXd polished_min = detail::compass_polish(ratio, best_min, std::max(h, 1e-3), -1);
  const double lower_max = std::max(g_max, ratio(polished_max));
  const double upper_min = std::min(g_min, ratio(polished_min));
  upper_max = std::max(upper_max, lower_max);

  const double lower_min = std::max({0.0, g_min - (g_min + upper_max) * eps,
                                     detail::analytic_lower_of_min(a, from.p(), to.p())});

  out.max = {lower_max, upper_max};
  out.min = {std::min(lower_min, upper_min), upper_min};
  out.argmax = detail::unit_direction(ratio(polished_max) >= g_max ? polished_max : best_max, from);
  out.argmin = detail::unit_direction(ratio(polished_min) <= g_min ? polished_min : best_min, from);
  out.certified = true;
  return out;
}

/// Random-restart compass search with analytic outer bounds. Not certified in
/// the sense of a tight bracket, but every number returned is still a valid
/// bound.
inline SphereExtremes sphere_extremes_heuristic(const LinearMapMatrix& m, const SequenceSpaceSpec& from,
                                                const SequenceSpaceSpec& to, std::uint64_t seed = 0x5eed,
                                                std::size_t starts = 32) {
  const Eigen::MatrixXd a = detail::weighted_operator(m, from, to);
  const detail::RatioFn ratio{a, from.p(), to.p()};
  const auto n = static_cast<Eigen::Index>(m.cols());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double best_max = -1.0;
  double best_min = std::numeric_limits<double>::infinity();
  Eigen::VectorXd arg_max = Eigen::VectorXd::Unit(n, 0);
  Eigen::VectorXd arg_min = arg_max;
  auto consider = [&](const Eigen::VectorXd& start) {
    if (start.cwiseAbs().maxCoeff() == 0.0) return;
    const Eigen::VectorXd up = detail::compass_polish(ratio, start, 0.25, +1);
    const Eigen::VectorXd down = detail::compass_polish(ratio, start, 0.25, -1);
    if (const double v = ratio(up); v > best_max) {
      best_max = v;
      arg_max = up;
    }
    if (const double v = ratio(down); v < best_min) {
      best_min = v;
      arg_min = down;
    }
  };
  for (Eigen::Index j = 0; j < n; ++j) consider(Eigen::VectorXd::Unit(n, j));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  consider(svd.matrixV().col(0));
  consider(svd.matrixV().col(n - 1));
  for (std::size_t s = 0; s < starts; ++s) {
    Eigen::VectorXd x(n);
    for (Eigen::Index j = 0; j < n; ++j) x(j) = gauss(rng);
    consider(x);
  }

  SphereExtremes out;
  out.method = "heuristic-ascent";
  out.certified = false;
  const double upper = std::max(detail::analytic_upper(a, from.p(), to.p()), best_max);
  out.max = {best_max, upper};
  out.min = {std::min(detail::analytic_lower_of_min(a, from.p(), to.p()), best_min), best_min};
  out.argmax = detail::unit_direction(arg_max, from);
  out.argmin = detail::unit_direction(arg_min, from);
  return out;
}

/// Extreme stretches of m between two weighted l^p spaces. Both exponents 2
/// is solved exactly by an SVD of the weighted operator; otherwise the grid
/// oracle (cols <= 4) or the heuristic runs according to `mode`.
inline SphereExtremes sphere_extremes(const LinearMapMatrix& m, const SequenceSpaceSpec& from,
                                      const SequenceSpaceSpec& to, NormMode mode, std::uint64_t seed = 0x5eed) {
  if (mode == NormMode::oracle && m.cols() > kOracleMaxCols) {
    throw Error(ErrorKind::oracle_dimension_exceeded,
                "oracle needs at most " + std::to_string(kOracleMaxCols) + " columns, got " + std::to_string(m.cols()));
  }
  if (from.p() == 2.0 && to.p() == 2.0) {
    const Eigen::MatrixXd a = detail::weighted_operator(m, from, to);
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const auto n = a.cols();
    SphereExtremes out;
    out.method = "svd";
    out.certified = true;
    const double smax = s.size() ? s(0) : 0.0;
    const double smin = s.size() < n ? 0.0 : s(n - 1);
    out.max = {smax, smax};
    out.min = {smin, smin};
    out.argmax = detail::unit_direction(svd.matrixV().col(0), from);
    out.argmin = detail::unit_direction(svd.matrixV().col(n - 1), from);
    return out;
  }
  if (mode == NormMode::oracle) return sphere_extremes_grid(m, from, to);
  return sphere_extremes_heuristic(m, from, to, seed);
}

/// ||m||_{from -> to} as a bracket.
inline Bracket pq_opnorm(const LinearMapMatrix& m, const SequenceSpaceSpec& from, const SequenceSpaceSpec& to,
                         NormMode mode, std::uint64_t seed = 0x5eed) {
  if (mode == NormMode::oracle && m.cols() > kOracleMaxCols) {
    throw Error(ErrorKind::oracle_dimension_exceeded,
                "oracle needs at most " + std::to_string(kOracleMaxCols) + " columns, got " + std::to_string(m.cols()));
  }
  return sphere_extremes(m, from, to, mode, seed).max;
}

}  // namespace framelab
