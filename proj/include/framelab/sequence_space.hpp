#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/matrix.hpp"
#include "framelab/scalar.hpp"

namespace framelab {

/// Weighted l^p coefficient space: ||c|| = (sum_i w_i |c_i|^p)^{1/p}, 1 < p < inf.
/// Weights default to 1. A weight list shorter than the vector is padded
/// with ones; a weight function covers every index.
class SequenceSpaceSpec {
 public:
  using WeightFn = std::function<double(std::size_t)>;

  explicit SequenceSpaceSpec(double p = 2.0) : p_(p) { validate_exponent(); }

  SequenceSpaceSpec(double p, std::vector<double> weights) : p_(p), weight_list_(std::move(weights)) {
    validate_exponent();
    for (double w : weight_list_) {
      if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::invalid_spec, "weights must be positive and finite");
    }
  }

  SequenceSpaceSpec(double p, WeightFn weights) : p_(p), weight_fn_(std::move(weights)) { validate_exponent(); }

  double p() const noexcept { return p_; }
  /// Conjugate exponent q with 1/p + 1/q = 1.
  double q() const noexcept { return p_ / (p_ - 1.0); }
  bool weighted() const noexcept { return !weight_list_.empty() || static_cast<bool>(weight_fn_); }
  bool is_hilbert() const noexcept { return p_ == 2.0 && !weighted(); }

  /// Weight of 0-based coordinate i; throws invalid-spec for a nonpositive value.
  double weight(std::size_t i) const {
    double w = 1.0;
    if (weight_fn_) {
      w = weight_fn_(i);
    } else if (i < weight_list_.size()) {
      w = weight_list_[i];
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::invalid_spec, "nonpositive weight at coordinate " + std::to_string(i + 1));
    }
    return w;
  }

  /// The dual space: exponent q and weights w_i^{1-q}, so that the pairing
  /// sum a_i b_i is the duality between the two norms.
  SequenceSpaceSpec dual() const {
    const double qq = q();
    if (!weighted()) return SequenceSpaceSpec(qq);
    SequenceSpaceSpec self = *this;
    return SequenceSpaceSpec(qq, WeightFn([self, qq](std::size_t i) { return std::pow(self.weight(i), 1.0 - qq); }));
  }

  std::string describe() const {
    std::string s = "l^" + format_exponent(p_);
    if (weighted()) s += " (weighted)";
    return s;
  }

 private:
  static std::string format_exponent(double p) {
    if (p == std::floor(p) && p < 1e9) return std::to_string(static_cast<long long>(p));
    return std::to_string(p);
  }

  void validate_exponent() const {
    if (!(p_ > 1.0) || !std::isfinite(p_)) throw Error(ErrorKind::invalid_spec, "exponent p must satisfy 1 < p < inf");
  }

  double p_;
  std::vector<double> weight_list_;
  WeightFn weight_fn_;
};

namespace detail {

inline std::optional<unsigned> integral_exponent(double p) {
  if (p == std::floor(p) && p <= 64.0) return static_cast<unsigned>(p);
  return std::nullopt;
}

inline std::optional<Rational> exact_weight(double w) {
  if (w == std::floor(w) && w < 1e15) return Rational(static_cast<long long>(w));
  return std::nullopt;
}

}  // namespace detail

/// sum_i w_i |v_i|^p, kept exact for exact input when p is an integer and the
/// weights used are integers. nullopt when the exact route does not apply.
inline std::optional<Rational> pnorm_power_exact(const Vec& v, const SequenceSpaceSpec& spec) {
  const auto k = detail::integral_exponent(spec.p());
  if (!k || !v.is_exact()) return std::nullopt;
  Rational acc(0);
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const auto w = detail::exact_weight(spec.weight(i));
    if (!w) return std::nullopt;
    if (v[i].is_zero()) continue;
    acc += *w * pow(abs(v[i]), static_cast<int>(*k)).exact();
  }
  return acc;
}

/// (sum_i w_i |v_i|^p)^{1/p}. The result is exact when the input is exact,
/// p is an integer, the weights used are integers and the p-th root of the
/// power sum is itself rational; otherwise it is a double.
inline Scalar pnorm(const Vec& v, const SequenceSpaceSpec& spec) {
  if (auto power = pnorm_power_exact(v, spec)) {
    if (auto root = exact_root(*power, *detail::integral_exponent(spec.p()))) return Scalar(*root);
  }
  if (v.is_exact()) {
    // One nonzero coordinate of unit weight: the norm is |v_i| for every p.
    std::size_t nonzero = 0;
    std::size_t where = 0;
    for (std::size_t i = 0; i < v.dim(); ++i)
      if (!v[i].is_zero()) ++nonzero, where = i;
    if (nonzero == 0) return Scalar(Rational(0));
    if (nonzero == 1 && spec.weight(where) == 1.0) return abs(v[where]);
  }
  const double p = spec.p();
  double scale = 0.0;
  std::vector<double> scaled(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) {
    scaled[i] = std::abs(v[i].to_double()) * std::pow(spec.weight(i), 1.0 / p);
    scale = std::max(scale, scaled[i]);
  }
  if (scale == 0.0) return Scalar(0.0);
  if (!std::isfinite(scale)) return Scalar(std::numeric_limits<double>::infinity());
  double acc = 0.0;
  for (double s : scaled) acc += std::pow(s / scale, p);
  return Scalar(scale * std::pow(acc, 1.0 / p));
}

inline double pnorm_value(const Vec& v, const SequenceSpaceSpec& spec) { return pnorm(v, spec).to_double(); }

}  // namespace framelab
