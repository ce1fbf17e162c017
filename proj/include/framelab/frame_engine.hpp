#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "framelab/decompositions.hpp"
#include "framelab/errors.hpp"
#include "framelab/matrix.hpp"
#include "framelab/opnorm.hpp"
#include "framelab/sequence_space.hpp"
#include "framelab/sequences.hpp"

namespace framelab {

/// Hilbert frames use squared bounds (A ||h||^2 <= sum |<h, g_i>|^2), X_d
/// frames unsquared ones (A ||f|| <= ||(g_i(f))||). Every report says which.
enum class BoundConvention { hilbert_squared, xd_unsquared };

inline std::string_view to_string(BoundConvention c) {
  return c == BoundConvention::hilbert_squared ? "hilbert-squared" : "xd-unsquared";
}

struct BoundsReport {
  double A = 0.0;
  double B = 0.0;
  BoundConvention convention = BoundConvention::xd_unsquared;
  bool certified = false;
  std::string method;
  std::optional<TruncationLevel> level;
  std::size_t rank = 0;         ///< rank of the truncated operator
  bool spans_ambient = false;   ///< rank equals the ambient truncation m
  double p = 2.0;

  /// 0 <= A <= B, hilbert-squared only at p = 2.
  bool consistent() const {
    if (!(A >= 0.0) || !(A <= B)) return false;
    if (convention == BoundConvention::hilbert_squared && p != 2.0) return false;
    return true;
  }
};

enum class Tri { yes, no, undetermined };

inline std::string_view to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::undetermined: return "undetermined";
  }
  return "undetermined";
}

struct Classification {
  Tri bessel = Tri::undetermined;
  Tri lower_condition = Tri::undetermined;
  Tri xd_frame = Tri::undetermined;
  Tri banach_frame = Tri::undetermined;
  Tri riesz_basis = Tri::undetermined;
  std::map<std::string, double> certificates;
  std::optional<double> lambda;

  /// xd_frame = yes implies bessel = yes and lower_condition = yes.
  bool consistent() const {
    if (xd_frame == Tri::yes && (bessel != Tri::yes || lower_condition != Tri::yes)) return false;
    if (banach_frame == Tri::yes && xd_frame != Tri::yes) return false;
    return true;
  }
};

/// Grey zone for rank decisions on floating point input: sigma / sigma_max in
/// [kGreyLow, kGreyHigh] is reported undetermined.
inline constexpr double kGreyLow = 1e-12;
inline constexpr double kGreyHigh = 1e-8;

namespace detail {

inline SequenceSpaceSpec ambient_for(const SequenceSpaceSpec& spec) { return SequenceSpaceSpec(spec.p()); }

inline Tri grey_decision(double sigma, double sigma_max) {
  if (sigma_max <= 0.0) return Tri::no;
  const double ratio = sigma / sigma_max;
  if (ratio > kGreyHigh) return Tri::yes;
  if (ratio < kGreyLow) return Tri::no;
  return Tri::undetermined;
}

inline NormMode default_mode(std::size_t cols) { return cols <= kOracleMaxCols ? NormMode::oracle : NormMode::heuristic; }

}  // namespace detail

/// U_G f = (<g_i, f>)_{i <= n}. f lives in the ambient truncation.
inline Vec analysis(const FrameSystem& fs, const Vec& f, std::size_t n_terms) {
  if (fs.is_dense()) {
    if (f.dim() != fs.dense().cols())
      throw Error(ErrorKind::dimension_mismatch, "vector has dimension " + std::to_string(f.dim()) +
                                                     ", system lives in dimension " + std::to_string(fs.dense().cols()));
    if (n_terms > fs.dense().rows())
      throw Error(ErrorKind::dimension_mismatch, "dense system has only " + std::to_string(fs.dense().rows()) + " terms");
  }
  Vec out(n_terms);
  for (std::size_t i = 1; i <= n_terms; ++i) out[i - 1] = fs.term(i).dot(f);
  return out;
}

/// T_G c = sum_i c_i g_i restricted to coordinates 1..m.
inline Vec synthesis(const FrameSystem& fs, const Vec& c, std::size_t m_dims) {
  if (fs.is_dense()) {
    if (c.dim() > fs.dense().rows())
      throw Error(ErrorKind::dimension_mismatch, "more coefficients than terms in a dense system");
    if (m_dims != fs.dense().cols())
      throw Error(ErrorKind::dimension_mismatch, "dense system lives in dimension " + std::to_string(fs.dense().cols()));
  }
  Vec out(m_dims);
  for (std::size_t i = 1; i <= c.dim(); ++i) {
    if (c[i - 1].is_zero()) continue;
    const SparseVec term = fs.term(i);
    for (const auto& [idx, value] : term.entries())
      if (idx <= m_dims) out[idx - 1] += c[i - 1] * value;
  }
  return out;
}

/// S = sum_{i <= n} g_i g_i^T on m coordinates.
inline LinearMapMatrix frame_operator(const FrameSystem& fs, std::size_t n, std::size_t m) {
  const LinearMapMatrix u = materialize(fs, n, m);
  return u.transpose() * u;
}

/// Squared bounds on the span of the truncated vectors: A is the smallest
/// nonzero eigenvalue of S, B the largest. When the truncation spans the
/// ambient coordinates (spans_ambient) A is lambda_min(S) itself.
inline BoundsReport hilbert_frame_bounds(const FrameSystem& fs, std::size_t n, std::size_t m) {
  const LinearMapMatrix u = materialize(fs, n, m);
  const SvdTriplet t = svd_triplet(u);
  BoundsReport r;
  r.convention = BoundConvention::hilbert_squared;
  r.A = t.sigma_min * t.sigma_min;
  r.B = t.sigma_max * t.sigma_max;
  r.certified = true;
  r.method = "svd";
  r.level = TruncationLevel{n, m};
  r.rank = rank_of(u);
  r.spans_ambient = r.rank == m;
  r.p = 2.0;
  return r;
}

/// Unsquared bounds A ||f|| <= ||U f||_{X_d} <= B ||f|| with f measured in
/// plain l^p of the same exponent. At p = 2 the bounds are singular values
/// (on the span, as for hilbert_frame_bounds); otherwise the sphere oracle or
/// heuristic supplies certified outer values A = lower(min), B = upper(max).
inline BoundsReport xd_frame_bounds(const FrameSystem& fs, const SequenceSpaceSpec& spec, std::size_t n,
                                    std::size_t m, NormMode mode) {
  if (mode == NormMode::oracle && m > kOracleMaxCols)
    throw Error(ErrorKind::oracle_dimension_exceeded, "oracle needs m <= 4, got m = " + std::to_string(m));
  const LinearMapMatrix u = materialize(fs, n, m);
  BoundsReport r;
  r.convention = BoundConvention::xd_unsquared;
  r.level = TruncationLevel{n, m};
  r.rank = rank_of(u);
  r.spans_ambient = r.rank == m;
  r.p = spec.p();
  if (spec.p() == 2.0) {
    const LinearMapMatrix weighted = LinearMapMatrix::from_eigen(detail::weighted_operator(u, detail::ambient_for(spec), spec));
    const SvdTriplet t = svd_triplet(weighted);
    r.A = t.sigma_min;
    r.B = t.sigma_max;
    r.certified = true;
    r.method = "svd";
    return r;
  }
  const SphereExtremes e = sphere_extremes(u, detail::ambient_for(spec), spec, mode);
  r.A = e.min.lower;
  r.B = e.max.upper;
  r.certified = e.certified;
  r.method = e.method;
  return r;
}

/// Synthesis stretches A ||c||_{X_d} <= ||sum c_i g_i|| <= B ||c||_{X_d} over
/// all c (a kernel gives A = 0).
inline BoundsReport riesz_bounds(const FrameSystem& fs, const SequenceSpaceSpec& spec, std::size_t n, std::size_t m,
                                 NormMode mode) {
  if (mode == NormMode::oracle && n > kOracleMaxCols)
    throw Error(ErrorKind::oracle_dimension_exceeded, "oracle needs n <= 4, got n = " + std::to_string(n));
  const LinearMapMatrix t = materialize(fs, n, m).transpose();
  const SphereExtremes e = sphere_extremes(t, spec, detail::ambient_for(spec), mode);
  BoundsReport r;
  r.convention = BoundConvention::xd_unsquared;
  r.A = e.min.lower;
  r.B = e.max.upper;
  r.certified = e.certified;
  r.method = e.method;
  r.level = TruncationLevel{n, m};
  r.rank = rank_of(t);
  r.spans_ambient = r.rank == m;
  r.p = spec.p();
  return r;
}

struct LowerConditionResult {
  double lambda = 0.0;  ///< ratio ||U w|| / ||w|| realized by the witness
  Vec witness;          ///< unit minimizing direction
  Bracket bracket;      ///< certified bracket for the infimum
  bool certified = false;
};

/// Lower frame-condition constant of the truncation: the smallest ratio
/// ||U f||_{X_d} / ||f|| over f orthogonal to ker U (all f when U is
/// injective). At p = 2 this is the smallest nonzero singular value with its
/// right singular vector.
inline LowerConditionResult lower_condition_check(const FrameSystem& fs, const SequenceSpaceSpec& spec, std::size_t n,
                                                  std::size_t m) {
  const LinearMapMatrix u = materialize(fs, n, m);
  LowerConditionResult out;
  if (spec.is_hilbert()) {
    const SingularPair sp = smallest_nonzero_singular_pair(u);
    out.lambda = sp.value;
    out.witness = Vec::from_doubles(std::vector<double>(sp.right.data(), sp.right.data() + sp.right.size()));
    out.bracket = {sp.value, sp.value};
    out.certified = true;
    return out;
  }
  const SphereExtremes e = sphere_extremes(u, detail::ambient_for(spec), spec, detail::default_mode(m));
  out.lambda = e.min.upper;
  out.witness = Vec::from_doubles(std::vector<double>(e.argmin.data(), e.argmin.data() + e.argmin.size()));
  out.bracket = e.min;
  out.certified = e.certified;
  return out;
}

/// Classifies the sequence (T delta_i*) generated by an operator T whose
/// columns are the sequence elements (T : X_d* -> X*, m x n).
///
/// Finite sections are always Bessel. Surjectivity (rank m) makes the
/// sequence an X_d-frame and, with the bounded right inverse T^+, a Banach
/// frame; bijectivity makes (T delta_i) a Riesz basis. Exact input is decided
/// by exact rank, floating input by the singular values with a grey zone.
inline Classification classify(const LinearMapMatrix& t, const SequenceSpaceSpec& spec) {
  Classification c;
  const SvdTriplet svd = svd_triplet(t);
  const std::size_t m = t.rows();
  const std::size_t n = t.cols();
  // m-th singular value: min ||T^* F|| / ||F|| over F in X (adjoint stretch).
  const double sigma_adjoint = m <= n ? svd.singular_values[m - 1] : 0.0;

  const SequenceSpaceSpec coeff_dual = spec.dual();
  const SequenceSpaceSpec target(spec.q());
  const Bracket norm = pq_opnorm(t, coeff_dual, target, detail::default_mode(n));
  c.bessel = Tri::yes;
  c.certificates["operator_norm"] = norm.upper;
  c.certificates["sigma_max"] = svd.sigma_max;
  c.certificates["sigma_min_adjoint"] = sigma_adjoint;

  Tri surjective = Tri::no;
  Tri injective = Tri::no;
  if (t.is_exact()) {
    const std::size_t rank = exact_rank(t);
    surjective = rank == m ? Tri::yes : Tri::no;
    injective = rank == n ? Tri::yes : Tri::no;
  } else {
    surjective = m <= n ? detail::grey_decision(sigma_adjoint, svd.sigma_max) : Tri::no;
    injective = n <= m ? detail::grey_decision(svd.singular_values[n - 1], svd.sigma_max) : Tri::no;
  }

  c.xd_frame = surjective;
  c.lower_condition = surjective;
  c.banach_frame = surjective;
  c.lambda = sigma_adjoint;
  if (surjective == Tri::yes) c.certificates["right_inverse_norm"] = 1.0 / sigma_adjoint;

  if (m == n) {
    c.riesz_basis = surjective == Tri::yes && injective == Tri::yes ? Tri::yes
                    : (surjective == Tri::no || injective == Tri::no) ? Tri::no
                                                                       : Tri::undetermined;
  } else {
    c.riesz_basis = Tri::no;
  }
  if (c.riesz_basis == Tri::yes) c.certificates["condition_number"] = svd.sigma_max / svd.singular_values[n - 1];
  return c;
}

/// Reconstruction operator Q with Q(U f) = f: the pseudoinverse of the
/// truncated analysis matrix. Requires U injective.
inline LinearMapMatrix banach_frame_operator(const FrameSystem& fs, std::size_t n, std::size_t m) {
  const LinearMapMatrix u = materialize(fs, n, m);
  if (rank_of(u) < m) throw Error(ErrorKind::lower_bound_violation, "truncated analysis operator is not injective");
  return pseudoinverse(u);
}

}  // namespace framelab
