#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/LU>

#include "framelab/decompositions.hpp"
#include "framelab/expansion.hpp"
#include "framelab/frame_engine.hpp"
#include "framelab/sequences.hpp"

namespace framelab {

/// Every left inverse of an injective analysis matrix U (n x m) has the form
/// L = base + Z * kernel_projector with base = U^+ and kernel_projector =
/// I - U U^+ the orthogonal projector onto R(U)^perp.
struct DualParametrization {
  LinearMapMatrix base;              ///< m x n
  LinearMapMatrix kernel_projector;  ///< n x n
  std::size_t n_terms = 0;
  std::size_t m_dims = 0;

  LinearMapMatrix left_inverse(const LinearMapMatrix& z) const {
    if (z.rows() != m_dims || z.cols() != n_terms)
      throw Error(ErrorKind::dimension_mismatch, "Z must be " + std::to_string(m_dims) + " x " + std::to_string(n_terms));
    return base + z * kernel_projector;
  }
};

struct PseudoDualFamily {
  std::vector<TruncationLevel> levels;
  std::vector<std::size_t> dims;         ///< dim R(U)^perp per level
  std::optional<std::size_t> complement_dim;  ///< set when the last two levels agree
  std::vector<Vec> kernel_basis;         ///< basis of R(U)^perp at the last level (exact input)
  std::string structure;

  bool stabilized() const { return complement_dim.has_value(); }
};

namespace detail {

inline LinearMapMatrix dense_inverse(const LinearMapMatrix& s) {
  if (s.is_exact()) return exact_inverse(s);
  if (svd_triplet(s).rank < s.rows()) throw Error(ErrorKind::singular_frame_operator, "frame operator is singular");
  return LinearMapMatrix::from_eigen(s.to_eigen().inverse());
}

/// Basis of {x : M x = 0} from the reduced row echelon form (exact input).
inline std::vector<Vec> exact_null_space(const LinearMapMatrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  std::vector<bool> pivot(m.cols(), false);
  for (std::size_t c : e.pivot_columns) pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (pivot[free]) continue;
    Vec v(m.cols());
    v[free] = Scalar(1);
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) v[e.pivot_columns[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::string describe_vector(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.dim(); ++i) s += (i ? ", " : "") + v[i].pretty();
  return s + ")";
}

}  // namespace detail

/// Canonical dual (S^{-1} g_i) of the truncation; rows of the result are the
/// dual vectors.
inline FrameSystem canonical_dual(const FrameSystem& fs, std::size_t n, std::size_t m) {
  const LinearMapMatrix u = materialize(fs, n, m);
  const LinearMapMatrix s_inv = detail::dense_inverse(u.transpose() * u);
  return FrameSystem(u * s_inv);
}

inline DualParametrization dual_parametrization(const FrameSystem& fs, std::size_t n, std::size_t m) {
  const LinearMapMatrix u = materialize(fs, n, m);
  if (rank_of(u) < m) throw Error(ErrorKind::lower_bound_violation, "truncated analysis operator is not injective");
  LinearMapMatrix base = pseudoinverse(u);
  LinearMapMatrix projector = LinearMapMatrix::identity(n) - u * base;
  return DualParametrization{std::move(base), std::move(projector), n, m};
}

/// The dual (L delta_i) for L = base + Z * kernel_projector; row i of the
/// returned dense system is f_i.
inline FrameSystem sample_dual(const DualParametrization& param, const LinearMapMatrix& z) {
  return FrameSystem(param.left_inverse(z).transpose());
}

/// dim R(U)^perp = n - rank U along the ladder; stabilized when the last two
/// levels agree.
inline PseudoDualFamily complement_dimension(const FrameSystem& fs, const Ladder& ladder) {
  if (ladder.size() < 2) throw Error(ErrorKind::invalid_argument, "complement_dimension needs at least two ladder levels");
  PseudoDualFamily fam;
  for (const TruncationLevel& level : ladder) {
    const LinearMapMatrix u = materialize(fs, level);
    fam.levels.push_back(level);
    fam.dims.push_back(level.n - rank_of(u));
  }
  const std::size_t last = fam.dims.back();
  if (last == fam.dims[fam.dims.size() - 2]) fam.complement_dim = last;

  const LinearMapMatrix u_last = materialize(fs, ladder.back());
  if (u_last.is_exact()) fam.kernel_basis = detail::exact_null_space(u_last.transpose());
  if (!fam.complement_dim) {
    fam.structure = "not stabilized: dim R(U)^perp = ";
    for (std::size_t i = 0; i < fam.dims.size(); ++i) fam.structure += (i ? ", " : "") + std::to_string(fam.dims[i]);
  } else if (last == 0) {
    fam.structure = "unique dual: the canonical dual";
  } else {
    fam.structure = "canonical dual + Z P with " + std::to_string(last) + " free direction(s)";
    if (!fam.kernel_basis.empty() && fam.kernel_basis.front().dim() <= 12) {
      fam.structure += "; R(U)^perp spanned by";
      for (const Vec& v : fam.kernel_basis) fam.structure += " " + detail::describe_vector(v);
    }
  }
  return fam;
}

struct PseudoDualReport {
  std::vector<ExpansionTrace> traces;
  bool evidence = false;  ///< every probe converged to its target
};

/// Primal traces f = sum <f, g_i> f_i for each probe; evidence that F is a
/// synthesis-pseudo-dual of G when every trace converges.
inline PseudoDualReport pseudo_dual_verify(const FrameSystem& g, const FrameSystem& f_sys, const std::vector<Vec>& probes,
                                           std::size_t n_max, const ExpandOptions& opt = {}) {
  PseudoDualReport r;
  r.evidence = true;
  for (const Vec& probe : probes) {
    r.traces.push_back(primal_expand(g, f_sys, probe, n_max, opt));
    if (r.traces.back().verdict.kind != VerdictKind::converged) r.evidence = false;
  }
  return r;
}

/// Bessel sequence G with sum <f, g_i> f_i = f, built from the pseudoinverse
/// V = U_F^+ of the truncated analysis matrix: g_i = V delta_i. The Bessel
/// bound of G is ||V|| = 1 / sigma_min(U_F).
inline FrameSystem bessel_companion(const FrameSystem& f_sys, std::size_t n, std::size_t m) {
  const LinearMapMatrix u = materialize(f_sys, n, m);
  if (rank_of(u) < m) throw Error(ErrorKind::lower_bound_violation, "truncated analysis operator of F is not injective");
  return FrameSystem(pseudoinverse(u).transpose());
}

struct AtomicPair {
  FrameSystem g;
  FrameSystem f;
  double right_inverse_norm = 0.0;
};

/// Atomic decomposition from a surjective T (m x n, columns g_i = T delta_i*):
/// F = (L delta_i) with L = (T^*)^+, so that sum g_i(f) f_i = L T^* f = f.
inline AtomicPair atomic_pair_from_operator(const LinearMapMatrix& t, const SequenceSpaceSpec& spec) {
  const Classification c = classify(t, spec);
  if (c.xd_frame != Tri::yes) throw Error(ErrorKind::not_surjective, "operator is not surjective");
  const LinearMapMatrix adjoint = t.transpose();
  const LinearMapMatrix l = pseudoinverse(adjoint);
  return AtomicPair{FrameSystem(adjoint), FrameSystem(l.transpose()), c.certificates.at("right_inverse_norm")};
}

}  // namespace framelab
