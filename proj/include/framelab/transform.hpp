#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framelab/decompositions.hpp"
#include "framelab/frame_engine.hpp"
#include "framelab/sequences.hpp"

namespace framelab {

struct OperatorProperties {
  Tri surjective = Tri::undetermined;
  Tri bijective = Tri::undetermined;
  std::optional<double> right_inverse_norm;
};

struct PreservationReport {
  Classification input_class;
  Classification output_class;
  OperatorProperties v_properties;
  std::vector<std::string> violations;  ///< broken implications; always empty unless something is wrong
};

/// Surjectivity, bijectivity and ||V^+|| = 1 / sigma_min of a map V.
inline OperatorProperties operator_properties(const LinearMapMatrix& v) {
  OperatorProperties out;
  const SvdTriplet svd = svd_triplet(v);
  const std::size_t rows = v.rows();
  const std::size_t cols = v.cols();
  if (v.is_exact()) {
    const std::size_t r = exact_rank(v);
    out.surjective = r == rows ? Tri::yes : Tri::no;
    out.bijective = r == rows && r == cols ? Tri::yes : Tri::no;
  } else {
    out.surjective = rows <= cols ? detail::grey_decision(svd.singular_values[rows - 1], svd.sigma_max) : Tri::no;
    out.bijective = rows == cols ? out.surjective : Tri::no;
  }
  if (out.surjective == Tri::yes) out.right_inverse_norm = 1.0 / svd.singular_values[rows - 1];
  return out;
}

/// Classifies the truncated system (g_i) and its image (V g_i), each through
/// the operator whose columns are the sequence elements, and checks the
/// transfer rules: Bessel is always kept; the X_d-frame and Banach-frame
/// properties survive exactly when V is surjective; a Riesz basis stays one
/// exactly when V is bijective.
inline PreservationReport transform_report(const LinearMapMatrix& v, const FrameSystem& fs, const SequenceSpaceSpec& spec,
                                           std::size_t n, std::size_t m) {
  if (v.cols() != m)
    throw Error(ErrorKind::dimension_mismatch,
                "V has " + std::to_string(v.cols()) + " columns, truncation has m = " + std::to_string(m));
  const LinearMapMatrix t_in = materialize(fs, n, m).transpose();
  const LinearMapMatrix t_out = v * t_in;
  PreservationReport r{classify(t_in, spec), classify(t_out, spec), operator_properties(v), {}};

  const Classification& in = r.input_class;
  const Classification& out = r.output_class;
  const OperatorProperties& vp = r.v_properties;
  auto require = [&](bool ok, const char* rule) {
    if (!ok) r.violations.emplace_back(rule);
  };
  require(!(in.bessel == Tri::yes) || out.bessel == Tri::yes, "Bessel sequence not preserved");
  if (in.xd_frame == Tri::yes && vp.surjective == Tri::yes)
    require(out.xd_frame == Tri::yes, "surjective V lost the X_d-frame property");
  if (in.xd_frame == Tri::yes && vp.surjective == Tri::no)
    require(out.xd_frame == Tri::no, "non-surjective V kept the X_d-frame property");
  if (in.banach_frame == Tri::yes && vp.surjective == Tri::yes)
    require(out.banach_frame == Tri::yes, "surjective V lost the Banach-frame property");
  if (in.riesz_basis == Tri::yes && vp.bijective == Tri::yes)
    require(out.riesz_basis == Tri::yes, "bijective V lost the Riesz-basis property");
  if (in.riesz_basis == Tri::yes && vp.bijective == Tri::no)
    require(out.riesz_basis == Tri::no, "non-bijective V kept the Riesz-basis property");
  require(out.consistent(), "output classification is inconsistent");
  return r;
}

/// Looks for V with V g_i = h_i for i <= n, where (g_i) lives in m_from
/// coordinates and (h_i) in m_to. Returns nullopt when no such V exists.
inline std::optional<LinearMapMatrix> solve_transform(const FrameSystem& g, const FrameSystem& h, std::size_t n,
                                                      std::size_t m_from, std::size_t m_to) {
  const LinearMapMatrix ug = materialize(g, n, m_from);
  const LinearMapMatrix uh = materialize(h, n, m_to);
  // U_G V^T = U_H; the least-squares candidate solves it whenever anything does.
  const LinearMapMatrix vt = pseudoinverse(ug) * uh;
  const LinearMapMatrix check = ug * vt;
  if (check.is_exact() && uh.is_exact()) {
    if (!(check == uh)) return std::nullopt;
  } else if (max_abs_difference(check, uh) > 1e-10 * std::max(1.0, uh.max_abs_entry())) {
    return std::nullopt;
  }
  return vt.transpose();
}

}  // namespace framelab
