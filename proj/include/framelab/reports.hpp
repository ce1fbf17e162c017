#pragma once

#include <sstream>
#include <string>

#include "framelab/duals.hpp"
#include "framelab/expansion.hpp"
#include "framelab/frame_engine.hpp"
#include "framelab/frame_io.hpp"
#include "framelab/transform.hpp"

namespace framelab {

/// CSV with columns N,residual,exact_flag. Exact residuals are written as p/q.
inline std::string trace_to_csv(const ExpansionTrace& t) {
  std::ostringstream os;
  os << "N,residual,exact_flag\n";
  for (const ResidualEntry& e : t.residuals) os << e.N << ',' << e.residual.to_string() << ',' << (e.exact ? 1 : 0) << '\n';
  return os.str();
}

inline Json verdict_to_json(const Verdict& v) {
  Json j;
  j["verdict"] = std::string(to_string(v.kind));
  j["tol"] = v.tol;
  j["horizon"] = v.horizon;
  if (v.at) j["at"] = *v.at;
  j["liminf"] = scalar_to_json(v.liminf);
  j["limsup"] = scalar_to_json(v.limsup);
  j["tail_gap"] = scalar_to_json(v.tail_gap);
  if (v.period) j["period"] = *v.period;
  return j;
}

inline Json trace_to_json(const ExpansionTrace& t, bool with_residuals = true) {
  Json j;
  j["side"] = std::string(to_string(t.side));
  Json target = Json::array();
  for (const Scalar& s : t.target) target.push_back(scalar_to_json(s));
  j["target"] = target;
  j["verdict"] = verdict_to_json(t.verdict);
  if (with_residuals) {
    Json rows = Json::array();
    for (const ResidualEntry& e : t.residuals)
      rows.push_back(Json{{"N", e.N}, {"residual", scalar_to_json(e.residual)}, {"exact", e.exact}});
    j["residuals"] = rows;
  }
  return j;
}

inline Json level_to_json(const TruncationLevel& l) { return Json{{"n", l.n}, {"m", l.m}}; }

inline Json bounds_to_json(const BoundsReport& r) {
  Json j;
  j["A"] = r.A;
  j["B"] = r.B;
  j["convention"] = std::string(to_string(r.convention));
  j["p"] = r.p;
  j["certified"] = r.certified;
  j["method"] = r.method;
  if (r.level) j["level"] = level_to_json(*r.level);
  j["rank"] = r.rank;
  j["spans_ambient"] = r.spans_ambient;
  return j;
}

inline Json classification_to_json(const Classification& c) {
  Json j;
  j["bessel"] = std::string(to_string(c.bessel));
  j["lower_condition"] = std::string(to_string(c.lower_condition));
  j["xd_frame"] = std::string(to_string(c.xd_frame));
  j["banach_frame"] = std::string(to_string(c.banach_frame));
  j["riesz_basis"] = std::string(to_string(c.riesz_basis));
  Json cert = Json::object();
  for (const auto& [k, v] : c.certificates) cert[k] = v;
  j["certificates"] = cert;
  if (c.lambda) j["lambda"] = *c.lambda;
  return j;
}

inline Json preservation_to_json(const PreservationReport& r) {
  Json j;
  j["input"] = classification_to_json(r.input_class);
  j["output"] = classification_to_json(r.output_class);
  Json v;
  v["surjective"] = std::string(to_string(r.v_properties.surjective));
  v["bijective"] = std::string(to_string(r.v_properties.bijective));
  if (r.v_properties.right_inverse_norm) v["right_inverse_norm"] = *r.v_properties.right_inverse_norm;
  j["v"] = v;
  j["violations"] = r.violations;
  return j;
}

inline Json family_to_json(const PseudoDualFamily& f) {
  Json j;
  Json levels = Json::array();
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    Json l = level_to_json(f.levels[i]);
    l["complement_dim"] = f.dims[i];
    levels.push_back(l);
  }
  j["levels"] = levels;
  if (f.complement_dim) {
    j["complement_dim"] = *f.complement_dim;
  } else {
    j["complement_dim"] = "not stabilized";
  }
  j["structure"] = f.structure;
  return j;
}

}  // namespace framelab
