#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "framelab/errors.hpp"
#include "framelab/sequences.hpp"

namespace framelab {

// Frame-definition files are JSON:
//
//   {"dense": [[1, 0], [0, "1/2"]]}
//   {"generator": {"prefix": [...], "block": [...], "k0": 1}}
//
// A prefix/block entry is a TermSpec or an array of TermSpecs (a sum):
//   {"index": 3 | {"rel": c}, "coef": {"kind": "geometric", "r": "1/1", "s": "1/2"}}
// Exact scalars travel as "numerator/denominator" strings; JSON integers are
// exact too, JSON reals are doubles.

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

[[noreturn]] inline void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::parse_error, where + ": " + what);
}

inline Rational json_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    if (auto r = parse_rational(j.get<std::string>())) return *r;
  }
  schema_error(where, "expected a rational \"p/q\" string or an integer");
}

inline Scalar json_scalar(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long long>());
  if (j.is_number_float()) return Scalar(j.get<double>());
  if (j.is_string()) {
    if (auto r = parse_rational(j.get<std::string>())) return Scalar(*r);
  }
  schema_error(where, "expected a number or a \"p/q\" string");
}

inline TermSpec json_term(const Json& j, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected a term object");
  if (!j.contains("index")) schema_error(where, "missing \"index\"");
  TermSpec t;
  const Json& idx = j.at("index");
  if (idx.is_number_integer()) {
    t.index = BasisIndex::fixed(idx.get<long long>());
  } else if (idx.is_object() && idx.contains("rel") && idx.at("rel").is_number_integer()) {
    t.index = BasisIndex::rel(idx.at("rel").get<long long>());
  } else {
    schema_error(where + "/index", "expected an integer or {\"rel\": c}");
  }
  if (!j.contains("coef")) {
    t.coef = Coefficient::constant(Rational(1));
    return t;
  }
  const Json& c = j.at("coef");
  if (!c.is_object() || !c.contains("kind") || !c.at("kind").is_string())
    schema_error(where + "/coef", "expected {\"kind\": ...}");
  const std::string kind = c.at("kind").get<std::string>();
  const Rational r = c.contains("r") ? json_rational(c.at("r"), where + "/coef/r") : Rational(1);
  if (kind == "constant") {
    t.coef = Coefficient::constant(r);
  } else if (kind == "geometric") {
    if (!c.contains("s")) schema_error(where + "/coef", "geometric coefficient needs \"s\"");
    const bool growing = c.contains("growing") && c.at("growing").is_boolean() && c.at("growing").get<bool>();
    t.coef = Coefficient::geometric(r, json_rational(c.at("s"), where + "/coef/s"), growing);
  } else if (kind == "reciprocal") {
    t.coef = Coefficient::reciprocal(r);
  } else if (kind == "linear") {
    t.coef = Coefficient::linear(r);
  } else {
    schema_error(where + "/coef/kind", "unknown kind '" + kind + "'");
  }
  return t;
}

inline std::vector<TermGroup> json_terms(const Json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  std::vector<TermGroup> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    if (j[i].is_array()) {
      TermGroup g;
      for (std::size_t k = 0; k < j[i].size(); ++k) g.push_back(json_term(j[i][k], w + "/" + std::to_string(k)));
      out.push_back(std::move(g));
    } else {
      out.push_back(TermGroup{json_term(j[i], w)});
    }
  }
  return out;
}

inline Json term_to_json(const TermSpec& t) {
  Json j;
  if (t.index.relative) {
    j["index"] = Json{{"rel", t.index.value}};
  } else {
    j["index"] = t.index.value;
  }
  Json c;
  c["kind"] = std::string(to_string(t.coef.kind));
  c["r"] = rational_to_string(t.coef.r);
  if (t.coef.kind == CoefficientKind::geometric) {
    c["s"] = rational_to_string(t.coef.s);
    if (t.coef.growing) c["growing"] = true;
  }
  j["coef"] = c;
  return j;
}

inline Json terms_to_json(const std::vector<TermGroup>& groups) {
  Json arr = Json::array();
  for (const TermGroup& g : groups) {
    if (g.size() == 1) {
      arr.push_back(term_to_json(g.front()));
    } else {
      Json sum = Json::array();
      for (const TermSpec& t : g) sum.push_back(term_to_json(t));
      arr.push_back(sum);
    }
  }
  return arr;
}

}  // namespace detail

inline Json scalar_to_json(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  return s.to_double();
}

inline Json matrix_to_json(const LinearMapMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline LinearMapMatrix matrix_from_json(const Json& j, const std::string& where = "/dense") {
  if (!j.is_array() || j.empty()) detail::schema_error(where, "expected a nonempty array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string w = where + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].empty()) detail::schema_error(w, "expected a nonempty row");
    if (!rows.empty() && j[r].size() != rows.front().size()) detail::schema_error(w, "ragged row");
    std::vector<Scalar> row;
    for (std::size_t c = 0; c < j[r].size(); ++c) row.push_back(detail::json_scalar(j[r][c], w + "/" + std::to_string(c)));
    rows.push_back(std::move(row));
  }
  return LinearMapMatrix::from_rows(rows);
}

inline Json frame_to_json(const FrameSystem& fs) {
  if (fs.is_dense()) return Json{{"dense", matrix_to_json(fs.dense())}};
  const SequenceGenerator& g = fs.generator();
  Json gen;
  gen["prefix"] = detail::terms_to_json(g.prefix());
  gen["block"] = detail::terms_to_json(g.block());
  gen["k0"] = g.k0();
  return Json{{"generator", gen}};
}

inline FrameSystem frame_from_json(const Json& j) {
  if (!j.is_object()) detail::schema_error("/", "expected an object with \"dense\" or \"generator\"");
  if (j.contains("dense")) return FrameSystem(matrix_from_json(j.at("dense")));
  if (j.contains("generator")) {
    const Json& g = j.at("generator");
    if (!g.is_object()) detail::schema_error("/generator", "expected an object");
    std::vector<TermGroup> prefix;
    if (g.contains("prefix")) prefix = detail::json_terms(g.at("prefix"), "/generator/prefix");
    if (!g.contains("block")) detail::schema_error("/generator", "missing \"block\"");
    std::vector<TermGroup> block = detail::json_terms(g.at("block"), "/generator/block");
    long long k0 = 1;
    if (g.contains("k0")) {
      if (!g.at("k0").is_number_integer()) detail::schema_error("/generator/k0", "expected an integer");
      k0 = g.at("k0").get<long long>();
    }
    return FrameSystem(SequenceGenerator(std::move(prefix), std::move(block), k0));
  }
  detail::schema_error("/", "expected \"dense\" or \"generator\"");
}

/// Parses JSON text, reporting syntax errors with line and column.
inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::parse_error, detail::line_column(text, e.byte) + ": " + e.what());
  }
}

inline std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::file_not_found, path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline FrameSystem load_frame(const std::filesystem::path& path) {
  return frame_from_json(parse_json_text(read_text_file(path)));
}

inline LinearMapMatrix load_matrix(const std::filesystem::path& path) {
  const Json j = parse_json_text(read_text_file(path));
  if (j.is_object() && j.contains("dense")) return matrix_from_json(j.at("dense"));
  return matrix_from_json(j, "/");
}

}  // namespace framelab
