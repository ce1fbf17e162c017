#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/sequences.hpp"

namespace framelab {

struct NamedSystem {
  std::string name;
  std::string description;
  FrameSystem system;
};

/// A (G, F) pair for expansions f = sum <f, g_i> f_i.
struct NamedPair {
  std::string name;
  std::string analysis;   ///< name of G
  std::string synthesis;  ///< name of F
  std::string description;
};

class ExampleRegistry {
 public:
  const FrameSystem& system(const std::string& name) const {
    auto it = systems_.find(name);
    if (it == systems_.end()) throw Error(ErrorKind::unknown_example, "no builtin system named '" + name + "'");
    return it->second.system;
  }
  const NamedSystem& entry(const std::string& name) const {
    auto it = systems_.find(name);
    if (it == systems_.end()) throw Error(ErrorKind::unknown_example, "no builtin system named '" + name + "'");
    return it->second;
  }
  const NamedPair& pair(const std::string& name) const {
    auto it = pairs_.find(name);
    if (it == pairs_.end()) throw Error(ErrorKind::unknown_example, "no builtin pair named '" + name + "'");
    return it->second;
  }
  bool has_system(const std::string& name) const { return systems_.count(name) > 0; }
  bool has_pair(const std::string& name) const { return pairs_.count(name) > 0; }

  std::vector<std::string> system_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : systems_) out.push_back(k);
    return out;
  }
  std::vector<std::string> pair_names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : pairs_) out.push_back(k);
    return out;
  }

  void add(std::string name, std::string description, FrameSystem fs) {
    systems_.emplace(name, NamedSystem{name, std::move(description), std::move(fs)});
  }
  void add_pair(std::string name, std::string g, std::string f, std::string description) {
    pairs_.emplace(name, NamedPair{name, std::move(g), std::move(f), std::move(description)});
  }

 private:
  std::map<std::string, NamedSystem> systems_;
  std::map<std::string, NamedPair> pairs_;
};

namespace detail {

inline TermGroup single(BasisIndex idx, Coefficient c) { return TermGroup{TermSpec{idx, std::move(c)}}; }
inline TermGroup unit_at(long long fixed_index, long long sign = 1) {
  return single(BasisIndex::fixed(fixed_index), Coefficient::constant(Rational(sign)));
}
inline TermGroup unit_rel(long long offset) { return single(BasisIndex::rel(offset), Coefficient::constant(Rational(1))); }

inline ExampleRegistry make_registry() {
  ExampleRegistry reg;
  const Coefficient one = Coefficient::constant(Rational(1));

  // (1/2 e1, e2, 1/4 e1, e3, 1/8 e1, e4, ...): block k = (2^{-k} e1, e_{k+1}).
  const SequenceGenerator half_powers_g(
      {}, {single(BasisIndex::fixed(1), Coefficient::geometric(Rational(1), make_rational(1, 2))), unit_rel(1)}, 1);
  // (e1, e2, e1, e3, e1, e4, ...): block k = (e1, e_{k+1}).
  const SequenceGenerator repeat_e1_f({}, {unit_at(1), unit_rel(1)}, 1);

  reg.add("intro-G", "frame (1/2 e1, e2, 1/4 e1, e3, ...) of a Hilbert space", half_powers_g);
  reg.add("intro-F", "non-frame partner (e1, e2, e1, e3, e1, e4, ...)", repeat_e1_f);
  reg.add("ex-3.3-G", "p-frame (1/2 E1, E2, 1/4 E1, E3, ...) of coefficient functionals on l^p", half_powers_g);
  reg.add("ex-3.3-F", "(xi1, xi2, xi1, xi3, ...) in l^p: lower q-frame condition only", repeat_e1_f);

  // (e1, e1, e1, e2, e2, e2, ...)
  reg.add("ex-3.6-G", "frame with each e_k repeated three times", SequenceGenerator({}, {unit_rel(0), unit_rel(0), unit_rel(0)}, 1));
  // (e1, e1, -e1, e2, e1, -e1, e3, e1, -e1, ...): block k = (e_k, e1, -e1).
  reg.add("ex-3.6-F", "non-Bessel s-pseudo-dual (e1, e1, -e1, e2, e1, -e1, ...)",
          SequenceGenerator({}, {unit_rel(0), unit_at(1), unit_at(1, -1)}, 1));

  // (e1, e1, e2, e3, ...)
  reg.add("repeated-e1", "frame (e1, e1, e2, e3, ...) with one-dimensional R(U)^perp",
          SequenceGenerator({unit_at(1)}, {unit_rel(0)}, 1));
  reg.add("orthonormal", "orthonormal basis (e1, e2, e3, ...)", SequenceGenerator({}, {unit_rel(0)}, 1));
  reg.add("no-dual-frame", "(e_i + e_{i+1}): no sequence gives f = sum <f, g_i> f_i",
          SequenceGenerator({}, {TermGroup{TermSpec{BasisIndex::rel(0), one}, TermSpec{BasisIndex::rel(1), one}}}, 1));
  reg.add("reciprocal", "Bessel sequence ((1/i) e_i)",
          SequenceGenerator({}, {single(BasisIndex::rel(0), Coefficient::reciprocal(Rational(1)))}, 1));
  reg.add("linear", "lower-frame-condition sequence (i e_i)",
          SequenceGenerator({}, {single(BasisIndex::rel(0), Coefficient::linear(Rational(1)))}, 1));

  reg.add("identity-4", "orthonormal basis of R^4", LinearMapMatrix::identity(4));
  reg.add("mercedes-3", "frame {(1,0), (0,1), (1,1)} of R^2",
          LinearMapMatrix::from_rows({{Scalar(1), Scalar(0)}, {Scalar(0), Scalar(1)}, {Scalar(1), Scalar(1)}}));

  reg.add_pair("intro-pair", "intro-G", "intro-F", "overcomplete frame with a non-frame partner; both expansions hold");
  reg.add_pair("ex-3.3", "ex-3.3-G", "ex-3.3-F", "p-frame and a non-Bessel partner; both expansions hold");
  reg.add_pair("ex-3.6", "ex-3.6-G", "ex-3.6-F",
               "primal expansion holds; dual expansion holds only on span{e_i : i >= 2}");
  reg.add_pair("bessel-growth", "reciprocal", "linear", "f = sum <f, (1/i) e_i> i e_i");
  reg.add_pair("orthonormal", "orthonormal", "orthonormal", "orthonormal basis with itself");
  return reg;
}

}  // namespace detail

/// The named systems and pairs used in the documentation and tests.
inline const ExampleRegistry& builtin_examples() {
  static const ExampleRegistry registry = detail::make_registry();
  return registry;
}

}  // namespace framelab
