#pragma once

#include <cmath>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "framelab/builtins.hpp"
#include "framelab/duals.hpp"
#include "framelab/expansion.hpp"
#include "framelab/frame_engine.hpp"
#include "framelab/frame_io.hpp"
#include "framelab/transform.hpp"

namespace framelab {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Transcript {
  std::string example;
  std::uint64_t seed = 0;
  std::vector<std::string> lines;
  std::vector<Check> checks;

  bool pass() const {
    for (const Check& c : checks)
      if (!c.pass) return false;
    return !checks.empty();
  }
  void say(std::string line) { lines.push_back(std::move(line)); }
  void check(std::string name, bool ok, std::string detail = {}) {
    checks.push_back(Check{std::move(name), ok, std::move(detail)});
  }

  Json to_json() const {
    Json j;
    j["example"] = example;
    j["seed"] = seed;
    j["pass"] = pass();
    Json cs = Json::array();
    for (const Check& c : checks) cs.push_back(Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = cs;
    j["lines"] = lines;
    return j;
  }
};

namespace detail {

inline Rational pow2_neg(unsigned k) { return Rational(1) / Rational(BigInt(1) << k); }

inline Vec random_rational_vec(std::mt19937_64& rng, std::size_t dim, std::size_t from, std::size_t to) {
  std::uniform_int_distribution<long long> num(-9, 9);
  std::uniform_int_distribution<long long> den(1, 9);
  Vec v(dim);
  for (std::size_t i = from; i <= to; ++i) v[i - 1] = Scalar::ratio(num(rng), den(rng));
  return v;
}

inline std::string fmt(double x, int digits = 6) {
  std::ostringstream os;
  os << std::setprecision(digits) << x;
  return os.str();
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

inline void reproduce_ex36(Transcript& t) {
  const auto& reg = builtin_examples();
  const FrameSystem& g = reg.system("ex-3.6-G");
  const FrameSystem& f = reg.system("ex-3.6-F");
  std::mt19937_64 rng(t.seed);
  const std::size_t n_max = 60;

  t.say("G = (e1, e1, e1, e2, e2, e2, ...), F = (e1, e1, -e1, e2, e1, -e1, e3, e1, -e1, ...)");
  t.say("primal f = sum <f, g_i> f_i, exact arithmetic, N_max = " + std::to_string(n_max));
  bool primal_ok = true;
  for (int k = 0; k < 10; ++k) {
    const Vec probe = random_rational_vec(rng, 10, 1, 10);
    const ExpansionTrace tr = primal_expand(g, f, probe, n_max);
    bool boundaries_zero = true;
    for (const ResidualEntry& e : tr.residuals)
      if (e.N % 3 == 0 && e.N >= 30 && !e.residual.is_zero()) boundaries_zero = false;
    primal_ok = primal_ok && tr.verdict.kind == VerdictKind::converged && boundaries_zero && tr.exact();
  }
  t.say("  10 random probes in span{e1..e10}: " + std::string(primal_ok ? "all converged exactly" : "FAILED"));
  t.check("primal expansion converges on span{e1..e10}", primal_ok);

  const ExpansionTrace d1 = dual_expand(g, f, Vec::basis(10, 0), n_max);
  t.say("dual g = e1:");
  t.say("     N  residual");
  for (std::size_t n = 1; n <= 9; ++n) t.say(pad(std::to_string(n), 6) + "  " + d1.residual_at(n).pretty());
  t.say("  verdict: " + std::string(to_string(d1.verdict.kind)) + ", tail gap " + d1.verdict.tail_gap.pretty());
  bool pattern = true;
  for (const ResidualEntry& e : d1.residuals) {
    const Scalar want = e.N % 3 == 2 ? Scalar(1) : Scalar(0);
    if (!(e.residual == want) || !e.exact) pattern = false;
  }
  t.check("dual residual for e1 is 0 at N = 0, 1 mod 3 and 1 at N = 2 mod 3", pattern);
  t.check("dual expansion of e1 oscillates with tail gap exactly 1",
          d1.verdict.kind == VerdictKind::oscillation_detected && d1.verdict.tail_gap == Scalar(1));

  bool dual_span_ok = true;
  for (int k = 0; k < 10; ++k) {
    const Vec probe = random_rational_vec(rng, 10, 2, 10);
    const ExpansionTrace tr = dual_expand(g, f, probe, n_max);
    dual_span_ok = dual_span_ok && tr.verdict.kind == VerdictKind::converged && tr.exact();
  }
  const ExpansionTrace d2 = dual_expand(g, f, Vec::basis(10, 1), n_max);
  t.say("dual g = e2: " + std::string(to_string(d2.verdict.kind)) + " at N = " +
        (d2.verdict.at ? std::to_string(*d2.verdict.at) : "-"));
  t.check("dual expansion of e2 converges exactly by N = 6",
          d2.verdict.kind == VerdictKind::converged && d2.verdict.at && *d2.verdict.at <= 6);
  t.check("dual expansion converges on span{e2..e10}", dual_span_ok);

  const Ladder ladder = aligned_ladder(f, {4, 8, 16, 32});
  const DomainEvidence out1 = tf_adjoint_domain_test(f, Vec::basis(1, 0), ladder);
  const DomainEvidence in2 = tf_adjoint_domain_test(f, Vec::basis(2, 1), ladder);
  std::string norms = "  ||<e1, T_F .>|| along the ladder:";
  for (double v : out1.norms) norms += " " + fmt(v);
  t.say(norms);
  t.check("e1 shows outside-evidence for the domain of T_F*", !out1.inside);
  t.check("e2 shows inside-evidence for the domain of T_F*", in2.inside);

  const BoundsReport lc = lower_condition_of_partner(g, f, SequenceSpaceSpec(2.0), ladder);
  t.say("  lower condition of F along the ladder: lambda = " + fmt(lc.A));
  t.check("F satisfies the lower frame condition with lambda >= 1", lc.A >= 1.0 - 1e-12);
}

inline void reproduce_geometric_pair(Transcript& t, const std::string& g_name, const std::string& f_name, double p,
                                     unsigned blocks) {
  const auto& reg = builtin_examples();
  const FrameSystem& g = reg.system(g_name);
  const FrameSystem& f = reg.system(f_name);
  const double q = p / (p - 1.0);
  const std::size_t n_max = 2 * blocks;
  ExpandOptions opt;
  opt.p = p;
  opt.tol = 1e-9;
  const std::size_t dim = blocks + 2;
  const ExpansionTrace primal = primal_expand(g, f, Vec::basis(dim, 0), n_max, opt);
  const ExpansionTrace dual = dual_expand(g, f, Vec::basis(dim, 0), n_max, opt);

  t.say("G = (1/2 e1, e2, 1/4 e1, e3, ...), F = (e1, e2, e1, e3, ...), p = " + fmt(p) + ", q = " + fmt(q));
  t.say("     K        primal residual        dual residual   ||(<e1, f_i>)_{i<=2K}||_q");
  bool primal_exact = true;
  bool dual_exact = true;
  bool growth_ok = true;
  double previous = 0.0;
  const SequenceSpaceSpec coeff(q);
  for (unsigned k = 1; k <= blocks; ++k) {
    const Scalar want(pow2_neg(k));
    const Scalar& pr = primal.residual_at(2 * k);
    const Scalar& dr = dual.residual_at(2 * k);
    primal_exact = primal_exact && pr.is_exact() && pr == want;
    dual_exact = dual_exact && dr.is_exact() && dr == want;
    Vec coeffs(2 * k);
    for (std::size_t i = 1; i <= 2 * k; ++i) coeffs[i - 1] = f.term(i).dot(Vec::basis(dim, 0));
    const double qn = pnorm_value(coeffs, coeff);
    growth_ok = growth_ok && std::abs(qn - std::pow(double(k), 1.0 / q)) <= 1e-12 && qn > previous;
    previous = qn;
    if (k <= 6 || k == blocks)
      t.say(pad(std::to_string(k), 6) + pad(pr.pretty(), 22) + pad(dr.pretty(), 21) + pad(fmt(qn, 12), 28));
    else if (k == 7)
      t.say("   ...");
  }
  t.check("primal residual after K blocks is exactly 2^-K", primal_exact);
  t.check("dual residual after K blocks is exactly 2^-K", dual_exact);
  t.check("q-norm of (<e1, f_i>) equals K^(1/q) and strictly increases", growth_ok);
  t.check("primal expansion converges at tol 1e-9", primal.verdict.kind == VerdictKind::converged);
  t.check("dual expansion converges at tol 1e-9", dual.verdict.kind == VerdictKind::converged);

  if (p == 2.0) {
    const Ladder ladder = aligned_ladder(g, {4, 8, 16});
    bool frame_ok = true;
    std::vector<double> f_upper;
    for (const TruncationLevel& level : ladder) {
      const BoundsReport bg = hilbert_frame_bounds(g, level.n, level.m);
      frame_ok = frame_ok && bg.A >= 0.25 - 1e-12 && std::abs(bg.B - 1.0) < 1e-12;
      f_upper.push_back(hilbert_frame_bounds(f, level.n, level.m).B);
      t.say("  level (" + std::to_string(level.n) + ", " + std::to_string(level.m) + "): G bounds A = " + fmt(bg.A) +
            ", B = " + fmt(bg.B) + "; F upper bound " + fmt(f_upper.back()));
    }
    t.check("G keeps frame bounds 1/4 <= A, B = 1 along the ladder", frame_ok);
    bool growing = true;
    for (std::size_t i = 1; i < f_upper.size(); ++i) growing = growing && f_upper[i] > f_upper[i - 1] + 1.0;
    t.check("upper bound of F grows along the ladder", growing);
    const BoundsReport lc = lower_condition_of_partner(g, f, SequenceSpaceSpec(2.0), ladder);
    t.check("F satisfies the lower frame condition with lambda >= 1", lc.A >= 1.0 - 1e-12);
  }
}

inline void reproduce_finite_codimension(Transcript& t) {
  const FrameSystem& fs = builtin_examples().system("repeated-e1");
  const Ladder ladder{{11, 10}, {21, 20}, {41, 40}};
  const PseudoDualFamily fam = complement_dimension(fs, ladder);
  t.say("system (e1, e1, e2, e3, ...): " + fam.structure);
  t.check("dim R(U)^perp stabilizes at 1", fam.complement_dim == std::optional<std::size_t>(1));

  std::mt19937_64 rng(t.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  bool all_positive = true;
  double smallest = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 20; ++s) {
    for (const TruncationLevel& level : ladder) {
      std::vector<double> w(level.m);
      double norm2 = 0.0;
      for (double& x : w) {
        x = unit(rng);
        norm2 += x * x;
      }
      const double scale = 10.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / std::sqrt(norm2);
      LinearMapMatrix rows(level.n, level.m);
      for (std::size_t c = 0; c < level.m; ++c) {
        rows(0, c) = Scalar(w[c] * scale);
        rows(1, c) = Scalar((c == 0 ? 1.0 : 0.0) - w[c] * scale);
      }
      for (std::size_t r = 2; r < level.n; ++r) rows(r, r - 1) = Scalar(1);
      const BoundsReport b = hilbert_frame_bounds(FrameSystem(rows), level.n, level.m);
      smallest = std::min(smallest, b.A);
      all_positive = all_positive && b.A > 0.01;
    }
  }
  t.say("  20 pseudo-duals (w, e1 - w, e2, ...) with ||w|| <= 10: smallest lower bound A = " + fmt(smallest));
  t.check("every sampled pseudo-dual is a frame with A > 0.01", all_positive);
}

inline void reproduce_bessel_companion(Transcript& t) {
  const std::size_t n = 20;
  const FrameSystem& f = builtin_examples().system("linear");
  const FrameSystem g = bessel_companion(f, n, n);
  bool entries = true;
  for (std::size_t i = 1; i <= n; ++i) {
    SparseVec want;
    want.add(i, Scalar::ratio(1, static_cast<long long>(i)));
    entries = entries && g.term(i) == want;
  }
  t.say("F = (i e_i), n = 20: companion G = U_F^+ columns");
  t.check("G = ((1/i) e_i) exactly", entries);
  bool recon = true;
  for (std::size_t j = 0; j < n; ++j) {
    const ExpansionTrace tr = primal_expand(g, f, Vec::basis(n, j), n);
    recon = recon && tr.residuals.back().residual == Scalar(0) && tr.exact();
  }
  t.check("sum <f, g_i> f_i = f exactly on every basis vector", recon);
  const BoundsReport b = hilbert_frame_bounds(g, n, n);
  t.say("  Bessel bound of G (squared) = " + fmt(b.B));
  t.check("Bessel bound of G is 1 / sigma_min(U_F)^2 = 1", std::abs(b.B - 1.0) < 1e-12);
}

inline void reproduce_no_dual_frame(Transcript& t) {
  const FrameSystem& fs = builtin_examples().system("no-dual-frame");
  t.say("(e_i + e_{i+1}) at truncation (n, n+1):");
  t.say("     n      A (squared)");
  std::vector<double> a;
  for (std::size_t n : {4u, 8u, 16u, 32u}) {
    a.push_back(hilbert_frame_bounds(fs, n, n + 1).A);
    t.say(pad(std::to_string(n), 6) + pad(fmt(a.back(), 10), 17));
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < a.size(); ++i) decreasing = decreasing && a[i] < a[i - 1];
  t.check("lower bound strictly decreases", decreasing);
  t.check("A_32 < A_4 / 4", a.back() < a.front() / 4.0);
}

inline void reproduce_orthonormal(Transcript& t) {
  const FrameSystem& fs = builtin_examples().system("orthonormal");
  const BoundsReport b = hilbert_frame_bounds(fs, 8, 8);
  t.check("orthonormal basis has A = B = 1", b.A == 1.0 && b.B == 1.0);
  std::mt19937_64 rng(t.seed);
  const Vec probe = random_rational_vec(rng, 8, 1, 8);
  const ExpansionTrace tr = primal_expand(fs, fs, probe, 8);
  t.check("expansion is exact at N = dim", tr.residuals.back().residual == Scalar(0) && tr.exact());
}

}  // namespace detail

inline const std::vector<std::string>& reproducible_examples() {
  static const std::vector<std::string> names{"ex-3.6",         "ex-3.3",        "intro-pair", "finite-codimension",
                                              "bessel-companion", "no-dual-frame", "orthonormal"};
  return names;
}

inline Transcript reproduce(const std::string& name, std::uint64_t seed = 1) {
  Transcript t;
  t.example = name;
  t.seed = seed;
  if (name == "ex-3.6") {
    detail::reproduce_ex36(t);
  } else if (name == "ex-3.3") {
    detail::reproduce_geometric_pair(t, "ex-3.3-G", "ex-3.3-F", 3.0, 40);
  } else if (name == "intro-pair") {
    detail::reproduce_geometric_pair(t, "intro-G", "intro-F", 2.0, 40);
  } else if (name == "finite-codimension") {
    detail::reproduce_finite_codimension(t);
  } else if (name == "bessel-companion") {
    detail::reproduce_bessel_companion(t);
  } else if (name == "no-dual-frame") {
    detail::reproduce_no_dual_frame(t);
  } else if (name == "orthonormal") {
    detail::reproduce_orthonormal(t);
  } else {
    throw Error(ErrorKind::unknown_example, "no reproducible example named '" + name + "'");
  }
  return t;
}

}  // namespace framelab
