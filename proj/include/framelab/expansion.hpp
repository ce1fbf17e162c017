#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "framelab/frame_engine.hpp"
#include "framelab/sequence_space.hpp"
#include "framelab/sequences.hpp"

namespace framelab {

enum class ExpansionSide { primal, dual };

inline std::string_view to_string(ExpansionSide s) { return s == ExpansionSide::primal ? "primal" : "dual"; }

enum class VerdictKind { converged, no_convergence_observed, oscillation_detected };

inline std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::converged: return "converged";
    case VerdictKind::no_convergence_observed: return "no-convergence-observed";
    case VerdictKind::oscillation_detected: return "oscillation-detected";
  }
  return "no-convergence-observed";
}

struct Verdict {
  VerdictKind kind = VerdictKind::no_convergence_observed;
  double tol = 0.0;
  std::optional<std::size_t> at;  ///< converged: first N from which every residual stays below tol
  std::size_t horizon = 0;
  Scalar liminf;                  ///< smallest residual in the tail window
  Scalar limsup;                  ///< largest residual in the tail window
  Scalar tail_gap;                ///< limsup - liminf
  std::optional<std::size_t> period;  ///< boundary period used for the oscillation test
};

struct ResidualEntry {
  std::size_t N = 0;
  Scalar residual;
  bool exact = false;  ///< computed in exact arithmetic (value itself rational or not)
  std::optional<Rational> power_sum;  ///< exact sum |r_i|^p when available
};

struct ExpansionTrace {
  std::vector<ResidualEntry> residuals;
  Vec target;
  ExpansionSide side = ExpansionSide::primal;
  Verdict verdict;
  std::optional<std::size_t> period;  ///< block length of the systems involved
  std::size_t offset = 0;             ///< terms before the first block

  bool exact() const {
    return !residuals.empty() &&
           std::all_of(residuals.begin(), residuals.end(), [](const ResidualEntry& e) { return e.exact; });
  }
  const Scalar& residual_at(std::size_t n) const {
    for (const ResidualEntry& e : residuals)
      if (e.N == n) return e.residual;
    throw Error(ErrorKind::index_out_of_range, "no residual recorded at N = " + std::to_string(n));
  }
};

inline constexpr double kDefaultFloatTol = 1e-9;

/// Tail window: last quarter of the horizon, at least 12 samples.
inline std::size_t tail_window(std::size_t horizon) {
  return std::min(horizon, std::max<std::size_t>(12, (horizon + 3) / 4));
}

namespace detail {

inline bool below(const Scalar& r, double tol, bool exact) { return exact && tol == 0.0 ? r.is_zero() : r.to_double() < tol; }

inline bool boundary_small(const std::vector<ResidualEntry>& tail, std::size_t period, std::size_t offset, double tol,
                           bool exact) {
  bool seen = false;
  for (const ResidualEntry& e : tail) {
    if (e.N < offset || (e.N - offset) % period != 0) continue;
    seen = true;
    if (!below(e.residual, tol, exact)) return false;
  }
  return seen;
}

}  // namespace detail

/// Applies the convergence rules to a residual trace:
///  converged: final residual < tol (exactly 0 for exact traces at tol 0) and
///    the tail window is non-increasing;
///  oscillation-detected: tail max - min > 10 tol (> 0 exactly) while the
///    block-boundary residuals in the tail stay below tol. A declared period
///    is tried at every phase; without one, periods up to half the window are
///    searched;
///  otherwise no-convergence-observed with tail min/max as liminf/limsup.
inline Verdict verdict(const ExpansionTrace& trace, std::optional<double> tol_override = std::nullopt) {
  if (trace.residuals.empty()) throw Error(ErrorKind::invalid_argument, "verdict of an empty trace");
  const bool exact = trace.exact();
  const double tol = tol_override ? *tol_override : (exact ? 0.0 : kDefaultFloatTol);
  const std::size_t horizon = trace.residuals.size();
  const std::size_t w = tail_window(horizon);
  const std::vector<ResidualEntry> tail(trace.residuals.end() - static_cast<std::ptrdiff_t>(w), trace.residuals.end());

  Verdict v;
  v.tol = tol;
  v.horizon = trace.residuals.back().N;
  v.liminf = tail.front().residual;
  v.limsup = tail.front().residual;
  bool non_increasing = true;
  for (std::size_t i = 0; i < tail.size(); ++i) {
    if (tail[i].residual < v.liminf) v.liminf = tail[i].residual;
    if (tail[i].residual > v.limsup) v.limsup = tail[i].residual;
    if (i > 0 && tail[i].residual > tail[i - 1].residual) non_increasing = false;
  }
  v.tail_gap = v.limsup - v.liminf;

  if (detail::below(trace.residuals.back().residual, tol, exact) && non_increasing) {
    v.kind = VerdictKind::converged;
    std::size_t first = trace.residuals.size();
    while (first > 0 && detail::below(trace.residuals[first - 1].residual, tol, exact)) --first;
    v.at = trace.residuals[first].N;
    return v;
  }

  const bool wide = exact && tol == 0.0 ? !v.tail_gap.is_zero() : v.tail_gap.to_double() > 10.0 * tol;
  if (wide) {
    std::vector<std::size_t> periods;
    if (trace.period) {
      periods.push_back(*trace.period);
    } else {
      for (std::size_t p = 1; p <= w / 2; ++p) periods.push_back(p);
    }
    for (std::size_t p : periods) {
      for (std::size_t phase = 0; phase < p; ++phase) {
        if (detail::boundary_small(tail, p, trace.offset + phase, tol, exact)) {
          v.kind = VerdictKind::oscillation_detected;
          v.period = p;
          return v;
        }
      }
    }
  }
  v.kind = VerdictKind::no_convergence_observed;
  return v;
}

enum class Arithmetic { as_given, floating };

struct ExpandOptions {
  std::optional<double> tol;  ///< default: 0 for exact traces, 1e-9 otherwise
  double p = 2.0;             ///< primal residuals in l^p, dual residuals in l^q
  Arithmetic arithmetic = Arithmetic::as_given;
};

namespace detail {

/// Residual trace of x - sum_{i <= N} <x, a_i> b_i for N = 1..n_max, with
/// the residual measured in l^r on its finite support.
inline ExpansionTrace expand(const FrameSystem& coeff_system, const FrameSystem& synth_system, const Vec& x,
                             std::size_t n_max, double r, bool floating, ExpansionSide side) {
  if (n_max == 0) throw Error(ErrorKind::invalid_argument, "horizon N_max must be at least 1");
  for (const FrameSystem* fs : {&coeff_system, &synth_system}) {
    if (fs->term_count() && *fs->term_count() < n_max)
      throw Error(ErrorKind::dimension_mismatch, "dense system has fewer than N_max terms");
  }
  const Vec target = floating ? x.to_float() : x;
  const SequenceSpaceSpec norm_space(r);
  std::map<std::size_t, Scalar> residual;
  for (std::size_t i = 0; i < target.dim(); ++i)
    if (!target[i].is_zero()) residual[i + 1] = target[i];

  ExpansionTrace trace;
  trace.target = target;
  trace.side = side;
  for (std::size_t i = 1; i <= n_max; ++i) {
    SparseVec a = coeff_system.term(i);
    if (floating) a = a.to_float();
    const Scalar c = a.dot(target);
    if (!c.is_zero()) {
      SparseVec b = synth_system.term(i);
      if (floating) b = b.to_float();
      for (const auto& [idx, value] : b.entries()) {
        Scalar& slot = residual[idx];
        slot -= c * value;
        if (slot.is_zero()) residual.erase(idx);
      }
    }
    std::vector<Scalar> support;
    support.reserve(residual.size());
    for (const auto& [idx, value] : residual) support.push_back(value);
    const Vec rv(std::move(support));
    ResidualEntry entry;
    entry.N = i;
    if (rv.dim() > 0) {
      entry.residual = pnorm(rv, norm_space);
    } else {
      entry.residual = floating || !target.is_exact() ? Scalar(0.0) : Scalar(Rational(0));
    }
    if (rv.dim() > 0) {
      entry.power_sum = pnorm_power_exact(rv, norm_space);
    } else if (entry.residual.is_exact()) {
      entry.power_sum = Rational(0);
    }
    entry.exact = entry.residual.is_exact() || entry.power_sum.has_value();
    trace.residuals.push_back(std::move(entry));
  }
  if (!coeff_system.is_dense() || !synth_system.is_dense()) {
    trace.period = lcm_period(coeff_system, synth_system);
    trace.offset = std::max(coeff_system.period_offset(), synth_system.period_offset());
  }
  return trace;
}

}  // namespace detail

/// Partial sums of f = sum_i <f, g_i> f_i; residuals ||f - S_N f||_p.
inline ExpansionTrace primal_expand(const FrameSystem& g, const FrameSystem& f_sys, const Vec& f, std::size_t n_max,
                                    const ExpandOptions& opt = {}) {
  ExpansionTrace t = detail::expand(g, f_sys, f, n_max, opt.p, opt.arithmetic == Arithmetic::floating,
                                    ExpansionSide::primal);
  t.verdict = verdict(t, opt.tol);
  return t;
}

/// Partial sums of g = sum_i <g, f_i> g_i; residuals ||g - S_N g||_q.
inline ExpansionTrace dual_expand(const FrameSystem& g_sys, const FrameSystem& f_sys, const Vec& g, std::size_t n_max,
                                  const ExpandOptions& opt = {}) {
  const double q = opt.p / (opt.p - 1.0);
  ExpansionTrace t = detail::expand(f_sys, g_sys, g, n_max, q, opt.arithmetic == Arithmetic::floating,
                                    ExpansionSide::dual);
  t.verdict = verdict(t, opt.tol);
  return t;
}

struct DomainEvidence {
  bool inside = true;
  std::vector<TruncationLevel> levels;
  std::vector<double> norms;  ///< ||(<g, f_i>)_{i <= n}||_q per level
};

/// Growth of the functional c -> <g, T_F c> on the truncated unit balls of
/// l^p: its norm at level (n, m) is the l^q norm of (<g, f_i>)_{i <= n}.
/// Stalled growth is inside-evidence; strictly growing norms whose last
/// increment is at least half the previous one are outside-evidence.
inline DomainEvidence tf_adjoint_domain_test(const FrameSystem& f_sys, const Vec& g, const Ladder& ladder,
                                             double p = 2.0) {
  if (ladder.empty()) throw Error(ErrorKind::invalid_argument, "empty ladder");
  const SequenceSpaceSpec coeff(p / (p - 1.0));
  DomainEvidence out;
  for (const TruncationLevel& level : ladder) {
    const Vec gm = g.resized(level.m);
    Vec coeffs(level.n);
    for (std::size_t i = 1; i <= level.n; ++i) coeffs[i - 1] = f_sys.term(i).dot(gm);
    out.levels.push_back(level);
    out.norms.push_back(pnorm_value(coeffs, coeff));
  }
  if (out.norms.size() < 2) return out;
  std::vector<double> inc;
  for (std::size_t i = 1; i < out.norms.size(); ++i) inc.push_back(out.norms[i] - out.norms[i - 1]);
  const double last = inc.back();
  if (last <= 1e-9 * std::max(1.0, out.norms.back())) return out;
  const bool all_growing = std::all_of(inc.begin(), inc.end(), [](double d) { return d > 0.0; });
  const bool sustained = inc.size() == 1 || last >= 0.5 * inc[inc.size() - 2];
  out.inside = !(all_growing && sustained);
  return out;
}

/// Lower frame-condition evidence for the partner F in the dual sequence
/// space: A is the infimum of lower_condition_check over the ladder, B the
/// largest upper bound seen.
inline BoundsReport lower_condition_of_partner(const FrameSystem& /*g*/, const FrameSystem& f_sys,
                                               const SequenceSpaceSpec& spec, const Ladder& ladder) {
  if (ladder.empty()) throw Error(ErrorKind::invalid_argument, "empty ladder");
  const SequenceSpaceSpec dual = spec.dual();
  BoundsReport r;
  r.convention = BoundConvention::xd_unsquared;
  r.p = dual.p();
  r.certified = true;
  r.A = std::numeric_limits<double>::infinity();
  for (const TruncationLevel& level : ladder) {
    const LowerConditionResult lc = lower_condition_check(f_sys, dual, level.n, level.m);
    const BoundsReport b = xd_frame_bounds(f_sys, dual, level.n, level.m, detail::default_mode(level.m));
    r.A = std::min(r.A, lc.lambda);
    r.B = std::max(r.B, b.B);
    r.certified = r.certified && lc.certified && b.certified;
    r.level = level;
    r.rank = b.rank;
    r.spans_ambient = b.spans_ambient;
    r.method = "ladder/" + b.method;
  }
  return r;
}

}  // namespace framelab
