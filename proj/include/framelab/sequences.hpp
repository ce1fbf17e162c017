#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/matrix.hpp"
#include "framelab/scalar.hpp"

namespace framelab {

/// Finitely supported vector with 1-based basis indices, sorted, no explicit
/// zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Scalar>;

  SparseVec() = default;

  void add(std::size_t index, const Scalar& value) {
    if (index == 0) throw Error(ErrorKind::index_out_of_range, "basis indices start at 1");
    auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                               [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
      it->second += value;
      if (it->second.is_zero()) entries_.erase(it);
    } else if (!value.is_zero()) {
      entries_.insert(it, {index, value});
    }
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }

  Scalar at(std::size_t index) const {
    for (const auto& [i, v] : entries_)
      if (i == index) return v;
    return Scalar(0);
  }

  /// Pairing with a finite vector; coordinates beyond v.dim() count as zero.
  Scalar dot(const Vec& v) const {
    Scalar acc(0);
    for (const auto& [i, value] : entries_)
      if (i <= v.dim()) acc += value * v[i - 1];
    return acc;
  }

  Vec to_dense(std::size_t dim) const {
    Vec out(dim);
    for (const auto& [i, value] : entries_)
      if (i <= dim) out[i - 1] = value;
    return out;
  }

  SparseVec to_float() const {
    SparseVec out;
    for (const auto& [i, value] : entries_) out.entries_.emplace_back(i, value.to_float());
    return out;
  }

  friend bool operator==(const SparseVec& a, const SparseVec& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Entry> entries_;
};

enum class CoefficientKind { constant, geometric, reciprocal, linear };

inline std::string_view to_string(CoefficientKind k) {
  switch (k) {
    case CoefficientKind::constant: return "constant";
    case CoefficientKind::geometric: return "geometric";
    case CoefficientKind::reciprocal: return "reciprocal";
    case CoefficientKind::linear: return "linear";
  }
  return "constant";
}

/// r, r*s^k, r/k or r*k as a function of the block index k.
struct Coefficient {
  CoefficientKind kind = CoefficientKind::constant;
  Rational r{1};
  Rational s{1};
  bool growing = false;  ///< required when a geometric ratio has |s| >= 1

  static Coefficient constant(Rational r) { return {CoefficientKind::constant, std::move(r), Rational(1), false}; }
  static Coefficient geometric(Rational r, Rational s, bool growing = false) {
    return {CoefficientKind::geometric, std::move(r), std::move(s), growing};
  }
  static Coefficient reciprocal(Rational r) { return {CoefficientKind::reciprocal, std::move(r), Rational(1), false}; }
  static Coefficient linear(Rational r) { return {CoefficientKind::linear, std::move(r), Rational(1), false}; }

  Scalar at(long long k) const {
    switch (kind) {
      case CoefficientKind::constant: return Scalar(r);
      case CoefficientKind::geometric: return Scalar(r) * pow(Scalar(s), static_cast<int>(k));
      case CoefficientKind::reciprocal:
        if (k == 0) throw Error(ErrorKind::invalid_spec, "reciprocal coefficient at k = 0");
        return Scalar(Rational(r / k));
      case CoefficientKind::linear: return Scalar(Rational(r * k));
    }
    return Scalar(r);
  }

  friend bool operator==(const Coefficient&, const Coefficient&) = default;
};

/// Either a fixed basis index (>= 1) or k + offset inside a repeating block.
struct BasisIndex {
  bool relative = false;
  long long value = 1;

  static BasisIndex fixed(long long i) { return {false, i}; }
  static BasisIndex rel(long long offset) { return {true, offset}; }

  long long at(long long k) const { return relative ? k + value : value; }

  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

struct TermSpec {
  BasisIndex index;
  Coefficient coef;

  friend bool operator==(const TermSpec&, const TermSpec&) = default;
};

/// One sequence element: the sum of its components. Most elements have a
/// single component; e_k + e_{k+1} has two.
using TermGroup = std::vector<TermSpec>;

/// Eventually periodic sequence over an orthonormal basis: a finite prefix
/// followed by a block repeated for k = k0, k0 + 1, ...
///
/// Element i (1-based) is prefix[i-1] while i <= |prefix|; after that it is
/// block[(i - |prefix| - 1) mod |block|] evaluated at
/// k = k0 + (i - |prefix| - 1) div |block|. Prefix entries must use fixed
/// indices; their coefficients are evaluated at k = i.
class SequenceGenerator {
 public:
  SequenceGenerator(std::vector<TermGroup> prefix, std::vector<TermGroup> block, long long k0 = 1)
      : prefix_(std::move(prefix)), block_(std::move(block)), k0_(k0) {
    validate();
  }

  const std::vector<TermGroup>& prefix() const noexcept { return prefix_; }
  const std::vector<TermGroup>& block() const noexcept { return block_; }
  long long k0() const noexcept { return k0_; }
  std::size_t prefix_length() const noexcept { return prefix_.size(); }
  std::size_t block_length() const noexcept { return block_.size(); }

  SparseVec term(std::size_t i) const {
    if (i == 0) throw Error(ErrorKind::index_out_of_range, "sequence indices start at 1");
    SparseVec out;
    if (i <= prefix_.size()) {
      for (const TermSpec& t : prefix_[i - 1]) out.add(static_cast<std::size_t>(t.index.value), t.coef.at(static_cast<long long>(i)));
      return out;
    }
    const std::size_t offset = i - prefix_.size() - 1;
    const long long k = k0_ + static_cast<long long>(offset / block_.size());
    for (const TermSpec& t : block_[offset % block_.size()]) {
      out.add(static_cast<std::size_t>(t.index.at(k)), t.coef.at(k));
    }
    return out;
  }

  friend bool operator==(const SequenceGenerator&, const SequenceGenerator&) = default;

 private:
  void validate() const {
    if (block_.empty()) throw Error(ErrorKind::invalid_spec, "generator block must be nonempty");
    for (const TermGroup& g : prefix_) {
      if (g.empty()) throw Error(ErrorKind::invalid_spec, "empty prefix term");
      for (const TermSpec& t : g) {
        if (t.index.relative) throw Error(ErrorKind::invalid_spec, "prefix terms need fixed basis indices");
        check_term(t);
      }
    }
    for (const TermGroup& g : block_) {
      if (g.empty()) throw Error(ErrorKind::invalid_spec, "empty block term");
      for (const TermSpec& t : g) {
        check_term(t);
        if (t.index.relative && k0_ + t.index.value < 1)
          throw Error(ErrorKind::invalid_spec, "relative index k" + std::to_string(t.index.value) +
                                                   " is not positive at k0 = " + std::to_string(k0_));
        if (t.coef.kind == CoefficientKind::reciprocal && k0_ < 1)
          throw Error(ErrorKind::invalid_spec, "reciprocal coefficient needs k0 >= 1");
      }
    }
  }

  static void check_term(const TermSpec& t) {
    if (!t.index.relative && t.index.value < 1) throw Error(ErrorKind::invalid_spec, "basis indices start at 1");
    if (t.coef.kind == CoefficientKind::geometric && abs(Scalar(t.coef.s)) >= Scalar(1) && !t.coef.growing)
      throw Error(ErrorKind::invalid_spec, "geometric ratio with |s| >= 1 must be flagged growing");
  }

  std::vector<TermGroup> prefix_;
  std::vector<TermGroup> block_;
  long long k0_;
};

/// A finite section size: the first n terms restricted to coordinates 1..m.
struct TruncationLevel {
  std::size_t n = 0;
  std::size_t m = 0;
  friend bool operator==(const TruncationLevel&, const TruncationLevel&) = default;
};

using Ladder = std::vector<TruncationLevel>;

/// An indexed family of vectors: a dense matrix (rows are the vectors) or a
/// structured infinite generator.
class FrameSystem {
 public:
  FrameSystem(LinearMapMatrix dense) : source_(std::move(dense)) {}  // NOLINT(google-explicit-constructor)
  FrameSystem(SequenceGenerator gen) : source_(std::move(gen)) {}    // NOLINT(google-explicit-constructor)

  bool is_dense() const noexcept { return std::holds_alternative<LinearMapMatrix>(source_); }
  const LinearMapMatrix& dense() const { return std::get<LinearMapMatrix>(source_); }
  const SequenceGenerator& generator() const { return std::get<SequenceGenerator>(source_); }

  /// Number of terms for a dense system; nullopt for an infinite generator.
  std::optional<std::size_t> term_count() const {
    if (is_dense()) return dense().rows();
    return std::nullopt;
  }
  /// Ambient dimension for a dense system; nullopt ("infinite") otherwise.
  std::optional<std::size_t> ambient_dim() const {
    if (is_dense()) return dense().cols();
    return std::nullopt;
  }

  /// i-th element, 1-based, exact for generators.
  SparseVec term(std::size_t i) const {
    if (!is_dense()) return generator().term(i);
    const LinearMapMatrix& m = dense();
    if (i == 0 || i > m.rows())
      throw Error(ErrorKind::index_out_of_range, "term " + std::to_string(i) + " of a " +
                                                     std::to_string(m.rows()) + "-term system");
    SparseVec out;
    for (std::size_t c = 0; c < m.cols(); ++c) out.add(c + 1, m(i - 1, c));
    return out;
  }

  /// Period of the repeating part and the index after which it starts.
  std::size_t period() const { return is_dense() ? 1 : generator().block_length(); }
  std::size_t period_offset() const { return is_dense() ? 0 : generator().prefix_length(); }

  friend bool operator==(const FrameSystem&, const FrameSystem&) = default;

 private:
  std::variant<LinearMapMatrix, SequenceGenerator> source_;
};

/// n x m matrix whose row i is term(i) restricted to coordinates 1..m.
/// A dense system only materializes at its own size.
inline LinearMapMatrix materialize(const FrameSystem& fs, std::size_t n_terms, std::size_t m_dims) {
  if (n_terms == 0 || m_dims == 0) throw Error(ErrorKind::invalid_argument, "materialize needs n, m >= 1");
  if (fs.is_dense()) {
    const LinearMapMatrix& d = fs.dense();
    if (d.rows() != n_terms || d.cols() != m_dims) {
      throw Error(ErrorKind::truncation_of_dense,
                  "dense system is " + std::to_string(d.rows()) + "x" + std::to_string(d.cols()) +
                      ", requested " + std::to_string(n_terms) + "x" + std::to_string(m_dims));
    }
    return d;
  }
  LinearMapMatrix out(n_terms, m_dims);
  for (std::size_t i = 1; i <= n_terms; ++i) {
    const SparseVec term = fs.term(i);
    for (const auto& [idx, value] : term.entries())
      if (idx <= m_dims) out(i - 1, idx - 1) = value;
  }
  return out;
}

inline LinearMapMatrix materialize(const FrameSystem& fs, TruncationLevel level) {
  return materialize(fs, level.n, level.m);
}

/// Aligned ladder level number L: n = |prefix| + L * |block| terms and m the
/// largest basis index those terms touch, so block boundaries line up. Dense
/// systems have a single level, their own size.
inline TruncationLevel aligned_level(const FrameSystem& fs, std::size_t blocks) {
  if (fs.is_dense()) return {fs.dense().rows(), fs.dense().cols()};
  if (blocks == 0) throw Error(ErrorKind::invalid_argument, "aligned level needs at least one block");
  const std::size_t n = fs.period_offset() + blocks * fs.period();
  std::size_t m = 1;
  for (std::size_t i = 1; i <= n; ++i) m = std::max(m, fs.term(i).max_index());
  return {n, m};
}

/// Aligned levels for the given block counts (deduplicated for dense systems).
inline Ladder aligned_ladder(const FrameSystem& fs, const std::vector<std::size_t>& blocks) {
  Ladder ladder;
  for (std::size_t b : blocks) {
    const TruncationLevel level = aligned_level(fs, b);
    if (ladder.empty() || !(ladder.back() == level)) ladder.push_back(level);
  }
  return ladder;
}

/// Strictly increasing in both coordinates.
inline bool is_valid_ladder(const Ladder& ladder) {
  if (ladder.empty()) return false;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i].n == 0 || ladder[i].m == 0) return false;
    if (i > 0 && (ladder[i].n <= ladder[i - 1].n || ladder[i].m <= ladder[i - 1].m)) return false;
  }
  return true;
}

inline std::size_t lcm_period(const FrameSystem& a, const FrameSystem& b) { return std::lcm(a.period(), b.period()); }

}  // namespace framelab
