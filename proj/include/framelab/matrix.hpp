#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "framelab/errors.hpp"
#include "framelab/scalar.hpp"

namespace framelab {

/// A finite coordinate vector. Coordinates are 0-based in C++; the sequence
/// index i >= 1 used in the math lives at position i - 1.
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t dim) : coords_(dim, Scalar(0)) {}
  explicit Vec(std::vector<Scalar> coords) : coords_(std::move(coords)) {}
  Vec(std::initializer_list<Scalar> coords) : coords_(coords) {}

  static Vec basis(std::size_t dim, std::size_t position) {
    if (position >= dim) throw Error(ErrorKind::index_out_of_range, "basis vector position outside dimension");
    Vec v(dim);
    v[position] = Scalar(1);
    return v;
  }

  static Vec from_doubles(const std::vector<double>& values) {
    std::vector<Scalar> c(values.begin(), values.end());
    return Vec(std::move(c));
  }

  std::size_t dim() const noexcept { return coords_.size(); }
  Scalar& operator[](std::size_t i) { return coords_[i]; }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  bool is_exact() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Scalar& s) { return s.is_exact(); });
  }

  Vec to_float() const {
    Vec out(dim());
    for (std::size_t i = 0; i < dim(); ++i) out[i] = coords_[i].to_float();
    return out;
  }

  Eigen::VectorXd to_eigen() const {
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) v(static_cast<Eigen::Index>(i)) = coords_[i].to_double();
    return v;
  }

  /// Zero-pads or truncates to `dim` coordinates.
  Vec resized(std::size_t dim) const {
    Vec out(dim);
    for (std::size_t i = 0; i < std::min(dim, this->dim()); ++i) out[i] = coords_[i];
    return out;
  }

  friend Vec operator+(const Vec& a, const Vec& b) {
    check_same(a, b);
    Vec out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] + b[i];
    return out;
  }
  friend Vec operator-(const Vec& a, const Vec& b) {
    check_same(a, b);
    Vec out(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) out[i] = a[i] - b[i];
    return out;
  }
  friend Vec operator*(const Scalar& alpha, const Vec& v) {
    Vec out(v.dim());
    for (std::size_t i = 0; i < v.dim(); ++i) out[i] = alpha * v[i];
    return out;
  }
  friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }

 private:
  static void check_same(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw Error(ErrorKind::dimension_mismatch, "vector dimensions differ");
  }

  std::vector<Scalar> coords_;
};

inline Scalar dot(const Vec& a, const Vec& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::dimension_mismatch, "dot of vectors with different dimensions");
  Scalar acc(0);
  for (std::size_t i = 0; i < a.dim(); ++i) acc += a[i] * b[i];
  return acc;
}

/// Dense row-major matrix of scalars. Used for every finite section of an
/// analysis, synthesis or frame operator. Never empty.
class LinearMapMatrix {
 public:
  LinearMapMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    if (rows == 0 || cols == 0) throw Error(ErrorKind::empty_matrix, "matrix must have at least one row and column");
    data_.assign(rows * cols, Scalar(0));
  }

  static LinearMapMatrix from_rows(const std::vector<std::vector<Scalar>>& rows) {
    if (rows.empty() || rows.front().empty()) throw Error(ErrorKind::empty_matrix, "matrix must be nonempty");
    LinearMapMatrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != m.cols_) throw Error(ErrorKind::dimension_mismatch, "ragged matrix rows");
      for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static LinearMapMatrix from_doubles(const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<Scalar>> s;
    s.reserve(rows.size());
    for (const auto& row : rows) s.emplace_back(row.begin(), row.end());
    return from_rows(s);
  }

  static LinearMapMatrix from_eigen(const Eigen::MatrixXd& m) {
    LinearMapMatrix out(static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.cols()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      for (Eigen::Index c = 0; c < m.cols(); ++c)
        out(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = Scalar(m(r, c));
    return out;
  }

  static LinearMapMatrix identity(std::size_t n) {
    LinearMapMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  static LinearMapMatrix diagonal(const std::vector<Scalar>& d) {
    LinearMapMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  bool is_exact() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.is_exact(); });
  }

  Vec row(std::size_t r) const {
    Vec out(cols_);
    for (std::size_t c = 0; c < cols_; ++c) out[c] = (*this)(r, c);
    return out;
  }
  Vec col(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  LinearMapMatrix transpose() const {
    LinearMapMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  LinearMapMatrix to_float() const {
    LinearMapMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i].to_float();
    return out;
  }

  Eigen::MatrixXd to_eigen() const {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows_), static_cast<Eigen::Index>(cols_));
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = (*this)(r, c).to_double();
    return m;
  }

  /// Top-left corner of size rows x cols.
  LinearMapMatrix block(std::size_t rows, std::size_t cols) const {
    if (rows > rows_ || cols > cols_) throw Error(ErrorKind::dimension_mismatch, "block larger than matrix");
    LinearMapMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(r, c);
    return out;
  }

  Vec apply(const Vec& v) const {
    if (v.dim() != cols_) throw Error(ErrorKind::dimension_mismatch, "matrix-vector dimension mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      Scalar acc(0);
      for (std::size_t c = 0; c < cols_; ++c) {
        const Scalar& a = (*this)(r, c);
        if (!a.is_zero()) acc += a * v[c];
      }
      out[r] = acc;
    }
    return out;
  }

  friend LinearMapMatrix operator*(const LinearMapMatrix& a, const LinearMapMatrix& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::dimension_mismatch, "matrix product dimension mismatch");
    LinearMapMatrix out(a.rows_, b.cols_);
    for (std::size_t r = 0; r < a.rows_; ++r)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& ark = a(r, k);
        if (ark.is_zero() && ark.is_exact()) continue;
        for (std::size_t c = 0; c < b.cols_; ++c) {
          const Scalar& bkc = b(k, c);
          if (bkc.is_zero() && bkc.is_exact()) continue;
          out(r, c) += ark * bkc;
        }
      }
    return out;
  }
  friend LinearMapMatrix operator+(const LinearMapMatrix& a, const LinearMapMatrix& b) {
    check_same(a, b);
    LinearMapMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] + b.data_[i];
    return out;
  }
  friend LinearMapMatrix operator-(const LinearMapMatrix& a, const LinearMapMatrix& b) {
    check_same(a, b);
    LinearMapMatrix out(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
    return out;
  }
  friend LinearMapMatrix operator*(const Scalar& alpha, const LinearMapMatrix& m) {
    LinearMapMatrix out(m.rows_, m.cols_);
    for (std::size_t i = 0; i < m.data_.size(); ++i) out.data_[i] = alpha * m.data_[i];
    return out;
  }
  friend bool operator==(const LinearMapMatrix& a, const LinearMapMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  /// Largest entrywise |a - b|, in doubles.
  friend double max_abs_difference(const LinearMapMatrix& a, const LinearMapMatrix& b) {
    check_same(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      worst = std::max(worst, std::abs(a.data_[i].to_double() - b.data_[i].to_double()));
    return worst;
  }

  double max_abs_entry() const {
    double worst = 0.0;
    for (const auto& s : data_) worst = std::max(worst, std::abs(s.to_double()));
    return worst;
  }

 private:
  static void check_same(const LinearMapMatrix& a, const LinearMapMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw Error(ErrorKind::dimension_mismatch, "matrix dimensions differ");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> data_;
};

// Exact elimination over the rationals. Only meaningful for matrices whose
// entries are all exact; callers check is_exact() first.

struct RowEchelon {
  LinearMapMatrix reduced;
  std::vector<std::size_t> pivot_columns;
  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

inline RowEchelon reduced_row_echelon(LinearMapMatrix m) {
  if (!m.is_exact()) throw Error(ErrorKind::invalid_argument, "exact elimination needs exact entries");
  std::vector<std::size_t> pivots;
  std::size_t lead_row = 0;
  for (std::size_t c = 0; c < m.cols() && lead_row < m.rows(); ++c) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, c).is_zero()) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(pivot, k), m(lead_row, k));
    const Scalar inv = Scalar(1) / m(lead_row, c);
    for (std::size_t k = c; k < m.cols(); ++k) m(lead_row, k) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, c).is_zero()) continue;
      const Scalar factor = m(r, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= factor * m(lead_row, k);
    }
    pivots.push_back(c);
    ++lead_row;
  }
  return {std::move(m), std::move(pivots)};
}

inline std::size_t exact_rank(const LinearMapMatrix& m) { return reduced_row_echelon(m).rank(); }

/// Exact inverse of a square nonsingular rational matrix (Gauss-Jordan).
inline LinearMapMatrix exact_inverse(const LinearMapMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::dimension_mismatch, "inverse of a non-square matrix");
  const std::size_t n = m.rows();
  LinearMapMatrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = Scalar(1);
  }
  const RowEchelon e = reduced_row_echelon(augmented);
  if (e.rank() < n || e.pivot_columns[n - 1] != n - 1)
    throw Error(ErrorKind::singular_frame_operator, "matrix is singular");
  LinearMapMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e.reduced(r, n + c);
  return inv;
}

/// Moore-Penrose inverse over the rationals via a rank factorization
/// M = B C with B = pivot columns of M and C = nonzero rows of rref(M):
/// M^+ = C^T (C C^T)^{-1} (B^T B)^{-1} B^T.
inline LinearMapMatrix pseudoinverse_exact(const LinearMapMatrix& m) {
  const RowEchelon e = reduced_row_echelon(m);
  const std::size_t r = e.rank();
  if (r == 0) return LinearMapMatrix(m.cols(), m.rows());
  LinearMapMatrix b(m.rows(), r);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) b(i, j) = m(i, e.pivot_columns[j]);
  const LinearMapMatrix c = e.reduced.block(r, m.cols());
  const LinearMapMatrix ct = c.transpose();
  const LinearMapMatrix bt = b.transpose();
  return ct * exact_inverse(c * ct) * exact_inverse(bt * b) * bt;
}

}  // namespace framelab
