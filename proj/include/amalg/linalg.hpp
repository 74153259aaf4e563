#pragma once

// Row reduction, incremental row spaces and subspace arithmetic over an
// exact field.

#include <cstddef>
#include <optional>
#include <vector>

#include "amalg/kernels.hpp"
#include "amalg/matrix.hpp"

namespace amalg {

template <class F>
using Vec = std::vector<typename F::Elem>;

template <class F>
Vec<F> zero_vec(std::size_t n, const F& field) {
  return Vec<F>(n, field.zero());
}

template <class F>
Vec<F> unit_vec(std::size_t n, std::size_t i, const F& field) {
  Vec<F> v(n, field.zero());
  v[i] = field.one();
  return v;
}

/// Row space kept in reduced row echelon form; rows are added one at a time.
/// Pivot of a row is its leftmost nonzero column.
template <class F>
class RowEchelon {
 public:
  using Elem = typename F::Elem;

  RowEchelon(const F& field, std::size_t ncols)
      : field_(field), ncols_(ncols), pivot_row_(ncols, kNone) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == ncols_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  const Vec<F>& row(std::size_t k) const { return rows_[k]; }
  std::optional<std::size_t> row_of_pivot(std::size_t col) const {
    if (pivot_row_[col] == kNone) return std::nullopt;
    return pivot_row_[col];
  }
  bool is_pivot(std::size_t col) const { return pivot_row_[col] != kNone; }

  /// Reduces v modulo the row space, in place.
  void reduce(Vec<F>& v) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const Elem c = v[pivots_[k]];
      if (c.is_zero()) continue;
      const Vec<F>& r = rows_[k];
      for (std::size_t j = 0; j < ncols_; ++j)
        if (!r[j].is_zero()) v[j] -= c * r[j];
    }
  }

  bool contains(Vec<F> v) const {
    reduce(v);
    return is_zero_vector(v);
  }

  /// Adds v to the row space; returns false if v was already in it.
  bool insert(Vec<F> v) {
    if (v.size() != ncols_) throw InputError("row length mismatch in RowEchelon::insert");
    if (full()) return false;
    reduce(v);
    std::size_t col = 0;
    while (col < ncols_ && v[col].is_zero()) ++col;
    if (col == ncols_) return false;
    const Elem inv = field_.one() / v[col];
    for (std::size_t j = col; j < ncols_; ++j)
      if (!v[j].is_zero()) v[j] *= inv;
    for (auto& r : rows_) {
      const Elem c = r[col];
      if (c.is_zero()) continue;
      for (std::size_t j = col; j < ncols_; ++j)
        if (!v[j].is_zero()) r[j] -= c * v[j];
    }
    pivot_row_[col] = rows_.size();
    pivots_.push_back(col);
    rows_.push_back(std::move(v));
    return true;
  }

  /// Columns that are not pivots, ascending.
  std::vector<std::size_t> free_columns() const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < ncols_; ++c)
      if (pivot_row_[c] == kNone) out.push_back(c);
    return out;
  }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  F field_;
  std::size_t ncols_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> pivot_row_;
};

template <class F>
struct RowReduction {
  std::size_t rank = 0;
  std::vector<Vec<F>> kernel;  ///< basis of {v : M v = 0}
  std::vector<Vec<F>> image;   ///< basis of the column space (pivot columns of M)
  std::vector<std::size_t> pivot_columns;
};

/// Rank, kernel basis and image basis of M.
template <class F>
RowReduction<F> row_reduce(const Matrix<F>& m, const F& field) {
  Matrix<F> r = m;
  RowReduction<F> out;
  out.pivot_columns = kernels::rref(r, field);
  out.rank = out.pivot_columns.size();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[fc]) continue;
    Vec<F> v = zero_vec(m.cols(), field);
    v[fc] = field.one();
    for (std::size_t k = 0; k < out.pivot_columns.size(); ++k) v[out.pivot_columns[k]] = -r(k, fc);
    out.kernel.push_back(std::move(v));
  }
  for (auto c : out.pivot_columns) out.image.push_back(m.column(c));
  return out;
}

template <class F>
std::size_t rank_of(const std::vector<Vec<F>>& rows, std::size_t ncols, const F& field) {
  RowEchelon<F> e(field, ncols);
  for (const auto& v : rows) e.insert(v);
  return e.rank();
}

/// Solves M x = b; returns nullopt when b is outside the column space.
template <class F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b, const F& field) {
  if (b.size() != m.rows()) throw InputError("solve: shape mismatch");
  Matrix<F> aug(m.rows(), m.cols() + 1, field);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto piv = kernels::rref(aug, field);
  if (!piv.empty() && piv.back() == m.cols()) return std::nullopt;
  Vec<F> x = zero_vec(m.cols(), field);
  for (std::size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug(k, m.cols());
  return x;
}

/// Inverse of a square matrix; throws InputError when singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& m, const F& field) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("inverse of a non-square matrix");
  Matrix<F> aug(n, 2 * n, field);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = field.one();
  }
  auto piv = kernels::rref(aug, field);
  if (piv.size() < n || (n > 0 && piv[n - 1] != n - 1)) throw InputError("matrix is singular");
  Matrix<F> out(n, n, field);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = aug(i, n + j);
  return out;
}

}  // namespace amalg
