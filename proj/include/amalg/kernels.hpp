#pragma once

// Gauss-Jordan elimination kernels over an exact field.
//
// rref_serial is the reference implementation.  rref_parallel distributes the
// row updates of each pivot step across OpenMP threads; every row is updated
// by exactly one thread with the same operation sequence as the serial
// kernel, so both produce identical matrices and pivot lists.

#include <cstddef>
#include <vector>

#include "amalg/matrix.hpp"

namespace amalg::kernels {

/// Matrices at least this large (rows * cols) go to the parallel kernel when
/// callers use rref().
inline constexpr std::size_t kParallelThreshold = 64 * 64;

namespace detail {

template <class F>
bool select_pivot(Matrix<F>& m, std::size_t rank, std::size_t col, const F& field) {
  std::size_t piv = m.rows();
  for (std::size_t r = rank; r < m.rows(); ++r)
    if (!m(r, col).is_zero()) {
      piv = r;
      break;
    }
  if (piv == m.rows()) return false;
  m.swap_rows(rank, piv);
  auto inv = field.one() / m(rank, col);
  for (std::size_t c = col; c < m.cols(); ++c) m(rank, c) *= inv;
  return true;
}

template <class F>
void eliminate_row(Matrix<F>& m, std::size_t target, std::size_t pivot_row, std::size_t col) {
  auto factor = m(target, col);
  if (factor.is_zero()) return;
  for (std::size_t c = col; c < m.cols(); ++c) {
    if (m(pivot_row, c).is_zero()) continue;
    m(target, c) -= factor * m(pivot_row, c);
  }
}

}  // namespace detail

/// Reduced row echelon form in place.  Pivot = leftmost nonzero column,
/// smallest row index among candidates.  Returns pivot columns.
template <class F>
std::vector<std::size_t> rref_serial(Matrix<F>& m, const F& field) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    if (!detail::select_pivot(m, rank, col, field)) continue;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != rank) detail::eliminate_row(m, r, rank, col);
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

template <class F>
std::vector<std::size_t> rref_parallel(Matrix<F>& m, const F& field) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  const auto nrows = static_cast<long long>(m.rows());
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    if (!detail::select_pivot(m, rank, col, field)) continue;
    const auto pr = static_cast<long long>(rank);
#pragma omp parallel for schedule(static)
    for (long long r = 0; r < nrows; ++r)
      if (r != pr) detail::eliminate_row(m, static_cast<std::size_t>(r), rank, col);
    pivots.push_back(col);
    ++rank;
  }
  return pivots;
}

template <class F>
std::vector<std::size_t> rref(Matrix<F>& m, const F& field) {
  if (m.rows() * m.cols() >= kParallelThreshold) return rref_parallel(m, field);
  return rref_serial(m, field);
}

}  // namespace amalg::kernels
