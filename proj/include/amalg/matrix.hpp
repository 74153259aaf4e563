#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "amalg/error.hpp"

namespace amalg {

/// Dense row-major matrix over a field.
template <class F>
class Matrix {
 public:
  using Elem = typename F::Elem;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const F& field)
      : rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(std::size_t n, const F& field) {
    Matrix m(n, n, field);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Elem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Elem& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<Elem> column(std::size_t c) const {
    std::vector<Elem> v;
    v.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
    return v;
  }
  void set_column(std::size_t c, std::span<const Elem> v) {
    if (v.size() != rows_) throw InputError("column length mismatch");
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(data_.begin() + a * cols_, data_.begin() + (a + 1) * cols_, data_.begin() + b * cols_);
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Elem& e) { return e.is_zero(); });
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

template <class F>
std::vector<typename F::Elem> apply(const Matrix<F>& m, std::span<const typename F::Elem> v, const F& field) {
  if (v.size() != m.cols()) throw InputError("matrix/vector shape mismatch");
  std::vector<typename F::Elem> out(m.rows(), field.zero());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (!m(r, c).is_zero()) out[r] += m(r, c) * v[c];
  }
  return out;
}

template <class F>
Matrix<F> multiply(const Matrix<F>& a, const Matrix<F>& b, const F& field) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  Matrix<F> out(a.rows(), b.cols(), field);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <class V>
bool is_zero_vector(const V& v) {
  return std::all_of(v.begin(), v.end(), [](const auto& e) { return e.is_zero(); });
}

template <class F>
void axpy(std::vector<typename F::Elem>& y, const typename F::Elem& a, std::span<const typename F::Elem> x) {
  if (a.is_zero()) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!x[i].is_zero()) y[i] += a * x[i];
}

}  // namespace amalg
