#pragma once

// Integer matrices, Smith normal form and lattice helpers.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace amalg {

using Integer = mpz_class;
using IntVec = std::vector<Integer>;

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(std::size_t rows, const std::vector<IntVec>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVec column(std::size_t c) const;
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Integer& k);
  void add_col(std::size_t dst, std::size_t src, const Integer& k);
  void negate_row(std::size_t r);

  bool is_zero() const;
  std::string str() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVec operator*(const IntMatrix& a, const IntVec& v);
/// [A | B]; both must have the same number of rows.
IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);

/// U * M * V = D with D diagonal, d_1 | d_2 | ... | d_r, d_i >= 1, and U, V
/// unimodular.  u_inverse is U^{-1}.
struct SmithForm {
  std::vector<Integer> factors;
  std::size_t rank = 0;
  IntMatrix u;
  IntMatrix u_inverse;
  IntMatrix v;
};

SmithForm smith_normal_form(const IntMatrix& m);

/// Basis (as columns) of the integer kernel {x : M x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix& m);

/// Sublattice of Z^n spanned by a set of vectors, with a basis and
/// membership/coordinate queries.
class Lattice {
 public:
  Lattice(std::size_t ambient_dim, const std::vector<IntVec>& generators);

  std::size_t ambient_dim() const { return dim_; }
  std::size_t rank() const { return basis_.size(); }
  const std::vector<IntVec>& basis() const { return basis_; }
  /// Coordinates of v in basis(), or nullopt when v is not in the lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;
  bool contains(const IntVec& v) const { return coordinates(v).has_value(); }

 private:
  std::size_t dim_;
  std::vector<IntVec> basis_;
  SmithForm snf_;  // of the generator matrix
};

}  // namespace amalg
