#include "amalg/smith.hpp"

#include <sstream>

#include "amalg/error.hpp"

namespace amalg {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InputError("ragged IntMatrix initializer");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows, const std::vector<IntVec>& cols) {
  IntMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw InputError("IntMatrix::from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

IntVec IntMatrix::column(std::size_t c) const {
  IntVec v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    if ((*this)(src, c) != 0) (*this)(dst, c) += k * (*this)(src, c);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Integer& k) {
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    if ((*this)(r, src) != 0) (*this)(r, dst) += k * (*this)(r, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << (*this)(r, c).get_str();
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("IntMatrix product shape mismatch");
  IntMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (b(k, j) != 0) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

IntVec operator*(const IntMatrix& a, const IntVec& v) {
  if (a.cols() != v.size()) throw InputError("IntMatrix/vector shape mismatch");
  IntVec out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) != 0 && v[k] != 0) out[i] += a(i, k) * v[k];
  return out;
}

IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows()) throw InputError("hconcat: row count mismatch");
  IntMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

namespace {

// Working state: a = u * m * v at every step, u_inv = u^{-1}.
struct SnfState {
  IntMatrix a, u, u_inv, v;

  void add_row(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_row(dst, src, k);
    u.add_row(dst, src, k);
    u_inv.add_col(src, dst, -k);
  }
  void swap_rows(std::size_t i, std::size_t j) {
    a.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void negate_row(std::size_t r) {
    a.negate_row(r);
    u.negate_row(r);
    for (std::size_t i = 0; i < u_inv.rows(); ++i) u_inv(i, r) = -u_inv(i, r);
  }
  void add_col(std::size_t dst, std::size_t src, const Integer& k) {
    a.add_col(dst, src, k);
    v.add_col(dst, src, k);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    a.swap_cols(i, j);
    v.swap_cols(i, j);
  }
};

// Moves the smallest nonzero |entry| of the trailing submatrix to (t, t).
bool place_min_pivot(SnfState& s, std::size_t t) {
  std::size_t bi = 0, bj = 0;
  bool found = false;
  Integer best;
  for (std::size_t i = t; i < s.a.rows(); ++i)
    for (std::size_t j = t; j < s.a.cols(); ++j) {
      if (s.a(i, j) == 0) continue;
      Integer m = abs(s.a(i, j));
      if (!found || m < best) {
        best = m;
        bi = i;
        bj = j;
        found = true;
      }
    }
  if (!found) return false;
  s.swap_rows(t, bi);
  s.swap_cols(t, bj);
  return true;
}

// Clears row t and column t outside (t, t); returns false if a remainder
// survived (the pivot must then be re-chosen).
bool clear_cross(SnfState& s, std::size_t t) {
  bool clean = true;
  const Integer p = s.a(t, t);
  for (std::size_t i = t + 1; i < s.a.rows(); ++i) {
    if (s.a(i, t) == 0) continue;
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), s.a(i, t).get_mpz_t(), p.get_mpz_t());
    s.add_row(i, t, -q);
    if (s.a(i, t) != 0) clean = false;
  }
  for (std::size_t j = t + 1; j < s.a.cols(); ++j) {
    if (s.a(t, j) == 0) continue;
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), s.a(t, j).get_mpz_t(), p.get_mpz_t());
    s.add_col(j, t, -q);
    if (s.a(t, j) != 0) clean = false;
  }
  return clean;
}

// Moves the smallest nonzero entry of row t / column t onto the diagonal.
void place_cross_pivot(SnfState& s, std::size_t t) {
  Integer best = abs(s.a(t, t));
  std::size_t bi = t, bj = t;
  for (std::size_t i = t + 1; i < s.a.rows(); ++i)
    if (s.a(i, t) != 0 && (best == 0 || abs(s.a(i, t)) < best)) {
      best = abs(s.a(i, t));
      bi = i;
      bj = t;
    }
  for (std::size_t j = t + 1; j < s.a.cols(); ++j)
    if (s.a(t, j) != 0 && (best == 0 || abs(s.a(t, j)) < best)) {
      best = abs(s.a(t, j));
      bi = t;
      bj = j;
    }
  s.swap_rows(t, bi);
  s.swap_cols(t, bj);
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SnfState s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  std::size_t t = 0;
  const std::size_t lim = std::min(m.rows(), m.cols());
  while (t < lim && place_min_pivot(s, t)) {
    for (;;) {
      while (!clear_cross(s, t)) place_cross_pivot(s, t);
      // divisibility: every trailing entry must be a multiple of the pivot
      std::size_t bad_row = 0;
      bool bad = false;
      for (std::size_t i = t + 1; i < s.a.rows() && !bad; ++i)
        for (std::size_t j = t + 1; j < s.a.cols(); ++j)
          if (!mpz_divisible_p(s.a(i, j).get_mpz_t(), s.a(t, t).get_mpz_t())) {
            bad = true;
            bad_row = i;
            break;
          }
      if (!bad) break;
      s.add_row(t, bad_row, 1);
    }
    if (s.a(t, t) < 0) s.negate_row(t);
    ++t;
  }
  SmithForm out;
  out.rank = t;
  for (std::size_t i = 0; i < t; ++i) out.factors.push_back(s.a(i, i));
  out.u = std::move(s.u);
  out.u_inverse = std::move(s.u_inv);
  out.v = std::move(s.v);
  return out;
}

std::vector<IntVec> integer_kernel(const IntMatrix& m) {
  SmithForm snf = smith_normal_form(m);
  std::vector<IntVec> out;
  for (std::size_t c = snf.rank; c < m.cols(); ++c) out.push_back(snf.v.column(c));
  return out;
}

Lattice::Lattice(std::size_t ambient_dim, const std::vector<IntVec>& generators)
    : dim_(ambient_dim), snf_(smith_normal_form(IntMatrix::from_columns(ambient_dim, generators))) {
  for (std::size_t i = 0; i < snf_.rank; ++i) {
    IntVec b = snf_.u_inverse.column(i);
    for (auto& x : b) x *= snf_.factors[i];
    basis_.push_back(std::move(b));
  }
}

std::optional<IntVec> Lattice::coordinates(const IntVec& v) const {
  if (v.size() != dim_) throw InputError("Lattice::coordinates: dimension mismatch");
  IntVec w = snf_.u * v;
  IntVec c(snf_.rank);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i < snf_.rank) {
      if (!mpz_divisible_p(w[i].get_mpz_t(), snf_.factors[i].get_mpz_t())) return std::nullopt;
      c[i] = w[i] / snf_.factors[i];
    } else if (w[i] != 0) {
      return std::nullopt;
    }
  }
  return c;
}

}  // namespace amalg
