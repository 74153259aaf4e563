#pragma once

// Words in graded generators and noncommutative polynomials over a field.

#include <algorithm>
#include <cstdint>
#include <map>
#include <type_traits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "amalg/error.hpp"
#include "amalg/field.hpp"

namespace amalg {

struct GeneratorSym {
  std::string name;
  int degree = 1;
};

/// A word is a sequence of generator indices; the empty word is the unit.
using Word = std::vector<std::uint32_t>;

class GeneratorTable {
 public:
  GeneratorTable() = default;
  explicit GeneratorTable(const std::vector<GeneratorSym>& gens);

  /// Throws InputError on duplicate names or degree < 1.
  std::uint32_t add(const std::string& name, int degree);
  std::optional<std::uint32_t> find(const std::string& name) const;
  std::uint32_t index(const std::string& name) const;  ///< throws on unknown name

  std::size_t size() const { return gens_.size(); }
  const GeneratorSym& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<GeneratorSym>& symbols() const { return gens_; }
  int degree(const Word& w) const;

  /// Degree first, then lexicographic by generator index.
  bool deglex_less(const Word& a, const Word& b) const;

  /// "x*y^2" ("1" for the empty word).
  std::string word_str(const Word& w) const;

 private:
  std::vector<GeneratorSym> gens_;
  std::unordered_map<std::string, std::uint32_t> by_name_;
};

/// Syntax tree of a parsed polynomial before coefficients are interpreted.
struct ParsedTerm {
  mpz_class numerator = 1;
  mpz_class denominator = 1;
  std::vector<std::pair<std::string, unsigned>> factors;  ///< generator name, exponent
};

/// Parses `terms joined by + / -; term = [int | a/b] ['*'] gen^k * ...`.
/// Throws InputError with the column of the offending character.
std::vector<ParsedTerm> parse_polynomial_terms(const std::string& text);

template <class F>
class NcPolynomial {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<Word, Elem>;

  NcPolynomial() = default;
  explicit NcPolynomial(const F& field) : field_(field) {}
  static NcPolynomial monomial(const F& field, Word w, Elem c) {
    NcPolynomial p(field);
    p.add_term(std::move(w), c);
    return p;
  }
  static NcPolynomial generator(const F& field, std::uint32_t g) { return monomial(field, Word{g}, field.one()); }

  const F& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Word& w, const Elem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Common degree of all terms; nullopt when mixed.  The zero polynomial is
  /// homogeneous of every degree and reports `fallback`.
  std::optional<int> homogeneous_degree(const GeneratorTable& gens, int fallback = 0) const {
    std::optional<int> d;
    for (const auto& [w, c] : terms_) {
      int e = gens.degree(w);
      if (d && *d != e) return std::nullopt;
      d = e;
    }
    return d ? *d : fallback;
  }

  NcPolynomial& operator+=(const NcPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NcPolynomial& operator-=(const NcPolynomial& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend NcPolynomial operator+(NcPolynomial a, const NcPolynomial& b) { return a += b; }
  friend NcPolynomial operator-(NcPolynomial a, const NcPolynomial& b) { return a -= b; }
  friend NcPolynomial operator*(const NcPolynomial& a, const NcPolynomial& b) {
    NcPolynomial out(a.field_);
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [v, cv] : b.terms_) {
        Word w = u;
        w.insert(w.end(), v.begin(), v.end());
        out.add_term(w, cu * cv);
      }
    return out;
  }
  NcPolynomial scaled(const Elem& c) const {
    NcPolynomial out(field_);
    for (const auto& [w, e] : terms_) out.add_term(w, e * c);
    return out;
  }
  friend bool operator==(const NcPolynomial& a, const NcPolynomial& b) { return a.terms_ == b.terms_; }

  /// Terms in deglex order, e.g. "x*y - y*x", "1/2*a^2 + b".
  std::string str(const GeneratorTable& gens) const;

 private:
  F field_{};
  Terms terms_;
};

/// Builds a polynomial from text, resolving generator names in `gens`.
template <class F>
NcPolynomial<F> parse_ncpoly(const std::string& text, const GeneratorTable& gens, const F& field);

/// As parse_ncpoly, additionally requiring every term to have one degree.
template <class F>
NcPolynomial<F> parse_homogeneous_ncpoly(const std::string& text, const GeneratorTable& gens, const F& field,
                                         int* degree_out = nullptr);

// ---------------------------------------------------------------------------

template <class F>
std::string NcPolynomial<F>::str(const GeneratorTable& gens) const {
  if (terms_.empty()) return "0";
  std::vector<const typename Terms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [&](auto* a, auto* b) { return gens.deglex_less(a->first, b->first); });
  std::string out;
  bool first = true;
  for (const auto* t : order) {
    const Word& w = t->first;
    Elem c = t->second;
    bool negative = false;
    if constexpr (std::is_same_v<Elem, Rational>) {
      if (c.value() < 0) {
        negative = true;
        c = -c;
      }
    }
    out += first ? (negative ? "-" : "") : (negative ? " - " : " + ");
    first = false;
    if (w.empty()) {
      out += c.str();
    } else {
      if (!c.is_one()) out += c.str() + "*";
      out += gens.word_str(w);
    }
  }
  return out;
}

template <class F>
NcPolynomial<F> parse_ncpoly(const std::string& text, const GeneratorTable& gens, const F& field) {
  NcPolynomial<F> p(field);
  for (const auto& t : parse_polynomial_terms(text)) {
    Word w;
    for (const auto& [name, exp] : t.factors) {
      auto g = gens.find(name);
      if (!g) throw InputError("unknown generator '" + name + "' in '" + text + "'");
      w.insert(w.end(), exp, *g);
    }
    p.add_term(w, field.from_fraction(t.numerator, t.denominator));
  }
  return p;
}

template <class F>
NcPolynomial<F> parse_homogeneous_ncpoly(const std::string& text, const GeneratorTable& gens, const F& field,
                                         int* degree_out) {
  auto p = parse_ncpoly(text, gens, field);
  auto d = p.homogeneous_degree(gens);
  if (!d) throw InputError("polynomial '" + text + "' mixes degrees");
  if (degree_out) *degree_out = *d;
  return p;
}

}  // namespace amalg
