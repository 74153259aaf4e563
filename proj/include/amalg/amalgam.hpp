#pragma once

// Pushouts B1 <- B0 -> B2 of connected graded algebras along injective maps
// that make each B_i a free right B0-module.  Elements of the pushout are
// written in normal form: an alternating word of transversal letters
// followed by a tail in B0.

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "amalg/algebra.hpp"

namespace amalg {

template <class F>
class AmalgamDiagram {
 public:
  using Poly = NcPolynomial<F>;

  /// f1, f2 are generator images (over B1, B2) of the generators of B0.
  AmalgamDiagram(const PresentedAlgebra<F>& b0, const PresentedAlgebra<F>& b1, const PresentedAlgebra<F>& b2,
                 std::vector<Poly> f1, std::vector<Poly> f2, int max_degree, std::string f1_name = "f1",
                 std::string f2_name = "f2");
  static AmalgamDiagram parse(const PresentedAlgebra<F>& b0, const PresentedAlgebra<F>& b1,
                              const PresentedAlgebra<F>& b2, const std::map<std::string, std::string>& f1,
                              const std::map<std::string, std::string>& f2, int max_degree,
                              std::string f1_name = "f1", std::string f2_name = "f2");

  int max_degree() const { return n_; }
  const F& field() const { return algebra(0).field(); }
  /// 0 = base, 1 = left, 2 = right.
  const TruncatedAlgebra<F>& algebra(int i) const { return *alg_.at(static_cast<std::size_t>(i)); }
  /// i = 1, 2.
  const AlgebraMorphism<F>& map(int i) const { return maps_.at(static_cast<std::size_t>(i - 1)); }

  /// The same diagram with every generator list declared in reverse order.
  AmalgamDiagram reversed() const;
  /// Same diagram, different truncation.
  AmalgamDiagram truncated(int max_degree) const;

 private:
  std::array<std::shared_ptr<const TruncatedAlgebra<F>>, 3> alg_;
  std::array<AlgebraMorphism<F>, 2> maps_;
  int n_;
};

/// {1} together with `elements` freely generates B_i as a right B0-module.
template <class F>
struct ModuleTransversal {
  struct Pair {
    int letter;  ///< -1 for the unit
    int tail_degree;
    std::size_t tail;
  };

  int factor = 1;
  std::vector<int> degrees;
  std::vector<Vec<F>> elements;  ///< coordinates in B_i
  /// Per degree d: the module basis m * f(b) of B_i(d) and the matrix taking
  /// B_i coordinates to coordinates in that basis.
  std::vector<std::vector<Pair>> pairs;
  std::vector<Matrix<F>> to_module;
};

/// Greedy deglex choice of a right B0-module complement of f(B0) in B.
/// Throws CheckFailure at the first degree where the right B0-span of the
/// chosen elements is not free.
template <class F>
ModuleTransversal<F> module_complement_basis(const AlgebraMorphism<F>& f, int factor);

struct FreenessReport {
  bool ok = true;
  int failing_map = 0;  ///< 1 or 2
  int degree = -1;
  std::string message;
  std::array<std::vector<int>, 2> transversal_degrees;
};

template <class F>
FreenessReport check_homologically_free(const AmalgamDiagram<F>& d);

struct Letter {
  int factor;  ///< 1 or 2
  std::size_t index;
  auto operator<=>(const Letter&) const = default;
};

struct NormalWord {
  std::vector<Letter> letters;
  int tail_degree = 0;
  std::size_t tail = 0;
  auto operator<=>(const NormalWord&) const = default;
};

template <class F>
struct AmalgamElement {
  using Elem = typename F::Elem;
  int degree = 0;
  std::map<NormalWord, Elem> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const NormalWord& w, const Elem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  void add(const AmalgamElement& o, const Elem& c) {
    for (const auto& [w, e] : o.terms) add(w, c * e);
  }
  friend bool operator==(const AmalgamElement& a, const AmalgamElement& b) {
    return a.degree == b.degree && a.terms == b.terms;
  }
};

template <class F>
class Amalgam {
 public:
  using Elem = typename F::Elem;
  using Element = AmalgamElement<F>;

  /// Throws CheckFailure when the diagram is not homologically free.
  explicit Amalgam(AmalgamDiagram<F> diagram);

  const AmalgamDiagram<F>& diagram() const { return diag_; }
  const F& field() const { return diag_.field(); }
  int max_degree() const { return diag_.max_degree(); }
  const ModuleTransversal<F>& transversal(int i) const { return trans_.at(static_cast<std::size_t>(i - 1)); }
  int letter_degree(const Letter& l) const { return transversal(l.factor).degrees[l.index]; }
  int degree(const NormalWord& w) const;

  const std::vector<NormalWord>& basis(int d) const { return basis_.at(static_cast<std::size_t>(d)); }
  std::size_t dim(int d) const { return basis(d).size(); }
  std::vector<std::size_t> poincare_series() const;
  std::size_t index_of(const NormalWord& w) const;

  Element zero(int d) const { return Element{d, {}}; }
  Element unit() const;
  Element word(const NormalWord& w) const;
  /// Image of y in B_i(d), i in {0, 1, 2}.
  Element embed(int i, int d, const Vec<F>& y) const;
  Element multiply(const Element& u, const Element& v) const;
  Vec<F> coordinates(const Element& e) const;
  Element from_coordinates(int d, const Vec<F>& v) const;

  std::string word_str(const NormalWord& w) const;
  std::string element_str(const Element& e) const;

 private:
  using CacheKey = std::tuple<int, int, std::size_t, NormalWord>;

  void check_degree(int d) const;
  Element left_mult(int i, int dy, const Vec<F>& y, const NormalWord& w) const;
  Element left_mult_basis(int i, int dy, std::size_t k, const NormalWord& w) const;
  Element base_act(int db, std::size_t b, const NormalWord& w) const;
  Element word_times(const NormalWord& a, const NormalWord& b) const;

  AmalgamDiagram<F> diag_;
  std::array<ModuleTransversal<F>, 2> trans_;
  // f_i(e_b) for every basis element b of B0, per factor and degree
  std::array<std::vector<std::vector<Vec<F>>>, 2> base_images_;
  std::vector<std::vector<NormalWord>> basis_;
  std::vector<std::map<NormalWord, std::size_t>> index_;

  mutable std::mutex cache_mutex_;
  mutable std::map<CacheKey, Element> left_cache_;
  mutable std::map<std::tuple<int, std::size_t, NormalWord>, Element> base_cache_;
};

/// dims of P_n / P_{n-1}: normal words whose shape has length exactly n.
template <class F>
std::vector<std::size_t> graded_pieces(const Amalgam<F>& p, int n);

/// dims of P_n B_j / P_{n-1} B_j counted from shapes of length n not ending
/// in j times a basis of B_j.
template <class F>
std::vector<std::size_t> second_filtration_pieces(const Amalgam<F>& p, int j, int n);

/// dims of P_n B_j computed as the span of products (word of length <= n) * b.
template <class F>
std::vector<std::size_t> second_filtration_span(const Amalgam<F>& p, int j, int n);

/// dims of P (x)_{B_j} k, j in {0, 1, 2}.
template <class F>
std::vector<std::size_t> tensor_down(const Amalgam<F>& p, int j);

struct BruhatReport {
  bool ok = true;
  int failure_degree = -1;
  std::string failure;
  std::array<std::vector<std::size_t>, 3> quotient_dims;  ///< dims of P (x)_{B_j} k
  std::vector<std::size_t> rank;                         ///< rank of P/B0 -> P/B1 + P/B2
  std::vector<std::size_t> cokernel;
};

/// The map P (x)_{B0} k -> P (x)_{B1} k + P (x)_{B2} k is injective in every
/// degree with cokernel k in degree 0 and 0 above.
template <class F>
BruhatReport bruhat_check(const Amalgam<F>& p);

struct BoundaryReport {
  bool ok = true;
  int failure_degree = -1;
  std::vector<std::size_t> q_dims;  ///< Q_n: sum over shapes of B_{i_1} (x)_{B0} ... (x)_{B0} B_{i_n}
  std::vector<std::size_t> w_dims;  ///< W_n: images of the shapes with one slot in B0
  std::vector<std::size_t> pieces;  ///< dims of P_n / P_{n-1}
};

/// For n >= 1 checks dim Q_n - dim W_n = dim P_n / P_{n-1} in degrees <= max_degree.
template <class F>
BoundaryReport boundary_dims(const Amalgam<F>& p, int n, int max_degree);

/// Generators are the positive-degree bases of B1 and B2; relations identify
/// f1(a) with f2(a) and contract products inside each factor.
template <class F>
PresentedAlgebra<F> pushout_presentation(const AmalgamDiagram<F>& d);

/// Truncated basis of the pushout presentation.  Throws InputError when the
/// free algebra has more than 10^7 words in the top degree.
template <class F>
std::vector<std::size_t> brute_force_pushout(const AmalgamDiagram<F>& d, int max_degree);

extern template class AmalgamDiagram<RationalField>;
extern template class AmalgamDiagram<PrimeField>;
extern template class Amalgam<RationalField>;
extern template class Amalgam<PrimeField>;

}  // namespace amalg
