#pragma once

// Connected graded algebras given by generators and homogeneous relations,
// and their degreewise truncations.
//
// TruncatedAlgebra computes A_d = T_d / I_d one degree at a time.  Since
// T_d = (+)_x x * T_{d-|x|} and I_d = sum_x x * I_{d-|x|} + R * T, the space
// A_d is the quotient of (+)_x x (x) A_{d-|x|} by the rows r * b, one for
// each relation r and each normal word b.  Columns are ordered largest word
// first so that the free columns of the reduced matrix are the
// deglex-smallest words outside the ideal.  The reduced matrix also yields
// the left multiplication maps L_x : A_{d-|x|} -> A_d, which carry every
// product in the truncation.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "amalg/error.hpp"
#include "amalg/field.hpp"
#include "amalg/linalg.hpp"
#include "amalg/ncpoly.hpp"

namespace amalg {

template <class F>
struct PresentedAlgebra {
  using Poly = NcPolynomial<F>;

  std::string name;
  F field{};
  GeneratorTable gens;
  std::vector<Poly> relations;
  std::vector<int> relation_degrees;

  PresentedAlgebra() = default;
  PresentedAlgebra(std::string n, const F& f) : name(std::move(n)), field(f) {}

  std::uint32_t add_generator(const std::string& g, int degree) { return gens.add(g, degree); }

  /// Relations must be homogeneous of positive degree; the zero relation is
  /// ignored.
  void add_relation(const Poly& r) {
    if (r.is_zero()) return;
    auto d = r.homogeneous_degree(gens);
    if (!d) throw InputError("relation of algebra '" + name + "' is not homogeneous: " + r.str(gens));
    if (*d < 1) throw InputError("relation of algebra '" + name + "' has a constant term: " + r.str(gens));
    relations.push_back(r);
    relation_degrees.push_back(*d);
  }
  void add_relation(const std::string& text) { add_relation(parse_ncpoly(text, gens, field)); }

  /// Same algebra with generators declared in the opposite order.
  PresentedAlgebra with_reversed_generators() const {
    PresentedAlgebra out(name, field);
    const auto n = static_cast<std::uint32_t>(gens.size());
    for (std::uint32_t i = n; i-- > 0;) out.gens.add(gens[i].name, gens[i].degree);
    for (const auto& r : relations) {
      Poly q(field);
      for (const auto& [w, c] : r.terms()) {
        Word v;
        for (auto g : w) v.push_back(n - 1 - g);
        q.add_term(v, c);
      }
      out.add_relation(q);
    }
    return out;
  }
};

template <class F>
class TruncatedAlgebra {
 public:
  using Elem = typename F::Elem;
  using Poly = NcPolynomial<F>;

  TruncatedAlgebra() = default;
  TruncatedAlgebra(const PresentedAlgebra<F>& presentation, int max_degree);

  const PresentedAlgebra<F>& presentation() const { return pres_; }
  const GeneratorTable& gens() const { return pres_.gens; }
  const F& field() const { return pres_.field; }
  int max_degree() const { return n_; }

  std::size_t dim(int d) const { return basis_.at(static_cast<std::size_t>(d)).size(); }
  std::vector<std::size_t> dims() const;
  /// Normal words of degree d in deglex order.
  const std::vector<Word>& basis(int d) const { return basis_.at(static_cast<std::size_t>(d)); }
  std::optional<std::size_t> basis_index(const Word& w) const;
  /// Basis of the augmentation ideal: basis(d) for d >= 1, empty for d = 0.
  std::vector<std::vector<Word>> augmentation_ideal_basis() const;

  /// Number of words of degree d in the free algebra.
  mpz_class word_count(int d) const;
  /// Relations of degree > N; they cannot affect the truncation.
  const std::vector<std::size_t>& inert_relations() const { return inert_; }

  Vec<F> zero(int d) const { return zero_vec(dim(d), field()); }
  Vec<F> unit() const { return unit_vec(1, 0, field()); }
  Vec<F> basis_vector(int d, std::size_t i) const { return unit_vec(dim(d), i, field()); }

  /// x * v for a generator x and v of degree e.
  Vec<F> left_generator(std::uint32_t x, int e, const Vec<F>& v) const;
  /// Coordinates of a word in the basis of its degree.
  Vec<F> reduce_word(const Word& w) const;
  /// w * v for a word w and v of degree e.
  Vec<F> left_word(const Word& w, int e, const Vec<F>& v) const;
  /// Homogeneous polynomial of the given degree (used when p is zero).
  Vec<F> evaluate(const Poly& p, int degree) const;
  Vec<F> evaluate(const Poly& p) const;
  /// u * v with |u| = du, |v| = dv.
  Vec<F> multiply(int du, const Vec<F>& u, int dv, const Vec<F>& v) const;
  /// Product of two polynomials reduced modulo the ideal.
  Vec<F> multiply_mod_ideal(const Poly& u, const Poly& v) const;

  /// Linear combination of normal words, e.g. "x*y - 2*y*x".
  std::string element_str(int d, const Vec<F>& v) const;
  Poly element_poly(int d, const Vec<F>& v) const;

 private:
  void check_degree(int d) const {
    if (d < 0 || d > n_)
      throw DegreeOverflow("degree " + std::to_string(d) + " exceeds truncation " + std::to_string(n_) +
                           " of algebra '" + pres_.name + "'");
  }
  void build_degree(int d);

  PresentedAlgebra<F> pres_;
  int n_ = 0;
  std::vector<std::vector<Word>> basis_;
  std::vector<std::map<Word, std::size_t>> index_;
  // lmap_[x][e]: dim(e + |x|) x dim(e), present for e + |x| <= N
  std::vector<std::vector<Matrix<F>>> lmap_;
  std::vector<std::size_t> inert_;
};

/// Generator images of a map between presented algebras.  The constructor
/// checks that each image is homogeneous of its generator's degree.
template <class F>
struct AlgebraMorphism {
  using Poly = NcPolynomial<F>;

  std::string name;
  const TruncatedAlgebra<F>* source = nullptr;
  const TruncatedAlgebra<F>* target = nullptr;
  std::vector<Poly> images;

  AlgebraMorphism() = default;
  AlgebraMorphism(std::string n, const TruncatedAlgebra<F>& src, const TruncatedAlgebra<F>& tgt, std::vector<Poly> imgs);
  /// Images given as text, one per source generator in declaration order.
  static AlgebraMorphism parse(std::string n, const TruncatedAlgebra<F>& src, const TruncatedAlgebra<F>& tgt,
                               const std::map<std::string, std::string>& sends);
  static AlgebraMorphism identity(const TruncatedAlgebra<F>& a);

  /// Image of a source word in the target truncation.
  Vec<F> image_of_word(const Word& w) const;
  Vec<F> apply(int d, const Vec<F>& v) const;
  /// dim target(d) x dim source(d).
  Matrix<F> matrix(int d) const;
  /// First degree <= N where the map is not injective.
  std::optional<int> first_non_injective_degree() const;
};

struct MorphismReport {
  bool ok = true;
  int degree = -1;
  std::size_t relation = 0;
  std::string message;
};

/// Every source relation of degree <= N must vanish in the target.
template <class F>
MorphismReport check_morphism(const AlgebraMorphism<F>& f);

/// g o f as generator images over g's target (the intermediate algebra must
/// be f's target and g's source).
template <class F>
AlgebraMorphism<F> compose(const AlgebraMorphism<F>& g, const AlgebraMorphism<F>& f);

/// Coproduct and antipode on generators.  psi(x) is a list of terms
/// c * u (x) v with u, v words.
template <class F>
struct HopfData {
  struct TensorTerm {
    typename F::Elem coefficient;
    Word left;
    Word right;
  };
  std::vector<std::vector<TensorTerm>> coproduct;
  std::vector<NcPolynomial<F>> antipode;

  /// Every generator primitive: psi(x) = x (x) 1 + 1 (x) x, c(x) = -x.
  static HopfData primitive(const PresentedAlgebra<F>& a);
};

struct HopfReport {
  bool algebra_map = true;
  bool counit = true;
  bool coassociative = true;
  bool antipode = true;
  int failure_degree = -1;
  std::string failure;  ///< first failing axiom with witness

  bool ok() const { return algebra_map && counit && coassociative && antipode; }
};

/// Checks, degreewise up to the truncation, that psi respects the
/// relations (Koszul-signed multiplication on A (x) A), the counit law,
/// coassociativity, that c respects the relations and the antipode identity
/// m(c (x) id)psi = m(id (x) c)psi = unit * epsilon.
template <class F>
HopfReport hopf_check(const TruncatedAlgebra<F>& a, const HopfData<F>& h);

/// Graded module over a truncated algebra.  `act(mdeg, m, adeg, a)` is the
/// action m * a (right module) or a * m (left module).
template <class F>
struct GradedModule {
  std::vector<std::size_t> dims;
  std::function<Vec<F>(int, const Vec<F>&, int, const Vec<F>&)> act;

  int max_degree() const { return static_cast<int>(dims.size()) - 1; }
};

/// The algebra acting on itself by multiplication.  The module refers to
/// `a`, which must outlive it; the same holds for the other builders.
template <class F>
GradedModule<F> regular_right_module(const TruncatedAlgebra<F>& a);
template <class F>
GradedModule<F> regular_left_module(const TruncatedAlgebra<F>& a);
/// k in degree 0 with the augmentation ideal acting by zero.
template <class F>
GradedModule<F> trivial_module(const TruncatedAlgebra<F>& a);
/// B as a right A-module through f : A -> B.
template <class F>
GradedModule<F> restricted_right_module(const AlgebraMorphism<F>& f);

/// V (x)_A W in degrees 0..N, the cokernel of (d0 - d1) : V (x) A+ (x) W ->
/// V (x) W.  Throws CheckFailure when an action is not associative on
/// generators.
template <class F>
std::vector<std::size_t> tensor_over_algebra(const GradedModule<F>& v, const TruncatedAlgebra<F>& a,
                                             const GradedModule<F>& w, int max_degree);

extern template class TruncatedAlgebra<RationalField>;
extern template class TruncatedAlgebra<PrimeField>;
extern template struct AlgebraMorphism<RationalField>;
extern template struct AlgebraMorphism<PrimeField>;

}  // namespace amalg
