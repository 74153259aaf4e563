#pragma once

// Graded-commutative rings over Z given by generators and relations,
// expanded degree by degree into finitely generated abelian groups.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "amalg/graded.hpp"
#include "amalg/smith.hpp"

namespace amalg {

struct ZGenerator {
  std::string name;
  int degree = 1;
};

/// Exponent vector in declared generator order.
using Monomial = std::vector<unsigned>;
using ZPoly = std::map<Monomial, Integer>;

class GCRing {
 public:
  GCRing() = default;
  explicit GCRing(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  std::size_t size() const { return gens_.size(); }
  const std::vector<ZGenerator>& generators() const { return gens_; }

  /// Generators must be declared before any relation.
  std::size_t add_generator(const std::string& name, int degree);
  std::optional<std::size_t> find(const std::string& name) const;
  /// Homogeneous of any degree; a constant relation kills the ring.
  void add_relation(const ZPoly& r);
  void add_relation(const std::string& text);
  const std::vector<ZPoly>& relations() const { return rels_; }
  /// Declared relations followed by 2x^2 for every odd generator x.
  std::vector<ZPoly> all_relations() const;

  int degree(const Monomial& m) const;
  std::optional<int> homogeneous_degree(const ZPoly& p) const;
  Monomial one() const { return Monomial(gens_.size(), 0); }
  Monomial generator(std::size_t i) const;
  /// a * b = sign * (a + b), the sign coming from moving odd generators past
  /// each other.
  std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) const;
  ZPoly multiply(const ZPoly& a, const ZPoly& b) const;
  ZPoly parse(const std::string& text) const;

  std::string monomial_str(const Monomial& m) const;
  std::string poly_str(const ZPoly& p) const;

  /// The same ring with generators declared in the order order[0], order[1], ...
  GCRing with_generator_order(const std::vector<std::size_t>& order) const;

 private:
  std::string name_;
  std::vector<ZGenerator> gens_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::vector<ZPoly> rels_;
};

void add_term(ZPoly& p, const Monomial& m, const Integer& c);

/// The additive groups R_0, ..., R_N: monomials of degree d modulo the
/// products of relations with monomials.
class ExpandedRing {
 public:
  ExpandedRing(std::shared_ptr<const GCRing> ring, int max_degree);

  const GCRing& ring() const { return *ring_; }
  int max_degree() const { return n_; }
  const std::vector<Monomial>& monomials(int d) const { return mono_.at(static_cast<std::size_t>(d)); }
  std::optional<std::size_t> index(const Monomial& m) const;
  const PresentedAbelianGroup& group(int d) const { return groups_.at(static_cast<std::size_t>(d)); }
  const AbelianGroup& structure(int d) const { return additive_.degrees.at(static_cast<std::size_t>(d)); }
  const GradedAbelianGroup& additive() const { return additive_; }

  /// Coordinates of a polynomial homogeneous of degree d.
  IntVec coordinates(const ZPoly& p, int d) const;
  ZPoly polynomial(int d, const IntVec& v) const;
  bool is_zero(int d, const IntVec& v) const { return group(d).is_zero(v); }
  /// Product of u in degree du and v in degree dv, in monomial coordinates of
  /// degree du + dv.  Throws DegreeOverflow above N.
  IntVec multiply(int du, const IntVec& u, int dv, const IntVec& v) const;

 private:
  std::shared_ptr<const GCRing> ring_;
  int n_;
  std::vector<std::vector<Monomial>> mono_;
  std::vector<std::map<Monomial, std::size_t>> index_;
  std::vector<PresentedAbelianGroup> groups_;
  GradedAbelianGroup additive_;
};

inline ExpandedRing expand_presentation(std::shared_ptr<const GCRing> ring, int max_degree) {
  return ExpandedRing(std::move(ring), max_degree);
}

struct ZRingMap {
  std::string name;
  std::shared_ptr<const GCRing> source;
  std::shared_ptr<const GCRing> target;
  std::vector<ZPoly> images;

  /// Throws InputError when an image is not homogeneous of its generator's degree.
  ZRingMap(std::string n, std::shared_ptr<const GCRing> src, std::shared_ptr<const GCRing> tgt,
           std::vector<ZPoly> imgs);
  static ZRingMap parse(std::string n, std::shared_ptr<const GCRing> src, std::shared_ptr<const GCRing> tgt,
                        const std::map<std::string, std::string>& sends);

  ZPoly apply(const ZPoly& p) const;
};

/// g o f.
ZRingMap compose(const ZRingMap& g, const ZRingMap& f);

/// Per degree d <= N the matrix (target monomials x source monomials) of f.
/// Throws CheckFailure at the first degree where a relation is not sent to zero.
std::vector<IntMatrix> ring_map_matrices(const ZRingMap& f, const ExpandedRing& src, const ExpandedRing& tgt);

/// Kernel of phi(a, b) = f(a) - g(b) on A + B -> C.
struct MVKernel {
  GradedAbelianGroup kernel;
  GradedAbelianGroup cokernel;
  /// Per degree: kernel generators in the coordinates of A(d) followed by B(d).
  std::vector<std::vector<IntVec>> generators;
  std::vector<std::vector<Integer>> orders;
  bool surjective = true;
  int first_cokernel_degree = -1;
};

MVKernel mv_kernel(const ZRingMap& f, const ZRingMap& g, int max_degree);

struct IsoReport {
  bool ok = true;
  int failure_degree = -1;
  std::string message;
};

/// Sends generator x of r to images[x] = (a, b) in A + B and checks, for
/// every degree <= N, that the induced map r_d -> (A + B)_d is well defined,
/// injective, lands in ker phi and hits all of it.
IsoReport verify_presentation_iso(const GCRing& r, const ZRingMap& f, const ZRingMap& g,
                                  const std::vector<std::pair<ZPoly, ZPoly>>& images, int max_degree);

/// Additive cohomology of a product: in degree n the sum of R_p (x) R'_q over
/// p + q = n and Tor(R_p, R'_q) over p + q = n + 1.
GradedAbelianGroup kunneth_product(const ExpandedRing& r, const ExpandedRing& s);

}  // namespace amalg
