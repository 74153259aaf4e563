#pragma once

// Amalgamated free products B1 *_{B0} B2 of finite groups.  Elements are
// written as r_1 ... r_n a: nontrivial coset representatives of f_i(B0) in
// B_i with alternating factors, followed by a tail a in B0.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "amalg/error.hpp"

namespace amalg {

class FiniteGroup {
 public:
  using Elem = std::uint32_t;

  /// Verifies the axioms: associativity on every triple for order <= 64 and
  /// on a fixed-seed sample above that, then identity and inverses.
  FiniteGroup(std::string name, std::vector<std::vector<Elem>> table);

  static FiniteGroup cyclic(std::uint32_t n);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);

  const std::string& name() const { return name_; }
  std::size_t order() const { return table_.size(); }
  Elem identity() const { return identity_; }
  Elem mul(Elem a, Elem b) const { return table_[a][b]; }
  Elem inv(Elem a) const { return inverse_[a]; }

 private:
  std::string name_;
  std::vector<std::vector<Elem>> table_;
  Elem identity_ = 0;
  std::vector<Elem> inverse_;
};

struct GroupHom {
  std::shared_ptr<const FiniteGroup> source;
  std::shared_ptr<const FiniteGroup> target;
  std::vector<FiniteGroup::Elem> image;

  /// Throws InputError when the image array is not a homomorphism.
  GroupHom(std::shared_ptr<const FiniteGroup> src, std::shared_ptr<const FiniteGroup> tgt,
           std::vector<FiniteGroup::Elem> img);
  /// The homomorphism Z/m -> target sending 1 to g.
  static GroupHom from_generator(std::shared_ptr<const FiniteGroup> src, std::shared_ptr<const FiniteGroup> tgt,
                                 FiniteGroup::Elem g);

  FiniteGroup::Elem operator()(FiniteGroup::Elem x) const { return image[x]; }
  bool injective() const;
};

/// Cosets g H of a subgroup H.  The coset H is represented by the identity,
/// every other coset by its smallest element.
struct CosetTransversal {
  std::vector<FiniteGroup::Elem> reps;        ///< reps[0] is the identity
  std::vector<std::size_t> coset_of;          ///< element -> index into reps
  std::vector<FiniteGroup::Elem> in_subgroup; ///< g -> h in H with g = rep(g) h
};

/// Throws InputError when `subgroup` is not closed under the product.
CosetTransversal transversal(const FiniteGroup& g, const std::vector<FiniteGroup::Elem>& subgroup);

struct GroupLetter {
  int factor;  ///< 0, 1 or 2
  FiniteGroup::Elem elem;
  auto operator<=>(const GroupLetter&) const = default;
};

using GroupWord = std::vector<GroupLetter>;

struct GroupNormalWord {
  std::vector<GroupLetter> letters;  ///< factors 1, 2 alternating; elements are nontrivial reps
  FiniteGroup::Elem tail = 0;        ///< element of B0
  auto operator<=>(const GroupNormalWord&) const = default;
};

class GroupAmalgam {
 public:
  using Elem = FiniteGroup::Elem;

  /// Throws InputError when a map is not injective or the maps do not share
  /// their source.
  GroupAmalgam(std::string name, GroupHom f1, GroupHom f2);

  const std::string& name() const { return name_; }
  const FiniteGroup& group(int i) const;
  const GroupHom& map(int i) const { return i == 1 ? f1_ : f2_; }
  const CosetTransversal& cosets(int i) const { return i == 1 ? t1_ : t2_; }

  GroupNormalWord identity() const { return GroupNormalWord{{}, group(0).identity()}; }
  /// Normal form, reading the word from the right.
  GroupNormalWord reduce(const GroupWord& w) const;
  /// Normal form through a random bracketing of w; must agree with reduce.
  GroupNormalWord reduce_bracketed(const GroupWord& w, std::mt19937_64& rng) const;
  GroupNormalWord multiply(const GroupNormalWord& u, const GroupNormalWord& v) const;
  /// The normal word written out as a word: letters followed by the tail.
  GroupWord spell(const GroupNormalWord& w) const;

  std::string letter_str(const GroupLetter& l) const;
  std::string word_str(const GroupNormalWord& w) const;

 private:
  void left_mult(int i, Elem g, GroupNormalWord& w) const;

  std::string name_;
  GroupHom f1_, f2_;
  CosetTransversal t1_, t2_;
  std::vector<std::optional<Elem>> pre1_, pre2_;  // B_i element -> preimage in B0
};

/// |P_0|, ..., |P_n|: |B0| times the number of alternating words of length <= k.
std::vector<std::uint64_t> filtration_sizes(const GroupAmalgam& d, int n);

struct BijectionReport {
  bool ok = true;
  std::string failure;
  std::uint64_t words = 0;                    ///< raw words enumerated
  std::vector<std::uint64_t> distinct;        ///< distinct normal forms of length <= k, k = 0..L
  std::vector<std::uint64_t> expected;        ///< filtration_sizes(d, L)
};

/// Enumerates every word of length <= L over the nontrivial elements of B0,
/// B1, B2.  Checks that the normal form is unchanged by each elementary move
/// (inserting an identity, splitting a letter into two of the same factor,
/// trading a B0 letter for its image), that normal words reduce to
/// themselves, and that the normal forms of length <= k number |P_k|.
BijectionReport normal_form_bijection_check(const GroupAmalgam& d, int max_length, bool parallel = true);

/// Sorted distinct normal forms of all words of length <= L.
std::vector<GroupNormalWord> enumerate_normal_forms(const GroupAmalgam& d, int max_length, bool parallel);

struct OrbitReport {
  std::uint64_t product_size = 0;  ///< |B_{i_1} x ... x B_{i_n}|
  std::uint64_t orbits = 0;
  bool free = true;
};

/// Orbits of B0^{n-1} acting on B_{i_1} x ... x B_{i_n} by
/// (b_1 a_1, a_1^{-1} b_2 a_2, ..., a_{n-1}^{-1} b_n).
OrbitReport orbit_quotient_size(const GroupAmalgam& d, const std::vector<int>& shape);

/// Z/4 *_{Z/2} Z/6.
GroupAmalgam sl2z_preset();
/// Z/2 * Z/2.
GroupAmalgam dinfty_preset();

}  // namespace amalg
