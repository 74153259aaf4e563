#include <random>
#include <set>

#include "doctest.h"

#include "amalg/algebra.hpp"

using namespace amalg;

namespace {

template <class F>
PresentedAlgebra<F> algebra(const F& k, const std::string& name, std::vector<GeneratorSym> gens,
                            std::vector<std::string> rels) {
  PresentedAlgebra<F> a(name, k);
  for (const auto& g : gens) a.add_generator(g.name, g.degree);
  for (const auto& r : rels) a.add_relation(r);
  return a;
}

void words_of_degree(const GeneratorTable& g, int d, Word& prefix, std::vector<Word>& out) {
  if (d == 0) {
    out.push_back(prefix);
    return;
  }
  for (std::uint32_t x = 0; x < g.size(); ++x)
    if (g[x].degree <= d) {
      prefix.push_back(x);
      words_of_degree(g, d - g[x].degree, prefix, out);
      prefix.pop_back();
    }
}

std::vector<Word> all_words(const GeneratorTable& g, int d) {
  std::vector<Word> out;
  Word prefix;
  words_of_degree(g, d, prefix, out);
  return out;
}

// Naive oracle: the span of all u * r * v inside the degree-d word space,
// with columns ordered largest word first.  Returns (rank, normal words).
template <class F>
std::pair<std::size_t, std::set<Word>> naive_ideal(const PresentedAlgebra<F>& a, int d) {
  auto words = all_words(a.gens, d);
  std::sort(words.begin(), words.end(), std::greater<>());
  std::map<Word, std::size_t> col;
  for (std::size_t i = 0; i < words.size(); ++i) col[words[i]] = i;
  RowEchelon<F> e(a.field, words.size());
  for (std::size_t ri = 0; ri < a.relations.size(); ++ri) {
    const int rd = a.relation_degrees[ri];
    for (int du = 0; du + rd <= d; ++du)
      for (const auto& u : all_words(a.gens, du))
        for (const auto& v : all_words(a.gens, d - du - rd)) {
          Vec<F> row = zero_vec(words.size(), a.field);
          for (const auto& [m, c] : a.relations[ri].terms()) {
            Word w = u;
            w.insert(w.end(), m.begin(), m.end());
            w.insert(w.end(), v.begin(), v.end());
            row[col.at(w)] += c;
          }
          e.insert(std::move(row));
        }
  }
  std::set<Word> normal;
  for (auto c : e.free_columns()) normal.insert(words[c]);
  return {e.rank(), normal};
}

template <class F>
void check_against_oracle(const PresentedAlgebra<F>& a, int n) {
  TruncatedAlgebra<F> t(a, n);
  for (int d = 0; d <= n; ++d) {
    auto [rank, normal] = naive_ideal(a, d);
    CHECK(t.dim(d) + rank == t.word_count(d));
    CHECK(std::set<Word>(t.basis(d).begin(), t.basis(d).end()) == normal);
  }
}

template <class F>
Vec<F> random_basis_vector(const TruncatedAlgebra<F>& t, int d, std::mt19937& rng) {
  return t.basis_vector(d, rng() % t.dim(d));
}

}  // namespace

TEST_CASE("exterior algebra and truncated polynomial dims") {
  RationalField q;
  auto ext = algebra(q, "B1", {{"x", 3}, {"y", 3}}, {"x^2", "y^2", "x*y + y*x"});
  TruncatedAlgebra<RationalField> e(ext, 6);
  CHECK(e.dims() == std::vector<std::size_t>{1, 0, 0, 2, 0, 0, 1});
  CHECK(e.basis(6) == std::vector<Word>{{0, 1}});

  PrimeField f2(2);
  auto trunc = algebra(f2, "B0", {{"a", 1}}, {"a^4"});
  TruncatedAlgebra<PrimeField> t(trunc, 4);
  CHECK(t.dims() == std::vector<std::size_t>{1, 1, 1, 1, 0});
}

TEST_CASE("dimension count and normal words agree with the naive ideal span") {
  RationalField q;
  PrimeField f2(2), f3(3);
  check_against_oracle(algebra(q, "E", {{"x", 3}, {"y", 3}}, {"x^2", "y^2", "x*y + y*x"}), 9);
  check_against_oracle(algebra(f2, "T", {{"a", 1}, {"b", 1}}, {"a^4", "b^4", "a*b + b*a"}), 7);
  check_against_oracle(algebra(q, "M", {{"t", 1}, {"s", 3}}, {"t^2", "s^2", "t*s + s*t"}), 8);
  check_against_oracle(algebra(f3, "R", {{"a", 1}, {"b", 2}}, {"a*b - b*a - a^3", "b^2 + a*a*b"}), 7);
  check_against_oracle(algebra(q, "L", {{"u", 1}, {"v", 1}}, {"u*v - 2*v*u", "u^3 + v*v*u"}), 6);

  std::mt19937 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    PresentedAlgebra<PrimeField> a("rand", f3);
    a.add_generator("a", 1);
    a.add_generator("b", 1);
    a.add_generator("c", 2);
    for (int r = 0; r < 3; ++r) {
      const int d = 2 + static_cast<int>(rng() % 2);
      NcPolynomial<PrimeField> p(f3);
      for (const auto& w : all_words(a.gens, d))
        if (rng() % 3 == 0) p.add_term(w, f3.from_int(1 + static_cast<long long>(rng() % 2)));
      a.add_relation(p);
    }
    check_against_oracle(a, 5);
  }
}

TEST_CASE("multiplication modulo the ideal") {
  RationalField q;
  auto ext = algebra(q, "B1", {{"x", 3}, {"y", 3}}, {"x^2", "y^2", "x*y + y*x"});
  TruncatedAlgebra<RationalField> e(ext, 6);
  auto x = parse_ncpoly("x", e.gens(), q), y = parse_ncpoly("y", e.gens(), q);
  CHECK(e.element_str(6, e.multiply_mod_ideal(x, y)) == "x*y");
  CHECK(is_zero_vector(e.multiply_mod_ideal(x, x)));
  CHECK(e.element_str(6, e.multiply_mod_ideal(x + y, x)) == "-x*y");
  CHECK(e.multiply(0, e.unit(), 3, e.reduce_word({1})) == e.reduce_word({1}));
  CHECK_THROWS_AS(e.multiply_mod_ideal(x * y, x), DegreeOverflow);
}

TEST_CASE("reduction is idempotent and products associate") {
  PrimeField f2(2);
  auto a = algebra(f2, "B1", {{"a", 1}, {"b", 1}}, {"a^4", "b^4", "a*b + b*a"});
  RationalField q;
  auto m = algebra(q, "B2", {{"t", 1}, {"s", 3}}, {"t^2", "s^2", "t*s + s*t"});
  TruncatedAlgebra<PrimeField> t(a, 8);
  TruncatedAlgebra<RationalField> u(m, 8);
  for (int d = 0; d <= 8; ++d) {
    for (std::size_t i = 0; i < t.dim(d); ++i) CHECK(t.reduce_word(t.basis(d)[i]) == t.basis_vector(d, i));
    for (std::size_t i = 0; i < u.dim(d); ++i) CHECK(u.reduce_word(u.basis(d)[i]) == u.basis_vector(d, i));
  }
  std::mt19937 rng(1);
  auto run = [&](const auto& alg) {
    int checked = 0;
    while (checked < 1000) {
      int d1 = static_cast<int>(rng() % 9), d2 = static_cast<int>(rng() % 9), d3 = static_cast<int>(rng() % 9);
      if (d1 + d2 + d3 > 8 || !alg.dim(d1) || !alg.dim(d2) || !alg.dim(d3)) continue;
      auto x = random_basis_vector(alg, d1, rng), y = random_basis_vector(alg, d2, rng),
           z = random_basis_vector(alg, d3, rng);
      CHECK(alg.multiply(d1 + d2, alg.multiply(d1, x, d2, y), d3, z) ==
            alg.multiply(d1, x, d2 + d3, alg.multiply(d2, y, d3, z)));
      ++checked;
    }
  };
  run(t);
  run(u);
}

TEST_CASE("adding a relation never increases dimensions") {
  PrimeField f3(3);
  auto base = algebra(f3, "A", {{"a", 1}, {"b", 1}}, {"a*b - b*a"});
  auto more = base;
  more.add_relation("a^3 + b^3");
  TruncatedAlgebra<PrimeField> t1(base, 7), t2(more, 7);
  for (int d = 0; d <= 7; ++d) CHECK(t2.dim(d) <= t1.dim(d));
  CHECK(t2.dim(3) < t1.dim(3));
}

TEST_CASE("relations above the cutoff are inert") {
  RationalField q;
  auto a = algebra(q, "A", {{"x", 3}}, {"x^3"});
  TruncatedAlgebra<RationalField> t(a, 6);
  CHECK(t.inert_relations() == std::vector<std::size_t>{0});
  CHECK(t.dims() == std::vector<std::size_t>{1, 0, 0, 1, 0, 0, 1});
  CHECK_THROWS_AS(t.reduce_word({0, 0, 0}), DegreeOverflow);
}

TEST_CASE("presentation errors") {
  RationalField q;
  PresentedAlgebra<RationalField> a("A", q);
  a.add_generator("x", 1);
  a.add_generator("y", 2);
  CHECK_THROWS_AS(a.add_relation("x + y"), InputError);
  CHECK_THROWS_AS(a.add_relation("x*x + 1"), InputError);
  CHECK_THROWS_AS(a.add_generator("z", 0), InputError);
  CHECK_THROWS_AS(TruncatedAlgebra<RationalField>(a, -1), InputError);
}

TEST_CASE("augmentation ideal basis") {
  RationalField q;
  TruncatedAlgebra<RationalField> l(algebra(q, "L", {{"x", 3}}, {"x^2"}), 4);
  auto aug = l.augmentation_ideal_basis();
  CHECK(aug[0].empty());
  CHECK(aug[3] == std::vector<Word>{{0}});
  TruncatedAlgebra<RationalField> k(PresentedAlgebra<RationalField>("k", q), 3);
  for (const auto& b : k.augmentation_ideal_basis()) CHECK(b.empty());
  PrimeField f2(2);
  TruncatedAlgebra<PrimeField> t(algebra(f2, "T", {{"a", 1}}, {"a^4"}), 4);
  auto ta = t.augmentation_ideal_basis();
  CHECK(ta[1] == std::vector<Word>{{0}});
  CHECK(ta[2] == std::vector<Word>{{0, 0}});
  CHECK(ta[3] == std::vector<Word>{{0, 0, 0}});
  CHECK(ta[4].empty());
}

TEST_CASE("reversed generator order keeps dimensions") {
  PrimeField f2(2);
  auto a = algebra(f2, "B2", {{"t", 1}, {"c", 1}}, {"t^2", "c^4", "t*c + c*t"});
  TruncatedAlgebra<PrimeField> t1(a, 8), t2(a.with_reversed_generators(), 8);
  CHECK(t1.dims() == t2.dims());
  CHECK(t2.gens()[0].name == "c");
}

TEST_CASE("morphism checks") {
  RationalField q;
  TruncatedAlgebra<RationalField> b0(algebra(q, "B0", {{"d", 3}}, {"d^2"}), 8);
  TruncatedAlgebra<RationalField> b1(algebra(q, "B1", {{"x", 3}, {"y", 3}}, {"x^2", "y^2", "x*y + y*x"}), 8);
  TruncatedAlgebra<RationalField> b2(algebra(q, "B2", {{"t", 1}, {"s", 3}}, {"t^2", "s^2", "t*s + s*t"}), 8);
  auto delta = AlgebraMorphism<RationalField>::parse("delta", b0, b1, {{"d", "x + y"}});
  CHECK(check_morphism(delta).ok);
  CHECK_FALSE(delta.first_non_injective_degree());
  auto j = AlgebraMorphism<RationalField>::parse("j", b0, b2, {{"d", "s"}});
  CHECK(check_morphism(j).ok);
  CHECK_THROWS_AS(AlgebraMorphism<RationalField>::parse("bad", b0, b2, {{"d", "t"}}), InputError);
  CHECK_THROWS_AS(AlgebraMorphism<RationalField>::parse("bad", b0, b2, {}), InputError);

  auto zero = AlgebraMorphism<RationalField>::parse("zero", b0, b1, {{"d", "0"}});
  CHECK(zero.first_non_injective_degree() == 3);

  // into the free algebra the relation x^2 cannot hold
  TruncatedAlgebra<RationalField> free2(algebra(q, "F", {{"u", 3}, {"v", 3}}, {}), 8);
  auto bad = AlgebraMorphism<RationalField>::parse("p", b1, free2, {{"x", "u"}, {"y", "v"}});
  auto rep = check_morphism(bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.degree == 6);

  // functoriality on a composable triple
  TruncatedAlgebra<RationalField> b1x(algebra(q, "B1x", {{"x", 3}, {"y", 3}, {"w", 3}},
                                              {"x^2", "y^2", "w^2", "x*y + y*x", "x*w + w*x", "y*w + w*y"}),
                                      8);
  auto inc = AlgebraMorphism<RationalField>::parse("inc", b1, b1x, {{"x", "x"}, {"y", "y + w"}});
  CHECK(check_morphism(inc).ok);
  auto comp = compose(inc, delta);
  CHECK(check_morphism(comp).ok);
  CHECK(comp.images[0].str(b1x.gens()) == "x + y + w");
}

TEST_CASE("Hopf axioms") {
  PrimeField f2(2);
  auto ta = algebra(f2, "T", {{"a", 1}}, {"a^4"});
  TruncatedAlgebra<PrimeField> t(ta, 8);
  auto prim = HopfData<PrimeField>::primitive(ta);
  CHECK(hopf_check(t, prim).ok());

  RationalField q;
  auto la = algebra(q, "L", {{"x", 3}}, {"x^2"});
  TruncatedAlgebra<RationalField> l(la, 9);
  CHECK(hopf_check(l, HopfData<RationalField>::primitive(la)).ok());

  auto ext = algebra(q, "E", {{"x", 3}, {"y", 3}}, {"x^2", "y^2", "x*y + y*x"});
  TruncatedAlgebra<RationalField> e(ext, 12);
  CHECK(hopf_check(e, HopfData<RationalField>::primitive(ext)).ok());

  HopfData<PrimeField> left_only = prim;
  left_only.coproduct[0] = {{f2.one(), Word{0}, Word{}}};
  auto rep = hopf_check(t, left_only);
  CHECK(rep.algebra_map);
  CHECK_FALSE(rep.counit);
  CHECK(rep.failure.find("counit") != std::string::npos);

  // over F3 the primitive coproduct does not kill a^4
  PrimeField f3(3);
  auto t3a = algebra(f3, "T3", {{"a", 1}}, {"a^4"});
  TruncatedAlgebra<PrimeField> t3(t3a, 8);
  auto r3 = hopf_check(t3, HopfData<PrimeField>::primitive(t3a));
  CHECK_FALSE(r3.algebra_map);
  CHECK(r3.failure_degree == 4);

  // c(x) = x breaks the antipode identity for a primitive x
  HopfData<RationalField> wrong = HopfData<RationalField>::primitive(la);
  wrong.antipode[0] = parse_ncpoly("x", l.gens(), q);
  auto rw = hopf_check(l, wrong);
  CHECK_FALSE(rw.antipode);
}

TEST_CASE("tensor over an algebra") {
  RationalField q;
  TruncatedAlgebra<RationalField> k(PresentedAlgebra<RationalField>("k", q), 4);
  CHECK(tensor_over_algebra(trivial_module(k), k, trivial_module(k), 4) == std::vector<std::size_t>{1, 0, 0, 0, 0});

  TruncatedAlgebra<RationalField> l(algebra(q, "L", {{"x", 3}}, {"x^2"}), 7);
  CHECK(tensor_over_algebra(regular_right_module(l), l, trivial_module(l), 7) ==
        std::vector<std::size_t>(std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0, 0}));

  TruncatedAlgebra<RationalField> b0(algebra(q, "B0", {{"d", 3}}, {"d^2"}), 7);
  auto ext = algebra(q, "B1", {{"x", 3}, {"y", 3}}, {"x^2", "y^2", "x*y + y*x"});
  TruncatedAlgebra<RationalField> b1(ext, 7), b1r(ext.with_reversed_generators(), 7);
  auto delta = AlgebraMorphism<RationalField>::parse("delta", b0, b1, {{"d", "x + y"}});
  auto delta_r = AlgebraMorphism<RationalField>::parse("delta", b0, b1r, {{"d", "x + y"}});
  const std::vector<std::size_t> expect{1, 0, 0, 1, 0, 0, 0, 0};
  CHECK(tensor_over_algebra(restricted_right_module(delta), b0, trivial_module(b0), 7) == expect);
  CHECK(tensor_over_algebra(restricted_right_module(delta_r), b0, trivial_module(b0), 7) == expect);

  // d acting as x and d^2 as x*y is not associative: (1.d).d = 0
  TruncatedAlgebra<RationalField> pol(algebra(q, "P", {{"d", 3}}, {}), 6);
  GradedModule<RationalField> over_pol{b1.dims(), [&](int md, const Vec<RationalField>& m, int ad,
                                                      const Vec<RationalField>& a) {
                                         if (ad == 0) return b1.multiply(md, m, 0, a);
                                         if (md + ad > 6) return Vec<RationalField>{};
                                         const Word w = ad == 3 ? Word{0} : Word{0, 1};
                                         return b1.multiply(md, m, ad, b1.reduce_word(w));
                                       }};
  CHECK_THROWS_AS(tensor_over_algebra(over_pol, pol, trivial_module(pol), 6), CheckFailure);
}
