#include <random>
#include <set>

#include "doctest.h"

#include "amalg/amalgam.hpp"
#include "amalg/presets.hpp"

using namespace amalg;

namespace {

const RationalField kQ;
const PrimeField kF2(2);
const PrimeField kF3(3);

std::vector<long long> poly_mul(const std::vector<long long>& a, const std::vector<long long>& b) {
  std::vector<long long> c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

PoincareSeries rational_closed_form(int n) {
  return closed_form(poly_mul({1, 1}, poly_mul({1, 0, 0, 1}, {1, 0, 0, 1})), {1, 0, 0, 0, -1}, n);
}

PoincareSeries char2_closed_form(int n) {
  return closed_form(poly_mul({1, 1}, poly_mul({1, 1, 1, 1}, {1, 1, 1, 1})), {1, 0, -1, -1, -1}, n);
}

template <class F>
AmalgamDiagram<F> degenerate(const F& k, int n) {
  PresentedAlgebra<F> a("lam", k);
  a.add_generator("d", 3);
  a.add_relation("d^2");
  return AmalgamDiagram<F>::parse(a, a, a, {{"d", "d"}}, {{"d", "d"}}, n);
}

AmalgamDiagram<RationalField> free_product(int n) {
  PresentedAlgebra<RationalField> k0("k", kQ), bx("bx", kQ), by("by", kQ);
  bx.add_generator("x", 3);
  bx.add_relation("x^2");
  by.add_generator("y", 3);
  by.add_relation("y^2");
  return AmalgamDiagram<RationalField>::parse(k0, bx, by, {}, {}, n);
}

template <class F>
std::set<std::string> basis_strings(const Amalgam<F>& p, int d) {
  std::set<std::string> out;
  for (const auto& w : p.basis(d)) out.insert(p.word_str(w));
  return out;
}

template <class F>
typename Amalgam<F>::Element letter(const Amalgam<F>& p, int i, const std::string& text) {
  const auto& b = p.diagram().algebra(i);
  int d = 0;
  auto poly = parse_homogeneous_ncpoly(text, b.gens(), b.field(), &d);
  return p.embed(i, d, b.evaluate(poly, d));
}

template <class F>
void check_associativity(const Amalgam<F>& p, int trials, unsigned seed) {
  std::mt19937 rng(seed);
  const int n = p.max_degree();
  auto pick = [&](int max_deg) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    for (;;) {
      const int d = dd(rng);
      if (p.dim(d) == 0) continue;
      std::uniform_int_distribution<std::size_t> wi(0, p.dim(d) - 1);
      return p.basis(d)[wi(rng)];
    }
  };
  for (int t = 0; t < trials; ++t) {
    const auto a = pick(n);
    const auto b = pick(n - p.degree(a));
    const auto c = pick(n - p.degree(a) - p.degree(b));
    const auto ea = p.word(a), eb = p.word(b), ec = p.word(c);
    const auto ab = p.multiply(ea, eb);
    const auto lhs = p.multiply(ab, ec);
    const auto rhs = p.multiply(ea, p.multiply(eb, ec));
    REQUIRE(lhs == rhs);
    for (const auto& [w, coeff] : ab.terms) CHECK(w.letters.size() <= a.letters.size() + b.letters.size());
  }
}

}  // namespace

TEST_CASE("freeness and transversals of the presets") {
  auto rq = check_homologically_free(pontryagin_diagram(kQ, 12));
  CHECK(rq.ok);
  CHECK(rq.transversal_degrees[0] == std::vector<int>{3});
  CHECK(rq.transversal_degrees[1] == std::vector<int>{1});

  auto r2 = check_homologically_free(pontryagin_diagram(kF2, 12));
  CHECK(r2.ok);
  CHECK(r2.transversal_degrees[0] == std::vector<int>{1, 2, 3});
  CHECK(r2.transversal_degrees[1] == std::vector<int>{1});

  Amalgam<PrimeField> p2(pontryagin_diagram(kF2, 6));
  const auto& t = p2.transversal(1);
  std::vector<std::string> names;
  for (std::size_t m = 0; m < t.elements.size(); ++m)
    names.push_back(p2.diagram().algebra(1).element_str(t.degrees[m], t.elements[m]));
  CHECK(names == std::vector<std::string>{"a", "a^2", "a^3"});

  auto r3 = check_homologically_free(pontryagin_diagram(kF3, 12));
  CHECK(r3.ok);
  CHECK(r3.transversal_degrees[0] == std::vector<int>{3});

  auto id = check_homologically_free(degenerate(kQ, 9));
  CHECK(id.ok);
  CHECK(id.transversal_degrees[0].empty());
}

TEST_CASE("freeness failures") {
  PresentedAlgebra<RationalField> b0("b0", kQ), b1("b1", kQ);
  b0.add_generator("d", 3);
  b0.add_relation("d^2");
  b1.add_generator("x", 3);
  b1.add_relation("x^2");
  auto zero = AmalgamDiagram<RationalField>::parse(b0, b1, b1, {{"d", "0"}}, {{"d", "x"}}, 6);
  auto rep = check_homologically_free(zero);
  CHECK_FALSE(rep.ok);
  CHECK(rep.failing_map == 1);
  CHECK(rep.degree == 3);
  CHECK_THROWS_AS(Amalgam<RationalField>{zero}, CheckFailure);

  PresentedAlgebra<RationalField> c0("c0", kQ), c1("c1", kQ);
  c0.add_generator("d", 1);
  c0.add_relation("d^3");
  c1.add_generator("x", 1);
  c1.add_generator("y", 1);
  c1.add_relation("x^2");
  c1.add_relation("y^2");
  c1.add_relation("x*y - y*x");
  auto nonfree = AmalgamDiagram<RationalField>::parse(c0, c1, c0, {{"d", "x + y"}}, {{"d", "d"}}, 4);
  auto rn = check_homologically_free(nonfree);
  CHECK_FALSE(rn.ok);
  CHECK(rn.failing_map == 1);
  CHECK(rn.degree == 2);
}

TEST_CASE("normal basis of the rational preset") {
  Amalgam<RationalField> p(pontryagin_diagram(kQ, 16));
  CHECK(basis_strings(p, 0) == std::set<std::string>{"1"});
  CHECK(basis_strings(p, 1) == std::set<std::string>{"t"});
  CHECK(basis_strings(p, 4) == std::set<std::string>{"t*x", "x*t", "t*d"});
  const auto dims = p.poincare_series();
  CHECK(dims == rational_closed_form(16));
  CHECK(PoincareSeries(dims.begin(), dims.begin() + 9) == PoincareSeries{1, 1, 0, 2, 3, 1, 1, 3, 3});
}

TEST_CASE("normal basis in characteristic 2") {
  Amalgam<PrimeField> p(pontryagin_diagram(kF2, 10));
  const auto dims = p.poincare_series();
  CHECK(PoincareSeries(dims.begin(), dims.begin() + 4) == PoincareSeries{1, 3, 6, 11});
  CHECK(dims == char2_closed_form(10));
}

TEST_CASE("rewriting examples") {
  Amalgam<RationalField> p(pontryagin_diagram(kQ, 12));
  const auto x = letter(p, 1, "x");
  const auto t = letter(p, 2, "t");
  const auto d = p.embed(0, 3, p.diagram().algebra(0).basis_vector(3, 0));
  CHECK(p.multiply(x, x).is_zero());
  CHECK(p.element_str(p.multiply(t, x)) == "t*x");
  CHECK(p.element_str(p.multiply(x, d)) == "x*d");
  CHECK(p.element_str(letter(p, 1, "y")) == "d - x");
  CHECK(p.element_str(letter(p, 2, "s")) == "d");
  CHECK(p.element_str(letter(p, 1, "x*y")) == "x*d");
  CHECK(p.multiply(p.unit(), t) == t);
  CHECK(p.multiply(d, d).is_zero());
  CHECK_THROWS_AS(p.multiply(p.word(p.basis(12).front()), t), DegreeOverflow);
}

TEST_CASE("associativity and filtration multiplicativity") {
  Amalgam<RationalField> pq(pontryagin_diagram(kQ, 14));
  check_associativity(pq, 1000, 7);
  Amalgam<PrimeField> p2(pontryagin_diagram(kF2, 8));
  check_associativity(p2, 1000, 11);
  Amalgam<PrimeField> p3(pontryagin_diagram(kF3, 14));
  check_associativity(p3, 300, 13);
}

TEST_CASE("factors embed injectively") {
  Amalgam<PrimeField> p(pontryagin_diagram(kF2, 9));
  for (int i = 0; i <= 2; ++i) {
    const auto& b = p.diagram().algebra(i);
    for (int d = 0; d <= 9; ++d) {
      std::vector<Vec<PrimeField>> rows;
      for (std::size_t k = 0; k < b.dim(d); ++k) rows.push_back(p.coordinates(p.embed(i, d, b.basis_vector(d, k))));
      CHECK(rank_of(rows, p.dim(d), kF2) == b.dim(d));
    }
  }
}

TEST_CASE("oracle equivalence with the brute-force pushout") {
  auto dq = pontryagin_diagram(kQ, 10);
  CHECK(brute_force_pushout(dq, 10) == Amalgam<RationalField>(dq).poincare_series());
  auto d2 = pontryagin_diagram(kF2, 6);
  CHECK(brute_force_pushout(d2, 6) == Amalgam<PrimeField>(d2).poincare_series());
  auto d3 = pontryagin_diagram(kF3, 9);
  CHECK(brute_force_pushout(d3, 9) == Amalgam<PrimeField>(d3).poincare_series());

  auto fp = free_product(9);
  const PoincareSeries want{1, 0, 0, 2, 0, 0, 2, 0, 0, 2};
  CHECK(brute_force_pushout(fp, 9) == want);
  CHECK(Amalgam<RationalField>(fp).poincare_series() == want);

  auto dg = degenerate(kQ, 9);
  const PoincareSeries b0{1, 0, 0, 1, 0, 0, 0, 0, 0, 0};
  CHECK(brute_force_pushout(dg, 9) == b0);
  CHECK(Amalgam<RationalField>(dg).poincare_series() == b0);
}

TEST_CASE("enumeration guard") {
  auto d2 = pontryagin_diagram(kF2, 14);
  CHECK_THROWS_AS(brute_force_pushout(d2, 14), InputError);
}

TEST_CASE("associated graded pieces") {
  Amalgam<RationalField> p(pontryagin_diagram(kQ, 12));
  CHECK(graded_pieces(p, 0) == PoincareSeries{1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
  CHECK(graded_pieces(p, 1) == PoincareSeries{0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0});
  const auto two = graded_pieces(p, 2);
  CHECK(two[4] == 2);
  CHECK(two[7] == 2);
  PoincareSeries sum(13, 0);
  for (int n = 0; n <= 12; ++n) {
    const auto g = graded_pieces(p, n);
    for (std::size_t d = 0; d <= 12; ++d) sum[d] += g[d];
  }
  CHECK(sum == p.poincare_series());
}

TEST_CASE("second filtration") {
  Amalgam<RationalField> p(pontryagin_diagram(kQ, 10));
  CHECK(second_filtration_pieces(p, 1, 0) == p.diagram().algebra(1).dims());
  const auto j1 = second_filtration_pieces(p, 1, 1);
  CHECK(j1 == PoincareSeries{0, 1, 0, 0, 2, 0, 0, 1, 0, 0, 0});
  const auto j2 = second_filtration_pieces(p, 2, 1);
  CHECK(j2 == PoincareSeries{0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 0});

  for (int j = 1; j <= 2; ++j) {
    PoincareSeries sum(11, 0), prev(11, 0);
    for (int n = 0; n <= 10; ++n) {
      const auto pieces = second_filtration_pieces(p, j, n);
      const auto span = second_filtration_span(p, j, n);
      for (std::size_t d = 0; d <= 10; ++d) {
        CHECK(span[d] - prev[d] == pieces[d]);
        sum[d] += pieces[d];
      }
      prev = span;
    }
    CHECK(sum == p.poincare_series());
  }
}

TEST_CASE("tensoring down") {
  Amalgam<RationalField> p(pontryagin_diagram(kQ, 8));
  const auto t0 = tensor_down(p, 0);
  const auto t1 = tensor_down(p, 1);
  const auto t2 = tensor_down(p, 2);
  CHECK(PoincareSeries(t0.begin(), t0.begin() + 5) == PoincareSeries{1, 1, 0, 1, 2});
  CHECK(PoincareSeries(t1.begin(), t1.begin() + 6) == PoincareSeries{1, 1, 0, 0, 1, 1});
  CHECK(PoincareSeries(t2.begin(), t2.begin() + 5) == PoincareSeries{1, 0, 0, 1, 1});
  CHECK(t0 == closed_form(poly_mul({1, 1}, {1, 0, 0, 1}), {1, 0, 0, 0, -1}, 8));
  for (int d = 0; d <= 8; ++d) {
    std::size_t bare = 0;
    for (const auto& w : p.basis(d)) bare += w.tail_degree == 0 ? 1 : 0;
    CHECK(t0[static_cast<std::size_t>(d)] == bare);
  }
  auto rep = bruhat_check(p);
  for (int j = 0; j <= 2; ++j) CHECK(rep.quotient_dims[static_cast<std::size_t>(j)] == tensor_down(p, j));
}

TEST_CASE("bruhat identity") {
  auto rq = bruhat_check(Amalgam<RationalField>(pontryagin_diagram(kQ, 16)));
  CHECK(rq.ok);
  CHECK(rq.cokernel[0] == 1);
  auto r2 = bruhat_check(Amalgam<PrimeField>(pontryagin_diagram(kF2, 9)));
  CHECK(r2.ok);
  auto rd = bruhat_check(Amalgam<RationalField>(degenerate(kQ, 9)));
  CHECK(rd.ok);
  CHECK(rd.cokernel == std::vector<std::size_t>{1, 0, 0, 0, 0, 0, 0, 0, 0, 0});

  auto fp = Amalgam<RationalField>(free_product(9));
  CHECK(bruhat_check(fp).ok);
}

TEST_CASE("boundary identity") {
  Amalgam<RationalField> p(pontryagin_diagram(kQ, 10));
  auto two = boundary_dims(p, 2, 10);
  CHECK(two.ok);
  CHECK(two.q_dims[4] == 4);
  CHECK(two.w_dims[4] == 2);
  CHECK(two.pieces[4] == 2);
  auto one = boundary_dims(p, 1, 10);
  CHECK(one.ok);
  const auto& b1 = p.diagram().algebra(1);
  const auto& b2 = p.diagram().algebra(2);
  for (int d = 0; d <= 10; ++d) CHECK(one.q_dims[static_cast<std::size_t>(d)] == b1.dim(d) + b2.dim(d));
  for (int n = 3; n <= 4; ++n) CHECK(boundary_dims(p, n, 10).ok);

  Amalgam<RationalField> dg(degenerate(kQ, 9));
  for (int n = 1; n <= 3; ++n) {
    auto r = boundary_dims(dg, n, 9);
    CHECK(r.ok);
    CHECK(r.q_dims == r.w_dims);
  }
  Amalgam<PrimeField> p2(pontryagin_diagram(kF2, 7));
  for (int n = 1; n <= 3; ++n) CHECK(boundary_dims(p2, n, 7).ok);
}

TEST_CASE("transversal choice does not change dimensions") {
  auto d = pontryagin_diagram(kF2, 8);
  Amalgam<PrimeField> p(d), r(d.reversed());
  CHECK(p.poincare_series() == r.poincare_series());
  for (int n = 0; n <= 4; ++n) CHECK(graded_pieces(p, n) == graded_pieces(r, n));
  for (int j = 0; j <= 2; ++j) CHECK(tensor_down(p, j) == tensor_down(r, j));
  auto dq = pontryagin_diagram(kQ, 12);
  CHECK(Amalgam<RationalField>(dq).poincare_series() == Amalgam<RationalField>(dq.reversed()).poincare_series());
}

TEST_CASE("preset Hopf data") {
  auto check = [](const auto& d) {
    for (int i = 0; i <= 2; ++i) {
      const auto& a = d.algebra(i);
      CHECK(hopf_check(a, pontryagin_hopf(a.presentation())).ok());
    }
  };
  check(pontryagin_diagram(kQ, 12));
  check(pontryagin_diagram(kF2, 12));
  check(pontryagin_diagram(kF3, 12));
}

TEST_CASE("series operations") {
  const auto so3 = so3_series(2, 8);
  CHECK(join(so3, circle_series(8)) == PoincareSeries{0, 0, 0, 1, 1, 1, 0, 0, 0});
  CHECK(tensor_algebra_series(PoincareSeries{0, 0, 0, 0, 1, 0, 0, 0, 0}) == PoincareSeries{1, 0, 0, 0, 1, 0, 0, 0, 1});
  CHECK(tensor_algebra_series(PoincareSeries{0, 0, 1, 1, 1, 0, 0, 0, 0}) == PoincareSeries{1, 0, 1, 1, 2, 2, 4, 5, 8});
  CHECK_THROWS_AS(tensor_algebra_series(PoincareSeries{1, 1}), InputError);

  std::mt19937 rng(3);
  std::uniform_int_distribution<std::size_t> coeff(0, 5);
  for (int t = 0; t < 50; ++t) {
    PoincareSeries p(10), q(10);
    for (auto& c : p) c = coeff(rng);
    for (auto& c : q) c = coeff(rng);
    const auto j = join(p, q);
    for (std::size_t d = 0; d < 10; ++d) {
      std::size_t want = 0;
      for (std::size_t a = 1; a + 1 < d; ++a)
        if (d - 1 - a >= 1) want += p[a] * q[d - 1 - a];
      CHECK(j[d] == want);
    }
  }
}

TEST_CASE("product decomposition") {
  auto rq = product_decomposition_check(kQ, 16);
  CHECK(rq.ok);
  CHECK(PoincareSeries(rq.product.begin(), rq.product.begin() + 9) == PoincareSeries{1, 1, 0, 2, 3, 1, 1, 3, 3});
  auto r2 = product_decomposition_check(kF2, 9);
  CHECK(r2.ok);
  auto r3 = product_decomposition_check(kF3, 16);
  CHECK(r3.ok);
  CHECK(r3.amalgam == rq.amalgam);
}
