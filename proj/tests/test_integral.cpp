#include <memory>
#include <string>
#include <vector>

#include "doctest.h"

#include "amalg/integral.hpp"
#include "amalg/presets.hpp"

using namespace amalg;

namespace {

std::shared_ptr<const GCRing> ring(const std::string& name, const std::vector<std::pair<std::string, int>>& gens,
                                   const std::vector<std::string>& rels) {
  auto r = std::make_shared<GCRing>(name);
  for (const auto& [g, d] : gens) r->add_generator(g, d);
  for (const auto& t : rels) r->add_relation(t);
  return r;
}

std::vector<std::string> strs(const GradedAbelianGroup& g, int from, int to) {
  std::vector<std::string> out;
  for (int d = from; d <= to; ++d) out.push_back(g.at(d).str());
  return out;
}

}  // namespace

TEST_CASE("graded-commutative signs") {
  auto r = ring("r", {{"a", 3}, {"b", 3}, {"c", 2}}, {});
  CHECK(r->parse("a*b") == r->parse("-b*a"));
  CHECK(r->parse("a*c") == r->parse("c*a"));
  CHECK(r->parse("b*a*b") == r->parse("-a*b^2"));
  CHECK(r->poly_str(r->parse("b*a + 2*c^3 - a*b")) == "-2*a*b + 2*c^3");
  CHECK(r->all_relations().size() == 2);
  CHECK_THROWS_AS(r->parse("a/2"), InputError);
  CHECK_THROWS_AS(r->parse("q"), InputError);
  auto s = std::make_shared<GCRing>("s");
  s->add_generator("x", 2);
  CHECK_THROWS_AS(s->add_relation("x + x^2"), InputError);
  s->add_relation("x^2");
  CHECK_THROWS_AS(s->add_generator("y", 1), InputError);
}

TEST_CASE("additive groups of Z[V1,V2]/(2V1)") {
  const auto p = classifying_presets();
  auto e = expand_presentation(p.so3, 8);
  CHECK(strs(e.additive(), 0, 8) == std::vector<std::string>{"Z", "0", "0", "Z/2", "Z", "0", "Z/2", "Z/2", "Z"});
}

TEST_CASE("additive groups of the kernel presentation") {
  const auto p = classifying_presets();
  ExpandedRing e(p.kernel, 6);
  CHECK(strs(e.additive(), 2, 6) ==
        std::vector<std::string>{"Z", "Z/2 + Z/2", "Z^3", "Z/2 + Z/2", "Z^2 + (Z/2)^3"});
}

TEST_CASE("ring maps") {
  const auto p = classifying_presets();
  ExpandedRing a(p.so3_sq, 10), b(p.s1_so3, 10), c(p.so3, 10);
  auto md = ring_map_matrices(p.delta, a, c);
  CHECK(md.size() == 11);
  CHECK(md[3].rows() == 1);
  CHECK(md[3].cols() == 2);
  auto mj = ring_map_matrices(p.j, b, c);
  CHECK(mj[2].is_zero());

  auto bad_src = ring("bad", {{"V", 2}}, {"2*V"});
  auto free = ring("free", {{"W", 2}}, {});
  ZRingMap bad = ZRingMap::parse("bad", bad_src, free, {{"V", "W"}});
  try {
    ring_map_matrices(bad, ExpandedRing(bad_src, 6), ExpandedRing(free, 6));
    FAIL("accepted a map that does not kill 2V");
  } catch (const CheckFailure& e) {
    CHECK(e.degree() == 2);
  }
  CHECK_THROWS_AS(ZRingMap::parse("wrong", free, bad_src, {{"W", "V^2"}}), InputError);
  CHECK_THROWS_AS(ZRingMap::parse("missing", p.s1_so3, p.so3, {{"T", "0"}}), InputError);
}

TEST_CASE("composite maps have composite matrices") {
  const auto p = classifying_presets();
  auto incl = ZRingMap::parse("first", p.so3, p.so3_sq, {{"V1", "X1"}, {"V2", "X2"}});
  auto comp = compose(p.delta, incl);
  const int n = 12;
  ExpandedRing s(p.so3, n), m(p.so3_sq, n);
  auto mi = ring_map_matrices(incl, s, m);
  auto md = ring_map_matrices(p.delta, m, s);
  auto mc = ring_map_matrices(comp, s, s);
  for (int d = 0; d <= n; ++d) {
    const auto prod = md[static_cast<std::size_t>(d)] * mi[static_cast<std::size_t>(d)];
    for (std::size_t k = 0; k < prod.cols(); ++k) {
      IntVec diff = prod.column(k);
      const IntVec other = mc[static_cast<std::size_t>(d)].column(k);
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= other[i];
      CHECK(s.is_zero(d, diff));
      // the composite is the identity
      IntVec unit(diff.size());
      unit[k] = 1;
      for (std::size_t i = 0; i < diff.size(); ++i) unit[i] -= other[i];
      CHECK(s.is_zero(d, unit));
    }
  }
}

TEST_CASE("Mayer-Vietoris kernel") {
  const auto p = classifying_presets();
  const int n = 12;
  auto mv = mv_kernel(p.delta, p.j, n);
  CHECK(mv.surjective);
  CHECK(mv.first_cokernel_degree == -1);
  ExpandedRing k(p.kernel, n);
  CHECK(mv.kernel == k.additive());
  CHECK(strs(mv.kernel, 2, 6) == std::vector<std::string>{"Z", "Z/2 + Z/2", "Z^3", "Z/2 + Z/2", "Z^2 + (Z/2)^3"});

  ExpandedRing a(p.so3_sq, n), b(p.s1_so3, n), c(p.so3, n);
  auto md = ring_map_matrices(p.delta, a, c);
  auto mj = ring_map_matrices(p.j, b, c);
  for (int d = 0; d <= n; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    const auto na = a.monomials(d).size();
    for (const auto& g : mv.generators[ud]) {
      const IntVec ga(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(na));
      const IntVec gb(g.begin() + static_cast<std::ptrdiff_t>(na), g.end());
      IntVec diff = md[ud] * ga;
      const IntVec other = mj[ud] * gb;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= other[i];
      CHECK(c.is_zero(d, diff));
    }
  }
}

TEST_CASE("a map that misses a class is not surjective") {
  const auto p = classifying_presets();
  auto zero = ZRingMap::parse("zero", p.s1_so3, p.so3, {{"T", "0"}, {"V1", "0"}, {"V2", "0"}});
  auto half = ZRingMap::parse("half", p.so3_sq, p.so3,
                              {{"X1", "V1"}, {"X2", "2*V2"}, {"Y1", "V1"}, {"Y2", "0"}, {"Z", "0"}});
  auto mv = mv_kernel(half, zero, 8);
  CHECK_FALSE(mv.surjective);
  CHECK(mv.first_cokernel_degree == 4);
  CHECK(mv.cokernel.at(4).str() == "Z/2");
}

TEST_CASE("the kernel presentation is isomorphic to ker phi") {
  const auto p = classifying_presets();
  auto rep = verify_presentation_iso(*p.kernel, p.delta, p.j, p.kernel_images, 12);
  CHECK(rep.ok);
  CHECK(rep.message.empty());

  // without Z^2 the spurious class Z^2 lives in degree 10
  auto loose = ring("loose", {{"T", 2}, {"X1", 3}, {"X2", 4}, {"Y1", 3}, {"Y2", 4}, {"Z", 5}},
                    {"T*X1 - T*Y1", "T*X2 - T*Y2", "T*Z", "2*X1", "2*Y1", "2*Z"});
  auto r2 = verify_presentation_iso(*loose, p.delta, p.j, p.kernel_images, 12);
  CHECK_FALSE(r2.ok);
  CHECK(r2.failure_degree == 10);

  auto no_tz = ring("no_tz", {{"T", 2}, {"X1", 3}, {"X2", 4}, {"Y1", 3}, {"Y2", 4}, {"Z", 5}},
                    {"T*X1 - T*Y1", "T*X2 - T*Y2", "2*X1", "2*Y1", "2*Z", "Z^2"});
  auto r3 = verify_presentation_iso(*no_tz, p.delta, p.j, p.kernel_images, 12);
  CHECK_FALSE(r3.ok);
  CHECK(r3.failure_degree == 7);

  // a relation that does not hold in the kernel
  auto strict = ring("strict", {{"T", 2}, {"X1", 3}, {"X2", 4}, {"Y1", 3}, {"Y2", 4}, {"Z", 5}},
                     {"T*X1 - T*Y1", "T*X2 - T*Y2", "T*Z", "2*X1", "2*Y1", "2*Z", "Z^2", "X1*Y1"});
  auto r4 = verify_presentation_iso(*strict, p.delta, p.j, p.kernel_images, 12);
  CHECK_FALSE(r4.ok);
  CHECK(r4.failure_degree == 6);
}

TEST_CASE("presentation check on a trivial square") {
  auto zt = ring("zt", {{"T", 2}}, {});
  auto zero = ring("zero", {{"u", 2}}, {"1"});
  ExpandedRing ez(zero, 6);
  for (int d = 0; d <= 6; ++d) CHECK(ez.structure(d).is_trivial());
  auto f = ZRingMap::parse("f", zt, zero, {{"T", "0"}});
  auto g = ZRingMap::parse("g", zero, zero, {{"u", "0"}});
  std::vector<std::pair<ZPoly, ZPoly>> images{{zt->parse("T"), ZPoly{}}};
  CHECK(verify_presentation_iso(*zt, f, g, images, 10).ok);
}

TEST_CASE("Kunneth formula") {
  const auto p = classifying_presets();
  const int n = 12;
  ExpandedRing s(p.so3, n), sq(p.so3_sq, n);
  auto k = kunneth_product(s, s);
  CHECK(k == sq.additive());
  CHECK(k.at(5).str() == "Z/2");
  CHECK(k.at(3).str() == "Z/2 + Z/2");

  // Tor(Z/4, Z/2) in degree 2 + 2 - 1
  auto a = ring("a", {{"a", 2}}, {"4*a"});
  auto b = ring("b", {{"b", 2}}, {"2*b"});
  auto kab = kunneth_product(ExpandedRing(a, 6), ExpandedRing(b, 6));
  CHECK(kab.at(2).str() == "Z/2 + Z/4");
  CHECK(kab.at(3).str() == "Z/2");
  CHECK(kab.at(4).str() == "Z/2 + Z/2 + Z/4");
}

TEST_CASE("generator order does not change the additive groups") {
  const auto p = classifying_presets();
  const int n = 12;
  const auto base = ExpandedRing(p.kernel, n).additive();
  for (const auto& order : std::vector<std::vector<std::size_t>>{{5, 4, 3, 2, 1, 0}, {1, 3, 0, 2, 5, 4}}) {
    auto perm = std::make_shared<const GCRing>(p.kernel->with_generator_order(order));
    CHECK(ExpandedRing(perm, n).additive() == base);
  }
  CHECK_THROWS_AS(p.kernel->with_generator_order({0, 0, 1, 2, 3, 4}), InputError);
}

TEST_CASE("products of kernel classes stay in the kernel") {
  const auto p = classifying_presets();
  const int n = 12;
  auto mv = mv_kernel(p.delta, p.j, n);
  ExpandedRing a(p.so3_sq, n), b(p.s1_so3, n), c(p.so3, n);
  auto md = ring_map_matrices(p.delta, a, c);
  auto mj = ring_map_matrices(p.j, b, c);
  auto split = [&](int d, const IntVec& g) {
    const auto na = static_cast<std::ptrdiff_t>(a.monomials(d).size());
    return std::pair{IntVec(g.begin(), g.begin() + na), IntVec(g.begin() + na, g.end())};
  };
  int products = 0;
  for (int d1 = 1; d1 <= n; ++d1)
    for (int d2 = d1; d1 + d2 <= n; ++d2)
      for (const auto& g1 : mv.generators[static_cast<std::size_t>(d1)])
        for (const auto& g2 : mv.generators[static_cast<std::size_t>(d2)]) {
          const auto [x1, y1] = split(d1, g1);
          const auto [x2, y2] = split(d2, g2);
          const int d = d1 + d2;
          const auto ud = static_cast<std::size_t>(d);
          IntVec diff = md[ud] * a.multiply(d1, x1, d2, x2);
          const IntVec other = mj[ud] * b.multiply(d1, y1, d2, y2);
          for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= other[i];
          CHECK(c.is_zero(d, diff));
          ++products;
        }
  CHECK(products > 50);
  CHECK_THROWS_AS(a.multiply(8, IntVec(a.monomials(8).size()), 8, IntVec(a.monomials(8).size())), DegreeOverflow);
}

TEST_CASE("kernel classes named in low degrees") {
  const auto p = classifying_presets();
  auto mv = mv_kernel(p.delta, p.j, 4);
  ExpandedRing a(p.so3_sq, 4), b(p.s1_so3, 4);
  auto in_kernel_span = [&](int d, const ZPoly& x, const ZPoly& y) {
    IntVec v = a.coordinates(x, d);
    const IntVec w = b.coordinates(y, d);
    v.insert(v.end(), w.begin(), w.end());
    std::vector<IntVec> span = mv.generators[static_cast<std::size_t>(d)];
    const auto& ra = a.group(d).relations;
    const auto& rb = b.group(d).relations;
    for (std::size_t k = 0; k < ra.cols(); ++k) {
      IntVec col = ra.column(k);
      col.resize(v.size());
      span.push_back(col);
    }
    for (std::size_t k = 0; k < rb.cols(); ++k) {
      IntVec col(a.monomials(d).size());
      const IntVec r = rb.column(k);
      col.insert(col.end(), r.begin(), r.end());
      span.push_back(col);
    }
    return Lattice(v.size(), span).contains(v);
  };
  CHECK(in_kernel_span(2, {}, p.s1_so3->parse("T")));
  CHECK(in_kernel_span(3, p.so3_sq->parse("X1"), p.s1_so3->parse("V1")));
  CHECK(in_kernel_span(3, p.so3_sq->parse("Y1"), p.s1_so3->parse("V1")));
  CHECK_FALSE(in_kernel_span(3, p.so3_sq->parse("X1"), {}));
  CHECK(in_kernel_span(4, p.so3_sq->parse("X2"), p.s1_so3->parse("V2")));
  CHECK(in_kernel_span(4, {}, p.s1_so3->parse("T^2")));
  CHECK_FALSE(in_kernel_span(4, p.so3_sq->parse("Y2"), {}));
}

TEST_CASE("polynomial rings without torsion") {
  const auto p = classifying_presets();
  ExpandedRing t(p.circle, 9);
  for (int d = 0; d <= 9; ++d) CHECK(t.structure(d).str() == (d % 2 == 0 ? "Z" : "0"));
  // Z[u] (x) Z[v] with |u| = |v| = 2: rank k + 1 in degree 2k
  auto u = ring("u", {{"u", 2}}, {});
  auto v = ring("v", {{"v", 2}}, {});
  auto k = kunneth_product(ExpandedRing(u, 10), ExpandedRing(v, 10));
  for (int d = 0; d <= 10; ++d) {
    CHECK(k.at(d).torsion().empty());
    CHECK(k.at(d).free_rank() == (d % 2 == 0 ? static_cast<std::size_t>(d / 2 + 1) : 0u));
  }
}
