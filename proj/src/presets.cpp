#include "amalg/presets.hpp"

namespace amalg {

template <class F>
AmalgamDiagram<F> pontryagin_diagram(const F& field, int max_degree) {
  PresentedAlgebra<F> b0("b0", field), b1("b1", field), b2("b2", field);
  if (field.characteristic() == 2) {
    b0.add_generator("d", 1);
    b0.add_relation("d^4");
    b1.add_generator("a", 1);
    b1.add_generator("b", 1);
    b1.add_relation("a^4");
    b1.add_relation("b^4");
    b1.add_relation("a*b - b*a");
    b2.add_generator("t", 1);
    b2.add_generator("c", 1);
    b2.add_relation("t^2");
    b2.add_relation("c^4");
    b2.add_relation("t*c - c*t");
    return AmalgamDiagram<F>::parse(b0, b1, b2, {{"d", "a + b"}}, {{"d", "c"}}, max_degree, "delta", "j");
  }
  b0.add_generator("d", 3);
  b0.add_relation("d^2");
  b1.add_generator("x", 3);
  b1.add_generator("y", 3);
  b1.add_relation("x^2");
  b1.add_relation("y^2");
  b1.add_relation("x*y + y*x");
  b2.add_generator("t", 1);
  b2.add_generator("s", 3);
  b2.add_relation("t^2");
  b2.add_relation("s^2");
  b2.add_relation("t*s + s*t");
  return AmalgamDiagram<F>::parse(b0, b1, b2, {{"d", "x + y"}}, {{"d", "s"}}, max_degree, "delta", "j");
}

PoincareSeries circle_series(int max_degree) { return closed_form({1, 1}, {1}, max_degree); }

PoincareSeries so3_series(unsigned characteristic, int max_degree) {
  if (characteristic == 2) return closed_form({1, 1, 1, 1}, {1}, max_degree);
  return closed_form({1, 0, 0, 1}, {1}, max_degree);
}

template <class F>
DecompositionReport product_decomposition_check(const F& field, int max_degree) {
  DecompositionReport rep;
  rep.amalgam = Amalgam<F>(pontryagin_diagram(field, max_degree)).poincare_series();
  const auto so3 = so3_series(field.characteristic(), max_degree);
  rep.product = series_product(series_product(circle_series(max_degree), series_product(so3, so3)),
                               tensor_algebra_series(series_shift(reduced(so3), 1)));
  for (std::size_t d = 0; d < rep.amalgam.size(); ++d)
    if (rep.amalgam[d] != rep.product[d]) {
      rep.ok = false;
      rep.failure_degree = static_cast<int>(d);
      break;
    }
  return rep;
}

template AmalgamDiagram<RationalField> pontryagin_diagram(const RationalField&, int);
template AmalgamDiagram<PrimeField> pontryagin_diagram(const PrimeField&, int);
template DecompositionReport product_decomposition_check(const RationalField&, int);
template DecompositionReport product_decomposition_check(const PrimeField&, int);

namespace {

std::shared_ptr<const GCRing> make_ring(const std::string& name, const std::vector<std::pair<std::string, int>>& gens,
                                        const std::vector<std::string>& rels) {
  auto r = std::make_shared<GCRing>(name);
  for (const auto& [g, d] : gens) r->add_generator(g, d);
  for (const auto& t : rels) r->add_relation(t);
  return r;
}

}  // namespace

ClassifyingPresets classifying_presets() {
  auto so3 = make_ring("so3", {{"V1", 3}, {"V2", 4}}, {"2*V1"});
  auto so3_sq = make_ring("so3_sq", {{"X1", 3}, {"X2", 4}, {"Y1", 3}, {"Y2", 4}, {"Z", 5}},
                          {"2*X1", "2*Y1", "2*Z", "Z^2"});
  auto s1_so3 = make_ring("s1_so3", {{"T", 2}, {"V1", 3}, {"V2", 4}}, {"2*V1"});
  auto circle = make_ring("circle", {{"T", 2}}, {});
  auto kernel = make_ring("kernel", {{"T", 2}, {"X1", 3}, {"X2", 4}, {"Y1", 3}, {"Y2", 4}, {"Z", 5}},
                          {"T*X1 - T*Y1", "T*X2 - T*Y2", "T*Z", "2*X1", "2*Y1", "2*Z", "Z^2"});
  auto delta = ZRingMap::parse("delta", so3_sq, so3, {{"X1", "V1"}, {"X2", "V2"}, {"Y1", "V1"}, {"Y2", "V2"}, {"Z", "0"}});
  auto j = ZRingMap::parse("j", s1_so3, so3, {{"T", "0"}, {"V1", "V1"}, {"V2", "V2"}});
  std::vector<std::pair<ZPoly, ZPoly>> images;
  const std::vector<std::pair<std::string, std::string>> texts{
      {"0", "T"}, {"X1", "V1"}, {"X2", "V2"}, {"Y1", "V1"}, {"Y2", "V2"}, {"Z", "0"}};
  for (const auto& [a, b] : texts) images.emplace_back(so3_sq->parse(a), s1_so3->parse(b));
  return {so3, so3_sq, s1_so3, circle, kernel, std::move(delta), std::move(j), std::move(images)};
}

}  // namespace amalg
