#include "amalg/integral.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "amalg/error.hpp"
#include "amalg/ncpoly.hpp"

namespace amalg {

namespace {

bool same_ring(const GCRing& a, const GCRing& b) {
  if (&a == &b) return true;
  if (a.size() != b.size() || a.relations() != b.relations()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.generators()[i].name != b.generators()[i].name || a.generators()[i].degree != b.generators()[i].degree)
      return false;
  return true;
}

/// prod_i images[i]^{m_i} in `target`, in declared order.
ZPoly evaluate_monomial(const GCRing& target, const std::vector<ZPoly>& images, const Monomial& m) {
  ZPoly out{{target.one(), Integer(1)}};
  for (std::size_t i = 0; i < m.size(); ++i)
    for (unsigned k = 0; k < m[i]; ++k) {
      out = target.multiply(out, images[i]);
      if (out.empty()) return out;
    }
  return out;
}

ZPoly evaluate(const GCRing& target, const std::vector<ZPoly>& images, const ZPoly& p) {
  ZPoly out;
  for (const auto& [m, c] : p)
    for (const auto& [mm, cc] : evaluate_monomial(target, images, m)) add_term(out, mm, c * cc);
  return out;
}

PresentedAbelianGroup direct_sum(const PresentedAbelianGroup& a, const PresentedAbelianGroup& b) {
  PresentedAbelianGroup s;
  s.generators = a.generators + b.generators;
  s.relations = IntMatrix(s.generators, a.relations.cols() + b.relations.cols());
  for (std::size_t r = 0; r < a.generators; ++r)
    for (std::size_t c = 0; c < a.relations.cols(); ++c) s.relations(r, c) = a.relations(r, c);
  for (std::size_t r = 0; r < b.generators; ++r)
    for (std::size_t c = 0; c < b.relations.cols(); ++c)
      s.relations(a.generators + r, a.relations.cols() + c) = b.relations(r, c);
  return s;
}

void check_homogeneous(const GCRing& ring, const ZPoly& p, int degree, const std::string& what) {
  if (p.empty()) return;
  auto d = ring.homogeneous_degree(p);
  if (!d || *d != degree)
    throw InputError(what + ": '" + ring.poly_str(p) + "' is not homogeneous of degree " + std::to_string(degree));
}

}  // namespace

void add_term(ZPoly& p, const Monomial& m, const Integer& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(m, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

std::size_t GCRing::add_generator(const std::string& name, int degree) {
  if (!rels_.empty()) throw InputError("ring " + name_ + ": generator '" + name + "' declared after a relation");
  if (degree < 1) throw InputError("ring " + name_ + ": generator '" + name + "' needs a positive degree");
  if (by_name_.count(name)) throw InputError("ring " + name_ + ": duplicate generator '" + name + "'");
  by_name_.emplace(name, gens_.size());
  gens_.push_back({name, degree});
  return gens_.size() - 1;
}

std::optional<std::size_t> GCRing::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

void GCRing::add_relation(const ZPoly& r) {
  for (const auto& [m, c] : r)
    if (m.size() != gens_.size()) throw InputError("ring " + name_ + ": relation has the wrong number of exponents");
  if (!homogeneous_degree(r)) throw InputError("ring " + name_ + ": relation '" + poly_str(r) + "' is not homogeneous");
  if (!r.empty()) rels_.push_back(r);
}

void GCRing::add_relation(const std::string& text) { add_relation(parse(text)); }

std::vector<ZPoly> GCRing::all_relations() const {
  auto out = rels_;
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].degree % 2 != 0) {
      Monomial m = one();
      m[i] = 2;
      out.push_back({{m, Integer(2)}});
    }
  return out;
}

int GCRing::degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += static_cast<int>(m[i]) * gens_[i].degree;
  return d;
}

std::optional<int> GCRing::homogeneous_degree(const ZPoly& p) const {
  if (p.empty()) return 0;
  const int d = degree(p.begin()->first);
  for (const auto& [m, c] : p)
    if (degree(m) != d) return std::nullopt;
  return d;
}

Monomial GCRing::generator(std::size_t i) const {
  Monomial m = one();
  m.at(i) = 1;
  return m;
}

std::pair<int, Monomial> GCRing::multiply(const Monomial& a, const Monomial& b) const {
  // moving each odd x_j of b left past the odd x_i of a with i > j
  unsigned long parity = 0;
  unsigned long odd_a_after = 0;
  for (std::size_t k = gens_.size(); k-- > 0;) {
    if (gens_[k].degree % 2 == 0) continue;
    parity += odd_a_after * b[k];
    odd_a_after += a[k];
  }
  Monomial m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
  return {parity % 2 == 0 ? 1 : -1, std::move(m)};
}

ZPoly GCRing::multiply(const ZPoly& a, const ZPoly& b) const {
  ZPoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      auto [s, m] = multiply(ma, mb);
      add_term(out, m, s > 0 ? Integer(ca * cb) : Integer(-ca * cb));
    }
  return out;
}

ZPoly GCRing::parse(const std::string& text) const {
  ZPoly out;
  for (const auto& t : parse_polynomial_terms(text)) {
    if (t.denominator != 1) throw InputError("ring " + name_ + ": non-integer coefficient in '" + text + "'");
    ZPoly term{{one(), t.numerator}};
    for (const auto& [name, exp] : t.factors) {
      auto g = find(name);
      if (!g) throw InputError("ring " + name_ + ": unknown generator '" + name + "' in '" + text + "'");
      const ZPoly x{{generator(*g), Integer(1)}};
      for (unsigned k = 0; k < exp; ++k) term = multiply(term, x);
    }
    for (const auto& [m, c] : term) add_term(out, m, c);
  }
  return out;
}

std::string GCRing::monomial_str(const Monomial& m) const {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += gens_[i].name;
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::string GCRing::poly_str(const ZPoly& p) const {
  if (p.empty()) return "0";
  std::string s;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool neg = c < 0;
    const Integer a = abs(c);
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    const std::string mono = monomial_str(m);
    if (mono == "1")
      s += a.get_str();
    else if (a == 1)
      s += mono;
    else
      s += a.get_str() + "*" + mono;
  }
  return s;
}

GCRing GCRing::with_generator_order(const std::vector<std::size_t>& order) const {
  std::vector<std::size_t> sorted = order;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> iota(gens_.size());
  std::iota(iota.begin(), iota.end(), 0);
  if (sorted != iota) throw InputError("ring " + name_ + ": not a permutation of the generators");
  GCRing out(name_);
  for (auto i : order) out.add_generator(gens_[i].name, gens_[i].degree);
  std::vector<ZPoly> images(gens_.size());
  for (std::size_t k = 0; k < order.size(); ++k) images[order[k]] = {{out.generator(k), Integer(1)}};
  for (const auto& r : rels_) out.add_relation(evaluate(out, images, r));
  return out;
}

ExpandedRing::ExpandedRing(std::shared_ptr<const GCRing> ring, int max_degree)
    : ring_(std::move(ring)), n_(max_degree) {
  if (n_ < 0) throw InputError("negative maximal degree");
  const auto& gens = ring_->generators();
  const auto un = static_cast<std::size_t>(n_);
  mono_.resize(un + 1);
  index_.resize(un + 1);
  Monomial m = ring_->one();
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int deg) {
    if (i == gens.size()) {
      mono_[static_cast<std::size_t>(deg)].push_back(m);
      return;
    }
    for (unsigned e = 0; deg + static_cast<int>(e) * gens[i].degree <= n_; ++e) {
      m[i] = e;
      walk(i + 1, deg + static_cast<int>(e) * gens[i].degree);
    }
    m[i] = 0;
  };
  walk(0, 0);
  for (std::size_t d = 0; d <= un; ++d) {
    std::sort(mono_[d].begin(), mono_[d].end(), std::greater<>());
    for (std::size_t k = 0; k < mono_[d].size(); ++k) index_[d].emplace(mono_[d][k], k);
  }

  const auto rels = ring_->all_relations();
  groups_.resize(un + 1);
  additive_.degrees.resize(un + 1);
  for (std::size_t d = 0; d <= un; ++d) {
    std::vector<IntVec> cols;
    for (const auto& r : rels) {
      const int e = *ring_->homogeneous_degree(r);
      if (e > static_cast<int>(d)) continue;
      for (const auto& mm : mono_[d - static_cast<std::size_t>(e)]) {
        auto v = coordinates(ring_->multiply(ZPoly{{mm, Integer(1)}}, r), static_cast<int>(d));
        if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x != 0; })) cols.push_back(std::move(v));
      }
    }
    groups_[d] = {mono_[d].size(), IntMatrix::from_columns(mono_[d].size(), cols)};
    additive_.degrees[d] = groups_[d].structure();
  }
}

std::optional<std::size_t> ExpandedRing::index(const Monomial& m) const {
  const int d = ring_->degree(m);
  if (d > n_) return std::nullopt;
  const auto& idx = index_[static_cast<std::size_t>(d)];
  auto it = idx.find(m);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

IntVec ExpandedRing::coordinates(const ZPoly& p, int d) const {
  if (d < 0 || d > n_) throw DegreeOverflow("degree " + std::to_string(d) + " outside 0.." + std::to_string(n_));
  IntVec v(mono_[static_cast<std::size_t>(d)].size());
  for (const auto& [m, c] : p) {
    if (ring_->degree(m) != d)
      throw InputError("'" + ring_->poly_str(p) + "' is not homogeneous of degree " + std::to_string(d));
    v[index_[static_cast<std::size_t>(d)].at(m)] += c;
  }
  return v;
}

ZPoly ExpandedRing::polynomial(int d, const IntVec& v) const {
  ZPoly p;
  const auto& ms = monomials(d);
  for (std::size_t k = 0; k < v.size(); ++k) add_term(p, ms.at(k), v[k]);
  return p;
}

IntVec ExpandedRing::multiply(int du, const IntVec& u, int dv, const IntVec& v) const {
  return coordinates(ring_->multiply(polynomial(du, u), polynomial(dv, v)), du + dv);
}

ZRingMap::ZRingMap(std::string n, std::shared_ptr<const GCRing> src, std::shared_ptr<const GCRing> tgt,
                   std::vector<ZPoly> imgs)
    : name(std::move(n)), source(std::move(src)), target(std::move(tgt)), images(std::move(imgs)) {
  if (images.size() != source->size())
    throw InputError("map " + name + ": expected " + std::to_string(source->size()) + " images, got " +
                     std::to_string(images.size()));
  for (std::size_t i = 0; i < images.size(); ++i)
    check_homogeneous(*target, images[i], source->generators()[i].degree,
                      "map " + name + ": image of " + source->generators()[i].name);
}

ZRingMap ZRingMap::parse(std::string n, std::shared_ptr<const GCRing> src, std::shared_ptr<const GCRing> tgt,
                         const std::map<std::string, std::string>& sends) {
  std::vector<ZPoly> imgs(src->size());
  std::vector<bool> seen(src->size(), false);
  for (const auto& [g, text] : sends) {
    auto i = src->find(g);
    if (!i) throw InputError("map " + n + ": unknown source generator '" + g + "'");
    imgs[*i] = tgt->parse(text);
    seen[*i] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (!seen[i]) throw InputError("map " + n + ": no image for '" + src->generators()[i].name + "'");
  return ZRingMap(std::move(n), std::move(src), std::move(tgt), std::move(imgs));
}

ZPoly ZRingMap::apply(const ZPoly& p) const { return evaluate(*target, images, p); }

ZRingMap compose(const ZRingMap& g, const ZRingMap& f) {
  if (!same_ring(*f.target, *g.source)) throw InputError("cannot compose " + g.name + " with " + f.name);
  std::vector<ZPoly> imgs;
  for (const auto& x : f.images) imgs.push_back(g.apply(x));
  return ZRingMap(g.name + "*" + f.name, f.source, g.target, std::move(imgs));
}

std::vector<IntMatrix> ring_map_matrices(const ZRingMap& f, const ExpandedRing& src, const ExpandedRing& tgt) {
  if (!same_ring(src.ring(), *f.source) || !same_ring(tgt.ring(), *f.target))
    throw InputError("map " + f.name + ": expansions do not match its rings");
  const int n = std::min(src.max_degree(), tgt.max_degree());
  std::vector<IntMatrix> out;
  for (int d = 0; d <= n; ++d) {
    std::vector<IntVec> cols;
    for (const auto& m : src.monomials(d)) cols.push_back(tgt.coordinates(f.apply({{m, Integer(1)}}), d));
    IntMatrix mat = IntMatrix::from_columns(tgt.monomials(d).size(), cols);
    const auto& rel = src.group(d).relations;
    for (std::size_t c = 0; c < rel.cols(); ++c) {
      const IntVec image = mat * rel.column(c);
      if (!tgt.is_zero(d, image))
        throw CheckFailure("map " + f.name + ": relation " + src.ring().poly_str(src.polynomial(d, rel.column(c))) +
                               " is sent to " + tgt.ring().poly_str(tgt.polynomial(d, image)) + " != 0 in degree " +
                               std::to_string(d),
                           d);
    }
    out.push_back(std::move(mat));
  }
  return out;
}

MVKernel mv_kernel(const ZRingMap& f, const ZRingMap& g, int max_degree) {
  if (!same_ring(*f.target, *g.target)) throw InputError("maps " + f.name + " and " + g.name + " differ in target");
  const ExpandedRing a(f.source, max_degree), b(g.source, max_degree), c(f.target, max_degree);
  const auto mf = ring_map_matrices(f, a, c);
  const auto mg = ring_map_matrices(g, b, c);
  MVKernel out;
  for (int d = 0; d <= max_degree; ++d) {
    const auto ud = static_cast<std::size_t>(d);
    IntMatrix neg = mg[ud];
    for (std::size_t r = 0; r < neg.rows(); ++r)
      for (std::size_t k = 0; k < neg.cols(); ++k) neg(r, k) = -neg(r, k);
    auto kc = kernel_cokernel(hconcat(mf[ud], neg), direct_sum(a.group(d), b.group(d)), c.group(d));
    out.kernel.degrees.push_back(kc.kernel);
    out.cokernel.degrees.push_back(kc.cokernel);
    out.generators.push_back(std::move(kc.kernel_generators));
    out.orders.push_back(std::move(kc.generator_orders));
    if (!kc.cokernel.is_trivial() && out.surjective) {
      out.surjective = false;
      out.first_cokernel_degree = d;
    }
  }
  return out;
}

IsoReport verify_presentation_iso(const GCRing& r, const ZRingMap& f, const ZRingMap& g,
                                  const std::vector<std::pair<ZPoly, ZPoly>>& images, int max_degree) {
  if (images.size() != r.size()) throw InputError("ring " + r.name() + ": one image pair per generator expected");
  std::vector<ZPoly> ia, ib;
  for (std::size_t i = 0; i < images.size(); ++i) {
    const auto& gen = r.generators()[i];
    check_homogeneous(*f.source, images[i].first, gen.degree, "image of " + gen.name);
    check_homogeneous(*g.source, images[i].second, gen.degree, "image of " + gen.name);
    ia.push_back(images[i].first);
    ib.push_back(images[i].second);
  }
  const auto rp = std::make_shared<const GCRing>(r);
  const ExpandedRing er(rp, max_degree), a(f.source, max_degree), b(g.source, max_degree),
      c(f.target, max_degree);
  const auto mf = ring_map_matrices(f, a, c);
  const auto mg = ring_map_matrices(g, b, c);
  const auto mv = mv_kernel(f, g, max_degree);
  IsoReport rep;
  auto fail = [&](int d, const std::string& why) {
    rep.ok = false;
    rep.failure_degree = d;
    rep.message = "degree " + std::to_string(d) + ": " + why;
    return rep;
  };
  for (int d = 0; d <= max_degree; ++d) {
    const auto s = direct_sum(a.group(d), b.group(d));
    std::vector<IntVec> cols;
    for (const auto& m : er.monomials(d)) {
      IntVec v = a.coordinates(evaluate_monomial(*f.source, ia, m), d);
      const IntVec w = b.coordinates(evaluate_monomial(*g.source, ib, m), d);
      v.insert(v.end(), w.begin(), w.end());
      cols.push_back(std::move(v));
    }
    const IntMatrix psi = IntMatrix::from_columns(s.generators, cols);
    const auto& rel = er.group(d).relations;
    for (std::size_t c = 0; c < rel.cols(); ++c)
      if (!s.is_zero(psi * rel.column(c)))
        return fail(d, "relation " + r.poly_str(er.polynomial(d, rel.column(c))) + " is not sent to zero");
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const IntVec va(cols[k].begin(), cols[k].begin() + static_cast<std::ptrdiff_t>(a.group(d).generators));
      const IntVec vb(cols[k].begin() + static_cast<std::ptrdiff_t>(a.group(d).generators), cols[k].end());
      IntVec diff = mf[static_cast<std::size_t>(d)] * va;
      const IntVec other = mg[static_cast<std::size_t>(d)] * vb;
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= other[i];
      if (!c.is_zero(d, diff))
        return fail(d, "image of " + r.monomial_str(er.monomials(d)[k]) + " is not in the kernel");
    }
    const auto kc = kernel_cokernel(psi, er.group(d), s);
    if (!kc.kernel.is_trivial()) return fail(d, "not injective, kernel " + kc.kernel.str());
    const auto& kd = mv.kernel.at(d);
    std::vector<IntVec> span = cols;
    for (std::size_t c = 0; c < s.relations.cols(); ++c) span.push_back(s.relations.column(c));
    const Lattice image(s.generators, span);
    for (const auto& k : mv.generators[static_cast<std::size_t>(d)])
      if (!image.contains(k)) return fail(d, "image misses part of the kernel " + kd.str());
  }
  return rep;
}

GradedAbelianGroup kunneth_product(const ExpandedRing& r, const ExpandedRing& s) {
  const int n = std::min(r.max_degree(), s.max_degree());
  const bool torsion_free_units = r.structure(0).torsion().empty() && s.structure(0).torsion().empty();
  const int top = torsion_free_units ? n : n - 1;
  GradedAbelianGroup out;
  for (int deg = 0; deg <= top; ++deg) {
    std::size_t free = 0;
    std::vector<Integer> orders;
    auto tensor = [&](const AbelianGroup& x, const AbelianGroup& y) {
      free += x.free_rank() * y.free_rank();
      for (const auto& t : x.torsion()) orders.insert(orders.end(), y.free_rank(), t);
      for (const auto& t : y.torsion()) orders.insert(orders.end(), x.free_rank(), t);
      for (const auto& t : x.torsion())
        for (const auto& u : y.torsion()) orders.push_back(gcd(t, u));
    };
    auto tor = [&](const AbelianGroup& x, const AbelianGroup& y) {
      for (const auto& t : x.torsion())
        for (const auto& u : y.torsion()) orders.push_back(gcd(t, u));
    };
    for (int p = 0; p <= deg; ++p) tensor(r.structure(p), s.structure(deg - p));
    for (int p = 0; p <= deg + 1; ++p) {
      const int q = deg + 1 - p;
      if (p > n || q > n) continue;
      tor(r.structure(p), s.structure(q));
    }
    out.degrees.push_back(AbelianGroup::from_cyclic(free, orders));
  }
  return out;
}

}  // namespace amalg
