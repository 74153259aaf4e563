#include "amalg/amalgam.hpp"

#include <algorithm>
#include <functional>

namespace amalg {

// ---------------------------------------------------------------- diagram

template <class F>
AmalgamDiagram<F>::AmalgamDiagram(const PresentedAlgebra<F>& b0, const PresentedAlgebra<F>& b1,
                                  const PresentedAlgebra<F>& b2, std::vector<Poly> f1, std::vector<Poly> f2,
                                  int max_degree, std::string f1_name, std::string f2_name)
    : n_(max_degree) {
  if (max_degree < 0) throw InputError("max degree must be non-negative");
  alg_[0] = std::make_shared<const TruncatedAlgebra<F>>(b0, max_degree);
  alg_[1] = std::make_shared<const TruncatedAlgebra<F>>(b1, max_degree);
  alg_[2] = std::make_shared<const TruncatedAlgebra<F>>(b2, max_degree);
  maps_[0] = AlgebraMorphism<F>(std::move(f1_name), *alg_[0], *alg_[1], std::move(f1));
  maps_[1] = AlgebraMorphism<F>(std::move(f2_name), *alg_[0], *alg_[2], std::move(f2));
  for (const auto& f : maps_) {
    auto rep = check_morphism(f);
    if (!rep.ok) throw InputError(rep.message);
  }
}

template <class F>
AmalgamDiagram<F> AmalgamDiagram<F>::parse(const PresentedAlgebra<F>& b0, const PresentedAlgebra<F>& b1,
                                           const PresentedAlgebra<F>& b2,
                                           const std::map<std::string, std::string>& f1,
                                           const std::map<std::string, std::string>& f2, int max_degree,
                                           std::string f1_name, std::string f2_name) {
  auto images = [&](const std::map<std::string, std::string>& sends, const PresentedAlgebra<F>& tgt,
                    const std::string& name) {
    std::vector<Poly> out;
    for (const auto& g : b0.gens.symbols()) {
      auto it = sends.find(g.name);
      if (it == sends.end()) throw InputError("map '" + name + "' does not send generator '" + g.name + "'");
      out.push_back(parse_ncpoly(it->second, tgt.gens, tgt.field));
    }
    for (const auto& [g, text] : sends)
      if (!b0.gens.find(g)) throw InputError("map '" + name + "' sends unknown generator '" + g + "'");
    return out;
  };
  auto i1 = images(f1, b1, f1_name);
  auto i2 = images(f2, b2, f2_name);
  return AmalgamDiagram(b0, b1, b2, std::move(i1), std::move(i2), max_degree, std::move(f1_name),
                        std::move(f2_name));
}

template <class F>
AmalgamDiagram<F> AmalgamDiagram<F>::reversed() const {
  auto remap = [](const Poly& p, std::uint32_t n) {
    Poly q(p.field());
    for (const auto& [w, c] : p.terms()) {
      Word v;
      for (auto g : w) v.push_back(n - 1 - g);
      q.add_term(v, c);
    }
    return q;
  };
  std::array<std::vector<Poly>, 2> imgs;
  for (int i = 0; i < 2; ++i) {
    const auto& f = maps_[static_cast<std::size_t>(i)];
    const auto nt = static_cast<std::uint32_t>(f.target->gens().size());
    for (std::size_t g = f.images.size(); g-- > 0;) imgs[static_cast<std::size_t>(i)].push_back(remap(f.images[g], nt));
  }
  return AmalgamDiagram(algebra(0).presentation().with_reversed_generators(),
                        algebra(1).presentation().with_reversed_generators(),
                        algebra(2).presentation().with_reversed_generators(), imgs[0], imgs[1], n_, maps_[0].name,
                        maps_[1].name);
}

template <class F>
AmalgamDiagram<F> AmalgamDiagram<F>::truncated(int max_degree) const {
  return AmalgamDiagram(algebra(0).presentation(), algebra(1).presentation(), algebra(2).presentation(),
                        maps_[0].images, maps_[1].images, max_degree, maps_[0].name, maps_[1].name);
}

// ---------------------------------------------------------------- freeness

namespace {

template <class F>
std::vector<std::vector<Vec<F>>> base_images(const AlgebraMorphism<F>& f) {
  const auto& b0 = *f.source;
  std::vector<std::vector<Vec<F>>> out(static_cast<std::size_t>(f.target->max_degree()) + 1);
  for (int d = 0; d <= f.target->max_degree(); ++d)
    for (std::size_t b = 0; b < b0.dim(d); ++b) out[static_cast<std::size_t>(d)].push_back(f.image_of_word(b0.basis(d)[b]));
  return out;
}

}  // namespace

template <class F>
ModuleTransversal<F> module_complement_basis(const AlgebraMorphism<F>& f, int factor) {
  const auto& b = *f.target;
  const auto& b0 = *f.source;
  const F& k = b.field();
  const int n = b.max_degree();
  if (b0.max_degree() < n) throw InputError("base algebra is truncated below its target");
  const auto fb = base_images(f);

  ModuleTransversal<F> t;
  t.factor = factor;
  for (int d = 0; d <= n; ++d) {
    RowEchelon<F> span(k, b.dim(d));
    std::vector<typename ModuleTransversal<F>::Pair> pairs;
    std::vector<Vec<F>> columns;
    auto push = [&](int letter, int td, std::size_t tail, Vec<F> v) {
      if (!span.insert(v))
        throw CheckFailure("'" + b.presentation().name + "' is not a free right module over '" +
                               b0.presentation().name + "' through '" + f.name + "': dependence in degree " +
                               std::to_string(d),
                           d);
      pairs.push_back({letter, td, tail});
      columns.push_back(std::move(v));
    };
    for (std::size_t b0i = 0; b0i < b0.dim(d); ++b0i) push(-1, d, b0i, fb[static_cast<std::size_t>(d)][b0i]);
    for (std::size_t m = 0; m < t.elements.size(); ++m) {
      const int dm = t.degrees[m];
      const int td = d - dm;
      if (td < 0) continue;
      for (std::size_t b0i = 0; b0i < b0.dim(td); ++b0i)
        push(static_cast<int>(m), td, b0i, b.multiply(dm, t.elements[m], td, fb[static_cast<std::size_t>(td)][b0i]));
    }
    for (std::size_t i = 0; i < b.dim(d) && !span.full(); ++i) {
      Vec<F> e = b.basis_vector(d, i);
      if (span.contains(e)) continue;
      t.degrees.push_back(d);
      t.elements.push_back(e);
      push(static_cast<int>(t.elements.size() - 1), 0, 0, e);
    }
    Matrix<F> from(b.dim(d), columns.size(), k);
    for (std::size_t c = 0; c < columns.size(); ++c) from.set_column(c, columns[c]);
    t.pairs.push_back(std::move(pairs));
    t.to_module.push_back(inverse(from, k));
  }
  return t;
}

template <class F>
FreenessReport check_homologically_free(const AmalgamDiagram<F>& d) {
  FreenessReport rep;
  for (int i = 1; i <= 2; ++i) {
    const auto& f = d.map(i);
    if (auto bad = f.first_non_injective_degree()) {
      rep.ok = false;
      rep.failing_map = i;
      rep.degree = *bad;
      rep.message = "map '" + f.name + "' is not injective in degree " + std::to_string(*bad);
      return rep;
    }
  }
  for (int i = 1; i <= 2; ++i) {
    try {
      auto t = module_complement_basis(d.map(i), i);
      rep.transversal_degrees[static_cast<std::size_t>(i - 1)] = t.degrees;
    } catch (const CheckFailure& e) {
      rep.ok = false;
      rep.failing_map = i;
      rep.degree = e.degree();
      rep.message = e.what();
      return rep;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- normal form

template <class F>
Amalgam<F>::Amalgam(AmalgamDiagram<F> diagram) : diag_(std::move(diagram)) {
  auto rep = check_homologically_free(diag_);
  if (!rep.ok) throw CheckFailure(rep.message, rep.degree);
  for (int i = 1; i <= 2; ++i) {
    trans_[static_cast<std::size_t>(i - 1)] = module_complement_basis(diag_.map(i), i);
    base_images_[static_cast<std::size_t>(i - 1)] = base_images(diag_.map(i));
  }
  const int n = max_degree();
  const auto& b0 = diag_.algebra(0);
  basis_.assign(static_cast<std::size_t>(n) + 1, {});
  index_.assign(static_cast<std::size_t>(n) + 1, {});
  std::vector<Letter> letters;
  std::function<void(int)> walk = [&](int used) {
    for (int td = 0; used + td <= n; ++td)
      for (std::size_t b = 0; b < b0.dim(td); ++b)
        basis_[static_cast<std::size_t>(used + td)].push_back(NormalWord{letters, td, b});
    const int last = letters.empty() ? 0 : letters.back().factor;
    for (int i = 1; i <= 2; ++i) {
      if (i == last) continue;
      const auto& t = transversal(i);
      for (std::size_t m = 0; m < t.elements.size(); ++m) {
        if (used + t.degrees[m] > n) continue;
        letters.push_back(Letter{i, m});
        walk(used + t.degrees[m]);
        letters.pop_back();
      }
    }
  };
  walk(0);
  for (int d = 0; d <= n; ++d) {
    auto& bd = basis_[static_cast<std::size_t>(d)];
    std::sort(bd.begin(), bd.end());
    for (std::size_t i = 0; i < bd.size(); ++i) index_[static_cast<std::size_t>(d)].emplace(bd[i], i);
  }
}

template <class F>
int Amalgam<F>::degree(const NormalWord& w) const {
  int d = w.tail_degree;
  for (const auto& l : w.letters) d += letter_degree(l);
  return d;
}

template <class F>
std::vector<std::size_t> Amalgam<F>::poincare_series() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis_) out.push_back(b.size());
  return out;
}

template <class F>
std::size_t Amalgam<F>::index_of(const NormalWord& w) const {
  const int d = degree(w);
  check_degree(d);
  auto it = index_[static_cast<std::size_t>(d)].find(w);
  if (it == index_[static_cast<std::size_t>(d)].end()) throw InputError("not a normal word: " + word_str(w));
  return it->second;
}

template <class F>
void Amalgam<F>::check_degree(int d) const {
  if (d < 0 || d > max_degree())
    throw DegreeOverflow("degree " + std::to_string(d) + " exceeds truncation " + std::to_string(max_degree()) +
                         " of the amalgam");
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::unit() const {
  Element e = zero(0);
  e.add(NormalWord{}, field().one());
  return e;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::word(const NormalWord& w) const {
  index_of(w);
  Element e = zero(degree(w));
  e.add(w, field().one());
  return e;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::embed(int i, int d, const Vec<F>& y) const {
  check_degree(d);
  Element out = zero(d);
  if (i == 0) {
    for (std::size_t b = 0; b < y.size(); ++b) out.add(NormalWord{{}, d, b}, y[b]);
    return out;
  }
  const auto& t = transversal(i);
  const auto c = apply<F>(t.to_module[static_cast<std::size_t>(d)], y, field());
  const auto& pairs = t.pairs[static_cast<std::size_t>(d)];
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    NormalWord w{{}, pairs[p].tail_degree, pairs[p].tail};
    if (pairs[p].letter >= 0) w.letters.push_back(Letter{i, static_cast<std::size_t>(pairs[p].letter)});
    out.add(w, c[p]);
  }
  return out;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::left_mult(int i, int dy, const Vec<F>& y, const NormalWord& w) const {
  Element out = zero(dy + degree(w));
  for (std::size_t k = 0; k < y.size(); ++k)
    if (!y[k].is_zero()) out.add(left_mult_basis(i, dy, k, w), y[k]);
  return out;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::left_mult_basis(int i, int dy, std::size_t k, const NormalWord& w) const {
  CacheKey key{i, dy, k, w};
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = left_cache_.find(key); it != left_cache_.end()) return it->second;
  }
  const auto& bi = diag_.algebra(i);
  const auto& t = transversal(i);
  Vec<F> y = bi.basis_vector(dy, k);
  int d = dy;
  NormalWord rest = w;
  if (!w.letters.empty() && w.letters.front().factor == i) {
    const auto m = w.letters.front().index;
    y = bi.multiply(d, y, t.degrees[m], t.elements[m]);
    d += t.degrees[m];
    rest.letters.erase(rest.letters.begin());
  }
  Element out = zero(dy + degree(w));
  const auto c = apply<F>(t.to_module[static_cast<std::size_t>(d)], y, field());
  const auto& pairs = t.pairs[static_cast<std::size_t>(d)];
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (c[p].is_zero()) continue;
    Element z = base_act(pairs[p].tail_degree, pairs[p].tail, rest);
    if (pairs[p].letter < 0) {
      out.add(z, c[p]);
      continue;
    }
    const auto m = static_cast<std::size_t>(pairs[p].letter);
    for (const auto& [u, cu] : z.terms) {
      if (u.letters.empty() || u.letters.front().factor != i) {
        NormalWord v = u;
        v.letters.insert(v.letters.begin(), Letter{i, m});
        out.add(v, c[p] * cu);
      } else {
        out.add(left_mult(i, t.degrees[m], t.elements[m], u), c[p] * cu);
      }
    }
  }
  std::lock_guard lock(cache_mutex_);
  left_cache_.emplace(std::move(key), out);
  return out;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::base_act(int db, std::size_t b, const NormalWord& w) const {
  if (w.letters.empty()) {
    const auto& b0 = diag_.algebra(0);
    Vec<F> v = b0.multiply(db, b0.basis_vector(db, b), w.tail_degree, b0.basis_vector(w.tail_degree, w.tail));
    return embed(0, db + w.tail_degree, v);
  }
  std::tuple<int, std::size_t, NormalWord> key{db, b, w};
  {
    std::lock_guard lock(cache_mutex_);
    if (auto it = base_cache_.find(key); it != base_cache_.end()) return it->second;
  }
  const int j = w.letters.front().factor;
  Element out = left_mult(j, db, base_images_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(db)][b], w);
  std::lock_guard lock(cache_mutex_);
  base_cache_.emplace(std::move(key), out);
  return out;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::word_times(const NormalWord& a, const NormalWord& b) const {
  Element z = base_act(a.tail_degree, a.tail, b);
  for (std::size_t l = a.letters.size(); l-- > 0;) {
    const auto& t = transversal(a.letters[l].factor);
    const auto m = a.letters[l].index;
    Element next = zero(z.degree + t.degrees[m]);
    for (const auto& [u, cu] : z.terms) next.add(left_mult(a.letters[l].factor, t.degrees[m], t.elements[m], u), cu);
    z = std::move(next);
  }
  return z;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::multiply(const Element& u, const Element& v) const {
  check_degree(u.degree + v.degree);
  Element out = zero(u.degree + v.degree);
  for (const auto& [a, ca] : u.terms)
    for (const auto& [b, cb] : v.terms) out.add(word_times(a, b), ca * cb);
  return out;
}

template <class F>
Vec<F> Amalgam<F>::coordinates(const Element& e) const {
  check_degree(e.degree);
  Vec<F> v = zero_vec(dim(e.degree), field());
  for (const auto& [w, c] : e.terms) v[index_of(w)] += c;
  return v;
}

template <class F>
typename Amalgam<F>::Element Amalgam<F>::from_coordinates(int d, const Vec<F>& v) const {
  check_degree(d);
  if (v.size() != dim(d)) throw InputError("coordinate vector has the wrong length");
  Element e = zero(d);
  for (std::size_t i = 0; i < v.size(); ++i) e.add(basis(d)[i], v[i]);
  return e;
}

template <class F>
std::string Amalgam<F>::word_str(const NormalWord& w) const {
  std::string out;
  auto append = [&](std::string s) {
    if (s.find(' ') != std::string::npos) s = "(" + s + ")";
    if (!out.empty()) out += "*";
    out += s;
  };
  for (const auto& l : w.letters) {
    const auto& t = transversal(l.factor);
    append(diag_.algebra(l.factor).element_str(t.degrees[l.index], t.elements[l.index]));
  }
  if (w.tail_degree > 0 || out.empty())
    append(diag_.algebra(0).gens().word_str(diag_.algebra(0).basis(w.tail_degree)[w.tail]));
  return out;
}

template <class F>
std::string Amalgam<F>::element_str(const Element& e) const {
  if (e.is_zero()) return "0";
  std::string out;
  const auto one = field().one();
  for (const auto& [w, c] : e.terms) {
    std::string cs = c.str();
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs.erase(0, 1);
    out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    if (c != one && c != -one) out += cs + "*";
    out += word_str(w);
  }
  return out;
}

// ---------------------------------------------------------------- derived checks

template <class F>
std::vector<std::size_t> graded_pieces(const Amalgam<F>& p, int n) {
  std::vector<std::size_t> out;
  for (int d = 0; d <= p.max_degree(); ++d) {
    std::size_t c = 0;
    for (const auto& w : p.basis(d))
      if (w.letters.size() == static_cast<std::size_t>(n)) ++c;
    out.push_back(c);
  }
  return out;
}

template <class F>
std::vector<std::size_t> second_filtration_pieces(const Amalgam<F>& p, int j, int n) {
  const int top = p.max_degree();
  const auto& bj = p.diagram().algebra(j);
  std::vector<std::size_t> out(static_cast<std::size_t>(top) + 1, 0);
  for (int d = 0; d <= top; ++d)
    for (const auto& w : p.basis(d)) {
      if (w.tail_degree != 0 || w.letters.size() != static_cast<std::size_t>(n)) continue;
      if (!w.letters.empty() && w.letters.back().factor == j) continue;
      for (int e = 0; d + e <= top; ++e) out[static_cast<std::size_t>(d + e)] += bj.dim(e);
    }
  return out;
}

template <class F>
std::vector<std::size_t> second_filtration_span(const Amalgam<F>& p, int j, int n) {
  const auto& bj = p.diagram().algebra(j);
  std::vector<std::size_t> out;
  for (int d = 0; d <= p.max_degree(); ++d) {
    RowEchelon<F> span(p.field(), p.dim(d));
    for (int e = 0; e <= d; ++e)
      for (const auto& w : p.basis(d - e)) {
        if (w.letters.size() > static_cast<std::size_t>(n)) continue;
        for (std::size_t b = 0; b < bj.dim(e) && !span.full(); ++b)
          span.insert(p.coordinates(p.multiply(p.word(w), p.embed(j, e, bj.basis_vector(e, b)))));
      }
    out.push_back(span.rank());
  }
  return out;
}

template <class F>
std::vector<std::size_t> tensor_down(const Amalgam<F>& p, int j) {
  const auto& bj = p.diagram().algebra(j);
  GradedModule<F> v;
  v.dims = p.poincare_series();
  v.act = [&p, j](int md, const Vec<F>& m, int ad, const Vec<F>& a) {
    return p.coordinates(p.multiply(p.from_coordinates(md, m), p.embed(j, ad, a)));
  };
  return tensor_over_algebra(v, bj, trivial_module(bj), p.max_degree());
}

template <class F>
BruhatReport bruhat_check(const Amalgam<F>& p) {
  BruhatReport rep;
  const F& k = p.field();
  for (int d = 0; d <= p.max_degree(); ++d) {
    const std::size_t dp = p.dim(d);
    std::array<RowEchelon<F>, 3> u{RowEchelon<F>(k, dp), RowEchelon<F>(k, dp), RowEchelon<F>(k, dp)};
    RowEchelon<F> u12(k, dp);
    for (int j = 0; j <= 2; ++j) {
      const auto& bj = p.diagram().algebra(j);
      auto& uj = u[static_cast<std::size_t>(j)];
      for (int e = 1; e <= d && !uj.full(); ++e)
        for (const auto& w : p.basis(d - e))
          for (std::size_t b = 0; b < bj.dim(e) && !uj.full(); ++b) {
            Vec<F> v = p.coordinates(p.multiply(p.word(w), p.embed(j, e, bj.basis_vector(e, b))));
            if (uj.insert(v) && j > 0) u12.insert(v);
          }
    }
    for (std::size_t j = 0; j < 3; ++j) rep.quotient_dims[j].push_back(dp - u[j].rank());
    const std::size_t inter = u[1].rank() + u[2].rank() - u12.rank();
    const std::size_t rank = dp - inter;
    const std::size_t coker = rep.quotient_dims[1].back() + rep.quotient_dims[2].back() - rank;
    rep.rank.push_back(rank);
    rep.cokernel.push_back(coker);
    if (!rep.ok) continue;
    std::string why;
    if (rank != rep.quotient_dims[0].back())
      why = "kernel of dimension " + std::to_string(rep.quotient_dims[0].back() - rank);
    else if (coker != (d == 0 ? 1u : 0u))
      why = "cokernel of dimension " + std::to_string(coker);
    if (!why.empty()) {
      rep.ok = false;
      rep.failure_degree = d;
      rep.failure = why + " in degree " + std::to_string(d);
    }
  }
  return rep;
}

// ---------------------------------------------------------------- boundary

namespace {

// B_{s_1} (x)_{B0} ... (x)_{B0} B_{s_k}, built one slot at a time as a
// quotient of M_{k-1} (x) B_{s_k} by (m f(a)) (x) y - m (x) (f(a) y) for
// generators a of B0.
template <class F>
struct TensorStage {
  const TruncatedAlgebra<F>* slot = nullptr;
  const AlgebraMorphism<F>* map = nullptr;
  const TensorStage* prev = nullptr;
  std::vector<std::size_t> dims;
  // ambient columns (p, i, q, j): prev basis i in degree p, slot basis j in degree q
  std::vector<std::vector<std::array<std::size_t, 4>>> ambient;
  std::vector<std::map<std::array<std::size_t, 4>, std::size_t>> column;
  std::vector<Matrix<F>> reduce;              // dims[d] x ambient(d)
  std::vector<std::vector<std::size_t>> rep;  // basis element -> ambient column

  const F& field() const { return slot->field(); }

  Vec<F> pair(int p, const Vec<F>& m, int q, const Vec<F>& y) const {
    const auto d = static_cast<std::size_t>(p + q);
    Vec<F> out = zero_vec(dims[d], field());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].is_zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j].is_zero()) continue;
        const auto c = column[d].at({static_cast<std::size_t>(p), i, static_cast<std::size_t>(q), j});
        const auto mc = m[i] * y[j];
        for (std::size_t r = 0; r < dims[d]; ++r)
          if (!reduce[d](r, c).is_zero()) out[r] += mc * reduce[d](r, c);
      }
    }
    return out;
  }

  // m * f(a) for m of degree d and a in B0 of degree g
  Vec<F> right_act(int d, const Vec<F>& m, int g, const Vec<F>& a) const {
    const Vec<F> fa = map->apply(g, a);
    if (!prev) return slot->multiply(d, m, g, fa);
    Vec<F> out = zero_vec(dims[static_cast<std::size_t>(d + g)], field());
    for (std::size_t c = 0; c < m.size(); ++c) {
      if (m[c].is_zero()) continue;
      const auto& col = ambient[static_cast<std::size_t>(d)][rep[static_cast<std::size_t>(d)][c]];
      const int p = static_cast<int>(col[0]), q = static_cast<int>(col[2]);
      Vec<F> z = slot->multiply(q, slot->basis_vector(q, col[3]), g, fa);
      axpy<F>(out, m[c], pair(p, unit_vec(prev->dims[col[0]], col[1], field()), q + g, z));
    }
    return out;
  }
};

template <class F>
TensorStage<F> first_stage(const TruncatedAlgebra<F>& b, const AlgebraMorphism<F>& f) {
  TensorStage<F> s;
  s.slot = &b;
  s.map = &f;
  for (int d = 0; d <= b.max_degree(); ++d) s.dims.push_back(b.dim(d));
  return s;
}

template <class F>
TensorStage<F> next_stage(const TensorStage<F>& prev, const TruncatedAlgebra<F>& b, const AlgebraMorphism<F>& f,
                          int top) {
  const F& k = b.field();
  const auto& b0 = *f.source;
  TensorStage<F> s;
  s.slot = &b;
  s.map = &f;
  s.prev = &prev;
  for (int d = 0; d <= top; ++d) {
    std::vector<std::array<std::size_t, 4>> amb;
    std::map<std::array<std::size_t, 4>, std::size_t> col;
    for (int p = 0; p <= d; ++p)
      for (std::size_t i = 0; i < prev.dims[static_cast<std::size_t>(p)]; ++i)
        for (std::size_t j = 0; j < b.dim(d - p); ++j) {
          std::array<std::size_t, 4> key{static_cast<std::size_t>(p), i, static_cast<std::size_t>(d - p), j};
          col.emplace(key, amb.size());
          amb.push_back(key);
        }
    auto cell = [&](int p, const Vec<F>& m, int q, const Vec<F>& y, Vec<F>& row, const typename F::Elem& sign) {
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].is_zero()) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
          if (!y[j].is_zero())
            row[col.at({static_cast<std::size_t>(p), i, static_cast<std::size_t>(q), j})] += sign * m[i] * y[j];
      }
    };
    std::vector<Vec<F>> rows;
    for (std::uint32_t x = 0; x < b0.gens().size(); ++x) {
      const int g = b0.gens()[x].degree;
      if (g > d) continue;
      const Vec<F> a = b0.reduce_word(Word{x});
      const Vec<F> fa = f.apply(g, a);
      for (int p = 0; p + g <= d; ++p) {
        const int q = d - g - p;
        for (std::size_t i = 0; i < prev.dims[static_cast<std::size_t>(p)]; ++i) {
          const Vec<F> mi = unit_vec(prev.dims[static_cast<std::size_t>(p)], i, k);
          const Vec<F> mfa = prev.right_act(p, mi, g, a);
          for (std::size_t j = 0; j < b.dim(q); ++j) {
            Vec<F> row = zero_vec(amb.size(), k);
            const Vec<F> yj = b.basis_vector(q, j);
            cell(p + g, mfa, q, yj, row, k.one());
            cell(p, mi, q + g, b.multiply(g, fa, q, yj), row, -k.one());
            if (!is_zero_vector(row)) rows.push_back(std::move(row));
          }
        }
      }
    }
    Matrix<F> m(rows.size(), amb.size(), k);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < amb.size(); ++c) m(r, c) = rows[r][c];
    const auto piv = kernels::rref(m, k);
    std::vector<bool> is_piv(amb.size(), false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t c = 0; c < amb.size(); ++c)
      if (!is_piv[c]) free.push_back(c);
    Matrix<F> red(free.size(), amb.size(), k);
    for (std::size_t fi = 0; fi < free.size(); ++fi) {
      red(fi, free[fi]) = k.one();
      for (std::size_t r = 0; r < piv.size(); ++r) red(fi, piv[r]) = -m(r, free[fi]);
    }
    s.dims.push_back(free.size());
    s.ambient.push_back(std::move(amb));
    s.column.push_back(std::move(col));
    s.reduce.push_back(std::move(red));
    s.rep.push_back(std::move(free));
  }
  return s;
}

}  // namespace

template <class F>
BoundaryReport boundary_dims(const Amalgam<F>& p, int n, int max_degree) {
  if (n < 1) throw InputError("boundary check needs a shape length >= 1");
  const int top = std::min(max_degree, p.max_degree());
  const auto& dg = p.diagram();
  const auto& b0 = dg.algebra(0);
  const F& k = p.field();
  BoundaryReport rep;
  rep.q_dims.assign(static_cast<std::size_t>(top) + 1, 0);
  rep.w_dims.assign(static_cast<std::size_t>(top) + 1, 0);
  const auto pieces = graded_pieces(p, n);
  rep.pieces.assign(pieces.begin(), pieces.begin() + top + 1);

  for (int start = 1; start <= 2; ++start) {
    std::vector<TensorStage<F>> stages;
    stages.reserve(static_cast<std::size_t>(n));
    // W-subspace of each stage, per degree
    std::vector<std::vector<RowEchelon<F>>> w;
    for (int s = 0; s < n; ++s) {
      const int i = (s % 2 == 0) ? start : 3 - start;
      const auto& bi = dg.algebra(i);
      const auto& f = dg.map(i);
      if (s == 0)
        stages.push_back(first_stage(bi, f));
      else
        stages.push_back(next_stage(stages.back(), bi, f, top));
      const auto& st = stages.back();
      std::vector<RowEchelon<F>> ws;
      for (int d = 0; d <= top; ++d) {
        RowEchelon<F> e(k, st.dims[static_cast<std::size_t>(d)]);
        if (s == 0) {
          for (std::size_t b = 0; b < b0.dim(d); ++b) e.insert(f.apply(d, b0.basis_vector(d, b)));
        } else {
          const auto& prev = stages[static_cast<std::size_t>(s - 1)];
          const auto& wprev = w.back();
          for (int q = 0; q <= d; ++q) {
            const int pd = d - q;
            for (std::size_t r = 0; r < wprev[static_cast<std::size_t>(pd)].rank(); ++r)
              for (std::size_t j = 0; j < bi.dim(q) && !e.full(); ++j)
                e.insert(st.pair(pd, wprev[static_cast<std::size_t>(pd)].row(r), q, bi.basis_vector(q, j)));
            for (std::size_t m = 0; m < prev.dims[static_cast<std::size_t>(pd)]; ++m)
              for (std::size_t b = 0; b < b0.dim(q) && !e.full(); ++b)
                e.insert(st.pair(pd, unit_vec(prev.dims[static_cast<std::size_t>(pd)], m, k), q,
                                 f.apply(q, b0.basis_vector(q, b))));
          }
        }
        ws.push_back(std::move(e));
      }
      w.push_back(std::move(ws));
    }
    for (int d = 0; d <= top; ++d) {
      rep.q_dims[static_cast<std::size_t>(d)] += stages.back().dims[static_cast<std::size_t>(d)];
      rep.w_dims[static_cast<std::size_t>(d)] += w.back()[static_cast<std::size_t>(d)].rank();
    }
  }
  for (int d = 0; d <= top; ++d) {
    const auto i = static_cast<std::size_t>(d);
    if (rep.q_dims[i] - rep.w_dims[i] != rep.pieces[i]) {
      rep.ok = false;
      rep.failure_degree = d;
      break;
    }
  }
  return rep;
}

// ---------------------------------------------------------------- brute force

template <class F>
PresentedAlgebra<F> pushout_presentation(const AmalgamDiagram<F>& d) {
  const int n = d.max_degree();
  const F& k = d.field();
  PresentedAlgebra<F> out("pushout", k);
  std::array<std::vector<std::vector<std::uint32_t>>, 2> gen;
  for (int i = 1; i <= 2; ++i) {
    const auto& b = d.algebra(i);
    auto& g = gen[static_cast<std::size_t>(i - 1)];
    g.resize(static_cast<std::size_t>(n) + 1);
    for (int e = 1; e <= n; ++e)
      for (std::size_t j = 0; j < b.dim(e); ++j)
        g[static_cast<std::size_t>(e)].push_back(
            out.add_generator((i == 1 ? "l" : "r") + std::to_string(e) + "_" + std::to_string(j), e));
  }
  auto as_generators = [&](int i, int e, const Vec<F>& v) {
    NcPolynomial<F> p(k);
    for (std::size_t j = 0; j < v.size(); ++j) p.add_term(Word{gen[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(e)][j]}, v[j]);
    return p;
  };
  for (int i = 1; i <= 2; ++i) {
    const auto& b = d.algebra(i);
    for (int du = 1; du < n; ++du)
      for (int dv = 1; du + dv <= n; ++dv)
        for (std::size_t u = 0; u < b.dim(du); ++u)
          for (std::size_t v = 0; v < b.dim(dv); ++v) {
            const auto& gi = gen[static_cast<std::size_t>(i - 1)];
            NcPolynomial<F> r(k);
            r.add_term(Word{gi[static_cast<std::size_t>(du)][u], gi[static_cast<std::size_t>(dv)][v]}, k.one());
            r -= as_generators(i, du + dv, b.multiply(du, b.basis_vector(du, u), dv, b.basis_vector(dv, v)));
            out.add_relation(r);
          }
  }
  const auto& b0 = d.algebra(0);
  for (int e = 1; e <= n; ++e)
    for (std::size_t a = 0; a < b0.dim(e); ++a) {
      const Vec<F> x = b0.basis_vector(e, a);
      out.add_relation(as_generators(1, e, d.map(1).apply(e, x)) - as_generators(2, e, d.map(2).apply(e, x)));
    }
  return out;
}

template <class F>
std::vector<std::size_t> brute_force_pushout(const AmalgamDiagram<F>& d, int max_degree) {
  if (max_degree > d.max_degree()) throw InputError("brute force degree exceeds the diagram truncation");
  const auto dd = d.truncated(max_degree);
  std::vector<mpz_class> words(static_cast<std::size_t>(max_degree) + 1, 0);
  words[0] = 1;
  for (int e = 1; e <= max_degree; ++e)
    for (int g = 1; g <= e; ++g) {
      const std::size_t gens = dd.algebra(1).dim(g) + dd.algebra(2).dim(g);
      words[static_cast<std::size_t>(e)] += words[static_cast<std::size_t>(e - g)] * static_cast<unsigned long>(gens);
    }
  if (words.back() > 10000000)
    throw InputError("brute force enumeration guard: " + words.back().get_str() + " words in degree " +
                     std::to_string(max_degree));
  return TruncatedAlgebra<F>(pushout_presentation(dd), max_degree).dims();
}

#define AMALG_INSTANTIATE(F)                                                                         \
  template class AmalgamDiagram<F>;                                                                  \
  template class Amalgam<F>;                                                                         \
  template ModuleTransversal<F> module_complement_basis(const AlgebraMorphism<F>&, int);             \
  template FreenessReport check_homologically_free(const AmalgamDiagram<F>&);                        \
  template std::vector<std::size_t> graded_pieces(const Amalgam<F>&, int);                           \
  template std::vector<std::size_t> second_filtration_pieces(const Amalgam<F>&, int, int);           \
  template std::vector<std::size_t> second_filtration_span(const Amalgam<F>&, int, int);             \
  template std::vector<std::size_t> tensor_down(const Amalgam<F>&, int);                             \
  template BruhatReport bruhat_check(const Amalgam<F>&);                                             \
  template BoundaryReport boundary_dims(const Amalgam<F>&, int, int);                                \
  template PresentedAlgebra<F> pushout_presentation(const AmalgamDiagram<F>&);                       \
  template std::vector<std::size_t> brute_force_pushout(const AmalgamDiagram<F>&, int);

AMALG_INSTANTIATE(RationalField)
AMALG_INSTANTIATE(PrimeField)

}  // namespace amalg
