#include "amalg/algebra.hpp"

#include <algorithm>
#include <array>

namespace amalg {

// ---------------------------------------------------------------------------
// TruncatedAlgebra

template <class F>
TruncatedAlgebra<F>::TruncatedAlgebra(const PresentedAlgebra<F>& presentation, int max_degree)
    : pres_(presentation), n_(max_degree) {
  if (max_degree < 0) throw InputError("truncation degree must be nonnegative");
  const auto nd = static_cast<std::size_t>(max_degree) + 1;
  basis_.resize(nd);
  index_.resize(nd);
  lmap_.assign(gens().size(), std::vector<Matrix<F>>(nd));
  basis_[0] = {Word{}};
  index_[0][Word{}] = 0;
  for (std::size_t i = 0; i < pres_.relations.size(); ++i)
    if (pres_.relation_degrees[i] > n_) inert_.push_back(i);
  for (int d = 1; d <= n_; ++d) build_degree(d);
}

template <class F>
void TruncatedAlgebra<F>::build_degree(int d) {
  const F& k = field();
  const auto ng = gens().size();

  struct Column {
    std::uint32_t gen;
    std::size_t tail;
    Word word;
  };
  std::vector<Column> cols;
  for (std::uint32_t x = 0; x < ng; ++x) {
    const int e = d - gens()[x].degree;
    if (e < 0) continue;
    for (std::size_t b = 0; b < dim(e); ++b) {
      Word w{x};
      const Word& t = basis(e)[b];
      w.insert(w.end(), t.begin(), t.end());
      cols.push_back({x, b, std::move(w)});
    }
  }
  std::sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) { return a.word > b.word; });
  std::vector<std::vector<std::size_t>> pos(ng);
  for (std::uint32_t x = 0; x < ng; ++x) {
    const int e = d - gens()[x].degree;
    if (e >= 0) pos[x].resize(dim(e));
  }
  for (std::size_t c = 0; c < cols.size(); ++c) pos[cols[c].gen][cols[c].tail] = c;

  std::vector<Vec<F>> rows;
  for (std::size_t ri = 0; ri < pres_.relations.size(); ++ri) {
    const int e = pres_.relation_degrees[ri];
    if (e > d) continue;
    for (std::size_t b = 0; b < dim(d - e); ++b) {
      Vec<F> row = zero_vec(cols.size(), k);
      for (const auto& [m, c] : pres_.relations[ri].terms()) {
        const std::uint32_t x = m.front();
        const Word rest(m.begin() + 1, m.end());
        Vec<F> v = left_word(rest, d - e, basis_vector(d - e, b));
        for (std::size_t i = 0; i < v.size(); ++i)
          if (!v[i].is_zero()) row[pos[x][i]] += c * v[i];
      }
      if (!is_zero_vector(row)) rows.push_back(std::move(row));
    }
  }

  Matrix<F> m(rows.size(), cols.size(), k);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = rows[r][c];
  rows.clear();
  const auto pivots = kernels::rref(m, k);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> pivot_row(cols.size(), kNone);
  for (std::size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = r;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = cols.size(); c-- > 0;)
    if (pivot_row[c] == kNone) free_cols.push_back(c);  // ascending words
  std::vector<std::size_t> basis_pos(cols.size(), kNone);
  auto& bd = basis_[static_cast<std::size_t>(d)];
  auto& id = index_[static_cast<std::size_t>(d)];
  for (std::size_t i = 0; i < free_cols.size(); ++i) {
    basis_pos[free_cols[i]] = i;
    bd.push_back(cols[free_cols[i]].word);
    id.emplace(cols[free_cols[i]].word, i);
  }

  for (std::uint32_t x = 0; x < ng; ++x) {
    const int e = d - gens()[x].degree;
    if (e < 0) continue;
    Matrix<F> l(bd.size(), dim(e), k);
    for (std::size_t b = 0; b < dim(e); ++b) {
      const std::size_t c = pos[x][b];
      if (pivot_row[c] == kNone) {
        l(basis_pos[c], b) = k.one();
        continue;
      }
      const std::size_t r = pivot_row[c];
      for (std::size_t fc : free_cols)
        if (!m(r, fc).is_zero()) l(basis_pos[fc], b) = -m(r, fc);
    }
    lmap_[x][static_cast<std::size_t>(e)] = std::move(l);
  }
}

template <class F>
std::vector<std::size_t> TruncatedAlgebra<F>::dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis_) out.push_back(b.size());
  return out;
}

template <class F>
std::optional<std::size_t> TruncatedAlgebra<F>::basis_index(const Word& w) const {
  const int d = gens().degree(w);
  if (d > n_) return std::nullopt;
  const auto& id = index_[static_cast<std::size_t>(d)];
  auto it = id.find(w);
  if (it == id.end()) return std::nullopt;
  return it->second;
}

template <class F>
std::vector<std::vector<Word>> TruncatedAlgebra<F>::augmentation_ideal_basis() const {
  auto out = basis_;
  out[0].clear();
  return out;
}

template <class F>
mpz_class TruncatedAlgebra<F>::word_count(int d) const {
  std::vector<mpz_class> c(static_cast<std::size_t>(std::max(d, 0)) + 1);
  c[0] = 1;
  for (int e = 1; e <= d; ++e)
    for (const auto& g : gens().symbols())
      if (g.degree <= e) c[static_cast<std::size_t>(e)] += c[static_cast<std::size_t>(e - g.degree)];
  return d < 0 ? mpz_class(0) : c[static_cast<std::size_t>(d)];
}

template <class F>
Vec<F> TruncatedAlgebra<F>::left_generator(std::uint32_t x, int e, const Vec<F>& v) const {
  check_degree(e + gens()[x].degree);
  return apply(lmap_[x][static_cast<std::size_t>(e)], v, field());
}

template <class F>
Vec<F> TruncatedAlgebra<F>::left_word(const Word& w, int e, const Vec<F>& v) const {
  const int target = e + gens().degree(w);
  check_degree(target);
  Vec<F> cur = v;
  for (std::size_t i = w.size(); i-- > 0;) {
    if (is_zero_vector(cur)) return zero(target);
    cur = apply(lmap_[w[i]][static_cast<std::size_t>(e)], cur, field());
    e += gens()[w[i]].degree;
  }
  return cur;
}

template <class F>
Vec<F> TruncatedAlgebra<F>::reduce_word(const Word& w) const {
  return left_word(w, 0, unit());
}

template <class F>
Vec<F> TruncatedAlgebra<F>::evaluate(const Poly& p, int degree) const {
  check_degree(degree);
  Vec<F> out = zero(degree);
  for (const auto& [w, c] : p.terms()) {
    if (gens().degree(w) != degree)
      throw InputError("polynomial " + p.str(gens()) + " is not homogeneous of degree " + std::to_string(degree));
    auto v = reduce_word(w);
    axpy<F>(out, c, v);
  }
  return out;
}

template <class F>
Vec<F> TruncatedAlgebra<F>::evaluate(const Poly& p) const {
  auto d = p.homogeneous_degree(gens());
  if (!d) throw InputError("polynomial " + p.str(gens()) + " is not homogeneous");
  return evaluate(p, *d);
}

template <class F>
Vec<F> TruncatedAlgebra<F>::multiply(int du, const Vec<F>& u, int dv, const Vec<F>& v) const {
  check_degree(du + dv);
  Vec<F> out = zero(du + dv);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i].is_zero()) continue;
    auto p = left_word(basis(du)[i], dv, v);
    axpy<F>(out, u[i], p);
  }
  return out;
}

template <class F>
Vec<F> TruncatedAlgebra<F>::multiply_mod_ideal(const Poly& u, const Poly& v) const {
  auto du = u.homogeneous_degree(gens());
  auto dv = v.homogeneous_degree(gens());
  if (!du || !dv) throw InputError("multiply_mod_ideal needs homogeneous factors");
  return multiply(*du, evaluate(u, *du), *dv, evaluate(v, *dv));
}

template <class F>
typename TruncatedAlgebra<F>::Poly TruncatedAlgebra<F>::element_poly(int d, const Vec<F>& v) const {
  Poly p(field());
  for (std::size_t i = 0; i < v.size(); ++i) p.add_term(basis(d)[i], v[i]);
  return p;
}

template <class F>
std::string TruncatedAlgebra<F>::element_str(int d, const Vec<F>& v) const {
  return element_poly(d, v).str(gens());
}

// ---------------------------------------------------------------------------
// Morphisms

template <class F>
AlgebraMorphism<F>::AlgebraMorphism(std::string n, const TruncatedAlgebra<F>& src, const TruncatedAlgebra<F>& tgt,
                                    std::vector<Poly> imgs)
    : name(std::move(n)), source(&src), target(&tgt), images(std::move(imgs)) {
  if (images.size() != src.gens().size())
    throw InputError("map '" + name + "' must send every generator of '" + src.presentation().name + "'");
  for (std::size_t g = 0; g < images.size(); ++g) {
    const int want = src.gens()[g].degree;
    auto got = images[g].homogeneous_degree(tgt.gens(), want);
    if (!got || *got != want)
      throw InputError("map '" + name + "': degree mismatch, generator '" + src.gens()[g].name + "' has degree " +
                       std::to_string(want) + " but its image " + images[g].str(tgt.gens()) +
                       (got ? " has degree " + std::to_string(*got) : " is not homogeneous"));
  }
}

template <class F>
AlgebraMorphism<F> AlgebraMorphism<F>::parse(std::string n, const TruncatedAlgebra<F>& src,
                                             const TruncatedAlgebra<F>& tgt,
                                             const std::map<std::string, std::string>& sends) {
  std::vector<Poly> imgs;
  for (const auto& g : src.gens().symbols()) {
    auto it = sends.find(g.name);
    if (it == sends.end()) throw InputError("map '" + n + "' does not send generator '" + g.name + "'");
    imgs.push_back(parse_ncpoly(it->second, tgt.gens(), tgt.field()));
  }
  for (const auto& [g, text] : sends)
    if (!src.gens().find(g)) throw InputError("map '" + n + "' sends unknown generator '" + g + "'");
  return AlgebraMorphism(std::move(n), src, tgt, std::move(imgs));
}

template <class F>
AlgebraMorphism<F> AlgebraMorphism<F>::identity(const TruncatedAlgebra<F>& a) {
  std::vector<Poly> imgs;
  for (std::uint32_t g = 0; g < a.gens().size(); ++g) imgs.push_back(Poly::generator(a.field(), g));
  return AlgebraMorphism("id", a, a, std::move(imgs));
}

template <class F>
Vec<F> AlgebraMorphism<F>::image_of_word(const Word& w) const {
  const auto& t = *target;
  Vec<F> v = t.unit();
  int e = 0;
  for (std::size_t i = w.size(); i-- > 0;) {
    const int dg = source->gens()[w[i]].degree;
    v = t.multiply(dg, t.evaluate(images[w[i]], dg), e, v);
    e += dg;
  }
  return v;
}

template <class F>
Vec<F> AlgebraMorphism<F>::apply(int d, const Vec<F>& v) const {
  Vec<F> out = target->zero(d);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) axpy<F>(out, v[i], image_of_word(source->basis(d)[i]));
  return out;
}

template <class F>
Matrix<F> AlgebraMorphism<F>::matrix(int d) const {
  Matrix<F> m(target->dim(d), source->dim(d), target->field());
  for (std::size_t i = 0; i < source->dim(d); ++i) m.set_column(i, image_of_word(source->basis(d)[i]));
  return m;
}

template <class F>
std::optional<int> AlgebraMorphism<F>::first_non_injective_degree() const {
  const int n = std::min(source->max_degree(), target->max_degree());
  for (int d = 0; d <= n; ++d)
    if (row_reduce(matrix(d), target->field()).rank < source->dim(d)) return d;
  return std::nullopt;
}

template <class F>
MorphismReport check_morphism(const AlgebraMorphism<F>& f) {
  const auto& src = f.source->presentation();
  const int n = std::min(f.source->max_degree(), f.target->max_degree());
  MorphismReport rep;
  for (std::size_t i = 0; i < src.relations.size(); ++i) {
    const int d = src.relation_degrees[i];
    if (d > n) continue;
    Vec<F> v = f.target->zero(d);
    for (const auto& [w, c] : src.relations[i].terms()) axpy<F>(v, c, f.image_of_word(w));
    if (!is_zero_vector(v) && (rep.ok || d < rep.degree)) {
      rep.ok = false;
      rep.degree = d;
      rep.relation = i;
      rep.message = "map '" + f.name + "' sends relation " + src.relations[i].str(src.gens) + " to " +
                    f.target->element_str(d, v) + " in degree " + std::to_string(d);
    }
  }
  return rep;
}

template <class F>
AlgebraMorphism<F> compose(const AlgebraMorphism<F>& g, const AlgebraMorphism<F>& f) {
  if (f.target != g.source) throw InputError("cannot compose '" + g.name + "' with '" + f.name + "'");
  using Poly = NcPolynomial<F>;
  const F& k = g.target->field();
  std::vector<Poly> imgs;
  for (const auto& p : f.images) {
    Poly out(k);
    for (const auto& [w, c] : p.terms()) {
      Poly term = Poly::monomial(k, Word{}, c);
      for (auto x : w) term = term * g.images[x];
      out += term;
    }
    imgs.push_back(std::move(out));
  }
  return AlgebraMorphism<F>(g.name + "." + f.name, *f.source, *g.target, std::move(imgs));
}

// ---------------------------------------------------------------------------
// Hopf structure

template <class F>
HopfData<F> HopfData<F>::primitive(const PresentedAlgebra<F>& a) {
  HopfData h;
  for (std::uint32_t g = 0; g < a.gens.size(); ++g) {
    h.coproduct.push_back({{a.field.one(), Word{g}, Word{}}, {a.field.one(), Word{}, Word{g}}});
    h.antipode.push_back(NcPolynomial<F>::monomial(a.field, Word{g}, -a.field.one()));
  }
  return h;
}

namespace {

// Sparse elements of A (x) A and A (x) A (x) A keyed by (degree, basis index)
// per factor.
using Key2 = std::array<std::size_t, 4>;
using Key3 = std::array<std::size_t, 6>;
template <class F>
using Tensor2 = std::map<Key2, typename F::Elem>;
template <class F>
using Tensor3 = std::map<Key3, typename F::Elem>;

template <class K, class E>
void add_to(std::map<K, E>& t, const K& key, const E& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
  }
}

template <class F>
class HopfChecker {
 public:
  using Elem = typename F::Elem;

  HopfChecker(const TruncatedAlgebra<F>& a, const HopfData<F>& h) : a_(a), h_(h), k_(a.field()) {
    const auto& gens = a.gens();
    if (h.coproduct.size() != gens.size() || h.antipode.size() != gens.size())
      throw InputError("Hopf data must cover every generator");
    for (std::uint32_t g = 0; g < gens.size(); ++g) {
      const int dg = gens[g].degree;
      Tensor2<F> t;
      if (dg <= a.max_degree())
        for (const auto& term : h.coproduct[g]) {
          const int dl = gens.degree(term.left), dr = gens.degree(term.right);
          if (dl + dr != dg) throw InputError("coproduct of '" + gens[g].name + "' is not homogeneous");
          auto l = a.reduce_word(term.left), r = a.reduce_word(term.right);
          for (std::size_t i = 0; i < l.size(); ++i)
            for (std::size_t j = 0; j < r.size(); ++j)
              add_to(t, Key2{std::size_t(dl), i, std::size_t(dr), j}, term.coefficient * l[i] * r[j]);
        }
      psi_gen_.push_back(std::move(t));
    }
  }

  HopfReport run() {
    HopfReport rep;
    const auto& pres = a_.presentation();
    const int n = a_.max_degree();
    auto fail = [&](bool& flag, int d, const std::string& what) {
      if (rep.failure.empty()) {
        rep.failure = what;
        rep.failure_degree = d;
      }
      flag = false;
    };

    for (std::size_t i = 0; i < pres.relations.size(); ++i) {
      const int d = pres.relation_degrees[i];
      if (d > n) continue;
      Tensor2<F> t;
      for (const auto& [w, c] : pres.relations[i].terms())
        for (const auto& [key, v] : psi_word(w)) add_to(t, key, c * v);
      if (!t.empty()) {
        fail(rep.algebra_map, d, "coproduct does not respect relation " + pres.relations[i].str(pres.gens));
        break;
      }
    }
    if (!rep.algebra_map) return rep;

    std::vector<std::vector<Tensor2<F>>> psi(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
      for (const auto& w : a_.basis(d)) psi[std::size_t(d)].push_back(psi_word(w));

    for (int d = 0; d <= n && rep.counit; ++d)
      for (std::size_t i = 0; i < a_.dim(d); ++i) {
        Vec<F> left = a_.zero(d), right = a_.zero(d);
        for (const auto& [key, c] : psi[std::size_t(d)][i]) {
          if (key[0] == 0) left[key[3]] += c;
          if (key[2] == 0) right[key[1]] += c;
        }
        const auto e = a_.basis_vector(d, i);
        if (left != e || right != e) {
          fail(rep.counit, d, "counit law fails on " + a_.gens().word_str(a_.basis(d)[i]));
          break;
        }
      }

    for (int d = 0; d <= n && rep.coassociative; ++d)
      for (std::size_t i = 0; i < a_.dim(d); ++i) {
        Tensor3<F> lhs, rhs;
        for (const auto& [key, c] : psi[std::size_t(d)][i]) {
          for (const auto& [k2, c2] : psi[key[0]][key[1]])
            add_to(lhs, Key3{k2[0], k2[1], k2[2], k2[3], key[2], key[3]}, c * c2);
          for (const auto& [k2, c2] : psi[key[2]][key[3]])
            add_to(rhs, Key3{key[0], key[1], k2[0], k2[1], k2[2], k2[3]}, c * c2);
        }
        if (lhs != rhs) {
          fail(rep.coassociative, d, "coassociativity fails on " + a_.gens().word_str(a_.basis(d)[i]));
          break;
        }
      }

    // antipode on generators, then on words as a signed anti-homomorphism
    std::vector<Vec<F>> c_gen;
    for (std::uint32_t g = 0; g < a_.gens().size(); ++g) {
      const int dg = a_.gens()[g].degree;
      c_gen.push_back(dg <= n ? a_.evaluate(h_.antipode[g], dg) : Vec<F>{});
    }
    auto c_word = [&](const Word& w) {
      Vec<F> v = a_.unit();
      int e = 0;
      long long sign_exp = 0;
      for (auto g : w) {
        const int dg = a_.gens()[g].degree;
        v = a_.multiply(dg, c_gen[g], e, v);
        sign_exp += static_cast<long long>(dg) * e;
        e += dg;
      }
      if (sign_exp % 2 != 0)
        for (auto& x : v) x = -x;
      return v;
    };
    for (std::size_t i = 0; i < pres.relations.size() && rep.antipode; ++i) {
      const int d = pres.relation_degrees[i];
      if (d > n) continue;
      Vec<F> v = a_.zero(d);
      for (const auto& [w, c] : pres.relations[i].terms()) axpy<F>(v, c, c_word(w));
      if (!is_zero_vector(v)) fail(rep.antipode, d, "antipode does not respect relation " + pres.relations[i].str(pres.gens));
    }
    std::vector<std::vector<Vec<F>>> c_basis(static_cast<std::size_t>(n) + 1);
    for (int d = 0; d <= n; ++d)
      for (const auto& w : a_.basis(d)) c_basis[std::size_t(d)].push_back(c_word(w));
    for (int d = 0; d <= n && rep.antipode; ++d)
      for (std::size_t i = 0; i < a_.dim(d); ++i) {
        Vec<F> l = a_.zero(d), r = a_.zero(d);
        for (const auto& [key, c] : psi[std::size_t(d)][i]) {
          const int p = int(key[0]), q = int(key[2]);
          axpy<F>(l, c, a_.multiply(p, c_basis[key[0]][key[1]], q, a_.basis_vector(q, key[3])));
          axpy<F>(r, c, a_.multiply(p, a_.basis_vector(p, key[1]), q, c_basis[key[2]][key[3]]));
        }
        Vec<F> expect = a_.zero(d);
        if (d == 0) expect[0] = k_.one();
        if (l != expect || r != expect) {
          fail(rep.antipode, d, "antipode identity fails on " + a_.gens().word_str(a_.basis(d)[i]));
          break;
        }
      }
    return rep;
  }

 private:
  Tensor2<F> multiply(const Tensor2<F>& x, const Tensor2<F>& y) const {
    Tensor2<F> out;
    for (const auto& [kx, cx] : x)
      for (const auto& [ky, cy] : y) {
        const int p = int(kx[0]), q = int(kx[2]), r = int(ky[0]), s = int(ky[2]);
        if (p + r > a_.max_degree() || q + s > a_.max_degree()) continue;
        Elem c = cx * cy;
        if ((q * r) % 2 != 0) c = -c;
        auto l = a_.multiply(p, a_.basis_vector(p, kx[1]), r, a_.basis_vector(r, ky[1]));
        auto m = a_.multiply(q, a_.basis_vector(q, kx[3]), s, a_.basis_vector(s, ky[3]));
        for (std::size_t i = 0; i < l.size(); ++i) {
          if (l[i].is_zero()) continue;
          for (std::size_t j = 0; j < m.size(); ++j)
            add_to(out, Key2{std::size_t(p + r), i, std::size_t(q + s), j}, c * l[i] * m[j]);
        }
      }
    return out;
  }

  Tensor2<F> psi_word(const Word& w) const {
    Tensor2<F> t;
    t[Key2{0, 0, 0, 0}] = k_.one();
    for (auto g : w) t = multiply(t, psi_gen_[g]);
    return t;
  }

  const TruncatedAlgebra<F>& a_;
  const HopfData<F>& h_;
  F k_;
  std::vector<Tensor2<F>> psi_gen_;
};

}  // namespace

template <class F>
HopfReport hopf_check(const TruncatedAlgebra<F>& a, const HopfData<F>& h) {
  return HopfChecker<F>(a, h).run();
}

// ---------------------------------------------------------------------------
// Modules and tensor products over an algebra

template <class F>
GradedModule<F> regular_right_module(const TruncatedAlgebra<F>& a) {
  return {a.dims(), [&a](int md, const Vec<F>& m, int ad, const Vec<F>& x) { return a.multiply(md, m, ad, x); }};
}

template <class F>
GradedModule<F> regular_left_module(const TruncatedAlgebra<F>& a) {
  return {a.dims(), [&a](int md, const Vec<F>& m, int ad, const Vec<F>& x) { return a.multiply(ad, x, md, m); }};
}

template <class F>
GradedModule<F> trivial_module(const TruncatedAlgebra<F>& a) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(a.max_degree()) + 1, 0);
  dims[0] = 1;
  const F k = a.field();
  return {dims, [k, dims](int md, const Vec<F>& m, int ad, const Vec<F>& x) {
            const auto d = static_cast<std::size_t>(md + ad);
            Vec<F> out = zero_vec(d < dims.size() ? dims[d] : 0, k);
            if (ad == 0 && !out.empty())
              for (std::size_t i = 0; i < m.size(); ++i) out[i] = m[i] * x[0];
            return out;
          }};
}

template <class F>
GradedModule<F> restricted_right_module(const AlgebraMorphism<F>& f) {
  const auto& b = *f.target;
  return {b.dims(),
          [&b, f](int md, const Vec<F>& m, int ad, const Vec<F>& x) { return b.multiply(md, m, ad, f.apply(ad, x)); }};
}

namespace {

// Spot-checks (m * g) * a = m * (g * a) for generators g; `right` selects the
// side the algebra acts from.
template <class F>
void check_action(const GradedModule<F>& mod, const TruncatedAlgebra<F>& a, int n, bool right, const char* what) {
  constexpr std::size_t kBudget = 400;
  std::size_t done = 0;
  for (int p = 0; p <= n; ++p)
    for (std::size_t i = 0; i < mod.dims[std::size_t(p)]; ++i)
      for (std::uint32_t g = 0; g < a.gens().size(); ++g) {
        const int dg = a.gens()[g].degree;
        for (int q = 1; p + dg + q <= n; ++q)
          for (std::size_t j = 0; j < a.dim(q); ++j) {
            if (done++ >= kBudget) return;
            const auto m = unit_vec(mod.dims[std::size_t(p)], i, a.field());
            const auto gv = a.reduce_word(Word{g});
            const auto av = a.basis_vector(q, j);
            Vec<F> lhs, rhs;
            if (right) {
              lhs = mod.act(p + dg, mod.act(p, m, dg, gv), q, av);
              rhs = mod.act(p, m, dg + q, a.multiply(dg, gv, q, av));
            } else {
              lhs = mod.act(p + dg, mod.act(p, m, dg, gv), q, av);
              rhs = mod.act(p, m, dg + q, a.multiply(q, av, dg, gv));
            }
            if (lhs != rhs) throw CheckFailure(std::string(what) + " action is not associative", p + dg + q);
          }
      }
}

}  // namespace

template <class F>
std::vector<std::size_t> tensor_over_algebra(const GradedModule<F>& v, const TruncatedAlgebra<F>& a,
                                             const GradedModule<F>& w, int max_degree) {
  if (v.max_degree() < max_degree || w.max_degree() < max_degree || a.max_degree() < max_degree)
    throw InputError("tensor_over_algebra: inputs are truncated below degree " + std::to_string(max_degree));
  check_action(v, a, max_degree, true, "right");
  check_action(w, a, max_degree, false, "left");
  const F& k = a.field();
  std::vector<std::size_t> out;
  for (int d = 0; d <= max_degree; ++d) {
    std::vector<std::size_t> offset(static_cast<std::size_t>(d) + 2, 0);
    for (int p = 0; p <= d; ++p)
      offset[std::size_t(p) + 1] = offset[std::size_t(p)] + v.dims[std::size_t(p)] * w.dims[std::size_t(d - p)];
    const std::size_t ambient = offset.back();
    RowEchelon<F> rel(k, ambient);
    for (int p = 0; p <= d && !rel.full(); ++p)
      for (int q = 1; p + q <= d; ++q) {
        const int s = d - p - q;
        for (std::size_t i = 0; i < v.dims[std::size_t(p)]; ++i)
          for (std::size_t kk = 0; kk < a.dim(q); ++kk) {
            const auto va = v.act(p, unit_vec(v.dims[std::size_t(p)], i, k), q, a.basis_vector(q, kk));
            for (std::size_t j = 0; j < w.dims[std::size_t(s)]; ++j) {
              const auto aw = w.act(s, unit_vec(w.dims[std::size_t(s)], j, k), q, a.basis_vector(q, kk));
              Vec<F> row = zero_vec(ambient, k);
              const std::size_t ws = w.dims[std::size_t(s)];
              for (std::size_t x = 0; x < va.size(); ++x)
                if (!va[x].is_zero()) row[offset[std::size_t(p + q)] + x * ws + j] += va[x];
              const std::size_t wqs = w.dims[std::size_t(q + s)];
              for (std::size_t y = 0; y < aw.size(); ++y)
                if (!aw[y].is_zero()) row[offset[std::size_t(p)] + i * wqs + y] -= aw[y];
              rel.insert(std::move(row));
            }
          }
      }
    out.push_back(ambient - rel.rank());
  }
  return out;
}

#define AMALG_INSTANTIATE(F)                                                                                    \
  template class TruncatedAlgebra<F>;                                                                           \
  template struct AlgebraMorphism<F>;                                                                           \
  template struct HopfData<F>;                                                                                  \
  template MorphismReport check_morphism(const AlgebraMorphism<F>&);                                            \
  template AlgebraMorphism<F> compose(const AlgebraMorphism<F>&, const AlgebraMorphism<F>&);                    \
  template HopfReport hopf_check(const TruncatedAlgebra<F>&, const HopfData<F>&);                               \
  template GradedModule<F> regular_right_module(const TruncatedAlgebra<F>&);                                    \
  template GradedModule<F> regular_left_module(const TruncatedAlgebra<F>&);                                     \
  template GradedModule<F> trivial_module(const TruncatedAlgebra<F>&);                                          \
  template GradedModule<F> restricted_right_module(const AlgebraMorphism<F>&);                                  \
  template std::vector<std::size_t> tensor_over_algebra(const GradedModule<F>&, const TruncatedAlgebra<F>&,     \
                                                        const GradedModule<F>&, int);

AMALG_INSTANTIATE(RationalField)
AMALG_INSTANTIATE(PrimeField)

}  // namespace amalg
