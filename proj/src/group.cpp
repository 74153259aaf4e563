#include "amalg/group.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace amalg {

using Elem = FiniteGroup::Elem;

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<Elem>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) throw InputError("group '" + name_ + "' is empty");
  for (const auto& row : table_) {
    if (row.size() != n) throw InputError("multiplication table of '" + name_ + "' is not square");
    for (auto x : row)
      if (x >= n) throw InputError("multiplication table of '" + name_ + "' has an entry out of range");
  }
  auto check = [&](Elem a, Elem b, Elem c) {
    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
      throw InputError("multiplication table of '" + name_ + "' is not associative: (a*b)*c != a*(b*c) for (a,b,c) = (" +
                       std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  };
  if (n <= 64) {
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(n - 1));
    for (int s = 0; s < 100000; ++s) check(pick(rng), pick(rng), pick(rng));
  }
  bool found = false;
  for (Elem e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) ok = mul(e, x) == x && mul(x, e) == x;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw InputError("group '" + name_ + "' has no identity element");
  inverse_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    auto it = std::find(table_[a].begin(), table_[a].end(), identity_);
    if (it == table_[a].end() || mul(static_cast<Elem>(it - table_[a].begin()), a) != identity_)
      throw InputError("element " + std::to_string(a) + " of '" + name_ + "' has no inverse");
    inverse_[a] = static_cast<Elem>(it - table_[a].begin());
  }
}

FiniteGroup FiniteGroup::cyclic(std::uint32_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  std::vector<std::vector<Elem>> t(n, std::vector<Elem>(n));
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup("Z/" + std::to_string(n), std::move(t));
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const auto na = static_cast<Elem>(a.order()), nb = static_cast<Elem>(b.order());
  std::vector<std::vector<Elem>> t(na * nb, std::vector<Elem>(na * nb));
  for (Elem x = 0; x < na * nb; ++x)
    for (Elem y = 0; y < na * nb; ++y) t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(a.name() + " x " + b.name(), std::move(t));
}

GroupHom::GroupHom(std::shared_ptr<const FiniteGroup> src, std::shared_ptr<const FiniteGroup> tgt,
                   std::vector<Elem> img)
    : source(std::move(src)), target(std::move(tgt)), image(std::move(img)) {
  if (image.size() != source->order()) throw InputError("homomorphism image has the wrong length");
  for (auto y : image)
    if (y >= target->order()) throw InputError("homomorphism image out of range");
  for (Elem a = 0; a < source->order(); ++a)
    for (Elem b = 0; b < source->order(); ++b)
      if (image[source->mul(a, b)] != target->mul(image[a], image[b]))
        throw InputError("map " + source->name() + " -> " + target->name() + " is not a homomorphism at (" +
                         std::to_string(a) + "," + std::to_string(b) + ")");
}

GroupHom GroupHom::from_generator(std::shared_ptr<const FiniteGroup> src, std::shared_ptr<const FiniteGroup> tgt,
                                  Elem g) {
  std::vector<Elem> img(src->order());
  Elem x = tgt->identity();
  for (auto& y : img) {
    y = x;
    x = tgt->mul(x, g);
  }
  return GroupHom(std::move(src), std::move(tgt), std::move(img));
}

bool GroupHom::injective() const {
  std::set<Elem> seen(image.begin(), image.end());
  return seen.size() == image.size();
}

CosetTransversal transversal(const FiniteGroup& g, const std::vector<Elem>& subgroup) {
  std::vector<bool> in_h(g.order(), false);
  for (auto h : subgroup) {
    if (h >= g.order()) throw InputError("subgroup element out of range");
    in_h[h] = true;
  }
  if (subgroup.empty()) throw InputError("subgroup is empty");
  for (auto a : subgroup)
    for (auto b : subgroup)
      if (!in_h[g.mul(a, b)])
        throw InputError("subset of " + g.name() + " is not closed: " + std::to_string(a) + "*" + std::to_string(b));
  CosetTransversal t;
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  t.coset_of.assign(g.order(), kNone);
  t.in_subgroup.assign(g.order(), g.identity());
  auto fill = [&](Elem rep) {
    const std::size_t idx = t.reps.size();
    t.reps.push_back(rep);
    for (Elem h = 0; h < g.order(); ++h)
      if (in_h[h]) {
        const Elem x = g.mul(rep, h);
        t.coset_of[x] = idx;
        t.in_subgroup[x] = h;
      }
  };
  fill(g.identity());
  for (Elem x = 0; x < g.order(); ++x)
    if (t.coset_of[x] == kNone) fill(x);
  return t;
}

// ---------------------------------------------------------------- amalgam

GroupAmalgam::GroupAmalgam(std::string name, GroupHom f1, GroupHom f2)
    : name_(std::move(name)), f1_(std::move(f1)), f2_(std::move(f2)) {
  if (f1_.source->order() != f2_.source->order())
    throw InputError("the two maps of '" + name_ + "' have different sources");
  for (const GroupHom* f : {&f1_, &f2_})
    if (!f->injective())
      throw InputError("map " + f->source->name() + " -> " + f->target->name() + " of '" + name_ +
                       "' is not injective");
  t1_ = transversal(*f1_.target, f1_.image);
  t2_ = transversal(*f2_.target, f2_.image);
  pre1_.assign(f1_.target->order(), std::nullopt);
  pre2_.assign(f2_.target->order(), std::nullopt);
  for (Elem a = 0; a < f1_.source->order(); ++a) {
    pre1_[f1_(a)] = a;
    pre2_[f2_(a)] = a;
  }
}

const FiniteGroup& GroupAmalgam::group(int i) const {
  switch (i) {
    case 0: return *f1_.source;
    case 1: return *f1_.target;
    case 2: return *f2_.target;
    default: throw InputError("factor index must be 0, 1 or 2");
  }
}

void GroupAmalgam::left_mult(int i, Elem g, GroupNormalWord& w) const {
  if (i == 0) {
    if (w.letters.empty()) {
      w.tail = group(0).mul(g, w.tail);
      return;
    }
    const int j = w.letters.front().factor;
    left_mult(j, map(j)(g), w);
    return;
  }
  const auto& b = group(i);
  Elem h = g;
  if (!w.letters.empty() && w.letters.front().factor == i) {
    h = b.mul(g, w.letters.front().elem);
    w.letters.erase(w.letters.begin());
  }
  const auto& t = cosets(i);
  const Elem r = t.reps[t.coset_of[h]];
  const Elem a = *(i == 1 ? pre1_ : pre2_)[t.in_subgroup[h]];
  left_mult(0, a, w);
  if (r != b.identity()) w.letters.insert(w.letters.begin(), GroupLetter{i, r});
}

GroupNormalWord GroupAmalgam::reduce(const GroupWord& w) const {
  GroupNormalWord out = identity();
  for (std::size_t k = w.size(); k-- > 0;) left_mult(w[k].factor, w[k].elem, out);
  return out;
}

GroupNormalWord GroupAmalgam::reduce_bracketed(const GroupWord& w, std::mt19937_64& rng) const {
  if (w.size() <= 1) return reduce(w);
  std::uniform_int_distribution<std::size_t> cut(1, w.size() - 1);
  const std::size_t k = cut(rng);
  const GroupWord left(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  const GroupWord right(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  return multiply(reduce_bracketed(left, rng), reduce_bracketed(right, rng));
}

GroupNormalWord GroupAmalgam::multiply(const GroupNormalWord& u, const GroupNormalWord& v) const {
  GroupNormalWord out = v;
  left_mult(0, u.tail, out);
  for (std::size_t k = u.letters.size(); k-- > 0;) left_mult(u.letters[k].factor, u.letters[k].elem, out);
  return out;
}

GroupWord GroupAmalgam::spell(const GroupNormalWord& w) const {
  GroupWord out = w.letters;
  if (w.tail != group(0).identity()) out.push_back(GroupLetter{0, w.tail});
  return out;
}

std::string GroupAmalgam::letter_str(const GroupLetter& l) const {
  return std::to_string(l.elem) + "_" + std::to_string(l.factor);
}

std::string GroupAmalgam::word_str(const GroupNormalWord& w) const {
  std::string out = "(";
  for (std::size_t k = 0; k < w.letters.size(); ++k) out += (k ? ", " : "") + letter_str(w.letters[k]);
  if (!w.letters.empty()) out += " | ";
  return out + std::to_string(w.tail) + ")";
}

std::vector<std::uint64_t> filtration_sizes(const GroupAmalgam& d, int n) {
  const std::uint64_t a = d.cosets(1).reps.size() - 1, b = d.cosets(2).reps.size() - 1;
  std::vector<std::uint64_t> out;
  std::uint64_t total = 0;
  for (int k = 0; k <= n; ++k) {
    std::uint64_t words = 1;
    if (k > 0) {
      std::uint64_t s1 = 1, s2 = 1;
      for (int p = 0; p < k; ++p) {
        s1 *= (p % 2 == 0) ? a : b;
        s2 *= (p % 2 == 0) ? b : a;
      }
      words = s1 + s2;
    }
    total += words;
    out.push_back(total * d.group(0).order());
  }
  return out;
}

// ---------------------------------------------------------------- enumeration

namespace {

std::vector<GroupLetter> alphabet(const GroupAmalgam& d) {
  std::vector<GroupLetter> out;
  for (int i = 0; i <= 2; ++i)
    for (Elem g = 0; g < d.group(i).order(); ++g)
      if (g != d.group(i).identity()) out.push_back(GroupLetter{i, g});
  return out;
}

std::uint64_t word_total(std::size_t letters, int max_length) {
  std::uint64_t total = 0, pow = 1;
  for (int k = 0; k <= max_length; ++k) {
    total += pow;
    pow *= letters;
  }
  return total;
}

GroupWord decode(const std::vector<GroupLetter>& alpha, int length, std::uint64_t idx) {
  GroupWord w(static_cast<std::size_t>(length));
  for (int p = length; p-- > 0;) {
    w[static_cast<std::size_t>(p)] = alpha[idx % alpha.size()];
    idx /= alpha.size();
  }
  return w;
}

std::uint64_t count_of_length(std::size_t letters, int length) {
  std::uint64_t c = 1;
  for (int k = 0; k < length; ++k) c *= letters;
  return c;
}

// Empty string when every elementary move preserves the normal form of w.
std::string check_moves(const GroupAmalgam& d, const GroupWord& w) {
  const auto nf = d.reduce(w);
  auto differs = [&](const GroupWord& v) { return d.reduce(v) != nf; };
  for (std::size_t p = 0; p <= w.size(); ++p)
    for (int i = 0; i <= 2; ++i) {
      GroupWord v = w;
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(p), GroupLetter{i, d.group(i).identity()});
      if (differs(v)) return "inserting an identity changes the normal form";
    }
  for (std::size_t p = 0; p < w.size(); ++p) {
    const auto [i, g] = w[p];
    const auto& b = d.group(i);
    for (Elem h = 0; h < b.order(); ++h) {
      GroupWord v = w;
      v[p] = GroupLetter{i, h};
      v.insert(v.begin() + static_cast<std::ptrdiff_t>(p) + 1, GroupLetter{i, b.mul(b.inv(h), g)});
      if (differs(v)) return "splitting a letter changes the normal form";
    }
    if (i == 0) {
      for (int j = 1; j <= 2; ++j) {
        GroupWord v = w;
        v[p] = GroupLetter{j, d.map(j)(g)};
        if (differs(v)) return "replacing a base letter by its image changes the normal form";
      }
    }
  }
  return {};
}

}  // namespace

std::vector<GroupNormalWord> enumerate_normal_forms(const GroupAmalgam& d, int max_length, bool parallel) {
  const auto alpha = alphabet(d);
  std::set<GroupNormalWord> all;
  for (int k = 0; k <= max_length; ++k) {
    const auto n = static_cast<std::int64_t>(count_of_length(alpha.size(), k));
    if (parallel) {
#pragma omp parallel
      {
        std::set<GroupNormalWord> local;
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < n; ++idx)
          local.insert(d.reduce(decode(alpha, k, static_cast<std::uint64_t>(idx))));
#pragma omp critical
        all.insert(local.begin(), local.end());
      }
    } else {
      for (std::int64_t idx = 0; idx < n; ++idx) all.insert(d.reduce(decode(alpha, k, static_cast<std::uint64_t>(idx))));
    }
  }
  return {all.begin(), all.end()};
}

BijectionReport normal_form_bijection_check(const GroupAmalgam& d, int max_length, bool parallel) {
  BijectionReport rep;
  const auto alpha = alphabet(d);
  if (word_total(alpha.size(), max_length) > 10000000)
    throw InputError("bijection check would enumerate more than 10^7 words");
  rep.words = word_total(alpha.size(), max_length);

  // first failure in enumeration order
  std::pair<int, std::uint64_t> first{max_length + 1, 0};
  std::string why;
  for (int k = 0; k <= max_length; ++k) {
    const auto n = static_cast<std::int64_t>(count_of_length(alpha.size(), k));
#pragma omp parallel for schedule(dynamic, 256) if (parallel)
    for (std::int64_t idx = 0; idx < n; ++idx) {
      const auto w = decode(alpha, k, static_cast<std::uint64_t>(idx));
      auto msg = check_moves(d, w);
      if (!msg.empty()) {
#pragma omp critical
        if (std::make_pair(k, static_cast<std::uint64_t>(idx)) < first) {
          first = {k, static_cast<std::uint64_t>(idx)};
          std::string ws;
          for (const auto& l : w) ws += (ws.empty() ? "" : " ") + d.letter_str(l);
          why = msg + " of [" + ws + "]";
        }
      }
    }
  }
  if (!why.empty()) {
    rep.ok = false;
    rep.failure = why;
  }

  const auto forms = enumerate_normal_forms(d, max_length, parallel);
  for (const auto& nf : forms)
    if (d.reduce(d.spell(nf)) != nf && rep.ok) {
      rep.ok = false;
      rep.failure = "normal word " + d.word_str(nf) + " does not reduce to itself";
    }
  rep.expected = filtration_sizes(d, max_length);
  rep.distinct.assign(static_cast<std::size_t>(max_length) + 1, 0);
  for (const auto& nf : forms)
    for (std::size_t k = nf.letters.size(); k < rep.distinct.size(); ++k) ++rep.distinct[k];
  if (rep.ok && rep.distinct != rep.expected) {
    rep.ok = false;
    for (std::size_t k = 0; k < rep.distinct.size(); ++k)
      if (rep.distinct[k] != rep.expected[k]) {
        rep.failure = "|P_" + std::to_string(k) + "| = " + std::to_string(rep.distinct[k]) + ", expected " +
                      std::to_string(rep.expected[k]);
        break;
      }
  }
  return rep;
}

OrbitReport orbit_quotient_size(const GroupAmalgam& d, const std::vector<int>& shape) {
  if (shape.empty() || shape.size() > 6) throw InputError("orbit count needs a shape of length 1..6");
  for (int i : shape)
    if (i < 0 || i > 2) throw InputError("shape entries must be 0, 1 or 2");
  const std::size_t n = shape.size();
  const auto& b0 = d.group(0);
  std::vector<std::uint64_t> sizes;
  OrbitReport rep;
  rep.product_size = 1;
  for (int i : shape) {
    sizes.push_back(d.group(i).order());
    rep.product_size *= d.group(i).order();
  }
  std::uint64_t acting = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) acting *= b0.order();
  auto embed = [&](int i, Elem a) { return i == 0 ? a : d.map(i)(a); };

  std::vector<bool> seen(rep.product_size, false);
  std::vector<Elem> t(n), u(n), a(n > 0 ? n - 1 : 0);
  for (std::uint64_t x = 0; x < rep.product_size; ++x) {
    if (seen[x]) continue;
    ++rep.orbits;
    std::uint64_t rest = x;
    for (std::size_t k = n; k-- > 0;) {
      t[k] = static_cast<Elem>(rest % sizes[k]);
      rest /= sizes[k];
    }
    std::set<std::uint64_t> orbit;
    for (std::uint64_t s = 0; s < acting; ++s) {
      std::uint64_t r = s;
      for (auto& ak : a) {
        ak = static_cast<Elem>(r % b0.order());
        r /= b0.order();
      }
      for (std::size_t k = 0; k < n; ++k) {
        const auto& g = d.group(shape[k]);
        Elem v = t[k];
        if (k > 0) v = g.mul(g.inv(embed(shape[k], a[k - 1])), v);
        if (k + 1 < n) v = g.mul(v, embed(shape[k], a[k]));
        u[k] = v;
      }
      std::uint64_t code = 0;
      for (std::size_t k = 0; k < n; ++k) code = code * sizes[k] + u[k];
      orbit.insert(code);
      seen[code] = true;
    }
    if (orbit.size() != acting) rep.free = false;
  }
  return rep;
}

GroupAmalgam sl2z_preset() {
  auto b0 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  auto b1 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(4));
  auto b2 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(6));
  return GroupAmalgam("sl2z", GroupHom::from_generator(b0, b1, 2), GroupHom::from_generator(b0, b2, 3));
}

GroupAmalgam dinfty_preset() {
  auto b0 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(1));
  auto b1 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  auto b2 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  return GroupAmalgam("dinfty", GroupHom::from_generator(b0, b1, 0), GroupHom::from_generator(b0, b2, 0));
}

}  // namespace amalg
