#include <array>
#include <map>
#include <random>

#include "doctest.h"

#include "amalg/group.hpp"

using namespace amalg;

namespace {

using M2 = std::array<long long, 4>;

M2 mat_mul(const M2& a, const M2& b) {
  return {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3], a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
}

M2 mat_pow(const M2& a, unsigned k) {
  M2 out{1, 0, 0, 1};
  for (unsigned i = 0; i < k; ++i) out = mat_mul(out, a);
  return out;
}

// SL2(Z) = Z/4 *_{Z/2} Z/6 through S = [[0,-1],[1,0]] and U = [[0,-1],[1,1]].
M2 sl2_value(const GroupWord& w) {
  const M2 s{0, -1, 1, 0}, u{0, -1, 1, 1}, minus{-1, 0, 0, -1};
  M2 out{1, 0, 0, 1};
  for (const auto& l : w) {
    const M2 g = l.factor == 0 ? mat_pow(minus, l.elem) : l.factor == 1 ? mat_pow(s, l.elem) : mat_pow(u, l.elem);
    out = mat_mul(out, g);
  }
  return out;
}

// D_infinity as affine maps x -> sign * x + shift of Z.
std::pair<int, int> dinfty_value(const GroupWord& w) {
  std::pair<int, int> out{1, 0};
  for (const auto& l : w) {
    if (l.elem == 0) continue;
    const std::pair<int, int> g = l.factor == 1 ? std::pair{-1, 0} : std::pair{-1, 1};
    out = {out.first * g.first, out.first * g.second + out.second};
  }
  return out;
}

GroupWord random_word(const GroupAmalgam& d, std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> fac(0, 2);
  GroupWord w(len(rng));
  for (auto& l : w) {
    l.factor = fac(rng);
    std::uniform_int_distribution<FiniteGroup::Elem> el(0, static_cast<FiniteGroup::Elem>(d.group(l.factor).order() - 1));
    l.elem = el(rng);
  }
  return w;
}

template <class Value, class Eval>
void check_faithful(const GroupAmalgam& d, int max_len, Eval eval) {
  std::vector<GroupLetter> alpha;
  for (int i = 0; i <= 2; ++i)
    for (FiniteGroup::Elem g = 1; g < d.group(i).order(); ++g) alpha.push_back({i, g});
  std::map<Value, GroupNormalWord> by_value;
  std::map<GroupNormalWord, Value> by_form;
  GroupWord w;
  std::function<void(int)> walk = [&](int left) {
    const auto nf = d.reduce(w);
    const auto v = eval(w);
    auto [a, fresh_a] = by_value.emplace(v, nf);
    auto [b, fresh_b] = by_form.emplace(nf, v);
    REQUIRE(a->second == nf);
    REQUIRE(b->second == v);
    if (left == 0) return;
    for (const auto& l : alpha) {
      w.push_back(l);
      walk(left - 1);
      w.pop_back();
    }
  };
  walk(max_len);
}

}  // namespace

TEST_CASE("group tables") {
  auto c4 = FiniteGroup::cyclic(4);
  CHECK(c4.order() == 4);
  CHECK(c4.mul(3, 2) == 1);
  CHECK(c4.inv(1) == 3);
  auto klein = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(klein.order() == 4);
  for (FiniteGroup::Elem g = 0; g < 4; ++g) CHECK(klein.inv(g) == g);

  try {
    FiniteGroup("bad", {{0, 1, 2}, {1, 0, 0}, {2, 0, 0}});
    FAIL("accepted a non-associative table");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("(1,1,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(FiniteGroup("nonsquare", {{0, 1}, {1}}), InputError);
}

TEST_CASE("coset transversals") {
  auto c4 = FiniteGroup::cyclic(4);
  auto t = transversal(c4, {0, 2});
  CHECK(t.reps == std::vector<FiniteGroup::Elem>{0, 1});
  CHECK(transversal(c4, {0, 1, 2, 3}).reps == std::vector<FiniteGroup::Elem>{0});
  CHECK(transversal(FiniteGroup::cyclic(6), {0, 3}).reps == std::vector<FiniteGroup::Elem>{0, 1, 2});
  CHECK_THROWS_AS(transversal(c4, {0, 1}), InputError);
}

TEST_CASE("non-injective embeddings are rejected") {
  auto c4 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(4));
  auto c2 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  CHECK_THROWS_AS(GroupAmalgam("bad", GroupHom::from_generator(c4, c2, 1), GroupHom::from_generator(c4, c4, 1)),
                  InputError);
  CHECK_THROWS_AS(GroupHom::from_generator(c2, c4, 1), InputError);
}

TEST_CASE("reduction and multiplication examples") {
  auto d = sl2z_preset();
  auto two = d.reduce({{1, 1}, {1, 1}});
  CHECK(two.letters.empty());
  CHECK(two.tail == 1);
  auto one = d.reduce({{1, 1}});
  CHECK(d.word_str(one) == "(1_1 | 0)");
  auto prod = d.multiply(one, d.reduce({{2, 1}}));
  CHECK(d.word_str(prod) == "(1_1, 1_2 | 0)");
  CHECK(d.multiply(prod, d.identity()) == prod);
  CHECK(d.multiply(d.identity(), prod) == prod);
  // 3 = 1 + f(1) in Z/4; the central element passes through to the tail
  CHECK(d.word_str(d.reduce({{1, 3}, {2, 1}})) == "(1_1, 1_2 | 1)");

  auto e = dinfty_preset();
  auto aba = e.reduce({{1, 1}, {2, 1}, {1, 1}});
  auto ab = e.reduce({{1, 1}, {2, 1}});
  CHECK(e.word_str(e.multiply(aba, ab)) == "(1_1 | 0)");
  CHECK(e.reduce({{1, 1}, {2, 1}, {1, 1}, {1, 1}, {2, 1}}) == e.reduce({{1, 1}}));
}

TEST_CASE("filtration sizes") {
  CHECK(filtration_sizes(sl2z_preset(), 3) == std::vector<std::uint64_t>{2, 8, 16, 28});
  auto p = filtration_sizes(dinfty_preset(), 10);
  for (std::uint64_t n = 0; n <= 10; ++n) CHECK(p[n] == 2 * n + 1);
  auto c3 = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(3));
  GroupAmalgam same("same", GroupHom::from_generator(c3, c3, 1), GroupHom::from_generator(c3, c3, 1));
  CHECK(filtration_sizes(same, 4) == std::vector<std::uint64_t>{3, 3, 3, 3, 3});
}

TEST_CASE("normal form bijection") {
  auto d = sl2z_preset();
  auto rep = normal_form_bijection_check(d, 6);
  CHECK(rep.ok);
  CHECK(std::vector<std::uint64_t>(rep.distinct.begin(), rep.distinct.begin() + 4) ==
        std::vector<std::uint64_t>{2, 8, 16, 28});
  auto e = dinfty_preset();
  auto re = normal_form_bijection_check(e, 10);
  CHECK(re.ok);
  for (std::uint64_t n = 0; n <= 10; ++n) CHECK(re.distinct[n] == 2 * n + 1);
  CHECK(enumerate_normal_forms(d, 4, false) == enumerate_normal_forms(d, 4, true));
  CHECK(normal_form_bijection_check(d, 4, false).distinct == normal_form_bijection_check(d, 4, true).distinct);
}

TEST_CASE("normal forms separate elements of faithful models") {
  check_faithful<M2>(sl2z_preset(), 4, sl2_value);
  check_faithful<std::pair<int, int>>(dinfty_preset(), 10, dinfty_value);
}

TEST_CASE("reduction is idempotent and independent of bracketing") {
  std::mt19937_64 rng(99);
  for (const auto& d : {sl2z_preset(), dinfty_preset()}) {
    for (int t = 0; t < 10000; ++t) {
      const auto w = random_word(d, rng, 12);
      const auto nf = d.reduce(w);
      CHECK(d.reduce(d.spell(nf)) == nf);
      CHECK(d.reduce_bracketed(w, rng) == nf);
    }
  }
}

TEST_CASE("group multiplication is associative and filtered") {
  std::mt19937_64 rng(5);
  auto d = sl2z_preset();
  for (int t = 0; t < 10000; ++t) {
    const auto a = d.reduce(random_word(d, rng, 8));
    const auto b = d.reduce(random_word(d, rng, 8));
    const auto c = d.reduce(random_word(d, rng, 8));
    const auto ab = d.multiply(a, b);
    CHECK(d.multiply(ab, c) == d.multiply(a, d.multiply(b, c)));
    CHECK(ab.letters.size() <= a.letters.size() + b.letters.size());
  }
}

TEST_CASE("orbit counts of the staircase action") {
  auto d = sl2z_preset();
  auto r12 = orbit_quotient_size(d, {1, 2});
  CHECK(r12.product_size == 24);
  CHECK(r12.orbits == 12);
  CHECK(r12.free);
  CHECK(orbit_quotient_size(d, {0}).orbits == 2);
  CHECK(orbit_quotient_size(d, {1}).orbits == 4);
  auto r121 = orbit_quotient_size(d, {1, 2, 1});
  CHECK(r121.orbits == 24);
  CHECK(r121.free);
  // orbits of the alternating shapes = transversal words of that length times |B0|
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<int> s1, s2;
    for (std::size_t k = 0; k < n; ++k) {
      s1.push_back(k % 2 == 0 ? 1 : 2);
      s2.push_back(k % 2 == 0 ? 2 : 1);
    }
    std::uint64_t prod1 = 1, prod2 = 1;
    for (std::size_t k = 0; k < n; ++k) {
      prod1 *= d.cosets(s1[k]).reps.size();
      prod2 *= d.cosets(s2[k]).reps.size();
    }
    CHECK(orbit_quotient_size(d, s1).orbits == prod1 * 2);
    CHECK(orbit_quotient_size(d, s2).orbits == prod2 * 2);
  }
  CHECK_THROWS_AS(orbit_quotient_size(d, {}), InputError);
}
