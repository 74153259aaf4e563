#include "amalg/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "amalg/amalgam.hpp"
#include "amalg/cli.hpp"
#include "amalg/error.hpp"
#include "amalg/group.hpp"
#include "amalg/integral.hpp"
#include "amalg/presets.hpp"

namespace amalg::acceptance {

namespace {

struct Params {
  int brute_q, brute_f2;
  int closed_q, closed_f2;
  int bruhat;
  int pieces, boundary_n, boundary_deg;
  int sl2z_len, dinfty_len;
  int integral;
  int decomp_q, decomp_f2, decomp_f3;
  int alg_triples, group_triples, words;
};

Params params(Level level) {
  if (level == Level::full) return {10, 8, 16, 12, 12, 12, 4, 10, 6, 10, 12, 16, 12, 16, 1000, 10000, 10000};
  return {8, 6, 12, 9, 9, 9, 3, 8, 4, 8, 9, 12, 9, 12, 200, 1000, 1000};
}

const RationalField kQ{};
const PrimeField kF2(2);
const PrimeField kF3(3);

std::string dims_str(const std::vector<std::size_t>& v, std::size_t count) {
  std::string s;
  for (std::size_t i = 0; i < count && i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

/// Degree of the first difference, or -1.
int first_difference(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  for (std::size_t d = 0; d < std::min(a.size(), b.size()); ++d)
    if (a[d] != b[d]) return static_cast<int>(d);
  return a.size() == b.size() ? -1 : static_cast<int>(std::min(a.size(), b.size()));
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail.str("");
      detail << why;
    }
  }
};

template <class F>
std::string oracle(const F& field, int n, Outcome& o) {
  const auto d = pontryagin_diagram(field, n);
  const auto dims = Amalgam<F>(d).poincare_series();
  const auto brute = brute_force_pushout(d, n);
  const int bad = first_difference(dims, brute);
  o.require(bad < 0, field.name() + " differs from the pushout presentation in degree " + std::to_string(bad));
  return field.name() + " 0.." + std::to_string(n);
}

void c1(const Params& p, Outcome& o) {
  const auto a = oracle(kQ, p.brute_q, o);
  const auto b = oracle(kF2, p.brute_f2, o);
  if (o.pass) o.detail << "amalgam = pushout presentation over " << a << " and " << b;
}

void c2(const Params& p, Outcome& o) {
  const auto dims = Amalgam<RationalField>(pontryagin_diagram(kQ, p.closed_q)).poincare_series();
  const std::vector<std::size_t> head{1, 1, 0, 2, 3, 1, 1, 3, 3};
  o.require(std::vector<std::size_t>(dims.begin(), dims.begin() + 9) == head, "deg 0..8 = " + dims_str(dims, 9));
  const auto closed = closed_form({1, 1, 0, 2, 2, 0, 1, 1}, {1, 0, 0, 0, -1}, p.closed_q);
  const int bad = first_difference(dims, closed);
  o.require(bad < 0, "closed form differs in degree " + std::to_string(bad));
  if (o.pass) o.detail << "deg 0..8 = " << dims_str(dims, 9) << "; closed form through " << p.closed_q;
}

void c3(const Params& p, Outcome& o) {
  const auto dims = Amalgam<PrimeField>(pontryagin_diagram(kF2, p.closed_f2)).poincare_series();
  o.require(std::vector<std::size_t>(dims.begin(), dims.begin() + 4) == std::vector<std::size_t>{1, 3, 6, 11},
            "deg 0..3 = " + dims_str(dims, 4));
  const auto closed = closed_form({1, 3, 5, 7, 7, 5, 3, 1}, {1, 0, -1, -1, -1}, p.closed_f2);
  const int bad = first_difference(dims, closed);
  o.require(bad < 0, "closed form differs in degree " + std::to_string(bad));
  if (o.pass) o.detail << "deg 0..3 = " << dims_str(dims, 4) << "; closed form through " << p.closed_f2;
}

template <class F>
void bruhat(const F& field, int n, Outcome& o) {
  const auto r = bruhat_check(Amalgam<F>(pontryagin_diagram(field, n)));
  o.require(r.ok, field.name() + ": " + r.failure);
  o.require(!r.cokernel.empty() && r.cokernel[0] == 1, field.name() + ": cokernel in degree 0 is not 1");
}

void c4(const Params& p, Outcome& o) {
  bruhat(kQ, p.bruhat, o);
  bruhat(kF2, p.bruhat, o);
  if (o.pass) o.detail << "Q and F2 injective in degrees 1.." << p.bruhat << ", cokernel k in degree 0";
}

template <class F>
void filtrations(const F& field, const Params& p, Outcome& o) {
  const Amalgam<F> a(pontryagin_diagram(field, p.pieces));
  std::vector<std::size_t> sums(static_cast<std::size_t>(p.pieces) + 1, 0);
  for (int k = 0; k <= p.pieces; ++k) {
    const auto g = graded_pieces(a, k);
    for (std::size_t d = 0; d < sums.size(); ++d) sums[d] += g[d];
  }
  const int bad = first_difference(sums, a.poincare_series());
  o.require(bad < 0, field.name() + ": graded pieces miss the dimension in degree " + std::to_string(bad));
  for (int j = 1; j <= 2; ++j) {
    std::vector<std::size_t> acc(sums.size(), 0);
    for (int n = 0; n <= p.pieces; ++n) {
      const auto c = second_filtration_pieces(a, j, n);
      for (std::size_t d = 0; d < acc.size(); ++d) acc[d] += c[d];
      if (n <= 3)
        o.require(acc == second_filtration_span(a, j, n), field.name() + ": P_" + std::to_string(n) + " B_" +
                                                             std::to_string(j) + " counts disagree with the span");
    }
    o.require(first_difference(acc, a.poincare_series()) < 0,
              field.name() + ": second filtration pieces do not reconstruct the dimension");
  }
  const Amalgam<F> b(pontryagin_diagram(field, p.boundary_deg));
  for (int n = 1; n <= p.boundary_n; ++n) {
    const auto r = boundary_dims(b, n, p.boundary_deg);
    o.require(r.ok, field.name() + ": boundary identity fails for n = " + std::to_string(n) + " in degree " +
                        std::to_string(r.failure_degree));
  }
}

void c5(const Params& p, Outcome& o) {
  filtrations(kQ, p, o);
  filtrations(kF2, p, o);
  if (o.pass)
    o.detail << "Q, F2 pieces sum to dims through " << p.pieces << "; boundary n <= " << p.boundary_n
             << ", degrees <= " << p.boundary_deg;
}

void c6(const Params& p, Outcome& o) {
  const auto s = normal_form_bijection_check(sl2z_preset(), p.sl2z_len);
  o.require(s.ok, "sl2z: " + s.failure);
  const std::vector<std::uint64_t> head(s.distinct.begin(), s.distinct.begin() + 4);
  o.require(head == std::vector<std::uint64_t>{2, 8, 16, 28}, "sl2z: |P_0..P_3| wrong");
  const auto d = normal_form_bijection_check(dinfty_preset(), p.dinfty_len);
  o.require(d.ok, "dinfty: " + d.failure);
  for (std::size_t n = 0; n < d.distinct.size(); ++n)
    o.require(d.distinct[n] == 2 * n + 1, "dinfty: |P_" + std::to_string(n) + "| = " + std::to_string(d.distinct[n]));
  if (o.pass)
    o.detail << "sl2z through length " << p.sl2z_len << " (" << s.words << " words, |P_0..P_3| = 2 8 16 28); dinfty "
             << "|P_n| = 2n+1 through " << p.dinfty_len;
}

void c7(const Params& p, Outcome& o) {
  const auto cp = classifying_presets();
  const int n = p.integral;
  const auto mv = mv_kernel(cp.delta, cp.j, n);
  const ExpandedRing k(cp.kernel, n);
  for (int d = 0; d <= n; ++d)
    o.require(mv.kernel.at(d) == k.structure(d), "degree " + std::to_string(d) + ": kernel " + mv.kernel.at(d).str() +
                                                     ", presentation " + k.structure(d).str());
  const std::vector<std::string> want{"Z", "Z/2 + Z/2", "Z^3", "Z/2 + Z/2", "Z^2 + (Z/2)^3"};
  for (int d = 2; d <= 6; ++d)
    o.require(mv.kernel.at(d).str() == want[static_cast<std::size_t>(d - 2)],
              "degree " + std::to_string(d) + ": " + mv.kernel.at(d).str());
  o.require(mv.surjective, "phi not surjective in degree " + std::to_string(mv.first_cokernel_degree));
  const auto iso = verify_presentation_iso(*cp.kernel, cp.delta, cp.j, cp.kernel_images, n);
  o.require(iso.ok, iso.message);
  auto loose = std::make_shared<GCRing>("loose");
  for (const auto& g : cp.kernel->generators()) loose->add_generator(g.name, g.degree);
  for (const auto& r : cp.kernel->relations())
    if (cp.kernel->poly_str(r) != "Z^2") loose->add_relation(r);
  const auto weak = verify_presentation_iso(*loose, cp.delta, cp.j, cp.kernel_images, n);
  o.require(!weak.ok || n < 10, "dropping Z^2 went unnoticed");
  if (!o.pass) return;
  o.detail << "kernel = presentation through " << n << ", phi surjective; dropping Z^2 ";
  if (weak.ok)
    o.detail << "is invisible below degree 10";
  else
    o.detail << "fails at degree " << weak.failure_degree;
}

void c8(const Params& p, Outcome& o) {
  const auto cp = classifying_presets();
  const int n = p.integral;
  const ExpandedRing so3(cp.so3, n), sq(cp.so3_sq, n), circle(cp.circle, n), s1(cp.s1_so3, n);
  for (int d = 0; d <= n; ++d) {
    o.require(kunneth_product(so3, so3).at(d) == sq.structure(d),
              "SO3 x SO3 degree " + std::to_string(d) + ": " + sq.structure(d).str());
    o.require(kunneth_product(circle, so3).at(d) == s1.structure(d),
              "S1 x SO3 degree " + std::to_string(d) + ": " + s1.structure(d).str());
  }
  if (o.pass) o.detail << "product presentations agree with the Kunneth formula through " << n;
}

void c9(const Params& p, Outcome& o) {
  const auto q = product_decomposition_check(kQ, p.decomp_q);
  o.require(q.ok, "Q differs in degree " + std::to_string(q.failure_degree));
  const auto f2 = product_decomposition_check(kF2, p.decomp_f2);
  o.require(f2.ok, "F2 differs in degree " + std::to_string(f2.failure_degree));
  const auto f3 = product_decomposition_check(kF3, p.decomp_f3);
  o.require(f3.ok, "F3 differs in degree " + std::to_string(f3.failure_degree));
  if (o.pass)
    o.detail << "Q through " << p.decomp_q << ", F2 through " << p.decomp_f2 << ", F3 through " << p.decomp_f3;
}

template <class F>
void algebra_associativity(const F& field, int n, int trials, std::mt19937_64& rng, Outcome& o) {
  const Amalgam<F> a(pontryagin_diagram(field, n));
  auto pick = [&](int top) {
    std::uniform_int_distribution<int> dd(0, top);
    for (;;) {
      const int d = dd(rng);
      if (a.dim(d) == 0) continue;
      std::uniform_int_distribution<std::size_t> wi(0, a.dim(d) - 1);
      return a.basis(d)[wi(rng)];
    }
  };
  for (int t = 0; t < trials && o.pass; ++t) {
    const auto x = pick(n);
    const auto y = pick(n - a.degree(x));
    const auto z = pick(n - a.degree(x) - a.degree(y));
    const auto ex = a.word(x), ey = a.word(y), ez = a.word(z);
    o.require(a.multiply(a.multiply(ex, ey), ez) == a.multiply(ex, a.multiply(ey, ez)),
              field.name() + ": (xy)z != x(yz) for x = " + a.word_str(x) + ", y = " + a.word_str(y) +
                  ", z = " + a.word_str(z));
  }
}

GroupWord random_word(const GroupAmalgam& d, std::mt19937_64& rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<int> fac(0, 2);
  GroupWord w(len(rng));
  for (auto& l : w) {
    l.factor = fac(rng);
    std::uniform_int_distribution<FiniteGroup::Elem> el(0,
                                                        static_cast<FiniteGroup::Elem>(d.group(l.factor).order() - 1));
    l.elem = el(rng);
  }
  return w;
}

template <class F>
void reversed_order(const F& field, int n, Outcome& o) {
  const auto d = pontryagin_diagram(field, n);
  const Amalgam<F> a(d), b(d.reversed());
  o.require(a.poincare_series() == b.poincare_series(), field.name() + ": reversed order changes dims");
  for (int k = 0; k <= n; ++k)
    o.require(graded_pieces(a, k) == graded_pieces(b, k), field.name() + ": reversed order changes graded pieces");
  o.require(bruhat_check(a).rank == bruhat_check(b).rank, field.name() + ": reversed order changes bruhat ranks");
}

void c10(const Params& p, std::uint64_t seed, Outcome& o) {
  std::mt19937_64 rng(seed);
  algebra_associativity(kQ, 14, p.alg_triples / 2, rng, o);
  algebra_associativity(kF2, 8, p.alg_triples - p.alg_triples / 2, rng, o);

  const auto sl = sl2z_preset();
  for (int t = 0; t < p.group_triples && o.pass; ++t) {
    const auto a = sl.reduce(random_word(sl, rng, 8));
    const auto b = sl.reduce(random_word(sl, rng, 8));
    const auto c = sl.reduce(random_word(sl, rng, 8));
    o.require(sl.multiply(sl.multiply(a, b), c) == sl.multiply(a, sl.multiply(b, c)), "sl2z: (ab)c != a(bc)");
  }
  const auto di = dinfty_preset();
  for (int t = 0; t < p.words && o.pass; ++t) {
    const auto& g = t % 2 == 0 ? sl : di;
    const auto w = random_word(g, rng, 12);
    const auto nf = g.reduce(w);
    o.require(g.reduce(g.spell(nf)) == nf, g.name() + ": reduction is not idempotent");
    o.require(g.reduce_bracketed(w, rng) == nf, g.name() + ": reduction depends on the bracketing");
  }

  reversed_order(kQ, 12, o);
  reversed_order(kF2, 9, o);

  const std::string doc =
      "maxdeg 8\n"
      "task poincare pontryagin-q\n"
      "task bruhat pontryagin-f2\n"
      "task mv-kernel classifying-z\n"
      "task group-check sl2z 4\n";
  const auto r1 = cli::run_document(doc, {});
  const auto r2 = cli::run_document(doc, {});
  o.require(r1.exit_code == 0, "CLI run failed: " + r1.err + r1.out);
  o.require(r1.out == r2.out && r1.err == r2.err && r1.exit_code == r2.exit_code, "CLI output is not deterministic");
  if (o.pass)
    o.detail << p.alg_triples << " algebra triples, " << p.group_triples << " group triples, " << p.words
             << " words, reversed generators, CLI bytes (seed " << seed << ")";
}

}  // namespace

std::vector<Result> run_all(Level level, std::uint64_t seed, const std::function<void(const Result&)>& progress) {
  const Params p = params(level);
  struct Entry {
    int id;
    const char* title;
    double budget;
    std::function<void(Outcome&)> body;
  };
  const std::vector<Entry> entries{
      {1, "oracle equivalence", 120, [&](Outcome& o) { c1(p, o); }},
      {2, "rational dimensions", 10, [&](Outcome& o) { c2(p, o); }},
      {3, "characteristic 2 dimensions", 60, [&](Outcome& o) { c3(p, o); }},
      {4, "bruhat identity", 0, [&](Outcome& o) { c4(p, o); }},
      {5, "associated graded and boundary", 0, [&](Outcome& o) { c5(p, o); }},
      {6, "group normal forms", 60, [&](Outcome& o) { c6(p, o); }},
      {7, "integral Mayer-Vietoris kernel", 0, [&](Outcome& o) { c7(p, o); }},
      {8, "Kunneth consistency", 0, [&](Outcome& o) { c8(p, o); }},
      {9, "product decomposition", 0, [&](Outcome& o) { c9(p, o); }},
      {10, "property suites", 0, [&](Outcome& o) { c10(p, seed, o); }},
  };
  std::vector<Result> out;
  for (const auto& e : entries) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      e.body(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail.str(std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    Result r{e.id, e.title, o.pass, secs, e.budget, o.detail.str()};
    if (r.pass && r.budget > 0 && secs > r.budget) {
      r.pass = false;
      r.detail = "over budget; " + r.detail;
    }
    if (progress) progress(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format(const Result& r) {
  char head[128];
  if (r.budget > 0)
    std::snprintf(head, sizeof head, "%s %2d %s (%.2f s, budget %.0f s)", r.pass ? "PASS" : "FAIL", r.id,
                  r.title.c_str(), r.seconds, r.budget);
  else
    std::snprintf(head, sizeof head, "%s %2d %s (%.2f s)", r.pass ? "PASS" : "FAIL", r.id, r.title.c_str(),
                  r.seconds);
  return std::string(head) + ": " + r.detail;
}

}  // namespace amalg::acceptance
