#include "amalg/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <memory>
#include <regex>
#include <sstream>
#include <variant>

#include "amalg/amalgam.hpp"
#include "amalg/error.hpp"
#include "amalg/group.hpp"
#include "amalg/integral.hpp"
#include "amalg/presets.hpp"

namespace amalg::cli {

namespace {

[[noreturn]] void fail_at(int line, int column, const std::string& what) {
  throw InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

struct Token {
  std::string text;
  int column;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
  }
  return out;
}

bool is_identifier(const std::string& s) {
  static const std::regex re("[A-Za-z_][A-Za-z0-9_]*");
  return std::regex_match(s, re);
}

int parse_int(const Token& t, int line) {
  int v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) fail_at(line, t.column, "expected an integer, got '" + t.text + "'");
  return v;
}

/// Text after the first `skip` tokens, trimmed, with its column.
TextLine rest_of(const std::string& line, const std::vector<Token>& toks, std::size_t skip, int lineno) {
  const auto start = static_cast<std::size_t>(toks[skip].column - 1);
  std::string s = line.substr(start);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return {s, lineno, toks[skip].column};
}

const std::vector<std::string> kDiagramTasks{"basis", "poincare", "bruhat", "graded-pieces", "brute-force",
                                             "decomposition-check"};
const std::vector<std::string> kGroupTasks{"group-growth", "group-check"};
const std::vector<std::string> kIntegralTasks{"mv-kernel", "verify-presentation"};

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

const std::vector<std::string>& task_kinds() {
  static const std::vector<std::string> kinds{"basis",       "poincare",     "bruhat",      "graded-pieces",
                                              "brute-force", "group-growth", "group-check", "mv-kernel",
                                              "verify-presentation", "decomposition-check"};
  return kinds;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"pontryagin-q", "pontryagin-f2", "pontryagin-f<p>", "classifying-z",
                                              "sl2z", "dinfty"};
  return names;
}

Document parse_document(const std::string& text) {
  static const std::regex map_re(R"(^\s*(z?map)\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$)");
  static const std::regex diagram_re(
      R"(^\s*diagram\s+(\S+)\s*=\s*amalgam\s*\(\s*(\S+?)\s*,\s*(\S+?)\s*,\s*(\S+?)\s*,\s*(\S+?)\s*,\s*(\S+?)\s*\)\s*$)");
  static const std::regex send_re(R"(^\s*send\s+(\S+)\s*=\s*(.*?)\s*$)");

  Document doc;
  BlockDef* block = nullptr;
  MapDef* map = nullptr;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto toks = tokenize(line);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    auto need_name = [&](std::size_t i, const std::string& what) {
      if (toks.size() <= i) fail_at(lineno, static_cast<int>(line.size()) + 1, "missing " + what);
      if (!is_identifier(toks[i].text)) fail_at(lineno, toks[i].column, "bad " + what + " '" + toks[i].text + "'");
      return toks[i].text;
    };

    if (kw == "gen") {
      if (!block) fail_at(lineno, toks[0].column, "'gen' outside an algebra or zring block");
      if (toks.size() != 3) fail_at(lineno, toks[0].column, "expected 'gen <name> <degree>'");
      block->gens.push_back({need_name(1, "generator name"), parse_int(toks[2], lineno), lineno});
      continue;
    }
    if (kw == "rel") {
      if (!block) fail_at(lineno, toks[0].column, "'rel' outside an algebra or zring block");
      if (toks.size() < 2) fail_at(lineno, static_cast<int>(line.size()) + 1, "missing relation");
      block->rels.push_back(rest_of(line, toks, 1, lineno));
      continue;
    }
    if (kw == "send") {
      if (!map) fail_at(lineno, toks[0].column, "'send' outside a map or zmap block");
      std::smatch m;
      if (!std::regex_match(line, m, send_re) || m[2].length() == 0)
        fail_at(lineno, toks[0].column, "expected 'send <gen> = <poly>'");
      if (!is_identifier(m[1].str()))
        fail_at(lineno, static_cast<int>(m.position(1)) + 1, "bad generator name '" + m[1].str() + "'");
      map->sends.push_back({m[1].str(), {m[2].str(), lineno, static_cast<int>(m.position(2)) + 1}});
      continue;
    }
    block = nullptr;
    map = nullptr;

    if (kw == "field") {
      if (toks.size() != 2) fail_at(lineno, toks[0].column, "expected 'field Q | F2 | F<p>'");
      if (doc.field) fail_at(lineno, toks[0].column, "field declared twice");
      try {
        doc.field = CoefficientField::parse(toks[1].text);
      } catch (const InputError& e) {
        fail_at(lineno, toks[1].column, e.what());
      }
    } else if (kw == "maxdeg") {
      if (toks.size() != 2) fail_at(lineno, toks[0].column, "expected 'maxdeg <N>'");
      if (doc.max_degree) fail_at(lineno, toks[0].column, "maxdeg declared twice");
      doc.max_degree = parse_int(toks[1], lineno);
    } else if (kw == "algebra" || kw == "zring") {
      if (toks.size() != 2) fail_at(lineno, toks[0].column, "expected '" + kw + " <name>'");
      auto& list = kw == "algebra" ? doc.algebras : doc.zrings;
      list.push_back({need_name(1, kw + " name"), lineno, {}, {}});
      block = &list.back();
    } else if (kw == "map" || kw == "zmap") {
      std::smatch m;
      if (!std::regex_match(line, m, map_re)) fail_at(lineno, toks[0].column, "expected '" + kw + " <name> : <src> -> <tgt>'");
      for (int g = 2; g <= 4; ++g)
        if (!is_identifier(m[static_cast<std::size_t>(g)].str()))
          fail_at(lineno, static_cast<int>(m.position(static_cast<std::size_t>(g))) + 1,
                  "bad name '" + m[static_cast<std::size_t>(g)].str() + "'");
      auto& list = kw == "map" ? doc.maps : doc.zmaps;
      list.push_back({m[2].str(), m[3].str(), m[4].str(), lineno, {}});
      map = &list.back();
    } else if (kw == "diagram") {
      std::smatch m;
      if (!std::regex_match(line, m, diagram_re))
        fail_at(lineno, toks[0].column, "expected 'diagram <name> = amalgam(<base>, <left>, <right>, <map1>, <map2>)'");
      for (std::size_t g = 1; g <= 6; ++g)
        if (!is_identifier(m[g].str()))
          fail_at(lineno, static_cast<int>(m.position(g)) + 1, "bad name '" + m[g].str() + "'");
      doc.diagrams.push_back({m[1].str(), m[2].str(), m[3].str(), m[4].str(), m[5].str(), m[6].str(), lineno});
    } else if (kw == "task") {
      if (toks.size() < 3) fail_at(lineno, toks[0].column, "expected 'task <kind> <object> [args]'");
      if (!contains(task_kinds(), toks[1].text)) fail_at(lineno, toks[1].column, "unknown task '" + toks[1].text + "'");
      TaskDef t{toks[1].text, toks[2].text, {}, lineno};
      for (std::size_t i = 3; i < toks.size(); ++i) t.args.push_back(toks[i].text);
      doc.tasks.push_back(std::move(t));
    } else {
      fail_at(lineno, toks[0].column, "unknown keyword '" + kw + "'");
    }
  }
  return doc;
}

namespace {

template <class T>
const T* find_named(const std::vector<T>& v, const std::string& name) {
  for (const auto& x : v)
    if (x.name == name) return &x;
  return nullptr;
}

template <class T>
void check_unique(const std::vector<T>& v, const std::string& what) {
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = 0; k < i; ++k)
      if (v[i].name == v[k].name) fail_at(v[i].line, 1, "duplicate " + what + " '" + v[i].name + "'");
}

/// Runs fn, prefixing InputErrors with the location of a document line.
template <class Fn>
auto located(int line, int column, Fn&& fn) {
  try {
    return fn();
  } catch (const CheckFailure&) {
    throw;
  } catch (const Error& e) {
    fail_at(line, column, e.what());
  }
}

std::map<std::string, std::string> send_map(const MapDef& m) {
  std::map<std::string, std::string> out;
  for (const auto& s : m.sends)
    if (!out.emplace(s.gen, s.poly.text).second)
      fail_at(s.poly.line, 1, "map " + m.name + " sends '" + s.gen + "' twice");
  return out;
}

template <class F>
struct FieldScope {
  std::map<std::string, PresentedAlgebra<F>> algebras;
  std::map<std::string, AmalgamDiagram<F>> diagrams;
};

template <class F>
FieldScope<F> resolve_field_objects(const Document& doc, const F& field, int n) {
  FieldScope<F> s;
  for (const auto& b : doc.algebras) {
    PresentedAlgebra<F> a(b.name, field);
    for (const auto& g : b.gens) located(g.line, 1, [&] { return a.add_generator(g.name, g.degree); });
    for (const auto& r : b.rels)
      located(r.line, r.column, [&] {
        a.add_relation(r.text);
        return 0;
      });
    s.algebras.emplace(b.name, std::move(a));
  }
  for (const auto& m : doc.maps) {
    if (!s.algebras.count(m.source)) fail_at(m.line, 1, "map " + m.name + ": unknown algebra '" + m.source + "'");
    if (!s.algebras.count(m.target)) fail_at(m.line, 1, "map " + m.name + ": unknown algebra '" + m.target + "'");
    send_map(m);
  }
  for (const auto& d : doc.diagrams) {
    auto alg = [&](const std::string& name) -> const PresentedAlgebra<F>& {
      auto it = s.algebras.find(name);
      if (it == s.algebras.end()) fail_at(d.line, 1, "diagram " + d.name + ": unknown algebra '" + name + "'");
      return it->second;
    };
    auto mp = [&](const std::string& name, const std::string& right) -> const MapDef& {
      const MapDef* m = find_named(doc.maps, name);
      if (!m) fail_at(d.line, 1, "diagram " + d.name + ": unknown map '" + name + "'");
      if (m->source != d.base || m->target != right)
        fail_at(d.line, 1, "diagram " + d.name + ": map " + name + " goes " + m->source + " -> " + m->target +
                               ", expected " + d.base + " -> " + right);
      return *m;
    };
    const auto& m1 = mp(d.map1, d.left);
    const auto& m2 = mp(d.map2, d.right);
    auto diag = located(d.line, 1, [&] {
      return AmalgamDiagram<F>::parse(alg(d.base), alg(d.left), alg(d.right), send_map(m1), send_map(m2), n, m1.name,
                                      m2.name);
    });
    s.diagrams.emplace(d.name, std::move(diag));
  }
  return s;
}

struct ZScope {
  std::map<std::string, std::shared_ptr<const GCRing>> rings;
  std::map<std::string, ZRingMap> maps;
};

ZScope resolve_z_objects(const Document& doc) {
  ZScope s;
  for (const auto& b : doc.zrings) {
    auto r = std::make_shared<GCRing>(b.name);
    for (const auto& g : b.gens) located(g.line, 1, [&] { return r->add_generator(g.name, g.degree); });
    for (const auto& rel : b.rels)
      located(rel.line, rel.column, [&] {
        r->add_relation(rel.text);
        return 0;
      });
    s.rings.emplace(b.name, std::move(r));
  }
  for (const auto& m : doc.zmaps) {
    auto ring = [&](const std::string& name) {
      auto it = s.rings.find(name);
      if (it == s.rings.end()) fail_at(m.line, 1, "zmap " + m.name + ": unknown zring '" + name + "'");
      return it->second;
    };
    auto src = ring(m.source), tgt = ring(m.target);
    s.maps.emplace(m.name, located(m.line, 1, [&] { return ZRingMap::parse(m.name, src, tgt, send_map(m)); }));
  }
  return s;
}

struct Report {
  std::ostringstream out;
  int exit_code = 0;
  Format format = Format::table;

  void record(int d, std::size_t rank, const std::string& torsion = "") {
    out << "degree " << d << " rank " << rank << " torsion";
    if (!torsion.empty()) out << ' ' << torsion;
    out << '\n';
  }
  void pass(const std::string& what) { out << "PASS " << what << '\n'; }
  void fail(int degree, const std::string& what) {
    out << "FAIL";
    if (degree >= 0) out << " degree " << degree;
    out << ": " << what << '\n';
    exit_code = std::max(exit_code, 1);
  }
};

int int_arg(const TaskDef& t, std::size_t i, int fallback) {
  if (t.args.size() <= i) return fallback;
  return parse_int({t.args[i], 1}, t.line);
}

void no_more_args(const TaskDef& t, std::size_t n) {
  if (t.args.size() > n) fail_at(t.line, 1, "task " + t.kind + ": too many arguments");
}

std::string join(const std::vector<std::size_t>& v, std::size_t from, std::size_t to, const std::string& sep) {
  std::string s;
  for (std::size_t i = from; i < to && i < v.size(); ++i) s += (i == from ? "" : sep) + std::to_string(v[i]);
  return s;
}

template <class F>
void run_diagram_task(const TaskDef& t, const AmalgamDiagram<F>& diagram, Report& rep) {
  const int n = diagram.max_degree();
  auto& out = rep.out;
  const bool table = rep.format == Format::table;
  if (t.kind == "brute-force") {
    no_more_args(t, 0);
    const auto brute = located(t.line, 1, [&] { return brute_force_pushout(diagram, n); });
    const auto dims = Amalgam<F>(diagram).poincare_series();
    int bad = -1;
    for (int d = 0; d <= n; ++d) {
      const auto ud = static_cast<std::size_t>(d);
      if (table)
        out << "deg " << d << ": amalgam " << dims[ud] << ", pushout " << brute[ud] << '\n';
      else
        rep.record(d, dims[ud]);
      if (dims[ud] != brute[ud] && bad < 0) bad = d;
    }
    if (bad >= 0)
      rep.fail(bad, "amalgam " + std::to_string(dims[static_cast<std::size_t>(bad)]) + " != pushout " +
                        std::to_string(brute[static_cast<std::size_t>(bad)]));
    else
      rep.pass("degrees 0.." + std::to_string(n));
    return;
  }

  const Amalgam<F> p(diagram);
  if (t.kind == "poincare") {
    no_more_args(t, 0);
    for (int d = 0; d <= n; ++d) {
      if (table)
        out << "deg " << d << ": " << p.dim(d) << '\n';
      else
        rep.record(d, p.dim(d));
    }
  } else if (t.kind == "basis") {
    no_more_args(t, 1);
    const int only = int_arg(t, 0, -1);
    if (only > n) fail_at(t.line, 1, "degree " + std::to_string(only) + " above maxdeg " + std::to_string(n));
    for (int d = only < 0 ? 0 : only; d <= (only < 0 ? n : only); ++d) {
      if (!table) {
        rep.record(d, p.dim(d));
        continue;
      }
      out << "deg " << d << ":";
      for (std::size_t k = 0; k < p.dim(d); ++k) out << (k ? ", " : " ") << p.word_str(p.basis(d)[k]);
      out << '\n';
    }
  } else if (t.kind == "bruhat") {
    no_more_args(t, 0);
    const auto r = bruhat_check(p);
    if (!table)
      for (int d = 0; d <= n; ++d) rep.record(d, r.rank[static_cast<std::size_t>(d)]);
    if (r.ok)
      rep.pass("degrees 1.." + std::to_string(n));
    else
      rep.fail(r.failure_degree, r.failure);
  } else if (t.kind == "graded-pieces") {
    no_more_args(t, 1);
    const int top = int_arg(t, 0, 4);
    std::vector<std::vector<std::size_t>> pieces;
    for (int k = 0; k <= n; ++k) pieces.push_back(graded_pieces(p, k));
    int bad = -1;
    for (int d = 0; d <= n; ++d) {
      const auto ud = static_cast<std::size_t>(d);
      std::size_t sum = 0;
      std::vector<std::size_t> row;
      for (const auto& pc : pieces) {
        row.push_back(pc[ud]);
        sum += pc[ud];
      }
      while (row.size() > 1 && row.back() == 0) row.pop_back();
      if (table)
        out << "deg " << d << ": " << join(row, 0, row.size(), " + ") << " = " << sum << '\n';
      else
        rep.record(d, sum);
      if (sum != p.dim(d) && bad < 0) bad = d;
    }
    if (bad >= 0) rep.fail(bad, "graded pieces do not sum to the dimension");
    for (int k = 1; k <= top && bad < 0; ++k) {
      const auto b = boundary_dims(p, k, n);
      if (!b.ok) {
        const auto ud = static_cast<std::size_t>(b.failure_degree);
        rep.fail(b.failure_degree, "n = " + std::to_string(k) + ": dim Q - dim W = " +
                                       std::to_string(b.q_dims[ud]) + " - " + std::to_string(b.w_dims[ud]) +
                                       " != " + std::to_string(b.pieces[ud]));
        bad = b.failure_degree;
      }
    }
    if (bad < 0) rep.pass("degrees 0.." + std::to_string(n) + ", boundary n <= " + std::to_string(top));
  } else if (t.kind == "decomposition-check") {
    no_more_args(t, 0);
    const auto r = product_decomposition_check(diagram.field(), n);
    for (int d = 0; d <= n; ++d) {
      const auto ud = static_cast<std::size_t>(d);
      if (table)
        out << "deg " << d << ": amalgam " << r.amalgam[ud] << ", product " << r.product[ud] << '\n';
      else
        rep.record(d, r.amalgam[ud]);
    }
    if (r.ok)
      rep.pass("degrees 0.." + std::to_string(n));
    else
      rep.fail(r.failure_degree, "amalgam and product series differ");
  }
}

void run_group_task(const TaskDef& t, const GroupAmalgam& g, int n, Report& rep) {
  no_more_args(t, 1);
  if (t.kind == "group-growth") {
    const int len = int_arg(t, 0, n);
    if (len < 0 || len > 64) fail_at(t.line, 1, "length must lie in 0..64");
    const auto sizes = filtration_sizes(g, len);
    for (int k = 0; k <= len; ++k) {
      if (rep.format == Format::table)
        rep.out << "length " << k << ": " << sizes[static_cast<std::size_t>(k)] << '\n';
      else
        rep.record(k, sizes[static_cast<std::size_t>(k)]);
    }
    return;
  }
  const int len = int_arg(t, 0, 6);
  if (len < 0) fail_at(t.line, 1, "length must be nonnegative");
  const auto r = located(t.line, 1, [&] { return normal_form_bijection_check(g, len); });
  if (rep.format == Format::records)
    for (int k = 0; k <= len; ++k) rep.record(k, r.distinct[static_cast<std::size_t>(k)]);
  std::vector<std::size_t> shown(r.distinct.begin(), r.distinct.end());
  const auto m = static_cast<std::size_t>(len / 2);
  if (r.ok) {
    rep.out << "BIJECTION PASS; |P_0..P_" << m << "| = " << join(shown, 0, m + 1, " ") << '\n';
  } else {
    rep.out << "BIJECTION FAIL: " << r.failure << '\n';
    rep.exit_code = std::max(rep.exit_code, 1);
  }
}

void print_groups(const GradedAbelianGroup& g, Report& rep) {
  for (int d = 0; d <= g.max_degree(); ++d) {
    if (rep.format == Format::table)
      rep.out << "deg " << d << ": " << g.at(d).str() << '\n';
    else
      rep.record(d, g.at(d).free_rank(), g.at(d).torsion_csv());
  }
}

void run_integral_task(const TaskDef& t, const ZScope& z, int n, Report& rep) {
  const bool preset = t.object == "classifying-z";
  std::optional<ClassifyingPresets> cp;
  if (preset) cp = classifying_presets();
  auto zmap = [&](const std::string& name) -> const ZRingMap& {
    auto it = z.maps.find(name);
    if (it == z.maps.end()) fail_at(t.line, 1, "unknown zmap '" + name + "'");
    return it->second;
  };
  if (t.kind == "mv-kernel") {
    if (preset) no_more_args(t, 0);
    if (!preset && t.args.size() != 1) fail_at(t.line, 1, "expected 'task mv-kernel <zmap> <zmap>'");
    const ZRingMap& f = preset ? cp->delta : zmap(t.object);
    const ZRingMap& g = preset ? cp->j : zmap(t.args[0]);
    const auto mv = located(t.line, 1, [&] { return mv_kernel(f, g, n); });
    print_groups(mv.kernel, rep);
    if (!mv.surjective)
      rep.fail(mv.first_cokernel_degree,
               "phi is not surjective, cokernel " + mv.cokernel.at(mv.first_cokernel_degree).str());
    return;
  }
  // verify-presentation <zring> <f> <g> <to-left> <to-right>
  if (preset) {
    no_more_args(t, 0);
    const auto r = verify_presentation_iso(*cp->kernel, cp->delta, cp->j, cp->kernel_images, n);
    if (r.ok)
      rep.pass("degrees 0.." + std::to_string(n));
    else
      rep.fail(r.failure_degree, r.message);
    return;
  }
  if (t.args.size() != 4) fail_at(t.line, 1, "expected 'task verify-presentation <zring> <zmap> <zmap> <zmap> <zmap>'");
  auto it = z.rings.find(t.object);
  if (it == z.rings.end()) fail_at(t.line, 1, "unknown zring '" + t.object + "'");
  const auto& f = zmap(t.args[0]);
  const auto& g = zmap(t.args[1]);
  const auto& ra = zmap(t.args[2]);
  const auto& rb = zmap(t.args[3]);
  if (ra.source != it->second || rb.source != it->second || ra.target != f.source || rb.target != g.source)
    fail_at(t.line, 1, "zmaps " + ra.name + ", " + rb.name + " must go from " + t.object + " to the sources of " +
                           f.name + " and " + g.name);
  std::vector<std::pair<ZPoly, ZPoly>> images;
  for (std::size_t i = 0; i < ra.images.size(); ++i) images.emplace_back(ra.images[i], rb.images[i]);
  const auto r = located(t.line, 1, [&] { return verify_presentation_iso(*it->second, f, g, images, n); });
  if (r.ok)
    rep.pass("degrees 0.." + std::to_string(n));
  else
    rep.fail(r.failure_degree, r.message);
}

std::optional<CoefficientField> pontryagin_field(const std::string& name) {
  const std::string prefix = "pontryagin-";
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  const std::string f = name.substr(prefix.size());
  if (f == "q") return CoefficientField::rationals();
  if (f.size() >= 2 && f[0] == 'f') {
    std::string up = f;
    up[0] = 'F';
    return CoefficientField::parse(up);
  }
  throw InputError("unknown preset '" + name + "'");
}

using AnyScope = std::variant<FieldScope<RationalField>, FieldScope<PrimeField>>;

void run_task(const TaskDef& t, const Document& doc, const AnyScope& scope, const ZScope& z, int n, Report& rep) {
  if (contains(kDiagramTasks, t.kind)) {
    std::optional<CoefficientField> pf;
    try {
      pf = pontryagin_field(t.object);
    } catch (const InputError& e) {
      fail_at(t.line, 1, e.what());
    }
    if (pf) {
      if (doc.field && *doc.field != *pf)
        fail_at(t.line, 1, "field " + doc.field->name() + " conflicts with preset " + t.object);
      visit_field(*pf, [&](const auto& field) {
        run_diagram_task(t, located(t.line, 1, [&] { return pontryagin_diagram(field, n); }), rep);
      });
      return;
    }
    if (t.kind == "decomposition-check") fail_at(t.line, 1, "decomposition-check needs a pontryagin preset");
    std::visit(
        [&](const auto& s) {
          auto it = s.diagrams.find(t.object);
          if (it == s.diagrams.end()) fail_at(t.line, 1, "unknown diagram '" + t.object + "'");
          run_diagram_task(t, it->second, rep);
        },
        scope);
    return;
  }
  if (contains(kGroupTasks, t.kind)) {
    if (t.object == "sl2z")
      run_group_task(t, sl2z_preset(), n, rep);
    else if (t.object == "dinfty")
      run_group_task(t, dinfty_preset(), n, rep);
    else
      fail_at(t.line, 1, "unknown group preset '" + t.object + "' (expected sl2z or dinfty)");
    return;
  }
  run_integral_task(t, z, n, rep);
}

}  // namespace

RunResult run_document(const std::string& text, const RunOptions& options) {
  RunResult result;
  Report rep;
  rep.format = options.format;
  try {
    const Document doc = parse_document(text);
    check_unique(doc.algebras, "algebra");
    check_unique(doc.zrings, "zring");
    check_unique(doc.maps, "map");
    check_unique(doc.zmaps, "zmap");
    check_unique(doc.diagrams, "diagram");
    const int n = options.max_degree.value_or(doc.max_degree.value_or(kDefaultMaxDegree));
    if (n < 0 || n > kMaxDegreeGuard)
      throw InputError("maximal degree " + std::to_string(n) + " outside 0.." + std::to_string(kMaxDegreeGuard));
    if (doc.tasks.empty()) throw InputError("no task given");

    const auto field = doc.field.value_or(CoefficientField::rationals());
    const AnyScope scope = visit_field(field, [&](const auto& f) -> AnyScope { return resolve_field_objects(doc, f, n); });
    const ZScope z = resolve_z_objects(doc);
    for (const auto& t : doc.tasks) {
      try {
        run_task(t, doc, scope, z, n, rep);
      } catch (const CheckFailure& e) {
        rep.fail(e.degree(), e.what());
      }
    }
    result.exit_code = rep.exit_code;
  } catch (const CheckFailure& e) {
    rep.fail(e.degree(), e.what());
    result.exit_code = 1;
  } catch (const Error& e) {
    result.err = std::string("error: ") + e.what() + '\n';
    result.exit_code = 2;
  }
  result.out = rep.out.str();
  return result;
}

}  // namespace amalg::cli
