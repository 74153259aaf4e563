#include "amalg/ncpoly.hpp"

#include <cctype>

namespace amalg {

GeneratorTable::GeneratorTable(const std::vector<GeneratorSym>& gens) {
  for (const auto& g : gens) add(g.name, g.degree);
}

std::uint32_t GeneratorTable::add(const std::string& name, int degree) {
  if (degree < 1) throw InputError("generators must have positive degree ('" + name + "' has degree " +
                                   std::to_string(degree) + ")");
  if (by_name_.count(name)) throw InputError("duplicate generator '" + name + "'");
  auto idx = static_cast<std::uint32_t>(gens_.size());
  gens_.push_back({name, degree});
  by_name_.emplace(name, idx);
  return idx;
}

std::optional<std::uint32_t> GeneratorTable::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t GeneratorTable::index(const std::string& name) const {
  auto g = find(name);
  if (!g) throw InputError("unknown generator '" + name + "'");
  return *g;
}

int GeneratorTable::degree(const Word& w) const {
  int d = 0;
  for (auto g : w) d += gens_.at(g).degree;
  return d;
}

bool GeneratorTable::deglex_less(const Word& a, const Word& b) const {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return a < b;
}

std::string GeneratorTable::word_str(const Word& w) const {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) ++j;
    if (!out.empty()) out += "*";
    out += gens_.at(w[i]).name;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

namespace {

class TermParser {
 public:
  explicit TermParser(const std::string& text) : s_(text) {}

  std::vector<ParsedTerm> parse() {
    std::vector<ParsedTerm> out;
    skip_ws();
    if (pos_ == s_.size()) fail("empty polynomial");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      ParsedTerm t = term();
      t.numerator *= sign;
      out.push_back(std::move(t));
      skip_ws();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(what + " at column " + std::to_string(pos_ + 1) + " of '" + s_ + "'");
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  }

  mpz_class integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  std::pair<std::string, unsigned> factor() {
    if (!ident_start(peek())) fail("expected generator name");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    skip_ws();
    unsigned exp = 1;
    if (peek() == '^') {
      ++pos_;
      skip_ws();
      mpz_class e = integer();
      if (e < 1 || e > 64) fail("exponent out of range");
      exp = static_cast<unsigned>(e.get_ui());
      skip_ws();
    }
    return {std::move(name), exp};
  }

  ParsedTerm term() {
    ParsedTerm t;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      have_coef = true;
      t.numerator = integer();
      skip_ws();
      if (peek() == '/') {
        ++pos_;
        skip_ws();
        t.denominator = integer();
        if (t.denominator == 0) fail("zero denominator");
        skip_ws();
      }
      if (peek() == '*') {
        ++pos_;
        skip_ws();
      } else if (!ident_start(peek())) {
        return t;  // constant term
      }
    }
    if (!ident_start(peek())) fail(have_coef ? "expected generator after '*'" : "expected term");
    t.factors.push_back(factor());
    while (peek() == '*') {
      ++pos_;
      skip_ws();
      t.factors.push_back(factor());
    }
    return t;
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<ParsedTerm> parse_polynomial_terms(const std::string& text) { return TermParser(text).parse(); }

}  // namespace amalg
