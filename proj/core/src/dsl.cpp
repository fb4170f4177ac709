#include "zdring/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>

#include "zdring/error.hpp"

namespace zdring {

int IntPoly::total_degree() const {
  int d = -1;
  for (const auto& [exps, c] : terms) {
    int s = 0;
    for (int e : exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

bool Product::operator==(const Product&) const = default;

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw SemanticError("integer coefficient overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw SemanticError("integer coefficient overflow");
  return r;
}

IntPoly poly_add(const IntPoly& a, const IntPoly& b, std::int64_t sign = 1) {
  IntPoly r = a;
  for (const auto& [e, c] : b.terms) {
    auto v = checked_add(r.terms[e], checked_mul(sign, c));
    if (v == 0) r.terms.erase(e); else r.terms[e] = v;
  }
  return r;
}

IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  IntPoly r;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int> e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto v = checked_add(r.terms[e], checked_mul(ca, cb));
      if (v == 0) r.terms.erase(e); else r.terms[e] = v;
    }
  }
  return r;
}

IntPoly poly_const(std::int64_t c, std::size_t nvars) {
  IntPoly r;
  if (c != 0) r.terms[std::vector<int>(nvars, 0)] = c;
  return r;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  RingSpec parse_spec() {
    RingSpec r = expr();
    skip_ws();
    if (pos_ != s_.size()) fail({"'x'", "end of input"});
    return r;
  }

  IntPoly parse_poly_only(const std::vector<std::string>& vars) {
    vars_ = &vars;
    IntPoly p = sum();
    skip_ws();
    if (pos_ != s_.size()) fail({"'+'", "'-'", "'*'", "end of input"});
    return p;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  const std::vector<std::string>* vars_ = nullptr;

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::ostringstream msg;
    msg << "syntax error at position " << pos_ << ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? " or " : "") << expected[i];
    if (pos_ < s_.size()) msg << ", found '" << s_[pos_] << "'";
    else msg << ", found end of input";
    throw ParseError(msg.str(), pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) { ++pos_; return true; }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  bool accept_word(std::string_view w) {
    skip_ws();
    if (s_.substr(pos_, w.size()) == w) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  std::int64_t integer() {
    skip_ws();
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = checked_add(checked_mul(v, 10), s_[pos_] - '0');
      ++pos_;
    }
    if (pos_ == start) fail({"integer"});
    return v;
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < s_.size() && is_ident_start(s_[pos_])) {
      ++pos_;
      while (pos_ < s_.size() && is_ident_char(s_[pos_])) ++pos_;
    }
    if (pos_ == start) fail({"identifier"});
    return std::string(s_.substr(start, pos_ - start));
  }

  // The product separator is a lone 'x' token.
  bool accept_times() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == 'x') {
      ++pos_;
      return true;
    }
    return false;
  }

  RingSpec expr() {
    std::vector<RingSpec> factors;
    factors.push_back(factor());
    while (accept_times()) factors.push_back(factor());
    if (factors.size() == 1) return std::move(factors.front());
    return RingSpec{Product{std::move(factors)}};
  }

  RingSpec factor() {
    RingSpec base = primary();
    if (!peek('[')) return base;
    std::size_t at = pos_;
    expect('[');
    std::vector<std::string> vars;
    do {
      std::size_t vpos = pos_;
      std::string v = ident();
      if (v.find('x') != std::string::npos || v.find('X') != std::string::npos)
        throw SemanticError("variable '" + v + "' at position " + std::to_string(vpos) +
                            " contains reserved letter 'x'/'X'");
      if (std::find(vars.begin(), vars.end(), v) != vars.end())
        throw SemanticError("duplicate variable '" + v + "'");
      vars.push_back(std::move(v));
    } while (accept(','));
    expect(']');
    expect('/');
    expect('(');
    vars_ = &vars;
    std::vector<IntPoly> rels;
    if (!peek(')')) {
      do {
        rels.push_back(sum());
      } while (accept(','));
    }
    expect(')');
    vars_ = nullptr;
    if (rels.empty()) throw SemanticError("empty relation list at position " + std::to_string(at));
    if (std::holds_alternative<PolyQuotient>(base.node))
      throw SemanticError("polynomial quotient over a polynomial quotient is not supported");
    RingSpec r{PolyQuotient{Box<RingSpec>(std::move(base)), std::move(vars), std::move(rels)}};
    if (peek('[')) throw SemanticError("polynomial quotient over a polynomial quotient is not supported");
    return r;
  }

  RingSpec primary() {
    skip_ws();
    std::size_t at = pos_;
    if (accept_word("Z")) {
      expect('(');
      std::int64_t n = integer();
      expect(')');
      if (n < 2) throw SemanticError("Z(n) requires n >= 2 (position " + std::to_string(at) + ")");
      return RingSpec{Modular{n}};
    }
    if (accept_word("Id")) {
      expect('(');
      RingSpec base = expr();
      expect(',');
      std::int64_t m = integer();
      expect(')');
      if (m < 1) throw SemanticError("Id(R, m) requires m >= 1");
      return RingSpec{Idealization{Box<RingSpec>(std::move(base)), m}};
    }
    if (accept('(')) {
      RingSpec inner = expr();
      expect(')');
      return inner;
    }
    fail({"'Z('", "'Id('", "'('"});
  }

  // Integer polynomial expressions.
  IntPoly sum() {
    std::int64_t sign = 1;
    if (accept('-')) sign = -1;
    else accept('+');
    IntPoly acc = poly_add(IntPoly{}, product(), sign);
    for (;;) {
      if (accept('+')) sign = 1;
      else if (accept('-')) sign = -1;
      else break;
      acc = poly_add(acc, product(), sign);
    }
    return acc;
  }

  bool starts_power() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || is_ident_start(c) || c == '(';
  }

  IntPoly product() {
    IntPoly acc = power();
    for (;;) {
      if (accept('*')) {
        acc = poly_mul(acc, power());
      } else if (starts_power()) {
        acc = poly_mul(acc, power());
      } else {
        break;
      }
    }
    return acc;
  }

  IntPoly power() {
    IntPoly base = atom();
    if (accept('^')) {
      std::int64_t e = integer();
      if (e > 1000) throw SemanticError("exponent too large");
      IntPoly r = poly_const(1, vars_->size());
      for (std::int64_t i = 0; i < e; ++i) r = poly_mul(r, base);
      return r;
    }
    return base;
  }

  IntPoly atom() {
    skip_ws();
    const std::size_t nv = vars_->size();
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
      return poly_const(integer(), nv);
    if (pos_ < s_.size() && is_ident_start(s_[pos_])) {
      std::size_t at = pos_;
      std::string name = ident();
      auto it = std::find(vars_->begin(), vars_->end(), name);
      if (it == vars_->end())
        throw SemanticError("unknown variable '" + name + "' at position " + std::to_string(at));
      IntPoly r;
      std::vector<int> e(nv, 0);
      e[static_cast<std::size_t>(it - vars_->begin())] = 1;
      r.terms[e] = 1;
      return r;
    }
    if (accept('(')) {
      IntPoly r = sum();
      expect(')');
      return r;
    }
    fail({"integer", "variable", "'('"});
  }
};

// Degree-descending, then lexicographically descending exponent order.
bool term_before(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (da != db) return da > db;
  return a > b;
}

void render_into(const RingSpec& spec, std::ostringstream& out, bool in_product);

void render_primary(const RingSpec& spec, std::ostringstream& out) {
  // A product appearing where a primary is expected needs parentheses.
  if (std::holds_alternative<Product>(spec.node)) {
    out << '(';
    render_into(spec, out, false);
    out << ')';
  } else {
    render_into(spec, out, true);
  }
}

void render_into(const RingSpec& spec, std::ostringstream& out, bool in_product) {
  std::visit(
      [&](const auto& node) {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Modular>) {
          out << "Z(" << node.n << ')';
        } else if constexpr (std::is_same_v<T, Product>) {
          if (in_product) out << '(';
          for (std::size_t i = 0; i < node.factors.size(); ++i) {
            if (i) out << 'x';
            render_primary(node.factors[i], out);
          }
          if (in_product) out << ')';
        } else if constexpr (std::is_same_v<T, PolyQuotient>) {
          render_primary(*node.base, out);
          out << '[';
          for (std::size_t i = 0; i < node.vars.size(); ++i) out << (i ? "," : "") << node.vars[i];
          out << "]/(";
          for (std::size_t i = 0; i < node.relations.size(); ++i)
            out << (i ? "," : "") << render_int_poly(node.relations[i], node.vars);
          out << ')';
        } else {
          out << "Id(";
          render_into(*node.base, out, false);
          out << ',' << node.module_modulus << ')';
        }
      },
      spec.node);
}

}  // namespace

RingSpec parse_ring_spec(std::string_view text) { return Parser(text).parse_spec(); }

IntPoly parse_int_poly(std::string_view text, const std::vector<std::string>& vars) {
  return Parser(text).parse_poly_only(vars);
}

std::string render_int_poly(const IntPoly& p, const std::vector<std::string>& vars) {
  if (p.terms.empty()) return "0";
  std::vector<std::pair<std::vector<int>, std::int64_t>> terms(p.terms.begin(), p.terms.end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return term_before(a.first, b.first); });
  std::ostringstream out;
  bool first = true;
  for (const auto& [exps, c] : terms) {
    std::int64_t mag = c < 0 ? -c : c;
    if (c < 0) out << '-';
    else if (!first) out << '+';
    first = false;
    bool constant = std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    bool wrote = false;
    if (mag != 1 || constant) {
      out << mag;
      wrote = true;
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] == 0) continue;
      if (wrote) out << '*';
      out << vars[i];
      if (exps[i] > 1) out << '^' << exps[i];
      wrote = true;
    }
  }
  return out.str();
}

std::string render_ring_spec(const RingSpec& spec) {
  std::ostringstream out;
  render_into(spec, out, false);
  return out.str();
}

}  // namespace zdring
