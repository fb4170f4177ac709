#include "zdring/poly.hpp"

#include <algorithm>
#include <cctype>

#include "zdring/error.hpp"

namespace zdring {

const char* tier_name(Tier t) { return t == Tier::exact ? "exact" : "bounded"; }

namespace {

void same_ring(const Poly& f, const Poly& g) {
  if (&f.ring() != &g.ring() && f.ring().id() != g.ring().id()) throw RingMismatch();
}

}  // namespace

Poly::Poly(const FiniteRing& r, std::vector<Elem> coeffs) : ring_(&r), c_(std::move(coeffs)) {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const FiniteRing& r, Elem a) { return Poly(r, {a}); }

Poly Poly::monomial(const FiniteRing& r, Elem a, int k) {
  std::vector<Elem> c(static_cast<std::size_t>(k) + 1, 0);
  c[k] = a;
  return Poly(r, std::move(c));
}

int Poly::order() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] != 0) return static_cast<int>(i);
  }
  return 0;
}

std::string Poly::str() const { return render_poly(*this); }

std::strong_ordering Poly::operator<=>(const Poly& o) const {
  if (auto c = c_.size() <=> o.c_.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

Poly operator+(const Poly& f, const Poly& g) {
  same_ring(f, g);
  const auto& r = f.ring();
  std::vector<Elem> c(std::max(f.coeffs().size(), g.coeffs().size()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = r.add(f.coeff(int(i)), g.coeff(int(i)));
  return Poly(r, std::move(c));
}

Poly operator-(const Poly& f) {
  std::vector<Elem> c = f.coeffs();
  for (auto& x : c) x = f.ring().neg(x);
  return Poly(f.ring(), std::move(c));
}

Poly operator-(const Poly& f, const Poly& g) { return f + (-g); }

Poly operator*(const Poly& f, const Poly& g) {
  same_ring(f, g);
  const auto& r = f.ring();
  if (f.is_zero() || g.is_zero()) return Poly(r);
  std::vector<Elem> c(f.coeffs().size() + g.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i] == 0) continue;
    for (std::size_t j = 0; j < g.coeffs().size(); ++j) {
      c[i + j] = r.add(c[i + j], r.mul(f.coeffs()[i], g.coeffs()[j]));
    }
  }
  return Poly(r, std::move(c));
}

Poly scale(Elem a, const Poly& f) {
  std::vector<Elem> c = f.coeffs();
  for (auto& x : c) x = f.ring().mul(a, x);
  return Poly(f.ring(), std::move(c));
}

Poly pow(const Poly& f, unsigned k) {
  Poly result = Poly::constant(f.ring(), f.ring().one());
  Poly base = f;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Elem eval(const Poly& f, Elem a) {
  const auto& r = f.ring();
  Elem v = 0;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) v = r.add(r.mul(v, a), f.coeffs()[i]);
  return v;
}

Poly shift(const Poly& f, Elem a) {
  const auto& r = f.ring();
  Poly xa(r, {a, r.one()});
  Poly out(r);
  for (std::size_t i = f.coeffs().size(); i-- > 0;) out = out * xa + Poly::constant(r, f.coeffs()[i]);
  return out;
}

Poly mul_xk(const Poly& f, int k) {
  if (f.is_zero()) return f;
  std::vector<Elem> c(static_cast<std::size_t>(k), 0);
  c.insert(c.end(), f.coeffs().begin(), f.coeffs().end());
  return Poly(f.ring(), std::move(c));
}

Poly div_xk(const Poly& f, int k) {
  for (int i = 0; i < k; ++i) {
    if (f.coeff(i) != 0) throw Error("polynomial is not divisible by X^" + std::to_string(k));
  }
  if (f.degree() < k) return Poly(f.ring());
  return Poly(f.ring(), std::vector<Elem>(f.coeffs().begin() + k, f.coeffs().end()));
}

DivMod divmod(const Poly& f, const Poly& g) {
  same_ring(f, g);
  const auto& r = f.ring();
  auto inv = r.inverse(g.leading());
  if (g.is_zero() || !inv) throw Error("divisor must have a unit leading coefficient");
  std::vector<Elem> rem = f.coeffs();
  const int dg = g.degree();
  std::vector<Elem> q(std::max(0, f.degree() - dg + 1), 0);
  for (int k = f.degree(); k >= dg; --k) {
    Elem c = r.mul(rem[k], *inv);
    q[k - dg] = c;
    if (c == 0) continue;
    for (int i = 0; i <= dg; ++i) rem[k - dg + i] = r.sub(rem[k - dg + i], r.mul(c, g.coeffs()[i]));
  }
  return {Poly(r, std::move(q)), Poly(r, std::move(rem))};
}

// ---- text format ----

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Labels such as "2" or "t" that can precede X without parentheses.
bool bare_coefficient(const std::string& s) {
  return !s.empty() && s.find('X') == std::string::npos &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isalnum(c) || c == '_'; });
}

// "(...)" whose opening paren closes at the last character.
bool single_group(std::string_view s) {
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') return false;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')' && --depth == 0 && i + 1 != s.size()) return false;
  }
  return true;
}

}  // namespace

std::string render_poly(const Poly& f) {
  if (f.is_zero()) return "0";
  const auto& r = f.ring();
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    Elem c = f.coeff(k);
    if (c == 0) continue;
    std::string label = r.label(c);
    std::string term;
    if (k == 0) {
      term = label.find_first_of("+-") != std::string::npos && !single_group(label) ? "(" + label + ")"
                                                                                    : label;
    } else {
      if (c != r.one()) term = bare_coefficient(label) || single_group(label) ? label : "(" + label + ")";
      term += "X";
      if (k > 1) term += "^" + std::to_string(k);
    }
    if (!out.empty()) out += "+";
    out += term;
  }
  return out;
}

namespace {

struct PolyParser {
  const FiniteRing& r;
  std::string text;

  [[noreturn]] void fail(const std::string& msg, std::size_t pos, std::vector<std::string> expected) {
    throw ParseError("polynomial: " + msg + " at position " + std::to_string(pos), pos,
                     std::move(expected));
  }

  Elem coefficient(std::string_view s, std::size_t pos) {
    if (s.empty()) return r.one();
    try {
      return r.parse_element(s);
    } catch (const Error&) {
      if (!single_group(s)) fail("unknown coefficient '" + std::string(s) + "'", pos, {"element label"});
    }
    try {
      return r.parse_element(s.substr(1, s.size() - 2));
    } catch (const Error&) {
      fail("unknown coefficient '" + std::string(s) + "'", pos, {"element label"});
    }
  }

  Poly term(std::string_view s, std::size_t pos) {
    if (s.empty()) fail("empty term", pos, {"term"});
    int depth = 0;
    std::size_t xpos = std::string_view::npos;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '(') ++depth;
      if (s[i] == ')') --depth;
      if (depth == 0 && s[i] == 'X') {
        xpos = i;
        break;
      }
    }
    if (xpos == std::string_view::npos) return Poly::constant(r, coefficient(s, pos));
    std::string_view coef = s.substr(0, xpos);
    if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
    Elem c = coefficient(coef, pos);
    std::string_view rest = s.substr(xpos + 1);
    int k = 1;
    if (!rest.empty()) {
      if (rest.front() != '^' || rest.size() < 2) fail("expected exponent", pos + xpos + 1, {"^"});
      rest.remove_prefix(1);
      if (!all_digits(std::string(rest)) || rest.size() > 4) {
        fail("bad exponent '" + std::string(rest) + "'", pos + xpos + 2, {"integer"});
      }
      k = std::stoi(std::string(rest));
    }
    return Poly::monomial(r, c, k);
  }

  Poly run() {
    std::string s;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        s += text[i];
        origin.push_back(i);
      }
    }
    if (s.empty()) fail("empty polynomial", 0, {"term"});
    origin.push_back(text.size());
    Poly sum(r);
    int depth = 0;
    std::size_t start = 0;
    bool negate = false;
    if (s[0] == '-' || s[0] == '+') {
      negate = s[0] == '-';
      start = 1;
    }
    for (std::size_t i = start; i <= s.size(); ++i) {
      if (i < s.size()) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')' && --depth < 0) fail("unbalanced ')'", origin[i], {"term"});
        if (depth != 0 || (s[i] != '+' && s[i] != '-') || i == start) continue;
        if (s[i - 1] == '^' || s[i - 1] == '*') continue;
      }
      if (depth != 0) fail("unbalanced '('", origin[i], {")"});
      Poly t = term(std::string_view(s).substr(start, i - start), origin[start]);
      sum = negate ? sum - t : sum + t;
      if (i < s.size()) negate = s[i] == '-';
      start = i + 1;
    }
    return sum;
  }
};

}  // namespace

Poly parse_poly(const FiniteRing& r, std::string_view text) {
  return PolyParser{r, std::string(text)}.run();
}

// ---- coefficient classifiers and search oracles ----

PolyClass classify_poly(const Poly& f) {
  const auto& r = f.ring();
  const auto& c = f.coeffs();
  PolyClass pc;
  pc.nilpotent = std::all_of(c.begin(), c.end(), [&](Elem a) { return r.is_nilpotent(a); });
  pc.unit = !c.empty() && r.is_unit(c[0]) &&
            std::all_of(c.begin() + 1, c.end(), [&](Elem a) { return r.is_nilpotent(a); });
  pc.idempotent = f.degree() <= 0 && r.is_idempotent(f.coeff(0));
  for (Elem x = 1; x < r.size() && !pc.zero_divisor; ++x) {
    pc.zero_divisor = std::all_of(c.begin(), c.end(), [&](Elem a) { return r.mul(x, a) == 0; });
  }
  pc.regular = !pc.zero_divisor;
  return pc;
}

std::optional<Poly> inverse_by_search(const Poly& f, int max_degree) {
  std::optional<Poly> out;
  for (int d = 0; d <= max_degree && !out; ++d) {
    for_each_cofactor(f, Poly::constant(f.ring(), f.ring().one()), d, [&](const Poly& h) {
      out = h;
      return false;
    });
  }
  return out;
}

std::optional<Poly> annihilator_by_search(const Poly& f, int max_degree) {
  const auto& r = f.ring();
  if (r.size() == 1) return std::nullopt;
  if (f.is_zero()) return Poly::constant(r, r.one());
  std::optional<Poly> out;
  for (int d = 0; d <= max_degree && !out; ++d) {
    for_each_cofactor(f, Poly(r), d, [&](const Poly& h) {
      if (h.is_zero()) return true;
      out = h;
      return false;
    });
  }
  return out;
}

bool nilpotent_by_powering(const Poly& f) {
  // The nilradical of R[X] has nilpotency index at most |R|.
  return pow(f, static_cast<unsigned>(f.ring().size())).is_zero();
}

bool idempotent_by_powering(const Poly& f) { return f * f == f; }

// ---- reduction and components ----

Poly reduce_mod_nil(const Poly& f) {
  const auto& q = f.ring().reduced_quotient();
  std::vector<Elem> c;
  for (Elem a : f.coeffs()) c.push_back(q.projection[a]);
  return Poly(*q.ring, std::move(c));
}

Elem project_to_component(const FiniteRing& r, std::size_t i, Elem a) {
  const auto& comp = r.local_components().at(i);
  Elem ea = r.mul(comp.idempotent, a);
  auto it = std::lower_bound(comp.embedding.begin(), comp.embedding.end(), ea);
  return static_cast<Elem>(it - comp.embedding.begin());
}

std::vector<Poly> split_components(const Poly& f) {
  const auto& r = f.ring();
  std::vector<Poly> out;
  for (std::size_t i = 0; i < r.local_components().size(); ++i) {
    std::vector<Elem> c;
    for (Elem a : f.coeffs()) c.push_back(project_to_component(r, i, a));
    out.emplace_back(*r.local_components()[i].ring, std::move(c));
  }
  return out;
}

Poly join_components(const FiniteRing& r, std::span<const Poly> parts) {
  const auto& comps = r.local_components();
  if (parts.size() != comps.size()) throw Error("component count mismatch");
  Poly out(r);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (&parts[i].ring() != comps[i].ring.get()) throw RingMismatch();
    std::vector<Elem> c;
    for (Elem a : parts[i].coeffs()) c.push_back(comps[i].embedding[a]);
    out = out + Poly(r, std::move(c));
  }
  return out;
}

// ---- searches ----

void for_each_cofactor(const Poly& f, const Poly& g, int bound,
                       const std::function<bool(const Poly&)>& visit) {
  same_ring(f, g);
  const auto& r = f.ring();
  if (bound < 0) return;
  const auto n = static_cast<Elem>(r.size());
  std::vector<Elem> h(static_cast<std::size_t>(bound) + 1, 0);

  if (f.is_zero()) {
    if (!g.is_zero()) return;
    while (true) {
      if (!visit(Poly(r, h))) return;
      std::size_t i = 0;
      while (i < h.size() && ++h[i] == n) h[i++] = 0;
      if (i == h.size()) return;
    }
  }

  const int j = f.order();
  for (int i = 0; i < j; ++i) {
    if (g.coeff(i) != 0) return;
  }
  const Poly fs = div_xk(f, j);
  const Poly gs = div_xk(g, j);
  const int df = fs.degree();
  if (gs.degree() > df + bound) return;

  std::vector<std::vector<Elem>> solutions(n);
  for (Elem x = 0; x < n; ++x) solutions[r.mul(fs.coeff(0), x)].push_back(x);

  auto coefficient = [&](int k) {
    Elem s = 0;
    for (int i = std::max(0, k - bound); i <= std::min(k, df); ++i) {
      s = r.add(s, r.mul(fs.coeff(i), h[k - i]));
    }
    return s;
  };
  auto rec = [&](auto&& self, int k) -> bool {
    if (k > bound) {
      for (int t = bound + 1; t <= df + bound; ++t) {
        if (coefficient(t) != gs.coeff(t)) return true;
      }
      return visit(Poly(r, h));
    }
    Elem t = gs.coeff(k);
    for (int i = 1; i <= std::min(k, df); ++i) t = r.sub(t, r.mul(fs.coeff(i), h[k - i]));
    for (Elem x : solutions[t]) {
      h[k] = x;
      if (!self(self, k + 1)) return false;
    }
    h[k] = 0;
    return true;
  };
  rec(rec, 0);
}

void for_each_unit(const FiniteRing& r, int bound, const std::function<bool(const Poly&)>& visit) {
  const auto& units = r.structure().units;
  const auto& nil = r.structure().nilradical;
  if (bound < 0) return;
  std::vector<std::size_t> idx(static_cast<std::size_t>(bound) + 1, 0);
  while (true) {
    std::vector<Elem> c(idx.size());
    c[0] = units[idx[0]];
    for (std::size_t i = 1; i < idx.size(); ++i) c[i] = nil[idx[i]];
    if (!visit(Poly(r, std::move(c)))) return;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == (i == 0 ? units.size() : nil.size())) idx[i++] = 0;
    if (i == idx.size()) return;
  }
}

Poly unit_inverse(const Poly& u) {
  const auto& r = u.ring();
  auto inv0 = u.is_zero() ? std::nullopt : r.inverse(u.coeff(0));
  if (!inv0 || !classify_poly(u).unit) throw Error("'" + u.str() + "' is not a unit");
  const Poly c = Poly::constant(r, *inv0);
  // u = u_0 (1 - w) with w nilpotent, so u^-1 = u_0^-1 (1 + w + w^2 + ...).
  const Poly w = -(c * (u - Poly::constant(r, u.coeff(0))));
  Poly sum(r), term = Poly::constant(r, r.one());
  while (!term.is_zero()) {
    sum = sum + term;
    term = term * w;
  }
  return c * sum;
}

std::optional<MonicForm> monic_form(const Poly& f) {
  const auto& r = f.ring();
  if (!r.is_local()) return std::nullopt;
  int m = -1;
  for (int i = 0; i <= f.degree(); ++i) {
    if (r.is_unit(f.coeff(i))) m = i;
  }
  if (m < 0) return std::nullopt;
  // Hensel lifting of f mod nil = c * (monic); each round moves the error one power
  // of the maximal ideal deeper.
  const Elem c = f.coeff(m);
  const Elem cinv = *r.inverse(c);
  std::vector<Elem> low(f.coeffs().begin(), f.coeffs().begin() + m);
  for (auto& x : low) x = r.mul(cinv, x);
  low.push_back(r.one());
  Poly p(r, std::move(low));
  Poly u = Poly::constant(r, c);
  for (std::size_t round = 0; round <= r.size(); ++round) {
    Poly e = f - u * p;
    if (e.is_zero()) return MonicForm{u, p};
    auto [q, rem] = divmod(e, p);
    u = u + q;
    p = p + scale(cinv, rem);
  }
  throw Error("monic normalization did not converge for '" + f.str() + "'");
}

namespace {

Divisibility divides_local(const Poly& f, const Poly& g, int bound) {
  const auto& r = f.ring();
  if (g.is_zero()) return {true, Tier::exact, Poly(r)};
  if (f.is_zero()) return {false, Tier::exact, std::nullopt};
  if (auto mf = monic_form(f)) {
    auto [q, rem] = divmod(g, mf->monic);
    if (!rem.is_zero()) return {false, Tier::exact, std::nullopt};
    return {true, Tier::exact, unit_inverse(mf->unit) * q};
  }
  // g = fh puts every coefficient of g in the ideal generated by those of f.
  auto content = r.ideal_sum_closure(f.coeffs());
  for (Elem c : g.coeffs()) {
    if (!std::binary_search(content.begin(), content.end(), c)) return {false, Tier::exact, std::nullopt};
  }
  if (!reduce_mod_nil(g).is_zero()) return {false, Tier::exact, std::nullopt};
  std::optional<Poly> found;
  for_each_cofactor(f, g, bound, [&](const Poly& h) {
    found = h;
    return false;
  });
  if (found) return {true, Tier::exact, found};
  return {false, Tier::bounded, std::nullopt};
}

}  // namespace

Divisibility divides_poly(const Poly& f, const Poly& g, int bound) {
  same_ring(f, g);
  const auto& r = f.ring();
  if (r.local_components().size() <= 1) return divides_local(f, g, bound);
  auto fs = split_components(f);
  auto gs = split_components(g);
  Divisibility out{true, Tier::exact, std::nullopt};
  std::vector<Poly> cof;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    auto d = divides_local(fs[i], gs[i], bound);
    if (!d.value) {
      if (d.tier == Tier::exact) return d;
      out = {false, Tier::bounded, std::nullopt};
      continue;
    }
    if (out.value) cof.push_back(*d.cofactor);
  }
  if (out.value) out.cofactor = join_components(r, cof);
  return out;
}

bool constant_very_strong_assoc_in_polyring(const FiniteRing& r, Elem a, Elem b) {
  if (!associate_vector(r, a, b).very_strong_assoc) return false;
  if (a == 0) return true;
  for (Elem c : r.annihilator(b)) {
    if (!r.is_nilpotent(c)) return false;
  }
  return true;
}

PolyAssoc poly_associates(const Poly& f, const Poly& g, int bound) {
  same_ring(f, g);
  const auto& r = f.ring();
  if (bound < std::max(f.degree(), g.degree())) throw Error("search bound below polynomial degrees");
  PolyAssoc out;
  out.bound = bound;

  if (f.is_constant() && g.is_constant()) {
    Elem a = f.coeff(0), b = g.coeff(0);
    AssocVector ring_level = associate_vector(r, a, b);
    out.value.assoc = ring_level.assoc;
    out.value.strong_assoc = ring_level.strong_assoc;
    out.value.very_strong_assoc = constant_very_strong_assoc_in_polyring(r, a, b);
    out.value.strong_regular_assoc = ring_level.assoc;
    // A cofactor r_0 + r_1 X + ... of b is regular exactly when r_0 is: the tail lies
    // in ann(b), and only zero divisors r_0 admit a common annihilator.
    out.value.very_strong_regular_assoc = ring_level.very_strong_regular_assoc;
    return out;
  }

  auto fg = divides_poly(g, f, bound);
  auto gf = divides_poly(f, g, bound);
  out.value.assoc = fg.value && gf.value;
  if (out.value.assoc) {
    out.tiers[0] = Tier::exact;
    out.witness = f.str() + " = (" + fg.cofactor->str() + ")*(" + g.str() + "), " + g.str() + " = (" +
                  gf.cofactor->str() + ")*(" + f.str() + ")";
  } else {
    bool certified = (!fg.value && fg.tier == Tier::exact) || (!gf.value && gf.tier == Tier::exact);
    out.tiers[0] = certified ? Tier::exact : Tier::bounded;
  }
  // Thm: f ~ g in R[X] iff f and g are strong regular associates.
  out.value.strong_regular_assoc = out.value.assoc;
  out.tiers[3] = out.tiers[0];

  if (!out.value.assoc) {
    out.tiers[1] = out.tiers[2] = out.tiers[4] = out.tiers[0];
    return out;
  }

  const bool g_regular = classify_poly(g).regular;
  if (g_regular) {
    // Regular associates are strong associates: f = rg, g = sf gives (1 - rs)g = 0.
    out.value.strong_assoc = true;
    out.tiers[1] = Tier::exact;
    PolyClass pc = classify_poly(*fg.cofactor);
    out.value.very_strong_assoc = pc.unit;
    out.value.very_strong_regular_assoc = pc.regular;
    out.tiers[2] = out.tiers[4] = Tier::exact;
    return out;
  }
  bool strong = false;
  for_each_unit(r, bound, [&](const Poly& u) {
    if (u * g != f) return true;
    strong = true;
    return false;
  });
  out.value.strong_assoc = strong;
  out.tiers[1] = strong || r.is_reduced() ? Tier::exact : Tier::bounded;

  // Very strong variants: every cofactor r with f = rg must be a unit (regular).
  bool all_units = true, all_regular = true;
  for_each_cofactor(g, f, bound, [&](const Poly& h) {
    PolyClass pc = classify_poly(h);
    all_units = all_units && pc.unit;
    all_regular = all_regular && pc.regular;
    return all_units || all_regular;
  });
  out.value.very_strong_assoc = all_units;
  out.value.very_strong_regular_assoc = all_regular;
  out.tiers[2] = all_units ? Tier::bounded : Tier::exact;
  out.tiers[4] = all_regular ? Tier::bounded : Tier::exact;
  return out;
}

Verdict strongly_associate_to_constant(const Poly& f, int bound) {
  const auto& r = f.ring();
  Verdict v;
  v.bound = bound;
  if (f.is_constant()) {
    v.value = true;
    return v;
  }
  // Units of R/nil(R)[X] are constants, so a reduction of positive degree is final.
  if (reduce_mod_nil(f).degree() > 0) return v;
  for_each_unit(r, bound, [&](const Poly& u) {
    Poly p = f * u;
    if (p.degree() > 0) return true;
    v.value = true;
    v.witness = "(" + f.str() + ")*(" + u.str() + ") = " + p.str();
    return false;
  });
  if (!v.value) v.tier = Tier::bounded;
  return v;
}

int default_bound(const Poly& f) {
  return std::max(f.degree(), 0) + static_cast<int>(f.ring().nilpotency_index());
}

}  // namespace zdring
