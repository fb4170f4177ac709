#include "zdring/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "search.hpp"
#include "zdring/classify.hpp"
#include "zdring/error.hpp"
#include "zdring/factor.hpp"

namespace zdring {

using nlohmann::json;

// ---- corpus ----

Corpus Corpus::default_corpus() {
  Corpus c;
  for (int n = 2; n <= 16; ++n) c.specs.push_back("Z(" + std::to_string(n) + ")");
  for (const char* s : {"Z(2)xZ(2)", "Z(2)xZ(3)", "Z(2)xZ(4)", "Z(2)xZ(2)xZ(2)", "Z(2)[s,t]/(s^2,s*t,t^2)",
                        "Z(4)[t]/(t^2,2*t)", "Z(2)[u]/(u^2+u+1)", "Z(3)xZ(3)"}) {
    c.specs.emplace_back(s);
  }
  return c;
}

Corpus Corpus::parse(std::string_view text) {
  Corpus c;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    c.specs.push_back(line.substr(b, e - b + 1));
  }
  return c;
}

Corpus Corpus::load(const std::string& source) {
  if (source == "default") return default_corpus();
  std::ifstream in(source);
  if (!in) throw Error("cannot read corpus file '" + source + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::fail: return "fail";
    case Outcome::na: return "n/a";
    case Outcome::error: return "error";
  }
  return "?";
}

namespace {

// ---- check plumbing ----

struct Ctx {
  const FiniteRing& r;
  const SuiteBounds& b;
  CheckResult& out;
  bool exact = true;
  bool bounded = false;

  std::size_t cap() const { return b.len_cap ? b.len_cap : default_len_cap(r); }
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    out.outcome = Outcome::fail;
    out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
  void note(std::string w) { out.witnesses.push_back(std::move(w)); }
  void tier(Tier t) {
    if (t == Tier::exact) exact = true; else bounded = true;
  }
  void na(const std::string& why) {
    out.outcome = Outcome::na;
    out.detail = why;
  }
};

using CheckFn = std::function<void(Ctx&)>;

std::string yn(bool v) { return v ? "yes" : "no"; }

Poly one_poly(const FiniteRing& r) { return Poly::constant(r, r.one()); }

Poly product_of(const FiniteRing& r, const std::vector<Poly>& fs) {
  Poly p = one_poly(r);
  for (const auto& f : fs) p = p * f;
  return p;
}

bool is_unit_times_xm(const Poly& f) {
  const auto& c = f.coeffs();
  return std::count_if(c.begin(), c.end(), [](Elem x) { return x != 0; }) == 1 && f.ring().is_unit(f.leading());
}

// g | f with a cofactor of degree <= bound.
bool divides_within(const Poly& g, const Poly& f, int bound) {
  bool found = false;
  for_each_cofactor(g, f, bound, [&](const Poly&) {
    found = true;
    return false;
  });
  return found;
}

// A constant a divides f exactly when every coefficient lies in Ra.
bool constant_divides(const FiniteRing& r, Elem a, const Poly& f) {
  return std::all_of(f.coeffs().begin(), f.coeffs().end(), [&](Elem c) { return r.divides(a, c); });
}

// Definition search: f = gh with neither g nor h strongly associate to a constant.
std::optional<std::string> decomposition_by_definition(const Poly& f, int bound) {
  std::optional<std::string> w;
  detail::for_each_poly(f.ring(), bound, [&](const Poly& g) {
    if (g.is_zero() || strongly_associate_to_constant(g, bound).value) return true;
    for_each_cofactor(g, f, bound, [&](const Poly& h) {
      if (strongly_associate_to_constant(h, bound).value) return true;
      w = f.str() + " = (" + g.str() + ")*(" + h.str() + ")";
      return false;
    });
    return !w;
  });
  return w;
}

std::string lengths_text(const std::set<std::size_t>& s) {
  std::string out = "{";
  for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ",") + std::to_string(*it);
  return out + "}";
}

// Lengths of X^n over Z4: explicit for n <= 6, closed form beyond.
std::set<std::size_t> z4_lengths_reference(int n) {
  switch (n) {
    case 1: return {1};
    case 2: return {2};
    case 3: return {3};
    case 4: return {2, 4};
    case 5: return {3, 4};
    case 6: return {2, 4, 6};
    default: break;
  }
  std::set<std::size_t> s;
  for (int k = n % 2 == 0 ? 2 : 3; k <= n - 4; ++k) s.insert(k);
  s.insert(n - 2);
  s.insert(n);
  return s;
}

// ---- checks ----

void check_thm41(Ctx& c) {
  const auto& r = c.r;
  const auto& st = r.structure();
  const Poly x = Poly::x(r);
  auto irr = is_irreducible_poly(x, c.b.deg);
  auto ind = is_indecomposable_poly(x, std::max(c.b.deg, 1));
  c.tier(irr.tier);
  c.tier(ind.tier);
  c.expect(irr.value == st.is_indecomposable, "X irreducible = " + yn(irr.value) + " but base indecomposable = " +
                                                    yn(st.is_indecomposable));
  c.expect(ind.value == st.is_indecomposable, "X indecomposable = " + yn(ind.value));
  if (!irr.witness.empty()) c.note("X reducible: " + irr.witness);
  if (!ind.witness.empty()) c.note("X decomposable: " + ind.witness);

  // X prime: no f, g of degree <= 1 with X | fg, X not dividing f or g.
  std::optional<std::string> w;
  std::vector<Poly> low;
  detail::for_each_poly(r, 1, [&](const Poly& f) {
    low.push_back(f);
    return true;
  });
  std::vector<char> div(low.size());
  for (std::size_t i = 0; i < low.size(); ++i) div[i] = divides_poly(x, low[i], 2).value;
  for (std::size_t i = 0; i < low.size() && !w; ++i) {
    if (div[i]) continue;
    for (std::size_t j = i; j < low.size(); ++j) {
      if (div[j]) continue;
      if (divides_poly(x, low[i] * low[j], 3).value) {
        w = "X | (" + low[i].str() + ")*(" + low[j].str() + ")";
        break;
      }
    }
  }
  c.expect(!w == st.is_domain, "X prime = " + yn(!w) + " but base domain = " + yn(st.is_domain));
  if (w) c.note("X not prime: " + *w);
}

void check_thm43(Ctx& c) {
  const auto& r = c.r;
  auto fx = factor_x(r, 2);
  c.tier(Tier::bounded);
  const auto comps = r.local_components().size();
  c.expect(fx.canonical.length() == comps,
           "length " + std::to_string(fx.canonical.length()) + " != components " + std::to_string(comps));
  c.expect(fx.canonical.unit * product_of(r, fx.canonical.factors) == Poly::x(r), "factorization product is not X");
  for (const auto& f : fx.canonical.factors) {
    auto v = is_irreducible_poly(f, 2);
    c.tier(v.tier);
    c.expect(v.value, f.str() + " is not an atom");
  }
  c.expect(fx.uniqueness_count == 1, "bounded search found " + std::to_string(fx.uniqueness_count) + " classes");
  c.note("X = " + fx.canonical.str() + ", classes at bound 2: " + std::to_string(fx.uniqueness_count));
}

void check_cor44(Ctx& c) {
  const auto& r = c.r;
  auto fx = factor_x(r, 1);
  bool all_fields = true;
  for (const auto& comp : r.local_components()) all_fields = all_fields && comp.ring->structure().is_field;
  c.expect(fx.primes == all_fields, "primes flag " + yn(fx.primes) + " but all components fields = " + yn(all_fields));
  // A factor f of X is prime unless constants a, b with f | ab, f not dividing a or b exist.
  bool primes_found = true;
  for (const auto& f : fx.canonical.factors) {
    std::optional<std::string> w;
    for (Elem a = 0; a < r.size() && !w; ++a) {
      if (divides_poly(f, Poly::constant(r, a), 1).value) continue;
      for (Elem b = a; b < r.size(); ++b) {
        if (divides_poly(f, Poly::constant(r, b), 1).value) continue;
        if (divides_poly(f, Poly::constant(r, r.mul(a, b)), 1).value) {
          w = f.str() + " | " + r.label(a) + "*" + r.label(b);
          break;
        }
      }
    }
    if (w) {
      primes_found = false;
      c.note("not prime: " + *w);
    }
  }
  c.expect(primes_found == fx.primes, "constant search disagrees with primes flag");
}

void check_thm45(Ctx& c) {
  const auto& r = c.r;
  const Poly x2 = Poly::monomial(r, r.one(), 2);
  auto facs = atomic_factorizations_poly(x2, std::max(c.b.deg, 2), c.cap());
  c.tier(facs.tier);
  const bool unique = facs.class_count == 1;
  c.expect(unique == r.is_reduced(), "X^2 classes = " + std::to_string(facs.class_count) +
                                         " but reduced = " + yn(r.is_reduced()));
  for (const auto& f : facs.items) {
    c.note("X^2 = " + f.str());
    Poly p = reduce_mod_nil(f.unit);
    for (const auto& g : f.factors) p = p * reduce_mod_nil(g);
    c.expect(p == reduce_mod_nil(x2), "factorization " + f.str() + " does not reduce to X^2 mod nil");
  }
  if (r.size() <= 9) {
    auto direct = factorizations_by_search(x2, 2, c.cap());
    c.tier(direct.tier);
    c.expect(direct.class_count == facs.class_count,
             "direct search found " + std::to_string(direct.class_count) + " classes");
  }
}

void check_cor46(Ctx& c) {
  const auto& r = c.r;
  if (!r.is_reduced()) return c.na("base not reduced");
  if (r.structure().is_indecomposable) {
    for (int n = 1; n <= 3; ++n) {
      auto d = divisors_poly(Poly::monomial(r, r.one(), n), n);
      c.tier(d.tier);
      bool ok = d.reps.size() == static_cast<std::size_t>(n + 1) &&
                std::all_of(d.reps.begin(), d.reps.end(), is_unit_times_xm);
      c.expect(ok, "divisors of X^" + std::to_string(n) + " are not exactly u*X^m");
    }
    c.note("divisors of X^n are u*X^m for n <= 3");
    return;
  }
  auto d = divisors_poly(Poly::x(r), 1);
  c.tier(d.tier);
  std::optional<Poly> odd;
  for (const auto& g : d.reps) {
    if (!is_unit_times_xm(g)) {
      odd = g;
      break;
    }
  }
  c.expect(odd.has_value(), "no divisor of X outside u*X^m on a decomposable base");
  if (odd) {
    Poly h;
    for_each_cofactor(*odd, Poly::x(r), 1, [&](const Poly& q) {
      h = q;
      return false;
    });
    c.expect(*odd * h == Poly::x(r), "saturation witness does not multiply to X");
    c.note("X = (" + odd->str() + ")*(" + h.str() + ")");
  }
}

void check_lemma42(Ctx& c) {
  const auto& r = c.r;
  const int bound = r.size() <= 9 ? 2 : 1;
  const Poly xn = Poly::monomial(r, r.one(), bound);
  auto d = divisors_poly(xn, bound);
  std::size_t tested = 0;
  for (const auto& g : d.reps) {
    if (classify_poly(g).unit) continue;
    auto irr = is_irreducible_poly(g, bound);
    c.tier(irr.tier);
    c.tier(Tier::bounded);
    auto w = decomposition_by_definition(g, bound);
    ++tested;
    c.expect(irr.value == !w, g.str() + ": irreducible = " + yn(irr.value) + ", indecomposable = " + yn(!w));
  }
  c.note(std::to_string(tested) + " nonunit divisors of X^" + std::to_string(bound));
}

void check_lengths_z4(Ctx& c) {
  const auto& r = c.r;
  if (!r.spec() || r.description() != "Z(4)") return c.na("sets of lengths table is for Z(4)");
  for (int n = 1; n <= c.b.lengths_max; ++n) {
    auto exact = set_of_lengths_xn(r, n);
    auto search = lengths_xn_by_search(r, n);
    auto ref = z4_lengths_reference(n);
    c.tier(exact.tier);
    c.tier(search.tier);
    c.expect(exact.lengths == ref, "L(X^" + std::to_string(n) + ") = " + exact.str() + ", expected " + lengths_text(ref));
    c.expect(search.lengths == ref, "search L(X^" + std::to_string(n) + ") = " + search.str());
    c.expect(*exact.lengths.rbegin() == static_cast<std::size_t>(n), "max length differs from n");
    if (n >= 2) {
      c.expect(*exact.lengths.begin() == (n % 2 == 0 ? 2u : 3u), "min length of X^" + std::to_string(n));
    }
    c.note("L(X^" + std::to_string(n) + ") = " + exact.str());
  }
}

void check_lengths_xn(Ctx& c) {
  const auto& r = c.r;
  if (!r.is_local() || r.structure().is_field) return c.na("route comparison needs a local non-field base");
  const int top = r.size() <= 8 ? 4 : 3;
  for (int n = 1; n <= top; ++n) {
    auto exact = set_of_lengths_xn(r, n);
    auto search = lengths_xn_by_search(r, n);
    c.tier(search.tier);
    c.expect(exact.lengths == search.lengths,
             "L(X^" + std::to_string(n) + "): monic route " + exact.str() + ", search " + search.str());
    c.note("L(X^" + std::to_string(n) + ") = " + exact.str());
  }
}

void check_prop33(Ctx& c) {
  const auto& r = c.r;
  const int bound = c.b.deg;
  if (!r.is_reduced()) {
    Elem a = 0;
    for (Elem x : r.structure().nilradical) {
      if (x != 0) {
        a = x;
        break;
      }
    }
    const Poly f(r, {r.one(), a});
    auto pa = poly_associates(one_poly(r), f, bound);
    c.tier(pa.tiers[0]);
    c.expect(pa.value.assoc, "1 and " + f.str() + " are not associates");
    c.note("1 ~ " + f.str());
    return;
  }
  // Reduced: no constant a and nonconstant f with a ~ f.
  std::optional<std::string> w;
  const int top = r.size() <= 9 ? bound : std::min(bound, 2);
  for (Elem a = 0; a < r.size() && !w; ++a) {
    detail::for_each_poly(r, top, [&](const Poly& f) {
      if (f.degree() < 1 || !constant_divides(r, a, f)) return true;
      if (divides_within(f, Poly::constant(r, a), top)) w = r.label(a) + " ~ " + f.str();
      return !w;
    });
  }
  c.tier(Tier::bounded);
  c.expect(!w, "reduced base has a constant associate to a nonconstant polynomial: " + w.value_or(""));
  c.note("no constant ~ nonconstant pair at degree " + std::to_string(top));
}

// f = fg with f != 0 and g a nonunit, over all f, g of degree <= 2.
std::optional<std::string> polyring_presimplifiable_gap(const FiniteRing& r) {
  const std::size_t w = 3;
  std::vector<std::vector<Elem>> polys;
  detail::for_each_poly(r, 2, [&](const Poly& f) {
    std::vector<Elem> v(w, 0);
    std::copy(f.coeffs().begin(), f.coeffs().end(), v.begin());
    polys.push_back(std::move(v));
    return true;
  });
  auto is_unit = [&](const std::vector<Elem>& g) {
    return r.is_unit(g[0]) && r.is_nilpotent(g[1]) && r.is_nilpotent(g[2]);
  };
  std::vector<Elem> prod(2 * w - 1);
  for (const auto& f : polys) {
    if (std::all_of(f.begin(), f.end(), [](Elem x) { return x == 0; })) continue;
    for (const auto& g : polys) {
      if (is_unit(g)) continue;
      std::fill(prod.begin(), prod.end(), 0);
      for (std::size_t i = 0; i < w; ++i) {
        if (f[i] == 0) continue;
        for (std::size_t j = 0; j < w; ++j) prod[i + j] = r.add(prod[i + j], r.mul(f[i], g[j]));
      }
      if (prod[3] == 0 && prod[4] == 0 && std::equal(f.begin(), f.end(), prod.begin())) {
        return Poly(r, f).str() + " = (" + Poly(r, f).str() + ")*(" + Poly(r, g).str() + ")";
      }
    }
  }
  return std::nullopt;
}

void check_thm32_6(Ctx& c) {
  const auto& r = c.r;
  auto gap = polyring_presimplifiable_gap(r);
  bool zero_primary = true;
  for (Elem z : r.structure().zero_divisors) zero_primary = zero_primary && r.is_nilpotent(z);
  const bool predicted = is_presimplifiable_ring(r) && zero_primary;
  c.tier(Tier::bounded);
  c.expect(!gap == predicted, "R[X] presimplifiable at degree 2 = " + yn(!gap) + ", predicted " + yn(predicted));
  if (gap) c.note(*gap);
}

void check_thm32_8(Ctx& c) {
  const auto& r = c.r;
  const int bound = r.size() <= 9 ? 2 : 1;
  std::size_t tested = 0;
  for (Elem a = 0; a < r.size(); ++a) {
    if (r.is_unit(a)) continue;
    const bool ring_irr = classify_element(r, a).irreducible;
    const Poly fa = Poly::constant(r, a);
    // a = gh with a ~ g false and a ~ h false; g | a holds, so a ~ g iff a | g.
    std::optional<std::string> w;
    detail::for_each_poly(r, bound, [&](const Poly& g) {
      if (constant_divides(r, a, g)) return true;
      for_each_cofactor(g, fa, bound, [&](const Poly& h) {
        if (constant_divides(r, a, h)) return true;
        w = r.label(a) + " = (" + g.str() + ")*(" + h.str() + ")";
        return false;
      });
      return !w;
    });
    ++tested;
    c.expect(ring_irr == !w, r.label(a) + ": irreducible in R = " + yn(ring_irr) + ", in R[X] at degree " +
                                 std::to_string(bound) + " = " + yn(!w));
    auto lib = is_irreducible_poly(fa, bound);
    c.expect(lib.value == ring_irr, r.label(a) + ": library answer differs");
  }
  c.tier(Tier::bounded);
  c.note(std::to_string(tested) + " nonunit constants");
}

void check_thm31_oracle(Ctx& c) {
  const auto& r = c.r;
  static const std::set<std::string> full{"Z(4)", "Z(6)", "Z(2)[s,t]/(s^2,s*t,t^2)"};
  const int deg = full.count(r.description()) ? 3 : (r.size() <= 9 ? 2 : 1);
  std::size_t count = 0, bad = 0;
  detail::for_each_poly(r, deg, [&](const Poly& f) {
    ++count;
    auto pc = classify_poly(f);
    const bool unit = inverse_by_search(f, 6).has_value();
    const bool zd = annihilator_by_search(f, 6).has_value();
    const bool nil = nilpotent_by_powering(f);
    const bool idem = idempotent_by_powering(f);
    if (pc.unit != unit || pc.zero_divisor != zd || pc.nilpotent != nil || pc.idempotent != idem ||
        pc.regular == zd) {
      if (++bad <= 5) c.note("disagreement at " + f.str());
    }
    return true;
  });
  c.tier(Tier::bounded);
  c.expect(bad == 0, std::to_string(bad) + " of " + std::to_string(count) + " polynomials disagree");
  c.note(std::to_string(count) + " polynomials of degree <= " + std::to_string(deg) + ", searches to degree 6");
}

// m-irreducible and very strongly irreducible, both decided within the bound.
struct BoundedIrr {
  bool m = true;
  bool vs = false;
};

BoundedIrr bounded_irreducibility(const Poly& f, const std::vector<Poly>& all, int bound) {
  BoundedIrr out;
  auto assoc = [&](const Poly& p, const Poly& q) { return divides_within(p, q, bound) && divides_within(q, p, bound); };
  // m-irreducible: no nonunit g with (f) properly inside (g).
  for (const auto& g : all) {
    if (classify_poly(g).unit || !divides_within(g, f, bound)) continue;
    if (!divides_within(f, g, bound)) {
      out.m = false;
      break;
    }
  }
  // very strongly irreducible: every f = gh has f ~= g or f ~= h.
  auto very_strong = [&](const Poly& g) {
    if (!assoc(f, g)) return false;
    bool ok = true;
    for_each_cofactor(g, f, bound, [&](const Poly& q) {
      ok = classify_poly(q).unit;
      return ok;
    });
    return ok;
  };
  out.vs = true;
  for (const auto& g : all) {
    if (!out.vs) break;
    for_each_cofactor(g, f, bound, [&](const Poly& h) {
      if (!very_strong(g) && !very_strong(h)) out.vs = false;
      return out.vs;
    });
  }
  return out;
}

void check_thm35_1(Ctx& c) {
  const auto& r = c.r;
  const int bound = 2;
  const int subject_deg = r.size() <= 8 ? 2 : 1;
  if (r.size() > 9) return c.na("spot-check limited to rings of size <= 9");
  std::vector<Poly> all;
  detail::for_each_poly(r, bound, [&](const Poly& g) {
    all.push_back(g);
    return true;
  });
  std::size_t tested = 0, bad = 0;
  for (const auto& f : all) {
    if (f.is_zero() || f.degree() > subject_deg || classify_poly(f).unit) continue;
    auto v = bounded_irreducibility(f, all, bound);
    ++tested;
    if (v.m != v.vs && ++bad <= 5) {
      c.note(f.str() + ": m-irreducible " + yn(v.m) + ", very strongly irreducible " + yn(v.vs));
    }
  }
  c.tier(Tier::bounded);
  c.expect(bad == 0, std::to_string(bad) + " of " + std::to_string(tested) + " subjects disagree");
  c.note(std::to_string(tested) + " nonzero nonunits of degree <= " + std::to_string(subject_deg));
}

void check_thm62(Ctx& c) {
  const auto& r = c.r;
  std::optional<Elem> atom;
  for (Elem a : r.structure().nilradical) {
    if (a != 0 && classify_element(r, a).irreducible) {
      atom = a;
      break;
    }
  }
  if (!atom) return c.na("no nonzero nilpotent atom");
  auto w = hfr_witness(r);
  c.expect(w.has_value(), "no witness constructed for nilpotent atom " + r.label(*atom));
  if (!w) return;
  c.expect(product_of(r, w->shorter) == w->subject, "shorter factorization does not multiply to the subject");
  c.expect(product_of(r, w->longer) == w->subject, "longer factorization does not multiply to the subject");
  c.expect(w->shorter.size() != w->longer.size(), "lengths agree");
  for (const auto& f : w->shorter) {
    auto v = is_irreducible_poly(f, f.degree());
    c.tier(v.tier);
    c.expect(v.value, f.str() + " is not an atom");
  }
  std::string s = w->subject.str() + " =";
  for (const auto& f : w->shorter) s += " (" + f.str() + ")";
  c.note(s);
  c.note("lengths " + std::to_string(w->shorter.size()) + " and " + std::to_string(w->longer.size()));
}

void check_thm63(Ctx& c) {
  const auto& r = c.r;
  auto pr = classify_poly_ring(r);
  const auto& ffr = pr.flag("ffr");
  if (!r.is_local()) {
    c.expect(!ffr.value, "decomposable base predicted FFR");
    c.expect(!pr.flag("bfr").value, "decomposable base predicted BFR");
    if (c.out.outcome != Outcome::fail) c.na("conditions apply to local rings; not BFR: " + ffr.witness);
    return;
  }
  if (r.structure().is_field) {
    c.expect(ffr.value, "field base not FFR");
    return;
  }
  const auto& cond = *pr.ffr_conditions;
  // Equivalent forms: products of k < n atoms lie in M^k \ M^(k+1); elements of
  // M \ M^2 divide every element of M^2.
  std::vector<Elem> m, atoms;
  for (Elem x = 0; x < r.size(); ++x) {
    if (!r.is_unit(x)) m.push_back(x);
  }
  for (Elem x : m) {
    if (x != 0 && classify_element(r, x).irreducible) atoms.push_back(x);
  }
  std::vector<std::vector<Elem>> powers{{r.one()}, m};
  while (!(powers.back().size() == 1 && powers.back()[0] == 0)) powers.push_back(r.ideal_product(powers.back(), m));
  const std::size_t n = powers.size() - 1;
  auto in_power = [&](Elem x, std::size_t k) {
    if (k >= powers.size()) return x == 0;
    return std::binary_search(powers[k].begin(), powers[k].end(), x);
  };
  for (auto& p : powers) std::sort(p.begin(), p.end());
  bool a_alt = true;
  std::vector<Elem> layer = {r.one()};
  for (std::size_t k = 1; k < n && a_alt; ++k) {
    std::set<Elem> next;
    for (Elem p : layer) {
      for (Elem q : atoms) next.insert(r.mul(p, q));
    }
    layer.assign(next.begin(), next.end());
    for (Elem x : layer) a_alt = a_alt && in_power(x, k) && !in_power(x, k + 1);
  }
  bool b_alt = true;
  for (Elem x : m) {
    if (!in_power(x, 1) || in_power(x, 2)) continue;
    for (Elem y : powers[2]) b_alt = b_alt && r.divides(x, y);
  }
  c.expect(cond.n == n, "nilpotency of M differs");
  c.expect(cond.a == a_alt, "condition (a) differs from its atom form");
  c.expect(cond.b == b_alt, "condition (b) differs from its divisibility form");
  c.expect(ffr.value == (cond.a && cond.b), "ffr flag does not match (a) and (b)");
  c.note("M^" + std::to_string(n) + " = 0, (a) " + yn(cond.a) + ", (b) " + yn(cond.b) + ", ffr " + yn(ffr.value));
}

void check_dual(Ctx& c) {
  const auto& r = c.r;
  auto rep = ring_class_deciders(r);
  for (const auto& name : rep.disagreements()) {
    const auto& f = rep.flag(name);
    c.expect(false, name + ": definition " + yn(f.definition) + ", structure " + yn(f.structure));
    if (!f.witness.empty()) c.note(name + ": " + f.witness);
  }
  try {
    auto fl = is_fletcher_ufr(r);
    c.expect(fl.value == rep.value("fletcher_ufr"), "U-decomposition route disagrees on fletcher_ufr");
  } catch (const InconsistencyError& e) {
    c.expect(false, e.what());
  }
  c.expect(!rep.value("ufr") || rep.value("weak_ufr"), "ufr without weak_ufr");
  c.expect(!rep.value("fletcher_ufr") || rep.value("factorial"), "fletcher_ufr without factorial");
  c.expect(!rep.value("ufr") || rep.value("presimplifiable"), "ufr without presimplifiable");
  auto pr = classify_poly_ring(r);
  c.expect(!pr.value("hfr") || pr.value("bfr"), "R[X]: hfr without bfr");
  c.expect(!pr.value("ffr") || pr.value("bfr"), "R[X]: ffr without bfr");
  c.expect(!pr.value("bfr") || pr.value("atomic"), "R[X]: bfr without atomic");
  for (const auto& f : pr.flags) {
    c.expect(f.value || !f.witness.empty(), "R[X]: " + f.name + " false without a witness");
  }
  std::string held;
  for (const auto& f : rep.flags) {
    if (f.definition) held += (held.empty() ? "" : ",") + f.name;
  }
  c.note("holds: " + held);
}

void check_thm54(Ctx& c) {
  const auto& r = c.r;
  bool fields = true;
  for (const auto& comp : r.local_components()) fields = fields && comp.ring->structure().is_field;
  auto pair = find_nonisomorphic_factorizations(r, c.b.deg, true);
  c.tier(Tier::bounded);
  c.expect(fields == !pair, "product of fields = " + yn(fields) + ", regular witness found = " + yn(pair.has_value()));
  if (pair) {
    c.expect(product_of(r, pair->first.factors) == pair->subject, "first factorization does not multiply out");
    c.expect(product_of(r, pair->second.factors) == pair->subject, "second factorization does not multiply out");
    c.expect(pair->first.factors != pair->second.factors, "factorizations coincide");
    c.note(pair->subject.str() + " = " + pair->first.str() + " = " + pair->second.str());
  }
  auto pr = classify_poly_ring(r);
  for (const char* name : {"factorial", "fletcher_ufr", "weak_ufr"}) {
    c.expect(pr.value(name) == fields, std::string("R[X] ") + name + " prediction differs");
  }
}

void check_cor55(Ctx& c) {
  auto pr = classify_poly_ring(c.r);
  c.expect(pr.value("ufr") == c.r.structure().is_field, "R[X] ufr = " + yn(pr.value("ufr")));
  if (!pr.value("ufr")) c.note(pr.flag("ufr").witness);
}

void check_bfr_idempotent(Ctx& c) {
  const auto& r = c.r;
  std::optional<Elem> e;
  for (Elem x : r.structure().idempotents) {
    if (x != 0 && x != r.one()) {
      e = x;
      break;
    }
  }
  auto pr = classify_poly_ring(r);
  const auto& bfr = pr.flag("bfr");
  if (!e) {
    c.expect(bfr.value, "indecomposable base not predicted BFR");
    c.note("local base: BFR");
    return;
  }
  c.expect(r.mul(*e, *e) == *e, "idempotent witness fails");
  c.expect(!bfr.value, "base with idempotent " + r.label(*e) + " predicted BFR");
  c.expect(bfr.provenance == Provenance::bounded_witness && !bfr.witness.empty(), "missing idempotent witness");
  c.note(bfr.witness);
}

void check_probe(Ctx& c) {
  const auto& r = c.r;
  auto entries = probe_weakly_prime_lift(r, c.b.probe_deg);
  if (entries.empty()) return c.na("no weakly prime elements");
  c.tier(Tier::bounded);
  for (const auto& e : entries) {
    const std::string a = r.label(e.element);
    if (e.prime_in_ring) {
      c.note(a + ": prime in R, stays prime in R[X]");
      continue;
    }
    if (!e.found) {
      c.note(a + ": none found at degree " + std::to_string(e.bound));
      continue;
    }
    const auto& [f, g] = *e.witness;
    const Poly fg = f * g;
    c.expect(!fg.is_zero() && constant_divides(r, e.element, fg) && !constant_divides(r, e.element, f) &&
                 !constant_divides(r, e.element, g),
             a + ": witness fails verification");
    c.note(a + ": found (" + f.str() + ")*(" + g.str() + ")");
  }
}

// Report only: elements separating strong irreducibility from m-irreducibility.
void check_search_si_mi(Ctx& c) {
  const auto& r = c.r;
  std::size_t subjects = 0;
  for (Elem a = 0; a < r.size(); ++a) {
    if (r.is_unit(a)) continue;
    ++subjects;
    auto e = classify_element(r, a);
    if (e.strongly_irreducible != e.m_irreducible) {
      c.note(r.label(a) + ": strongly irreducible " + yn(e.strongly_irreducible) + ", m-irreducible " +
             yn(e.m_irreducible));
    }
  }
  if (c.out.witnesses.empty()) c.note("none among " + std::to_string(subjects) + " nonunits");
}

// Report only: constants strongly irreducible in R with a = gh in R[X], a not a
// strong associate of g or h, within the degree bound.
void check_search_si_lift(Ctx& c) {
  const auto& r = c.r;
  const int bound = r.size() <= 9 ? 2 : 1;
  auto strong = [&](const Poly& a, const Poly& g) {
    bool found = false;
    for_each_cofactor(g, a, bound, [&](const Poly& u) {
      found = classify_poly(u).unit;
      return !found;
    });
    return found;
  };
  std::size_t subjects = 0;
  for (Elem a = 0; a < r.size(); ++a) {
    if (r.is_unit(a) || !classify_element(r, a).strongly_irreducible) continue;
    ++subjects;
    const Poly fa = Poly::constant(r, a);
    std::optional<std::string> w;
    detail::for_each_poly(r, bound, [&](const Poly& g) {
      if (g.is_zero() || strong(fa, g)) return true;
      for_each_cofactor(g, fa, bound, [&](const Poly& h) {
        if (strong(fa, h)) return true;
        w = r.label(a) + " = (" + g.str() + ")*(" + h.str() + ")";
        return false;
      });
      return !w;
    });
    c.note(r.label(a) + ": " + (w ? "found " + *w : "none at degree " + std::to_string(bound)));
  }
  c.tier(Tier::bounded);
  if (subjects == 0) c.na("no strongly irreducible nonunits");
}

struct CheckDef {
  const char* id;
  void (*fn)(Ctx&);
};

const CheckDef kChecks[] = {
    {"thm4.1", check_thm41},
    {"thm4.3-uniqueness", check_thm43},
    {"cor4.4", check_cor44},
    {"thm4.5", check_thm45},
    {"cor4.6", check_cor46},
    {"lemma4.2", check_lemma42},
    {"lengths-z4", check_lengths_z4},
    {"lengths-xn", check_lengths_xn},
    {"prop3.3", check_prop33},
    {"thm3.2-6", check_thm32_6},
    {"thm3.2-8", check_thm32_8},
    {"thm3.1-oracle", check_thm31_oracle},
    {"thm3.5-1", check_thm35_1},
    {"thm6.2-witness", check_thm62},
    {"thm6.3", check_thm63},
    {"dual-decider", check_dual},
    {"thm5.4", check_thm54},
    {"cor5.5", check_cor55},
    {"bfr-idempotent", check_bfr_idempotent},
    {"probe-weakly-prime", check_probe},
    {"search-si-vs-mi", check_search_si_mi},
    {"search-si-lift", check_search_si_lift},
};

std::string bounds_text(const SuiteBounds& b) {
  return "deg=" + std::to_string(b.deg) + " probe_deg=" + std::to_string(b.probe_deg) +
         " lengths_max=" + std::to_string(b.lengths_max) + " len_cap=" + std::to_string(b.len_cap);
}

}  // namespace

const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& c : kChecks) v.emplace_back(c.id);
    return v;
  }();
  return ids;
}

SuiteReport run_suite(const Corpus& corpus, const std::vector<std::string>& checks, const SuiteBounds& bounds,
                      unsigned threads) {
  std::vector<const CheckDef*> selected;
  for (const auto& id : checks) {
    // An id also names the check it prefixes up to a '-', so "thm6.2" selects "thm6.2-witness".
    auto it = std::find_if(std::begin(kChecks), std::end(kChecks), [&](const CheckDef& d) { return id == d.id; });
    if (it == std::end(kChecks)) {
      it = std::find_if(std::begin(kChecks), std::end(kChecks),
                        [&](const CheckDef& d) { return std::string_view(d.id).starts_with(id + "-"); });
    }
    if (it == std::end(kChecks)) throw Error("unknown check '" + id + "'");
    if (std::find(selected.begin(), selected.end(), &*it) == selected.end()) selected.push_back(&*it);
  }

  SuiteReport rep;
  rep.bounds = bounds;
  std::vector<RingPtr> rings;
  for (const auto& spec : corpus.specs) {
    RingInfo info;
    RingPtr r;
    try {
      r = FiniteRing::build(spec);
      info.spec = r->description();
      info.size = r->size();
    } catch (const Error& e) {
      info.spec = spec;
      info.error = e.what();
    }
    rep.rings.push_back(info);
    rings.push_back(r);
  }

  struct Task {
    std::size_t ring;
    const CheckDef* check;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (const auto* c : selected) tasks.push_back({i, c});
  }
  rep.checks.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t; (t = next.fetch_add(1)) < tasks.size();) {
      const auto& task = tasks[t];
      auto& out = rep.checks[t];
      out.ring = rep.rings[task.ring].spec;
      out.check = task.check->id;
      if (!rings[task.ring]) {
        out.outcome = Outcome::error;
        out.detail = "ring build failed: " + rep.rings[task.ring].error;
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      Ctx ctx{*rings[task.ring], bounds, out};
      ctx.exact = false;
      try {
        task.check->fn(ctx);
      } catch (const std::exception& e) {
        out.outcome = Outcome::error;
        out.detail = e.what();
      }
      out.tier = ctx.bounded ? (ctx.exact ? "mixed" : "bounded") : (ctx.exact ? "exact" : "");
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rep;
}

bool SuiteReport::all_pass() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.outcome == Outcome::fail || c.outcome == Outcome::error; });
}

std::string SuiteReport::to_json(bool include_timing) const {
  json doc;
  doc["meta"] = {{"tool", "zdring"},
                 {"bounds",
                  {{"deg", bounds.deg},
                   {"probe_deg", bounds.probe_deg},
                   {"lengths_max", bounds.lengths_max},
                   {"len_cap", bounds.len_cap}}},
                 {"all_pass", all_pass()}};
  doc["rings"] = json::array();
  for (const auto& r : rings) {
    json j = {{"spec", r.spec}, {"size", r.size}};
    if (!r.error.empty()) j["error"] = r.error;
    doc["rings"].push_back(j);
  }
  doc["checks"] = json::array();
  json timing = json::array();
  for (const auto& c : checks) {
    doc["checks"].push_back({{"ring", c.ring},
                             {"check", c.check},
                             {"outcome", outcome_name(c.outcome)},
                             {"tier", c.tier},
                             {"detail", c.detail},
                             {"witnesses", c.witnesses}});
    timing.push_back({{"ring", c.ring}, {"check", c.check}, {"seconds", c.seconds}});
  }
  if (include_timing) doc["timing"] = timing;
  return doc.dump(2) + "\n";
}

std::string SuiteReport::to_text() const {
  std::ostringstream out;
  out << "bounds: " << bounds_text(bounds) << "\n";
  for (const auto& c : checks) {
    out << outcome_name(c.outcome) << "\t" << c.ring << "\t" << c.check;
    if (!c.tier.empty()) out << "\t[" << c.tier << "]";
    if (!c.detail.empty()) out << "\t" << c.detail;
    out << "\n";
    for (const auto& w : c.witnesses) out << "\t  " << w << "\n";
  }
  std::map<std::string, std::size_t> tally;
  for (const auto& c : checks) ++tally[outcome_name(c.outcome)];
  out << "summary:";
  for (const auto& [k, v] : tally) out << " " << k << "=" << v;
  out << "\n";
  return out.str();
}

// ---- cache ----

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::string ResultCache::key(std::string_view ring, std::string_view subject, std::string_view bounds) {
  // FNV-1a, stable across platforms and runs.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::string_view s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  mix(ring);
  mix(subject);
  mix(bounds);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::filesystem::path ResultCache::path_for(const std::string& key) const {
  return dir_ / key.substr(0, 2) / (key + ".json");
}

std::optional<std::string> ResultCache::get(const std::string& key) const {
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultCache::put(const std::string& key, const std::string& value) const {
  const auto path = path_for(key);
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
         std::to_string(std::chrono::steady_clock::now().time_since_epoch().count());
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw Error("cannot write cache file '" + tmp.string() + "'");
    out << value;
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace zdring
