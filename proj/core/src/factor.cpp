#include "zdring/factor.hpp"

#include <algorithm>
#include <map>
#include <tuple>

#include "search.hpp"
#include "zdring/error.hpp"

namespace zdring {

namespace {

bool is_unit_poly(const Poly& f) { return classify_poly(f).unit; }

bool divides_within(const Poly& a, const Poly& b, int bound) {
  bool found = false;
  for_each_cofactor(a, b, bound, [&](const Poly&) {
    found = true;
    return false;
  });
  return found;
}

std::string product_text(const Poly& f, const Poly& g, const Poly& h) {
  return f.str() + " = (" + g.str() + ")*(" + h.str() + ")";
}

}  // namespace

std::string PolyFactorization::str() const {
  std::string s;
  if (!unit.is_zero() && unit != Poly::constant(unit.ring(), unit.ring().one())) s = "(" + unit.str() + ")";
  for (const auto& f : factors) {
    if (!s.empty()) s += "*";
    s += "(" + f.str() + ")";
  }
  return s;
}

DivisorClasses divisors_poly(const Poly& f, int bound) {
  const auto& r = f.ring();
  if (bound < f.degree()) throw Error("search bound below polynomial degree");
  std::vector<Poly> divs;
  detail::for_each_poly(r, bound, [&](const Poly& g) {
    if (divides_within(g, f, bound)) divs.push_back(g);
    return true;
  });
  std::sort(divs.begin(), divs.end());
  DivisorClasses out;
  out.bound = bound;
  for (const auto& g : divs) {
    bool known = std::any_of(out.reps.begin(), out.reps.end(), [&](const Poly& rep) {
      return divides_poly(g, rep, bound).value && divides_poly(rep, g, bound).value;
    });
    if (!known) out.reps.push_back(g);
  }
  out.tier = r.is_reduced() && classify_poly(f).regular ? Tier::exact : Tier::bounded;
  return out;
}

bool is_factor_of_xn(const Poly& f) {
  if (f.is_zero()) return false;
  for (const auto& part : split_components(f)) {
    const Poly red = reduce_mod_nil(part);
    const auto& c = red.coeffs();
    if (std::count_if(c.begin(), c.end(), [](Elem x) { return x != 0; }) != 1) return false;
  }
  return true;
}

namespace {

Verdict irreducible_local(const Poly& f, int bound) {
  const auto& r = f.ring();
  Verdict v;
  v.bound = bound;
  if (f.is_constant()) {
    v.value = classify_element(r, f.coeff(0)).irreducible;
    if (!v.value) v.witness = "constant " + r.label(f.coeff(0)) + " is reducible in the base ring";
    return v;
  }
  if (auto mf = monic_form(f)) {
    const Poly& p = mf->monic;
    for (int d = 1; 2 * d <= p.degree(); ++d) {
      auto divs = monic_divisors(p, d);
      if (divs.empty()) continue;
      Poly h = mf->unit * divmod(p, divs.front()).quotient;
      v.witness = product_text(f, divs.front(), h);
      return v;
    }
    v.value = true;
    return v;
  }
  // f has nilpotent coefficients only: bounded search for f = gh with f ~ g, f ~ h both false.
  std::optional<std::string> loose;
  bool certified = false;
  detail::for_each_poly(r, bound, [&](const Poly& g) {
    if (g.is_zero() || is_unit_poly(g)) return true;
    for_each_cofactor(g, f, bound, [&](const Poly& h) {
      if (is_unit_poly(h)) return true;
      auto dg = divides_poly(f, g, bound);
      if (dg.value) return true;
      auto dh = divides_poly(f, h, bound);
      if (dh.value) return true;
      if (dg.tier == Tier::exact && dh.tier == Tier::exact) {
        v.witness = product_text(f, g, h);
        certified = true;
        return false;
      }
      if (!loose) loose = product_text(f, g, h);
      return true;
    });
    return !certified;
  });
  if (certified) return v;
  v.tier = Tier::bounded;
  v.value = !loose;
  if (loose) v.witness = *loose;
  return v;
}

}  // namespace

Verdict is_irreducible_poly(const Poly& f, int bound) {
  const auto& r = f.ring();
  if (is_unit_poly(f)) throw Error("'" + f.str() + "' is a unit");
  if (f.is_constant()) return irreducible_local(Poly::constant(r, f.coeff(0)), bound);
  const auto& comps = r.local_components();
  if (comps.size() == 1) return irreducible_local(f, bound);
  // In R_1[X] x ... x R_k[X] an atom is a unit in all but one coordinate.
  auto parts = split_components(f);
  std::vector<std::size_t> nonunits;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!is_unit_poly(parts[i])) nonunits.push_back(i);
  }
  Verdict v;
  v.bound = bound;
  if (nonunits.size() >= 2) {
    std::size_t i = nonunits.front();
    Poly g = detail::embed_component(r, i, parts[i]);
    auto rest = parts;
    rest[i] = Poly::constant(*comps[i].ring, comps[i].ring->one());
    v.witness = product_text(f, g, join_components(r, rest));
    return v;
  }
  std::size_t i = nonunits.front();
  v = irreducible_local(parts[i], bound);
  if (!v.witness.empty()) v.witness = "component " + std::to_string(i) + ": " + v.witness;
  return v;
}

Verdict is_indecomposable_poly(const Poly& f, int bound) {
  const auto& r = f.ring();
  if (bound < f.degree()) throw Error("search bound below polynomial degree");
  Verdict v;
  v.bound = bound;
  if (f.is_zero()) {
    // 0 is indecomposable iff it is irreducible, i.e. R is a domain.
    v.value = r.structure().is_domain;
    for (Elem a = 1; a < r.size() && !v.value && v.witness.empty(); ++a) {
      for (Elem b = 1; b < r.size(); ++b) {
        if (r.mul(a, b) != 0) continue;
        Poly g(r, {a, a}), h(r, {b, b});
        v.witness = product_text(f, g, h);
        break;
      }
    }
    return v;
  }
  if (is_unit_poly(f)) {
    v.value = true;
    return v;
  }
  if (is_factor_of_xn(f)) {
    // For nonunit factors of X^n, indecomposable and irreducible agree.
    return is_irreducible_poly(f, bound);
  }
  if (r.is_reduced()) {
    // Units are constants, so only factor pairs of positive degree matter; over a
    // product of fields such a pair exists with both degrees <= max(deg f, 1).
    const int b = std::max(f.degree(), 1);
    v.value = true;
    detail::for_each_poly(r, b, [&](const Poly& g) {
      if (g.degree() < 1) return true;
      for_each_cofactor(g, f, b, [&](const Poly& h) {
        if (h.degree() < 1) return true;
        v.value = false;
        v.witness = product_text(f, g, h);
        return false;
      });
      return v.value;
    });
    return v;
  }
  std::optional<std::string> loose;
  bool certified = false;
  detail::for_each_poly(r, bound, [&](const Poly& g) {
    if (g.is_zero()) return true;
    auto sg = strongly_associate_to_constant(g, bound);
    if (sg.value) return true;
    for_each_cofactor(g, f, bound, [&](const Poly& h) {
      auto sh = strongly_associate_to_constant(h, bound);
      if (sh.value) return true;
      if (sg.tier == Tier::exact && sh.tier == Tier::exact) {
        v.witness = product_text(f, g, h);
        certified = true;
        return false;
      }
      if (!loose) loose = product_text(f, g, h);
      return true;
    });
    return !certified;
  });
  if (certified) return v;
  v.tier = Tier::bounded;
  v.value = !loose;
  if (loose) v.witness = *loose;
  return v;
}

PolyFactorizations atomic_factorizations_poly(const Poly& f, int deg_bound, std::size_t len_cap,
                                              bool allow_zero) {
  if (is_unit_poly(f)) throw Error("'" + f.str() + "' is a unit");
  if (f.is_zero() && !allow_zero) throw Error("the zero subject needs an explicit length cap flag");
  if (len_cap < 1) throw Error("length cap must be at least 1");
  if (is_factor_of_xn(f)) {
    auto out = detail::factorizations_of_xn_factor(f, len_cap);
    out.deg_bound = deg_bound;
    return out;
  }
  return factorizations_by_search(f, deg_bound, len_cap);
}

PolyFactorizations factorizations_by_search(const Poly& f, int deg_bound, std::size_t len_cap) {
  const auto& r = f.ring();
  const int B = deg_bound;
  if (B < f.degree()) throw Error("search bound below polynomial degree");

  // Nonunit divisors of f within the bound, grouped into ~ classes.
  std::vector<Poly> divs;
  detail::for_each_poly(r, B, [&](const Poly& g) {
    if (!is_unit_poly(g) && divides_within(g, f, B)) divs.push_back(g);
    return true;
  });
  std::sort(divs.begin(), divs.end());
  std::vector<std::size_t> cls(divs.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    std::size_t k = 0;
    for (; k < reps.size(); ++k) {
      const Poly& rep = divs[reps[k]];
      if (divides_within(divs[i], rep, B) && divides_within(rep, divs[i], B)) break;
    }
    if (k == reps.size()) reps.push_back(i);
    cls[i] = k;
  }

  // A class is an atom unless a member g = ab with neither a nor b associate to g.
  std::vector<bool> atom(reps.size(), true);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const Poly& g = divs[reps[k]];
    for (std::size_t i = 0; i < divs.size() && atom[k]; ++i) {
      if (cls[i] == k) continue;
      for_each_cofactor(divs[i], g, B, [&](const Poly& b) {
        if (is_unit_poly(b) || divides_within(g, b, B)) return true;
        atom[k] = false;
        return false;
      });
    }
  }
  std::vector<std::vector<Poly>> members(reps.size());
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (atom[cls[i]]) members[cls[i]].push_back(divs[i]);
  }

  struct Suffix {
    std::vector<std::size_t> classes;
    std::vector<Poly> factors;
    Poly unit;
  };
  using Key = std::tuple<std::vector<Elem>, std::size_t, std::size_t>;
  std::map<Key, std::vector<Suffix>> memo;
  bool cap_hit = false;
  const Poly one = Poly::constant(r, r.one());
  // Preferred witness: unit 1, then least total degree, then canonical order.
  auto rank = [&](const Suffix& s) {
    int deg = 0;
    for (const auto& p : s.factors) deg += p.degree();
    return std::tuple<bool, int, const std::vector<Poly>&>(s.unit != one, deg, s.factors);
  };
  auto keep = [&](std::map<std::vector<std::size_t>, Suffix>& found, Suffix s) {
    auto [it, inserted] = found.try_emplace(s.classes, s);
    if (!inserted && rank(s) < rank(it->second)) it->second = std::move(s);
  };
  auto rec = [&](auto&& self, const Poly& t, std::size_t first, std::size_t remaining) -> std::vector<Suffix> {
    Key key{t.coeffs(), first, remaining};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::map<std::vector<std::size_t>, Suffix> found;
    for (std::size_t k = first; k < reps.size(); ++k) {
      for (const auto& a : members[k]) {
        for_each_cofactor(a, t, B, [&](const Poly& h) {
          if (is_unit_poly(h)) {
            keep(found, Suffix{{k}, {a}, h});
            return true;
          }
          if (remaining <= 1) {
            cap_hit = true;
            return true;
          }
          for (auto& s : self(self, h, k, remaining - 1)) {
            s.classes.insert(s.classes.begin(), k);
            s.factors.insert(s.factors.begin(), a);
            keep(found, std::move(s));
          }
          return true;
        });
      }
    }
    std::vector<Suffix> out;
    for (auto& [classes, s] : found) out.push_back(std::move(s));
    memo.emplace(std::move(key), out);
    return out;
  };
  auto suffixes = rec(rec, f, 0, len_cap);

  PolyFactorizations out;
  out.deg_bound = B;
  out.len_cap = len_cap;
  out.cap_hit = cap_hit;
  out.tier = Tier::bounded;
  std::sort(suffixes.begin(), suffixes.end(), [](const Suffix& a, const Suffix& b) {
    return a.classes.size() != b.classes.size() ? a.classes.size() < b.classes.size() : a.classes < b.classes;
  });
  for (auto& s : suffixes) {
    PolyFactorization pf;
    pf.unit = s.unit;
    pf.factors = std::move(s.factors);
    pf.class_id = out.items.size();
    out.items.push_back(std::move(pf));
  }
  out.class_count = out.items.size();
  return out;
}

// ---- non-isomorphic factorizations ----

namespace {

// Over a local ring a regular polynomial is a unit times a monic one, monic factors of
// a monic polynomial may be taken monic, and distinct monic polynomials are not
// associates. Regular factorizations are therefore multisets of monic irreducibles.
std::optional<std::pair<std::vector<Poly>, std::vector<Poly>>> local_monic_collision(const FiniteRing& c,
                                                                                      int bound) {
  std::vector<std::vector<Poly>> monics(bound + 1);
  std::size_t total = 0;
  for (int d = 1; d <= bound; ++d) {
    detail::for_each_monic(c, d, [&](const Poly& p) {
      monics[d].push_back(p);
      return ++total < 2'000'000;
    });
    if (total >= 2'000'000) throw Error("monic search too large on " + c.description());
  }
  std::set<std::vector<Elem>> reducible;
  for (int d1 = 1; d1 <= bound; ++d1) {
    for (int d2 = d1; d1 + d2 <= bound; ++d2) {
      for (const auto& a : monics[d1]) {
        for (const auto& b : monics[d2]) reducible.insert((a * b).coeffs());
      }
    }
  }
  std::vector<Poly> irreducible;
  for (int d = 1; d < bound; ++d) {
    for (const auto& p : monics[d]) {
      if (!reducible.count(p.coeffs())) irreducible.push_back(p);
    }
  }
  std::sort(irreducible.begin(), irreducible.end());
  std::map<std::vector<Elem>, std::vector<Poly>> first;
  std::optional<std::pair<std::vector<Poly>, std::vector<Poly>>> best;
  std::optional<Poly> best_subject;
  std::vector<Poly> stack;
  auto rec = [&](auto&& self, const Poly& product, int degree, std::size_t start) -> void {
    if (stack.size() >= 2) {
      auto [it, inserted] = first.try_emplace(product.coeffs(), stack);
      if (!inserted && it->second != stack && (!best_subject || product < *best_subject)) {
        best_subject = product;
        best = std::pair{it->second, stack};
      }
    }
    for (std::size_t k = start; k < irreducible.size(); ++k) {
      if (degree + irreducible[k].degree() > bound) continue;
      stack.push_back(irreducible[k]);
      self(self, product * irreducible[k], degree + irreducible[k].degree(), k);
      stack.pop_back();
    }
  };
  rec(rec, Poly::constant(c, c.one()), 0, 0);
  return best;
}

PolyFactorization lift_factorization(const FiniteRing& r, std::size_t i, const std::vector<Poly>& parts,
                                     std::size_t class_id) {
  PolyFactorization pf;
  pf.unit = Poly::constant(r, r.one());
  for (const auto& q : parts) pf.factors.push_back(detail::embed_component(r, i, q));
  std::sort(pf.factors.begin(), pf.factors.end());
  pf.class_id = class_id;
  return pf;
}

}  // namespace

std::optional<FactorizationPair> find_nonisomorphic_factorizations(const FiniteRing& r, int deg_bound,
                                                                   bool regular_only) {
  std::optional<FactorizationPair> best;
  if (deg_bound >= 2) {
    const auto& comps = r.local_components();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto hit = local_monic_collision(*comps[i].ring, deg_bound);
      if (!hit) continue;
      FactorizationPair pair;
      pair.first = lift_factorization(r, i, hit->first, 0);
      pair.second = lift_factorization(r, i, hit->second, 1);
      pair.subject = Poly::constant(r, r.one());
      for (const auto& q : pair.first.factors) pair.subject = pair.subject * q;
      if (!best || pair.subject < best->subject) best = std::move(pair);
    }
  }
  if (best || regular_only) return best;

  std::vector<Poly> subjects;
  std::size_t count = 0;
  detail::for_each_poly(r, deg_bound, [&](const Poly& f) {
    if (++count > 20'000) throw Error("zero-divisor subject search too large on " + r.description());
    if (!f.is_zero() && classify_poly(f).zero_divisor) subjects.push_back(f);
    return true;
  });
  std::sort(subjects.begin(), subjects.end());
  const std::size_t cap = default_len_cap(r);
  for (const auto& f : subjects) {
    auto facs = factorizations_by_search(f, deg_bound, cap);
    if (facs.class_count < 2) continue;
    return FactorizationPair{f, facs.items[0], facs.items[1]};
  }
  return std::nullopt;
}

// ---- U-decompositions ----

bool in_u(const FiniteRing& r, Elem s, Elem x) { return r.ideal_id(r.mul(s, x)) == r.ideal_id(x); }

std::string UDecomposition::str(const FiniteRing& r) const {
  std::string s;
  for (Elem a : irrelevant) s += (s.empty() ? "" : "*") + r.label(a);
  s += "[";
  for (std::size_t i = 0; i < relevant.size(); ++i) s += (i ? "*" : "") + r.label(relevant[i]);
  return s + "]";
}

namespace {

Elem product_of(const FiniteRing& r, const std::vector<Elem>& xs) {
  Elem p = r.one();
  for (Elem x : xs) p = r.mul(p, x);
  return p;
}

std::vector<std::uint32_t> class_key(const FiniteRing& r, const std::vector<Elem>& xs) {
  std::vector<std::uint32_t> k;
  for (Elem x : xs) k.push_back(r.ideal_id(x));
  std::sort(k.begin(), k.end());
  return k;
}

}  // namespace

UDecomposition u_decomposition(const FiniteRing& r, Elem a) {
  if (r.is_unit(a)) throw Error("'" + r.label(a) + "' is a unit");
  auto facs = atomic_factorizations_elem(r, a, default_len_cap(r)).factorizations;
  if (facs.empty()) throw Error("no atomic factorization of '" + r.label(a) + "' within the length cap");
  UDecomposition d;
  d.subject = a;
  d.relevant = facs.front();
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t j = 0; j < d.relevant.size(); ++j) {
      auto others = d.relevant;
      others.erase(others.begin() + j);
      if (in_u(r, d.relevant[j], product_of(r, others))) {
        d.irrelevant.push_back(d.relevant[j]);
        d.relevant = std::move(others);
        moved = true;
        break;
      }
    }
  }
  return d;
}

std::vector<UDecomposition> all_u_decompositions(const FiniteRing& r, Elem a, std::size_t len_cap) {
  if (r.is_unit(a)) throw Error("'" + r.label(a) + "' is a unit");
  std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, UDecomposition> found;
  for (const auto& fac : atomic_factorizations_elem(r, a, len_cap).factorizations) {
    const std::size_t k = fac.size();
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
      UDecomposition d;
      d.subject = a;
      for (std::size_t i = 0; i < k; ++i) ((mask >> i) & 1 ? d.relevant : d.irrelevant).push_back(fac[i]);
      const Elem p = product_of(r, d.relevant);
      bool ok = std::all_of(d.irrelevant.begin(), d.irrelevant.end(), [&](Elem x) { return in_u(r, x, p); });
      for (std::size_t j = 0; ok && j < d.relevant.size(); ++j) {
        auto others = d.relevant;
        others.erase(others.begin() + j);
        ok = !in_u(r, d.relevant[j], product_of(r, others));
      }
      if (ok) found.try_emplace({class_key(r, d.relevant), class_key(r, d.irrelevant)}, std::move(d));
    }
  }
  std::vector<UDecomposition> out;
  for (auto& [key, d] : found) out.push_back(std::move(d));
  return out;
}

FletcherReport is_fletcher_ufr(const FiniteRing& r) {
  FletcherReport rep;
  rep.structure = true;
  for (const auto& c : r.local_components()) {
    const auto& s = c.ring->structure();
    rep.structure = rep.structure && (s.is_field || s.is_spir);
  }
  rep.value = true;
  const std::size_t cap = default_len_cap(r);
  for (Elem a = 0; a < r.size() && rep.value; ++a) {
    if (r.is_unit(a)) continue;
    std::set<std::vector<std::uint32_t>> relevant;
    for (const auto& d : all_u_decompositions(r, a, cap)) relevant.insert(class_key(r, d.relevant));
    if (relevant.size() != 1) {
      rep.value = false;
      rep.witness = a;
    }
  }
  if (rep.value != rep.structure) {
    throw InconsistencyError("fletcher_ufr", r.description(),
                             rep.witness ? "element " + r.label(*rep.witness) : "no U-decomposition witness");
  }
  return rep;
}

// ---- weakly prime probe ----

std::vector<WeaklyPrimeEntry> probe_weakly_prime_lift(const FiniteRing& r, int deg_bound) {
  std::vector<WeaklyPrimeEntry> out;
  const std::size_t width = static_cast<std::size_t>(deg_bound) + 1;
  for (Elem a = 0; a < r.size(); ++a) {
    auto ec = classify_element(r, a);
    if (!ec.weakly_prime) continue;
    WeaklyPrimeEntry e;
    e.element = a;
    e.bound = deg_bound;
    e.prime_in_ring = ec.prime;
    if (ec.prime) {
      // R[X]/(a) = (R/aR)[X] is a domain, so a stays prime.
      out.push_back(e);
      continue;
    }
    std::vector<bool> in_ra(r.size(), false);
    for (Elem x : r.principal_ideal(a)) in_ra[x] = true;
    // Coefficient vectors of every f of degree <= bound that a does not divide.
    std::vector<std::vector<Elem>> polys;
    detail::for_each_poly(r, deg_bound, [&](const Poly& f) {
      std::vector<Elem> c(width, 0);
      std::copy(f.coeffs().begin(), f.coeffs().end(), c.begin());
      if (!std::all_of(c.begin(), c.end(), [&](Elem x) { return in_ra[x]; })) polys.push_back(std::move(c));
      return true;
    });
    std::vector<Elem> prod(2 * width - 1);
    for (std::size_t i = 0; i < polys.size() && !e.found; ++i) {
      for (std::size_t j = i; j < polys.size(); ++j) {
        std::fill(prod.begin(), prod.end(), 0);
        for (std::size_t x = 0; x < width; ++x) {
          if (polys[i][x] == 0) continue;
          for (std::size_t y = 0; y < width; ++y) prod[x + y] = r.add(prod[x + y], r.mul(polys[i][x], polys[j][y]));
        }
        bool zero = std::all_of(prod.begin(), prod.end(), [](Elem x) { return x == 0; });
        if (zero || !std::all_of(prod.begin(), prod.end(), [&](Elem x) { return in_ra[x]; })) continue;
        e.found = true;
        e.witness = std::pair{Poly(r, polys[i]), Poly(r, polys[j])};
        break;
      }
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace zdring
