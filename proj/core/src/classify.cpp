#include "zdring/classify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "search.hpp"
#include "zdring/element.hpp"
#include "zdring/error.hpp"

namespace zdring {

namespace {

struct Shape {
  bool local = false;
  bool field = false;
  bool spir = false;
  bool local_m2_zero = false;
  bool product_of_fields = true;
  bool product_of_fields_and_spirs = true;
  bool copies_of_z2 = true;
  bool has_field_component = false;
};

bool m_squared_zero(const FiniteRing& r) {
  for (Elem x = 0; x < r.size(); ++x) {
    if (r.is_unit(x)) continue;
    for (Elem y = 0; y < r.size(); ++y) {
      if (!r.is_unit(y) && r.mul(x, y) != 0) return false;
    }
  }
  return true;
}

Shape shape_of(const FiniteRing& r) {
  Shape s;
  const auto& st = r.structure();
  s.local = st.is_local;
  s.field = st.is_field;
  s.spir = st.is_spir;
  s.local_m2_zero = s.local && m_squared_zero(r);
  for (const auto& c : r.local_components()) {
    const auto& cs = c.ring->structure();
    s.product_of_fields = s.product_of_fields && cs.is_field;
    s.product_of_fields_and_spirs = s.product_of_fields_and_spirs && (cs.is_field || cs.is_spir);
    s.copies_of_z2 = s.copies_of_z2 && cs.is_field && c.ring->size() == 2;
    s.has_field_component = s.has_field_component || cs.is_field;
  }
  return s;
}

std::string join_labels(const FiniteRing& r, const std::vector<Elem>& xs) {
  std::string s;
  for (Elem x : xs) s += (s.empty() ? "" : "*") + r.label(x);
  return s;
}

// Every nonzero nonunit is a product of elements satisfying pred.
std::optional<Elem> atomicity_gap(const FiniteRing& r, const std::function<bool(Elem)>& pred) {
  auto closure = product_closure(r, pred);
  for (Elem a = 1; a < r.size(); ++a) {
    if (!r.is_unit(a) && !closure[a]) return a;
  }
  return std::nullopt;
}

// Two atomic factorizations of a nonunit that are not weakly homomorphic: some atom f
// occurs in one while no factor of the other is divisible by f.
std::optional<std::string> weak_hom_gap(const FiniteRing& r, const std::vector<bool>& atom,
                                        bool include_zero) {
  auto all = product_closure(r, [&](Elem x) { return bool(atom[x]); });
  for (Elem f = 0; f < r.size(); ++f) {
    if (!atom[f]) continue;
    auto others = product_closure(r, [&](Elem g) { return atom[g] && !r.divides(f, g); });
    for (Elem x = include_zero ? 0 : 1; x < r.size(); ++x) {
      if (!others[x]) continue;
      if (x == f) return r.label(x) + " has factorizations with and without a multiple of " + r.label(f);
      for (Elem y = 0; y < r.size(); ++y) {
        if (all[y] && r.mul(f, y) == x) {
          return r.label(x) + " = " + r.label(f) + "*" + r.label(y) +
                 " and a product of atoms not divisible by " + r.label(f);
        }
      }
    }
  }
  return std::nullopt;
}

// Atomic factorizations (multisets of atoms) of bounded length, with the reduction
// properties of each.
struct Multiset {
  std::vector<Elem> factors;
  Elem product = 0;
  bool reduced = false, strongly_reduced = false, mu_reduced = false, strongly_mu_reduced = false;
};

std::vector<Multiset> atom_multisets(const FiniteRing& r, const std::vector<bool>& atom, std::size_t cap) {
  std::vector<Elem> atoms;
  for (Elem a = 0; a < r.size(); ++a) {
    if (atom[a]) atoms.push_back(a);
  }
  std::vector<Multiset> out;
  std::vector<Elem> stack;
  auto rec = [&](auto&& self, std::size_t start, Elem product) -> void {
    if (!stack.empty()) {
      Multiset m;
      m.factors = stack;
      m.product = product;
      const std::size_t n = stack.size();
      m.reduced = m.strongly_reduced = m.mu_reduced = m.strongly_mu_reduced = true;
      for (std::uint32_t mask = 0; mask + 1 < (1u << n); ++mask) {
        Elem sub = r.one();
        for (std::size_t i = 0; i < n; ++i) {
          if ((mask >> i) & 1) sub = r.mul(sub, stack[i]);
        }
        const bool drop_one = std::popcount(mask) + 1 == static_cast<int>(n);
        const bool equal = sub == product;
        const bool strong = r.orbit_id(sub) == r.orbit_id(product);
        if (equal) {
          m.strongly_reduced = false;
          if (drop_one) m.reduced = false;
        }
        if (strong) {
          m.strongly_mu_reduced = false;
          if (drop_one) m.mu_reduced = false;
        }
      }
      out.push_back(std::move(m));
    }
    if (stack.size() == cap) return;
    for (std::size_t k = start; k < atoms.size(); ++k) {
      stack.push_back(atoms[k]);
      self(self, k, r.mul(product, atoms[k]));
      stack.pop_back();
    }
  };
  rec(rec, 0, r.one());
  return out;
}

std::vector<std::uint32_t> ideal_key(const FiniteRing& r, const std::vector<Elem>& xs) {
  std::vector<std::uint32_t> k;
  for (Elem x : xs) k.push_back(r.ideal_id(x));
  std::sort(k.begin(), k.end());
  return k;
}

// Two qualifying factorizations of one subject that are not isomorphic. Subjects are
// elements (mu = false) or unit orbits (mu = true).
std::optional<std::string> uniqueness_gap(const FiniteRing& r, const std::vector<Multiset>& ms,
                                          bool Multiset::*qualifies, bool mu, bool include_zero) {
  std::map<std::uint32_t, const Multiset*> first;
  for (const auto& m : ms) {
    if (!(m.*qualifies) || r.is_unit(m.product)) continue;
    if (m.product == 0 && !include_zero) continue;
    const std::uint32_t subject = mu ? r.orbit_id(m.product) : m.product;
    auto [it, inserted] = first.try_emplace(subject, &m);
    if (inserted || ideal_key(r, it->second->factors) == ideal_key(r, m.factors)) continue;
    return r.label(it->second->product) + " = " + join_labels(r, it->second->factors) + " and " +
           r.label(m.product) + " = " + join_labels(r, m.factors);
  }
  return std::nullopt;
}

RingFlag make_flag(std::string name, bool structure, std::optional<std::string> gap) {
  RingFlag f;
  f.name = std::move(name);
  f.definition = !gap;
  f.structure = structure;
  if (gap) f.witness = *gap;
  return f;
}

}  // namespace

const RingFlag& RingClassReport::flag(std::string_view name) const {
  for (const auto& f : flags) {
    if (f.name == name) return f;
  }
  throw Error("unknown ring flag '" + std::string(name) + "'");
}

std::vector<std::string> RingClassReport::disagreements() const {
  std::vector<std::string> out;
  for (const auto& f : flags) {
    if (f.definition != f.structure) out.push_back(f.name);
  }
  return out;
}

RingClassReport ring_class_deciders(const FiniteRing& r) {
  const Shape s = shape_of(r);
  const auto classes = classify_all(r);
  RingClassReport rep;
  rep.field = s.field;
  rep.spir = s.spir;
  rep.local_m2_zero = s.local_m2_zero;
  rep.product_of_fields = s.product_of_fields;
  rep.product_of_fields_and_spirs = s.product_of_fields_and_spirs;
  rep.len_cap = default_len_cap(r);

  auto mask = [&](bool ElementClass::*member) {
    std::vector<bool> m(r.size());
    for (Elem a = 0; a < r.size(); ++a) m[a] = classes[a].*member;
    return m;
  };
  const auto atom = mask(&ElementClass::irreducible);
  auto gap_for = [&](bool ElementClass::*member) -> std::optional<std::string> {
    auto m = mask(member);
    if (auto a = atomicity_gap(r, [&](Elem x) { return bool(m[x]); })) {
      return r.label(*a) + " is not a product of such elements";
    }
    return std::nullopt;
  };

  // Every finite ring satisfies ACCP, and its local factors are presimplifiable, so
  // all irreducibility notions agree on nonzero elements of each factor. Products
  // lose very strong atomicity exactly when a factor is a field.
  auto& flags = rep.flags;
  flags.push_back(make_flag("atomic", true, gap_for(&ElementClass::irreducible)));
  flags.push_back(make_flag("strongly_atomic", true, gap_for(&ElementClass::strongly_irreducible)));
  flags.push_back(make_flag("m_atomic", true, gap_for(&ElementClass::m_irreducible)));
  flags.push_back(make_flag("very_strongly_atomic", s.local || !s.has_field_component,
                            gap_for(&ElementClass::very_strongly_irreducible)));
  flags.push_back(make_flag("p_atomic", s.product_of_fields_and_spirs, gap_for(&ElementClass::prime)));
  flags.push_back(make_flag("accp", true, std::nullopt));
  {
    std::optional<std::string> gap;
    if (auto w = presimplifiable_witness(r)) {
      gap = r.label(w->first) + " = " + r.label(w->first) + "*" + r.label(w->second);
    }
    flags.push_back(make_flag("presimplifiable", s.local, gap));
  }

  const bool atomic = flags.front().definition;
  const auto ms = atom_multisets(r, atom, rep.len_cap);

  {
    std::optional<std::string> gap;
    if (!atomic) gap = flags.front().witness;
    for (Elem a = 1; a < r.size() && !gap; ++a) {
      if (r.is_unit(a)) continue;
      auto facs = atomic_factorizations_elem(r, a, rep.len_cap).factorizations;
      if (facs.size() > 1) {
        gap = r.label(a) + " = " + join_labels(r, facs[0]) + " = " + join_labels(r, facs[1]);
      }
    }
    flags.push_back(make_flag("ufr", s.local && (s.field || s.spir || s.local_m2_zero), gap));
  }
  {
    auto gap = atomic ? weak_hom_gap(r, atom, false) : flags.front().witness;
    flags.push_back(make_flag("weak_ufr", s.product_of_fields_and_spirs || s.local_m2_zero, gap));
  }
  {
    std::optional<std::string> gap = atomic ? weak_hom_gap(r, atom, true) : flags.front().witness;
    auto closure = product_closure(r, [&](Elem x) { return bool(atom[x]); });
    if (!gap && !closure[0] && !atom[0]) gap = "0 is not a product of atoms";
    flags.push_back(make_flag("fletcher_ufr", s.product_of_fields_and_spirs, gap));
  }
  {
    // Regular elements of a finite ring are units, so the condition is vacuous.
    std::optional<std::string> gap;
    for (Elem a = 0; a < r.size() && !gap; ++a) {
      if (!r.is_regular(a) || r.is_unit(a)) continue;
      if (atomic_factorizations_elem(r, a, rep.len_cap).factorizations.size() != 1) {
        gap = r.label(a) + " is a regular nonunit without unique factorization";
      }
    }
    flags.push_back(make_flag("factorial", true, gap));
  }

  const bool mu_structure = s.product_of_fields_and_spirs;
  const bool weak_mu_structure = s.product_of_fields_and_spirs || s.local_m2_zero;
  const bool reduced_structure = s.field || s.spir || s.copies_of_z2;
  const bool weak_reduced_structure = (s.local && (s.field || s.spir || s.local_m2_zero)) || s.copies_of_z2;
  struct Variant {
    const char* name;
    bool Multiset::*member;
    bool mu;
    bool include_zero;
    bool structure;
  };
  const Variant variants[] = {
      {"mu_reduced_ufr", &Multiset::mu_reduced, true, true, mu_structure},
      {"strongly_mu_reduced_ufr", &Multiset::strongly_mu_reduced, true, true, mu_structure},
      {"reduced_ufr", &Multiset::reduced, false, true, reduced_structure},
      {"strongly_reduced_ufr", &Multiset::strongly_reduced, false, true, reduced_structure},
      {"weak_mu_reduced_ufr", &Multiset::mu_reduced, true, false, weak_mu_structure},
      {"weak_strongly_mu_reduced_ufr", &Multiset::strongly_mu_reduced, true, false, weak_mu_structure},
      {"weak_reduced_ufr", &Multiset::reduced, false, false, weak_reduced_structure},
      {"weak_strongly_reduced_ufr", &Multiset::strongly_reduced, false, false, weak_reduced_structure},
  };
  for (const auto& v : variants) {
    auto gap = atomic ? uniqueness_gap(r, ms, v.member, v.mu, v.include_zero) : flags.front().witness;
    flags.push_back(make_flag(v.name, v.structure, gap));
  }
  return rep;
}

RingClassReport classify_ring(const FiniteRing& r) {
  auto rep = ring_class_deciders(r);
  for (const auto& f : rep.flags) {
    if (f.definition != f.structure) {
      throw InconsistencyError(f.name, r.description(),
                               f.witness.empty() ? "definition holds, structure predicts failure" : f.witness);
    }
  }
  // The U-decomposition route decides the same property and checks itself.
  if (is_fletcher_ufr(r).value != rep.value("fletcher_ufr")) {
    throw InconsistencyError("fletcher_ufr", r.description(), "U-decomposition search disagrees");
  }
  return rep;
}

// ---- R[X] ----

const char* provenance_name(Provenance p) { return p == Provenance::theorem ? "theorem" : "bounded-witness"; }

const PolyFlag& PolyRingClassReport::flag(std::string_view name) const {
  for (const auto& f : flags) {
    if (f.name == name) return f;
  }
  throw Error("unknown polynomial ring flag '" + std::string(name) + "'");
}

std::optional<FfrConditions> ffr_conditions(const FiniteRing& r) {
  if (!r.is_local()) return std::nullopt;
  // layer[x] = i with x in M^i \ M^(i+1); zero gets the index n with M^n = 0.
  std::vector<Elem> m;
  for (Elem x = 0; x < r.size(); ++x) {
    if (!r.is_unit(x)) m.push_back(x);
  }
  std::vector<std::size_t> layer(r.size(), 0);
  std::vector<Elem> power = m;
  std::size_t n = 1;
  for (Elem x : m) layer[x] = 1;
  while (!(power.size() == 1 && power[0] == 0)) {
    power = r.ideal_product(power, m);
    ++n;
    for (Elem x : power) layer[x] = n;
  }
  FfrConditions c;
  c.n = n;
  c.a = true;
  for (Elem x : m) {
    for (Elem y : m) {
      if (x == 0 || y == 0 || layer[x] + layer[y] >= n) continue;
      if (layer[r.mul(x, y)] != layer[x] + layer[y]) {
        c.a = false;
        if (c.witness.empty()) c.witness = "(a) fails at " + r.label(x) + "*" + r.label(y);
      }
    }
  }
  std::vector<Elem> m2 = r.ideal_product(m, m);
  std::sort(m2.begin(), m2.end());
  c.b = true;
  for (Elem a : m) {
    if (layer[a] != 1) continue;
    std::vector<Elem> am;
    for (Elem y : m) am.push_back(r.mul(a, y));
    std::sort(am.begin(), am.end());
    am.erase(std::unique(am.begin(), am.end()), am.end());
    if (am != m2) {
      c.b = false;
      if (c.witness.empty()) c.witness = "(b) fails at " + r.label(a);
    }
  }
  return c;
}

PolyRingClassReport classify_poly_ring(const FiniteRing& r) {
  const Shape s = shape_of(r);
  PolyRingClassReport rep;
  auto add = [&](std::string name, bool value, Provenance p, std::string witness) {
    rep.flags.push_back(PolyFlag{std::move(name), value, p, std::move(witness)});
  };

  // Nontrivial idempotent e: e = e^k for every k, so lengths of e are unbounded.
  std::string idempotent_witness;
  for (Elem e : r.structure().idempotents) {
    if (e != 0 && e != r.one()) {
      idempotent_witness = r.label(e) + " = " + r.label(e) + "^k for every k";
      break;
    }
  }

  // Two non-isomorphic factorizations of a regular polynomial exist exactly when
  // some local component is not a field.
  std::string regular_witness;
  if (!s.product_of_fields) {
    auto pair = find_nonisomorphic_factorizations(r, 2, true);
    if (!pair) throw Error("no regular factorization witness on " + r.description());
    regular_witness = pair->subject.str() + " = " + pair->first.str() + " = " + pair->second.str();
  }
  // Over a product with n > 1 factors, e = e * (X in another coordinate) for the
  // idempotent e vanishing there.
  std::string product_witness;
  if (r.local_components().size() > 1) {
    const auto& comps = r.local_components();
    Poly e = Poly::constant(r, r.sub(r.one(), comps[0].idempotent));
    Poly x0 = detail::embed_component(r, 0, Poly::x(*comps[0].ring));
    product_witness = e.str() + " = (" + e.str() + ")*(" + x0.str() + ")";
  }

  const auto nonfield_witness = [&] {
    return !regular_witness.empty() ? regular_witness : product_witness;
  };
  const auto provenance_of = [](bool value) { return value ? Provenance::theorem : Provenance::bounded_witness; };

  add("ufr", s.field, provenance_of(s.field), s.field ? "" : nonfield_witness());
  for (const char* name : {"factorial", "weak_ufr", "fletcher_ufr", "mu_reduced_ufr", "strongly_mu_reduced_ufr",
                           "weak_mu_reduced_ufr", "weak_strongly_mu_reduced_ufr"}) {
    add(name, s.product_of_fields, provenance_of(s.product_of_fields), regular_witness);
  }
  {
    const bool v = s.field || s.copies_of_z2;
    std::string w = regular_witness;
    if (!v && w.empty()) {
      // A product of fields with a component whose unit group is nontrivial:
      // e = (e + (u - 1) e_i)(e + (u^-1 - 1) e_i) for the idempotent e vanishing at i.
      const auto& comps = r.local_components();
      for (std::size_t i = 0; i < comps.size() && w.empty(); ++i) {
        const auto& c = *comps[i].ring;
        if (c.size() <= 2) continue;
        const std::size_t j = (i + 1) % comps.size();
        Elem u = 0;
        for (Elem x = 0; x < c.size(); ++x) {
          if (c.is_unit(x) && x != c.one()) {
            u = x;
            break;
          }
        }
        const Elem e = r.sub(r.one(), comps[j].idempotent);
        const Elem ui = comps[i].embedding[u];
        const Elem vi = comps[i].embedding[*c.inverse(u)];
        const Elem f = r.add(r.sub(e, comps[i].idempotent), ui);
        const Elem g = r.add(r.sub(e, comps[i].idempotent), vi);
        w = r.label(e) + " = (" + r.label(f) + ")*(" + r.label(g) + ")";
      }
    }
    for (const char* name : {"reduced_ufr", "strongly_reduced_ufr", "weak_reduced_ufr", "weak_strongly_reduced_ufr"}) {
      add(name, v, provenance_of(v), v ? "" : w);
    }
  }

  const bool bfr = s.local;
  add("bfr", bfr, provenance_of(bfr), idempotent_witness);

  if (s.field) {
    add("hfr", true, Provenance::theorem, "");
  } else if (!s.local) {
    add("hfr", false, Provenance::bounded_witness, idempotent_witness);
  } else {
    rep.hfr_witness = hfr_witness(r);
    if (!rep.hfr_witness) throw Error("no nilpotent atom witness on " + r.description());
    const auto& h = *rep.hfr_witness;
    std::string w = h.subject.str() + " =";
    for (std::size_t i = 0; i < h.shorter.size(); ++i) w += (i ? "*(" : " (") + h.shorter[i].str() + ")";
    w += " with lengths " + std::to_string(h.shorter.size()) + " and " + std::to_string(h.longer.size());
    add("hfr", false, Provenance::bounded_witness, w);
  }

  rep.ffr_conditions = ffr_conditions(r);
  if (s.field) {
    add("ffr", true, Provenance::theorem, "");
  } else if (!s.local) {
    add("ffr", false, Provenance::bounded_witness, idempotent_witness);
  } else {
    const auto& c = *rep.ffr_conditions;
    add("ffr", c.a && c.b, Provenance::theorem, c.witness);
  }
  // A Noetherian base gives a Noetherian, hence atomic, polynomial ring.
  add("atomic", true, Provenance::theorem, "");
  return rep;
}

}  // namespace zdring
