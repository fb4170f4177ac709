#include "zdring/element.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "zdring/error.hpp"

namespace zdring {

namespace {

void check_ring(const FiniteRing& r, RingElement a) {
  if (a.ring_id != r.id() || a.index >= r.size()) throw RingMismatch();
}

bool assoc(const FiniteRing& r, Elem a, Elem b) { return r.ideal_id(a) == r.ideal_id(b); }

bool very_strong(const FiniteRing& r, Elem a, Elem b, bool regular_only) {
  if (!assoc(r, a, b)) return false;
  if (a == 0 && b == 0) return true;
  if (a == 0) return false;
  for (Elem x = 0; x < r.size(); ++x) {
    if (r.mul(x, b) != a) continue;
    if (regular_only ? !r.is_regular(x) : !r.is_unit(x)) return false;
  }
  return true;
}

// a = bc forces rel(a, b) or rel(a, c).
template <class Rel>
bool irreducible_by(const FiniteRing& r, Elem a, Rel rel) {
  if (r.is_unit(a)) return false;
  for (Elem b = 0; b < r.size(); ++b) {
    for (Elem c = b; c < r.size(); ++c) {
      if (r.mul(b, c) == a && !rel(a, b) && !rel(a, c)) return false;
    }
  }
  return true;
}

}  // namespace

AssocVector associate_vector(const FiniteRing& r, Elem a, Elem b) {
  AssocVector v;
  v.assoc = assoc(r, a, b);
  v.strong_assoc = r.orbit_id(a) == r.orbit_id(b);
  v.very_strong_assoc = very_strong(r, a, b, false);
  bool a_from_b = false, b_from_a = false;
  for (Elem x = 0; x < r.size(); ++x) {
    if (!r.is_regular(x)) continue;
    a_from_b = a_from_b || r.mul(x, b) == a;
    b_from_a = b_from_a || r.mul(x, a) == b;
  }
  v.strong_regular_assoc = a_from_b && b_from_a;
  v.very_strong_regular_assoc = very_strong(r, a, b, true);
  return v;
}

AssocVector associate_vector(const FiniteRing& r, RingElement a, RingElement b) {
  check_ring(r, a);
  check_ring(r, b);
  return associate_vector(r, a.index, b.index);
}

ElementClass classify_element(const FiniteRing& r, Elem a) {
  ElementClass c;
  const std::size_t n = r.size();
  c.unit = r.is_unit(a);
  c.regular = r.is_regular(a);
  c.zero_divisor = r.is_zero_divisor(a);
  c.nilpotent = r.is_nilpotent(a);
  c.idempotent = r.is_idempotent(a);
  c.presimplifiable = true;
  for (Elem y = 0; y < n; ++y) {
    if (r.mul(a, y) == a && a != 0 && !r.is_unit(y)) c.presimplifiable = false;
  }
  if (c.unit) return c;

  c.irreducible = irreducible_by(r, a, [&](Elem x, Elem y) { return assoc(r, x, y); });
  c.strongly_irreducible =
      irreducible_by(r, a, [&](Elem x, Elem y) { return r.orbit_id(x) == r.orbit_id(y); });
  c.very_strongly_irreducible =
      irreducible_by(r, a, [&](Elem x, Elem y) { return very_strong(r, x, y, false); });

  c.m_irreducible = true;
  for (Elem x = 0; x < n && c.m_irreducible; ++x) {
    if (!r.is_unit(x) && r.ideal_contained(a, x) && !r.ideal_contained(x, a)) {
      c.m_irreducible = false;
    }
  }

  c.prime = true;
  c.weakly_prime = a != 0;
  for (Elem x = 0; x < n; ++x) {
    if (r.divides(a, x)) continue;
    for (Elem y = x; y < n; ++y) {
      if (r.divides(a, y)) continue;
      Elem xy = r.mul(x, y);
      if (!r.divides(a, xy)) continue;
      c.prime = false;
      if (xy != 0) c.weakly_prime = false;
    }
  }
  return c;
}

ElementClass classify_element(const FiniteRing& r, RingElement a) {
  check_ring(r, a);
  return classify_element(r, a.index);
}

std::vector<ElementClass> classify_all(const FiniteRing& r) {
  std::vector<ElementClass> out(r.size());
  for (Elem a = 0; a < r.size(); ++a) out[a] = classify_element(r, a);
  return out;
}

namespace {
std::optional<std::pair<Elem, Elem>> presimplifiable_scan(const FiniteRing& r, bool regular) {
  for (Elem x = 1; x < r.size(); ++x) {
    for (Elem y = 0; y < r.size(); ++y) {
      if (r.mul(x, y) == x && !(regular ? r.is_regular(y) : r.is_unit(y))) {
        return std::pair{x, y};
      }
    }
  }
  return std::nullopt;
}
}  // namespace

std::optional<std::pair<Elem, Elem>> presimplifiable_witness(const FiniteRing& r) {
  return presimplifiable_scan(r, false);
}

std::optional<std::pair<Elem, Elem>> weakly_presimplifiable_witness(const FiniteRing& r) {
  return presimplifiable_scan(r, true);
}

bool is_presimplifiable_ring(const FiniteRing& r) { return !presimplifiable_witness(r); }

bool is_weakly_presimplifiable_ring(const FiniteRing& r) {
  return !weakly_presimplifiable_witness(r);
}

std::vector<bool> product_closure(const FiniteRing& r, const std::function<bool(Elem)>& pred) {
  std::vector<Elem> gens;
  for (Elem a = 0; a < r.size(); ++a) {
    if (pred(a)) gens.push_back(a);
  }
  std::vector<bool> in(r.size(), false);
  std::vector<Elem> frontier;
  for (Elem g : gens) {
    if (!in[g]) {
      in[g] = true;
      frontier.push_back(g);
    }
  }
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (Elem x : frontier) {
      for (Elem g : gens) {
        Elem p = r.mul(x, g);
        if (!in[p]) {
          in[p] = true;
          next.push_back(p);
        }
      }
    }
    frontier = std::move(next);
  }
  return in;
}

std::size_t default_len_cap(const FiniteRing& r) {
  return r.nilpotency_index() + r.local_components().size() + 2;
}

ElemFactorizations factorizations_over(const FiniteRing& r, Elem a, std::size_t len_cap,
                                       const std::vector<bool>& is_atom) {
  if (r.is_unit(a)) throw Error("'" + r.label(a) + "' is a unit");
  ElemFactorizations out;
  out.len_cap = len_cap;
  for (Elem y = 0; y < r.size(); ++y) {
    if (!r.is_unit(y) && r.mul(a, y) == a) out.extendable = true;
  }

  // Atom classes up to ~, ordered by smallest member.
  std::map<std::uint32_t, std::vector<Elem>> by_ideal;
  for (Elem x = 0; x < r.size(); ++x) {
    if (is_atom[x]) by_ideal[r.ideal_id(x)].push_back(x);
  }
  std::vector<std::vector<Elem>> classes;
  for (auto& [id, members] : by_ideal) classes.push_back(std::move(members));
  std::sort(classes.begin(), classes.end());

  // Reachable partial products, each with its first-found witness sequence.
  using Frontier = std::map<Elem, std::vector<Elem>>;
  auto alive = [&](const Frontier& f) {
    return std::any_of(f.begin(), f.end(), [&](const auto& kv) { return r.divides(kv.first, a); });
  };
  auto rec = [&](auto&& self, std::size_t first_class, const Frontier& current,
                 std::size_t length) -> void {
    for (std::size_t k = first_class; k < classes.size(); ++k) {
      Frontier next;
      for (const auto& [value, witness] : current) {
        for (Elem m : classes[k]) {
          Elem p = r.mul(value, m);
          if (next.count(p)) continue;
          auto w = witness;
          w.push_back(m);
          next.emplace(p, std::move(w));
        }
      }
      if (!alive(next)) continue;
      if (auto it = next.find(a); it != next.end()) out.factorizations.push_back(it->second);
      if (length + 1 == len_cap) {
        out.cap_hit = true;
        continue;
      }
      self(self, k, next, length + 1);
    }
  };
  if (len_cap > 0) rec(rec, 0, Frontier{{r.one(), {}}}, 0);
  std::sort(out.factorizations.begin(), out.factorizations.end(),
            [](const auto& x, const auto& y) {
              return x.size() != y.size() ? x.size() < y.size() : x < y;
            });
  return out;
}

ElemFactorizations atomic_factorizations_elem(const FiniteRing& r, Elem a, std::size_t len_cap) {
  if (len_cap < 1) throw Error("length cap must be at least 1");
  std::vector<bool> atoms(r.size(), false);
  for (Elem x = 0; x < r.size(); ++x) atoms[x] = classify_element(r, x).irreducible;
  return factorizations_over(r, a, len_cap, atoms);
}

}  // namespace zdring
