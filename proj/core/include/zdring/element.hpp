#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "zdring/ring.hpp"

namespace zdring {

// Associate relations between two elements, each decided from its definition.
struct AssocVector {
  bool assoc = false;                      // Ra = Rb
  bool strong_assoc = false;               // a = ub, u a unit
  bool very_strong_assoc = false;          // a ~ b and a = rb forces r a unit (a != 0)
  bool strong_regular_assoc = false;       // a = rb, b = sa with r, s regular
  bool very_strong_regular_assoc = false;  // a ~ b and a = rb forces r regular (a != 0)
  bool operator==(const AssocVector&) const = default;
};

struct ElementClass {
  bool unit = false;
  bool regular = false;
  bool zero_divisor = false;
  bool nilpotent = false;
  bool idempotent = false;
  bool presimplifiable = false;
  bool irreducible = false;
  bool strongly_irreducible = false;
  bool very_strongly_irreducible = false;
  bool m_irreducible = false;
  bool prime = false;
  bool weakly_prime = false;
  bool operator==(const ElementClass&) const = default;
};

AssocVector associate_vector(const FiniteRing& r, Elem a, Elem b);
AssocVector associate_vector(const FiniteRing& r, RingElement a, RingElement b);

ElementClass classify_element(const FiniteRing& r, Elem a);
ElementClass classify_element(const FiniteRing& r, RingElement a);
// classify_element for every element, indexed by element.
std::vector<ElementClass> classify_all(const FiniteRing& r);

// x = xy implies x = 0 or y a unit (resp. y regular). The witness is a violating (x, y).
std::optional<std::pair<Elem, Elem>> presimplifiable_witness(const FiniteRing& r);
std::optional<std::pair<Elem, Elem>> weakly_presimplifiable_witness(const FiniteRing& r);
bool is_presimplifiable_ring(const FiniteRing& r);
bool is_weakly_presimplifiable_ring(const FiniteRing& r);

// Multiplicative semigroup generated by the elements satisfying pred (products of
// one or more of them), as a membership mask.
std::vector<bool> product_closure(const FiniteRing& r, const std::function<bool(Elem)>& pred);

struct ElemFactorizations {
  // One witness per class: factors sorted by atom class, deduplicated up to ~.
  std::vector<std::vector<Elem>> factorizations;
  std::size_t len_cap = 0;
  bool cap_hit = false;     // a partial product at the cap still divides the subject
  bool extendable = false;  // subject = subject * y for a nonunit y, so lengths are unbounded
};

// nilpotency index + number of local components + 2
std::size_t default_len_cap(const FiniteRing& r);

// Atomic factorizations of a nonunit a (zero allowed) with at most len_cap factors.
// Throws Error when a is a unit.
ElemFactorizations atomic_factorizations_elem(const FiniteRing& r, Elem a, std::size_t len_cap);

// Same enumeration over an arbitrary atom predicate, used for other atom notions.
ElemFactorizations factorizations_over(const FiniteRing& r, Elem a, std::size_t len_cap,
                                       const std::vector<bool>& is_atom);

}  // namespace zdring
