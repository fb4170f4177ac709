#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "zdring/element.hpp"
#include "zdring/poly.hpp"
#include "zdring/ring.hpp"

namespace zdring {

// subject = unit * product(factors).
struct PolyFactorization {
  Poly unit;
  std::vector<Poly> factors;
  std::size_t class_id = 0;  // isomorphism class: factors up to order and ~
  std::size_t length() const { return factors.size(); }
  std::string str() const;
};

struct PolyFactorizations {
  std::vector<PolyFactorization> items;  // one per class, by length then factors
  std::size_t class_count = 0;
  int deg_bound = 0;
  std::size_t len_cap = 0;
  Tier tier = Tier::exact;
  bool cap_hit = false;
};

// Divisors of f of degree <= bound, one representative per ~ class (minimal in
// canonical order).
struct DivisorClasses {
  std::vector<Poly> reps;
  Tier tier = Tier::bounded;
  int bound = 0;
};
DivisorClasses divisors_poly(const Poly& f, int bound);

// f divides some power of X: in every local component f is a nonzero monomial mod nil.
bool is_factor_of_xn(const Poly& f);

// Throws Error for units.
Verdict is_irreducible_poly(const Poly& f, int bound);
Verdict is_indecomposable_poly(const Poly& f, int bound);

// Atomic factorizations up to order and ~. Factors of X^n use the exact monic route;
// other subjects use factorizations_by_search. Throws Error for units, and for zero
// unless allow_zero is set.
PolyFactorizations atomic_factorizations_poly(const Poly& f, int deg_bound, std::size_t len_cap,
                                              bool allow_zero = false);

// Direct search in R[X]: every divisor, cofactor and atom test stays within deg_bound.
PolyFactorizations factorizations_by_search(const Poly& f, int deg_bound, std::size_t len_cap);

// ---- powers of X ----

// Monic p with p = X^m mod nil over a local ring.
bool is_distinguished(const Poly& p);
// Monic divisors q of p with deg q = d (p monic over a local ring).
std::vector<Poly> monic_divisors(const Poly& p, int d);
// One atomic factorization of a monic p over a local ring, factors monic.
std::vector<Poly> factor_monic(const Poly& p);
// Monic divisors of X^n over a local ring, canonical order.
std::vector<Poly> distinguished_divisors_xn(const FiniteRing& r, int n);

struct LengthSet {
  std::set<std::size_t> lengths;
  int deg_bound = 0;
  std::size_t len_cap = 0;
  bool saturated = false;  // raising the caps cannot add lengths
  Tier tier = Tier::exact;
  std::string str() const;
};
LengthSet set_of_lengths_xn(const FiniteRing& r, int n);
// Independent route for a local ring: unit orbits of all polynomials of degree <= n
// that reduce to a unit times a power of X.
LengthSet lengths_xn_by_search(const FiniteRing& r, int n);

struct XFactorization {
  PolyFactorization canonical;
  std::size_t uniqueness_count = 0;  // classes found by factorizations_by_search
  int search_bound = 0;
  bool primes = false;  // every factor is prime, i.e. every component is a field
};
XFactorization factor_x(const FiniteRing& r, int search_bound = 2);

// Two atomic factorizations of X^(2^n) of different lengths, built from a nonzero
// nilpotent atom b of a local ring.
struct HfrWitness {
  Elem atom = 0;
  Poly subject;
  std::vector<Poly> shorter, longer;
};
std::optional<HfrWitness> hfr_witness(const FiniteRing& r);

struct FactorizationPair {
  Poly subject;
  PolyFactorization first, second;
};
// Least subject of degree <= deg_bound with two non-isomorphic atomic factorizations.
// Regular subjects are searched first, then zero divisors when regular_only is false.
std::optional<FactorizationPair> find_nonisomorphic_factorizations(const FiniteRing& r, int deg_bound,
                                                                   bool regular_only);

// ---- U-decompositions in R ----

// U(x) = {s : (sx) = (x)}
bool in_u(const FiniteRing& r, Elem s, Elem x);

struct UDecomposition {
  Elem subject = 0;
  std::vector<Elem> irrelevant, relevant;
  std::string str(const FiniteRing& r) const;
};
// Refinement of the shortest atomic factorization. Throws Error for units.
UDecomposition u_decomposition(const FiniteRing& r, Elem a);
// Every U-decomposition built from atomic factorizations of length <= len_cap.
std::vector<UDecomposition> all_u_decompositions(const FiniteRing& r, Elem a, std::size_t len_cap);

struct FletcherReport {
  bool value = false;      // relevant parts unique for every nonunit
  bool structure = false;  // every local component is a field or an SPIR
  std::optional<Elem> witness;
};
// Throws InconsistencyError when the two answers differ.
FletcherReport is_fletcher_ufr(const FiniteRing& r);

// ---- weakly prime elements in R[X] ----

struct WeaklyPrimeEntry {
  Elem element = 0;
  bool prime_in_ring = false;  // prime elements stay prime in R[X]
  bool found = false;
  std::optional<std::pair<Poly, Poly>> witness;  // a | fg != 0, a does not divide f or g
  int bound = 0;
};
std::vector<WeaklyPrimeEntry> probe_weakly_prime_lift(const FiniteRing& r, int deg_bound);

}  // namespace zdring
