#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zdring/factor.hpp"
#include "zdring/ring.hpp"

namespace zdring {

// One ring property decided twice: by searching the definition over R and by the
// structure of R as a product of local rings.
struct RingFlag {
  std::string name;
  bool definition = false;
  bool structure = false;
  std::string witness;  // element-level evidence when the definition fails
};

struct RingClassReport {
  // Structure.
  bool field = false;
  bool spir = false;
  bool local_m2_zero = false;
  bool product_of_fields = false;
  bool product_of_fields_and_spirs = false;
  std::size_t len_cap = 0;

  // atomic, strongly_atomic, m_atomic, very_strongly_atomic, p_atomic, accp,
  // presimplifiable, ufr, weak_ufr, fletcher_ufr, factorial, then the (weak)
  // [strongly] mu-reduced and reduced variants.
  std::vector<RingFlag> flags;

  // Throws Error for an unknown name.
  const RingFlag& flag(std::string_view name) const;
  bool value(std::string_view name) const { return flag(name).definition; }
  // Names of flags whose two deciders differ.
  std::vector<std::string> disagreements() const;
};

// Computes both deciders for every flag without checking agreement.
RingClassReport ring_class_deciders(const FiniteRing& r);
// As above; throws InconsistencyError naming the first flag whose deciders differ.
RingClassReport classify_ring(const FiniteRing& r);

enum class Provenance { theorem, bounded_witness };
const char* provenance_name(Provenance p);

struct PolyFlag {
  std::string name;
  bool value = false;
  Provenance provenance = Provenance::theorem;
  std::string witness;
};

// Conditions (a) and (b) for a finite local ring (R, M) with M^n = 0, M^(n-1) != 0:
// (a) x in M^i \ M^(i+1), y in M^j \ M^(j+1), i + j < n imply xy in M^(i+j) \ M^(i+j+1);
// (b) aM = M^2 for every a in M \ M^2.
struct FfrConditions {
  std::size_t n = 0;
  bool a = false;
  bool b = false;
  std::string witness;
};
// nullopt unless R is local.
std::optional<FfrConditions> ffr_conditions(const FiniteRing& r);

struct PolyRingClassReport {
  // ufr, factorial, weak_ufr, fletcher_ufr, the mu-reduced and reduced variants,
  // bfr, hfr, ffr, atomic.
  std::vector<PolyFlag> flags;
  std::optional<FfrConditions> ffr_conditions;
  std::optional<HfrWitness> hfr_witness;

  const PolyFlag& flag(std::string_view name) const;
  bool value(std::string_view name) const { return flag(name).value; }
};

// Finite-base instantiations of the structure theorems for R[X]; every false flag
// carries a witness and its provenance.
PolyRingClassReport classify_poly_ring(const FiniteRing& r);

}  // namespace zdring
