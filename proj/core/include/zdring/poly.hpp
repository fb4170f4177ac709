#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zdring/element.hpp"
#include "zdring/ring.hpp"

namespace zdring {

// exact: the answer holds without qualification. bounded: no witness was found
// within the stated degree bound.
enum class Tier { exact, bounded };
const char* tier_name(Tier t);

struct Verdict {
  bool value = false;
  Tier tier = Tier::exact;
  int bound = 0;
  std::string witness;
};

// Polynomial over a finite ring. The ring must outlive the polynomial.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const FiniteRing& r) : ring_(&r) {}
  Poly(const FiniteRing& r, std::vector<Elem> coeffs);

  static Poly constant(const FiniteRing& r, Elem a);
  static Poly monomial(const FiniteRing& r, Elem a, int k);
  static Poly x(const FiniteRing& r) { return monomial(r, r.one(), 1); }

  const FiniteRing& ring() const { return *ring_; }
  const std::vector<Elem>& coeffs() const noexcept { return c_; }
  // -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  bool is_constant() const noexcept { return c_.size() <= 1; }
  Elem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  Elem leading() const { return c_.empty() ? 0 : c_.back(); }
  // Lowest index with a nonzero coefficient (0 for the zero polynomial).
  int order() const;

  std::string str() const;

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  // Canonical order: degree, then coefficients from the constant term upward.
  std::strong_ordering operator<=>(const Poly& o) const;

 private:
  const FiniteRing* ring_ = nullptr;
  std::vector<Elem> c_;
};

Poly operator+(const Poly& f, const Poly& g);
Poly operator-(const Poly& f, const Poly& g);
Poly operator-(const Poly& f);
Poly operator*(const Poly& f, const Poly& g);
Poly scale(Elem a, const Poly& f);
Poly pow(const Poly& f, unsigned k);
Elem eval(const Poly& f, Elem a);
// f(X + a)
Poly shift(const Poly& f, Elem a);
// X^k * f
Poly mul_xk(const Poly& f, int k);
// f / X^k; the low coefficients must vanish.
Poly div_xk(const Poly& f, int k);

// Monic-style division by a polynomial with unit leading coefficient.
struct DivMod {
  Poly quotient, remainder;
};
DivMod divmod(const Poly& f, const Poly& g);

// Text format "2X^3+X+1"; coefficients are element labels, parenthesized when needed.
std::string render_poly(const Poly& f);
Poly parse_poly(const FiniteRing& r, std::string_view text);

struct PolyClass {
  bool unit = false;
  bool zero_divisor = false;
  bool nilpotent = false;
  bool idempotent = false;
  bool regular = false;
  bool operator==(const PolyClass&) const = default;
};

// Coefficient criteria; the zero-divisor test scans constants only.
PolyClass classify_poly(const Poly& f);

// Search-based counterparts, independent of the coefficient criteria.
std::optional<Poly> inverse_by_search(const Poly& f, int max_degree);
std::optional<Poly> annihilator_by_search(const Poly& f, int max_degree);  // nonzero g, fg = 0
bool nilpotent_by_powering(const Poly& f);
bool idempotent_by_powering(const Poly& f);

// Coefficientwise image over R/nil(R).
Poly reduce_mod_nil(const Poly& f);

// Images over the local components eR, and the inverse assembly.
std::vector<Poly> split_components(const Poly& f);
Poly join_components(const FiniteRing& r, std::span<const Poly> parts);
// Component element for the image of a in component i.
Elem project_to_component(const FiniteRing& r, std::size_t i, Elem a);

// Visits every h with deg h <= bound and f*h = g, in canonical order of (h_0, h_1, ...).
// The visitor returns false to stop.
void for_each_cofactor(const Poly& f, const Poly& g, int bound,
                       const std::function<bool(const Poly&)>& visit);

// Units u_0 + u_1 X + ... with u_0 a unit and nilpotent tail, deg <= bound.
void for_each_unit(const FiniteRing& r, int bound, const std::function<bool(const Poly&)>& visit);

// For regular f over a local ring: f = unit * p with p monic of degree deg(f mod nil).
// nullopt when the ring is not local or f is a zero divisor.
struct MonicForm {
  Poly unit, monic;
};
std::optional<MonicForm> monic_form(const Poly& f);
// Inverse of a unit of R[X].
Poly unit_inverse(const Poly& u);

// f | g in R[X]. The cofactor is returned when found.
struct Divisibility {
  bool value = false;
  Tier tier = Tier::exact;
  std::optional<Poly> cofactor;
};
Divisibility divides_poly(const Poly& f, const Poly& g, int bound);

// The five associate relations in R[X] with a tier per relation.
struct PolyAssoc {
  AssocVector value;
  // assoc, strong, very strong, strong regular, very strong regular
  std::array<Tier, 5> tiers{Tier::exact, Tier::exact, Tier::exact, Tier::exact, Tier::exact};
  int bound = 0;
  std::string witness;
};
// Throws Error when bound is below either degree.
PolyAssoc poly_associates(const Poly& f, const Poly& g, int bound);

// Constants a, b are very strong associates in R[X].
bool constant_very_strong_assoc_in_polyring(const FiniteRing& r, Elem a, Elem b);

// f is a strong associate of some constant; exact when found or when the reduction
// has positive degree.
Verdict strongly_associate_to_constant(const Poly& f, int bound);

// deg f + nilpotency index of R
int default_bound(const Poly& f);

}  // namespace zdring
