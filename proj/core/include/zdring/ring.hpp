#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "zdring/dsl.hpp"

namespace zdring {

using Elem = std::uint32_t;

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

namespace detail {
class Carrier;
}

struct BuildOptions {
  std::size_t max_size = std::size_t{1} << 16;  // finiteness cap
  std::size_t memo_limit = 4096;                // operation tables cached up to this size
};

// An element tagged with the ring it belongs to.
struct RingElement {
  std::uint64_t ring_id = 0;
  Elem index = 0;
  bool operator==(const RingElement&) const = default;
};

// One factor eR of the decomposition R = e_1 R x ... x e_k R into local rings.
// When R is local, ring refers to R itself without owning it.
struct LocalComponent {
  RingPtr ring;
  Elem idempotent = 0;
  std::vector<Elem> embedding;  // component element -> element of R
};

struct StructureReport {
  std::vector<Elem> units, zero_divisors, nilradical, jacobson_radical, idempotents;
  bool is_field = false;
  bool is_domain = false;
  bool is_local = false;
  bool is_reduced = false;
  bool is_indecomposable = false;
  bool is_spir = false;  // local, principal, nonzero nilpotent maximal ideal
  std::size_t component_count = 0;
};

class FiniteRing : public std::enable_shared_from_this<FiniteRing> {
 public:
  static RingPtr build(const RingSpec& spec, const BuildOptions& options = {});
  static RingPtr build(std::string_view spec_text, const BuildOptions& options = {});

  // Cosets of the ideal I. Throws NotAnIdeal with a violating pair.
  struct Quotient {
    RingPtr ring;
    std::vector<Elem> projection;  // element of R -> coset index
  };
  static Quotient quotient(const RingPtr& ring, std::span<const Elem> ideal);

  FiniteRing(const FiniteRing&) = delete;
  FiniteRing& operator=(const FiniteRing&) = delete;
  ~FiniteRing();

  std::uint64_t id() const noexcept { return id_; }
  std::size_t size() const noexcept { return size_; }
  const std::optional<RingSpec>& spec() const noexcept { return spec_; }
  const std::string& description() const noexcept { return description_; }

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return one_; }
  RingElement element(Elem a) const { return {id_, a}; }

  Elem add(Elem a, Elem b) const {
    return add_.empty() ? carrier_add(a, b) : add_[std::size_t{a} * size_ + b];
  }
  Elem mul(Elem a, Elem b) const {
    return mul_.empty() ? carrier_mul(a, b) : mul_[std::size_t{a} * size_ + b];
  }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg_[b]); }
  Elem pow(Elem a, std::uint64_t k) const;
  Elem from_integer(std::int64_t k) const;
  std::uint64_t characteristic() const noexcept { return characteristic_; }

  const std::string& label(Elem a) const { return labels_[a]; }
  // Accepts canonical labels, integers (k * 1) and, for quotient rings, expressions
  // in the named variables.
  Elem parse_element(std::string_view text) const;

  // Structure (computed once at build).
  const StructureReport& structure() const noexcept { return report_; }
  bool is_unit(Elem a) const { return inverse_[a] != kNone; }
  std::optional<Elem> inverse(Elem a) const;
  bool is_zero_divisor(Elem a) const { return zero_divisor_[a]; }
  bool is_regular(Elem a) const { return !zero_divisor_[a]; }
  bool is_nilpotent(Elem a) const { return nilpotent_[a]; }
  bool is_idempotent(Elem a) const { return mul(a, a) == a; }
  // Smallest k with nil(R)^k = 0 (1 for reduced rings).
  std::size_t nilpotency_index() const noexcept { return nilpotency_index_; }
  const std::vector<LocalComponent>& local_components() const noexcept { return components_; }
  // R/nil(R); the projection maps elements of R to elements of the quotient.
  // For reduced R this refers to R itself (non-owning) with the identity projection.
  const Quotient& reduced_quotient() const noexcept { return reduced_; }
  bool is_reduced() const noexcept { return report_.is_reduced; }
  bool is_local() const noexcept { return report_.is_local; }

  // Ideals.
  std::vector<Elem> principal_ideal(Elem a) const;
  std::vector<Elem> annihilator(Elem a) const;
  bool divides(Elem a, Elem b) const;
  // Id of Ra: a ~ b iff ideal_id(a) == ideal_id(b).
  std::uint32_t ideal_id(Elem a) const { return ideal_id_[a]; }
  std::size_t principal_ideal_count() const noexcept { return ideal_members_.size(); }
  // Ra is contained in Rb.
  bool ideal_contained(Elem a, Elem b) const;
  // Id of the unit orbit U(R)a: a ~= b (strong associates) iff orbit ids agree.
  std::uint32_t orbit_id(Elem a) const { return orbit_id_[a]; }
  std::vector<Elem> ideal_product(std::span<const Elem> i, std::span<const Elem> j) const;
  std::vector<Elem> ideal_sum_closure(std::span<const Elem> gens) const;

  std::vector<Elem> elements() const;

 private:
  friend const detail::Carrier& detail_carrier(const FiniteRing& r);
  static constexpr Elem kNone = ~Elem{0};

  static RingPtr make(std::shared_ptr<const detail::Carrier> carrier, std::optional<RingSpec> spec,
                     std::string description, const BuildOptions& options);
  FiniteRing() = default;
  static RingPtr build_node(const RingSpec& spec, const BuildOptions& options);
  Elem carrier_add(Elem a, Elem b) const;
  Elem carrier_mul(Elem a, Elem b) const;
  void compute_structure(const BuildOptions& options);

  std::uint64_t id_ = 0;
  std::shared_ptr<const detail::Carrier> carrier_;
  std::unordered_map<std::string, Elem> label_index_;
  std::optional<RingSpec> spec_;
  std::string description_;
  std::size_t size_ = 0;
  Elem one_ = 0;
  std::uint64_t characteristic_ = 0;
  std::vector<std::uint16_t> add_, mul_;
  std::vector<Elem> neg_;
  std::vector<std::string> labels_;

  std::vector<Elem> inverse_;
  std::vector<bool> zero_divisor_, nilpotent_;
  std::vector<std::uint32_t> ideal_id_, orbit_id_;
  std::vector<std::vector<bool>> ideal_members_;  // indexed by ideal id
  std::size_t nilpotency_index_ = 1;
  StructureReport report_;
  std::vector<LocalComponent> components_;
  Quotient reduced_;
};

// Element-tagged helpers; these throw RingMismatch on foreign elements.
std::vector<Elem> principal_ideal(const FiniteRing& r, RingElement a);
std::vector<Elem> annihilator(const FiniteRing& r, RingElement a);
bool divides(const FiniteRing& r, RingElement a, RingElement b);

StructureReport compute_structure(const FiniteRing& r);

const detail::Carrier& detail_carrier(const FiniteRing& r);

}  // namespace zdring
