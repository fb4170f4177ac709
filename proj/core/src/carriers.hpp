#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zdring/ring.hpp"

namespace zdring::detail {

// Element encoding and raw arithmetic behind a FiniteRing.
class Carrier {
 public:
  virtual ~Carrier() = default;
  virtual std::size_t size() const = 0;
  virtual Elem add(Elem a, Elem b) const = 0;
  virtual Elem mul(Elem a, Elem b) const = 0;
  virtual Elem neg(Elem a) const = 0;
  virtual Elem one() const = 0;
  virtual std::string label(Elem a) const = 0;
  // Carrier-specific element syntax; nullopt when the text is not recognized.
  virtual std::optional<Elem> parse(std::string_view text) const;
};

class ModularCarrier final : public Carrier {
 public:
  explicit ModularCarrier(std::uint32_t n) : n_(n) {}
  std::size_t size() const override { return n_; }
  Elem add(Elem a, Elem b) const override { return (a + b) % n_; }
  Elem mul(Elem a, Elem b) const override {
    return static_cast<Elem>(std::uint64_t{a} * b % n_);
  }
  Elem neg(Elem a) const override { return a == 0 ? 0 : n_ - a; }
  Elem one() const override { return 1 % n_; }
  std::string label(Elem a) const override { return std::to_string(a); }

 private:
  std::uint32_t n_;
};

// Mixed radix, first factor least significant; labels "(a,b,...)".
class ProductCarrier final : public Carrier {
 public:
  explicit ProductCarrier(std::vector<RingPtr> factors);
  std::size_t size() const override { return size_; }
  Elem add(Elem a, Elem b) const override;
  Elem mul(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem one() const override { return one_; }
  std::string label(Elem a) const override;
  std::optional<Elem> parse(std::string_view text) const override;

  const std::vector<RingPtr>& factors() const { return factors_; }
  std::vector<Elem> split(Elem a) const;
  Elem join(const std::vector<Elem>& parts) const;

 private:
  std::vector<RingPtr> factors_;
  std::size_t size_ = 1;
  Elem one_ = 0;
};

// Pairs (r, x) with r in R and x in M = R/mR; (r,x)(s,y) = (rs, ry + sx).
class IdealizationCarrier final : public Carrier {
 public:
  IdealizationCarrier(RingPtr base, FiniteRing::Quotient module);
  std::size_t size() const override { return base_->size() * module_.ring->size(); }
  Elem add(Elem a, Elem b) const override;
  Elem mul(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem one() const override { return base_->one(); }
  std::string label(Elem a) const override;
  std::optional<Elem> parse(std::string_view text) const override;

 private:
  Elem pack(Elem r, Elem x) const { return r + static_cast<Elem>(base_->size()) * x; }
  RingPtr base_;
  FiniteRing::Quotient module_;
};

// Subring-like subset (eR with identity e) or quotient (cosets) of a parent carrier.
// map sends parent elements to derived elements (kAbsent outside a subset).
class DerivedCarrier final : public Carrier {
 public:
  static constexpr Elem kAbsent = ~Elem{0};
  DerivedCarrier(std::shared_ptr<const Carrier> parent, std::vector<Elem> reps,
                 std::vector<Elem> map, Elem one);
  std::size_t size() const override { return reps_.size(); }
  Elem add(Elem a, Elem b) const override { return map_[parent_->add(reps_[a], reps_[b])]; }
  Elem mul(Elem a, Elem b) const override { return map_[parent_->mul(reps_[a], reps_[b])]; }
  Elem neg(Elem a) const override { return map_[parent_->neg(reps_[a])]; }
  Elem one() const override { return one_; }
  std::string label(Elem a) const override { return parent_->label(reps_[a]); }
  std::optional<Elem> parse(std::string_view text) const override;

 private:
  std::shared_ptr<const Carrier> parent_;
  std::vector<Elem> reps_, map_;
  Elem one_;
};

// Z(n)[vars]/(relations) realized on a monomial basis with mixed-radix digits.
class PolyQuotientCarrier final : public Carrier {
 public:
  static std::shared_ptr<const PolyQuotientCarrier> build(std::int64_t n,
                                                          const std::vector<std::string>& vars,
                                                          const std::vector<IntPoly>& relations,
                                                          const BuildOptions& options);
  std::size_t size() const override { return size_; }
  Elem add(Elem a, Elem b) const override;
  Elem mul(Elem a, Elem b) const override;
  Elem neg(Elem a) const override;
  Elem one() const override { return one_; }
  std::string label(Elem a) const override;
  std::optional<Elem> parse(std::string_view text) const override;

  struct Basis {
    std::int64_t n = 0;
    std::vector<std::string> vars;
    std::vector<std::vector<int>> monomials;  // basis monomials, constant first
    std::vector<std::int64_t> radix;          // digit range per basis monomial
    // products[i][j] = digits of monomial_i * monomial_j
    std::vector<std::vector<std::vector<std::int64_t>>> products;
    std::vector<std::vector<std::int64_t>> var_digits;  // residue of each variable
  };
  const Basis& basis() const { return basis_; }

 private:
  explicit PolyQuotientCarrier(Basis basis);
  std::vector<std::int64_t> digits(Elem a) const;
  Elem pack(const std::vector<std::int64_t>& d) const;

  Basis basis_;
  std::vector<std::vector<std::int64_t>> overflow_;  // reduction of radix * monomial
  std::vector<std::size_t> label_order_;             // degree ascending, then s before t
  std::size_t size_ = 1;
  Elem one_ = 0;
};

}  // namespace zdring::detail
