#pragma once

// Textual ring-construction expressions.
//
//   expr     := factor ('x' factor)*
//   factor   := primary ('[' idents ']' '/' '(' polys ')')?
//   primary  := 'Z(' int ')' | 'Id(' expr ',' int ')' | '(' expr ')'
//   poly     := integer polynomial in the bracketed variables
//
// 'x' is the product separator, so variable names may not contain 'x' (or 'X',
// which is the indeterminate of R[X] in polynomial text).

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace zdring {

// Sparse polynomial with integer coefficients; keys are exponent vectors.
struct IntPoly {
  std::map<std::vector<int>, std::int64_t> terms;

  int total_degree() const;  // -1 for the zero polynomial
  bool operator==(const IntPoly&) const = default;
};

struct RingSpec;

// Deep-copying owner so RingSpec keeps value semantics.
template <class T>
class Box {
 public:
  Box(T value) : p_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& o) : p_(std::make_unique<T>(*o.p_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& o) { p_ = std::make_unique<T>(*o.p_); return *this; }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *p_; }
  const T* operator->() const { return p_.get(); }
  bool operator==(const Box& o) const { return *p_ == *o.p_; }

 private:
  std::unique_ptr<T> p_;
};

struct Modular {
  std::int64_t n;
  bool operator==(const Modular&) const = default;
};

struct Product {
  std::vector<RingSpec> factors;
  bool operator==(const Product&) const;
};

struct PolyQuotient {
  Box<RingSpec> base;
  std::vector<std::string> vars;
  std::vector<IntPoly> relations;
  bool operator==(const PolyQuotient&) const = default;
};

// base (+) base/(module_modulus)
struct Idealization {
  Box<RingSpec> base;
  std::int64_t module_modulus;
  bool operator==(const Idealization&) const = default;
};

struct RingSpec {
  std::variant<Modular, Product, PolyQuotient, Idealization> node;
  bool operator==(const RingSpec&) const = default;
};

RingSpec parse_ring_spec(std::string_view text);
std::string render_ring_spec(const RingSpec& spec);

// Integer polynomial in the given variables, e.g. "s^2+2*s*t-1".
IntPoly parse_int_poly(std::string_view text, const std::vector<std::string>& vars);
std::string render_int_poly(const IntPoly& p, const std::vector<std::string>& vars);

}  // namespace zdring
