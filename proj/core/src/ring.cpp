#include "zdring/ring.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cctype>
#include <charconv>
#include <map>

#include "carriers.hpp"
#include "zdring/error.hpp"

namespace zdring {

namespace {

std::atomic<std::uint64_t> next_ring_id{1};

std::string strip_spaces(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  return s;
}

// A pointer to r that does not own it.
RingPtr alias(const FiniteRing* r) { return RingPtr(RingPtr(), r); }

}  // namespace

const detail::Carrier& detail_carrier(const FiniteRing& r) { return *r.carrier_; }

FiniteRing::~FiniteRing() = default;

Elem FiniteRing::carrier_add(Elem a, Elem b) const { return carrier_->add(a, b); }
Elem FiniteRing::carrier_mul(Elem a, Elem b) const { return carrier_->mul(a, b); }

RingPtr FiniteRing::make(std::shared_ptr<const detail::Carrier> carrier,
                         std::optional<RingSpec> spec, std::string description,
                         const BuildOptions& options) {
  const std::size_t n = carrier->size();
  if (n > options.max_size) {
    throw BuildError("not finite: " + description + " exceeds the size cap of " +
                     std::to_string(options.max_size) + " elements");
  }
  if (n < 2) throw BuildError(description + " is the zero ring");

  auto ring = std::shared_ptr<FiniteRing>(new FiniteRing());
  ring->id_ = next_ring_id++;
  ring->carrier_ = std::move(carrier);
  ring->spec_ = std::move(spec);
  ring->description_ = std::move(description);
  ring->size_ = n;
  const auto& c = *ring->carrier_;
  ring->one_ = c.one();
  ring->neg_.resize(n);
  ring->labels_.resize(n);
  for (Elem a = 0; a < n; ++a) {
    ring->neg_[a] = c.neg(a);
    ring->labels_[a] = c.label(a);
    ring->label_index_.emplace(ring->labels_[a], a);
  }
  if (n <= options.memo_limit && n <= 65536) {
    ring->add_.resize(n * n);
    ring->mul_.resize(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a; b < n; ++b) {
        auto s = static_cast<std::uint16_t>(c.add(a, b));
        auto p = static_cast<std::uint16_t>(c.mul(a, b));
        ring->add_[a * n + b] = ring->add_[b * n + a] = s;
        ring->mul_[a * n + b] = ring->mul_[b * n + a] = p;
      }
    }
  }
  ring->compute_structure(options);
  return ring;
}

RingPtr FiniteRing::build(std::string_view spec_text, const BuildOptions& options) {
  return build(parse_ring_spec(spec_text), options);
}

RingPtr FiniteRing::build(const RingSpec& spec, const BuildOptions& options) {
  return build_node(spec, options);
}

RingPtr FiniteRing::build_node(const RingSpec& spec, const BuildOptions& options) {
  const std::string text = render_ring_spec(spec);
  if (const auto* m = std::get_if<Modular>(&spec.node)) {
    if (static_cast<std::uint64_t>(m->n) > options.max_size) {
      throw BuildError("not finite: " + text + " exceeds the size cap of " +
                       std::to_string(options.max_size) + " elements");
    }
    return make(std::make_shared<detail::ModularCarrier>(static_cast<std::uint32_t>(m->n)), spec,
                text, options);
  }
  if (const auto* p = std::get_if<Product>(&spec.node)) {
    std::vector<RingPtr> factors;
    double size = 1;
    for (const auto& f : p->factors) {
      factors.push_back(build_node(f, options));
      size *= static_cast<double>(factors.back()->size());
      if (size > static_cast<double>(options.max_size)) {
        throw BuildError("not finite: " + text + " exceeds the size cap of " +
                         std::to_string(options.max_size) + " elements");
      }
    }
    return make(std::make_shared<detail::ProductCarrier>(std::move(factors)), spec, text, options);
  }
  if (const auto* q = std::get_if<PolyQuotient>(&spec.node)) {
    const RingSpec& base = *q->base;
    if (const auto* m = std::get_if<Modular>(&base.node)) {
      return make(detail::PolyQuotientCarrier::build(m->n, q->vars, q->relations, options), spec,
                  text, options);
    }
    if (const auto* p = std::get_if<Product>(&base.node)) {
      // (A x B)[v]/(I) = A[v]/(I) x B[v]/(I) for integer relations.
      std::vector<RingPtr> factors;
      for (const auto& f : p->factors) {
        factors.push_back(build_node(RingSpec{PolyQuotient{f, q->vars, q->relations}}, options));
      }
      return make(std::make_shared<detail::ProductCarrier>(std::move(factors)), spec, text,
                  options);
    }
    throw BuildError("polynomial quotients are supported over Z(n) and products of Z(n) only: " +
                     text);
  }
  const auto& id = std::get<Idealization>(spec.node);
  RingPtr base = build_node(*id.base, options);
  auto m = static_cast<std::uint64_t>(id.module_modulus);
  if (base->characteristic() % m != 0) {
    throw BuildError("idealization modulus " + std::to_string(m) +
                     " does not divide the characteristic of " + base->description());
  }
  Quotient module = quotient(base, base->principal_ideal(base->from_integer(id.module_modulus)));
  return make(std::make_shared<detail::IdealizationCarrier>(base, std::move(module)), spec, text,
              options);
}

FiniteRing::Quotient FiniteRing::quotient(const RingPtr& ring, std::span<const Elem> ideal) {
  const FiniteRing& r = *ring;
  const std::size_t n = r.size();
  std::vector<bool> in(n, false);
  for (Elem a : ideal) {
    if (a >= n) throw NotAnIdeal("element index out of range", {a, a});
    in[a] = true;
  }
  if (!in[0]) throw NotAnIdeal("an ideal must contain 0", {0, 0});
  std::vector<Elem> members;
  for (Elem a = 0; a < n; ++a) {
    if (in[a]) members.push_back(a);
  }
  for (Elem a : members) {
    for (Elem b : members) {
      if (!in[r.add(a, b)]) throw NotAnIdeal("not closed under addition", {a, b});
    }
    for (Elem x = 0; x < n; ++x) {
      if (!in[r.mul(x, a)]) throw NotAnIdeal("not closed under multiplication", {x, a});
    }
  }
  Quotient q;
  q.projection.assign(n, kNone);
  std::vector<Elem> reps;
  for (Elem x = 0; x < n; ++x) {
    if (q.projection[x] != kNone) continue;
    auto id = static_cast<Elem>(reps.size());
    reps.push_back(x);
    for (Elem i : members) q.projection[r.add(x, i)] = id;
  }
  Elem one = q.projection[r.one()];
  auto carrier = std::make_shared<detail::DerivedCarrier>(r.carrier_, std::move(reps),
                                                          q.projection, one);
  std::string desc = r.description() + " modulo an ideal of size " + std::to_string(members.size());
  q.ring = make(std::move(carrier), std::nullopt, std::move(desc), BuildOptions{n, 4096});
  return q;
}

void FiniteRing::compute_structure(const BuildOptions& options) {
  const std::size_t n = size_;
  auto& rep = report_;

  std::uint64_t ch = 1;
  for (Elem k = one_; k != 0; k = add(k, one_)) ++ch;
  characteristic_ = ch;

  inverse_.assign(n, kNone);
  zero_divisor_.assign(n, false);
  zero_divisor_[0] = true;
  for (Elem a = 1; a < n; ++a) {
    for (Elem b = 1; b < n; ++b) {
      Elem p = mul(a, b);
      if (p == one_) inverse_[a] = b;
      if (p == 0) zero_divisor_[a] = true;
    }
  }
  nilpotent_.assign(n, false);
  const auto exponent = static_cast<std::uint64_t>(2 * std::bit_width(n) + 2);
  for (Elem a = 0; a < n; ++a) {
    nilpotent_[a] = pow(a, exponent) == 0;
    if (inverse_[a] != kNone) {
      rep.units.push_back(a);
    } else {
      rep.zero_divisors.push_back(a);
    }
    if (nilpotent_[a]) rep.nilradical.push_back(a);
    if (mul(a, a) == a) rep.idempotents.push_back(a);
  }
  for (Elem a = 0; a < n; ++a) {
    bool in_j = true;
    for (Elem r = 0; r < n && in_j; ++r) in_j = is_unit(add(one_, mul(r, a)));
    if (in_j) rep.jacobson_radical.push_back(a);
  }
  rep.is_reduced = rep.nilradical.size() == 1;
  rep.is_field = rep.units.size() == n - 1;
  rep.is_domain = rep.zero_divisors.size() == 1;
  rep.is_indecomposable = rep.idempotents.size() == 2;
  bool nonunits_closed = true;
  for (Elem a : rep.zero_divisors) {
    for (Elem b : rep.zero_divisors) {
      if (is_unit(add(a, b))) {
        nonunits_closed = false;
        break;
      }
    }
    if (!nonunits_closed) break;
  }
  rep.is_local = nonunits_closed;

  // Principal ideals and unit orbits.
  std::map<std::vector<bool>, std::uint32_t> ideal_ids;
  ideal_id_.assign(n, 0);
  for (Elem a = 0; a < n; ++a) {
    std::vector<bool> mask(n, false);
    for (Elem r = 0; r < n; ++r) mask[mul(r, a)] = true;
    auto [it, fresh] = ideal_ids.try_emplace(mask, static_cast<std::uint32_t>(ideal_members_.size()));
    if (fresh) ideal_members_.push_back(mask);
    ideal_id_[a] = it->second;
  }
  orbit_id_.assign(n, ~std::uint32_t{0});
  std::uint32_t orbits = 0;
  for (Elem a = 0; a < n; ++a) {
    if (orbit_id_[a] != ~std::uint32_t{0}) continue;
    for (Elem u : rep.units) orbit_id_[mul(u, a)] = orbits;
    ++orbits;
  }

  if (rep.is_local && !rep.is_field) {
    for (Elem m : rep.zero_divisors) {
      const auto& mask = ideal_members_[ideal_id_[m]];
      if (static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)) ==
          rep.zero_divisors.size()) {
        rep.is_spir = true;
        break;
      }
    }
  }

  std::vector<Elem> nil_power = rep.nilradical;
  nilpotency_index_ = 1;
  while (nil_power.size() > 1) {
    nil_power = ideal_product(nil_power, rep.nilradical);
    ++nilpotency_index_;
  }

  // Local decomposition from the primitive idempotents.
  std::vector<Elem> primitive;
  for (Elem e : rep.idempotents) {
    if (e == 0) continue;
    bool prim = true;
    for (Elem f : rep.idempotents) {
      Elem fe = mul(f, e);
      if (fe != 0 && fe != e) prim = false;
    }
    if (prim) primitive.push_back(e);
  }
  rep.component_count = primitive.size();
  if (primitive.size() == 1) {
    LocalComponent c{alias(this), one_, elements()};
    components_.push_back(std::move(c));
  } else {
    for (Elem e : primitive) {
      std::vector<Elem> map(n, detail::DerivedCarrier::kAbsent);
      std::vector<Elem> reps;
      for (Elem a = 0; a < n; ++a) {
        Elem ea = mul(e, a);
        if (map[ea] == detail::DerivedCarrier::kAbsent) {
          map[ea] = 0;
          reps.push_back(ea);
        }
      }
      std::sort(reps.begin(), reps.end());
      for (Elem i = 0; i < reps.size(); ++i) map[reps[i]] = i;
      Elem one = map[e];
      auto carrier = std::make_shared<detail::DerivedCarrier>(carrier_, reps, map, one);
      std::string desc = "component " + labels_[e] + "*R of " + description_;
      components_.push_back(
          LocalComponent{make(std::move(carrier), std::nullopt, std::move(desc), options), e, reps});
    }
  }

  if (rep.is_reduced) {
    reduced_ = Quotient{alias(this), elements()};
  } else {
    reduced_ = quotient(shared_from_this(), rep.nilradical);
  }
}

Elem FiniteRing::pow(Elem a, std::uint64_t k) const {
  Elem result = one_;
  while (k > 0) {
    if (k & 1) result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

Elem FiniteRing::from_integer(std::int64_t k) const {
  auto ch = static_cast<std::int64_t>(characteristic_);
  std::int64_t r = ((k % ch) + ch) % ch;
  Elem out = 0;
  for (std::int64_t i = 0; i < r; ++i) out = add(out, one_);
  return out;
}

Elem FiniteRing::parse_element(std::string_view text) const {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw ParseError("empty element text", 0, {"element"});
  if (auto it = label_index_.find(s); it != label_index_.end()) return it->second;
  if (auto e = carrier_->parse(s)) return *e;
  std::int64_t k = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), k);
  if (ec == std::errc() && ptr == s.data() + s.size()) return from_integer(k);
  throw ParseError("'" + s + "' is not an element of " + description_, 0, {"element label"});
}

std::optional<Elem> FiniteRing::inverse(Elem a) const {
  if (inverse_[a] == kNone) return std::nullopt;
  return inverse_[a];
}

std::vector<Elem> FiniteRing::elements() const {
  std::vector<Elem> out(size_);
  for (Elem a = 0; a < size_; ++a) out[a] = a;
  return out;
}

std::vector<Elem> FiniteRing::principal_ideal(Elem a) const {
  std::vector<Elem> out;
  const auto& mask = ideal_members_[ideal_id_[a]];
  for (Elem x = 0; x < size_; ++x) {
    if (mask[x]) out.push_back(x);
  }
  return out;
}

std::vector<Elem> FiniteRing::annihilator(Elem a) const {
  std::vector<Elem> out;
  for (Elem c = 0; c < size_; ++c) {
    if (mul(c, a) == 0) out.push_back(c);
  }
  return out;
}

bool FiniteRing::divides(Elem a, Elem b) const { return ideal_members_[ideal_id_[a]][b]; }

bool FiniteRing::ideal_contained(Elem a, Elem b) const { return ideal_members_[ideal_id_[b]][a]; }

std::vector<Elem> FiniteRing::ideal_sum_closure(std::span<const Elem> gens) const {
  std::vector<bool> cur(size_, false);
  cur[0] = true;
  std::vector<Elem> members{0};
  for (Elem g : gens) {
    if (cur[g]) continue;
    const auto& rg = ideal_members_[ideal_id_[g]];
    std::vector<Elem> next;
    std::vector<bool> seen(size_, false);
    for (Elem c : members) {
      for (Elem x = 0; x < size_; ++x) {
        if (!rg[x]) continue;
        Elem s = add(c, x);
        if (!seen[s]) {
          seen[s] = true;
          next.push_back(s);
        }
      }
    }
    cur = std::move(seen);
    members = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<Elem> FiniteRing::ideal_product(std::span<const Elem> i, std::span<const Elem> j) const {
  std::vector<bool> seen(size_, false);
  std::vector<Elem> gens;
  for (Elem a : i) {
    for (Elem b : j) {
      Elem p = mul(a, b);
      if (!seen[p]) {
        seen[p] = true;
        gens.push_back(p);
      }
    }
  }
  return ideal_sum_closure(gens);
}

namespace {
void check_ring(const FiniteRing& r, RingElement a) {
  if (a.ring_id != r.id() || a.index >= r.size()) throw RingMismatch();
}
}  // namespace

std::vector<Elem> principal_ideal(const FiniteRing& r, RingElement a) {
  check_ring(r, a);
  return r.principal_ideal(a.index);
}

std::vector<Elem> annihilator(const FiniteRing& r, RingElement a) {
  check_ring(r, a);
  return r.annihilator(a.index);
}

bool divides(const FiniteRing& r, RingElement a, RingElement b) {
  check_ring(r, a);
  check_ring(r, b);
  return r.divides(a.index, b.index);
}

StructureReport compute_structure(const FiniteRing& r) { return r.structure(); }

}  // namespace zdring
