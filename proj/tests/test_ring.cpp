#include <numeric>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "zdring/dsl.hpp"
#include "zdring/error.hpp"
#include "zdring/ring.hpp"

using namespace zdring;

namespace {

std::set<std::string> labels(const FiniteRing& r, const std::vector<Elem>& xs) {
  std::set<std::string> out;
  for (Elem x : xs) out.insert(r.label(x));
  return out;
}

int rad(int n) {
  int out = 1;
  for (int p = 2; p <= n; ++p) {
    if (n % p == 0) {
      out *= p;
      while (n % p == 0) n /= p;
    }
  }
  return out;
}

int distinct_primes(int n) {
  int k = 0;
  for (int p = 2; p <= n; ++p) {
    if (n % p == 0) {
      ++k;
      while (n % p == 0) n /= p;
    }
  }
  return k;
}

}  // namespace

TEST_CASE("spec grammar") {
  auto z4 = parse_ring_spec("Z(4)");
  CHECK(std::get<Modular>(z4.node).n == 4);
  auto prod = parse_ring_spec("Z(2)xZ(3)");
  const auto& p = std::get<Product>(prod.node);
  REQUIRE(p.factors.size() == 2);
  CHECK(std::get<Modular>(p.factors[1].node).n == 3);
  auto q = parse_ring_spec("Z(2)[s,t]/(s^2,s*t,t^2)");
  const auto& pq = std::get<PolyQuotient>(q.node);
  CHECK(pq.vars == std::vector<std::string>{"s", "t"});
  CHECK(pq.relations.size() == 3);
  CHECK(std::get<Modular>(pq.base->node).n == 2);

  CHECK_THROWS_AS(parse_ring_spec("Z(1)"), SemanticError);
  CHECK_THROWS_AS(parse_ring_spec("Z(4"), ParseError);
  CHECK_THROWS_AS(parse_ring_spec("Q(4)"), ParseError);
  try {
    parse_ring_spec("Z(2)xQ");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
    CHECK_FALSE(e.expected().empty());
  }
}

TEST_CASE("spec text round trip") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    CHECK(render_ring_spec(parse_ring_spec(s)) == s);
    CHECK(parse_ring_spec(render_ring_spec(parse_ring_spec(s))) == parse_ring_spec(s));
  }
  CHECK(render_ring_spec(parse_ring_spec(" Z( 4 ) ")) == "Z(4)");
}

TEST_CASE("build sizes and finiteness") {
  CHECK(FiniteRing::build("Z(4)")->size() == 4);
  CHECK(FiniteRing::build("Z(2)xZ(3)")->size() == 6);
  CHECK(FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)")->size() == 8);
  CHECK(FiniteRing::build("Z(4)[t]/(t^3)")->size() == 64);
  CHECK_THROWS_AS(FiniteRing::build("Z(4)[t]/(2*t)"), BuildError);

  auto f4 = FiniteRing::build("Z(2)[u]/(u^2+u+1)");
  REQUIRE(f4->size() == 4);
  oracle::Table t(*f4);
  for (Elem a = 1; a < 4; ++a) CHECK(t.unit(a));
  CHECK(f4->structure().is_field);
}

TEST_CASE("Z(n) agrees with integer arithmetic") {
  for (int n = 2; n <= 16; ++n) {
    auto r = FiniteRing::build("Z(" + std::to_string(n) + ")");
    REQUIRE(r->size() == static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      Elem ea = r->parse_element(std::to_string(a));
      for (int b = 0; b < n; ++b) {
        Elem eb = r->parse_element(std::to_string(b));
        CHECK(r->label(r->add(ea, eb)) == std::to_string((a + b) % n));
        CHECK(r->label(r->mul(ea, eb)) == std::to_string(a * b % n));
      }
      CHECK(r->is_unit(ea) == (std::gcd(a, n) == 1));
      CHECK(r->is_nilpotent(ea) == (a % rad(n) == 0));
      CHECK(r->is_zero_divisor(ea) == (std::gcd(a, n) != 1));
    }
    CHECK(r->structure().idempotents.size() == (std::size_t{1} << distinct_primes(n)));
    CHECK(r->local_components().size() == static_cast<std::size_t>(distinct_primes(n)));
    CHECK(r->is_reduced() == (rad(n) == n));
    CHECK(r->is_local() == (distinct_primes(n) == 1));
  }
}

TEST_CASE("ring axioms over the corpus") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    const Elem n = static_cast<Elem>(r->size());
    bool ok = true;
    for (Elem a = 0; a < n && ok; ++a) {
      ok = ok && r->mul(a, r->one()) == a && r->add(a, 0) == a && r->add(a, r->neg(a)) == 0;
      for (Elem b = 0; b < n && ok; ++b) {
        ok = ok && r->mul(a, b) == r->mul(b, a) && r->add(a, b) == r->add(b, a);
        for (Elem c = 0; c < n && ok; ++c) {
          ok = ok && r->mul(r->mul(a, b), c) == r->mul(a, r->mul(b, c));
          ok = ok && r->mul(a, r->add(b, c)) == r->add(r->mul(a, b), r->mul(a, c));
        }
      }
    }
    CHECK(ok);
  }
}

TEST_CASE("structure tables match brute force") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    oracle::Table t(*r);
    const Elem n = static_cast<Elem>(r->size());
    for (Elem a = 0; a < n; ++a) {
      CHECK(r->is_unit(a) == t.unit(a));
      CHECK(r->is_zero_divisor(a) == t.zero_divisor(a));
      CHECK(r->is_nilpotent(a) == t.nilpotent(a));
      if (auto inv = r->inverse(a)) CHECK(r->mul(a, *inv) == r->one());
      for (Elem b = 0; b < n; ++b) {
        CHECK(r->divides(a, b) == t.divides(a, b));
        CHECK((r->ideal_id(a) == r->ideal_id(b)) == t.assoc(a, b));
        CHECK((r->orbit_id(a) == r->orbit_id(b)) == t.strong(a, b));
      }
    }
  }
}

TEST_CASE("local decomposition") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    const auto& comps = r->local_components();
    std::size_t prod = 1;
    Elem sum = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const auto& c = comps[i];
      prod *= c.ring->size();
      CHECK(c.ring->is_local());
      CHECK(r->is_idempotent(c.idempotent));
      sum = r->add(sum, c.idempotent);
      for (std::size_t j = i + 1; j < comps.size(); ++j) CHECK(r->mul(c.idempotent, comps[j].idempotent) == 0);
      // The embedding is multiplicative and sends one to the idempotent.
      CHECK(c.embedding[c.ring->one()] == c.idempotent);
      for (Elem a = 0; a < c.ring->size(); ++a) {
        for (Elem b = 0; b < c.ring->size(); ++b) {
          CHECK(c.embedding[c.ring->mul(a, b)] == r->mul(c.embedding[a], c.embedding[b]));
        }
      }
    }
    CHECK(prod == r->size());
    CHECK(sum == r->one());
    CHECK(r->structure().component_count == comps.size());
    CHECK(r->structure().is_indecomposable == (comps.size() == 1));
  }
}

TEST_CASE("structure examples") {
  auto z6 = FiniteRing::build("Z(6)");
  CHECK(labels(*z6, z6->structure().units) == std::set<std::string>{"1", "5"});
  CHECK(labels(*z6, z6->structure().idempotents) == std::set<std::string>{"0", "1", "3", "4"});
  std::multiset<std::size_t> sizes;
  for (const auto& c : z6->local_components()) sizes.insert(c.ring->size());
  CHECK(sizes == std::multiset<std::size_t>{2, 3});

  auto z4 = FiniteRing::build("Z(4)");
  CHECK(labels(*z4, z4->structure().units) == std::set<std::string>{"1", "3"});
  CHECK(labels(*z4, z4->structure().nilradical) == std::set<std::string>{"0", "2"});
  CHECK(z4->is_local());
  CHECK(z4->structure().is_spir);

  auto st = FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)");
  CHECK(st->structure().units.size() == 4);
  for (Elem u : st->structure().units) CHECK(st->is_nilpotent(st->sub(u, st->one())));
  CHECK(st->is_local());
  CHECK_FALSE(st->structure().is_spir);
  std::vector<Elem> m;
  for (Elem a = 0; a < st->size(); ++a) {
    if (!st->is_unit(a)) m.push_back(a);
  }
  CHECK(st->ideal_product(m, m) == std::vector<Elem>{0});

  CHECK_FALSE(FiniteRing::build("Z(5)")->structure().is_spir);
  CHECK(FiniteRing::build("Z(9)")->structure().is_spir);
  CHECK(FiniteRing::build("Z(8)")->nilpotency_index() == 3);
}

TEST_CASE("quotients") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(z4->reduced_quotient().ring->size() == 2);
  auto z6 = FiniteRing::build("Z(6)");
  CHECK(z6->reduced_quotient().ring.get() == z6.get());

  auto st = FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)");
  std::vector<Elem> m;
  for (Elem a = 0; a < st->size(); ++a) {
    if (!st->is_unit(a)) m.push_back(a);
  }
  auto q = FiniteRing::quotient(st, m);
  CHECK(q.ring->size() == 2);
  CHECK(q.ring->structure().is_field);
  // The projection is a ring map.
  for (Elem a = 0; a < st->size(); ++a) {
    for (Elem b = 0; b < st->size(); ++b) {
      CHECK(q.projection[st->mul(a, b)] == q.ring->mul(q.projection[a], q.projection[b]));
      CHECK(q.projection[st->add(a, b)] == q.ring->add(q.projection[a], q.projection[b]));
    }
  }

  std::vector<Elem> not_ideal{0, z6->parse_element("1")};
  CHECK_THROWS_AS(FiniteRing::quotient(z6, not_ideal), NotAnIdeal);
}

TEST_CASE("element tags") {
  auto a = FiniteRing::build("Z(4)");
  auto b = FiniteRing::build("Z(4)");
  CHECK(a->id() != b->id());
  CHECK_THROWS_AS(divides(*a, b->element(1), a->element(2)), RingMismatch);
  CHECK(divides(*a, a->element(2), a->element(0)));
  CHECK(a->parse_element("7") == a->parse_element("3"));
  CHECK_THROWS_AS(a->parse_element("q"), ParseError);
}
