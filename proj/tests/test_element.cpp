#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "zdring/element.hpp"
#include "zdring/error.hpp"

using namespace zdring;

namespace {

std::set<std::vector<std::string>> factor_labels(const FiniteRing& r, const ElemFactorizations& f) {
  std::set<std::vector<std::string>> out;
  for (const auto& fac : f.factorizations) {
    std::vector<std::string> ls;
    for (Elem x : fac) ls.push_back(r.label(x));
    std::sort(ls.begin(), ls.end());
    out.insert(ls);
  }
  return out;
}

}  // namespace

TEST_CASE("element classes match the definitions") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    oracle::Table t(*r);
    for (Elem a = 0; a < r->size(); ++a) {
      CAPTURE(r->label(a));
      auto c = classify_element(*r, a);
      CHECK(c.unit == t.unit(a));
      CHECK(c.zero_divisor == t.zero_divisor(a));
      CHECK(c.regular == !t.zero_divisor(a));
      CHECK(c.nilpotent == t.nilpotent(a));
      CHECK(c.idempotent == (r->mul(a, a) == a));
      CHECK(c.irreducible == t.irreducible(a));
      CHECK(c.strongly_irreducible == t.strongly_irreducible(a));
      CHECK(c.very_strongly_irreducible == t.very_strongly_irreducible(a));
      CHECK(c.m_irreducible == t.m_irreducible(a));
      CHECK(c.prime == t.prime(a));
      CHECK(c.weakly_prime == t.weakly_prime(a));
    }
  }
}

TEST_CASE("irreducibility hierarchy") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    auto all = classify_all(*r);
    for (Elem a = 0; a < r->size(); ++a) {
      const auto& c = all[a];
      if (c.unit) continue;
      if (c.very_strongly_irreducible) CHECK(c.strongly_irreducible);
      if (c.strongly_irreducible) CHECK(c.irreducible);
      if (c.very_strongly_irreducible) CHECK(c.m_irreducible);
      if (c.prime && a != 0) CHECK(c.weakly_prime);
    }
  }
}

TEST_CASE("associate relations match the definitions") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    oracle::Table t(*r);
    for (Elem a = 0; a < r->size(); ++a) {
      for (Elem b = 0; b < r->size(); ++b) {
        auto v = associate_vector(*r, a, b);
        CHECK(v.assoc == t.assoc(a, b));
        CHECK(v.strong_assoc == t.strong(a, b));
        CHECK(v.very_strong_assoc == t.very_strong(a, b));
        // very strong => strong => associate
        if (v.very_strong_assoc) CHECK(v.strong_assoc);
        if (v.strong_assoc) CHECK(v.assoc);
        if (v.strong_assoc) CHECK(v.strong_regular_assoc);
        if (v.strong_regular_assoc) CHECK(v.assoc);
      }
    }
  }
}

TEST_CASE("associate examples") {
  auto z6 = FiniteRing::build("Z(6)");
  auto v = associate_vector(*z6, z6->parse_element("2"), z6->parse_element("4"));
  CHECK(v.assoc);
  CHECK(v.strong_assoc);
  CHECK_FALSE(v.very_strong_assoc);

  auto z4 = FiniteRing::build("Z(4)");
  CHECK(associate_vector(*z4, 2, z4->parse_element("2")).very_strong_assoc);
  auto zero = associate_vector(*z4, 0, 0);
  CHECK(zero == AssocVector{true, true, true, true, true});

  auto z22 = FiniteRing::build("Z(2)xZ(2)");
  const Elem e = z22->parse_element("(1,0)");
  auto w = associate_vector(*z22, e, e);
  CHECK(w.assoc);
  CHECK(w.strong_assoc);
  CHECK_FALSE(w.very_strong_assoc);

  auto other = FiniteRing::build("Z(4)");
  CHECK_THROWS_AS(associate_vector(*z4, z4->element(1), other->element(1)), RingMismatch);
}

TEST_CASE("element examples") {
  auto z4 = FiniteRing::build("Z(4)");
  auto c2 = classify_element(*z4, z4->parse_element("2"));
  CHECK(c2.prime);
  CHECK(c2.very_strongly_irreducible);

  auto st = FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)");
  auto cs = classify_element(*st, st->parse_element("s"));
  CHECK(cs.weakly_prime);
  CHECK_FALSE(cs.prime);

  auto z22 = FiniteRing::build("Z(2)xZ(2)");
  auto c01 = classify_element(*z22, z22->parse_element("(0,1)"));
  CHECK(c01.m_irreducible);
  CHECK_FALSE(c01.very_strongly_irreducible);

  auto z6 = FiniteRing::build("Z(6)");
  CHECK(classify_element(*z6, z6->parse_element("3")).irreducible);
}

TEST_CASE("presimplifiable rings") {
  CHECK(is_presimplifiable_ring(*FiniteRing::build("Z(4)")));
  auto z6 = FiniteRing::build("Z(6)");
  CHECK_FALSE(is_presimplifiable_ring(*z6));
  auto w = presimplifiable_witness(*z6);
  REQUIRE(w);
  CHECK(z6->mul(w->first, w->second) == w->first);
  CHECK_FALSE(z6->is_unit(w->second));
  for (const char* s : {"Z(2)", "Z(7)", "Z(2)[u]/(u^2+u+1)"}) CHECK(is_presimplifiable_ring(*FiniteRing::build(s)));
  // Finite rings: presimplifiable exactly when local.
  for (const auto& s : oracle::corpus()) {
    auto r = FiniteRing::build(s);
    CHECK(is_presimplifiable_ring(*r) == r->is_local());
  }
}

TEST_CASE("atomic factorizations in R") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(factor_labels(*z4, atomic_factorizations_elem(*z4, 2, 4)) == std::set<std::vector<std::string>>{{"2"}});
  auto zero = atomic_factorizations_elem(*z4, 0, 3);
  CHECK(factor_labels(*z4, zero) == std::set<std::vector<std::string>>{{"2", "2"}, {"2", "2", "2"}});

  auto z6 = FiniteRing::build("Z(6)");
  auto two = atomic_factorizations_elem(*z6, z6->parse_element("2"), 3);
  CHECK(factor_labels(*z6, two) == std::set<std::vector<std::string>>{{"2"}, {"2", "4"}, {"2", "4", "4"}});
  CHECK(two.extendable);

  CHECK_THROWS_AS(atomic_factorizations_elem(*z6, z6->one(), 3), Error);
  CHECK(default_len_cap(*z4) == 2 + 1 + 2);
}

TEST_CASE("factorizations multiply out and use atoms") {
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    oracle::Table t(*r);
    const auto cap = default_len_cap(*r);
    for (Elem a = 0; a < r->size(); ++a) {
      if (t.unit(a)) continue;
      auto f = atomic_factorizations_elem(*r, a, cap);
      for (const auto& fac : f.factorizations) {
        CHECK(fac.size() <= cap);
        Elem p = r->one();
        for (Elem x : fac) {
          CHECK(t.irreducible(x));
          p = r->mul(p, x);
        }
        CHECK(p == a);
      }
    }
  }
}
