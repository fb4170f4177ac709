#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "zdring/error.hpp"
#include "zdring/factor.hpp"

using namespace zdring;

namespace {

Poly P(const FiniteRing& r, const char* text) { return parse_poly(r, text); }

Poly product(const PolyFactorization& f) {
  Poly p = f.unit;
  for (const auto& g : f.factors) p = p * g;
  return p;
}

std::set<std::string> factor_strings(const PolyFactorizations& fs) {
  std::set<std::string> out;
  for (const auto& f : fs.items) {
    std::string s;
    for (const auto& g : f.factors) s += "(" + g.str() + ")";
    out.insert(s);
  }
  return out;
}

}  // namespace

TEST_CASE("divisors of powers of X") {
  auto z5 = FiniteRing::build("Z(5)");
  auto d = divisors_poly(P(*z5, "X^2"), 2);
  REQUIRE(d.reps.size() == 3);
  CHECK(d.reps[0] == P(*z5, "1"));
  CHECK(d.reps[1] == P(*z5, "X"));
  CHECK(d.reps[2] == P(*z5, "X^2"));
  CHECK(d.tier == Tier::exact);

  auto z4 = FiniteRing::build("Z(4)");
  auto dx = divisors_poly(Poly::x(*z4), 1);
  REQUIRE(dx.reps.size() == 2);
  CHECK(dx.reps[0] == P(*z4, "1"));
  CHECK(dx.reps[1] == P(*z4, "X"));
}

TEST_CASE("irreducibility examples") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(is_irreducible_poly(P(*z4, "X^3+2"), 3).value);
  CHECK(is_irreducible_poly(P(*z4, "X^3+2"), 3).tier == Tier::exact);
  CHECK_FALSE(is_irreducible_poly(P(*z4, "X^2"), 2).value);
  CHECK(is_irreducible_poly(P(*z4, "2"), 1).value);
  CHECK_THROWS_AS(is_irreducible_poly(P(*z4, "1+2X"), 2), Error);

  auto z6 = FiniteRing::build("Z(6)");
  auto x6 = is_irreducible_poly(Poly::x(*z6), 2);
  CHECK_FALSE(x6.value);
  CHECK(x6.tier == Tier::exact);

  auto z22 = FiniteRing::build("Z(2)xZ(2)");
  auto c = is_irreducible_poly(P(*z22, "(0,1)"), 1);
  CHECK(c.value);
  CHECK(c.tier == Tier::exact);
}

TEST_CASE("indecomposability examples") {
  auto z6 = FiniteRing::build("Z(6)");
  auto x = is_indecomposable_poly(Poly::x(*z6), 1);
  CHECK_FALSE(x.value);
  CHECK(x.witness.find("X =") != std::string::npos);
  CHECK(P(*z6, "2+3X") * P(*z6, "3+2X") == Poly::x(*z6));
  CHECK_FALSE(is_indecomposable_poly(Poly(*z6), 1).value);

  auto z4 = FiniteRing::build("Z(4)");
  CHECK(is_indecomposable_poly(Poly::x(*z4), 1).value);
  CHECK(is_indecomposable_poly(P(*z4, "2X"), 2).value);
  CHECK(is_indecomposable_poly(P(*z4, "2X+2"), 2).value);
}

TEST_CASE("atomic factorizations over Z(4)") {
  auto z4 = FiniteRing::build("Z(4)");
  auto two_x = atomic_factorizations_poly(P(*z4, "2X"), 2, 4);
  CHECK(two_x.class_count == 2);
  CHECK(factor_strings(two_x) == std::set<std::string>{"(2)(X)", "(2)(X+2)"});

  auto two_x2 = atomic_factorizations_poly(P(*z4, "2X+2"), 2, 4);
  CHECK(two_x2.class_count == 2);
  for (const auto& f : two_x2.items) CHECK(product(f) == P(*z4, "2X+2"));

  auto x2 = atomic_factorizations_poly(P(*z4, "X^2"), 2, 4);
  CHECK(x2.class_count == 2);
  CHECK(factor_strings(x2) == std::set<std::string>{"(X)(X)", "(X+2)(X+2)"});
  CHECK(x2.tier == Tier::exact);

  CHECK_THROWS_AS(atomic_factorizations_poly(P(*z4, "3"), 2, 4), Error);
  CHECK_THROWS_AS(atomic_factorizations_poly(Poly(*z4), 2, 4), Error);
}

TEST_CASE("factorizations multiply out to the subject") {
  for (const auto& s : oracle::corpus()) {
    auto r = FiniteRing::build(s);
    if (r->size() > 9) continue;
    CAPTURE(s);
    for (const char* subject : {"X", "X^2", "X^2+X", "2X"}) {
      const Poly f = P(*r, subject);
      if (f.is_zero() || classify_poly(f).unit) continue;
      auto fs = atomic_factorizations_poly(f, 2, default_len_cap(*r));
      CHECK(fs.class_count == fs.items.size());
      for (const auto& item : fs.items) {
        CHECK(product(item) == f);
        CHECK(classify_poly(item.unit).unit);
        for (const auto& g : item.factors) CHECK(is_irreducible_poly(g, 2).value);
      }
    }
  }
}

TEST_CASE("sets of lengths of X^n over Z(4)") {
  auto z4 = FiniteRing::build("Z(4)");
  auto ref = oracle::z4_lengths(8);
  // Hand checks against the oracle itself.
  CHECK(ref[1] == std::set<std::size_t>{1});
  CHECK(ref[4] == std::set<std::size_t>{2, 4});
  CHECK(ref[6] == std::set<std::size_t>{2, 4, 6});
  for (int n = 1; n <= 8; ++n) {
    CAPTURE(n);
    auto ls = set_of_lengths_xn(*z4, n);
    CHECK(ls.lengths == ref[n]);
    CHECK(lengths_xn_by_search(*z4, n).lengths == ref[n]);
  }
  CHECK(set_of_lengths_xn(*z4, 4).str() == "{2,4}");
  CHECK(set_of_lengths_xn(*z4, 7).lengths == std::set<std::size_t>{3, 5, 7});
  CHECK(set_of_lengths_xn(*z4, 8).lengths == std::set<std::size_t>{2, 3, 4, 6, 8});
  // X^n is always a product of n copies of the atom X.
  CHECK(set_of_lengths_xn(*z4, 5).lengths.count(5) == 1);
}

TEST_CASE("sets of lengths on other bases") {
  auto z5 = FiniteRing::build("Z(5)");
  CHECK(set_of_lengths_xn(*z5, 3).lengths == std::set<std::size_t>{3});
  auto z6 = FiniteRing::build("Z(6)");
  for (int n = 1; n <= 3; ++n) CHECK(*set_of_lengths_xn(*z6, n).lengths.rbegin() == static_cast<std::size_t>(2 * n));
  for (const char* s : {"Z(8)", "Z(9)", "Z(2)[s,t]/(s^2,s*t,t^2)"}) {
    auto r = FiniteRing::build(s);
    for (int n = 1; n <= 3; ++n) {
      CAPTURE(s);
      CAPTURE(n);
      CHECK(set_of_lengths_xn(*r, n).lengths == lengths_xn_by_search(*r, n).lengths);
    }
  }
}

TEST_CASE("monic divisors and distinguished polynomials") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(is_distinguished(P(*z4, "X^2+2X+2")));
  CHECK_FALSE(is_distinguished(P(*z4, "X^2+1")));
  auto ds = distinguished_divisors_xn(*z4, 2);
  for (const auto& d : ds) CHECK(divides_poly(d, P(*z4, "X^2"), 2).value);
  for (const auto& q : monic_divisors(P(*z4, "X^4"), 2)) {
    CHECK(q.degree() == 2);
    CHECK(divmod(P(*z4, "X^4"), q).remainder.is_zero());
  }
  auto fm = factor_monic(P(*z4, "X^4"));
  Poly p = P(*z4, "1");
  for (const auto& g : fm) p = p * g;
  CHECK(p == P(*z4, "X^4"));
}

TEST_CASE("factoring X") {
  auto z6 = FiniteRing::build("Z(6)");
  auto f6 = factor_x(*z6);
  CHECK(f6.canonical.length() == 2);
  CHECK(f6.uniqueness_count == 1);
  CHECK(f6.primes);
  CHECK(product(f6.canonical) == Poly::x(*z6));

  auto z4 = FiniteRing::build("Z(4)");
  auto f4 = factor_x(*z4);
  CHECK(f4.canonical.length() == 1);
  CHECK(f4.canonical.factors[0] == Poly::x(*z4));
  CHECK(f4.uniqueness_count == 1);
  CHECK_FALSE(f4.primes);

  auto z222 = FiniteRing::build("Z(2)xZ(2)xZ(2)");
  auto f8 = factor_x(*z222);
  CHECK(f8.canonical.length() == 3);
  CHECK(f8.uniqueness_count == 1);
  CHECK(f8.primes);
  CHECK(product(f8.canonical) == Poly::x(*z222));
}

TEST_CASE("factors of X^n") {
  auto z6 = FiniteRing::build("Z(6)");
  CHECK(is_factor_of_xn(P(*z6, "2+3X")));
  CHECK(is_factor_of_xn(P(*z6, "X^2")));
  CHECK_FALSE(is_factor_of_xn(P(*z6, "X+1")));
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(is_factor_of_xn(P(*z4, "X+2")));
  CHECK(is_factor_of_xn(P(*z4, "2X+1")));
}

TEST_CASE("half-factoriality witness") {
  auto z4 = FiniteRing::build("Z(4)");
  auto w = hfr_witness(*z4);
  REQUIRE(w);
  CHECK(w->subject == P(*z4, "X^4"));
  CHECK(w->shorter.size() == 2);
  CHECK(w->longer.size() == 4);
  for (const auto* side : {&w->shorter, &w->longer}) {
    Poly p = P(*z4, "1");
    for (const auto& g : *side) {
      p = p * g;
      CHECK(is_irreducible_poly(g, 4).value);
    }
    CHECK(p == w->subject);
  }
  CHECK_FALSE(hfr_witness(*FiniteRing::build("Z(5)")));
  CHECK_FALSE(hfr_witness(*FiniteRing::build("Z(6)")));
}

TEST_CASE("non-isomorphic factorizations") {
  auto z4 = FiniteRing::build("Z(4)");
  auto w = find_nonisomorphic_factorizations(*z4, 2, true);
  REQUIRE(w);
  CHECK(w->subject == P(*z4, "X^2"));
  CHECK(product(w->first) == w->subject);
  CHECK(product(w->second) == w->subject);
  CHECK_FALSE(find_nonisomorphic_factorizations(*FiniteRing::build("Z(6)"), 2, true));
  CHECK_FALSE(find_nonisomorphic_factorizations(*FiniteRing::build("Z(5)"), 3, true));
}

TEST_CASE("U-decompositions") {
  auto z4 = FiniteRing::build("Z(4)");
  auto d0 = u_decomposition(*z4, 0);
  CHECK(d0.irrelevant.empty());
  CHECK(d0.relevant == std::vector<Elem>{2, 2});
  CHECK_FALSE(in_u(*z4, 2, 2));
  CHECK(in_u(*z4, 3, 2));

  auto z6 = FiniteRing::build("Z(6)");
  const Elem two = z6->parse_element("2"), four = z6->parse_element("4");
  CHECK(in_u(*z6, four, two));
  for (const char* s : {"1", "2", "4", "5"}) CHECK(in_u(*z6, z6->parse_element(s), two));
  auto d2 = u_decomposition(*z6, two);
  CHECK(d2.relevant == std::vector<Elem>{two});
  for (const auto& d : all_u_decompositions(*z6, two, 3)) {
    CHECK(d.relevant.size() == 1);
    for (Elem x : d.irrelevant) CHECK(in_u(*z6, x, two));
  }
  CHECK_THROWS_AS(u_decomposition(*z6, 1), Error);
}

TEST_CASE("Fletcher unique factorization") {
  CHECK(is_fletcher_ufr(*FiniteRing::build("Z(4)")).value);
  CHECK(is_fletcher_ufr(*FiniteRing::build("Z(6)")).value);
  auto st = is_fletcher_ufr(*FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)"));
  CHECK_FALSE(st.value);
  CHECK(st.witness.has_value());
  for (const auto& s : oracle::corpus()) {
    auto rep = is_fletcher_ufr(*FiniteRing::build(s));
    CHECK(rep.value == rep.structure);
  }
}

TEST_CASE("weakly prime probe") {
  auto z4 = FiniteRing::build("Z(4)");
  auto e4 = probe_weakly_prime_lift(*z4, 2);
  REQUIRE(e4.size() == 1);
  CHECK(e4[0].prime_in_ring);
  CHECK_FALSE(e4[0].found);

  CHECK(probe_weakly_prime_lift(*FiniteRing::build("Z(5)"), 2).empty());

  auto st = FiniteRing::build("Z(2)[s,t]/(s^2,s*t,t^2)");
  auto es = probe_weakly_prime_lift(*st, 2);
  CHECK_FALSE(es.empty());
  for (const auto& e : es) {
    CHECK(e.bound == 2);
    if (!e.found) continue;
    const auto& [f, g] = *e.witness;
    CHECK_FALSE((f * g).is_zero());
  }
}
