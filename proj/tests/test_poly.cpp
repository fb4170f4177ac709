#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "zdring/error.hpp"
#include "zdring/poly.hpp"

using namespace zdring;

namespace {

Poly random_poly(const FiniteRing& r, std::mt19937& rng, int max_deg) {
  std::uniform_int_distribution<int> deg(-1, max_deg);
  std::uniform_int_distribution<Elem> coef(0, static_cast<Elem>(r.size() - 1));
  std::vector<Elem> c(static_cast<std::size_t>(deg(rng) + 1));
  for (auto& x : c) x = coef(rng);
  return Poly(r, c);
}

}  // namespace

TEST_CASE("polynomial arithmetic examples") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(parse_poly(*z4, "X+2") * parse_poly(*z4, "X+2") == parse_poly(*z4, "X^2"));
  auto z6 = FiniteRing::build("Z(6)");
  CHECK(parse_poly(*z6, "2+3X") * parse_poly(*z6, "3+2X") == Poly::x(*z6));
  const Poly f = parse_poly(*z6, "5X^3+X+4");
  CHECK(f * Poly::constant(*z6, 1) == f);
  CHECK(f.degree() == 3);
  CHECK(f.leading() == z6->parse_element("5"));
  CHECK(Poly(*z6).degree() == -1);
  CHECK(parse_poly(*z6, "6X^2+X").degree() == 1);
}

TEST_CASE("polynomial ring axioms, random") {
  std::mt19937 rng(20240517);
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    for (int i = 0; i < 60; ++i) {
      const Poly f = random_poly(*r, rng, 3), g = random_poly(*r, rng, 3), h = random_poly(*r, rng, 2);
      CHECK(f * g == g * f);
      CHECK((f * g) * h == f * (g * h));
      CHECK(f * (g + h) == f * g + f * h);
      CHECK((f - f).is_zero());
      CHECK(f + (-f) == Poly(*r));
      CHECK(pow(f, 3) == f * f * f);
      for (Elem a = 0; a < r->size(); ++a) {
        CHECK(eval(f * g, a) == r->mul(eval(f, a), eval(g, a)));
      }
      CHECK(div_xk(mul_xk(f, 2), 2) == f);
      CHECK(eval(shift(f, 1), 0) == eval(f, 1));
    }
  }
}

TEST_CASE("polynomial text round trip") {
  std::mt19937 rng(7);
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    for (int i = 0; i < 40; ++i) {
      const Poly f = random_poly(*r, rng, 4);
      CAPTURE(f.str());
      CHECK(parse_poly(*r, f.str()) == f);
      CHECK(render_poly(f) == f.str());
    }
  }
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(parse_poly(*z4, "2X^3+X+1").str() == "2X^3+X+1");
  CHECK(parse_poly(*z4, "0").str() == "0");
  CHECK_THROWS_AS(parse_poly(*z4, "X^"), ParseError);
  CHECK_THROWS_AS(parse_poly(*z4, "Y+1"), ParseError);
}

TEST_CASE("division by monic polynomials") {
  std::mt19937 rng(11);
  for (const char* s : {"Z(4)", "Z(6)", "Z(2)[s,t]/(s^2,s*t,t^2)", "Z(2)xZ(3)"}) {
    auto r = FiniteRing::build(s);
    for (int i = 0; i < 100; ++i) {
      const Poly f = random_poly(*r, rng, 5);
      Poly g = random_poly(*r, rng, 2);
      std::vector<Elem> c = g.coeffs();
      c.resize(3, 0);
      c[2] = r->one();
      g = Poly(*r, c);
      auto dm = divmod(f, g);
      CHECK(dm.quotient * g + dm.remainder == f);
      CHECK(dm.remainder.degree() < 2);
    }
  }
}

TEST_CASE("coefficient classifiers examples") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(classify_poly(parse_poly(*z4, "1+2X")).unit);
  CHECK(classify_poly(parse_poly(*z4, "2+2X")).nilpotent);
  auto z6 = FiniteRing::build("Z(6)");
  CHECK(classify_poly(parse_poly(*z6, "2+2X")).zero_divisor);
  CHECK(classify_poly(parse_poly(*z6, "3")).idempotent);
  CHECK_FALSE(classify_poly(parse_poly(*z6, "3X")).idempotent);
  CHECK(classify_poly(Poly::x(*z6)).regular);
}

TEST_CASE("coefficient classifiers against searches") {
  for (const auto& s : oracle::corpus()) {
    auto r = FiniteRing::build(s);
    if (r->size() > 9) continue;
    CAPTURE(s);
    std::size_t bad = 0;
    const int deg = r->size() <= 4 ? 2 : 1;
    std::vector<Elem> c(static_cast<std::size_t>(deg + 1), 0);
    // Odometer over every coefficient vector.
    while (true) {
      const Poly f(*r, c);
      auto pc = classify_poly(f);
      const bool unit = inverse_by_search(f, 4).has_value();
      const bool zd = annihilator_by_search(f, 4).has_value();
      if (pc.unit != unit || pc.zero_divisor != zd || pc.nilpotent != nilpotent_by_powering(f) ||
          pc.idempotent != idempotent_by_powering(f) || pc.regular == pc.zero_divisor) {
        ++bad;
      }
      std::size_t i = 0;
      while (i < c.size() && ++c[i] == r->size()) c[i++] = 0;
      if (i == c.size()) break;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("reduction modulo the nilradical") {
  auto z4 = FiniteRing::build("Z(4)");
  const Poly red = reduce_mod_nil(parse_poly(*z4, "X+2"));
  CHECK(red.ring().size() == 2);
  CHECK(red == Poly::x(red.ring()));
  CHECK(reduce_mod_nil(parse_poly(*z4, "2+2X")).is_zero());
  auto z6 = FiniteRing::build("Z(6)");
  const Poly f = parse_poly(*z6, "5X^2+3");
  CHECK(reduce_mod_nil(f) == f);
}

TEST_CASE("component split and join") {
  std::mt19937 rng(3);
  for (const auto& s : oracle::corpus()) {
    CAPTURE(s);
    auto r = FiniteRing::build(s);
    for (int i = 0; i < 20; ++i) {
      const Poly f = random_poly(*r, rng, 3), g = random_poly(*r, rng, 3);
      auto pf = split_components(f);
      CHECK(join_components(*r, pf) == f);
      auto pfg = split_components(f * g);
      auto pg = split_components(g);
      for (std::size_t k = 0; k < pf.size(); ++k) CHECK(pfg[k] == pf[k] * pg[k]);
    }
  }
}

TEST_CASE("monic form") {
  std::mt19937 rng(5);
  for (const char* s : {"Z(4)", "Z(8)", "Z(9)", "Z(2)[s,t]/(s^2,s*t,t^2)", "Z(4)[t]/(t^2,2*t)"}) {
    auto r = FiniteRing::build(s);
    CAPTURE(s);
    for (int i = 0; i < 80; ++i) {
      const Poly f = random_poly(*r, rng, 3);
      auto mf = monic_form(f);
      CHECK(mf.has_value() == (!f.is_zero() && classify_poly(f).regular));
      if (!mf) continue;
      CHECK(mf->unit * mf->monic == f);
      CHECK(classify_poly(mf->unit).unit);
      CHECK(mf->monic.leading() == r->one());
      CHECK(mf->monic.degree() == reduce_mod_nil(f).degree());
      CHECK(unit_inverse(mf->unit) * mf->unit == Poly::constant(*r, r->one()));
    }
  }
  CHECK_FALSE(monic_form(Poly::x(*FiniteRing::build("Z(6)"))).has_value());
}

TEST_CASE("associates in R[X]") {
  auto z4 = FiniteRing::build("Z(4)");
  auto a = poly_associates(Poly::x(*z4), parse_poly(*z4, "X+2"), 3);
  CHECK_FALSE(a.value.assoc);
  auto b = poly_associates(Poly::x(*z4), parse_poly(*z4, "3X"), 3);
  CHECK(b.value.strong_assoc);
  CHECK(b.value.assoc);

  auto z6 = FiniteRing::build("Z(6)");
  auto c = poly_associates(parse_poly(*z6, "2"), parse_poly(*z6, "4"), 1);
  CHECK(c.value.assoc);
  CHECK(c.tiers[0] == Tier::exact);
  CHECK_THROWS_AS(poly_associates(Poly::x(*z6), parse_poly(*z6, "X^3"), 2), Error);

  auto one = poly_associates(Poly::constant(*z4, 1), parse_poly(*z4, "1+2X"), 2);
  CHECK(one.value.assoc);
  CHECK(one.value.strong_assoc);
}

TEST_CASE("constant very strong associates") {
  auto z4 = FiniteRing::build("Z(4)");
  CHECK(constant_very_strong_assoc_in_polyring(*z4, 2, z4->parse_element("2")));
  CHECK(constant_very_strong_assoc_in_polyring(*z4, 0, 0));
  auto z6 = FiniteRing::build("Z(6)");
  CHECK_FALSE(constant_very_strong_assoc_in_polyring(*z6, z6->parse_element("2"), z6->parse_element("4")));
}

TEST_CASE("divisibility verdicts carry cofactors") {
  auto z4 = FiniteRing::build("Z(4)");
  auto d = divides_poly(parse_poly(*z4, "2"), parse_poly(*z4, "2X+2"), 2);
  REQUIRE(d.value);
  REQUIRE(d.cofactor);
  CHECK(parse_poly(*z4, "2") * *d.cofactor == parse_poly(*z4, "2X+2"));
  CHECK_FALSE(divides_poly(Poly::x(*z4), parse_poly(*z4, "X+2"), 3).value);
}
