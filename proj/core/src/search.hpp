#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zdring/factor.hpp"
#include "zdring/poly.hpp"

namespace zdring::detail {

// Every polynomial of degree <= bound, the zero polynomial included. Stops when visit
// returns false.
inline void for_each_poly(const FiniteRing& r, int bound, const std::function<bool(const Poly&)>& visit) {
  if (bound < 0) return;
  const auto n = static_cast<Elem>(r.size());
  std::vector<Elem> c(static_cast<std::size_t>(bound) + 1, 0);
  while (true) {
    if (!visit(Poly(r, c))) return;
    std::size_t i = 0;
    while (i < c.size() && ++c[i] == n) c[i++] = 0;
    if (i == c.size()) return;
  }
}

// Monic polynomials of degree exactly d.
inline void for_each_monic(const FiniteRing& r, int d, const std::function<bool(const Poly&)>& visit) {
  const auto n = static_cast<Elem>(r.size());
  std::vector<Elem> c(static_cast<std::size_t>(d) + 1, 0);
  c[d] = r.one();
  while (true) {
    if (!visit(Poly(r, c))) return;
    std::size_t i = 0;
    while (i < static_cast<std::size_t>(d) && ++c[i] == n) c[i++] = 0;
    if (i == static_cast<std::size_t>(d)) return;
  }
}

// Polynomial over R that is q in component i and 1 elsewhere.
inline Poly embed_component(const FiniteRing& r, std::size_t i, const Poly& q) {
  const auto& comps = r.local_components();
  if (comps.size() == 1) return Poly(r, q.coeffs());
  std::vector<Poly> parts;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    parts.push_back(j == i ? q : Poly::constant(*comps[j].ring, comps[j].ring->one()));
  }
  return join_components(r, parts);
}

// Exact atomic factorizations of a divisor of a power of X, through the monic forms
// of its local components.
PolyFactorizations factorizations_of_xn_factor(const Poly& f, std::size_t len_cap);

}  // namespace zdring::detail
