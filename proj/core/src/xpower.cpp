// Powers of X. Over a local ring every divisor of X^n is a unit times a monic p with
// p = X^m mod nil, and distinct such p are not associates, so divisor classes, atoms
// and lengths reduce to exact computations on these monic representatives.

#include <algorithm>
#include <map>
#include <numeric>

#include "search.hpp"
#include "zdring/error.hpp"
#include "zdring/factor.hpp"

namespace zdring {

namespace {

constexpr std::size_t kMaxCandidates = 4'000'000;

void require_local(const FiniteRing& r) {
  if (!r.is_local()) throw Error(r.description() + " is not local");
}

std::set<std::size_t> sumset(const std::set<std::size_t>& a, const std::set<std::size_t>& b) {
  std::set<std::size_t> out;
  for (auto x : a) {
    for (auto y : b) out.insert(x + y);
  }
  return out;
}

}  // namespace

std::string LengthSet::str() const {
  std::string s = "{";
  for (auto it = lengths.begin(); it != lengths.end(); ++it) {
    if (it != lengths.begin()) s += ",";
    s += std::to_string(*it);
  }
  return s + "}";
}

bool is_distinguished(const Poly& p) {
  const auto& r = p.ring();
  if (p.is_zero() || p.leading() != r.one()) return false;
  for (int i = 0; i < p.degree(); ++i) {
    if (!r.is_nilpotent(p.coeff(i))) return false;
  }
  return true;
}

std::vector<Poly> monic_divisors(const Poly& p, int d) {
  const auto& r = p.ring();
  require_local(r);
  if (p.is_zero() || p.leading() != r.one()) throw Error("'" + p.str() + "' is not monic");
  std::vector<Poly> out;
  if (d < 0 || d > p.degree()) return out;
  const auto& q = r.reduced_quotient();
  const FiniteRing& field = *q.ring;
  std::vector<std::vector<Elem>> fibers(field.size());
  for (Elem a = 0; a < r.size(); ++a) fibers[q.projection[a]].push_back(a);
  const Poly pbar = reduce_mod_nil(p);
  detail::for_each_monic(field, d, [&](const Poly& qbar) {
    if (!divmod(pbar, qbar).remainder.is_zero()) return true;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
      std::vector<Elem> c(d + 1);
      for (int i = 0; i < d; ++i) c[i] = fibers[qbar.coeff(i)][idx[i]];
      c[d] = r.one();
      Poly cand(r, std::move(c));
      if (divmod(p, cand).remainder.is_zero()) out.push_back(cand);
      int i = 0;
      while (i < d && ++idx[i] == fibers[qbar.coeff(i)].size()) idx[i++] = 0;
      if (i == d) break;
    }
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Poly> factor_monic(const Poly& p) {
  if (p.degree() <= 0) return {};
  for (int d = 1; 2 * d <= p.degree(); ++d) {
    auto divs = monic_divisors(p, d);
    if (divs.empty()) continue;
    // A divisor of least degree is an atom.
    std::vector<Poly> out{divs.front()};
    auto rest = factor_monic(divmod(p, divs.front()).quotient);
    out.insert(out.end(), rest.begin(), rest.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  return {p};
}

std::vector<Poly> distinguished_divisors_xn(const FiniteRing& r, int n) {
  require_local(r);
  const auto& nil = r.structure().nilradical;
  std::size_t total = 0, layer = 1;
  for (int m = 0; m <= n; ++m, layer *= nil.size()) {
    total += layer;
    if (total > kMaxCandidates) throw Error("divisor search for X^" + std::to_string(n) + " too large");
  }
  const Poly xn = Poly::monomial(r, r.one(), n);
  std::vector<Poly> out;
  for (int m = 0; m <= n; ++m) {
    std::vector<std::size_t> idx(m, 0);
    while (true) {
      std::vector<Elem> c(m + 1);
      for (int i = 0; i < m; ++i) c[i] = nil[idx[i]];
      c[m] = r.one();
      Poly q(r, std::move(c));
      if (divmod(xn, q).remainder.is_zero()) out.push_back(q);
      int i = 0;
      while (i < m && ++idx[i] == nil.size()) idx[i++] = 0;
      if (i == m) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::set<std::size_t> local_lengths(const FiniteRing& r, int n) {
  if (r.structure().is_field) return {static_cast<std::size_t>(n)};
  const auto divs = distinguished_divisors_xn(r, n);
  std::map<std::vector<Elem>, std::size_t> index;
  for (std::size_t i = 0; i < divs.size(); ++i) index[divs[i].coeffs()] = i;
  // Divisors of a divisor of X^n divide X^n, so atoms are found inside the list.
  std::vector<bool> atom(divs.size(), false);
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (divs[i].degree() < 1) continue;
    atom[i] = true;
    for (std::size_t j = 0; j < divs.size() && atom[i]; ++j) {
      int dj = divs[j].degree();
      if (dj >= 1 && dj < divs[i].degree() && divmod(divs[i], divs[j]).remainder.is_zero()) atom[i] = false;
    }
  }
  // divs is sorted by degree, so quotients are already done.
  std::vector<std::set<std::size_t>> lengths(divs.size());
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (divs[i].degree() == 0) {
      lengths[i] = {0};
      continue;
    }
    for (std::size_t a = 0; a < divs.size(); ++a) {
      if (!atom[a] || divs[a].degree() > divs[i].degree()) continue;
      auto [q, rem] = divmod(divs[i], divs[a]);
      if (!rem.is_zero()) continue;
      for (auto l : lengths[index.at(q.coeffs())]) lengths[i].insert(l + 1);
    }
  }
  return lengths[index.at(Poly::monomial(r, r.one(), n).coeffs())];
}

}  // namespace

LengthSet set_of_lengths_xn(const FiniteRing& r, int n) {
  if (n < 1) throw Error("n must be at least 1");
  LengthSet out;
  out.deg_bound = n;
  out.len_cap = static_cast<std::size_t>(n);
  out.saturated = true;
  out.lengths = {0};
  for (const auto& comp : r.local_components()) out.lengths = sumset(out.lengths, local_lengths(*comp.ring, n));
  return out;
}

LengthSet lengths_xn_by_search(const FiniteRing& r, int n) {
  require_local(r);
  if (n < 1) throw Error("n must be at least 1");
  const auto& units = r.structure().units;
  const auto& nil = r.structure().nilradical;
  const Poly xn = Poly::monomial(r, r.one(), n);

  // Candidates: u X^m + (nilpotent terms) of degree <= n that divide X^n.
  std::vector<Poly> cands;
  for (int m = 0; m <= n; ++m) {
    std::vector<std::size_t> idx(n + 1, 0);
    while (true) {
      std::vector<Elem> c(n + 1);
      for (int i = 0; i <= n; ++i) c[i] = i == m ? units[idx[i]] : nil[idx[i]];
      Poly g(r, std::move(c));
      bool divides = false;
      for_each_cofactor(g, xn, 2 * n, [&](const Poly&) {
        divides = true;
        return false;
      });
      if (divides) cands.push_back(g);
      int i = 0;
      while (i <= n && ++idx[i] == (i == m ? units.size() : nil.size())) idx[i++] = 0;
      if (i > n) break;
      if (cands.size() > kMaxCandidates) throw Error("candidate search too large");
    }
  }
  std::sort(cands.begin(), cands.end());
  std::map<std::vector<Elem>, std::size_t> index;
  for (std::size_t i = 0; i < cands.size(); ++i) index[cands[i].coeffs()] = i;

  // Classes under multiplication by units of degree <= n.
  std::vector<std::size_t> parent(cands.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for_each_unit(r, n, [&](const Poly& u) {
    for (std::size_t i = 0; i < cands.size(); ++i) {
      Poly v = u * cands[i];
      if (v.degree() > n) continue;
      auto it = index.find(v.coeffs());
      if (it != index.end()) parent[find(it->second)] = find(i);
    }
    return true;
  });
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (find(i) == i) reps.push_back(i);
  }
  auto m_of = [&](const Poly& g) { return reduce_mod_nil(g).degree(); };
  std::sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    int ma = m_of(cands[a]), mb = m_of(cands[b]);
    return ma != mb ? ma < mb : a < b;
  });
  auto class_of = [&](const Poly& h) -> std::size_t {
    if (h.degree() <= n) {
      if (auto it = index.find(h.coeffs()); it != index.end()) return find(it->second);
    }
    for (auto rep : reps) {
      if (m_of(cands[rep]) != m_of(h)) continue;
      bool fwd = false, back = false;
      for_each_cofactor(h, cands[rep], 2 * n, [&](const Poly&) { return !(fwd = true); });
      for_each_cofactor(cands[rep], h, 2 * n, [&](const Poly&) { return !(back = true); });
      if (fwd && back) return rep;
    }
    throw Error("cofactor outside the candidate classes");
  };
  auto cofactor = [&](const Poly& a, const Poly& g) -> std::optional<Poly> {
    std::optional<Poly> out;
    for_each_cofactor(a, g, 2 * n, [&](const Poly& h) {
      out = h;
      return false;
    });
    return out;
  };

  std::map<std::size_t, bool> atom;
  for (auto g : reps) {
    if (m_of(cands[g]) == 0) continue;
    bool is_atom = true;
    for (auto a : reps) {
      if (!is_atom) break;
      if (m_of(cands[a]) == 0 || a == g) continue;
      auto h = cofactor(cands[a], cands[g]);
      if (h && !classify_poly(*h).unit) is_atom = false;
    }
    atom[g] = is_atom;
  }
  std::map<std::size_t, std::set<std::size_t>> lengths;
  for (auto g : reps) {
    if (m_of(cands[g]) == 0) {
      lengths[g] = {0};
      continue;
    }
    for (auto [a, is_atom] : atom) {
      if (!is_atom) continue;
      auto h = cofactor(cands[a], cands[g]);
      if (!h) continue;
      for (auto l : lengths.at(class_of(*h))) lengths[g].insert(l + 1);
    }
  }
  LengthSet out;
  out.deg_bound = n;
  out.len_cap = static_cast<std::size_t>(n);
  out.saturated = true;
  out.tier = Tier::bounded;
  out.lengths = lengths.at(class_of(xn));
  return out;
}

XFactorization factor_x(const FiniteRing& r, int search_bound) {
  XFactorization out;
  const auto& comps = r.local_components();
  out.canonical.unit = Poly::constant(r, r.one());
  out.primes = true;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out.canonical.factors.push_back(detail::embed_component(r, i, Poly::x(*comps[i].ring)));
    out.primes = out.primes && comps[i].ring->structure().is_field;
  }
  std::sort(out.canonical.factors.begin(), out.canonical.factors.end());
  Poly product = Poly::constant(r, r.one());
  for (const auto& f : out.canonical.factors) product = product * f;
  if (product != Poly::x(r)) throw Error("component factors of X do not multiply to X");
  out.search_bound = search_bound;
  out.uniqueness_count =
      factorizations_by_search(Poly::x(r), search_bound, comps.size() + 2).class_count;
  return out;
}

std::optional<HfrWitness> hfr_witness(const FiniteRing& r) {
  if (!r.is_local() || r.structure().is_field) return std::nullopt;
  std::optional<Elem> b;
  for (Elem a : r.structure().nilradical) {
    if (a != 0 && classify_element(r, a).irreducible) {
      b = a;
      break;
    }
  }
  if (!b) return std::nullopt;
  int n = 1;
  while (r.pow(*b, std::uint64_t{1} << (n - 1)) != 0) ++n;
  HfrWitness w;
  w.atom = *b;
  const int big = 1 << n;
  w.subject = Poly::monomial(r, r.one(), big);
  w.longer.assign(big, Poly::x(r));
  // X^(2^n) = (X^(2^(n-1)) + b^(2^(n-2))) ... (X^4 + b^2)(X^2 + b)(X^2 - b)
  w.shorter.push_back(Poly(r, {*b, 0, r.one()}));
  w.shorter.push_back(Poly(r, {r.neg(*b), 0, r.one()}));
  for (int k = 2; k < n; ++k) {
    Poly f = Poly::monomial(r, r.one(), 1 << k) + Poly::constant(r, r.pow(*b, std::uint64_t{1} << (k - 1)));
    auto atoms = factor_monic(f);
    w.shorter.insert(w.shorter.end(), atoms.begin(), atoms.end());
  }
  std::sort(w.shorter.begin(), w.shorter.end());
  Poly product = Poly::constant(r, r.one());
  for (const auto& f : w.shorter) product = product * f;
  if (product != w.subject || w.shorter.size() >= w.longer.size()) {
    throw Error("length witness construction failed on " + r.description());
  }
  return w;
}

PolyFactorizations detail::factorizations_of_xn_factor(const Poly& f, std::size_t len_cap) {
  const auto& r = f.ring();
  const auto& comps = r.local_components();
  const auto parts = split_components(f);
  // Per component: the unit part and every multiset of monic atoms with product p_i.
  std::vector<std::vector<std::vector<Poly>>> per(comps.size());
  std::vector<Poly> unit_parts;
  bool cap_hit = false;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    auto mf = monic_form(parts[i]);
    if (!mf) throw Error("'" + f.str() + "' does not divide a power of X");
    unit_parts.push_back(mf->unit);
    const Poly& p = mf->monic;
    std::vector<Poly> atoms;
    for (int d = 1; d <= p.degree(); ++d) {
      for (auto& q : monic_divisors(p, d)) {
        if (factor_monic(q).size() == 1) atoms.push_back(q);
      }
    }
    std::vector<Poly> stack;
    auto rec = [&](auto&& self, const Poly& t, std::size_t first) -> void {
      if (t.degree() == 0) {
        per[i].push_back(stack);
        return;
      }
      if (stack.size() == len_cap) {
        cap_hit = true;
        return;
      }
      for (std::size_t k = first; k < atoms.size(); ++k) {
        if (atoms[k].degree() > t.degree()) continue;
        auto [q, rem] = divmod(t, atoms[k]);
        if (!rem.is_zero()) continue;
        stack.push_back(atoms[k]);
        self(self, q, k);
        stack.pop_back();
      }
    };
    rec(rec, p, 0);
  }
  PolyFactorizations out;
  out.deg_bound = f.degree();
  out.len_cap = len_cap;
  out.cap_hit = cap_hit;
  out.tier = Tier::exact;
  const Poly unit = join_components(r, unit_parts);
  std::vector<std::size_t> idx(comps.size(), 0);
  for (const auto& options : per) {
    if (options.empty()) return out;
  }
  while (true) {
    PolyFactorization pf;
    pf.unit = unit;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (const auto& q : per[i][idx[i]]) pf.factors.push_back(detail::embed_component(r, i, q));
    }
    if (pf.factors.size() <= len_cap) {
      std::sort(pf.factors.begin(), pf.factors.end());
      out.items.push_back(std::move(pf));
    }
    std::size_t i = 0;
    while (i < comps.size() && ++idx[i] == per[i].size()) idx[i++] = 0;
    if (i == comps.size()) break;
  }
  std::sort(out.items.begin(), out.items.end(), [](const auto& a, const auto& b) {
    return a.length() != b.length() ? a.length() < b.length() : a.factors < b.factors;
  });
  for (std::size_t k = 0; k < out.items.size(); ++k) out.items[k].class_id = k;
  out.class_count = out.items.size();
  return out;
}

}  // namespace zdring
