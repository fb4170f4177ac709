// Realization of Z(n)[vars]/(relations).
//
// Polynomials of degree <= D are coordinate vectors over the monomials, ordered by
// degree then lexicographically, highest first. The span of the shifted relations is
// brought to Howell form over Z(n), which makes coordinate reduction canonical. Once
// every monomial of degree d..2d-2 reduces to lower terms, the residues of the
// monomials of degree < d carry the ring, and products of two of them stay inside
// the reduced range. The result is verified to be a commutative ring in which the
// relations vanish; such a ring is a quotient of the polynomial ring and at least
// as large, so it is the requested one.

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "carriers.hpp"
#include "zdring/error.hpp"

namespace zdring::detail {

namespace {

using Vec = std::vector<std::int64_t>;
using Monomial = std::vector<int>;

constexpr int kMaxDegree = 64;
constexpr std::size_t kMaxColumns = 1200;

int degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

std::int64_t mod(std::int64_t a, std::int64_t n) {
  a %= n;
  return a < 0 ? a + n : a;
}

// Returns (g, s, t) with s*x + t*y = g = gcd(x, y).
std::tuple<std::int64_t, std::int64_t, std::int64_t> ext_gcd(std::int64_t x, std::int64_t y) {
  std::int64_t s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (y != 0) {
    std::int64_t q = x / y;
    std::tie(x, y) = std::make_pair(y, x - q * y);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  return {x, s0, t0};
}

// Unit u of Z(n) with u*a = gcd(a, n) (mod n), for 0 < a < n.
std::int64_t normalizing_unit(std::int64_t a, std::int64_t n) {
  std::int64_t p = std::gcd(a, n);
  std::int64_t a1 = a / p, n1 = n / p;
  std::int64_t inv = n1 == 1 ? 0 : mod(std::get<1>(ext_gcd(a1, n1)), n1);
  for (std::int64_t u = inv;; u += n1) {
    if (std::gcd(u, n) == 1) return u % n;
  }
}

std::vector<Monomial> monomials_up_to(int nvars, int max_degree) {
  std::vector<Monomial> out;
  for (int d = max_degree; d >= 0; --d) {
    // All exponent vectors of total degree d, lexicographically descending.
    Monomial m(nvars, 0);
    std::vector<Monomial> level;
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == nvars - 1) {
        m[i] = left;
        level.push_back(m);
        return;
      }
      for (int e = left; e >= 0; --e) {
        m[i] = e;
        self(self, i + 1, left - e);
      }
    };
    rec(rec, 0, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

std::size_t column_count(int nvars, int max_degree) {
  // C(max_degree + nvars, nvars), saturating.
  double c = 1;
  for (int i = 1; i <= nvars; ++i) c = c * (max_degree + i) / i;
  return c > 1e9 ? std::size_t{1000000000} : static_cast<std::size_t>(c + 0.5);
}

struct Echelon {
  std::int64_t n;
  std::vector<Monomial> columns;
  std::map<Monomial, std::size_t> index;
  std::vector<std::int64_t> pivot;  // p_c; n when the column has no pivot row
  std::vector<Vec> rows;            // pivot row per column (empty when none)

  void reduce(Vec& v) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      if (v[c] == 0 || rows[c].empty()) continue;
      std::int64_t q = v[c] / pivot[c];
      if (q == 0) continue;
      for (std::size_t k = c; k < columns.size(); ++k) v[k] = mod(v[k] - q * rows[c][k], n);
    }
  }
};

Echelon eliminate(std::int64_t n, int nvars, int max_degree, const std::vector<IntPoly>& rels) {
  Echelon e{n, monomials_up_to(nvars, max_degree), {}, {}, {}};
  const std::size_t cols = e.columns.size();
  for (std::size_t c = 0; c < cols; ++c) e.index[e.columns[c]] = c;

  std::vector<Vec> pool;
  for (const auto& rel : rels) {
    int rd = rel.total_degree();
    for (const auto& m : e.columns) {
      if (degree(m) + rd > max_degree) continue;
      Vec v(cols, 0);
      for (const auto& [exps, coef] : rel.terms) {
        Monomial t(nvars);
        for (int i = 0; i < nvars; ++i) t[i] = exps[i] + m[i];
        auto& slot = v[e.index.at(t)];
        slot = mod(slot + coef, n);
      }
      pool.push_back(std::move(v));
    }
  }

  e.pivot.assign(cols, n);
  e.rows.assign(cols, {});
  for (std::size_t c = 0; c < cols; ++c) {
    std::vector<Vec> rest;
    Vec r;
    for (auto& v : pool) {
      if (v[c] == 0) {
        rest.push_back(std::move(v));
        continue;
      }
      if (r.empty()) {
        r = std::move(v);
        continue;
      }
      auto [g, s, t] = ext_gcd(r[c], v[c]);
      std::int64_t xr = r[c] / g, yr = v[c] / g;
      for (std::size_t k = c; k < cols; ++k) {
        std::int64_t a = r[k], b = v[k];
        r[k] = mod(s * a + t * b, n);
        v[k] = mod(xr * b - yr * a, n);
      }
      if (std::any_of(v.begin() + static_cast<std::ptrdiff_t>(c), v.end(),
                      [](std::int64_t x) { return x != 0; })) {
        rest.push_back(std::move(v));
      }
    }
    if (!r.empty()) {
      std::int64_t u = normalizing_unit(r[c], n);
      for (std::size_t k = c; k < cols; ++k) r[k] = r[k] * u % n;
      std::int64_t p = r[c];
      if (p != 1) {
        Vec extra(cols, 0);
        bool nonzero = false;
        for (std::size_t k = c + 1; k < cols; ++k) {
          extra[k] = r[k] * (n / p) % n;
          nonzero = nonzero || extra[k] != 0;
        }
        if (nonzero) rest.push_back(std::move(extra));
      }
      e.pivot[c] = p;
      e.rows[c] = std::move(r);
    }
    pool = std::move(rest);
  }
  return e;
}

std::string monomial_text(const Monomial& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += vars[i];
    if (m[i] > 1) s += '^' + std::to_string(m[i]);
  }
  return s;
}

// Basis arithmetic in digit space, independent of the carrier packing.
struct DigitRing {
  const PolyQuotientCarrier::Basis& b;
  const std::vector<Vec>& overflow;

  void normalize(Vec& acc) const {
    for (std::size_t k = acc.size(); k-- > 0;) {
      acc[k] = mod(acc[k], b.n);
      std::int64_t q = acc[k] / b.radix[k];
      if (q == 0) continue;
      acc[k] %= b.radix[k];
      for (std::size_t i = 0; i < k; ++i) acc[i] = mod(acc[i] + q * overflow[k][i], b.n);
    }
  }
  Vec mul(const Vec& x, const Vec& y) const {
    Vec acc(x.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < y.size(); ++j) {
        if (y[j] == 0) continue;
        const auto& t = b.products[i][j];
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] = mod(acc[k] + x[i] * y[j] % b.n * t[k], b.n);
      }
    }
    normalize(acc);
    return acc;
  }
  Vec add(const Vec& x, const Vec& y) const {
    Vec acc(x.size());
    for (std::size_t k = 0; k < x.size(); ++k) acc[k] = x[k] + y[k];
    normalize(acc);
    return acc;
  }
  Vec constant(std::int64_t c) const {
    Vec v(b.radix.size(), 0);
    v[0] = mod(c, b.n);
    normalize(v);
    return v;
  }
  Vec eval(const IntPoly& p) const {
    Vec total(b.radix.size(), 0);
    for (const auto& [exps, coef] : p.terms) {
      Vec term = constant(coef);
      for (std::size_t v = 0; v < exps.size(); ++v) {
        for (int e = 0; e < exps[v]; ++e) term = mul(term, b.var_digits[v]);
      }
      total = add(total, term);
    }
    return total;
  }
};

}  // namespace

std::shared_ptr<const PolyQuotientCarrier> PolyQuotientCarrier::build(
    std::int64_t n, const std::vector<std::string>& vars, const std::vector<IntPoly>& relations,
    const BuildOptions& options) {
  const int nvars = static_cast<int>(vars.size());
  std::vector<IntPoly> rels;
  int max_rel_degree = 0;
  for (const auto& r : relations) {
    IntPoly m;
    for (const auto& [e, c] : r.terms) {
      if (mod(c, n) != 0) m.terms[e] = mod(c, n);
    }
    if (m.terms.empty()) continue;
    max_rel_degree = std::max(max_rel_degree, m.total_degree());
    rels.push_back(std::move(m));
  }

  Echelon last;
  for (int D = std::max(1, max_rel_degree); D <= kMaxDegree; ++D) {
    if (column_count(nvars, D) > kMaxColumns) break;
    Echelon e = eliminate(n, nvars, D, rels);
    const std::size_t cols = e.columns.size();
    if (e.pivot[cols - 1] == 1) throw BuildError("relations collapse the ring to zero");

    std::vector<bool> unit_at_degree(D + 1, true);
    for (std::size_t c = 0; c < cols; ++c) {
      if (e.pivot[c] != 1) unit_at_degree[degree(e.columns[c])] = false;
    }
    int d = -1;
    for (int cand = 1; 2 * cand - 2 <= D && cand <= D; ++cand) {
      bool ok = true;
      for (int k = cand; k <= std::max(cand, 2 * cand - 2); ++k) ok = ok && unit_at_degree[k];
      if (ok) {
        d = cand;
        break;
      }
    }
    if (d < 0) {
      last = std::move(e);
      continue;
    }

    Basis b;
    b.n = n;
    b.vars = vars;
    std::vector<std::size_t> basis_cols;
    for (std::size_t c = cols; c-- > 0;) {
      if (degree(e.columns[c]) < d && e.pivot[c] != 1) {
        basis_cols.push_back(c);
        b.monomials.push_back(e.columns[c]);
        b.radix.push_back(e.pivot[c]);
      }
    }
    double size = 1;
    for (auto r : b.radix) size *= static_cast<double>(r);
    if (size > static_cast<double>(options.max_size)) {
      throw BuildError("not finite: the ring exceeds the size cap of " +
                       std::to_string(options.max_size) + " elements");
    }

    auto to_digits = [&](Vec v) {
      e.reduce(v);
      Vec out(basis_cols.size());
      for (std::size_t k = 0; k < basis_cols.size(); ++k) out[k] = v[basis_cols[k]];
      return out;
    };
    auto monomial_vec = [&](const Monomial& m, std::int64_t coef) {
      Vec v(cols, 0);
      v[e.index.at(m)] = mod(coef, n);
      return v;
    };
    const std::size_t nb = basis_cols.size();
    b.products.assign(nb, std::vector<Vec>(nb));
    for (std::size_t i = 0; i < nb; ++i) {
      for (std::size_t j = 0; j < nb; ++j) {
        Monomial m(nvars);
        for (int v = 0; v < nvars; ++v) m[v] = b.monomials[i][v] + b.monomials[j][v];
        b.products[i][j] = to_digits(monomial_vec(m, 1));
      }
    }
    for (int v = 0; v < nvars; ++v) {
      Monomial m(nvars, 0);
      m[v] = 1;
      b.var_digits.push_back(to_digits(monomial_vec(m, 1)));
    }
    std::vector<Vec> overflow(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      overflow[k] = b.radix[k] == n ? Vec(nb, 0) : to_digits(monomial_vec(b.monomials[k], b.radix[k]));
    }

    DigitRing ring{b, overflow};
    bool valid = true;
    auto unit_vec = [&](std::size_t k) {
      Vec v(nb, 0);
      v[k] = 1;
      return v;
    };
    for (std::size_t j = 0; j < nb && valid; ++j) valid = b.products[0][j] == unit_vec(j);
    // p_k e_k - (its reduction) must annihilate every basis element.
    for (std::size_t k = 0; k < nb && valid; ++k) {
      if (b.radix[k] == n) continue;
      Vec z(nb, 0);
      for (std::size_t i = 0; i < nb; ++i) z[i] = mod(-overflow[k][i], n);
      for (std::size_t j = 0; j < nb && valid; ++j) {
        Vec acc(nb, 0);
        for (std::size_t i = 0; i < nb; ++i) {
          std::int64_t coef = i == k ? mod(b.radix[k] + z[i], n) : z[i];
          for (std::size_t t = 0; t < nb; ++t) acc[t] = mod(acc[t] + coef * b.products[i][j][t], n);
        }
        ring.normalize(acc);
        valid = std::all_of(acc.begin(), acc.end(), [](std::int64_t x) { return x == 0; });
      }
    }
    for (std::size_t i = 0; i < nb && valid; ++i) {
      for (std::size_t j = 0; j < nb && valid; ++j) {
        for (std::size_t k = 0; k < nb && valid; ++k) {
          valid = ring.mul(b.products[i][j], unit_vec(k)) == ring.mul(unit_vec(i), b.products[j][k]);
        }
      }
    }
    for (const auto& r : rels) {
      if (!valid) break;
      Vec value = ring.eval(r);
      valid = std::all_of(value.begin(), value.end(), [](std::int64_t x) { return x == 0; });
    }
    if (!valid) {
      last = std::move(e);
      continue;
    }
    b.products.shrink_to_fit();
    auto carrier = std::shared_ptr<PolyQuotientCarrier>(new PolyQuotientCarrier(std::move(b)));
    carrier->overflow_ = std::move(overflow);
    return carrier;
  }

  for (int v = 0; v < nvars && !last.columns.empty(); ++v) {
    bool reduces = false;
    for (std::size_t c = 0; c < last.columns.size(); ++c) {
      const auto& m = last.columns[c];
      if (m[v] > 0 && degree(m) == m[v] && last.pivot[c] == 1) reduces = true;
    }
    if (!reduces) {
      throw BuildError("not finite: no power of " + vars[v] +
                       " reduces to lower degree modulo the relations");
    }
  }
  throw BuildError("not finite: no finite monomial basis found up to degree " +
                   std::to_string(kMaxDegree));
}

PolyQuotientCarrier::PolyQuotientCarrier(Basis basis) : basis_(std::move(basis)) {
  for (auto r : basis_.radix) size_ *= static_cast<std::size_t>(r);
  Vec one(basis_.radix.size(), 0);
  one[0] = 1;
  one_ = pack(one);
  for (std::size_t k = 0; k < basis_.monomials.size(); ++k) label_order_.push_back(k);
  std::stable_sort(label_order_.begin(), label_order_.end(), [&](std::size_t x, std::size_t y) {
    const auto& mx = basis_.monomials[x];
    const auto& my = basis_.monomials[y];
    if (degree(mx) != degree(my)) return degree(mx) < degree(my);
    return mx > my;
  });
}

std::vector<std::int64_t> PolyQuotientCarrier::digits(Elem a) const {
  Vec d(basis_.radix.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    d[k] = a % basis_.radix[k];
    a = static_cast<Elem>(a / basis_.radix[k]);
  }
  return d;
}

Elem PolyQuotientCarrier::pack(const std::vector<std::int64_t>& d) const {
  std::int64_t a = 0;
  for (std::size_t k = d.size(); k-- > 0;) a = a * basis_.radix[k] + d[k];
  return static_cast<Elem>(a);
}

Elem PolyQuotientCarrier::add(Elem a, Elem b) const {
  return pack(DigitRing{basis_, overflow_}.add(digits(a), digits(b)));
}

Elem PolyQuotientCarrier::mul(Elem a, Elem b) const {
  return pack(DigitRing{basis_, overflow_}.mul(digits(a), digits(b)));
}

Elem PolyQuotientCarrier::neg(Elem a) const {
  Vec d = digits(a);
  for (auto& x : d) x = mod(-x, basis_.n);
  DigitRing{basis_, overflow_}.normalize(d);
  return pack(d);
}

std::string PolyQuotientCarrier::label(Elem a) const {
  Vec d = digits(a);
  std::string s;
  for (std::size_t k : label_order_) {
    if (d[k] == 0) continue;
    if (!s.empty()) s += '+';
    std::string mono = monomial_text(basis_.monomials[k], basis_.vars);
    if (mono.empty()) {
      s += std::to_string(d[k]);
    } else {
      if (d[k] != 1) s += std::to_string(d[k]) + '*';
      s += mono;
    }
  }
  return s.empty() ? "0" : s;
}

std::optional<Elem> PolyQuotientCarrier::parse(std::string_view text) const {
  IntPoly p;
  try {
    p = parse_int_poly(text, basis_.vars);
  } catch (const Error&) {
    return std::nullopt;
  }
  return pack(DigitRing{basis_, overflow_}.eval(p));
}

}  // namespace zdring::detail
