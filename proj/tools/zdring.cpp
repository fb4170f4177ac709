// zdring command-line front end.
//
// Exit codes: 0 success, 1 check failure, 2 usage or build error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zdring/classify.hpp"
#include "zdring/error.hpp"
#include "zdring/factor.hpp"
#include "zdring/harness.hpp"

using namespace zdring;

namespace {

constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string yn(bool v) { return v ? "yes" : "no"; }

std::string elem_list(const FiniteRing& r, const std::vector<Elem>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + r.label(xs[i]);
  return s + "}";
}

void describe(const FiniteRing& r, std::ostream& out) {
  const auto& st = r.structure();
  out << "ring: " << r.description() << "\n";
  out << "size: " << r.size() << "\n";
  out << "characteristic: " << r.characteristic() << "\n";
  out << "field: " << yn(st.is_field) << "\n";
  out << "domain: " << yn(st.is_domain) << "\n";
  out << "local: " << yn(st.is_local) << "\n";
  out << "reduced: " << yn(st.is_reduced) << "\n";
  out << "indecomposable: " << yn(st.is_indecomposable) << "\n";
  out << "spir: " << yn(st.is_spir) << "\n";
  out << "nilpotency index: " << r.nilpotency_index() << "\n";
  out << "units: " << elem_list(r, st.units) << "\n";
  out << "zero divisors: " << elem_list(r, st.zero_divisors) << "\n";
  out << "nilradical: " << elem_list(r, st.nilradical) << "\n";
  out << "idempotents: " << elem_list(r, st.idempotents) << "\n";
  out << "local components: " << r.local_components().size() << "\n";
  for (const auto& c : r.local_components()) {
    out << "  e=" << r.label(c.idempotent) << ": " << c.ring->description() << " (size " << c.ring->size() << ")\n";
  }
  auto rc = ring_class_deciders(r);
  out << "ring classes:";
  for (const auto& f : rc.flags) {
    if (f.definition) out << " " << f.name;
  }
  out << "\n";
  auto pr = classify_poly_ring(r);
  out << "R[X] classes:";
  for (const auto& f : pr.flags) {
    if (f.value) out << " " << f.name;
  }
  out << "\n";
  for (const auto& f : pr.flags) {
    if (!f.value) out << "  not " << f.name << " [" << provenance_name(f.provenance) << "]: " << f.witness << "\n";
  }
}

void classify_elem(const FiniteRing& r, Elem a, std::ostream& out) {
  auto c = classify_element(r, a);
  out << "element: " << r.label(a) << " in " << r.description() << "\n";
  out << "unit: " << yn(c.unit) << "\n";
  out << "regular: " << yn(c.regular) << "\n";
  out << "zero divisor: " << yn(c.zero_divisor) << "\n";
  out << "nilpotent: " << yn(c.nilpotent) << "\n";
  out << "idempotent: " << yn(c.idempotent) << "\n";
  out << "presimplifiable: " << yn(c.presimplifiable) << "\n";
  out << "irreducible: " << yn(c.irreducible) << "\n";
  out << "strongly irreducible: " << yn(c.strongly_irreducible) << "\n";
  out << "m-irreducible: " << yn(c.m_irreducible) << "\n";
  out << "very strongly irreducible: " << yn(c.very_strongly_irreducible) << "\n";
  out << "prime: " << yn(c.prime) << "\n";
  out << "weakly prime: " << yn(c.weakly_prime) << "\n";
  if (!c.unit) {
    auto facs = atomic_factorizations_elem(r, a, default_len_cap(r));
    out << "atomic factorizations (length <= " << facs.len_cap << "):";
    if (facs.factorizations.empty()) out << " none";
    out << "\n";
    for (const auto& f : facs.factorizations) {
      out << "  ";
      for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "*" : "") << r.label(f[i]);
      out << "\n";
    }
    if (facs.extendable) out << "  lengths unbounded: " << r.label(a) << " = " << r.label(a) << "*y for a nonunit y\n";
  }
}

void classify_polynomial(const Poly& f, int bound, std::ostream& out) {
  auto c = classify_poly(f);
  out << "polynomial: " << f.str() << " over " << f.ring().description() << "\n";
  out << "unit: " << yn(c.unit) << "\n";
  out << "regular: " << yn(c.regular) << "\n";
  out << "zero divisor: " << yn(c.zero_divisor) << "\n";
  out << "nilpotent: " << yn(c.nilpotent) << "\n";
  out << "idempotent: " << yn(c.idempotent) << "\n";
  if (c.unit || f.is_zero()) return;
  auto show = [&](const char* name, const Verdict& v) {
    out << name << ": " << yn(v.value) << " [" << tier_name(v.tier);
    if (v.tier == Tier::bounded) out << ", deg <= " << v.bound;
    out << "]";
    if (!v.witness.empty()) out << " " << v.witness;
    out << "\n";
  };
  show("irreducible", is_irreducible_poly(f, bound));
  show("indecomposable", is_indecomposable_poly(f, bound));
  out << "factor of X^n: " << yn(is_factor_of_xn(f)) << "\n";
}

std::string factor_text(const Poly& f, int bound, std::size_t cap) {
  auto facs = atomic_factorizations_poly(f, bound, cap);
  std::ostringstream out;
  out << "tier: " << tier_name(facs.tier) << " (deg-bound " << facs.deg_bound << ", len-cap " << facs.len_cap << ")\n";
  out << "classes: " << facs.class_count << (facs.cap_hit ? " (length cap reached)" : "") << "\n";
  for (const auto& item : facs.items) out << f.str() << " = " << item.str() << "\n";
  return out.str();
}

SuiteBounds parse_bounds(const std::string& text) {
  SuiteBounds b;
  std::istringstream in(text);
  for (std::string kv; std::getline(in, kv, ',');) {
    if (kv.empty()) continue;
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--bounds", "expected key=value, got '" + kv + "'");
    const auto key = kv.substr(0, eq);
    long v = 0;
    try {
      v = std::stol(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--bounds", "bad value in '" + kv + "'");
    }
    if (v < 0) throw CLI::ValidationError("--bounds", "negative value in '" + kv + "'");
    if (key == "deg") b.deg = static_cast<int>(v);
    else if (key == "probe_deg") b.probe_deg = static_cast<int>(v);
    else if (key == "lengths_max") b.lengths_max = static_cast<int>(v);
    else if (key == "len_cap") b.len_cap = static_cast<std::size_t>(v);
    else throw CLI::ValidationError("--bounds", "unknown key '" + key + "'");
  }
  return b;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization in finite commutative rings and their polynomial rings"};
  app.require_subcommand(1);

  auto* ring = app.add_subcommand("ring", "Ring construction");
  ring->require_subcommand(1);
  auto* describe_cmd = ring->add_subcommand("describe", "Structure and ring classes of R and R[X]");
  std::string spec;
  describe_cmd->add_option("spec", spec, "ring spec, e.g. Z(2)xZ(4)")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classify an element of R or a polynomial in R[X]");
  std::string subject;
  int classify_bound = -1;
  classify_cmd->add_option("spec", spec)->required();
  classify_cmd->add_option("element", subject, "element label or polynomial in X")->required();
  classify_cmd->add_option("--deg-bound", classify_bound, "search bound for polynomial subjects");

  auto* factor_cmd = app.add_subcommand("factor", "Atomic factorizations of a polynomial");
  int deg_bound = -1;
  std::size_t len_cap = 0;
  std::string cache_dir;
  factor_cmd->add_option("spec", spec)->required();
  factor_cmd->add_option("poly", subject)->required();
  factor_cmd->add_option("--deg-bound", deg_bound, "degree bound for divisor searches");
  factor_cmd->add_option("--len-cap", len_cap, "maximum factorization length (0: ring default)");
  factor_cmd->add_option("--cache", cache_dir, "result cache directory");

  auto* lengths_cmd = app.add_subcommand("lengths", "Set of lengths of X^n");
  int n = 0;
  lengths_cmd->add_option("spec", spec)->required();
  lengths_cmd->add_option("n", n)->required()->check(CLI::Range(1, 64));

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suite over a corpus");
  std::string checks_text, corpus_source = "default", bounds_text, out_path, format = "text";
  unsigned threads = 0;
  bool no_timing = false;
  verify_cmd->add_option("--checks", checks_text, "comma-separated check ids (default: all)");
  verify_cmd->add_option("--corpus", corpus_source, "corpus file, or 'default'");
  verify_cmd->add_option("--bounds", bounds_text, "deg=N,probe_deg=N,lengths_max=N,len_cap=N");
  verify_cmd->add_option("--out", out_path, "write the report to a file");
  verify_cmd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  verify_cmd->add_option("--threads", threads, "worker threads (0: hardware concurrency)");
  verify_cmd->add_flag("--no-timing", no_timing, "omit the timing block from JSON");

  auto* probe_cmd = app.add_subcommand("probe", "Bounded searches for open questions");
  probe_cmd->require_subcommand(1);
  auto* wp_cmd = probe_cmd->add_subcommand("weakly-prime", "Weakly prime elements of R that fail to be weakly prime in R[X]");
  int probe_deg = 3;
  wp_cmd->add_option("spec", spec)->required();
  wp_cmd->add_option("--deg-bound", probe_deg)->check(CLI::Range(0, 8));

  auto* list_cmd = app.add_subcommand("checks", "List check ids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*list_cmd) {
      for (const auto& id : check_ids()) std::cout << id << "\n";
      return 0;
    }
    if (*verify_cmd) {
      SuiteBounds bounds = parse_bounds(bounds_text);
      auto ids = checks_text.empty() ? check_ids() : split_list(checks_text);
      auto report = run_suite(Corpus::load(corpus_source), ids, bounds, threads);
      const std::string text = format == "json" ? report.to_json(!no_timing) : report.to_text();
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write '" + out_path + "'");
        out << text;
      }
      return report.all_pass() ? 0 : kFail;
    }

    auto r = FiniteRing::build(spec);
    if (*describe_cmd) {
      describe(*r, std::cout);
    } else if (*classify_cmd) {
      std::optional<Elem> a;
      try {
        a = r->parse_element(subject);
      } catch (const ParseError&) {
      }
      if (a) {
        classify_elem(*r, *a, std::cout);
      } else {
        const Poly f = parse_poly(*r, subject);
        classify_polynomial(f, classify_bound >= 0 ? classify_bound : default_bound(f), std::cout);
      }
    } else if (*factor_cmd) {
      const Poly f = parse_poly(*r, subject);
      const int bound = deg_bound >= 0 ? deg_bound : default_bound(f);
      const std::size_t cap = len_cap ? len_cap : default_len_cap(*r);
      if (cache_dir.empty()) {
        std::cout << factor_text(f, bound, cap);
      } else {
        ResultCache cache(cache_dir);
        const auto key = ResultCache::key(r->description(), f.str(),
                                          "deg=" + std::to_string(bound) + ",len=" + std::to_string(cap));
        auto hit = cache.get(key);
        if (!hit) {
          hit = factor_text(f, bound, cap);
          cache.put(key, *hit);
        }
        std::cout << *hit;
      }
    } else if (*lengths_cmd) {
      auto ls = set_of_lengths_xn(*r, n);
      std::cout << ls.str();
      if (ls.tier == Tier::bounded) {
        std::cout << "  [bounded: deg <= " << ls.deg_bound << ", length <= " << ls.len_cap
                  << (ls.saturated ? ", saturated" : "") << "]";
      }
      std::cout << "\n";
    } else if (*wp_cmd) {
      auto entries = probe_weakly_prime_lift(*r, probe_deg);
      std::cout << "probe: weakly prime in " << r->description() << " but not in R[X] [bounded: deg <= " << probe_deg
                << "]\n";
      if (entries.empty()) std::cout << "no weakly prime elements\n";
      for (const auto& e : entries) {
        std::cout << r->label(e.element) << ": ";
        if (e.prime_in_ring) {
          std::cout << "prime in R, prime in R[X]\n";
        } else if (e.found) {
          std::cout << "found " << e.witness->first.str() << " * " << e.witness->second.str() << "\n";
        } else {
          std::cout << "none at bound " << e.bound << "\n";
        }
      }
    }
    return 0;
  } catch (const InconsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
