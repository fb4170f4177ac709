#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zdring {

// Ring specs, one per line in text form; '#' starts a comment.
struct Corpus {
  std::vector<std::string> specs;

  static Corpus default_corpus();
  static Corpus parse(std::string_view text);
  // "default" selects the built-in corpus; anything else is a file path.
  static Corpus load(const std::string& source);
};

struct SuiteBounds {
  int deg = 3;           // degree bound for polynomial searches
  int probe_deg = 3;     // degree bound for the weakly prime probe
  int lengths_max = 8;   // largest n for sets of lengths
  std::size_t len_cap = 0;  // 0 selects the ring's default cap
};

enum class Outcome { pass, fail, na, error };
const char* outcome_name(Outcome o);

struct CheckResult {
  std::string ring;
  std::string check;
  Outcome outcome = Outcome::pass;
  std::string detail;
  std::vector<std::string> witnesses;
  std::string tier;  // exact, bounded or mixed
  double seconds = 0;
};

struct RingInfo {
  std::string spec;
  std::size_t size = 0;
  std::string error;  // build failure, empty on success
};

struct SuiteReport {
  std::vector<RingInfo> rings;
  std::vector<CheckResult> checks;  // ring-major, in check-id order
  SuiteBounds bounds;

  bool all_pass() const;  // no fail or error outcomes
  // {meta, rings[], checks[], timing}; timing is omitted when include_timing is false.
  std::string to_json(bool include_timing = true) const;
  std::string to_text() const;
};

// Every check id, in execution order.
const std::vector<std::string>& check_ids();

// Runs each check on each ring. threads = 0 uses the hardware concurrency.
// Throws Error for an unknown check id. An id also selects the check it prefixes
// up to a '-'.
SuiteReport run_suite(const Corpus& corpus, const std::vector<std::string>& checks, const SuiteBounds& bounds,
                      unsigned threads = 0);

// Content-addressed result cache: one file per key under dir, written through a
// temporary file and a rename.
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);
  static std::string key(std::string_view ring, std::string_view subject, std::string_view bounds);
  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& value) const;
  std::filesystem::path path_for(const std::string& key) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace zdring
