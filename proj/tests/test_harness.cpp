#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "json.hpp"
#include "zdring/error.hpp"
#include "zdring/harness.hpp"

using namespace zdring;

namespace {

Corpus small_corpus() { return Corpus::parse("Z(4)\nZ(6)\n# comment\nZ(2)xZ(2)  # trailing\n\n"); }

const CheckResult& find(const SuiteReport& rep, const std::string& ring, const std::string& check) {
  for (const auto& c : rep.checks) {
    if (c.ring == ring && c.check == check) return c;
  }
  throw std::runtime_error("missing result " + ring + " " + check);
}

}  // namespace

TEST_CASE("corpus parsing") {
  auto c = small_corpus();
  CHECK(c.specs == std::vector<std::string>{"Z(4)", "Z(6)", "Z(2)xZ(2)"});
  CHECK(Corpus::load("default").specs.size() == 23);
  CHECK_THROWS_AS(Corpus::load("/nonexistent/corpus.txt"), Error);
}

TEST_CASE("check ids") {
  const auto& ids = check_ids();
  CHECK(std::find(ids.begin(), ids.end(), "thm4.3-uniqueness") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "prop3.3") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "thm6.2-witness") != ids.end());
  CHECK_THROWS_AS(run_suite(small_corpus(), {"no-such-check"}, {}), Error);
  auto rep = run_suite(small_corpus(), {"thm6.2"}, {}, 1);
  REQUIRE(rep.checks.size() == 3);
  CHECK(rep.checks[0].check == "thm6.2-witness");
}

TEST_CASE("outcomes") {
  auto rep = run_suite(small_corpus(), {"thm4.1", "thm6.3", "thm6.2-witness"}, {}, 2);
  CHECK(rep.all_pass());
  CHECK(find(rep, "Z(4)", "thm4.1").outcome == Outcome::pass);
  CHECK(find(rep, "Z(6)", "thm6.3").outcome == Outcome::na);
  CHECK(find(rep, "Z(6)", "thm6.2-witness").outcome == Outcome::na);
  const auto& w = find(rep, "Z(4)", "thm6.2-witness");
  CHECK(w.outcome == Outcome::pass);
  REQUIRE(w.witnesses.size() == 2);
  CHECK(w.witnesses[1] == "lengths 2 and 4");
  CHECK(std::string(outcome_name(Outcome::na)) == "n/a");
}

TEST_CASE("build failures affect only their ring") {
  auto rep = run_suite(Corpus::parse("Z(4)\nZ(4)[t]/(2*t)\nZ(1)\n"), {"thm4.1"}, {}, 1);
  REQUIRE(rep.rings.size() == 3);
  CHECK(rep.rings[0].error.empty());
  CHECK_FALSE(rep.rings[1].error.empty());
  CHECK_FALSE(rep.rings[2].error.empty());
  CHECK(rep.checks[0].outcome == Outcome::pass);
  CHECK(rep.checks[1].outcome == Outcome::error);
  CHECK(rep.checks[2].outcome == Outcome::error);
  CHECK_FALSE(rep.all_pass());
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> ids{"thm4.1", "thm4.5", "cor4.6", "dual-decider", "prop3.3"};
  auto a = run_suite(small_corpus(), ids, {}, 1);
  auto b = run_suite(small_corpus(), ids, {}, 4);
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.to_text() == b.to_text());

  auto doc = nlohmann::json::parse(a.to_json(true));
  CHECK(doc.contains("meta"));
  CHECK(doc["rings"].size() == 3);
  CHECK(doc["checks"].size() == 15);
  CHECK(doc["timing"].size() == 15);
  CHECK(doc["meta"]["bounds"]["deg"] == 3);
  CHECK_FALSE(nlohmann::json::parse(a.to_json(false)).contains("timing"));
  for (const auto& c : doc["checks"]) {
    CHECK(c.contains("ring"));
    CHECK(c.contains("outcome"));
    CHECK(c.contains("witnesses"));
  }
}

TEST_CASE("result cache") {
  const auto dir = std::filesystem::temp_directory_path() / "zdring-cache-test";
  std::filesystem::remove_all(dir);
  ResultCache cache(dir);
  const auto k1 = ResultCache::key("Z(4)", "X^2", "deg=2");
  const auto k2 = ResultCache::key("Z(4)", "X^2", "deg=3");
  const auto k3 = ResultCache::key("Z(4)X", "^2", "deg=2");
  CHECK(k1.size() == 16);
  CHECK(k1 != k2);
  CHECK(k1 != k3);
  CHECK(k1 == ResultCache::key("Z(4)", "X^2", "deg=2"));
  CHECK_FALSE(cache.get(k1));
  cache.put(k1, "payload\n");
  REQUIRE(cache.get(k1));
  CHECK(*cache.get(k1) == "payload\n");
  CHECK(cache.path_for(k1).parent_path().filename() == k1.substr(0, 2));
  cache.put(k1, "replaced");
  CHECK(*cache.get(k1) == "replaced");
  // No temporary files are left behind.
  std::size_t files = 0;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) files += e.is_regular_file();
  CHECK(files == 1);
  std::filesystem::remove_all(dir);
}
