#include "doctest.h"
#include "lt/error.hpp"
#include "lt/suites.hpp"

using namespace lt;

namespace {

std::vector<std::string> dump(const std::vector<Record>& rs) {
  std::vector<std::string> out;
  for (const auto& r : rs) out.push_back(to_json(r, false).dump());
  return out;
}

}  // namespace

TEST_CASE("suites: quick suites pass and reports are deterministic") {
  RunOptions opt{PrecisionContext::make(3, 2, 8, 64), 5, ""};
  for (const char* name : {"dwork", "witt", "classfield", "frobenius"}) {
    auto cases = build_suite(name, opt);
    REQUIRE_FALSE(cases.empty());
    auto a = run_cases(cases, 1, nullptr);
    auto b = run_cases(cases, 3, nullptr);
    CHECK(dump(a) == dump(b));
    for (const auto& r : a) {
      INFO(to_json(r).dump());
      CHECK((r.status == "pass" || r.status == "skip"));
    }
  }
}

TEST_CASE("suites: correspondence records and unknown names") {
  RunOptions opt{PrecisionContext::make(3, 2, 8, 64), 1, ""};
  int corr = 0;
  for (const auto& c : build_suite("classfield", opt)) corr += c.id.rfind("correspondence/", 0) == 0;
  CHECK(corr == 4);
  CHECK_THROWS_AS(build_suite("nope", opt), Error);
}

TEST_CASE("suites: records keep case order") {
  RunOptions opt{PrecisionContext::make(3, 1, 8, 64), 1, ""};
  auto cases = build_suite("witt", opt);
  std::vector<std::string> seen;
  run_cases(cases, 4, [&](const Record& r) { seen.push_back(r.case_id); });
  REQUIRE(seen.size() == cases.size());
  for (std::size_t i = 0; i < cases.size(); ++i) CHECK(seen[i] == cases[i].id);
}
