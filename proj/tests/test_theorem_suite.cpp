#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bimod/rng.hpp"
#include "bimod/verify.hpp"

using namespace bimod;

namespace {

Pattern nest2() { return Pattern::from_entries(2, 2, {{0, 0}, {0, 1}, {1, 1}}); }

Pattern zero_diag3() {
  Pattern p(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) p.set(i, j);
  return p;
}

int failures(const std::vector<VerifierReport>& reports) {
  int n = 0;
  for (const auto& r : reports)
    if (!r.passed) ++n;
  return n;
}

void require_all_pass(const std::vector<VerifierReport>& reports) {
  for (const auto& r : reports) {
    INFO(r.theorem_id, " on ", r.instance_digest, ": ", r.detail);
    CHECK(r.passed);
  }
}

}  // namespace

TEST_CASE("verify_all emits eighteen reports with stable ids") {
  const auto reports = verify_all(nest2(), 5, 42);
  CHECK(reports.size() == 18);
  std::set<std::string> ids;
  for (const auto& r : reports) ids.insert(r.theorem_id);
  CHECK(ids.size() == 18);
  CHECK(ids.count("Thm3.1") == 1);
  CHECK(ids.count("Prop3.6/3.7") == 1);
  CHECK(ids.count("Thm4.3") == 1);
  CHECK(ids.count("Thm6.8") == 1);
  CHECK(ids.count("Prop7.8") == 1);
  for (const auto& r : reports) CHECK(r.instance_digest == digest(nest2()));
  require_all_pass(reports);
}

TEST_CASE("verify_all on the canonical patterns") {
  require_all_pass(verify_all(zero_diag3(), 5, 7));
  require_all_pass(verify_all(Pattern::full(3, 4), 5, 7));
  require_all_pass(verify_all(Pattern(4, 4), 5, 7));
  require_all_pass(verify_all(Pattern::from_entries(2, 3, {{0, 0}}), 5, 7));
}

TEST_CASE("failed reports carry counterexamples") {
  // Feed the TRO verifier a non-TRO to confirm the precondition trips.
  CHECK_THROWS_AS(verify_tro_theorems(nest2(), 1), input_error);
}

TEST_CASE("verify_tro_theorems on block patterns") {
  const Pattern two_blocks = Pattern::from_entries(2, 2, {{0, 0}, {1, 1}});
  const auto reports = verify_tro_theorems(two_blocks, 11);
  CHECK(reports.size() == 4);
  require_all_pass(reports);

  require_all_pass(verify_tro_theorems(Pattern::full(3, 4), 11));
  require_all_pass(verify_tro_theorems(Pattern(2, 3), 11));

  const Pattern mixed = Pattern::from_entries(
      4, 4, {{0, 0}, {0, 1}, {1, 0}, {1, 1}, {2, 2}, {3, 3}});
  require_all_pass(verify_tro_theorems(mixed, 11));
}

TEST_CASE("fuzz smoke run is deterministic and clean") {
  FuzzConfig config;
  config.seed = 42;
  config.instance_count = 40;
  config.max_rows = 6;
  config.max_cols = 6;
  config.density = 0.3;
  config.numeric_trials_per_instance = 3;

  const FuzzSummary a = fuzz(config);
  CHECK(a.instances_run == 40);
  CHECK(a.failures == 0);
  CHECK(a.counterexamples.empty());

  const FuzzSummary b = fuzz(config);
  CHECK(b.per_theorem == a.per_theorem);
}

TEST_CASE("fuzz degenerate configs") {
  FuzzConfig empty;
  empty.instance_count = 0;
  const FuzzSummary s = fuzz(empty);
  CHECK(s.instances_run == 0);
  CHECK(s.failures == 0);
  CHECK(s.per_theorem.empty());

  FuzzConfig sparse;
  sparse.seed = 9;
  sparse.instance_count = 10;
  sparse.density = 0.0;
  CHECK(fuzz(sparse).failures == 0);

  FuzzConfig dense;
  dense.seed = 9;
  dense.instance_count = 10;
  dense.density = 1.0;
  CHECK(fuzz(dense).failures == 0);

  FuzzConfig bad;
  bad.density = 1.5;
  bad.instance_count = 1;
  CHECK_THROWS_AS(fuzz(bad), input_error);
}

TEST_CASE("per-theorem tallies account for every report") {
  FuzzConfig config;
  config.seed = 3;
  config.instance_count = 12;
  const FuzzSummary s = fuzz(config);
  int total = 0;
  for (const auto& [id, counts] : s.per_theorem) total += counts.first + counts.second;
  // 18 reports per pattern instance plus 4 per TRO instance, plus 4 more when
  // the density pattern happens to be a TRO.
  CHECK(total >= 12 * 22);
  CHECK(s.per_theorem.at("Thm3.1").first == 12);
  CHECK(s.per_theorem.at("Thm2.2").first >= 12);
}
