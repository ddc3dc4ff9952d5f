#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bimod/csl.hpp"
#include "bimod/pattern_core.hpp"
#include "bimod/rng.hpp"

using namespace bimod;

namespace {

void require_all_pass(const std::vector<VerifierReport>& reports) {
  for (const auto& r : reports) {
    INFO(r.theorem_id, " on ", r.instance_digest, ": ", r.detail);
    CHECK(r.passed);
  }
}

}  // namespace

TEST_CASE("two point nest") {
  const CslInput input{2, {IndexSet::of(2, {0})}};
  const CslAnalysis a = csl_analyze(input);

  CHECK(a.lattice.sets() == std::vector<IndexSet>{IndexSet(2), IndexSet::of(2, {0}),
                                                  IndexSet::full(2)});
  CHECK(a.alg == Pattern::from_entries(2, 2, {{0, 0}, {0, 1}, {1, 1}}));
  CHECK(a.j == Pattern::from_entries(2, 2, {{0, 1}}));
  CHECK(a.rad == a.j);
  // E = {0} contributes {0}; the identity contributes {1} since the ideal
  // only reaches row 0.
  CHECK(a.q == IndexSet::full(2));
  CHECK(a.commutant.cells() ==
        std::vector<IndexSet>{IndexSet::of(2, {0}), IndexSet::of(2, {1})});
  require_all_pass(verify_csl_theorems(input));
}

TEST_CASE("trivial lattice gives the full algebra") {
  const CslInput input{3, {}};
  const CslAnalysis a = csl_analyze(input);
  CHECK(a.lattice.sets() == std::vector<IndexSet>{IndexSet(3), IndexSet::full(3)});
  CHECK(a.alg == Pattern::full(3, 3));
  CHECK(a.j == Pattern(3, 3));
  CHECK(a.rad == Pattern(3, 3));
  CHECK(a.q == IndexSet::full(3));  // the identity minus an empty ideal image
  CHECK(a.commutant.cells().size() == 1);
  require_all_pass(verify_csl_theorems(input));
}

TEST_CASE("three point chain") {
  const CslInput input{3, {IndexSet::of(3, {0}), IndexSet::of(3, {0, 1})}};
  const CslAnalysis a = csl_analyze(input);
  CHECK(a.rad == Pattern::from_entries(3, 3, {{0, 1}, {0, 2}, {1, 2}}));
  CHECK(a.j == a.rad);
  CHECK(a.alg == Pattern::from_entries(
                     3, 3, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}));
  CHECK(a.commutant.cells().size() == 3);
  CHECK(a.atoms_of_s == a.commutant.cells());
  require_all_pass(verify_csl_theorems(input));
}

TEST_CASE("orthogonal generators split into singleton cells") {
  const CslInput input{2, {IndexSet::of(2, {0}), IndexSet::of(2, {1})}};
  const CslAnalysis a = csl_analyze(input);
  CHECK(a.rad == Pattern(2, 2));
  CHECK(a.alg == Pattern::from_entries(2, 2, {{0, 0}, {1, 1}}));
  CHECK(a.commutant.cells().size() == 2);
  require_all_pass(verify_csl_theorems(input));
}

TEST_CASE("generator validation and closure cap") {
  CHECK_THROWS_AS(csl_analyze(CslInput{2, {IndexSet::of(3, {0})}}), input_error);
  // Ten independent generators on ten points want 1024 lattice members.
  CslInput wide{10, {}};
  for (int i = 0; i < 10; ++i) wide.generators.push_back(IndexSet::of(10, {i}));
  CHECK_THROWS_AS(csl_analyze(wide, 100), input_error);
  CHECK(csl_analyze(wide, 4096).lattice.sets().size() == 1024);
}

TEST_CASE("algebra pattern agrees with the bimodule machinery") {
  Rng rng(606);
  for (int t = 0; t < 60; ++t) {
    const CslInput input = random_csl_input(rng, 7);
    const CslAnalysis a = csl_analyze(input);
    CHECK(u0_pattern(a.alg) == a.rad);
    CHECK(delta_pattern(a.alg) == a.commutant.as_pattern());
    require_all_pass(verify_csl_theorems(input));
  }
}
