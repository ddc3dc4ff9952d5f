#include "bimod/csl.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "bimod/pattern_core.hpp"

namespace bimod {

namespace {

std::vector<IndexSet> lattice_closure(int universe, const std::vector<IndexSet>& gens,
                                      std::size_t cap) {
  std::vector<IndexSet> found;
  std::set<std::vector<std::uint64_t>> seen;
  auto add = [&](const IndexSet& s) {
    if (seen.insert(s.words()).second) found.push_back(s);
  };
  add(IndexSet(universe));
  add(IndexSet::full(universe));
  for (const auto& g : gens) {
    if (g.universe() != universe)
      throw input_error("generator universe " + std::to_string(g.universe()) +
                        " does not match lattice universe " + std::to_string(universe));
    add(g);
  }
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      add(found[i] | found[j]);
      add(found[i] & found[j]);
    }
    if (found.size() > cap)
      throw input_error("lattice closure exceeds the cap of " + std::to_string(cap) +
                        " members");
  }
  return found;
}

}  // namespace

CslAnalysis csl_analyze(const CslInput& input, std::size_t closure_cap) {
  if (input.universe < 0) throw input_error("universe must be nonnegative");
  const int n = input.universe;
  std::vector<IndexSet> sets = lattice_closure(n, input.generators, closure_cap);
  ProjectionFamily lattice(n, FamilyKind::Lattice, std::move(sets));

  // Membership profiles order the indices: an entry (i, j) survives in the
  // algebra iff every lattice member containing j also contains i.
  std::vector<IndexSet> prof;
  prof.reserve(n);
  for (int i = 0; i < n; ++i) {
    IndexSet v(static_cast<int>(lattice.sets().size()));
    for (std::size_t k = 0; k < lattice.sets().size(); ++k)
      if (lattice.sets()[k].contains(i)) v.insert(static_cast<int>(k));
    prof.push_back(std::move(v));
  }
  Pattern alg(n, n), jpat(n, n), rad(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (prof[b].subset_of(prof[a])) alg.set(a, b);
  // Ideal: entries of the algebra admitting a lattice witness that contains
  // the row but not the column. Radical: strict part of the preorder.
  for (auto [a, b] : alg.entries()) {
    for (const auto& e : lattice.sets())
      if (e.contains(a) && !e.contains(b)) {
        jpat.set(a, b);
        break;
      }
    if (!alg.at(b, a)) rad.set(a, b);
  }

  IndexSet q(n);
  for (const auto& e : lattice.sets()) q |= (e - map_phi(jpat, e));

  Partition commutant = profile_partition(n, lattice.sets());
  std::vector<IndexSet> cells = commutant.cells();
  return CslAnalysis{std::move(lattice), std::move(alg),   std::move(jpat),
                     std::move(rad),     std::move(q),     std::move(commutant),
                     std::move(cells)};
}

std::vector<VerifierReport> verify_csl_theorems(const CslInput& input) {
  std::vector<VerifierReport> reports;
  std::string dg = "csl:u" + std::to_string(input.universe);
  auto run = [&](const std::string& id, auto&& fn) {
    VerifierReport r{id, dg, false, ""};
    try {
      const std::pair<bool, std::string> res = fn();
      r.passed = res.first;
      r.detail = res.second;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    reports.push_back(std::move(r));
  };

  std::optional<CslAnalysis> built;
  std::string build_err;
  try {
    built.emplace(csl_analyze(input));
    dg = "csl:" + digest(built->alg);
  } catch (const std::exception& e) {
    build_err = e.what();
  }
  auto guarded = [&](auto&& fn) {
    return [&, fn]() -> std::pair<bool, std::string> {
      if (!built) return {false, build_err};
      return fn(*built);
    };
  };

  run("Cor5.3", guarded([](const CslAnalysis& a) -> std::pair<bool, std::string> {
        if (a.j != a.rad)
          return {false, "ideal " + to_string(a.j) + " differs from radical " +
                             to_string(a.rad)};
        return {true, "norm-closed ideal and radical coincide as patterns"};
      }));

  run("Cor5.4", guarded([](const CslAnalysis& a) -> std::pair<bool, std::string> {
        const int n = a.alg.rows();
        Pattern characterized(n, n);
        for (int i = 0; i < n; ++i)
          for (int col = 0; col < n; ++col) {
            bool inside = true;
            for (const auto& e : a.lattice.sets()) {
              if (!e.contains(col)) continue;
              if (!map_phi(a.j, e).contains(i)) {
                inside = false;
                break;
              }
            }
            if (inside) characterized.set(i, col);
          }
        if (characterized != a.rad)
          return {false, "psi characterization yields " + to_string(characterized) +
                             " instead of " + to_string(a.rad)};
        return {true, "radical equals the psi compression fixed points"};
      }));

  run("Prop5.5", guarded([](const CslAnalysis& a) -> std::pair<bool, std::string> {
        const int n = a.alg.rows();
        Pattern q_comm(n, n);
        for (int i : a.q.members()) {
          const int ci = a.commutant.cell_of(i);
          for (int col : a.commutant.cells()[ci].members()) q_comm.set(i, col);
        }
        if (!(a.rad & q_comm).empty())
          return {false, "radical and Q S' overlap at " + to_string(a.rad & q_comm)};
        if ((a.rad | q_comm) != a.alg)
          return {false,
                  "radical + Q S' misses " + to_string(a.alg - (a.rad | q_comm))};
        return {true, "algebra = radical (+) Q S' with Q = " + to_string(a.q)};
      }));

  run("Cor7.6", guarded([](const CslAnalysis& a) -> std::pair<bool, std::string> {
        const Pattern cells = a.commutant.as_pattern();
        if (!(a.rad & cells).empty())
          return {false, "radical meets the diagonal cells"};
        if ((a.rad | cells) != a.alg)
          return {false, "radical + cell blocks do not rebuild the algebra"};
        return {true, "algebra = radical (+) sum of cell x cell blocks"};
      }));

  run("U0=Rad", guarded([](const CslAnalysis& a) -> std::pair<bool, std::string> {
        const Pattern u0 = u0_pattern(a.alg);
        if (u0 != a.rad)
          return {false, "u0 of the algebra is " + to_string(u0) +
                             " but the radical is " + to_string(a.rad)};
        return {true, "u0 of the algebra pattern equals the radical"};
      }));

  run("Delta=S'", guarded([](const CslAnalysis& a) -> std::pair<bool, std::string> {
        const Pattern delta = delta_pattern(a.alg);
        const Pattern cells = a.commutant.as_pattern();
        if (delta != cells)
          return {false, "delta of the algebra is " + to_string(delta) +
                             " but the commutant pattern is " + to_string(cells)};
        return {true, "delta of the algebra pattern equals the commutant"};
      }));

  return reports;
}

CslInput random_csl_input(Rng& rng, int max_universe) {
  CslInput input;
  input.universe = 1 + rng.below(max_universe);
  const int gens = rng.below(5);
  for (int g = 0; g < gens; ++g) {
    const double density = 0.25 * (1 + rng.below(3));
    IndexSet s(input.universe);
    for (int i = 0; i < input.universe; ++i)
      if (rng.bernoulli(density)) s.insert(i);
    input.generators.push_back(std::move(s));
  }
  return input;
}

}  // namespace bimod
