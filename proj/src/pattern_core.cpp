#include "bimod/pattern_core.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bimod {

namespace {

constexpr std::size_t kClosureCap = 1u << 18;

// Fixpoint closure of `gens` under pairwise union, seeded with the empty set.
std::vector<IndexSet> union_closure(int universe, std::vector<IndexSet> gens) {
  std::vector<IndexSet> found;
  std::set<std::vector<std::uint64_t>> seen;
  auto add = [&](const IndexSet& s) {
    if (!seen.insert(s.words()).second) return;
    found.push_back(s);
  };
  add(IndexSet(universe));
  for (const auto& g : gens) add(g);
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) add(found[i] | found[j]);
    if (found.size() > kClosureCap)
      throw input_error("semilattice closure exceeds " + std::to_string(kClosureCap) +
                        " members");
  }
  std::sort(found.begin(), found.end(), IndexSet::canonical_less);
  return found;
}

// Inverse of the semilattice bijection: the member of s1 mapping onto q_rows,
// recovered without scanning s1.
IndexSet phi_inverse(const Pattern& p, const IndexSet& q_rows) {
  return map_phi_star(p, q_rows.complement()).complement();
}

}  // namespace

IndexSet map_phi(const Pattern& p, const IndexSet& c) {
  if (c.universe() != p.cols())
    throw input_error("map_phi: set universe " + std::to_string(c.universe()) +
                      " does not match pattern cols " + std::to_string(p.cols()));
  IndexSet out(p.rows());
  for (int i = 0; i < p.rows(); ++i)
    if (p.row_set(i).intersects(c)) out.insert(i);
  return out;
}

IndexSet map_phi_star(const Pattern& p, const IndexSet& r) {
  if (r.universe() != p.rows())
    throw input_error("map_phi_star: set universe " + std::to_string(r.universe()) +
                      " does not match pattern rows " + std::to_string(p.rows()));
  IndexSet out(p.cols());
  for (int i : r.members()) out |= p.row_set(i);
  return out;
}

Semilattices semilattices(const Pattern& p) {
  std::vector<IndexSet> col_images;
  for (int j = 0; j < p.cols(); ++j) {
    IndexSet single(p.cols());
    single.insert(j);
    col_images.push_back(map_phi(p, single));
  }
  std::vector<IndexSet> s2_sets = union_closure(p.rows(), std::move(col_images));

  std::vector<IndexSet> row_images;
  for (int i = 0; i < p.rows(); ++i) row_images.push_back(p.row_set(i));
  std::vector<IndexSet> s1_sets;
  for (const auto& s : union_closure(p.cols(), std::move(row_images)))
    s1_sets.push_back(s.complement());

  return Semilattices{
      ProjectionFamily(p.cols(), FamilyKind::MeetClosedWithIdentity, std::move(s1_sets)),
      ProjectionFamily(p.rows(), FamilyKind::JoinClosedWithZero, std::move(s2_sets))};
}

Pattern delta_pattern(const Pattern& p, const ProjectionFamily& s1) {
  std::vector<IndexSet> images;
  images.reserve(s1.sets().size());
  for (const auto& pr : s1.sets()) images.push_back(map_phi(p, pr));
  Pattern d(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      bool ok = true;
      for (std::size_t k = 0; k < images.size() && ok; ++k)
        ok = s1.sets()[k].contains(j) == images[k].contains(i);
      if (ok) d.set(i, j);
    }
  return d;
}

Pattern delta_pattern(const Pattern& p) { return delta_pattern(p, semilattices(p).s1); }

Pattern u0_pattern(const Pattern& p, const ProjectionFamily& s1) {
  Pattern u(p.rows(), p.cols());
  for (const auto& pr : s1.sets()) {
    const IndexSet image = map_phi(p, pr);
    const IndexSet outside = pr.complement();
    for (int i : image.members()) {
      IndexSet row = p.row_set(i);
      row &= outside;
      if (!row.empty()) {
        IndexSet merged = u.row_set(i);
        merged |= row;
        u.set_row(i, merged);
      }
    }
  }
  return u;
}

Pattern u0_pattern(const Pattern& p) { return u0_pattern(p, semilattices(p).s1); }

std::vector<Atom> atoms(const Pattern& p, const Semilattices& sl) {
  const auto& s1 = sl.s1.sets();
  std::vector<IndexSet> images;
  images.reserve(s1.size());
  for (const auto& pr : s1) images.push_back(map_phi(p, pr));

  std::vector<Atom> out;
  for (std::size_t k = 0; k < s1.size(); ++k) {
    IndexSet covered(p.rows());
    for (std::size_t l = 0; l < s1.size(); ++l)
      if (images[l] != images[k] && images[l].subset_of(images[k])) covered |= images[l];
    if (covered == images[k]) continue;  // image is reached by strictly smaller ones

    const IndexSet p0 = phi_inverse(p, covered);
    if (map_phi(p, p0) != covered)
      throw invariant_violation("semilattice bijection failed to invert " +
                                to_string(covered) + " for pattern " + digest(p));
    if (!p0.subset_of(s1[k]))
      throw invariant_violation("atom witness is not nested: " + to_string(p0) +
                                " inside " + to_string(s1[k]));
    Atom a{s1[k] - p0, images[k] - covered, s1[k], p0};
    if (a.f.empty())
      throw invariant_violation("empty atom from generator " + to_string(s1[k]));
    bool duplicate = false;
    for (const auto& seen : out)
      if (seen == a) {
        duplicate = true;
        break;
      }
    if (!duplicate) out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) {
    if (a.f != b.f) return IndexSet::canonical_less(a.f, b.f);
    return IndexSet::canonical_less(a.delta_f, b.delta_f);
  });
  return out;
}

std::vector<Atom> atoms(const Pattern& p) { return atoms(p, semilattices(p)); }

DiagonalSummary diagonal_summary_lenient(const Pattern& p, const Semilattices& sl,
                                         std::vector<std::string>& violations) {
  DiagonalSummary s;
  s.delta = delta_pattern(p, sl.s1);
  s.atoms = atoms(p, sl);
  s.chi_i = s.delta.row_support();
  s.chi_star_i = s.delta.col_support();

  for (const auto& a : s.atoms) {
    IndexSet e = s.chi_i & a.delta_f;
    if (!e.empty()) s.blocks.push_back(Block{std::move(e), a.f});
  }
  std::sort(s.blocks.begin(), s.blocks.end(), [](const Block& a, const Block& b) {
    if (a.rows != b.rows) return IndexSet::canonical_less(a.rows, b.rows);
    return IndexSet::canonical_less(a.cols, b.cols);
  });

  Pattern tiling(p.rows(), p.cols());
  IndexSet used_rows(p.rows()), used_cols(p.cols());
  for (const auto& b : s.blocks) {
    if (b.rows.intersects(used_rows))
      violations.push_back("block row sets overlap at " + to_string(b.rows));
    if (b.cols.intersects(used_cols))
      violations.push_back("block col sets overlap at " + to_string(b.cols));
    used_rows |= b.rows;
    used_cols |= b.cols;
    for (int i : b.rows.members()) {
      IndexSet merged = tiling.row_set(i);
      merged |= b.cols;
      tiling.set_row(i, merged);
    }
  }
  if (tiling != s.delta)
    violations.push_back("blocks tile " + to_string(tiling) + " but delta is " +
                         to_string(s.delta));

  for (std::size_t x = 0; x < s.atoms.size() && s.raw_atoms_disjoint; ++x)
    for (std::size_t y = x + 1; y < s.atoms.size(); ++y)
      if (s.atoms[x].f.intersects(s.atoms[y].f)) {
        s.raw_atoms_disjoint = false;
        break;
      }
  return s;
}

DiagonalSummary diagonal_summary(const Pattern& p, const Semilattices& sl) {
  std::vector<std::string> violations;
  DiagonalSummary s = diagonal_summary_lenient(p, sl, violations);
  if (!violations.empty())
    throw invariant_violation("diagonal summary of " + digest(p) + ": " + violations[0]);
  return s;
}

DiagonalSummary diagonal_summary(const Pattern& p) {
  return diagonal_summary(p, semilattices(p));
}

namespace {

// Membership profile of every index of `universe` across the family, as a set
// over family positions. n(j, j') iff profile(j') is contained in profile(j).
std::vector<IndexSet> profiles_of(int universe, const std::vector<IndexSet>& sets) {
  std::vector<IndexSet> prof;
  prof.reserve(universe);
  for (int i = 0; i < universe; ++i) {
    IndexSet v(static_cast<int>(sets.size()));
    for (std::size_t k = 0; k < sets.size(); ++k)
      if (sets[k].contains(i)) v.insert(static_cast<int>(k));
    prof.push_back(std::move(v));
  }
  return prof;
}

void algebra_and_ideal(int universe, const std::vector<IndexSet>& sets, Pattern& alg,
                       Pattern& ideal) {
  const auto prof = profiles_of(universe, sets);
  alg = Pattern(universe, universe);
  ideal = Pattern(universe, universe);
  for (int a = 0; a < universe; ++a)
    for (int b = 0; b < universe; ++b) {
      if (!prof[b].subset_of(prof[a])) continue;
      alg.set(a, b);
      if (prof[a] != prof[b]) ideal.set(a, b);
    }
}

}  // namespace

ModuleFamilies module_families(const Pattern& p, const Semilattices& sl) {
  Pattern n1, l1, n2, l2;
  algebra_and_ideal(p.cols(), sl.s1.sets(), n1, l1);
  algebra_and_ideal(p.rows(), sl.s2.sets(), n2, l2);
  return ModuleFamilies{std::move(n1), std::move(n2), std::move(l1), std::move(l2),
                        profile_partition(p.cols(), sl.s1.sets()),
                        profile_partition(p.rows(), sl.s2.sets())};
}

ModuleFamilies module_families(const Pattern& p) {
  return module_families(p, semilattices(p));
}

bool tro_check(const Pattern& p) {
  return compose(p, p.transpose(), p).subset_of(p);
}

std::pair<IndexSet, IndexSet> tro_ideal_split(const Pattern& m, const Pattern& m0) {
  if (!tro_check(m)) throw input_error("tro_ideal_split: m m* m is not inside m");
  if (!m0.subset_of(m)) throw input_error("tro_ideal_split: m0 is not inside m");
  const Pattern mt = m.transpose();
  if (!compose(m0, mt, m).subset_of(m0))
    throw input_error("tro_ideal_split: m0 m* m is not inside m0");
  if (!compose(m, mt, m0).subset_of(m0))
    throw input_error("tro_ideal_split: m m* m0 is not inside m0");

  IndexSet q1 = m0.col_support();
  IndexSet q2 = m0.row_support();
  Pattern by_cols(m.rows(), m.cols()), by_rows(m.rows(), m.cols());
  for (auto [i, j] : m.entries()) {
    if (q1.contains(j)) by_cols.set(i, j);
    if (q2.contains(i)) by_rows.set(i, j);
  }
  if (by_cols != m0 || by_rows != m0)
    throw invariant_violation("central supports do not cut out the ideal: mQ1 = " +
                              to_string(by_cols) + ", Q2m = " + to_string(by_rows) +
                              ", m0 = " + to_string(m0));
  return {std::move(q1), std::move(q2)};
}

std::vector<Block> tro_block_decomposition(const Pattern& m) {
  const int rows = m.rows(), cols = m.cols();
  std::vector<int> row_comp(rows, -1), col_comp(cols, -1);
  int ncomp = 0;
  for (int start = 0; start < rows; ++start) {
    if (row_comp[start] != -1 || m.row_set(start).empty()) continue;
    const int id = ncomp++;
    std::vector<int> stack{start};
    row_comp[start] = id;
    while (!stack.empty()) {
      const int i = stack.back();
      stack.pop_back();
      for (int j : m.row_set(i).members()) {
        if (col_comp[j] != -1) continue;
        col_comp[j] = id;
        for (int i2 = 0; i2 < rows; ++i2)
          if (m.at(i2, j) && row_comp[i2] == -1) {
            row_comp[i2] = id;
            stack.push_back(i2);
          }
      }
    }
  }
  std::vector<Block> blocks(ncomp, Block{IndexSet(rows), IndexSet(cols)});
  for (int i = 0; i < rows; ++i)
    if (row_comp[i] != -1) blocks[row_comp[i]].rows.insert(i);
  for (int j = 0; j < cols; ++j)
    if (col_comp[j] != -1) blocks[col_comp[j]].cols.insert(j);
  for (const auto& b : blocks)
    for (int i : b.rows.members())
      for (int j : b.cols.members())
        if (!m.at(i, j))
          throw invariant_violation(
              "component " + to_string(b.rows) + " x " + to_string(b.cols) +
              " of " + digest(m) + " is not a complete rectangle: missing (" +
              std::to_string(i) + "," + std::to_string(j) + ")");
  std::sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.rows != b.rows) return IndexSet::canonical_less(a.rows, b.rows);
    return IndexSet::canonical_less(a.cols, b.cols);
  });
  return blocks;
}

bool ref_check(const Pattern& p) {
  // Single-index compressions: (i, j) survives iff the compression of p to
  // row i and column j is nonzero.
  Pattern single(p.rows(), p.cols());
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j)
      if (p.at(i, j)) single.set(i, j);
  if (single != p) return false;

  // Semilattice characterization of the hull.
  const Semilattices sl = semilattices(p);
  Pattern hull(p.rows(), p.cols());
  std::vector<IndexSet> images;
  for (const auto& pr : sl.s1.sets()) images.push_back(map_phi(p, pr));
  for (int i = 0; i < p.rows(); ++i)
    for (int j = 0; j < p.cols(); ++j) {
      bool inside = true;
      for (std::size_t k = 0; k < images.size() && inside; ++k)
        if (sl.s1.sets()[k].contains(j) && !images[k].contains(i)) inside = false;
      if (inside) hull.set(i, j);
    }
  return hull == p;
}

ProjectionFamily bicommutant_projections(const ProjectionFamily& f, int max_cells) {
  const Partition cells = profile_partition(f.universe(), f.sets());
  const int k = static_cast<int>(cells.cells().size());
  if (k > max_cells)
    throw input_error("bicommutant has " + std::to_string(k) +
                      " cells, above the cap of " + std::to_string(max_cells));
  std::vector<IndexSet> unions;
  unions.reserve(std::size_t{1} << k);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    IndexSet u(f.universe());
    for (int c = 0; c < k; ++c)
      if ((mask >> c) & 1u) u |= cells.cells()[c];
    unions.push_back(std::move(u));
  }
  return ProjectionFamily(f.universe(), FamilyKind::Lattice, std::move(unions));
}

BimoduleAnalysis analyze(const Pattern& p) {
  Semilattices sl = semilattices(p);
  DiagonalSummary summary = diagonal_summary(p, sl);
  ModuleFamilies fam = module_families(p, sl);
  Pattern u0 = u0_pattern(p, sl.s1);
  BimoduleAnalysis a{p,
                     std::move(sl.s1),
                     std::move(sl.s2),
                     std::move(summary.delta),
                     std::move(u0),
                     std::move(summary.atoms),
                     std::move(summary.blocks),
                     std::move(summary.chi_i),
                     std::move(summary.chi_star_i),
                     std::move(fam.n1),
                     std::move(fam.n2),
                     std::move(fam.l1),
                     std::move(fam.l2),
                     std::move(fam.a1),
                     std::move(fam.a2),
                     "psi = Map(u0): evaluate by applying map_phi to the u0 pattern"};
  return a;
}

}  // namespace bimod
