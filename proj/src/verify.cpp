#include "bimod/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <optional>
#include <sstream>

#include "bimod/matrix_engine.hpp"
#include "bimod/rng.hpp"

namespace bimod {

namespace {

using CheckResult = std::pair<bool, std::string>;

const std::vector<std::string>& verify_all_ids() {
  static const std::vector<std::string> ids = {
      "Thm3.1",  "Thm3.3",  "Rem3.4",      "Lem3.5",  "Prop3.6/3.7", "Thm4.1",
      "Thm4.3",  "Prop4.5", "Thm5.2",      "Prop6.6", "Thm6.8",      "Thm6.13",
      "Cor6.14", "Cor6.15", "Prop7.3",     "Thm7.4",  "Prop7.7",     "Prop7.8"};
  return ids;
}

// Least member of `family` containing `lower`, if the family has one. The
// intersection of all candidates is the only possible least element.
std::optional<IndexSet> least_above(const std::vector<IndexSet>& family,
                                    const IndexSet& lower) {
  std::optional<IndexSet> acc;
  for (const auto& m : family)
    if (lower.subset_of(m)) acc = acc ? (*acc & m) : m;
  if (!acc) return std::nullopt;
  for (const auto& m : family)
    if (m == *acc) return acc;
  return std::nullopt;
}

bool family_contains(const std::vector<IndexSet>& family, const IndexSet& s) {
  for (const auto& m : family)
    if (m == s) return true;
  return false;
}

std::vector<IndexSet> sorted_unique(std::vector<IndexSet> v) {
  std::sort(v.begin(), v.end(), IndexSet::canonical_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Pattern blocks_pattern(int rows, int cols, const std::vector<Block>& blocks) {
  Pattern p(rows, cols);
  for (const auto& b : blocks)
    for (int i : b.rows.members()) {
      IndexSet merged = p.row_set(i);
      merged |= b.cols;
      p.set_row(i, merged);
    }
  return p;
}

struct VerifyContext {
  Pattern p;
  std::string dg;
  Semilattices sl;
  Pattern delta, u0;
  DiagonalSummary summary;
  std::vector<std::string> summary_violations;
  ModuleFamilies fam;
  std::vector<Matrix> trials;
  std::vector<Matrix> d_of_trials;
  bool has_numeric = false;
};

VerifyContext build_context(const Pattern& p, int numeric_trials,
                            std::uint64_t rng_seed) {
  VerifyContext c{p, digest(p), semilattices(p), Pattern{}, Pattern{},
                  DiagonalSummary{}, {}, ModuleFamilies{}, {}, {}, false};
  c.delta = delta_pattern(p, c.sl.s1);
  c.u0 = u0_pattern(p, c.sl.s1);
  c.summary = diagonal_summary_lenient(p, c.sl, c.summary_violations);
  c.fam = module_families(p, c.sl);
  c.has_numeric = p.rows() > 0 && p.cols() > 0 && numeric_trials > 0;
  if (c.has_numeric) {
    Rng rng(rng_seed);
    for (int k = 0; k < numeric_trials; ++k) {
      c.trials.push_back(random_matrix_on(rng, p));
      c.d_of_trials.push_back(block_projector_d(c.summary, c.trials.back()));
    }
  }
  return c;
}

std::string describe_entry_diff(const Pattern& got, const Pattern& want) {
  const Pattern extra = got - want;
  const Pattern missing = want - got;
  std::ostringstream os;
  if (!extra.empty()) os << " unexpected " << to_string(extra);
  if (!missing.empty()) os << " missing " << to_string(missing);
  return os.str();
}

CheckResult check_thm_3_1(const VerifyContext& c) {
  const Pattern cover = c.u0 | c.delta;
  if (cover == c.p)
    return {true, "u0 and delta cover the pattern; |u0|=" +
                      std::to_string(c.u0.count()) +
                      " |delta|=" + std::to_string(c.delta.count())};
  return {false, "u0 | delta != pattern:" + describe_entry_diff(cover, c.p)};
}

CheckResult check_thm_3_3(const VerifyContext& c) {
  const Pattern inter = c.u0 & c.delta;
  if (!inter.empty())
    return {false, "u0 and delta overlap at " + to_string(inter)};
  const IndexSet q1 = inter.col_support();  // empty
  Pattern delta_cut(c.p.rows(), c.p.cols());
  for (auto [i, j] : c.delta.entries())
    if (!q1.contains(j)) delta_cut.set(i, j);
  if ((c.u0 | delta_cut) != c.p)
    return {false, "u0 + delta(1-Q1) does not rebuild the pattern"};
  return {true, "Q1 = Q2 = {}; u0 + delta(1-Q1) rebuilds the pattern"};
}

CheckResult check_rem_3_4(const VerifyContext& c) {
  if (!c.has_numeric) return {true, "no numeric trials (degenerate or disabled)"};
  for (std::size_t t = 0; t < c.trials.size(); ++t) {
    const IterationResult iter = u_iteration(c.p, c.trials[t], c.sl.s1.sets());
    double prev = operator_norm(iter.trace.front());
    const double input_norm = prev;
    for (std::size_t k = 1; k < iter.trace.size(); ++k) {
      const double cur = operator_norm(iter.trace[k]);
      if (cur > prev + 1e-9)
        return {false, "trial " + std::to_string(t) + ": iterate " +
                           std::to_string(k) + " norm " + std::to_string(cur) +
                           " exceeds previous " + std::to_string(prev)};
      prev = cur;
    }
    const double dnorm = operator_norm(c.d_of_trials[t]);
    if (dnorm > input_norm + 1e-9)
      return {false, "trial " + std::to_string(t) + ": ||D(T)|| = " +
                         std::to_string(dnorm) + " exceeds ||T|| = " +
                         std::to_string(input_norm)};
  }
  return {true, "iterate norms non-increasing and ||D(T)|| <= ||T|| on " +
                    std::to_string(c.trials.size()) + " trials"};
}

CheckResult check_lem_3_5(const VerifyContext& c) {
  const Pattern dT = c.delta.transpose();
  struct Rel {
    const char* name;
    Pattern lhs;
    const Pattern* rhs;
    bool equality;
  };
  const Rel rels[] = {
      {"u0 d* d <= u0", compose(c.u0, dT, c.delta), &c.u0, false},
      {"d d* u0 <= u0", compose(c.delta, dT, c.u0), &c.u0, false},
      {"d* p <= n1", compose(dT, c.p), &c.fam.n1, false},
      {"p d* <= n2", compose(c.p, dT), &c.fam.n2, false},
      {"d* u0 <= l1", compose(dT, c.u0), &c.fam.l1, false},
      {"u0 d* <= l2", compose(c.u0, dT), &c.fam.l2, false},
      {"n2 p n1 == p", compose(c.fam.n2, c.p, c.fam.n1), &c.p, true},
  };
  for (const auto& r : rels) {
    const bool ok = r.equality ? (r.lhs == *r.rhs) : r.lhs.subset_of(*r.rhs);
    if (!ok)
      return {false, std::string(r.name) + " fails:" +
                         describe_entry_diff(r.lhs, *r.rhs)};
  }
  return {true, "all seven product relations hold"};
}

CheckResult check_prop_3_6_7(const VerifyContext& c) {
  const Pattern dT = c.delta.transpose();
  const Pattern a1pat = c.fam.a1.as_pattern();
  const Pattern a2pat = c.fam.a2.as_pattern();
  const Pattern l1a1 = c.fam.l1 & a1pat;
  const Pattern l2a2 = c.fam.l2 & a2pat;

  const bool eq1 = c.u0 == c.p;
  const bool eq2 = compose(dT, c.delta).subset_of(l1a1);
  const bool eq3 = compose(c.delta, dT).subset_of(l2a2);
  if (eq1 != eq2 || eq2 != eq3)
    return {false, "equivalence broken: u0==p is " + std::to_string(eq1) +
                       ", d*d <= l1&a1 is " + std::to_string(eq2) +
                       ", dd* <= l2&a2 is " + std::to_string(eq3)};

  const Pattern left = compose(c.delta, l1a1);
  if (!left.empty())
    return {false, "delta (l1 & a1) is nonzero at " + to_string(left)};
  const Pattern right = compose(l2a2, c.delta);
  if (!right.empty())
    return {false, "(l2 & a2) delta is nonzero at " + to_string(right)};
  return {true, "three-way equivalence consistent; delta annihilates l1&a1 and l2&a2"};
}

CheckResult check_thm_4_1(const VerifyContext& c) {
  if (c.p.rows() == 0 || c.p.cols() == 0) return {true, "degenerate dimensions"};
  const Matrix v = construct_partial_isometry(c.delta);
  const Matrix v2 =
      partial_isometry_from_blocks(c.p.rows(), c.p.cols(), c.summary.blocks);
  if (!(v == v2))
    return {false, "component-based and block-based isometries disagree"};
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < v.cols(); ++j) {
      const cplx z = v(i, j);
      if (z != cplx{0.0, 0.0} && z != cplx{1.0, 0.0})
        return {false, "non 0/1 entry in V at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")"};
      if (z != cplx{0.0, 0.0} && !c.delta.at(i, j))
        return {false, "V has support outside delta at (" + std::to_string(i) + "," +
                           std::to_string(j) + ")"};
    }
  const Matrix vvv = v * adjoint(v) * v;
  if (!(vvv == v)) return {false, "V V* V != V"};
  const int span = span_dimension_generated(v, c.fam.a1, c.fam.a2);
  if (span != c.delta.count())
    return {false, "span dim " + std::to_string(span) + " != |delta| = " +
                       std::to_string(c.delta.count())};
  return {true, "V V* V = V and A2 V A1 spans all " + std::to_string(span) +
                    " delta units"};
}

CheckResult check_thm_4_3(const VerifyContext& c) {
  const Semilattices sld = semilattices(c.delta);
  const ProjectionFamily bic2 = bicommutant_projections(c.sl.s2);
  std::vector<IndexSet> want_s2;
  for (const auto& x : bic2.sets()) want_s2.push_back(c.summary.chi_i & x);
  want_s2 = sorted_unique(std::move(want_s2));
  if (want_s2 != sld.s2.sets())
    return {false, "s2 of delta differs from chi(I) * bicommutant projections"};

  const ProjectionFamily bic1 = bicommutant_projections(c.sl.s1);
  const IndexSet cstar_c = c.summary.chi_star_i.complement();
  std::vector<IndexSet> want_s1;
  for (const auto& x : bic1.sets())
    want_s1.push_back(cstar_c | (c.summary.chi_star_i & x));
  want_s1 = sorted_unique(std::move(want_s1));
  if (want_s1 != sld.s1.sets())
    return {false, "s1 of delta differs from chi*(I)-conjugated bicommutant"};

  for (const auto& q : c.sl.s1.sets()) {
    const IndexSet lifted = cstar_c | (c.summary.chi_star_i & q);
    const IndexSet lhs = map_phi(c.delta, lifted);
    const IndexSet rhs = c.summary.chi_i & map_phi(c.p, q);
    if (lhs != rhs)
      return {false, "image exchange fails at Q = " + to_string(q) + ": " +
                         to_string(lhs) + " vs " + to_string(rhs)};
  }
  return {true, "both semilattice formulas and the image exchange identity hold"};
}

CheckResult check_prop_4_5(const VerifyContext& c) {
  std::vector<IndexSet> src, img;
  for (const auto& pr : c.sl.s1.sets()) {
    const IndexSet a = c.summary.chi_star_i & pr;
    const IndexSet b = c.summary.chi_i & map_phi(c.p, pr);
    bool seen = false;
    for (std::size_t k = 0; k < src.size(); ++k)
      if (src[k] == a) {
        if (img[k] != b)
          return {false, "theta not well-defined at " + to_string(a) + ": " +
                             to_string(img[k]) + " vs " + to_string(b)};
        seen = true;
        break;
      }
    if (!seen) {
      src.push_back(a);
      img.push_back(b);
    }
  }
  if (sorted_unique(img).size() != img.size())
    return {false, "theta is not injective"};

  const std::vector<IndexSet> tgt = sorted_unique(img);
  auto theta = [&](const IndexSet& a) -> const IndexSet& {
    for (std::size_t k = 0; k < src.size(); ++k)
      if (src[k] == a) return img[k];
    throw invariant_violation("theta argument outside family: " + to_string(a));
  };
  for (std::size_t x = 0; x < src.size(); ++x)
    for (std::size_t y = x; y < src.size(); ++y) {
      const IndexSet meet_src = src[x] & src[y];
      if (!family_contains(src, meet_src))
        return {false, "source family not meet closed at " + to_string(meet_src)};
      const IndexSet meet_img = img[x] & img[y];
      if (!family_contains(tgt, meet_img))
        return {false, "target family not meet closed at " + to_string(meet_img)};
      if (theta(meet_src) != meet_img)
        return {false, "theta breaks the meet of " + to_string(src[x]) + " and " +
                           to_string(src[y])};
      const auto join_src = least_above(src, src[x] | src[y]);
      if (!join_src)
        return {false, "no least upper bound for " + to_string(src[x]) + " and " +
                           to_string(src[y])};
      const auto join_img = least_above(tgt, img[x] | img[y]);
      if (!join_img)
        return {false, "no least upper bound in image family for " +
                           to_string(img[x]) + " and " + to_string(img[y])};
      if (theta(*join_src) != *join_img)
        return {false, "theta breaks the join of " + to_string(src[x]) + " and " +
                           to_string(src[y])};
    }
  return {true, "theta is a lattice isomorphism on " + std::to_string(src.size()) +
                    " compressed projections"};
}

CheckResult check_thm_5_2(const VerifyContext& c) {
  if (!ref_check(c.u0)) return {false, "u0 is not reflexive as a pattern"};
  if (!ref_check(c.p)) return {false, "the pattern is not its own reflexive hull"};
  return {true, "u0 and the pattern equal their reflexive hulls"};
}

CheckResult check_prop_6_6(const VerifyContext& c) {
  for (const auto& a : c.summary.atoms) {
    bool is_cell = false;
    for (const auto& cell : c.fam.a1.cells())
      if (cell == a.f) {
        is_cell = true;
        break;
      }
    if (!is_cell)
      return {false, "atom " + to_string(a.f) + " is not a single commutant cell"};

    const IndexSet e = c.summary.chi_i & a.delta_f;
    if (e.empty()) continue;
    int pieces_inside = 0;
    bool matches = false;
    for (const auto& cell : c.fam.a2.cells()) {
      const IndexSet piece = c.summary.chi_i & cell;
      if (piece.empty()) continue;
      if (piece.subset_of(e)) {
        ++pieces_inside;
        if (piece == e) matches = true;
      }
    }
    if (pieces_inside != 1 || !matches)
      return {false, "chi(I) delta(F) = " + to_string(e) + " for atom " +
                         to_string(a.f) + " is not a minimal compressed cell"};
  }
  return {true, std::to_string(c.summary.atoms.size()) +
                    " atoms minimal on both sides"};
}

CheckResult check_thm_6_8(const VerifyContext& c) {
  if (!c.summary_violations.empty()) return {false, c.summary_violations.front()};
  std::ostringstream os;
  os << c.summary.blocks.size() << " disjoint rectangles tile delta; raw atoms "
     << (c.summary.raw_atoms_disjoint ? "pairwise disjoint" : "overlap (reported only)");
  return {true, os.str()};
}

CheckResult check_thm_6_13(const VerifyContext& c) {
  if (!c.has_numeric) return {true, "no numeric trials (degenerate or disabled)"};
  for (std::size_t t = 0; t < c.trials.size(); ++t) {
    const DecompositionResult d = decompose(c.p, c.trials[t]);
    if (max_abs_diff(c.trials[t], d.l + d.m) != 0.0)
      return {false, "trial " + std::to_string(t) + ": l + m does not rebuild T"};
    for (int i = 0; i < c.p.rows(); ++i)
      for (int j = 0; j < c.p.cols(); ++j) {
        if (!c.delta.at(i, j) && d.l(i, j) != cplx{0.0, 0.0})
          return {false, "trial " + std::to_string(t) + ": diagonal part leaks at (" +
                             std::to_string(i) + "," + std::to_string(j) + ")"};
        if (!c.u0.at(i, j) && d.m(i, j) != cplx{0.0, 0.0})
          return {false, "trial " + std::to_string(t) +
                             ": off-diagonal part leaks at (" + std::to_string(i) +
                             "," + std::to_string(j) + ")"};
      }
    if (!(d.l == c.d_of_trials[t]))
      return {false, "trial " + std::to_string(t) + ": split differs from D(T)"};
    Rng rng(derive_seed(0x6813u, t));
    std::vector<IndexSet> order = c.sl.s1.sets();
    rng.shuffle(order);
    const IterationResult shuffled = u_iteration(c.p, c.trials[t], order);
    if (!(shuffled.final == d.l))
      return {false, "trial " + std::to_string(t) +
                         ": iteration final depends on the mask order"};
  }
  return {true, "exact split T = K1 + K2 with K2 = D(T), order-independent, on " +
                    std::to_string(c.trials.size()) + " trials"};
}

CheckResult check_cor_6_14(const VerifyContext& c) {
  if (!c.has_numeric) return {true, "no numeric trials (degenerate or disabled)"};
  for (std::size_t t = 0; t < c.trials.size(); ++t) {
    const int base = numeric_rank(c.trials[t]);
    const int dr = numeric_rank(c.d_of_trials[t]);
    if (dr > base)
      return {false, "trial " + std::to_string(t) + ": rank(D(T)) = " +
                         std::to_string(dr) + " exceeds rank(T) = " +
                         std::to_string(base)};
    const IterationResult iter = u_iteration(c.p, c.trials[t], c.sl.s1.sets());
    for (std::size_t k = 1; k < iter.trace.size(); ++k)
      if (numeric_rank(iter.trace[k]) > base)
        return {false, "trial " + std::to_string(t) + ": iterate " +
                           std::to_string(k) + " has rank above rank(T)"};
  }
  return {true, "rank(D(T)) <= rank(T) and no iterate raises rank, on " +
                    std::to_string(c.trials.size()) + " trials"};
}

CheckResult check_cor_6_15(const VerifyContext& c) {
  if (!c.has_numeric) return {true, "no numeric trials (degenerate or disabled)"};
  for (std::size_t t = 0; t < c.trials.size(); ++t)
    for (double pexp : {1.0, 2.0, 3.0}) {
      const double lhs = schatten_norm(c.d_of_trials[t], pexp);
      const double rhs = schatten_norm(c.trials[t], pexp);
      if (lhs > rhs + 1e-8)
        return {false, "trial " + std::to_string(t) + ": p = " +
                           std::to_string(pexp) + " norm grows from " +
                           std::to_string(rhs) + " to " + std::to_string(lhs)};
    }
  return {true, "Schatten p = 1, 2, 3 norms never grow under D, on " +
                    std::to_string(c.trials.size()) + " trials"};
}

CheckResult check_prop_7_3(const VerifyContext& c) {
  Pattern numeric(c.p.rows(), c.p.cols());
  const auto delta_entries = c.delta.entries();
  for (auto [i, j] : c.p.entries()) {
    const Matrix t = matrix_unit(c.p.rows(), c.p.cols(), i, j);
    bool annihilated = true;
    for (auto [a, b] : delta_entries) {
      const Matrix r_adj = adjoint(matrix_unit(c.p.rows(), c.p.cols(), a, b));
      if (trace_pair(t, r_adj) != cplx{0.0, 0.0}) {
        annihilated = false;
        break;
      }
    }
    if (annihilated) numeric.set(i, j);
  }
  if (numeric != c.u0)
    return {false, "trace annihilator differs from u0:" +
                       describe_entry_diff(numeric, c.u0)};
  const int dim = annihilator_intersection(c.p, c.delta);
  if (dim != c.u0.count())
    return {false, "annihilator dimension " + std::to_string(dim) + " != |u0| = " +
                       std::to_string(c.u0.count())};
  return {true, "trace annihilator of the delta units reproduces u0 (dim " +
                    std::to_string(dim) + ")"};
}

CheckResult check_thm_7_4(const VerifyContext& c) {
  const Pattern inter = c.u0 & c.delta;
  if (!inter.empty())
    return {false, "u0 and delta overlap at " + to_string(inter)};
  if (c.u0.count() + c.delta.count() != c.p.count())
    return {false, "|u0| + |delta| = " +
                       std::to_string(c.u0.count() + c.delta.count()) +
                       " but |pattern| = " + std::to_string(c.p.count())};
  return {true, "direct sum: |u0| + |delta| = |pattern| = " +
                    std::to_string(c.p.count())};
}

CheckResult check_prop_7_7(const VerifyContext& c) {
  if (!c.has_numeric) return {true, "no numeric trials (degenerate or disabled)"};
  const auto delta_entries = c.delta.entries();
  const auto u0_entries = c.u0.entries();
  const int n = static_cast<int>(delta_entries.size() + u0_entries.size());
  if (n == 0) return {true, "empty pattern, nothing to project"};

  const int rc = c.p.rows() * c.p.cols();
  Eigen::MatrixXcd basis(rc, n);
  basis.setZero();
  int col = 0;
  for (auto [i, j] : delta_entries) basis(i * c.p.cols() + j, col++) = 1.0;
  for (auto [i, j] : u0_entries) basis(i * c.p.cols() + j, col++) = 1.0;
  const auto qr = basis.colPivHouseholderQr();

  for (std::size_t t = 0; t < c.trials.size(); ++t) {
    Eigen::VectorXcd vec(rc);
    for (int i = 0; i < c.p.rows(); ++i)
      for (int j = 0; j < c.p.cols(); ++j) vec(i * c.p.cols() + j) = c.trials[t](i, j);
    const Eigen::VectorXcd x = qr.solve(vec);
    Matrix lhat(c.p.rows(), c.p.cols());
    for (std::size_t k = 0; k < delta_entries.size(); ++k)
      lhat(delta_entries[k].first, delta_entries[k].second) = x(static_cast<int>(k));
    if (max_abs_diff(lhat, c.d_of_trials[t]) > 1e-12)
      return {false, "trial " + std::to_string(t) +
                         ": direct-sum projection differs from D by " +
                         std::to_string(max_abs_diff(lhat, c.d_of_trials[t]))};
  }
  return {true, "basis-solve projection matches D within 1e-12 on " +
                    std::to_string(c.trials.size()) + " trials"};
}

CheckResult check_prop_7_8(const VerifyContext& c) {
  const Pattern blocked =
      blocks_pattern(c.p.rows(), c.p.cols(), c.summary.blocks);
  const Pattern outside = c.p - blocked;
  if (outside != c.u0)
    return {false, "entries outside the blocks differ from u0:" +
                       describe_entry_diff(outside, c.u0)};
  return {true, "u0 is exactly the pattern minus the diagonal blocks"};
}

}  // namespace

std::vector<VerifierReport> verify_all(const Pattern& p, int numeric_trials,
                                       std::uint64_t rng_seed) {
  std::vector<VerifierReport> reports;
  const std::string dg = digest(p);
  std::optional<VerifyContext> ctx;
  try {
    ctx.emplace(build_context(p, numeric_trials, rng_seed));
  } catch (const std::exception& e) {
    for (const auto& id : verify_all_ids())
      reports.push_back({id, dg, false, std::string("context failed: ") + e.what()});
    return reports;
  }

  auto run = [&](const std::string& id, auto&& fn) {
    VerifierReport r{id, dg, false, ""};
    try {
      const CheckResult res = fn(*ctx);
      r.passed = res.first;
      r.detail = res.second;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    reports.push_back(std::move(r));
  };

  run("Thm3.1", check_thm_3_1);
  run("Thm3.3", check_thm_3_3);
  run("Rem3.4", check_rem_3_4);
  run("Lem3.5", check_lem_3_5);
  run("Prop3.6/3.7", check_prop_3_6_7);
  run("Thm4.1", check_thm_4_1);
  run("Thm4.3", check_thm_4_3);
  run("Prop4.5", check_prop_4_5);
  run("Thm5.2", check_thm_5_2);
  run("Prop6.6", check_prop_6_6);
  run("Thm6.8", check_thm_6_8);
  run("Thm6.13", check_thm_6_13);
  run("Cor6.14", check_cor_6_14);
  run("Cor6.15", check_cor_6_15);
  run("Prop7.3", check_prop_7_3);
  run("Thm7.4", check_thm_7_4);
  run("Prop7.7", check_prop_7_7);
  run("Prop7.8", check_prop_7_8);
  return reports;
}

std::vector<VerifierReport> verify_tro_theorems(const Pattern& m,
                                                std::uint64_t rng_seed) {
  if (!tro_check(m))
    throw input_error("verify_tro_theorems: pattern " + digest(m) +
                      " is not a TRO (m m* m is not inside m)");
  std::vector<VerifierReport> reports;
  const std::string dg = digest(m);
  auto run = [&](const std::string& id, auto&& fn) {
    VerifierReport r{id, dg, false, ""};
    try {
      const CheckResult res = fn();
      r.passed = res.first;
      r.detail = res.second;
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    reports.push_back(std::move(r));
  };

  std::vector<Block> blocks;
  bool blocks_ok = false;
  std::string blocks_err;
  try {
    blocks = tro_block_decomposition(m);
    blocks_ok = true;
  } catch (const std::exception& e) {
    blocks_err = e.what();
  }

  run("Thm2.2", [&]() -> CheckResult {
    const int dim = annihilator_intersection(m, m);
    if (dim != 0)
      return {false, "nonatomic part has dimension " + std::to_string(dim) +
                         " but finite TROs are totally atomic"};
    return {true, "m meets the annihilator of its own units trivially"};
  });

  run("Cor6.9", [&]() -> CheckResult {
    if (!blocks_ok) return {false, blocks_err};
    const Pattern rebuilt = blocks_pattern(m.rows(), m.cols(), blocks);
    if (rebuilt != m)
      return {false, "rectangles rebuild " + to_string(rebuilt) + " instead of " +
                         to_string(m)};
    IndexSet rows_used(m.rows()), cols_used(m.cols());
    for (const auto& b : blocks) {
      if (b.rows.intersects(rows_used) || b.cols.intersects(cols_used))
        return {false, "rectangles are not pairwise orthogonal"};
      rows_used |= b.rows;
      cols_used |= b.cols;
    }
    return {true, std::to_string(blocks.size()) + " orthogonal rectangles rebuild m"};
  });

  // Sub-ideal enumeration shared by the two remaining checks.
  std::vector<std::uint64_t> subsets;
  if (blocks_ok) {
    const int k = static_cast<int>(blocks.size());
    if (k <= 12) {
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << k); ++s) subsets.push_back(s);
    } else {
      Rng rng(derive_seed(rng_seed, 0x5eedu));
      for (int t = 0; t < 100; ++t) {
        std::uint64_t s = 0;
        for (int b = 0; b < k; ++b)
          if (rng.bernoulli(0.5)) s |= std::uint64_t{1} << b;
        subsets.push_back(s);
      }
    }
  }
  auto ideal_of = [&](std::uint64_t mask) {
    Pattern m0(m.rows(), m.cols());
    for (std::size_t b = 0; b < blocks.size(); ++b)
      if ((mask >> b) & 1u)
        for (int i : blocks[b].rows.members()) m0.set_row(i, blocks[b].cols);
    return m0;
  };

  run("Rem2.1", [&]() -> CheckResult {
    if (!blocks_ok) return {false, blocks_err};
    for (std::uint64_t mask : subsets) {
      const Pattern m0 = ideal_of(mask);
      IndexSet want_q1(m.cols()), want_q2(m.rows());
      for (std::size_t b = 0; b < blocks.size(); ++b)
        if ((mask >> b) & 1u) {
          want_q1 |= blocks[b].cols;
          want_q2 |= blocks[b].rows;
        }
      const auto [q1, q2] = tro_ideal_split(m, m0);
      if (q1 != want_q1 || q2 != want_q2)
        return {false, "central supports for subset " + std::to_string(mask) +
                           " are " + to_string(q1) + ", " + to_string(q2) +
                           " instead of " + to_string(want_q1) + ", " +
                           to_string(want_q2)};
    }
    return {true, std::to_string(subsets.size()) +
                      " block sub-ideals round-trip their central supports"};
  });

  run("Prop2.3", [&]() -> CheckResult {
    if (!blocks_ok) return {false, blocks_err};
    if (m.rows() == 0 || m.cols() == 0 || m.empty())
      return {true, "empty TRO, nothing to project"};
    Rng rng(derive_seed(rng_seed, 0x713u));
    for (int trial = 0; trial < 3; ++trial) {
      const Matrix t = random_matrix_on(rng, m);
      for (std::uint64_t mask : subsets) {
        Matrix sum(m.rows(), m.cols());
        IndexSet q1(m.cols());
        for (std::size_t b = 0; b < blocks.size(); ++b)
          if ((mask >> b) & 1u) {
            q1 |= blocks[b].cols;
            for (int i : blocks[b].rows.members())
              for (int j : blocks[b].cols.members()) sum(i, j) = t(i, j);
          }
        Matrix cut(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
          for (int j = 0; j < m.cols(); ++j)
            if (q1.contains(j)) cut(i, j) = t(i, j);
        if (!(sum == cut))
          return {false, "block compressions and the central cut differ on subset " +
                             std::to_string(mask)};
      }
    }
    return {true, "sum of block compressions equals the ideal projection entrywise"};
  });

  return reports;
}

void tally(FuzzSummary& summary, const std::vector<VerifierReport>& reports) {
  for (const auto& r : reports) {
    auto& [pass, fail] = summary.per_theorem[r.theorem_id];
    if (r.passed) {
      ++pass;
    } else {
      ++fail;
      ++summary.failures;
      summary.counterexamples.push_back(r.theorem_id + " " + r.instance_digest + ": " +
                                        r.detail);
    }
  }
}

FuzzSummary fuzz(const FuzzConfig& config) {
  if (config.instance_count < 0) throw input_error("fuzz: instance count is negative");
  if (config.max_rows < 1 || config.max_cols < 1)
    throw input_error("fuzz: dimension bounds must be positive");
  if (config.density < 0.0 || config.density > 1.0)
    throw input_error("fuzz: density must lie in [0, 1]");
  if (config.numeric_trials_per_instance < 0)
    throw input_error("fuzz: numeric trial count is negative");

  FuzzSummary summary;
  for (int k = 0; k < config.instance_count; ++k) {
    const std::uint64_t iseed = derive_seed(config.seed, static_cast<std::uint64_t>(k));
    Rng rng(iseed);
    const Pattern pat =
        random_pattern(rng, config.max_rows, config.max_cols, config.density);
    tally(summary,
          verify_all(pat, config.numeric_trials_per_instance, derive_seed(iseed, 1)));
    if (tro_check(pat)) tally(summary, verify_tro_theorems(pat, derive_seed(iseed, 2)));

    const Pattern tro = random_tro_pattern(rng, config.max_rows, config.max_cols);
    tally(summary, verify_tro_theorems(tro, derive_seed(iseed, 3)));
    ++summary.instances_run;
  }
  return summary;
}

}  // namespace bimod
