#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bimod/matrix_engine.hpp"
#include "bimod/rng.hpp"

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

Matrix nest_matrix() {
  Matrix t(2, 2);
  t(0, 0) = 1.0;
  t(0, 1) = 1.0;
  t(1, 1) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("schur masks") {
  const SchurMask diag = mask_for(nest2(), IndexSet::of(2, {0}));
  CHECK(diag.at(0, 0));
  CHECK(diag.at(1, 1));
  CHECK(!diag.at(0, 1));
  CHECK(!diag.at(1, 0));

  const SchurMask all = mask_for(nest2(), IndexSet(2));  // empty set, empty image
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(all.at(i, j));

  const SchurMask full = mask_for(Pattern::full(2, 2), IndexSet::full(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(full.at(i, j));

  CHECK_THROWS_AS(mask_for(nest2(), IndexSet::of(3, {0})), input_error);
}

TEST_CASE("schur_apply is the entrywise product") {
  const Matrix t = nest_matrix();
  SchurMask m(2, 2);
  m.set(0, 0);
  m.set(1, 1);
  const Matrix r = schur_apply(m, t);
  CHECK(r(0, 0) == cplx{1.0, 0.0});
  CHECK(r(0, 1) == cplx{0.0, 0.0});
  CHECK(r(1, 1) == cplx{1.0, 0.0});
  CHECK(schur_apply(m, r) == r);  // idempotent

  SchurMask all(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) all.set(i, j);
  CHECK(schur_apply(all, t) == t);

  const SchurMask none(2, 2);
  CHECK(max_abs(schur_apply(none, t)) == 0.0);
  CHECK_THROWS_AS(schur_apply(SchurMask(3, 2), t), input_error);
}

TEST_CASE("u_iteration stabilizes on the diagonal compression") {
  const IterationResult r = u_iteration(nest2(), nest_matrix());
  CHECK(r.final(0, 0) == cplx{1.0, 0.0});
  CHECK(r.final(0, 1) == cplx{0.0, 0.0});
  CHECK(r.final(1, 1) == cplx{1.0, 0.0});
  CHECK(r.trace.front() == nest_matrix());
  CHECK(r.trace.back() == r.final);

  // A matrix already supported on the diagonal is a fixed point.
  Matrix d(2, 2);
  d(0, 0) = cplx{0.5, -2.0};
  d(1, 1) = cplx{0.0, 3.0};
  const IterationResult fixed = u_iteration(nest2(), d);
  for (const auto& step : fixed.trace) CHECK(step == d);

  Rng rng(7);
  const Matrix t = random_matrix_on(rng, zero_diag3());
  CHECK(max_abs(u_iteration(zero_diag3(), t).final) == 0.0);

  CHECK_THROWS_AS(u_iteration(nest2(), Matrix(3, 3)), input_error);
}

TEST_CASE("u_iteration is order independent and equals the block projector") {
  Rng rng(314);
  for (int t = 0; t < 30; ++t) {
    const Pattern p = random_pattern(rng, 6, 6, 0.35);
    if (p.rows() == 0 || p.cols() == 0) continue;
    const Matrix x = random_matrix_on(rng, p);
    const Semilattices sl = semilattices(p);
    const Matrix canonical = u_iteration(p, x, sl.s1.sets()).final;

    std::vector<IndexSet> order = sl.s1.sets();
    rng.shuffle(order);
    CHECK(u_iteration(p, x, order).final == canonical);
    CHECK(block_projector_d(p, x) == canonical);
    CHECK(canonical == schur_apply(SchurMask::from_pattern(delta_pattern(p)), x));
  }
}

TEST_CASE("block projector examples") {
  CHECK(block_projector_d(nest2(), nest_matrix()) ==
        u_iteration(nest2(), nest_matrix()).final);
  CHECK(max_abs(block_projector_d(nest2(), Matrix(2, 2))) == 0.0);
  Rng rng(11);
  const Matrix t = random_matrix_on(rng, Pattern::full(3, 3));
  CHECK(block_projector_d(Pattern::full(3, 3), t) == t);
}

TEST_CASE("decompose splits along the diagonal") {
  const DecompositionResult d = decompose(nest2(), nest_matrix());
  CHECK(d.l(0, 0) == cplx{1.0, 0.0});
  CHECK(d.l(1, 1) == cplx{1.0, 0.0});
  CHECK(d.l(0, 1) == cplx{0.0, 0.0});
  CHECK(d.m(0, 1) == cplx{1.0, 0.0});
  CHECK(d.m(0, 0) == cplx{0.0, 0.0});
  CHECK(d.residual == 0.0);
  CHECK(d.iterations == 3);  // one mask per member of s1

  Matrix diag_only(2, 2);
  diag_only(0, 0) = cplx{2.0, 1.0};
  const DecompositionResult fixed = decompose(nest2(), diag_only);
  CHECK(fixed.l == diag_only);
  CHECK(max_abs(fixed.m) == 0.0);

  Matrix off(2, 2);
  off(0, 1) = cplx{0.0, -4.0};
  const DecompositionResult moved = decompose(nest2(), off);
  CHECK(max_abs(moved.l) == 0.0);
  CHECK(moved.m == off);

  Matrix outside(2, 2);
  outside(1, 0) = 1.0;
  CHECK_THROWS_WITH_AS(decompose(nest2(), outside), doctest::Contains("(1,0)"),
                       input_error);

  // Dust below the support tolerance is allowed through.
  Matrix dusty = nest_matrix();
  dusty(1, 0) = cplx{1e-13, -1e-13};
  CHECK(decompose(nest2(), dusty).residual == 0.0);
}

TEST_CASE("rank one units never split") {
  Rng rng(21);
  for (int t = 0; t < 25; ++t) {
    const Pattern p = random_pattern(rng, 6, 6, 0.3);
    if (p.rows() == 0 || p.cols() == 0) continue;
    const Pattern d = delta_pattern(p);
    for (auto [i, j] : p.entries()) {
      const Matrix unit = matrix_unit(p.rows(), p.cols(), i, j);
      const DecompositionResult r = decompose(p, unit);
      if (d.at(i, j)) {
        CHECK(r.l == unit);
        CHECK(max_abs(r.m) == 0.0);
      } else {
        CHECK(max_abs(r.l) == 0.0);
        CHECK(r.m == unit);
      }
    }
  }
}

TEST_CASE("decompose commutes with transposition") {
  Rng rng(22);
  for (int t = 0; t < 25; ++t) {
    const Pattern p = random_pattern(rng, 6, 6, 0.35);
    if (p.rows() == 0 || p.cols() == 0) continue;
    const Matrix x = random_matrix_on(rng, p);
    const Matrix lt = decompose(p.transpose(), transpose(x)).l;
    CHECK(max_abs_diff(lt, transpose(decompose(p, x).l)) == 0.0);
  }
}

TEST_CASE("operator norm") {
  Matrix t(2, 2);
  t(0, 0) = 3.0;
  t(0, 1) = 4.0;
  CHECK(operator_norm(t) == doctest::Approx(5.0).epsilon(1e-9));

  Matrix id(2, 2);
  id(0, 0) = 1.0;
  id(1, 1) = 1.0;
  CHECK(operator_norm(id) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(operator_norm(Matrix(2, 2)) == 0.0);
}

TEST_CASE("schatten norms") {
  Matrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 4.0;
  CHECK(schatten_norm(d, 1.0) == doctest::Approx(7.0).epsilon(1e-8));
  CHECK(schatten_norm(d, 2.0) == doctest::Approx(5.0).epsilon(1e-8));
  CHECK(schatten_norm(Matrix(2, 2), 3.0) == 0.0);
  CHECK_THROWS_AS(schatten_norm(d, 0.5), input_error);
}

TEST_CASE("numeric rank") {
  Matrix outer(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) outer(i, j) = cplx{double(i + 1), 0.0} * double(j + 1);
  CHECK(numeric_rank(outer) == 1);

  Matrix id(4, 4);
  for (int i = 0; i < 4; ++i) id(i, i) = 1.0;
  CHECK(numeric_rank(id) == 4);

  Matrix near(2, 2);
  near(0, 0) = 1.0;
  near(0, 1) = 1.0;
  near(1, 0) = 1.0;
  near(1, 1) = 1.0 + 1e-12;
  CHECK(numeric_rank(near, 1e-8) == 1);
  CHECK(numeric_rank(Matrix(3, 2)) == 0);
}

TEST_CASE("trace pairing") {
  Matrix a(2, 2);
  a(0, 1) = 1.0;
  CHECK(trace_pair(a, transpose(a)) == cplx{1.0, 0.0});
  CHECK(trace_pair(a, Matrix(2, 2)) == cplx{0.0, 0.0});
  CHECK(trace_pair(a, a) == cplx{0.0, 0.0});  // mismatched units
  CHECK_THROWS_AS(trace_pair(Matrix(2, 3), Matrix(2, 3)), input_error);
}

TEST_CASE("annihilator dimensions count the complement") {
  const Pattern full = Pattern::full(2, 2);
  const Pattern d_full = delta_pattern(full);
  CHECK(annihilator_intersection(d_full, d_full) == 0);
  CHECK(annihilator_intersection(nest2(),
                                 Pattern::from_entries(2, 2, {{0, 0}, {1, 1}})) == 1);
  CHECK(annihilator_intersection(Pattern(3, 3), Pattern(3, 3)) == 0);

  Rng rng(40);
  for (int t = 0; t < 25; ++t) {
    const Pattern space = random_pattern(rng, 5, 5, 0.5);
    Pattern ones(space.rows(), space.cols());
    for (auto [i, j] : space.entries())
      if (rng.bernoulli(0.5)) ones.set(i, j);
    CHECK(annihilator_intersection(space, ones) == (space - ones).count());
  }
}

TEST_CASE("partial isometries") {
  const Matrix id = construct_partial_isometry(
      Pattern::from_entries(2, 2, {{0, 0}, {1, 1}}));
  CHECK(id(0, 0) == cplx{1.0, 0.0});
  CHECK(id(1, 1) == cplx{1.0, 0.0});
  CHECK(id(0, 1) == cplx{0.0, 0.0});

  const Matrix tall = construct_partial_isometry(
      Pattern::from_entries(2, 1, {{0, 0}, {1, 0}}));
  CHECK(tall(0, 0) == cplx{1.0, 0.0});
  CHECK(tall(1, 0) == cplx{0.0, 0.0});

  const Matrix zero = construct_partial_isometry(Pattern(2, 3));
  CHECK(max_abs(zero) == 0.0);

  Rng rng(50);
  for (int t = 0; t < 40; ++t) {
    const Pattern m = random_tro_pattern(rng, 7, 7);
    const Matrix v = construct_partial_isometry(m);
    CHECK(v * adjoint(v) * v == v);
  }
}

TEST_CASE("span dimension generated") {
  Matrix id(2, 2);
  id(0, 0) = 1.0;
  id(1, 1) = 1.0;
  const Partition singletons(2, {IndexSet::of(2, {0}), IndexSet::of(2, {1})});
  CHECK(span_dimension_generated(id, singletons, singletons) == 2);

  CHECK(span_dimension_generated(Matrix(2, 2), singletons, singletons) == 0);

  Matrix e0(2, 1);
  e0(0, 0) = 1.0;
  const Partition col_cell(1, {IndexSet::full(1)});
  const Partition row_cell(2, {IndexSet::full(2)});
  CHECK(span_dimension_generated(e0, col_cell, row_cell) == 2);

  CHECK_THROWS_AS(span_dimension_generated(id, col_cell, row_cell), input_error);
}

TEST_CASE("iteration norms never increase") {
  Rng rng(60);
  for (int t = 0; t < 20; ++t) {
    const Pattern p = random_pattern(rng, 6, 6, 0.4);
    if (p.rows() == 0 || p.cols() == 0) continue;
    const Matrix x = random_matrix_on(rng, p);
    const IterationResult r = u_iteration(p, x);
    double prev = operator_norm(r.trace.front());
    for (std::size_t k = 1; k < r.trace.size(); ++k) {
      const double cur = operator_norm(r.trace[k]);
      CHECK(cur <= prev + 1e-9);
      prev = cur;
    }
    CHECK(operator_norm(block_projector_d(p, x)) <= operator_norm(x) + 1e-9);
  }
}

TEST_CASE("matrix type guards") {
  CHECK_THROWS_AS(Matrix(0, 2), input_error);
  CHECK_THROWS_AS(Matrix(2, -1), input_error);
  Matrix t(1, 1);
  t(0, 0) = cplx{1.0, 2.0};
  CHECK(t.is_finite());
  t(0, 0) = cplx{std::nan(""), 0.0};
  CHECK(!t.is_finite());
}
