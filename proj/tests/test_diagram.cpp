#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bgg/catalog.hpp"
#include "bgg/diagram.hpp"
#include "bgg/linalg.hpp"

#include <random>

using namespace bgg;

namespace {

// Expected S = sum_l (dx^l ∧) ⊗ kappa_l, assembled from the form-level wedge maps.
SparseMat expected_S(const BuiltDiagram& bd, int i, int j, int w) {
  FormBlock b = bd.block(i, j, w);
  SparseMat acc(bd.block(i + 1, j - 1, w).dim(), b.dim());
  for (int l = 0; l < bd.spec().n; ++l) acc = acc + kron(wedge_dx(l, b.scalar()).mat, bd.spec().kappa[j][l]);
  return acc;
}

}  // namespace

TEST_CASE("conformal Hessian S maps") {
  auto e = get("conf-hessian-3d");
  BuiltDiagram bd = build(e.spec, 4);
  for (int w = 0; w <= 4; ++w) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 1; j <= 2; ++j) CHECK(bd.weight(w).S[i][j] == expected_S(bd, i, j, w));
    }
  }
  // S^{0,2} w = (dx^1 w, dx^2 w, dx^3 w): constant w goes to dx^l in slot l.
  const SparseMat& s02 = bd.weight(2).S[0][2];
  FormBlock out = bd.block(1, 1, 2);
  REQUIRE(s02.cols() == 1);
  for (std::size_t l = 0; l < 3; ++l) CHECK(s02.at(out.index(0, l, l), 0) == 1);
  CHECK(s02.nnz() == 3);
  // S^{0,1} psi = sum_l dx^l psi_l.
  const SparseMat& s01 = bd.weight(1).S[0][1];
  FormBlock in = bd.block(0, 1, 1);
  for (std::size_t l = 0; l < 3; ++l) CHECK(s01.at(l, in.index(0, 0, l)) == 1);
  CHECK(s01.nnz() == 3);
}

TEST_CASE("elasticity S(psi)_j = sum_l dx^l ∧ psi_lj") {
  auto e = get("elasticity-3d");
  BuiltDiagram bd = build(e.spec, 2);
  // psi_12 = 1 constant: S(psi)_1 = dx^2 ∧ psi_21 = -dx^2, S(psi)_2 = dx^1 ∧ psi_12 = dx^1.
  const SparseMat& s = bd.weight(1).S[0][1];
  FormBlock out = bd.block(1, 0, 1);
  Vector psi(3);
  psi[0] = 1;
  Vector r = s.apply(psi);
  Vector want(out.dim());
  want[out.index(0, 1, 0)] = -1;
  want[out.index(0, 0, 1)] = 1;
  CHECK(r == want);
}

TEST_CASE("single-row diagram") {
  DiagramSpec s;
  s.name = "scalar";
  s.n = 3;
  s.rows = {make_value_space("R", 1)};
  s.kappa = {{}};
  BuiltDiagram bd = build(s, 4);
  for (int w = 0; w <= 4; ++w) {
    const WeightBlock& wb = bd.weight(w);
    for (int i = 0; i <= 3; ++i) {
      CHECK(wb.Scol[i].is_zero());
      CHECK(wb.Kcol[i].is_zero());
      CHECK(wb.dV[i] == wb.dcol[i]);
      CHECK(wb.F[i] == SparseMat::identity(wb.dim(i)));
    }
  }
  CHECK(verify_identities(bd).passed());
  auto t = twisted_cohomology(bd);
  CHECK(total(t, 0) == 1);
}

TEST_CASE("non-commuting kappa is rejected") {
  auto e = get("conf-hessian-3d");
  // Insert w into slot 2 instead of slot 1 for axis 1.
  e.spec.kappa[2][0] = SparseMat::from_triplets(3, 1, {{1, 0, 1}});
  CHECK_THROWS_WITH_AS(build(e.spec, 2), doctest::Contains("j=2, axes l=1, m=2"), std::invalid_argument);
  BuildOptions opt;
  opt.check_kappa = false;
  BuiltDiagram bd = build(e.spec, 3, opt);
  Report r = verify_identities(bd);
  CHECK_FALSE(r.passed());
  REQUIRE(r.find("SK=KS") != nullptr);
  CHECK_FALSE(r.find("SK=KS")->passed);
  CHECK_FALSE(r.find("kappa commutation")->passed);
}

TEST_CASE("identities pass iff kappa commute, random perturbations") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(-2, 2);
  auto base = get("conf-deformation-3d");
  BuildOptions opt;
  opt.check_kappa = false;
  int failing = 0;
  for (int trial = 0; trial < 12; ++trial) {
    auto e = base;
    int j = 1 + trial % 2;
    int l = trial % 3;
    auto& k = e.spec.kappa[j][l];
    std::vector<Triplet> t = k.triplets();
    t.push_back({static_cast<std::size_t>(trial % k.rows()), static_cast<std::size_t>((trial / 2) % k.cols()),
                 Rational(pick(rng))});
    k = SparseMat::from_triplets(k.rows(), k.cols(), t);
    bool commute = !check_kappa_commutation(e.spec).has_value();
    if (!commute) ++failing;
    CHECK(verify_identities(build(e.spec, 3, opt)).passed() == commute);
  }
  CHECK(failing > 0);
}

TEST_CASE("F for two rows is [[I, K], [0, I]]") {
  auto e = get("elasticity-3d");
  BuiltDiagram bd = build(e.spec, 4);
  for (int w = 0; w <= 4; ++w) {
    const WeightBlock& wb = bd.weight(w);
    for (int i = 0; i <= 3; ++i) {
      CHECK(wb.F[i] == SparseMat::identity(wb.dim(i)) + wb.Kcol[i]);
    }
  }
}

TEST_CASE("F for the conformal Hessian: top-right block is K1 K2 / 2") {
  auto e = get("conf-hessian-3d");
  BuiltDiagram bd = build(e.spec, 5);
  for (int w = 2; w <= 5; ++w) {
    const WeightBlock& wb = bd.weight(w);
    for (int i = 0; i <= 3; ++i) {
      SparseMat top = wb.F[i].block(wb.Z[i].offset(0), bd.block(i, 0, w).dim(), wb.Z[i].offset(2), bd.block(i, 2, w).dim());
      CHECK(top == (wb.K[i][1] * wb.K[i][2]).scaled(frac(1, 2)));
      // x.(x g) = |x|^2 g
      FormBlock src = bd.block(i, 2, w);
      SparseMat r2(bd.block(i, 0, w).dim(), src.dim());
      for (int l = 0; l < 3; ++l) {
        r2 = r2 + scalar_mult_coord(l, 3, i, src.p + 1) * scalar_mult_coord(l, 3, i, src.p);
      }
      CHECK(wb.K[i][1] * wb.K[i][2] == r2);
    }
  }
}

TEST_CASE("catalog diagrams pass the identity suite and the cohomology chain") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    auto e = get(name);
    BuiltDiagram bd = build(e.spec, 5);
    Report r = verify_identities(bd);
    for (const auto& c : r.checks) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.passed);
    }
    auto tw = twisted_cohomology(bd);
    auto rw = row_cohomology(bd);
    CHECK(tw == rw);
    // Constants of row j sit at weight j.
    for (int w = 0; w <= 5; ++w) {
      CHECK(tw[w][0] == (w <= e.spec.N() ? e.spec.rows[w]->dim() : 0));
      for (int i = 1; i <= e.spec.n; ++i) CHECK(tw[w][i] == 0);
    }
  }
}

TEST_CASE("elasticity H0 over weights up to 1 is 6") {
  BuiltDiagram bd = build(get("elasticity-3d").spec, 1);
  CHECK(total(twisted_cohomology(bd), 0) == 6);
}

TEST_CASE("invalid specs") {
  auto e = get("plate-2d");
  e.spec.kappa[1].pop_back();
  CHECK_THROWS_AS(build(e.spec, 2), std::invalid_argument);
  CHECK_THROWS_AS(build(get("plate-2d").spec, -1), std::invalid_argument);
}
