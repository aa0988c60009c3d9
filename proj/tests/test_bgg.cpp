#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bgg/bgg.hpp"
#include "bgg/catalog.hpp"
#include "bgg/equivariance.hpp"
#include "bgg/linalg.hpp"
#include "oracles.hpp"

using namespace bgg;

namespace {

void require_pass(const Report& r) {
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CAPTURE(c.detail);
    CHECK(c.passed);
  }
}

}  // namespace

TEST_CASE("conformal Hessian: surjective and bijective partial maps") {
  BuiltDiagram bd = build(get("conf-hessian-3d").spec, 0);
  for (int i = 0; i < 3; ++i) {
    const SparseMat& p1 = bd.partial(i, 1);
    CHECK(rank(p1) == p1.rows());
    const SparseMat& p2 = bd.partial(i, 2);
    CHECK(rank(p2) == p2.cols());
  }
  CHECK(bd.partial(0, 1).rows() == bd.partial(0, 1).cols());
  CHECK(bd.partial(2, 2).rows() == bd.partial(2, 2).cols());
}

TEST_CASE("bijective partial map: T is its inverse") {
  BuiltDiagram bd = build(get("conf-hessian-3d").spec, 0);
  HodgeSplit hs = hodge_split(bd);
  const SparseMat& t = hs.at(1, 0).T;
  CHECK(t * bd.partial(0, 1) == SparseMat::identity(3));
  CHECK(bd.partial(0, 1) * t == SparseMat::identity(3));
  // no incoming map: T = 0
  CHECK(hs.at(0, 0).T.rows() == 0);
  CHECK(hs.at(3, 2).T.is_zero());
}

TEST_CASE("conformal deformation: support of Υ") {
  BuiltDiagram bd = build(get("conf-deformation-3d").spec, 0);
  HodgeSplit hs = hodge_split(bd);
  std::vector<std::pair<int, int>> want = {{0, 0}, {1, 0}, {2, 2}, {3, 2}};
  CHECK(ups_support(hs, bd.spec()) == want);
}

TEST_CASE("Möbius T^{1,0} is (tr/2, (M12 - M21)/2)") {
  BuiltDiagram bd = build(get("mobius-2d").spec, 0);
  HodgeSplit hs = hodge_split(bd);
  // Λ^1 (x) R^2 basis: (dx1,e1), (dx1,e2), (dx2,e1), (dx2,e2); M_{lk} = coefficient of dx^l (x) e_k.
  SparseMat want = SparseMat::from_dense({{frac(1, 2), 0, 0, frac(1, 2)}, {0, frac(1, 2), frac(-1, 2), 0}});
  CHECK(hs.at(1, 0).T == want);
}

TEST_CASE("single row: G = 0, B = I, D = d") {
  DiagramSpec s;
  s.name = "scalar";
  s.n = 2;
  s.rows = {make_value_space("R", 1)};
  s.kappa = {{}};
  BuiltDiagram bd = build(s, 4);
  BGGComplex bc = compute_bgg(bd);
  for (int w = 0; w <= 4; ++w) {
    for (int i = 0; i <= 2; ++i) {
      CHECK(bc.weight(w).G[i].is_zero());
      CHECK(bc.weight(w).B[i] == SparseMat::identity(bd.weight(w).dim(i)));
      CHECK(bc.weight(w).D[i] == bd.weight(w).dcol[i]);
    }
  }
  require_pass(verify_bgg(bc));
}

TEST_CASE("BGG invariants and block forms for the catalog") {
  for (const auto& name : {"conf-hessian-3d", "conf-deformation-3d", "mobius-2d", "elasticity-3d", "plate-2d",
                           "higher-hessian-3d:1", "higher-hessian-3d:2"}) {
    CAPTURE(name);
    BuiltDiagram bd = build(get(name).spec, 6);
    BGGComplex bc = compute_bgg(bd);
    require_pass(verify_bgg(bc));
    require_pass(verify_block_forms(bc));
    CHECK(bgg_cohomology(bc) == twisted_cohomology(bd));
  }
}

TEST_CASE("two-row cases") {
  {
    BuiltDiagram bd = build(get("elasticity-3d").spec, 6);
    BGGComplex bc = compute_bgg(bd);
    TwoRowCases tc = verify_two_row_cases(bc);
    CHECK(tc.cases == std::vector<int>{1, 2, 3});
    require_pass(tc.report);
  }
  {
    BuiltDiagram bd = build(get("plate-2d").spec, 6);
    BGGComplex bc = compute_bgg(bd);
    TwoRowCases tc = verify_two_row_cases(bc);
    CHECK(tc.cases == std::vector<int>{2, 3});
    require_pass(tc.report);
  }
  BuiltDiagram three = build(get("conf-hessian-3d").spec, 1);
  CHECK_THROWS_AS(verify_two_row_cases(compute_bgg(three)), std::invalid_argument);
}

TEST_CASE("conformal Hessian D^0 = dev hess") {
  BuiltDiagram bd = build(get("conf-hessian-3d").spec, 6);
  BGGComplex bc = compute_bgg(bd);
  for (int w = 0; w <= 6; ++w) {
    CAPTURE(w);
    CHECK(bc.weight(w).D[0] == oracle::dev_hess(bd, w));
  }
  // Kernel over degrees <= 4: 1, x_k, |x|^2
  std::size_t kernel = 0;
  for (int w = 0; w <= 4; ++w) kernel += bd.block(0, 0, w).dim() - rank(oracle::dev_hess(bd, w));
  CHECK(kernel == 5);
}

TEST_CASE("higher Hessian D_0 is the (N+1)-st derivative") {
  for (int N = 1; N <= 3; ++N) {
    CAPTURE(N);
    BuiltDiagram bd = build(get("higher-hessian-3d:" + std::to_string(N)).spec, N + 3);
    BGGComplex bc = compute_bgg(bd);
    for (int w = 0; w <= N + 3; ++w) {
      CAPTURE(w);
      CHECK(bc.weight(w).D[0] == oracle::top_derivative(bd, w));
    }
  }
}

TEST_CASE("equivariance of the conformal Hessian complex") {
  BuiltDiagram bd = build(get("conf-hessian-3d").spec, 4);
  BGGComplex bc = compute_bgg(bd);
  auto motions = conf_hessian_motions();
  CHECK(motions.size() == 49);
  require_pass(verify_equivariance(bc, motions));
  // A non-orthogonal linear map is not compatible.
  Motion shear = motions.back();
  shear.A = {{1, 1, 0}, {0, 1, 0}, {0, 0, 1}};
  std::vector<Vector> at = {{1, 0, 0}, {1, 1, 0}, {0, 0, 1}};
  shear.row_action[1] = SparseMat::from_dense(at);
  CHECK_FALSE(verify_equivariance(bc, {shear}).passed());
}
