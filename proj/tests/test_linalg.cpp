#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bgg/linalg.hpp"

#include <random>

using namespace bgg;

namespace {

Rational q(const char* s) { return parse_rational(s); }

SparseMat random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int density_pct) {
  std::uniform_int_distribution<int> pct(0, 99), val(-5, 5), den(1, 4);
  SparseBuilder b(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) {
      if (pct(rng) < density_pct) b.add(i, j, frac(val(rng), den(rng)));
    }
  }
  return std::move(b).build();
}

// Dense rank by naive rational elimination, independent of the sparse path.
std::size_t dense_rank(std::vector<Vector> a) {
  std::size_t r = 0;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && is_zero(a[p][c])) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      Rational f = a[i][c] / a[r][c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * a[r][k];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(q("6/4")) == "3/2");
  CHECK(to_string(q("-3")) == "-3");
  CHECK(to_string(q("0/7")) == "0");
  CHECK_THROWS_AS(q("2/-1"), std::invalid_argument);
  CHECK_THROWS_AS(q("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(q("x"), std::invalid_argument);
  CHECK(factorial(5) == 120);
}

TEST_CASE("rank examples") {
  CHECK(rank(SparseMat::identity(2)) == 2);
  CHECK(rank(SparseMat::zero(3, 4)) == 0);

  // Alternation of R^3* (x) R^3* into Lambda^2: (m, l) -> dx^l ^ dx^m.
  // Output basis dx1^dx2, dx1^dx3, dx2^dx3.
  SparseBuilder b(3, 9);
  auto pair_index = [](int a, int c) { return a == 0 ? c - 1 : 2; };
  for (int m = 0; m < 3; ++m) {
    for (int l = 0; l < 3; ++l) {
      if (l == m) continue;
      int lo = std::min(l, m), hi = std::max(l, m);
      b.add(pair_index(lo, hi), 3 * m + l, Rational(l < m ? 1 : -1));
    }
  }
  SparseMat alt = std::move(b).build();
  CHECK(rank(alt) == 3);
  CHECK(nullspace(alt).size() == 6);
}

TEST_CASE("rank agrees with a dense eliminator on random matrices") {
  std::mt19937 rng(7);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng() % 12, c = 1 + rng() % 12;
    SparseMat m = random_matrix(rng, r, c, 30);
    // Stack dependent rows to exercise rank deficiency.
    SparseMat doubled = SparseMat::from_dense([&] {
      auto d = m.to_dense();
      auto e = d;
      for (auto& row : e) for (auto& x : row) x *= 3;
      d.insert(d.end(), e.begin(), e.end());
      return d;
    }());
    std::size_t expected = dense_rank(m.to_dense());
    CHECK(rank(m) == expected);
    CHECK(rank(doubled) == expected);
    CHECK(rank(m.transpose()) == expected);
    auto ns = nullspace(m);
    CHECK(ns.size() + expected == c);
    for (const auto& v : ns) {
      for (const auto& y : m.apply(v)) CHECK(is_zero(y));
    }
    if (!ns.empty()) CHECK(rank(SparseMat::from_columns(c, ns)) == ns.size());
    CHECK(column_basis(m).size() == expected);
  }
}

TEST_CASE("rref is canonical") {
  SparseMat a = SparseMat::from_dense({{q("2"), q("4"), q("0")}, {q("1"), q("2"), q("1")}});
  SparseMat b = SparseMat::from_dense({{q("1"), q("2"), q("1")}, {q("3"), q("6"), q("1")}});
  CHECK(rref(a).rows == rref(b).rows);
  CHECK(rref(a).pivots == std::vector<std::size_t>{0, 2});
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace(SparseMat::identity(4)).empty());
  auto ns = nullspace(SparseMat::from_dense({{q("1"), q("1"), q("1")}}));
  REQUIRE(ns.size() == 2);
  for (const auto& v : ns) CHECK(v[0] + v[1] + v[2] == 0);
  CHECK(rank(SparseMat::from_columns(3, ns)) == 2);

  // Inclusion of symmetric 2-tensors into R^3* (x) R^3*, basis 11,12,13,22,23,33.
  SparseBuilder b(9, 6);
  int sym[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
  for (int l = 0; l < 3; ++l) {
    for (int m = 0; m < 3; ++m) b.add(3 * l + m, sym[l][m], Rational(1));
  }
  CHECK(nullspace(std::move(b).build()).empty());
}

TEST_CASE("projection examples") {
  auto ip2 = InnerProduct::standard(2);
  CHECK(project({{q("1"), q("0")}}, ip2, {q("3"), q("4")}) == Vector{q("3"), q("0")});
  Vector v{q("3"), q("-1/2")};
  CHECK(project({{q("1"), q("1")}, {q("0"), q("2")}}, ip2, v) == v);
  CHECK_THROWS_AS(project({{q("1"), q("1")}, {q("2"), q("2")}}, ip2, v), std::invalid_argument);

  // Frobenius inner product on 2x2 matrices flattened row-major.
  auto ip4 = InnerProduct::standard(4);
  Vector eye{q("1"), q("0"), q("0"), q("1")};
  Vector mskw{q("0"), q("-1"), q("1"), q("0")};
  CHECK(project({eye, mskw}, ip4, eye) == eye);
  CHECK(project({eye, mskw}, ip4, {q("1"), q("2"), q("0"), q("0")}) ==
        Vector{q("1/2"), q("1"), q("-1"), q("1/2")});
}

TEST_CASE("projector properties under a weighted inner product") {
  SparseMat g = SparseMat::from_dense({{q("2"), q("1"), q("0")}, {q("1"), q("3"), q("0")}, {q("0"), q("0"), q("1/2")}});
  InnerProduct ip(g);
  SparseMat e = SparseMat::from_dense({{q("1")}, {q("1")}, {q("1")}});
  SparseMat p = projector(e, ip);
  CHECK(p * p == p);
  CHECK(g * p == (g * p).transpose());  // self-adjoint in ip
  CHECK(p * e == e);

  CHECK_THROWS_AS(InnerProduct(SparseMat::from_dense({{q("1"), q("2")}, {q("2"), q("1")}})), std::invalid_argument);
  CHECK_THROWS_AS(InnerProduct(SparseMat::from_dense({{q("1"), q("1")}, {q("0"), q("1")}})), std::invalid_argument);
}

TEST_CASE("pinv_onto Penrose identities") {
  std::mt19937 rng(11);
  auto ip_of = [](std::size_t n, bool weighted) {
    if (!weighted) return InnerProduct::standard(n);
    SparseBuilder b(n, n);
    for (std::size_t k = 0; k < n; ++k) b.add(k, k, frac(long(k) + 1, 2));
    for (std::size_t k = 0; k + 1 < n; ++k) {
      b.add(k, k + 1, frac(1, 4));
      b.add(k + 1, k, frac(1, 4));
    }
    return InnerProduct(std::move(b).build());
  };
  for (int t = 0; t < 30; ++t) {
    std::size_t r = 1 + rng() % 8, c = 1 + rng() % 8;
    SparseMat m = random_matrix(rng, r, c, 35);
    bool weighted = t % 2 == 1;
    auto id = ip_of(c, weighted), ic = ip_of(r, weighted);
    SparseMat x = pinv_onto(m, id, ic);
    CHECK(m * x * m == m);
    CHECK(x * m * x == x);
    // m x is the ip_cod projector onto ran(m); x m is the ip_dom projector onto ker(m)^perp.
    CHECK(m * x == range_projector(m, ic));
    CHECK(x * m == SparseMat::identity(c) - kernel_projector(m, id));
  }

  SparseMat inv = SparseMat::from_dense({{q("2"), q("1")}, {q("1"), q("1")}});
  CHECK(pinv_onto(inv, InnerProduct::standard(2), InnerProduct::standard(2)) == inverse(inv));
  CHECK(pinv_onto(SparseMat::zero(3, 2), InnerProduct::standard(2), InnerProduct::standard(3)).is_zero());
}

TEST_CASE("ldlt factors a positive definite matrix") {
  std::vector<Vector> a{{q("4"), q("2")}, {q("2"), q("3")}};
  LDLT f = ldlt(a);
  CHECK(f.diag == Vector{q("4"), q("2")});
  CHECK(f.lower[1][0] == q("1/2"));
}
