#include "bgg/equivariance.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace bgg {

namespace {

using Poly = std::map<std::vector<int>, Rational>;

Poly multiply(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea.size());
      for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
      out[e] += ca * cb;
    }
  }
  return out;
}

Rational det(std::vector<Vector> m) {
  const std::size_t k = m.size();
  Rational d = 1;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t p = c;
    while (p < k && is_zero(m[p][c])) ++p;
    if (p == k) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (std::size_t r = c + 1; r < k; ++r) {
      if (is_zero(m[r][c])) continue;
      Rational f = m[r][c] / m[c][c];
      for (std::size_t q = c; q < k; ++q) m[r][q] -= f * m[c][q];
    }
  }
  return d;
}

}  // namespace

SparseMat form_pullback(const std::vector<Vector>& A, int n, int i, int p) {
  if (p < 0 || i < 0 || i > n) return SparseMat(0, 0);
  const MonomialBasis& mb = MonomialBasis::get(n, p);
  const FormBasis& fb = FormBasis::get(n, i);
  // Linear forms (A x)_k.
  std::vector<Poly> lin(n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (is_zero(A[k][j])) continue;
      std::vector<int> e(n, 0);
      e[j] = 1;
      lin[k][e] = A[k][j];
    }
  }
  std::vector<Triplet> poly_t;
  for (std::size_t c = 0; c < mb.size(); ++c) {
    Poly acc{{std::vector<int>(n, 0), Rational(1)}};
    const auto& ex = mb.exponents(c);
    for (int k = 0; k < n; ++k) {
      for (int r = 0; r < ex[k]; ++r) acc = multiply(acc, lin[k]);
    }
    for (const auto& [e, v] : acc) {
      if (!is_zero(v)) poly_t.push_back({mb.index(e), c, v});
    }
  }
  SparseMat poly = SparseMat::from_triplets(mb.size(), mb.size(), poly_t);
  // dx^J -> sum_K det(A[J, K]) dx^K.
  std::vector<Triplet> form_t;
  for (std::size_t c = 0; c < fb.size(); ++c) {
    for (std::size_t r = 0; r < fb.size(); ++r) {
      std::vector<Vector> minor;
      for (int a : fb.axes(c)) {
        Vector row;
        for (int b : fb.axes(r)) row.push_back(A[a][b]);
        minor.push_back(row);
      }
      Rational v = det(minor);
      if (!is_zero(v)) form_t.push_back({r, c, v});
    }
  }
  return kron(poly, SparseMat::from_triplets(fb.size(), fb.size(), form_t));
}

SparseMat column_pullback(const BuiltDiagram& bd, const Motion& m, int i, int w) {
  const WeightBlock& wb = bd.weight(w);
  SparseBuilder b(wb.dim(i), wb.dim(i));
  for (int j = 0; j <= bd.spec().N(); ++j) {
    FormBlock blk = bd.block(i, j, w);
    if (blk.dim() == 0) continue;
    std::size_t o = wb.Z[i].offset(static_cast<std::size_t>(j));
    b.add_block(o, o, kron(form_pullback(m.A, blk.n, i, blk.p), m.row_action[j]));
  }
  return std::move(b).build();
}

std::vector<Motion> conf_hessian_motions() {
  std::vector<Motion> out;
  auto add = [&](std::string name, std::vector<Vector> A) {
    std::vector<Vector> at(3, Vector(3));
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) at[r][c] = A[c][r];
    }
    SparseMat one = SparseMat::identity(1);
    out.push_back({std::move(name), A, {one, SparseMat::from_dense(at), one}});
  };
  std::vector<int> perm = {0, 1, 2};
  do {
    for (int signs = 0; signs < 8; ++signs) {
      std::vector<Vector> A(3, Vector(3));
      std::string name = "perm";
      for (int r = 0; r < 3; ++r) {
        int s = (signs >> r) & 1 ? -1 : 1;
        A[r][perm[r]] = s;
        name += (s < 0 ? " -" : " +") + std::to_string(perm[r] + 1);
      }
      add(name, A);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  add("rotation(3/5,4/5)", {{frac(3, 5), frac(-4, 5), 0}, {frac(4, 5), frac(3, 5), 0}, {0, 0, 1}});
  return out;
}

Report verify_equivariance(const BGGComplex& bc, const std::vector<Motion>& motions) {
  const BuiltDiagram& bd = bc.diagram();
  const int n = bd.spec().n;
  Checker ck;
  for (const auto& m : motions) {
    for (int w = 0; w <= bd.wmax(); ++w) {
      const WeightBlock& wb = bd.weight(w);
      std::vector<SparseMat> rho;
      for (int i = 0; i <= n; ++i) rho.push_back(column_pullback(bd, m, i, w));
      for (int i = 0; i < n; ++i) {
        std::string where = m.name + " w=" + std::to_string(w) + " i=" + std::to_string(i);
        ck.expect_equal("equivariance: d", rho[i + 1] * wb.dcol[i], wb.dcol[i] * rho[i], where);
        ck.expect_equal("equivariance: S", rho[i + 1] * wb.Scol[i], wb.Scol[i] * rho[i], where);
        ck.expect_equal("equivariance: d_V", rho[i + 1] * wb.dV[i], wb.dV[i] * rho[i], where);
        ck.expect_equal("equivariance: D", rho[i + 1] * bc.weight(w).D[i], bc.weight(w).D[i] * rho[i], where);
      }
    }
  }
  return ck.report();
}

}  // namespace bgg
