#pragma once
// Operators assembled directly from monomial exponents, independent of the
// diagram machinery, used as comparison oracles.

#include "bgg/diagram.hpp"

#include <algorithm>
#include <vector>

namespace oracle {

using namespace bgg;

// Coefficient and exponent of d^M x^alpha, M a multiset of axes.
inline bool derive(std::vector<int>& e, Rational& c, const std::vector<int>& axes) {
  for (int a : axes) {
    if (e[a] == 0) return false;
    c *= e[a];
    --e[a];
  }
  return true;
}

// dev hess: Z^0 -> Z^1 of the conformal Hessian diagram at weight w. The
// output sits in row 1 as M_{lk} dx^l (x) e_k.
inline SparseMat dev_hess(const BuiltDiagram& bd, int w) {
  const WeightBlock& wb = bd.weight(w);
  SparseBuilder b(wb.dim(1), wb.dim(0));
  FormBlock in = bd.block(0, 0, w);
  FormBlock out = bd.block(1, 1, w);
  if (in.dim() == 0 || out.dim() == 0) return std::move(b).build();
  const auto& mi = MonomialBasis::get(3, in.p);
  const auto& mo = MonomialBasis::get(3, out.p);
  std::size_t off = wb.Z[1].offset(1);
  for (std::size_t c = 0; c < mi.size(); ++c) {
    for (int l = 0; l < 3; ++l) {
      for (int k = 0; k < 3; ++k) {
        std::vector<int> e = mi.exponents(c);
        Rational v = 1;
        if (!derive(e, v, {l, k})) continue;
        b.add(off + out.index(mo.index(e), l, k), c, v);
        if (l == k) {
          // -tr/3 on each diagonal entry
          for (int q = 0; q < 3; ++q) b.add(off + out.index(mo.index(e), q, q), c, -v / 3);
        }
      }
    }
  }
  return std::move(b).build();
}

// (N+1)-st derivative: Z^0 -> Z^1 of higher-hessian(N) at weight w, with
// output coefficient d_l d_K u at dx^l (x) e_K in row N.
inline SparseMat top_derivative(const BuiltDiagram& bd, int w) {
  const int N = bd.spec().N();
  const WeightBlock& wb = bd.weight(w);
  SparseBuilder b(wb.dim(1), wb.dim(0));
  FormBlock in = bd.block(0, 0, w);
  FormBlock out = bd.block(1, N, w);
  if (in.dim() == 0 || out.dim() == 0) return std::move(b).build();
  const auto& mi = MonomialBasis::get(3, in.p);
  const auto& mo = MonomialBasis::get(3, out.p);
  // Multisets of size N in the catalog's label order.
  std::vector<std::vector<int>> ms;
  const auto& labels = bd.spec().rows[N]->labels;
  for (const auto& lab : labels) {
    std::vector<int> m;
    for (char ch : lab.substr(3)) m.push_back(ch - '1');
    ms.push_back(m);
  }
  std::size_t off = wb.Z[1].offset(static_cast<std::size_t>(N));
  for (std::size_t c = 0; c < mi.size(); ++c) {
    for (int l = 0; l < 3; ++l) {
      for (std::size_t k = 0; k < ms.size(); ++k) {
        std::vector<int> axes = ms[k];
        axes.push_back(l);
        std::vector<int> e = mi.exponents(c);
        Rational v = 1;
        if (!derive(e, v, axes)) continue;
        b.add(off + out.index(mo.index(e), l, k), c, v);
      }
    }
  }
  return std::move(b).build();
}

}  // namespace oracle
