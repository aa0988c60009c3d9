#include "bgg/bgg.hpp"

#include "bgg/linalg.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

namespace bgg {

namespace {

std::size_t const_dim(const DiagramSpec& spec, int i, int j) {
  if (i < 0 || i > spec.n || j < 0 || j > spec.N()) return 0;
  return binomial(spec.n, i) * spec.rows[j]->dim();
}

std::size_t zdim(const WeightBlock& wb, int i) { return wb.dim(i); }

std::size_t zoff(const WeightBlock& wb, int i, int j) {
  if (i < 0 || i >= static_cast<int>(wb.Z.size())) return 0;
  return wb.Z[i].offset(static_cast<std::size_t>(j));
}

std::size_t monos(const BuiltDiagram& bd, int i, int j, int w) { return bd.block(i, j, w).monomials(); }

// Block-diagonal lift of constant maps (i,j) -> (i,j) to Z^i at weight w.
SparseMat lift_diag(const BuiltDiagram& bd, int w, int i, const std::function<const SparseMat&(int)>& part) {
  const WeightBlock& wb = bd.weight(w);
  SparseBuilder b(zdim(wb, i), zdim(wb, i));
  for (int j = 0; j <= bd.spec().N(); ++j) {
    std::size_t m = monos(bd, i, j, w);
    if (m == 0) continue;
    std::size_t o = zoff(wb, i, j);
    b.add_block(o, o, kron_identity(m, part(j)));
  }
  return std::move(b).build();
}

std::string at(int w, int i, int r = -1, int c = -1) {
  std::ostringstream s;
  s << "w=" << w << " i=" << i;
  if (r >= 0) s << " block(" << r << "," << c << ")";
  return s.str();
}

}  // namespace

HodgeSplit hodge_split(const BuiltDiagram& bd) {
  const auto& spec = bd.spec();
  const int n = spec.n;
  const int N = spec.N();
  HodgeSplit hs;
  hs.parts_.assign(n + 1, std::vector<ConstantSplit>(N + 1));
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= N; ++j) {
      std::size_t dim = const_dim(spec, i, j);
      auto ip = InnerProduct::standard(dim);
      ConstantSplit& cs = hs.parts_[i][j];
      bool has_incoming = i >= 1 && j + 1 <= N;
      if (has_incoming) {
        const SparseMat& in = bd.partial(i - 1, j + 1);
        cs.P_ran = range_projector(in, ip);
        cs.T = pinv_onto(in, InnerProduct::standard(in.cols()), ip);
      } else {
        cs.P_ran = SparseMat(dim, dim);
        cs.T = SparseMat(const_dim(spec, i - 1, j + 1), dim);
      }
      cs.P_ker = kernel_projector(bd.partial(i, j), ip);
      cs.P_ups = cs.P_ker - cs.P_ran;
      cs.basis = SparseMat::from_columns(dim, column_basis(cs.P_ups));
    }
  }
  return hs;
}

std::vector<SparseMat> compute_T(const BuiltDiagram& bd, const HodgeSplit& hs, int w) {
  const auto& spec = bd.spec();
  const WeightBlock& wb = bd.weight(w);
  std::vector<SparseMat> out;
  for (int i = 0; i <= spec.n; ++i) {
    SparseBuilder b(zdim(wb, i - 1), zdim(wb, i));
    if (i >= 1) {
      for (int j = 0; j + 1 <= spec.N(); ++j) {
        std::size_t m = monos(bd, i, j, w);
        if (m == 0) continue;
        b.add_block(zoff(wb, i - 1, j + 1), zoff(wb, i, j), kron_identity(m, hs.at(i, j).T));
      }
    }
    out.push_back(std::move(b).build());
  }
  return out;
}

std::vector<SparseMat> compute_G(const BuiltDiagram& bd, const std::vector<SparseMat>& T, int w) {
  const WeightBlock& wb = bd.weight(w);
  std::vector<SparseMat> out;
  for (int i = 0; i <= bd.spec().n; ++i) {
    if (i == 0) {
      out.push_back(SparseMat(0, zdim(wb, 0)));
      continue;
    }
    SparseMat td = T[i] * wb.dcol[i - 1];
    SparseMat term = T[i];
    SparseMat acc = term;
    for (int k = 1; k <= bd.spec().N(); ++k) {
      term = td * term;
      if (term.is_zero()) break;
      acc = acc + term;
    }
    out.push_back(-acc);
  }
  return out;
}

BGGComplex compute_bgg(const BuiltDiagram& bd) {
  const auto& spec = bd.spec();
  const int n = spec.n;
  BGGComplex bc;
  bc.bd_ = &bd;
  bc.split_ = hodge_split(bd);
  const HodgeSplit& hs = bc.split_;
  for (int w = 0; w <= bd.wmax(); ++w) {
    const WeightBlock& wb = bd.weight(w);
    BGGWeight bw;
    bw.w = w;
    for (int i = 0; i <= n; ++i) {
      bw.P_ran.push_back(lift_diag(bd, w, i, [&](int j) -> const SparseMat& { return hs.at(i, j).P_ran; }));
      bw.P_ker.push_back(lift_diag(bd, w, i, [&](int j) -> const SparseMat& { return hs.at(i, j).P_ker; }));
      bw.P_ups.push_back(bw.P_ker.back() - bw.P_ran.back());
      std::size_t cols = 0;
      for (int j = 0; j <= spec.N(); ++j) cols += monos(bd, i, j, w) * hs.ups_dim(i, j);
      SparseBuilder eb(zdim(wb, i), cols);
      std::size_t c0 = 0;
      for (int j = 0; j <= spec.N(); ++j) {
        std::size_t m = monos(bd, i, j, w);
        if (m == 0 || hs.ups_dim(i, j) == 0) continue;
        SparseMat e = kron_identity(m, hs.at(i, j).basis);
        eb.add_block(zoff(wb, i, j), c0, e);
        c0 += e.cols();
      }
      bw.ups_basis.push_back(std::move(eb).build());
    }
    bw.T = compute_T(bd, hs, w);
    bw.G = compute_G(bd, bw.T, w);
    for (int i = 0; i <= n; ++i) {
      std::size_t dim = zdim(wb, i);
      if (i < n) {
        bw.A_full.push_back(SparseMat::identity(dim) - bw.G[i + 1] * wb.dV[i]);
      } else {
        bw.A_full.push_back(SparseMat::identity(dim));
      }
      bw.A.push_back(bw.A_full.back() * bw.P_ups[i]);
      if (i == 0) {
        bw.B.push_back(bw.P_ups[0]);
      } else {
        bw.B.push_back(bw.P_ups[i] - bw.P_ups[i] * (wb.dV[i - 1] * bw.G[i]));
      }
    }
    for (int i = 0; i <= n; ++i) {
      if (i < n) {
        bw.D.push_back(bw.P_ups[i + 1] * (wb.dV[i] * bw.A[i]));
      } else {
        bw.D.push_back(SparseMat(0, zdim(wb, i)));
      }
    }
    bc.weights_.push_back(std::move(bw));
  }
  return bc;
}

Report verify_bgg(const BGGComplex& bc) {
  const BuiltDiagram& bd = bc.diagram();
  const auto& spec = bd.spec();
  const int n = spec.n;
  const int N = spec.N();
  const HodgeSplit& hs = bc.split();
  Checker ck;

  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= N; ++j) {
      const ConstantSplit& cs = hs.at(i, j);
      std::size_t dim = const_dim(spec, i, j);
      auto ip = InnerProduct::standard(dim);
      SparseMat id = SparseMat::identity(dim);
      std::string where = "i=" + std::to_string(i) + " j=" + std::to_string(j);
      SparseMat kperp = id - cs.P_ker;
      ck.expect_equal("hodge: ran inside ker", cs.P_ker * cs.P_ran, cs.P_ran, where);
      ck.expect_zero("hodge: pairwise orthogonal", cs.P_ran * kperp, where);
      ck.expect_zero("hodge: pairwise orthogonal", cs.P_ran * cs.P_ups, where);
      ck.expect_zero("hodge: pairwise orthogonal", kperp * cs.P_ups, where);
      ck.expect_equal("hodge: projections sum to I", cs.P_ran + kperp + cs.P_ups, id, where);
      ck.expect_equal("hodge: idempotent", cs.P_ups * cs.P_ups, cs.P_ups, where);
      ck.expect_equal("hodge: self-adjoint", cs.P_ups.transpose(), cs.P_ups, where);
      ck.expect_zero("hodge: ups in ker", bd.partial(i, j) * cs.P_ups, where);
      ck.expect_true("hodge: ups dimension", rank(cs.P_ups) == cs.basis.cols() &&
                                                   cs.basis.cols() == dim - rank(bd.partial(i, j)) - rank(cs.P_ran),
                     where);
      // STperp: ran ∂^{i,j} = ker(T^{i+1,j-1})^⊥ and ran T^{i,j} = ker(∂^{i-1,j+1})^⊥.
      if (j >= 1 && i < n) {
        const SparseMat& t_next = hs.at(i + 1, j - 1).T;
        SparseMat lhs = range_projector(bd.partial(i, j), InnerProduct::standard(t_next.cols()));
        SparseMat rhs = SparseMat::identity(t_next.cols()) - kernel_projector(t_next, InnerProduct::standard(t_next.cols()));
        ck.expect_equal("STperp", lhs, rhs, where);
      }
      if (i >= 1 && j < N) {
        const SparseMat& s_prev = bd.partial(i - 1, j + 1);
        SparseMat lhs = range_projector(cs.T, InnerProduct::standard(cs.T.rows()));
        SparseMat rhs = SparseMat::identity(s_prev.cols()) - kernel_projector(s_prev, InnerProduct::standard(s_prev.cols()));
        ck.expect_equal("STperp", lhs, rhs, where);
      }
    }
  }

  for (int w = 0; w <= bd.wmax(); ++w) {
    const WeightBlock& wb = bd.weight(w);
    const BGGWeight& bw = bc.weight(w);
    for (int i = 0; i <= n; ++i) {
      std::string where = at(w, i);
      std::size_t dim = zdim(wb, i);
      SparseMat id = SparseMat::identity(dim);
      if (i >= 2) ck.expect_zero("TT=0", bw.T[i - 1] * bw.T[i], where);
      if (i >= 1) {
        ck.expect_equal("TST=T", bw.T[i] * wb.Scol[i - 1] * bw.T[i], bw.T[i], where);
        ck.expect_zero("G vanishes on ker T", bw.G[i] * (id - bw.P_ran[i]), where);
        ck.expect_zero("T(I - d_V G)=0", bw.T[i] - bw.T[i] * (wb.dV[i - 1] * bw.G[i]), where);
        ck.expect_zero("ran G in ran T", bw.P_ker[i - 1] * bw.G[i], where);
        SparseMat td = bw.T[i] * wb.dcol[i - 1];
        SparseMat pw = SparseMat::identity(td.rows());
        for (int k = 0; k <= N; ++k) pw = pw * td;
        ck.expect_zero("Td nilpotent", pw, where);
      }
      if (i < n) {
        ck.expect_equal("STS=S", wb.Scol[i] * bw.T[i + 1] * wb.Scol[i], wb.Scol[i], where);
        ck.expect_zero("DD=0", bw.D[i + 1] * bw.D[i], where);
        ck.expect_equal("d_V A = A D", wb.dV[i] * bw.A[i], bw.A[i + 1] * bw.D[i], where);
        ck.expect_equal("B d_V = D B", bw.B[i + 1] * wb.dV[i], bw.D[i] * bw.B[i], where);
        ck.expect_zero("d_V A in ran(S)^perp", bw.P_ran[i + 1] * (wb.dV[i] * bw.A[i]), where);
      }
      ck.expect_zero("A in ran(S)^perp", bw.P_ran[i] * bw.A[i], where);
      ck.expect_equal("P_ups A = P_ups", bw.P_ups[i] * bw.A[i], bw.P_ups[i], where);
      ck.expect_equal("BA=I on ups", bw.B[i] * bw.A[i], bw.P_ups[i], where);
      SparseMat homotopy = id;
      if (i >= 1) homotopy = homotopy - wb.dV[i - 1] * bw.G[i];
      if (i < n) homotopy = homotopy - bw.G[i + 1] * wb.dV[i];
      ck.expect_equal("AB=I-d_V G-G d_V", bw.A[i] * bw.B[i], homotopy, where);
    }
  }
  return ck.report();
}

SparseMat block_of(const BuiltDiagram& bd, int w, const SparseMat& m, int i_out, int r, int i_in, int c) {
  const WeightBlock& wb = bd.weight(w);
  return m.block(zoff(wb, i_out, r), bd.block(i_out, r, w).dim(), zoff(wb, i_in, c), bd.block(i_in, c, w).dim());
}

namespace {

// Block-level operators of one weight, used to assemble the block formulas.
struct Blocks {
  const BuiltDiagram& bd;
  const HodgeSplit& hs;
  int w;

  std::size_t dim(int i, int j) const { return bd.block(i, j, w).dim(); }
  SparseMat lift(int i, int j, const SparseMat& c) const { return kron_identity(monos(bd, i, j, w), c); }
  SparseMat id(int i, int j) const { return SparseMat::identity(dim(i, j)); }
  SparseMat d(int i, int j) const { return bd.weight(w).d[i][j]; }
  SparseMat K(int i, int j) const { return bd.weight(w).K[i][j]; }
  SparseMat T(int i, int j) const { return lift(i, j, hs.at(i, j).T); }
  SparseMat P_ran(int i, int j) const { return lift(i, j, hs.at(i, j).P_ran); }
  SparseMat P_ker(int i, int j) const { return lift(i, j, hs.at(i, j).P_ker); }
  SparseMat P_ups(int i, int j) const { return lift(i, j, hs.at(i, j).P_ups); }

  // (T d)^m from block (i,c) to block (i,c+m), with T d = T^{i+1} d^i.
  SparseMat td_chain(int i, int c, int m) const {
    SparseMat x = id(i, c);
    for (int s = 0; s < m; ++s) x = T(i + 1, c + s) * (d(i, c + s) * x);
    return x;
  }
  // (d T)^m from block (i,c) to block (i,c+m), with d T = d^{i-1} T^i.
  SparseMat dt_chain(int i, int c, int m) const {
    SparseMat x = id(i, c);
    for (int s = 0; s < m; ++s) x = d(i - 1, c + s + 1) * (T(i, c + s) * x);
    return x;
  }
  // (T d)^k T from block (i,c) to block (i-1,c+k+1), with T d = T^i d^{i-1}.
  SparseMat tdt_chain(int i, int c, int k) const {
    SparseMat x = T(i, c);
    for (int s = 1; s <= k; ++s) x = T(i, c + s) * (d(i - 1, c + s) * x);
    return x;
  }
  // K^k from block (i,c) to block (i,c-k).
  SparseMat k_chain(int i, int c, int k) const {
    SparseMat x = id(i, c);
    for (int s = 0; s < k; ++s) x = K(i, c - s) * x;
    return x;
  }
};

}  // namespace

Report verify_block_forms(const BGGComplex& bc) {
  const BuiltDiagram& bd = bc.diagram();
  const int n = bd.spec().n;
  const int N = bd.spec().N();
  Checker ck;
  for (int w = 0; w <= bd.wmax(); ++w) {
    const WeightBlock& wb = bd.weight(w);
    const BGGWeight& bw = bc.weight(w);
    Blocks b{bd, bc.split(), w};
    for (int i = 0; i <= n; ++i) {
      SparseMat dva = i < n ? SparseMat(wb.dV[i] * bw.A[i]) : SparseMat();
      SparseMat bf = bw.B[i] * wb.F[i];
      for (int r = 0; r <= N; ++r) {
        for (int c = 0; c <= N; ++c) {
          std::string where = at(w, i, r, c);
          // The block formula lists G without the leading minus sign of its
          // definition; the computed G is compared against the negated form.
          if (i >= 1) {
            SparseMat g = r > c ? SparseMat(-b.tdt_chain(i, c, r - c - 1)) : SparseMat(b.dim(i - 1, r), b.dim(i, c));
            ck.expect_equal("block form G", block_of(bd, w, bw.G[i], i - 1, r, i, c), g, where);
          }
          if (i < n) {
            SparseMat a = r >= c ? SparseMat(b.td_chain(i, c, r - c) * b.P_ker(i, c)) : SparseMat(b.dim(i, r), b.dim(i, c));
            ck.expect_equal("block form A", block_of(bd, w, bw.A_full[i], i, r, i, c), a, where);
            SparseMat dv = r >= c ? SparseMat((b.id(i + 1, r) - b.P_ran(i + 1, r)) * b.d(i, r) * b.td_chain(i, c, r - c) *
                                              b.P_ups(i, c))
                                  : SparseMat(b.dim(i + 1, r), b.dim(i, c));
            ck.expect_equal("block form d_V A", block_of(bd, w, dva, i + 1, r, i, c), dv, where);
            SparseMat dd = r >= c ? SparseMat(b.P_ups(i + 1, r) * b.d(i, r) * b.td_chain(i, c, r - c) * b.P_ups(i, c))
                                  : SparseMat(b.dim(i + 1, r), b.dim(i, c));
            ck.expect_equal("block form D", block_of(bd, w, bw.D[i], i + 1, r, i, c), dd, where);
          }
          SparseMat bb(b.dim(i, r), b.dim(i, c));
          if (r == c) {
            bb = b.P_ups(i, r);
          } else if (r > c && i >= 1) {
            bb = b.P_ups(i, r) * b.dt_chain(i, c, r - c);
          }
          ck.expect_equal("block form B", block_of(bd, w, bw.B[i], i, r, i, c), bb, where);
          SparseMat f(b.dim(i, r), b.dim(i, c));
          for (int m = 0; m <= std::min(r, c); ++m) {
            if (r > m && i == 0) continue;
            SparseMat term = b.P_ups(i, r) * b.dt_chain(i, m, r - m) * b.k_chain(i, c, c - m);
            f = f + term.scaled(Rational(1) / factorial(static_cast<unsigned>(c - m)));
          }
          ck.expect_equal("block form B F", block_of(bd, w, bf, i, r, i, c), f, where);
        }
      }
    }
  }
  return ck.report();
}

TwoRowCases verify_two_row_cases(const BGGComplex& bc) {
  const BuiltDiagram& bd = bc.diagram();
  const auto& spec = bd.spec();
  const int n = spec.n;
  TwoRowCases out;
  if (spec.N() != 1) throw std::invalid_argument("two-row case analysis needs exactly two rows");
  auto injective = [&](int k) {
    if (k < 0 || k > n) return true;
    return rank(bd.partial(k, 1)) == bd.partial(k, 1).cols();
  };
  auto surjective = [&](int k) {
    if (k > n) return true;
    if (k < 0) return const_dim(spec, 0, 0) == 0;
    return rank(bd.partial(k, 1)) == bd.partial(k, 1).rows();
  };
  Checker ck;
  for (int i = 0; i < n; ++i) {
    int c = 0;
    if (injective(i - 1) && injective(i) && injective(i + 1)) {
      c = 1;
    } else if (injective(i - 1) && injective(i) && surjective(i) && surjective(i + 1)) {
      c = 2;
    } else if (surjective(i - 1) && surjective(i) && surjective(i + 1)) {
      c = 3;
    }
    out.cases.push_back(c);
    for (int w = 0; w <= bd.wmax(); ++w) {
      const BGGWeight& bw = bc.weight(w);
      Blocks b{bd, bc.split(), w};
      std::string where = at(w, i);
      // General two-row form: (P_ran^perp d a0, d a1 + P_ker d T d a0) on Υ.
      SparseMat g00 = (b.id(i + 1, 0) - b.P_ran(i + 1, 0)) * b.d(i, 0) * b.P_ups(i, 0);
      SparseMat g10 = b.P_ker(i + 1, 1) * b.d(i, 1) * b.T(i + 1, 0) * b.d(i, 0) * b.P_ups(i, 0);
      SparseMat g11 = b.d(i, 1) * b.P_ups(i, 1);
      ck.expect_equal("two-row D", block_of(bd, w, bw.D[i], i + 1, 0, i, 0), g00, where);
      ck.expect_equal("two-row D", block_of(bd, w, bw.D[i], i + 1, 1, i, 0), g10, where);
      ck.expect_equal("two-row D", block_of(bd, w, bw.D[i], i + 1, 1, i, 1), g11, where);
      ck.expect_zero("two-row D", block_of(bd, w, bw.D[i], i + 1, 0, i, 1), where);
      ck.expect_equal("two-row G=-T", bw.G[i + 1], -bw.T[i + 1], where);
      if (c == 0) continue;
      SparseMat r00 = SparseMat(b.dim(i + 1, 0), b.dim(i, 0));
      SparseMat r10 = SparseMat(b.dim(i + 1, 1), b.dim(i, 0));
      SparseMat r11 = SparseMat(b.dim(i + 1, 1), b.dim(i, 1));
      if (c == 1) r00 = (b.id(i + 1, 0) - b.P_ran(i + 1, 0)) * b.d(i, 0) * b.P_ups(i, 0);
      if (c == 2) r10 = b.d(i, 1) * b.T(i + 1, 0) * b.d(i, 0) * b.P_ups(i, 0);
      if (c == 3) r11 = b.d(i, 1) * b.P_ups(i, 1);
      std::string name = "two-row case " + std::to_string(c);
      ck.expect_equal(name, block_of(bd, w, bw.D[i], i + 1, 0, i, 0), r00, where);
      ck.expect_equal(name, block_of(bd, w, bw.D[i], i + 1, 1, i, 0), r10, where);
      ck.expect_equal(name, block_of(bd, w, bw.D[i], i + 1, 1, i, 1), r11, where);
    }
  }
  out.report = ck.report();
  return out;
}

CohomologyTable ups_dims(const BGGComplex& bc) {
  const BuiltDiagram& bd = bc.diagram();
  CohomologyTable t;
  for (int w = 0; w <= bd.wmax(); ++w) {
    std::vector<std::size_t> row;
    for (int i = 0; i <= bd.spec().n; ++i) row.push_back(bc.weight(w).ups_basis[i].cols());
    t.push_back(std::move(row));
  }
  return t;
}

CohomologyTable bgg_cohomology(const BGGComplex& bc) {
  const BuiltDiagram& bd = bc.diagram();
  const int n = bd.spec().n;
  CohomologyTable t;
  for (int w = 0; w <= bd.wmax(); ++w) {
    const BGGWeight& bw = bc.weight(w);
    std::vector<std::size_t> ranks;
    for (int i = 0; i <= n; ++i) ranks.push_back(rank(bw.D[i] * bw.ups_basis[i]));
    std::vector<std::size_t> row;
    for (int i = 0; i <= n; ++i) row.push_back(bw.ups_basis[i].cols() - ranks[i] - (i > 0 ? ranks[i - 1] : 0));
    t.push_back(std::move(row));
  }
  return t;
}

std::vector<std::set<int>> operator_orders(const BGGComplex& bc) {
  const BuiltDiagram& bd = bc.diagram();
  const int n = bd.spec().n;
  const int N = bd.spec().N();
  std::vector<std::set<int>> out(n);
  for (int w = 0; w <= bd.wmax(); ++w) {
    for (int i = 0; i < n; ++i) {
      for (int r = 0; r <= N; ++r) {
        for (int c = 0; c <= N; ++c) {
          if (!block_of(bd, w, bc.weight(w).D[i], i + 1, r, i, c).is_zero()) out[i].insert(r - c + 1);
        }
      }
    }
  }
  return out;
}

std::vector<std::pair<int, int>> ups_support(const HodgeSplit& hs, const DiagramSpec& spec) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= spec.n; ++i) {
    for (int j = 0; j <= spec.N(); ++j) {
      if (hs.ups_dim(i, j) > 0) out.emplace_back(i, j);
    }
  }
  return out;
}

}  // namespace bgg
