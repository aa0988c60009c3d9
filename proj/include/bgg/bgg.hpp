#pragma once

#include "bgg/diagram.hpp"

#include <cstddef>
#include <set>
#include <vector>

namespace bgg {

/// Constant-coefficient splitting of Λ^i ⊗ V_j into ran(∂^{i-1,j+1}),
/// ker(∂^{i,j})^⊥ and Υ^{i,j} for the coordinate inner product.
struct ConstantSplit {
  SparseMat P_ran;   // onto ran(∂^{i-1,j+1})
  SparseMat P_ker;   // onto ker(∂^{i,j})
  SparseMat P_ups;   // onto Υ^{i,j} = P_ker - P_ran
  SparseMat T;       // Λ^i⊗V_j -> Λ^{i-1}⊗V_{j+1}; generalized inverse of ∂^{i-1,j+1}
  SparseMat basis;   // columns span Υ^{i,j}
};

class HodgeSplit {
 public:
  const ConstantSplit& at(int i, int j) const { return parts_.at(i).at(j); }
  std::size_t ups_dim(int i, int j) const { return at(i, j).basis.cols(); }

 private:
  friend HodgeSplit hodge_split(const BuiltDiagram&);
  std::vector<std::vector<ConstantSplit>> parts_;
};

HodgeSplit hodge_split(const BuiltDiagram& bd);

/// All BGG operators of one weight, on the ambient spaces Z^i. Index i runs
/// over 0..n; maps into Z^{-1} or Z^{n+1} have zero rows.
struct BGGWeight {
  int w = 0;
  std::vector<SparseMat> P_ran, P_ker, P_ups;  // block diagonal on Z^i
  std::vector<SparseMat> T;                    // Z^i -> Z^{i-1}
  std::vector<SparseMat> G;                    // Z^i -> Z^{i-1}
  std::vector<SparseMat> A_full;               // I - G^{i+1} d_V^i on Z^i
  std::vector<SparseMat> A;                    // A_full P_ups: the chain map on Υ^i
  std::vector<SparseMat> B;                    // P_ups (I - d_V G)
  std::vector<SparseMat> D;                    // P_ups d_V A: Z^i -> Z^{i+1}
  std::vector<SparseMat> ups_basis;            // columns span Υ^i at this weight
};

class BGGComplex {
 public:
  const BuiltDiagram& diagram() const { return *bd_; }
  const HodgeSplit& split() const { return split_; }
  const BGGWeight& weight(int w) const { return weights_.at(static_cast<std::size_t>(w)); }

 private:
  friend BGGComplex compute_bgg(const BuiltDiagram&);
  const BuiltDiagram* bd_ = nullptr;
  HodgeSplit split_;
  std::vector<BGGWeight> weights_;
};

/// Column operators T^i: Z^i -> Z^{i-1} for one weight, lifted from the split.
std::vector<SparseMat> compute_T(const BuiltDiagram& bd, const HodgeSplit& hs, int w);
/// G^i = -sum_{k=0}^{N} (T^i d^{i-1})^k T^i.
std::vector<SparseMat> compute_G(const BuiltDiagram& bd, const std::vector<SparseMat>& T, int w);

/// Runs the whole pipeline. The returned complex refers to `bd`, which must
/// outlive it.
BGGComplex compute_bgg(const BuiltDiagram& bd);

/// TT, TST, STS, STperp, Hodge, the three G properties, D^2=0, d_V A = A D,
/// B d_V = D B, B A = I on Υ and A B = I - d_V G - G d_V at every weight.
Report verify_bgg(const BGGComplex& bc);

/// Block formulas for G, A, d_V A, D, B and B∘F, assembled from the block
/// operators, compared against the computed matrices.
Report verify_block_forms(const BGGComplex& bc);

/// For two-row diagrams: at each index whose injectivity/surjectivity pattern
/// matches one of the three reduced cases, D equals the reduced form.
/// `cases[i]` is 0 when no case applies, otherwise 1, 2 or 3.
struct TwoRowCases {
  std::vector<int> cases;
  Report report;
};
TwoRowCases verify_two_row_cases(const BGGComplex& bc);

/// Υ^i dimension per weight and index.
CohomologyTable ups_dims(const BGGComplex& bc);
CohomologyTable bgg_cohomology(const BGGComplex& bc);

/// Differential orders r - c + 1 of the nonzero blocks Υ^{i,c} -> Υ^{i+1,r}
/// of D^i, collected over all weights; indexed by i.
std::vector<std::set<int>> operator_orders(const BGGComplex& bc);

/// Pairs (i, j) with Υ^{i,j} != 0.
std::vector<std::pair<int, int>> ups_support(const HodgeSplit& hs, const DiagramSpec& spec);

/// Extracts the (row block r of Z^{i_out}) x (column block c of Z^{i_in}) part.
SparseMat block_of(const BuiltDiagram& bd, int w, const SparseMat& m, int i_out, int r, int i_in, int c);

}  // namespace bgg
