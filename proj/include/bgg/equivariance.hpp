#pragma once

#include "bgg/bgg.hpp"

#include <string>
#include <vector>

namespace bgg {

/// Linear motion x -> A x of R^n together with its action on each row V_j.
struct Motion {
  std::string name;
  std::vector<Vector> A;            // n x n, rows first
  std::vector<SparseMat> row_action;  // one dim V_j square matrix per row
};

/// Pullback (f^* phi)(x) = phi(A x) with f^* dx^i = sum_j a^i_j dx^j on
/// scalar i-forms of degree p.
SparseMat form_pullback(const std::vector<Vector>& A, int n, int i, int p);

/// Pullback on Z^i at weight w: form pullback tensored with the row action.
SparseMat column_pullback(const BuiltDiagram& bd, const Motion& m, int i, int w);

/// The 48 signed permutations and the rotation with cosine 3/5, sine 4/5 in
/// the x1-x2 plane, acting on the conformal Hessian rows by (1, A^T, 1):
/// (rho psi)_k = sum_j a^j_k psi_j.
std::vector<Motion> conf_hessian_motions();

/// Checks that every motion commutes with d, S, d_V and D at every weight.
Report verify_equivariance(const BGGComplex& bc, const std::vector<Motion>& motions);

}  // namespace bgg
