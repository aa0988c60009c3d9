#pragma once

#include "bgg/poly_forms.hpp"
#include "bgg/sparse.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bgg {

/// Rows V_0..V_N on R^n and the constant maps generating
/// K^{i,j} = sum_l x^l kappa[j][l], kappa[j][l] : V_j -> V_{j-1}.
struct DiagramSpec {
  std::string name;
  int n = 0;
  std::vector<ValueSpacePtr> rows;
  /// kappa[j][l] for j = 1..N and axis l = 0..n-1; kappa[0] is empty.
  std::vector<std::vector<SparseMat>> kappa;

  int N() const { return static_cast<int>(rows.size()) - 1; }
  /// Throws std::invalid_argument on inconsistent dimensions.
  void validate() const;
};

/// First (j, l, m) with kappa[j-1][l] kappa[j][m] != kappa[j-1][m] kappa[j][l].
struct KappaFailure {
  int j;
  int l;
  int m;
};

std::optional<KappaFailure> check_kappa_commutation(const DiagramSpec& spec);

/// Constant map ∂^{i,j} = sum_l (dx^l ∧) ⊗ kappa[j][l] on Λ^i ⊗ V_j.
SparseMat pointwise_partial(const DiagramSpec& spec, int i, int j);

/// Operators of a single weight w = p + i + j.
struct WeightBlock {
  int w = 0;
  /// Z[i] = ⊕_j FormBlock(n, i, w - i - j, V_j) for i = 0..n.
  std::vector<Space> Z;
  /// Block operators indexed [i][j]: d: (i,j)->(i+1,j), K: (i,j)->(i,j-1),
  /// S: (i,j)->(i+1,j-1). K and S are empty matrices for j = 0.
  std::vector<std::vector<SparseMat>> d, K, S;
  /// Column operators indexed by i. d^n, S^n and d_V^n map into the zero space.
  std::vector<SparseMat> dcol, Kcol, Scol, dV, F, Finv;

  std::size_t dim(int i) const;
};

struct BuildOptions {
  bool check_kappa = true;
};

class BuiltDiagram {
 public:
  const DiagramSpec& spec() const { return spec_; }
  int wmax() const { return wmax_; }
  const WeightBlock& weight(int w) const { return weights_.at(static_cast<std::size_t>(w)); }
  FormBlock block(int i, int j, int w) const;
  /// Constant maps ∂^{i,j} indexed [i][j]; empty for j = 0.
  const SparseMat& partial(int i, int j) const { return partial_[i][j]; }

 private:
  friend BuiltDiagram build(const DiagramSpec&, int, BuildOptions);
  DiagramSpec spec_;
  int wmax_ = 0;
  std::vector<WeightBlock> weights_;
  std::vector<std::vector<SparseMat>> partial_;
};

/// Builds all operators for weights 0..wmax. With check_kappa, throws
/// std::invalid_argument naming (j, l, m) when the kappa maps do not commute.
BuiltDiagram build(const DiagramSpec& spec, int wmax, BuildOptions options = {});

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t comparisons = 0;
  std::string detail;  // first counterexample
};

struct Report {
  std::vector<CheckResult> checks;

  bool passed() const;
  const CheckResult* find(const std::string& name) const;
};

/// Accumulates exact matrix comparisons into named checks.
class Checker {
 public:
  void expect_equal(const std::string& name, const SparseMat& lhs, const SparseMat& rhs, const std::string& where);
  void expect_zero(const std::string& name, const SparseMat& m, const std::string& where);
  void expect_true(const std::string& name, bool ok, const std::string& where);
  Report report() const { return report_; }
  void merge(const Report& other);

 private:
  CheckResult& slot(const std::string& name);
  Report report_;
};

/// dd=0, SK=KS, S=dK-Kd, Sd=-dS, SS=0, d_V d_V=0, the d K^m identity,
/// F d = d_V F and F exp(-K) = I at every weight.
Report verify_identities(const BuiltDiagram& bd);

/// dims[w][i] of a graded complex.
using CohomologyTable = std::vector<std::vector<std::size_t>>;

/// Cohomology of (Z, d_V) per weight and index.
CohomologyTable twisted_cohomology(const BuiltDiagram& bd);
/// Sum over rows of the polynomial de Rham cohomology, per weight and index.
CohomologyTable row_cohomology(const BuiltDiagram& bd);

std::size_t total(const CohomologyTable& t, int index);

}  // namespace bgg
