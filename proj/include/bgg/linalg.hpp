#pragma once

#include "bgg/sparse.hpp"

#include <cstddef>
#include <vector>

namespace bgg {

/// Exact rank over the rationals.
std::size_t rank(const SparseMat& m);

/// Reduced row echelon form. `rows` holds one row per pivot, each with leading
/// entry 1 at `pivots[k]` and zeros in every other pivot column.
struct Echelon {
  SparseMat rows;
  std::vector<std::size_t> pivots;
};

Echelon rref(const SparseMat& m);

/// Basis of {v : m v = 0}, one vector per non-pivot column, with a 1 in that
/// column and zeros in the other free columns.
std::vector<Vector> nullspace(const SparseMat& m);

/// The pivot columns of m, an independent spanning set of ran(m).
std::vector<Vector> column_basis(const SparseMat& m);

/// Symmetric positive definite Gram matrix. The default is the coordinate
/// inner product on a space of the given dimension.
class InnerProduct {
 public:
  static InnerProduct standard(std::size_t dim);
  /// Throws std::invalid_argument unless gram is symmetric positive definite.
  explicit InnerProduct(SparseMat gram);

  std::size_t dim() const { return gram_.rows(); }
  const SparseMat& gram() const { return gram_; }
  bool is_standard() const { return standard_; }

  Rational dot(const Vector& a, const Vector& b) const;

 private:
  InnerProduct() = default;
  SparseMat gram_;
  bool standard_ = false;
};

/// Dense LDL^T without pivoting; throws std::domain_error on a zero pivot.
struct LDLT {
  std::vector<Vector> lower;  // unit lower triangular
  Vector diag;
};

LDLT ldlt(const std::vector<Vector>& symmetric);

/// Exact inverse; throws std::domain_error when singular.
SparseMat inverse(const SparseMat& m);

/// ip-orthogonal projection of v onto span(basis). Throws
/// std::invalid_argument if the basis is dependent.
Vector project(const std::vector<Vector>& basis, const InnerProduct& ip, const Vector& v);

/// Matrix of the ip-orthogonal projection onto the span of the columns of
/// `basis` (which must be independent).
SparseMat projector(const SparseMat& basis, const InnerProduct& ip);

/// Matrix of the ip-orthogonal projection onto ran(m).
SparseMat range_projector(const SparseMat& m, const InnerProduct& ip);

/// Matrix of the ip-orthogonal projection onto ker(m).
SparseMat kernel_projector(const SparseMat& m, const InnerProduct& ip);

/// Generalized inverse: y maps to the unique x orthogonal (in ip_dom) to
/// ker(m) with m x equal to the ip_cod projection of y onto ran(m).
SparseMat pinv_onto(const SparseMat& m, const InnerProduct& ip_dom, const InnerProduct& ip_cod);

}  // namespace bgg
