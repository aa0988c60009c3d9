#pragma once

#include "bgg/sparse.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace bgg {

/// Constant-coefficient value space with a labelled basis.
struct ValueSpace {
  std::string name;
  std::vector<std::string> labels;

  std::size_t dim() const { return labels.size(); }
};

using ValueSpacePtr = std::shared_ptr<const ValueSpace>;

/// Throws std::invalid_argument when labels is empty.
ValueSpacePtr make_value_space(std::string name, std::vector<std::string> labels);
/// Labels e1..e<dim>.
ValueSpacePtr make_value_space(std::string name, std::size_t dim);

/// Exponent tuples of the homogeneous monomials of degree p in n variables,
/// in descending lexicographic order (x1^p first).
class MonomialBasis {
 public:
  static const MonomialBasis& get(int n, int p);

  int n() const { return n_; }
  int degree() const { return p_; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<int>& exponents(std::size_t k) const { return exps_[k]; }
  /// Index of an exponent tuple of this degree; throws std::out_of_range.
  std::size_t index(const std::vector<int>& exps) const;
  std::string label(std::size_t k) const;

 private:
  MonomialBasis(int n, int p);
  int n_;
  int p_;
  std::vector<std::vector<int>> exps_;
  std::vector<std::uint64_t> keys_;  // sorted, parallel to order_
  std::vector<std::size_t> order_;
};

/// Increasing multi-indices J = (j1 < ... < ji) of 0-based axes, in
/// lexicographic order; these index dx^J.
class FormBasis {
 public:
  static const FormBasis& get(int n, int i);

  int n() const { return n_; }
  int degree() const { return i_; }
  std::size_t size() const { return sets_.size(); }
  const std::vector<int>& axes(std::size_t k) const { return sets_[k]; }
  std::uint32_t mask(std::size_t k) const { return masks_[k]; }
  std::size_t index_of_mask(std::uint32_t mask) const;
  std::string label(std::size_t k) const;

 private:
  FormBasis(int n, int i);
  int n_;
  int i_;
  std::vector<std::vector<int>> sets_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::ptrdiff_t> by_mask_;
};

/// i-forms on R^n with homogeneous degree-p polynomial coefficients and values
/// in `value`. Blocks with p < 0, i < 0 or i > n are absent and have dim 0.
/// Basis order: (monomial, dx multi-index, value label), lexicographic.
struct FormBlock {
  int n = 0;
  int i = 0;
  int p = 0;
  ValueSpacePtr value;

  bool present() const { return p >= 0 && i >= 0 && i <= n; }
  std::size_t monomials() const;
  std::size_t forms() const;
  std::size_t dim() const;
  std::size_t index(std::size_t mono, std::size_t form, std::size_t v) const;
  std::string label(std::size_t k) const;
  /// Same shape with the value space replaced by R.
  FormBlock scalar() const;
};

/// Direct sum of form blocks laid out consecutively.
class Space {
 public:
  Space() = default;
  explicit Space(std::vector<FormBlock> blocks);

  const std::vector<FormBlock>& blocks() const { return blocks_; }
  std::size_t offset(std::size_t k) const { return offsets_[k]; }
  std::size_t dim() const { return offsets_.empty() ? 0 : offsets_.back(); }

 private:
  std::vector<FormBlock> blocks_;
  std::vector<std::size_t> offsets_;  // size blocks + 1
};

struct LinMap {
  Space dom;
  Space cod;
  SparseMat mat;
};

/// d: (n, i, p, V) -> (n, i+1, p-1, V).
LinMap exterior_derivative(const FormBlock& b);
/// dx^axis ∧ : (n, i, p, V) -> (n, i+1, p, V); axis is 0-based.
LinMap wedge_dx(int axis, const FormBlock& b);
/// x^axis · : (n, i, p, V) -> (n, i, p+1, V); axis is 0-based.
LinMap mult_coord(int axis, const FormBlock& b);

/// Matrices of the scalar versions of the three maps above, before tensoring
/// with the identity of the value space.
SparseMat scalar_exterior_derivative(int n, int i, int p);
SparseMat scalar_wedge_dx(int axis, int n, int i, int p);
SparseMat scalar_mult_coord(int axis, int n, int i, int p);

/// Sign of dx^axis ∧ dx^J in the sorted basis, or 0 when axis ∈ J.
int wedge_sign(int axis, std::uint32_t mask);

/// Binomial coefficient; zero outside 0 <= k <= n.
std::size_t binomial(int n, int k);

}  // namespace bgg
