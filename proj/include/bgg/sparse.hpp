#pragma once

#include "bgg/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace bgg {

struct Entry {
  std::size_t col;
  Rational value;
};

struct Triplet {
  std::size_t row;
  std::size_t col;
  Rational value;
};

/// Coordinate of the first entry where two matrices differ.
struct Mismatch {
  std::size_t row;
  std::size_t col;
  Rational lhs;
  Rational rhs;
};

/// Row-compressed exact sparse matrix. Rows are kept sorted by column with no
/// duplicate coordinates and no stored zeros.
class SparseMat {
 public:
  SparseMat() = default;
  SparseMat(std::size_t rows, std::size_t cols);

  /// Duplicate coordinates are summed; resulting zeros are dropped.
  static SparseMat from_triplets(std::size_t rows, std::size_t cols,
                                 std::vector<Triplet> triplets);
  static SparseMat from_dense(const std::vector<Vector>& rows);
  static SparseMat identity(std::size_t n);
  static SparseMat zero(std::size_t rows, std::size_t cols) { return SparseMat(rows, cols); }
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static SparseMat from_columns(std::size_t rows, const std::vector<Vector>& cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;
  bool empty_shape() const { return rows_ == 0 || cols_ == 0; }

  const std::vector<Entry>& row(std::size_t r) const { return data_[r]; }
  Rational at(std::size_t r, std::size_t c) const;

  bool is_zero() const;
  std::vector<Triplet> triplets() const;
  std::vector<Vector> to_dense() const;
  Vector column(std::size_t c) const;

  SparseMat transpose() const;
  SparseMat block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const;
  /// Keeps the listed columns in the given order.
  SparseMat select_columns(const std::vector<std::size_t>& cols) const;

  Vector apply(const Vector& x) const;

  SparseMat operator*(const SparseMat& rhs) const;
  SparseMat operator+(const SparseMat& rhs) const;
  SparseMat operator-(const SparseMat& rhs) const;
  SparseMat operator-() const;
  SparseMat scaled(const Rational& s) const;

  bool operator==(const SparseMat& rhs) const;
  bool operator!=(const SparseMat& rhs) const { return !(*this == rhs); }

  /// First differing coordinate in row-major order, or nullopt when equal.
  /// Shape mismatches are reported at (rows, cols) of the left operand.
  std::optional<Mismatch> first_mismatch(const SparseMat& rhs) const;

 private:
  friend class SparseBuilder;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::vector<Entry>> data_;
};

/// Accumulates entries (summing duplicates) and produces a canonical matrix.
class SparseBuilder {
 public:
  SparseBuilder(std::size_t rows, std::size_t cols);

  void add(std::size_t r, std::size_t c, const Rational& v);
  /// Adds `m` with its top-left corner at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const SparseMat& m);
  /// Adds `s * m` at (r0, c0).
  void add_block(std::size_t r0, std::size_t c0, const SparseMat& m, const Rational& s);

  SparseMat build() &&;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::vector<Entry>> pending_;
};

/// I_k ⊗ m, with the identity factor as the outer (slow) index.
SparseMat kron_identity(std::size_t k, const SparseMat& m);

/// Kronecker product a ⊗ b; the index of a varies slowest.
SparseMat kron(const SparseMat& a, const SparseMat& b);

}  // namespace bgg
