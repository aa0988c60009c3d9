#include "bgg/sparse.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace bgg {

namespace {

void check_shape(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("shape mismatch in ") + what);
}

// Sorts by column, merges duplicates and drops zeros.
void canonicalize_row(std::vector<Entry>& row) {
  std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
  std::size_t out = 0;
  for (std::size_t k = 0; k < row.size();) {
    std::size_t c = row[k].col;
    Rational sum = std::move(row[k].value);
    ++k;
    while (k < row.size() && row[k].col == c) {
      sum += row[k].value;
      ++k;
    }
    if (!is_zero(sum)) {
      row[out].col = c;
      row[out].value = std::move(sum);
      ++out;
    }
  }
  row.resize(out);
}

// Row-wise merge of two sorted rows: a + s*b.
std::vector<Entry> merge_rows(const std::vector<Entry>& a, const std::vector<Entry>& b, int s) {
  std::vector<Entry> out;
  out.reserve(a.size() + b.size());
  std::size_t ia = 0, ib = 0;
  while (ia < a.size() || ib < b.size()) {
    if (ib == b.size() || (ia < a.size() && a[ia].col < b[ib].col)) {
      out.push_back(a[ia++]);
    } else if (ia == a.size() || b[ib].col < a[ia].col) {
      out.push_back({b[ib].col, s > 0 ? b[ib].value : Rational(-b[ib].value)});
      ++ib;
    } else {
      Rational v = s > 0 ? Rational(a[ia].value + b[ib].value) : Rational(a[ia].value - b[ib].value);
      if (!is_zero(v)) out.push_back({a[ia].col, std::move(v)});
      ++ia;
      ++ib;
    }
  }
  return out;
}

}  // namespace

SparseMat::SparseMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseMat SparseMat::from_triplets(std::size_t rows, std::size_t cols, std::vector<Triplet> triplets) {
  SparseBuilder b(rows, cols);
  for (auto& t : triplets) b.add(t.row, t.col, t.value);
  return std::move(b).build();
}

SparseMat SparseMat::from_dense(const std::vector<Vector>& rows) {
  std::size_t nc = rows.empty() ? 0 : rows[0].size();
  SparseMat m(rows.size(), nc);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    check_shape(rows[r].size() == nc, "from_dense");
    for (std::size_t c = 0; c < nc; ++c) {
      if (!bgg::is_zero(rows[r][c])) m.data_[r].push_back({c, rows[r][c]});
    }
  }
  return m;
}

SparseMat SparseMat::identity(std::size_t n) {
  SparseMat m(n, n);
  for (std::size_t k = 0; k < n; ++k) m.data_[k].push_back({k, Rational(1)});
  return m;
}

SparseMat SparseMat::from_columns(std::size_t rows, const std::vector<Vector>& cols) {
  SparseBuilder b(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    check_shape(cols[c].size() == rows, "from_columns");
    for (std::size_t r = 0; r < rows; ++r) {
      if (!bgg::is_zero(cols[c][r])) b.add(r, c, cols[c][r]);
    }
  }
  return std::move(b).build();
}

std::size_t SparseMat::nnz() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Rational SparseMat::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMat::at");
  const auto& row = data_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const Entry& e, std::size_t col) { return e.col < col; });
  if (it != row.end() && it->col == c) return it->value;
  return Rational(0);
}

bool SparseMat::is_zero() const {
  for (const auto& r : data_) {
    if (!r.empty()) return false;
  }
  return true;
}

std::vector<Triplet> SparseMat::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) out.push_back({r, e.col, e.value});
  }
  return out;
}

std::vector<Vector> SparseMat::to_dense() const {
  std::vector<Vector> out(rows_, Vector(cols_));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) out[r][e.col] = e.value;
  }
  return out;
}

Vector SparseMat::column(std::size_t c) const {
  Vector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

SparseMat SparseMat::transpose() const {
  SparseMat t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) t.data_[e.col].push_back({r, e.value});
  }
  return t;
}

SparseMat SparseMat::block(std::size_t r0, std::size_t nr, std::size_t c0, std::size_t nc) const {
  check_shape(r0 + nr <= rows_ && c0 + nc <= cols_, "block");
  SparseMat m(nr, nc);
  for (std::size_t r = 0; r < nr; ++r) {
    for (const auto& e : data_[r0 + r]) {
      if (e.col >= c0 && e.col < c0 + nc) m.data_[r].push_back({e.col - c0, e.value});
    }
  }
  return m;
}

SparseMat SparseMat::select_columns(const std::vector<std::size_t>& cols) const {
  std::vector<std::ptrdiff_t> where(cols_, -1);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    check_shape(cols[k] < cols_, "select_columns");
    where[cols[k]] = static_cast<std::ptrdiff_t>(k);
  }
  SparseMat m(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) {
      if (where[e.col] >= 0) m.data_[r].push_back({static_cast<std::size_t>(where[e.col]), e.value});
    }
    canonicalize_row(m.data_[r]);
  }
  return m;
}

Vector SparseMat::apply(const Vector& x) const {
  check_shape(x.size() == cols_, "apply");
  Vector y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : data_[r]) y[r] += e.value * x[e.col];
  }
  return y;
}

SparseMat SparseMat::operator*(const SparseMat& rhs) const {
  check_shape(cols_ == rhs.rows_, "product");
  SparseMat out(rows_, rhs.cols_);
  std::vector<Rational> acc(rhs.cols_);
  std::vector<char> used(rhs.cols_, 0);
  std::vector<std::size_t> touched;
  Rational tmp;
  for (std::size_t r = 0; r < rows_; ++r) {
    touched.clear();
    for (const auto& a : data_[r]) {
      for (const auto& b : rhs.data_[a.col]) {
        mpq_mul(tmp.get_mpq_t(), a.value.get_mpq_t(), b.value.get_mpq_t());
        if (!used[b.col]) {
          used[b.col] = 1;
          touched.push_back(b.col);
          acc[b.col] = tmp;
        } else {
          acc[b.col] += tmp;
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& row = out.data_[r];
    for (std::size_t c : touched) {
      used[c] = 0;
      if (!bgg::is_zero(acc[c])) row.push_back({c, acc[c]});
    }
  }
  return out;
}

SparseMat SparseMat::operator+(const SparseMat& rhs) const {
  check_shape(rows_ == rhs.rows_ && cols_ == rhs.cols_, "sum");
  SparseMat out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) out.data_[r] = merge_rows(data_[r], rhs.data_[r], 1);
  return out;
}

SparseMat SparseMat::operator-(const SparseMat& rhs) const {
  check_shape(rows_ == rhs.rows_ && cols_ == rhs.cols_, "difference");
  SparseMat out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) out.data_[r] = merge_rows(data_[r], rhs.data_[r], -1);
  return out;
}

SparseMat SparseMat::operator-() const { return scaled(Rational(-1)); }

SparseMat SparseMat::scaled(const Rational& s) const {
  SparseMat out(rows_, cols_);
  if (bgg::is_zero(s)) return out;
  for (std::size_t r = 0; r < rows_; ++r) {
    out.data_[r].reserve(data_[r].size());
    for (const auto& e : data_[r]) out.data_[r].push_back({e.col, e.value * s});
  }
  return out;
}

bool SparseMat::operator==(const SparseMat& rhs) const { return !first_mismatch(rhs).has_value(); }

std::optional<Mismatch> SparseMat::first_mismatch(const SparseMat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return Mismatch{rows_, cols_, Rational(0), Rational(0)};
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto& a = data_[r];
    const auto& b = rhs.data_[r];
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() || ib < b.size()) {
      if (ib == b.size() || (ia < a.size() && a[ia].col < b[ib].col)) {
        return Mismatch{r, a[ia].col, a[ia].value, Rational(0)};
      }
      if (ia == a.size() || b[ib].col < a[ia].col) {
        return Mismatch{r, b[ib].col, Rational(0), b[ib].value};
      }
      if (a[ia].value != b[ib].value) return Mismatch{r, a[ia].col, a[ia].value, b[ib].value};
      ++ia;
      ++ib;
    }
  }
  return std::nullopt;
}

SparseBuilder::SparseBuilder(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), pending_(rows) {}

void SparseBuilder::add(std::size_t r, std::size_t c, const Rational& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseBuilder::add");
  if (!is_zero(v)) pending_[r].push_back({c, v});
}

void SparseBuilder::add_block(std::size_t r0, std::size_t c0, const SparseMat& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw std::out_of_range("SparseBuilder::add_block");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) pending_[r0 + r].push_back({c0 + e.col, e.value});
  }
}

void SparseBuilder::add_block(std::size_t r0, std::size_t c0, const SparseMat& m, const Rational& s) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) throw std::out_of_range("SparseBuilder::add_block");
  if (is_zero(s)) return;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) pending_[r0 + r].push_back({c0 + e.col, e.value * s});
  }
}

SparseMat SparseBuilder::build() && {
  SparseMat m(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    canonicalize_row(pending_[r]);
    m.data_[r] = std::move(pending_[r]);
  }
  return m;
}

SparseMat kron_identity(std::size_t k, const SparseMat& m) {
  SparseBuilder b(k * m.rows(), k * m.cols());
  for (std::size_t t = 0; t < k; ++t) b.add_block(t * m.rows(), t * m.cols(), m);
  return std::move(b).build();
}

SparseMat kron(const SparseMat& a, const SparseMat& b) {
  SparseBuilder out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ra = 0; ra < a.rows(); ++ra) {
    for (const auto& ea : a.row(ra)) {
      out.add_block(ra * b.rows(), ea.col * b.cols(), b, ea.value);
    }
  }
  return std::move(out).build();
}

}  // namespace bgg
