#include "bgg/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace bgg {

namespace {

struct IntEntry {
  std::size_t col;
  Integer value;
};
using IntRow = std::vector<IntEntry>;

// Scales a rational row to a primitive integer row with the same span.
IntRow to_primitive(const std::vector<Entry>& row) {
  Integer l = 1;
  for (const auto& e : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), e.value.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& e : row) {
    Integer v = l / e.value.get_den() * e.value.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    out.push_back({e.col, std::move(v)});
  }
  if (g > 1) {
    for (auto& e : out) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

void make_primitive(IntRow& row) {
  Integer g = 0;
  for (const auto& e : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), e.value.get_mpz_t());
    if (g == 1) return;
  }
  if (g > 1) {
    for (auto& e : row) mpz_divexact(e.value.get_mpz_t(), e.value.get_mpz_t(), g.get_mpz_t());
  }
}

// a*row - b*pivot, where both share the leading column (which cancels).
IntRow eliminate(const IntRow& row, const IntRow& pivot, const Integer& a, const Integer& b) {
  IntRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t ir = 1, ip = 1;
  Integer t;
  while (ir < row.size() || ip < pivot.size()) {
    if (ip == pivot.size() || (ir < row.size() && row[ir].col < pivot[ip].col)) {
      out.push_back({row[ir].col, a * row[ir].value});
      ++ir;
    } else if (ir == row.size() || pivot[ip].col < row[ir].col) {
      out.push_back({pivot[ip].col, -b * pivot[ip].value});
      ++ip;
    } else {
      t = a * row[ir].value;
      mpz_submul(t.get_mpz_t(), b.get_mpz_t(), pivot[ip].value.get_mpz_t());
      if (t != 0) out.push_back({row[ir].col, t});
      ++ir;
      ++ip;
    }
  }
  make_primitive(out);
  return out;
}

// Fraction-free forward elimination. Returns echelon rows ordered by pivot.
std::vector<IntRow> echelon_rows(const SparseMat& m) {
  std::vector<std::vector<IntRow>> buckets(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    IntRow row = to_primitive(m.row(r));
    std::size_t lead = row.front().col;
    buckets[lead].push_back(std::move(row));
  }
  std::vector<IntRow> out;
  Integer g, a, b;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto& bucket = buckets[c];
    if (bucket.empty()) continue;
    std::size_t best = 0;
    for (std::size_t k = 1; k < bucket.size(); ++k) {
      if (bucket[k].size() < bucket[best].size()) best = k;
    }
    IntRow pivot = std::move(bucket[best]);
    for (std::size_t k = 0; k < bucket.size(); ++k) {
      if (k == best) continue;
      const Integer& rl = bucket[k].front().value;
      const Integer& pl = pivot.front().value;
      mpz_gcd(g.get_mpz_t(), rl.get_mpz_t(), pl.get_mpz_t());
      mpz_divexact(a.get_mpz_t(), pl.get_mpz_t(), g.get_mpz_t());
      mpz_divexact(b.get_mpz_t(), rl.get_mpz_t(), g.get_mpz_t());
      IntRow reduced = eliminate(bucket[k], pivot, a, b);
      if (!reduced.empty()) {
        std::size_t lead = reduced.front().col;
        buckets[lead].push_back(std::move(reduced));
      }
    }
    std::vector<IntRow>().swap(bucket);
    out.push_back(std::move(pivot));
  }
  return out;
}

using Dense = std::vector<Vector>;

Dense dense_inverse(Dense a) {
  std::size_t n = a.size();
  Dense inv(n, Vector(n));
  for (std::size_t k = 0; k < n; ++k) inv[k][k] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a[p][c])) ++p;
    if (p == n) throw std::domain_error("matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rational s = 1 / a[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      a[c][k] *= s;
      inv[c][k] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || is_zero(a[r][c])) continue;
      Rational f = a[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        if (!is_zero(a[c][k])) a[r][k] -= f * a[c][k];
        if (!is_zero(inv[c][k])) inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

SparseMat apply_gram(const InnerProduct& ip, const SparseMat& m) {
  return ip.is_standard() ? m : ip.gram() * m;
}

}  // namespace

std::size_t rank(const SparseMat& m) { return echelon_rows(m).size(); }

Echelon rref(const SparseMat& m) {
  std::vector<IntRow> ech = echelon_rows(m);
  std::size_t k = ech.size();
  std::vector<std::size_t> pivots(k);
  std::vector<std::vector<Entry>> rows(k);
  std::vector<std::ptrdiff_t> pivot_row(m.cols(), -1);
  for (std::size_t r = 0; r < k; ++r) {
    pivots[r] = ech[r].front().col;
    pivot_row[pivots[r]] = static_cast<std::ptrdiff_t>(r);
    Rational lead(ech[r].front().value);
    rows[r].reserve(ech[r].size());
    for (const auto& e : ech[r]) rows[r].push_back({e.col, Rational(e.value) / lead});
  }
  // Back substitution from the bottom: reduced rows vanish on other pivot
  // columns, so subtracting them never creates new pivot-column entries.
  for (std::size_t r = k; r-- > 0;) {
    SparseBuilder acc(1, m.cols());
    bool changed = false;
    for (const auto& e : rows[r]) {
      std::ptrdiff_t pr = pivot_row[e.col];
      if (pr > static_cast<std::ptrdiff_t>(r)) changed = true;
    }
    if (!changed) continue;
    std::vector<std::pair<std::size_t, Rational>> subs;
    for (const auto& e : rows[r]) {
      acc.add(0, e.col, e.value);
      std::ptrdiff_t pr = pivot_row[e.col];
      if (pr > static_cast<std::ptrdiff_t>(r)) subs.emplace_back(static_cast<std::size_t>(pr), e.value);
    }
    for (const auto& [pr, f] : subs) {
      for (const auto& e : rows[pr]) acc.add(0, e.col, -f * e.value);
    }
    SparseMat reduced = std::move(acc).build();
    rows[r] = reduced.row(0);
  }
  SparseBuilder b(k, m.cols());
  for (std::size_t r = 0; r < k; ++r) {
    for (const auto& e : rows[r]) b.add(r, e.col, e.value);
  }
  return {std::move(b).build(), std::move(pivots)};
}

std::vector<Vector> nullspace(const SparseMat& m) {
  Echelon e = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (std::size_t p : e.pivots) is_pivot[p] = 1;
  std::vector<std::size_t> free_index(m.cols(), 0);
  std::vector<Vector> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    free_index[c] = basis.size();
    Vector v(m.cols());
    v[c] = 1;
    basis.push_back(std::move(v));
  }
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    for (const auto& entry : e.rows.row(r)) {
      if (is_pivot[entry.col]) continue;
      basis[free_index[entry.col]][e.pivots[r]] = -entry.value;
    }
  }
  return basis;
}

std::vector<Vector> column_basis(const SparseMat& m) {
  std::vector<IntRow> ech = echelon_rows(m);
  std::vector<Vector> out;
  out.reserve(ech.size());
  for (const auto& row : ech) out.push_back(m.column(row.front().col));
  return out;
}

InnerProduct InnerProduct::standard(std::size_t dim) {
  InnerProduct ip;
  ip.gram_ = SparseMat::identity(dim);
  ip.standard_ = true;
  return ip;
}

InnerProduct::InnerProduct(SparseMat gram) : gram_(std::move(gram)) {
  if (gram_.rows() != gram_.cols()) throw std::invalid_argument("Gram matrix must be square");
  if (gram_ != gram_.transpose()) throw std::invalid_argument("Gram matrix must be symmetric");
  LDLT f;
  try {
    f = ldlt(gram_.to_dense());
  } catch (const std::domain_error&) {
    throw std::invalid_argument("Gram matrix is not positive definite");
  }
  for (const auto& d : f.diag) {
    if (sgn(d) <= 0) throw std::invalid_argument("Gram matrix is not positive definite");
  }
  standard_ = gram_ == SparseMat::identity(gram_.rows());
}

Rational InnerProduct::dot(const Vector& a, const Vector& b) const {
  if (a.size() != dim() || b.size() != dim()) throw std::invalid_argument("dimension mismatch in dot");
  Rational s = 0;
  if (standard_) {
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
  }
  Vector gb = gram_.apply(b);
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * gb[k];
  return s;
}

LDLT ldlt(const std::vector<Vector>& a) {
  std::size_t n = a.size();
  LDLT f{std::vector<Vector>(n, Vector(n)), Vector(n)};
  for (std::size_t j = 0; j < n; ++j) {
    Rational d = a[j][j];
    for (std::size_t k = 0; k < j; ++k) d -= f.lower[j][k] * f.lower[j][k] * f.diag[k];
    if (is_zero(d)) throw std::domain_error("zero pivot in LDL^T");
    f.diag[j] = d;
    f.lower[j][j] = 1;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rational s = a[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= f.lower[i][k] * f.lower[j][k] * f.diag[k];
      f.lower[i][j] = s / d;
    }
  }
  return f;
}

SparseMat inverse(const SparseMat& m) {
  if (m.rows() != m.cols()) throw std::domain_error("inverse of a non-square matrix");
  return SparseMat::from_dense(dense_inverse(m.to_dense()));
}

Vector project(const std::vector<Vector>& basis, const InnerProduct& ip, const Vector& v) {
  if (v.size() != ip.dim()) throw std::invalid_argument("dimension mismatch in project");
  if (basis.empty()) return Vector(v.size());
  SparseMat e = SparseMat::from_columns(ip.dim(), basis);
  if (rank(e) != basis.size()) throw std::invalid_argument("projection basis is dependent");
  return projector(e, ip).apply(v);
}

SparseMat projector(const SparseMat& basis, const InnerProduct& ip) {
  std::size_t n = basis.rows();
  if (n != ip.dim()) throw std::invalid_argument("dimension mismatch in projector");
  if (basis.cols() == 0) return SparseMat(n, n);
  SparseMat ge = apply_gram(ip, basis);
  SparseMat small = basis.transpose() * ge;
  SparseMat inv;
  try {
    inv = inverse(small);
  } catch (const std::domain_error&) {
    throw std::invalid_argument("projection basis is dependent");
  }
  return basis * (inv * ge.transpose());
}

SparseMat range_projector(const SparseMat& m, const InnerProduct& ip) {
  return projector(SparseMat::from_columns(m.rows(), column_basis(m)), ip);
}

SparseMat kernel_projector(const SparseMat& m, const InnerProduct& ip) {
  return projector(SparseMat::from_columns(m.cols(), nullspace(m)), ip);
}

SparseMat pinv_onto(const SparseMat& m, const InnerProduct& ip_dom, const InnerProduct& ip_cod) {
  if (ip_dom.dim() != m.cols() || ip_cod.dim() != m.rows()) {
    throw std::invalid_argument("dimension mismatch in pinv_onto");
  }
  Echelon e = rref(m);
  if (e.pivots.empty()) return SparseMat(m.cols(), m.rows());
  // x is orthogonal to ker(m) iff gram_dom * x lies in the row space of m.
  SparseMat q = e.rows.transpose();
  if (!ip_dom.is_standard()) q = inverse(ip_dom.gram()) * q;
  SparseMat mq = m * q;
  SparseMat gmq = apply_gram(ip_cod, mq);
  SparseMat normal = mq.transpose() * gmq;
  return q * (inverse(normal) * gmq.transpose());
}

}  // namespace bgg
