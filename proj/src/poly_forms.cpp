#include "bgg/poly_forms.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace bgg {

namespace {

std::uint64_t exponent_key(const std::vector<int>& exps) {
  std::uint64_t key = 0;
  for (int e : exps) key = key * 256 + static_cast<std::uint64_t>(e);
  return key;
}

void descending_compositions(int n, int remaining, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n - 1) {
    cur.push_back(remaining);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur.push_back(e);
    descending_compositions(n, remaining - e, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ValueSpacePtr make_value_space(std::string name, std::vector<std::string> labels) {
  if (labels.empty()) throw std::invalid_argument("value space '" + name + "' must have dim >= 1");
  return std::make_shared<const ValueSpace>(ValueSpace{std::move(name), std::move(labels)});
}

ValueSpacePtr make_value_space(std::string name, std::size_t dim) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < dim; ++k) labels.push_back("e" + std::to_string(k + 1));
  return make_value_space(std::move(name), std::move(labels));
}

std::size_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::size_t r = 1;
  for (int t = 1; t <= k; ++t) r = r * static_cast<std::size_t>(n - k + t) / static_cast<std::size_t>(t);
  return r;
}

MonomialBasis::MonomialBasis(int n, int p) : n_(n), p_(p) {
  if (n < 1 || n > 8) throw std::invalid_argument("spatial dimension must be in 1..8");
  if (p < 0 || p > 255) throw std::invalid_argument("polynomial degree out of range");
  std::vector<int> cur;
  descending_compositions(n, p, cur, exps_);
  order_.resize(exps_.size());
  for (std::size_t k = 0; k < exps_.size(); ++k) order_[k] = k;
  std::sort(order_.begin(), order_.end(),
            [&](std::size_t a, std::size_t b) { return exponent_key(exps_[a]) < exponent_key(exps_[b]); });
  for (std::size_t k : order_) keys_.push_back(exponent_key(exps_[k]));
}

const MonomialBasis& MonomialBasis::get(int n, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, p}];
  if (!slot) slot.reset(new MonomialBasis(n, p));
  return *slot;
}

std::size_t MonomialBasis::index(const std::vector<int>& exps) const {
  if (static_cast<int>(exps.size()) != n_) throw std::out_of_range("monomial arity mismatch");
  int total = 0;
  for (int e : exps) {
    if (e < 0) throw std::out_of_range("negative exponent");
    total += e;
  }
  if (total != p_) throw std::out_of_range("monomial degree mismatch");
  auto key = exponent_key(exps);
  auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  return order_[static_cast<std::size_t>(it - keys_.begin())];
}

std::string MonomialBasis::label(std::size_t k) const {
  std::string s;
  for (int a = 0; a < n_; ++a) {
    int e = exps_[k][a];
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(a + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

FormBasis::FormBasis(int n, int i) : n_(n), i_(i), by_mask_(std::size_t(1) << n, -1) {
  if (n < 1 || n > 8) throw std::invalid_argument("spatial dimension must be in 1..8");
  if (i < 0 || i > n) throw std::invalid_argument("form degree out of range");
  // Enumerate i-subsets in lexicographic order of their sorted tuples.
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == i) {
      std::uint32_t m = 0;
      for (int a : cur) m |= 1u << a;
      by_mask_[m] = static_cast<std::ptrdiff_t>(sets_.size());
      sets_.push_back(cur);
      masks_.push_back(m);
      return;
    }
    for (int a = start; a < n; ++a) {
      cur.push_back(a);
      self(self, a + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

const FormBasis& FormBasis::get(int n, int i) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FormBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{n, i}];
  if (!slot) slot.reset(new FormBasis(n, i));
  return *slot;
}

std::size_t FormBasis::index_of_mask(std::uint32_t mask) const {
  if (mask >= by_mask_.size() || by_mask_[mask] < 0) throw std::out_of_range("form mask not in basis");
  return static_cast<std::size_t>(by_mask_[mask]);
}

std::string FormBasis::label(std::size_t k) const {
  if (sets_[k].empty()) return "1";
  std::string s;
  for (int a : sets_[k]) {
    if (!s.empty()) s += "^";
    s += "dx" + std::to_string(a + 1);
  }
  return s;
}

int wedge_sign(int axis, std::uint32_t mask) {
  if (mask & (1u << axis)) return 0;
  int below = std::popcount(mask & ((1u << axis) - 1u));
  return below % 2 == 0 ? 1 : -1;
}

std::size_t FormBlock::monomials() const { return present() ? binomial(p + n - 1, n - 1) : 0; }
std::size_t FormBlock::forms() const { return present() ? binomial(n, i) : 0; }
std::size_t FormBlock::dim() const { return present() ? monomials() * forms() * value->dim() : 0; }

std::size_t FormBlock::index(std::size_t mono, std::size_t form, std::size_t v) const {
  return (mono * forms() + form) * value->dim() + v;
}

std::string FormBlock::label(std::size_t k) const {
  std::size_t dv = value->dim();
  std::size_t nf = forms();
  std::size_t v = k % dv;
  std::size_t f = (k / dv) % nf;
  std::size_t m = k / dv / nf;
  return MonomialBasis::get(n, p).label(m) + " " + FormBasis::get(n, i).label(f) + " " + value->labels[v];
}

FormBlock FormBlock::scalar() const {
  static const ValueSpacePtr reals = make_value_space("R", std::vector<std::string>{"1"});
  return FormBlock{n, i, p, reals};
}

Space::Space(std::vector<FormBlock> blocks) : blocks_(std::move(blocks)) {
  offsets_.push_back(0);
  for (const auto& b : blocks_) offsets_.push_back(offsets_.back() + b.dim());
}

SparseMat scalar_exterior_derivative(int n, int i, int p) {
  FormBlock src{n, i, p, nullptr};
  FormBlock dst{n, i + 1, p - 1, nullptr};
  std::size_t src_dim = src.present() ? src.monomials() * src.forms() : 0;
  std::size_t dst_dim = dst.present() ? dst.monomials() * dst.forms() : 0;
  SparseBuilder b(dst_dim, src_dim);
  if (src_dim == 0 || dst_dim == 0) return std::move(b).build();
  const auto& mb = MonomialBasis::get(n, p);
  const auto& mb_out = MonomialBasis::get(n, p - 1);
  const auto& fb = FormBasis::get(n, i);
  const auto& fb_out = FormBasis::get(n, i + 1);
  std::vector<int> e;
  for (std::size_t m = 0; m < mb.size(); ++m) {
    for (std::size_t f = 0; f < fb.size(); ++f) {
      for (int a = 0; a < n; ++a) {
        int alpha = mb.exponents(m)[a];
        if (alpha == 0) continue;
        int sign = wedge_sign(a, fb.mask(f));
        if (sign == 0) continue;
        e = mb.exponents(m);
        --e[a];
        std::size_t row = mb_out.index(e) * fb_out.size() + fb_out.index_of_mask(fb.mask(f) | (1u << a));
        b.add(row, m * fb.size() + f, Rational(sign * alpha));
      }
    }
  }
  return std::move(b).build();
}

SparseMat scalar_wedge_dx(int axis, int n, int i, int p) {
  if (axis < 0 || axis >= n) throw std::out_of_range("axis out of range");
  FormBlock src{n, i, p, nullptr};
  FormBlock dst{n, i + 1, p, nullptr};
  std::size_t src_dim = src.present() ? src.monomials() * src.forms() : 0;
  std::size_t dst_dim = dst.present() ? dst.monomials() * dst.forms() : 0;
  SparseBuilder b(dst_dim, src_dim);
  if (src_dim == 0 || dst_dim == 0) return std::move(b).build();
  const auto& fb = FormBasis::get(n, i);
  const auto& fb_out = FormBasis::get(n, i + 1);
  std::size_t monos = src.monomials();
  for (std::size_t f = 0; f < fb.size(); ++f) {
    int sign = wedge_sign(axis, fb.mask(f));
    if (sign == 0) continue;
    std::size_t g = fb_out.index_of_mask(fb.mask(f) | (1u << axis));
    for (std::size_t m = 0; m < monos; ++m) b.add(m * fb_out.size() + g, m * fb.size() + f, Rational(sign));
  }
  return std::move(b).build();
}

SparseMat scalar_mult_coord(int axis, int n, int i, int p) {
  if (axis < 0 || axis >= n) throw std::out_of_range("axis out of range");
  FormBlock src{n, i, p, nullptr};
  FormBlock dst{n, i, p + 1, nullptr};
  std::size_t src_dim = src.present() ? src.monomials() * src.forms() : 0;
  std::size_t dst_dim = dst.present() ? dst.monomials() * dst.forms() : 0;
  SparseBuilder b(dst_dim, src_dim);
  if (src_dim == 0 || dst_dim == 0) return std::move(b).build();
  const auto& mb = MonomialBasis::get(n, p);
  const auto& mb_out = MonomialBasis::get(n, p + 1);
  std::size_t nf = src.forms();
  std::vector<int> e;
  for (std::size_t m = 0; m < mb.size(); ++m) {
    e = mb.exponents(m);
    ++e[axis];
    std::size_t m_out = mb_out.index(e);
    for (std::size_t f = 0; f < nf; ++f) b.add(m_out * nf + f, m * nf + f, Rational(1));
  }
  return std::move(b).build();
}

namespace {

LinMap valued(const FormBlock& src, const FormBlock& dst, const SparseMat& scalar) {
  SparseMat mat = kron(scalar, SparseMat::identity(src.value->dim()));
  return LinMap{Space({src}), Space({dst}), std::move(mat)};
}

}  // namespace

LinMap exterior_derivative(const FormBlock& b) {
  FormBlock dst{b.n, b.i + 1, b.p - 1, b.value};
  return valued(b, dst, scalar_exterior_derivative(b.n, b.i, b.p));
}

LinMap wedge_dx(int axis, const FormBlock& b) {
  FormBlock dst{b.n, b.i + 1, b.p, b.value};
  return valued(b, dst, scalar_wedge_dx(axis, b.n, b.i, b.p));
}

LinMap mult_coord(int axis, const FormBlock& b) {
  FormBlock dst{b.n, b.i, b.p + 1, b.value};
  return valued(b, dst, scalar_mult_coord(axis, b.n, b.i, b.p));
}

}  // namespace bgg
