#include "bgg/diagram.hpp"

#include "bgg/linalg.hpp"

#include <sstream>
#include <stdexcept>

namespace bgg {

void DiagramSpec::validate() const {
  if (n < 1 || n > 8) throw std::invalid_argument("diagram '" + name + "': n must be in 1..8");
  if (rows.empty()) throw std::invalid_argument("diagram '" + name + "': no rows");
  for (const auto& r : rows) {
    if (!r || r->dim() == 0) throw std::invalid_argument("diagram '" + name + "': empty row value space");
  }
  if (kappa.size() != rows.size()) throw std::invalid_argument("diagram '" + name + "': kappa must have one entry per row");
  if (!kappa[0].empty()) throw std::invalid_argument("diagram '" + name + "': row 0 has no kappa");
  for (int j = 1; j <= N(); ++j) {
    if (static_cast<int>(kappa[j].size()) != n) {
      throw std::invalid_argument("diagram '" + name + "': row " + std::to_string(j) + " needs one kappa per axis");
    }
    for (const auto& k : kappa[j]) {
      if (k.rows() != rows[j - 1]->dim() || k.cols() != rows[j]->dim()) {
        throw std::invalid_argument("diagram '" + name + "': kappa of row " + std::to_string(j) + " has wrong shape");
      }
    }
  }
}

std::optional<KappaFailure> check_kappa_commutation(const DiagramSpec& spec) {
  for (int j = 2; j <= spec.N(); ++j) {
    for (int l = 0; l < spec.n; ++l) {
      for (int m = l + 1; m < spec.n; ++m) {
        if (spec.kappa[j - 1][l] * spec.kappa[j][m] != spec.kappa[j - 1][m] * spec.kappa[j][l]) {
          return KappaFailure{j, l, m};
        }
      }
    }
  }
  return std::nullopt;
}

SparseMat pointwise_partial(const DiagramSpec& spec, int i, int j) {
  std::size_t in_dim = binomial(spec.n, i) * spec.rows[j]->dim();
  if (j == 0) return SparseMat(0, in_dim);
  std::size_t out_dim = binomial(spec.n, i + 1) * spec.rows[j - 1]->dim();
  SparseMat acc(out_dim, in_dim);
  for (int l = 0; l < spec.n; ++l) acc = acc + kron(scalar_wedge_dx(l, spec.n, i, 0), spec.kappa[j][l]);
  return acc;
}

std::size_t WeightBlock::dim(int i) const {
  if (i < 0 || i >= static_cast<int>(Z.size())) return 0;
  return Z[i].dim();
}

FormBlock BuiltDiagram::block(int i, int j, int w) const {
  return FormBlock{spec_.n, i, w - i - j, spec_.rows.at(static_cast<std::size_t>(j))};
}

namespace {

std::size_t offset_or_zero(const WeightBlock& wb, int i, int j) {
  if (i < 0 || i >= static_cast<int>(wb.Z.size())) return 0;
  return wb.Z[i].offset(static_cast<std::size_t>(j));
}

WeightBlock build_weight(const BuiltDiagram& bd, const DiagramSpec& spec, int w) {
  const int n = spec.n;
  const int N = spec.N();
  WeightBlock wb;
  wb.w = w;
  for (int i = 0; i <= n; ++i) {
    std::vector<FormBlock> blocks;
    for (int j = 0; j <= N; ++j) blocks.push_back(bd.block(i, j, w));
    wb.Z.emplace_back(std::move(blocks));
  }
  wb.d.assign(n + 1, std::vector<SparseMat>(N + 1));
  wb.K = wb.d;
  wb.S = wb.d;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= N; ++j) {
      FormBlock b = bd.block(i, j, w);
      std::size_t dv = spec.rows[j]->dim();
      wb.d[i][j] = kron(scalar_exterior_derivative(n, i, b.p), SparseMat::identity(dv));
      if (j == 0) continue;
      SparseMat k(bd.block(i, j - 1, w).dim(), b.dim());
      for (int l = 0; l < n; ++l) k = k + kron(scalar_mult_coord(l, n, i, b.p), spec.kappa[j][l]);
      wb.K[i][j] = std::move(k);
      wb.S[i][j] = kron_identity(b.monomials(), bd.partial(i, j));
    }
  }
  for (int i = 0; i <= n; ++i) {
    std::size_t cols = wb.dim(i);
    std::size_t next = wb.dim(i + 1);
    SparseBuilder db(next, cols), kb(cols, cols), sb(next, cols);
    for (int j = 0; j <= N; ++j) {
      std::size_t c0 = offset_or_zero(wb, i, j);
      if (i < n) db.add_block(offset_or_zero(wb, i + 1, j), c0, wb.d[i][j]);
      if (j == 0) continue;
      kb.add_block(offset_or_zero(wb, i, j - 1), c0, wb.K[i][j]);
      if (i < n) sb.add_block(offset_or_zero(wb, i + 1, j - 1), c0, wb.S[i][j]);
    }
    wb.dcol.push_back(std::move(db).build());
    wb.Kcol.push_back(std::move(kb).build());
    wb.Scol.push_back(std::move(sb).build());
    wb.dV.push_back(wb.dcol.back() - wb.Scol.back());

    SparseMat f = SparseMat::identity(cols), finv = f, power = f;
    for (int m = 1; m <= N; ++m) {
      power = power * wb.Kcol.back();
      Rational c = 1 / factorial(static_cast<unsigned>(m));
      f = f + power.scaled(c);
      finv = finv + power.scaled(m % 2 == 0 ? c : Rational(-c));
    }
    wb.F.push_back(std::move(f));
    wb.Finv.push_back(std::move(finv));
  }
  return wb;
}

std::string where(int w, int i, int j = -1) {
  std::ostringstream s;
  s << "w=" << w << " i=" << i;
  if (j >= 0) s << " j=" << j;
  return s.str();
}

}  // namespace

BuiltDiagram build(const DiagramSpec& spec, int wmax, BuildOptions options) {
  spec.validate();
  if (wmax < 0) throw std::invalid_argument("wmax must be non-negative");
  if (options.check_kappa) {
    if (auto f = check_kappa_commutation(spec)) {
      throw std::invalid_argument("diagram '" + spec.name + "': kappa maps do not commute at row j=" +
                                  std::to_string(f->j) + ", axes l=" + std::to_string(f->l + 1) +
                                  ", m=" + std::to_string(f->m + 1));
    }
  }
  BuiltDiagram bd;
  bd.spec_ = spec;
  bd.wmax_ = wmax;
  bd.partial_.assign(spec.n + 1, std::vector<SparseMat>(spec.N() + 1));
  for (int i = 0; i <= spec.n; ++i) {
    for (int j = 0; j <= spec.N(); ++j) bd.partial_[i][j] = pointwise_partial(spec, i, j);
  }
  for (int w = 0; w <= wmax; ++w) bd.weights_.push_back(build_weight(bd, spec, w));
  return bd;
}

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const CheckResult* Report::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

CheckResult& Checker::slot(const std::string& name) {
  for (auto& c : report_.checks) {
    if (c.name == name) return c;
  }
  report_.checks.push_back(CheckResult{name, true, 0, {}});
  return report_.checks.back();
}

void Checker::expect_equal(const std::string& name, const SparseMat& lhs, const SparseMat& rhs, const std::string& at) {
  CheckResult& c = slot(name);
  ++c.comparisons;
  auto mm = lhs.first_mismatch(rhs);
  if (!mm || !c.passed) {
    if (mm) c.passed = false;
    return;
  }
  c.passed = false;
  std::ostringstream s;
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    s << at << ": shape " << lhs.rows() << "x" << lhs.cols() << " vs " << rhs.rows() << "x" << rhs.cols();
  } else {
    s << at << ": entry (" << mm->row << "," << mm->col << ") " << to_string(mm->lhs) << " vs " << to_string(mm->rhs);
  }
  c.detail = s.str();
}

void Checker::expect_zero(const std::string& name, const SparseMat& m, const std::string& at) {
  expect_equal(name, m, SparseMat::zero(m.rows(), m.cols()), at);
}

void Checker::expect_true(const std::string& name, bool ok, const std::string& at) {
  CheckResult& c = slot(name);
  ++c.comparisons;
  if (!ok && c.passed) {
    c.passed = false;
    c.detail = at;
  }
}

void Checker::merge(const Report& other) {
  for (const auto& c : other.checks) {
    CheckResult& s = slot(c.name);
    s.comparisons += c.comparisons;
    if (!c.passed && s.passed) {
      s.passed = false;
      s.detail = c.detail;
    }
  }
}

Report verify_identities(const BuiltDiagram& bd) {
  const auto& spec = bd.spec();
  const int n = spec.n;
  const int N = spec.N();
  Checker ck;
  if (auto f = check_kappa_commutation(spec)) {
    ck.expect_true("kappa commutation", false,
                   "j=" + std::to_string(f->j) + " l=" + std::to_string(f->l + 1) + " m=" + std::to_string(f->m + 1));
  } else {
    ck.expect_true("kappa commutation", true, "");
  }
  for (int w = 0; w <= bd.wmax(); ++w) {
    const WeightBlock& wb = bd.weight(w);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= N; ++j) {
        std::string at = where(w, i, j);
        if (i + 1 <= n) ck.expect_zero("dd=0", wb.d[i + 1][j] * wb.d[i][j], at);
        if (j == 0 || i == n) continue;
        // S = dK - Kd, with S assembled pointwise from the kappa maps.
        ck.expect_equal("S=dK-Kd", wb.S[i][j], wb.d[i][j - 1] * wb.K[i][j] - wb.K[i + 1][j] * wb.d[i][j], at);
        ck.expect_equal("Sd=-dS", wb.S[i + 1][j] * wb.d[i][j], -(wb.d[i + 1][j - 1] * wb.S[i][j]), at);
        if (j >= 2) {
          ck.expect_equal("SK=KS", wb.S[i][j - 1] * wb.K[i][j], wb.K[i + 1][j - 1] * wb.S[i][j], at);
          ck.expect_zero("SS=0", wb.S[i + 1][j - 1] * wb.S[i][j], at);
        }
      }
      std::string at = where(w, i);
      std::size_t cols = wb.dim(i);
      if (i + 1 <= n) {
        ck.expect_zero("dVdV=0", wb.dV[i + 1] * wb.dV[i], at);
        ck.expect_equal("Fd=dVF", wb.F[i + 1] * wb.dcol[i], wb.dV[i] * wb.F[i], at);
        SparseMat ki = SparseMat::identity(cols), ki1 = SparseMat::identity(wb.dim(i + 1));
        for (int m = 1; m <= N; ++m) {
          SparseMat prev = ki;
          ki = ki * wb.Kcol[i];
          ki1 = ki1 * wb.Kcol[i + 1];
          ck.expect_equal("dK^m-K^md=mSK^(m-1)", wb.dcol[i] * ki - ki1 * wb.dcol[i],
                          (wb.Scol[i] * prev).scaled(Rational(m)), at + " m=" + std::to_string(m));
        }
      }
      ck.expect_equal("F exp(-K)=I", wb.F[i] * wb.Finv[i], SparseMat::identity(cols), at);
    }
  }
  return ck.report();
}

CohomologyTable twisted_cohomology(const BuiltDiagram& bd) {
  const int n = bd.spec().n;
  CohomologyTable t;
  for (int w = 0; w <= bd.wmax(); ++w) {
    const WeightBlock& wb = bd.weight(w);
    std::vector<std::size_t> ranks;
    for (int i = 0; i <= n; ++i) ranks.push_back(rank(wb.dV[i]));
    std::vector<std::size_t> row;
    for (int i = 0; i <= n; ++i) row.push_back(wb.dim(i) - ranks[i] - (i > 0 ? ranks[i - 1] : 0));
    t.push_back(std::move(row));
  }
  return t;
}

CohomologyTable row_cohomology(const BuiltDiagram& bd) {
  const auto& spec = bd.spec();
  CohomologyTable t;
  for (int w = 0; w <= bd.wmax(); ++w) {
    std::vector<std::size_t> row(spec.n + 1, 0);
    for (int j = 0; j <= spec.N(); ++j) {
      std::size_t dv = spec.rows[j]->dim();
      for (int i = 0; i <= spec.n; ++i) {
        FormBlock b = bd.block(i, j, w);
        std::size_t out = rank(scalar_exterior_derivative(spec.n, i, b.p)) * dv;
        std::size_t in = i > 0 ? rank(scalar_exterior_derivative(spec.n, i - 1, b.p + 1)) * dv : 0;
        row[i] += b.dim() - out - in;
      }
    }
    t.push_back(std::move(row));
  }
  return t;
}

std::size_t total(const CohomologyTable& t, int index) {
  std::size_t s = 0;
  for (const auto& row : t) s += row.at(static_cast<std::size_t>(index));
  return s;
}

}  // namespace bgg
