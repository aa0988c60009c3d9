#include "bgg/analysis.hpp"

#include "bgg/linalg.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace bgg {

// ---- Polynomial ----

Polynomial Polynomial::constant(int n, const Rational& c) {
  Polynomial p(n);
  p.add_term(std::vector<int>(n, 0), c);
  return p;
}

Polynomial Polynomial::coordinate(int n, int axis) {
  std::vector<int> e(n, 0);
  e.at(axis) = 1;
  return monomial(e, 1);
}

Polynomial Polynomial::monomial(const std::vector<int>& exps, const Rational& c) {
  Polynomial p(static_cast<int>(exps.size()));
  p.add_term(exps, c);
  return p;
}

void Polynomial::add_term(const std::vector<int>& exps, const Rational& c) {
  if (static_cast<int>(exps.size()) != n_) throw std::invalid_argument("polynomial: wrong number of variables");
  if (bgg::is_zero(c)) return;
  auto [it, inserted] = terms_.emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (bgg::is_zero(it->second)) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

Rational Polynomial::coeff(const std::vector<int>& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? Rational(0) : it->second;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r(n_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      std::vector<int> e(ea);
      for (std::size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& s) const {
  Polynomial r(n_);
  if (bgg::is_zero(s)) return r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, c * s);
  return r;
}

Polynomial Polynomial::diff(int axis) const {
  Polynomial r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[axis] == 0) continue;
    std::vector<int> f(e);
    --f[axis];
    r.add_term(f, c * e[axis]);
  }
  return r;
}

Rational Polynomial::integrate_cube() const {
  Rational s = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int x : e) t /= x + 1;
    s += t;
  }
  return s;
}

// ---- Gram and packing ----

SparseMat cube_gram(const FormBlock& a, const FormBlock& b) {
  if (a.dim() == 0 || b.dim() == 0) return SparseMat(a.dim(), b.dim());
  if (a.n != b.n || a.i != b.i || a.value->dim() != b.value->dim()) {
    throw std::invalid_argument("cube_gram: incompatible blocks");
  }
  const auto& ma = MonomialBasis::get(a.n, a.p);
  const auto& mb = MonomialBasis::get(b.n, b.p);
  SparseMat mono(ma.size(), mb.size());
  std::vector<Triplet> t;
  for (std::size_t r = 0; r < ma.size(); ++r) {
    for (std::size_t c = 0; c < mb.size(); ++c) {
      Rational v = 1;
      for (int k = 0; k < a.n; ++k) v /= ma.exponents(r)[k] + mb.exponents(c)[k] + 1;
      t.push_back({r, c, v});
    }
  }
  mono = SparseMat::from_triplets(ma.size(), mb.size(), std::move(t));
  return kron(mono, SparseMat::identity(a.forms() * a.value->dim()));
}

std::vector<Vector> to_columns(const BuiltDiagram& bd, int i, const std::vector<Field>& rows) {
  const auto& spec = bd.spec();
  if (static_cast<int>(rows.size()) != spec.N() + 1) throw std::invalid_argument("to_columns: one field per row");
  std::vector<Vector> out;
  for (int w = 0; w <= bd.wmax(); ++w) out.emplace_back(bd.weight(w).dim(i));
  for (int j = 0; j <= spec.N(); ++j) {
    std::size_t vd = spec.rows[j]->dim();
    std::size_t comps = binomial(spec.n, i) * vd;
    if (rows[j].size() != comps) throw std::invalid_argument("to_columns: wrong number of components");
    for (std::size_t c = 0; c < comps; ++c) {
      for (const auto& [e, coef] : rows[j][c].terms()) {
        int p = 0;
        for (int x : e) p += x;
        int w = p + i + j;
        if (w > bd.wmax()) throw std::out_of_range("field degree exceeds the built weight range");
        FormBlock blk = bd.block(i, j, w);
        std::size_t k = MonomialBasis::get(spec.n, p).index(e);
        out[w][bd.weight(w).Z[i].offset(j) + blk.index(k, c / vd, c % vd)] += coef;
      }
    }
  }
  return out;
}

std::vector<Field> from_columns(const BuiltDiagram& bd, int i, const std::vector<Vector>& per_weight) {
  const auto& spec = bd.spec();
  std::vector<Field> rows;
  for (int j = 0; j <= spec.N(); ++j) {
    rows.emplace_back(binomial(spec.n, i) * spec.rows[j]->dim(), Polynomial(spec.n));
  }
  for (int w = 0; w <= bd.wmax() && w < static_cast<int>(per_weight.size()); ++w) {
    for (int j = 0; j <= spec.N(); ++j) {
      FormBlock blk = bd.block(i, j, w);
      if (blk.dim() == 0) continue;
      std::size_t off = bd.weight(w).Z[i].offset(j);
      std::size_t vd = spec.rows[j]->dim();
      const auto& mb = MonomialBasis::get(spec.n, blk.p);
      for (std::size_t k = 0; k < mb.size(); ++k) {
        for (std::size_t f = 0; f < blk.forms(); ++f) {
          for (std::size_t v = 0; v < vd; ++v) {
            const Rational& x = per_weight[w][off + blk.index(k, f, v)];
            if (!is_zero(x)) rows[j][f * vd + v].add_term(mb.exponents(k), x);
          }
        }
      }
    }
  }
  return rows;
}

std::vector<Vector> apply_columns(const std::vector<SparseMat>& per_weight, const std::vector<Vector>& x) {
  std::vector<Vector> out;
  for (std::size_t w = 0; w < per_weight.size(); ++w) out.push_back(per_weight[w].apply(x[w]));
  return out;
}

// ---- field calculus ----

Rational sq_norm(const Field& f) {
  Rational s = 0;
  for (const auto& p : f) s += (p * p).integrate_cube();
  return s;
}

MatrixField grad(const Field& u) {
  MatrixField g;
  for (const auto& uk : u) {
    Field row;
    for (int l = 0; l < uk.vars(); ++l) row.push_back(uk.diff(l));
    g.push_back(std::move(row));
  }
  return g;
}

Field curl(const Field& u) {
  if (u.size() != 3) throw std::invalid_argument("curl needs a 3D field");
  return {u[2].diff(1) - u[1].diff(2), u[0].diff(2) - u[2].diff(0), u[1].diff(0) - u[0].diff(1)};
}

Polynomial div(const Field& u) {
  Polynomial s(u.empty() ? 0 : u[0].vars());
  for (std::size_t k = 0; k < u.size(); ++k) s = s + u[k].diff(static_cast<int>(k));
  return s;
}

MatrixField mskw(const Field& w) {
  int n = w.empty() ? 0 : w[0].vars();
  Polynomial z(n);
  if (w.size() == 3) {
    return {{z, -w[2], w[1]}, {w[2], z, -w[0]}, {-w[1], w[0], z}};
  }
  if (w.size() == 1) return {{z, -w[0]}, {w[0], z}};
  throw std::invalid_argument("mskw needs 3 components (3D) or 1 (2D)");
}

MatrixField sym(const MatrixField& m) {
  MatrixField s = m;
  for (std::size_t k = 0; k < m.size(); ++k) {
    for (std::size_t l = 0; l < m.size(); ++l) s[k][l] = (m[k][l] + m[l][k]).scaled(frac(1, 2));
  }
  return s;
}

Polynomial trace(const MatrixField& m) {
  Polynomial s(m.empty() ? 0 : m[0][0].vars());
  for (std::size_t k = 0; k < m.size(); ++k) s = s + m[k][k];
  return s;
}

MatrixField dev(const MatrixField& m) {
  MatrixField d = m;
  Polynomial t = trace(m).scaled(Rational(1) / static_cast<long>(m.size()));
  for (std::size_t k = 0; k < m.size(); ++k) d[k][k] = d[k][k] - t;
  return d;
}

Field two_vskw(const MatrixField& m) {
  if (m.size() == 3) return {m[2][1] - m[1][2], m[0][2] - m[2][0], m[1][0] - m[0][1]};
  if (m.size() == 2) return {m[1][0] - m[0][1]};
  throw std::invalid_argument("vskw needs a 2x2 or 3x3 matrix");
}

Field flatten(const MatrixField& m) {
  Field f;
  for (const auto& row : m) f.insert(f.end(), row.begin(), row.end());
  return f;
}

MatrixField operator+(const MatrixField& a, const MatrixField& b) {
  MatrixField r = a;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < a[k].size(); ++l) r[k][l] = a[k][l] + b[k][l];
  }
  return r;
}

MatrixField operator-(const MatrixField& a, const MatrixField& b) {
  MatrixField r = a;
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t l = 0; l < a[k].size(); ++l) r[k][l] = a[k][l] - b[k][l];
  }
  return r;
}

Rational strain_metric(const MatrixField& m, const EnergyParams& p) {
  return p.mu * sq_norm(flatten(sym(m))) + p.mu_c / 2 * sq_norm(two_vskw(m)) + p.lambda / 2 * sq_norm({trace(m)});
}

Rational curvature_metric(const MatrixField& g, const EnergyParams& p) {
  return (p.gamma + p.beta) / 2 * sq_norm(flatten(sym(g))) + (p.gamma - p.beta) / 4 * sq_norm(two_vskw(g)) +
         p.alpha / 2 * sq_norm({trace(g)});
}

namespace {

MatrixField scalar_identity(const Polynomial& s, std::size_t n) {
  MatrixField m(n, Field(n, Polynomial(s.vars())));
  for (std::size_t k = 0; k < n; ++k) m[k][k] = s;
  return m;
}

// Component (l, k) of a row with value dimension vd, read as M[k][l].
MatrixField as_matrix(const Field& comps, std::size_t n, std::size_t vd, std::size_t first, std::size_t count) {
  MatrixField m(count, Field(n, Polynomial(static_cast<int>(n))));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t k = 0; k < count; ++k) m[k][l] = comps[l * vd + first + k];
  }
  return m;
}

std::vector<Field> dv0(const BuiltDiagram& bd, const std::vector<Field>& rows) {
  std::vector<SparseMat> ops;
  for (int w = 0; w <= bd.wmax(); ++w) ops.push_back(bd.weight(w).dV[0]);
  return from_columns(bd, 1, apply_columns(ops, to_columns(bd, 0, rows)));
}

void require_dim(const Field& f, std::size_t comps, int n, const char* what) {
  if (f.size() != comps) throw std::invalid_argument(std::string(what) + ": wrong number of components");
  for (const auto& p : f) {
    if (p.vars() != n) throw std::invalid_argument(std::string(what) + ": wrong number of variables");
  }
}

}  // namespace

Rational cosserat_energy(const Field& u, const Field& omega, const EnergyParams& p) {
  require_dim(u, 3, 3, "u");
  require_dim(omega, 3, 3, "omega");
  MatrixField gu = grad(u);
  return p.mu * sq_norm(flatten(sym(gu))) + p.mu_c / 2 * sq_norm(two_vskw(gu + mskw(omega))) +
         p.lambda / 2 * sq_norm({div(u)}) + (p.gamma + p.beta) / 2 * sq_norm(flatten(sym(grad(omega)))) +
         (p.gamma - p.beta) / 4 * sq_norm(curl(omega)) + p.alpha / 2 * sq_norm({div(omega)});
}

Rational cosserat_energy_dv(const BuiltDiagram& bd, const Field& u, const Field& omega, const EnergyParams& p) {
  require_dim(u, 3, 3, "u");
  require_dim(omega, 3, 3, "omega");
  // Λ^2 basis (12, 13, 23).
  Field psi = {-omega[2], omega[1], -omega[0]};
  std::vector<Field> out = dv0(bd, {u, psi});
  MatrixField m = as_matrix(out[0], 3, 3, 0, 3);
  MatrixField w = as_matrix(out[1], 3, 3, 0, 3);  // w[c][l] = component (l, psi_c)
  MatrixField g = {{-w[2][0], -w[2][1], -w[2][2]}, {w[1][0], w[1][1], w[1][2]}, {-w[0][0], -w[0][1], -w[0][2]}};
  return strain_metric(m, p) + curvature_metric(g, p);
}

Rational generalization1(const Field& u, const Field& phi, const Rational& alpha, const EnergyParams& p) {
  require_dim(u, 3, 3, "u");
  require_dim(phi, 3, 3, "phi");
  return alpha * sq_norm(flatten(dev(grad(phi)) + mskw(u))) + p.mu * sq_norm(flatten(sym(grad(u)))) +
         p.lambda / 2 * sq_norm({div(u)});
}

Rational generalization2(const Field& u, const Polynomial& sigma, const Field& omega, const Field& phi,
                         const GeneralizedParams& p) {
  require_dim(u, 3, 3, "u");
  require_dim({sigma}, 1, 3, "sigma");
  require_dim(omega, 3, 3, "omega");
  require_dim(phi, 3, 3, "phi");
  MatrixField m = grad(u) - scalar_identity(sigma, 3) + mskw(omega);
  Field gs = grad({sigma})[0];
  for (int l = 0; l < 3; ++l) gs[l] = gs[l] - phi[l];
  MatrixField g = grad(omega) + mskw(phi);
  return strain_metric(m, p.c) + p.a2 / 2 * sq_norm(gs) + curvature_metric(g, p.c) + p.c3 * sq_norm(flatten(grad(phi)));
}

Rational generalization2_dv(const BuiltDiagram& bd, const Field& u, const Polynomial& sigma, const Field& omega,
                            const Field& phi, const GeneralizedParams& p) {
  require_dim(u, 3, 3, "u");
  require_dim({sigma}, 1, 3, "sigma");
  require_dim(omega, 3, 3, "omega");
  require_dim(phi, 3, 3, "phi");
  Field row1 = {omega[0], omega[1], omega[2], sigma};
  Field row2 = {-phi[0], -phi[1], -phi[2]};
  std::vector<Field> out = dv0(bd, {u, row1, row2});
  MatrixField m = as_matrix(out[0], 3, 3, 0, 3);
  MatrixField g = as_matrix(out[1], 3, 4, 0, 3);
  Field gs = as_matrix(out[1], 3, 4, 3, 1)[0];
  return strain_metric(m, p.c) + p.a2 / 2 * sq_norm(gs) + curvature_metric(g, p.c) + p.c3 * sq_norm(out[2]);
}

Rational plate_generalization(const Field& u, const Polynomial& sigma, const Polynomial& omega, const Field& phi,
                              const GeneralizedParams& p) {
  require_dim(u, 2, 2, "u");
  require_dim({sigma, omega}, 2, 2, "sigma, omega");
  require_dim(phi, 2, 2, "phi");
  MatrixField m = grad(u) - scalar_identity(sigma, 2) - mskw({omega});
  Field gs = grad({sigma})[0];
  Field go = grad({omega})[0];
  Field perp = {-phi[1], phi[0]};
  for (int l = 0; l < 2; ++l) {
    gs[l] = gs[l] - phi[l];
    go[l] = go[l] - perp[l];
  }
  return strain_metric(m, p.c) + p.a2 / 2 * sq_norm(gs) + p.b2 / 2 * sq_norm(go) + p.c3 * sq_norm(flatten(grad(phi)));
}

Rational plate_generalization_dv(const BuiltDiagram& bd, const Field& u, const Polynomial& sigma,
                                 const Polynomial& omega, const Field& phi, const GeneralizedParams& p) {
  require_dim(u, 2, 2, "u");
  require_dim({sigma, omega}, 2, 2, "sigma, omega");
  require_dim(phi, 2, 2, "phi");
  std::vector<Field> out = dv0(bd, {u, {sigma, omega}, phi});
  MatrixField m = as_matrix(out[0], 2, 2, 0, 2);
  Field gs = as_matrix(out[1], 2, 2, 0, 1)[0];
  Field go = as_matrix(out[1], 2, 2, 1, 1)[0];
  return strain_metric(m, p.c) + p.a2 / 2 * sq_norm(gs) + p.b2 / 2 * sq_norm(go) + p.c3 * sq_norm(out[2]);
}

Field random_field(std::mt19937_64& rng, int n, int comps, int degree) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  Field f;
  for (int c = 0; c < comps; ++c) {
    Polynomial p(n);
    for (int d = 0; d <= degree; ++d) {
      const auto& mb = MonomialBasis::get(n, d);
      for (std::size_t k = 0; k < mb.size(); ++k) {
        long a = num(rng);
        long b = den(rng);
        p.add_term(mb.exponents(k), frac(a, b));
      }
    }
    f.push_back(std::move(p));
  }
  return f;
}

// ---- Korn experiment ----

SparseMat dev_deff_2d(int p) {
  if (p <= 0) return SparseMat(0, p == 0 ? 2 : 0);
  const auto& mi = MonomialBasis::get(2, p);
  const auto& mo = MonomialBasis::get(2, p - 1);
  SparseBuilder b(4 * mo.size(), 2 * mi.size());
  for (std::size_t c = 0; c < mi.size(); ++c) {
    for (int comp = 0; comp < 2; ++comp) {
      std::size_t col = 2 * c + comp;
      for (int l = 0; l < 2; ++l) {
        const auto& e = mi.exponents(c);
        if (e[l] == 0) continue;
        std::vector<int> f = e;
        --f[l];
        std::size_t row0 = 4 * mo.index(f);
        Rational v = e[l];
        // (grad u)_{comp,l} = d_l u_comp enters sym at (comp,l) and (l,comp)
        b.add(row0 + 2 * comp + l, col, v / 2);
        b.add(row0 + 2 * l + comp, col, v / 2);
        if (comp == l) {
          b.add(row0 + 0, col, -v / 2);
          b.add(row0 + 3, col, -v / 2);
        }
      }
    }
  }
  return std::move(b).build();
}

namespace {

// Solves L x = b for unit lower triangular L.
Vector forward(const std::vector<Vector>& L, const Vector& b) {
  Vector x = b;
  for (std::size_t r = 0; r < x.size(); ++r) {
    for (std::size_t c = 0; c < r; ++c) {
      if (!is_zero(L[r][c])) x[r] -= L[r][c] * x[c];
    }
  }
  return x;
}

}  // namespace

std::vector<KornRow> korn2d_experiment(int r_min, int r_max) {
  if (r_min < 0 || r_max < r_min) throw std::invalid_argument("korn2d: bad degree range");
  auto spec = [&] {
    // mobius-2d, assembled locally to keep the analysis independent of the catalog.
    DiagramSpec s;
    s.name = "mobius-2d";
    s.n = 2;
    s.rows = {make_value_space("R2", 2), make_value_space("R+R", 2), make_value_space("R2", 2)};
    s.kappa = {{},
               {SparseMat::from_dense({{1, 0}, {0, 1}}), SparseMat::from_dense({{0, -1}, {1, 0}})},
               {SparseMat::from_dense({{1, 0}, {0, -1}}), SparseMat::from_dense({{0, 1}, {1, 0}})}};
    return s;
  }();
  BuiltDiagram bd = build(spec, r_max);
  BGGComplex bc = compute_bgg(bd);
  std::vector<KornRow> out;
  for (int r = r_min; r <= r_max; ++r) {
    KornRow row;
    row.r = r;
    // Input X = ⊕_{w<=r} (0,0,w); output Y = ⊕_{w<=r} Z^1_w.
    std::vector<std::size_t> xo{0}, yo{0};
    for (int w = 0; w <= r; ++w) {
      xo.push_back(xo.back() + bd.block(0, 0, w).dim());
      yo.push_back(yo.back() + bd.weight(w).dim(1));
    }
    SparseBuilder db(yo.back(), xo.back());
    for (int w = 0; w <= r; ++w) {
      SparseMat dw = bc.weight(w).D[0].block(0, bd.weight(w).dim(1), 0, bd.block(0, 0, w).dim());
      db.add_block(yo[w], xo[w], dw);
      row.kernel_dim += dw.cols() - rank(dw);
      SparseMat dd = dev_deff_2d(w);
      row.dev_deff_kernel += dd.cols() - rank(dd);
    }
    SparseMat D = std::move(db).build();
    SparseBuilder mb(xo.back(), xo.back()), gb(yo.back(), yo.back());
    for (int w = 0; w <= r; ++w) {
      for (int v = 0; v <= r; ++v) {
        mb.add_block(xo[w], xo[v], cube_gram(bd.block(0, 0, w), bd.block(0, 0, v)));
        for (int j = 0; j <= 2; ++j) {
          gb.add_block(yo[w] + bd.weight(w).Z[1].offset(j), yo[v] + bd.weight(v).Z[1].offset(j),
                       cube_gram(bd.block(1, j, w), bd.block(1, j, v)));
        }
      }
    }
    SparseMat M = std::move(mb).build();
    SparseMat A = D.transpose() * std::move(gb).build() * D;
    row.dim = xo.back();
    SparseMat K = SparseMat::from_columns(row.dim, nullspace(D));
    SparseMat Q = SparseMat::from_columns(row.dim, nullspace(K.transpose() * M));
    std::vector<Vector> aq = (Q.transpose() * A * Q).to_dense();
    std::vector<Vector> mq = (Q.transpose() * M * Q).to_dense();
    LDLT f = ldlt(mq);
    const std::size_t m = aq.size();
    // C = L^{-1} A_Q L^{-T}, then the diagonal scaling by D^{-1/2} in double.
    std::vector<Vector> x(m);
    for (std::size_t c = 0; c < m; ++c) {
      Vector col(m);
      for (std::size_t r2 = 0; r2 < m; ++r2) col[r2] = aq[r2][c];
      x[c] = forward(f.lower, col);  // column c of L^{-1} A_Q
    }
    Eigen::MatrixXd C(m, m);
    for (std::size_t r2 = 0; r2 < m; ++r2) {
      Vector rowv(m);
      for (std::size_t c = 0; c < m; ++c) rowv[c] = x[c][r2];  // row r2 of L^{-1} A_Q
      Vector y = forward(f.lower, rowv);
      for (std::size_t c = 0; c < m; ++c) {
        C(r2, c) = y[c].get_d() / std::sqrt(f.diag[r2].get_d() * f.diag[c].get_d());
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(C, Eigen::EigenvaluesOnly);
    double lmin = m == 0 ? 0.0 : es.eigenvalues().minCoeff();
    row.sigma_min = std::sqrt(std::max(lmin, 0.0));
    out.push_back(row);
  }
  return out;
}

}  // namespace bgg
