// Acceptance run: one PASS/FAIL line per criterion. Everything is exact
// except the Korn singular values, compared against kSigmaFloor.
#include "bgg/analysis.hpp"
#include "bgg/catalog.hpp"
#include "bgg/equivariance.hpp"
#include "bgg/linalg.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>

using namespace bgg;

namespace {

constexpr int kWmax = 8;
constexpr int kEquivarianceWmax = 6;
constexpr double kSigmaFloor = 1e-10;
constexpr double kIdentityBudgetSeconds = 120;
constexpr double kKornBudgetSeconds = 60;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Case {
  std::string name;
  std::unique_ptr<BuiltDiagram> bd;
  std::unique_ptr<BGGComplex> bc;
};

std::vector<std::string> diagram_names() {
  return {"conf-hessian-3d",     "conf-deformation-3d", "mobius-2d",           "elasticity-3d",      "plate-2d",
          "higher-hessian-3d:1", "higher-hessian-3d:2", "higher-hessian-3d:3", "higher-hessian-3d:4"};
}

std::string first_failure(const Report& r) {
  for (const auto& c : r.checks) {
    if (!c.passed) return c.name + ": " + c.detail;
  }
  return "";
}

int failures = 0;

void emit(int id, bool ok, const std::string& summary) {
  if (!ok) ++failures;
  std::printf("criterion %d %s  %s\n", id, ok ? "PASS" : "FAIL", summary.c_str());
  std::fflush(stdout);
}

std::size_t binom(int n, int k) { return binomial(n, k); }

}  // namespace

int main() {
  // 1. identity suite, with the pipeline build inside the time budget
  std::vector<Case> cases;
  {
    auto t0 = Clock::now();
    bool ok = true;
    std::size_t comparisons = 0;
    std::string why;
    for (const auto& name : diagram_names()) {
      Case c{name, std::make_unique<BuiltDiagram>(build(get(name).spec, kWmax)), nullptr};
      c.bc = std::make_unique<BGGComplex>(compute_bgg(*c.bd));
      Report r = verify_identities(*c.bd);
      Report b = verify_bgg(*c.bc);
      r.checks.insert(r.checks.end(), b.checks.begin(), b.checks.end());
      for (const auto& ch : r.checks) comparisons += ch.comparisons;
      if (!r.passed()) {
        ok = false;
        if (why.empty()) why = name + " " + first_failure(r);
      }
      cases.push_back(std::move(c));
    }
    double secs = seconds_since(t0);
    std::ostringstream s;
    s << "identity suite on " << cases.size() << " diagrams at wmax " << kWmax << ": " << comparisons
      << " exact matrix comparisons in " << secs << " s (budget " << kIdentityBudgetSeconds << " s)";
    if (!why.empty()) s << "; first failure " << why;
    emit(1, ok && secs < kIdentityBudgetSeconds, s.str());
  }

  auto find = [&](const std::string& name) -> Case& {
    for (auto& c : cases) {
      if (c.name == name) return c;
    }
    throw std::logic_error(name);
  };

  // 2. cohomology chain. Constants of row j carry weight j, so H^0 at weight
  // w is dim V_w; positive indices vanish everywhere.
  {
    bool ok = true;
    std::ostringstream s;
    std::map<std::string, std::size_t> expected_total = {
        {"conf-hessian-3d", 5}, {"conf-deformation-3d", 10}, {"mobius-2d", 6}, {"elasticity-3d", 6}, {"plate-2d", 3}};
    for (int N = 1; N <= 4; ++N) expected_total["higher-hessian-3d:" + std::to_string(N)] = binom(N + 3, 3);
    for (auto& c : cases) {
      CohomologyTable b = bgg_cohomology(*c.bc), t = twisted_cohomology(*c.bd), r = row_cohomology(*c.bd);
      bool chain = b == t && t == r;
      const auto& rows = c.bd->spec().rows;
      bool placed = true;
      std::size_t sum_dims = 0;
      for (const auto& v : rows) sum_dims += v->dim();
      for (int w = 0; w <= kWmax; ++w) {
        std::size_t h0 = w < static_cast<int>(rows.size()) ? rows[w]->dim() : 0;
        placed = placed && b[w][0] == h0;
        for (std::size_t i = 1; i < b[w].size(); ++i) placed = placed && b[w][i] == 0;
      }
      std::size_t tot = total(b, 0);
      bool totals = tot == sum_dims && tot == expected_total.at(c.name);
      ok = ok && chain && placed && totals;
      s << c.name << " " << tot << (chain && placed && totals ? "" : "(!)") << "; ";
    }
    emit(2, ok,
         "bgg = twisted = rows per weight <= 8, H^k = 0 for k >= 1, H^0_w = dim V_w; total H^0: " + s.str());
  }

  // 3. operator identification
  {
    bool ok = true;
    std::size_t n = 0;
    Case& ch = find("conf-hessian-3d");
    for (int w = 0; w <= kWmax; ++w, ++n) ok = ok && ch.bc->weight(w).D[0] == oracle::dev_hess(*ch.bd, w);
    for (int N = 1; N <= 4; ++N) {
      Case& hh = find("higher-hessian-3d:" + std::to_string(N));
      for (int w = 0; w <= kWmax; ++w, ++n) ok = ok && hh.bc->weight(w).D[0] == oracle::top_derivative(*hh.bd, w);
    }
    emit(3, ok,
         "D^0 = dev hess (conf-hessian) and D^0 = (N+1)-st derivative (higher-hessian N = 1..4): " +
             std::to_string(n) + " weight blocks");
  }

  // 4. block forms on the three-row diagrams
  {
    bool ok = true;
    std::ostringstream s;
    for (auto& c : cases) {
      if (c.bd->spec().rows.size() != 3) continue;
      Report r = verify_block_forms(*c.bc);
      std::size_t comparisons = 0;
      for (const auto& x : r.checks) comparisons += x.comparisons;
      ok = ok && r.passed();
      s << c.name << " " << comparisons << (r.passed() ? "" : " (" + first_failure(r) + ")") << "; ";
    }
    emit(4, ok, "block forms of G, A, d_V A, D, B, B F: " + s.str());
  }

  // 5. kernel witnesses
  {
    Case& el = find("elasticity-3d");
    // ker d_V^0 over all weights; its u-part must be {a + b x x}
    std::size_t kernel = 0;
    bool spans = true;
    for (int w = 0; w <= kWmax; ++w) {
      const WeightBlock& wb = el.bd->weight(w);
      auto ker = nullspace(wb.dV[0]);
      kernel += ker.size();
      FormBlock u = el.bd->block(0, 0, w);
      std::vector<Vector> upart, expected;
      for (const auto& v : ker) upart.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(u.dim()));
      if (w == 0) {
        for (std::size_t k = 0; k < 3; ++k) {
          Vector e(u.dim());
          e[u.index(0, 0, k)] = 1;
          expected.push_back(e);
        }
      } else if (w == 1) {
        const auto& mono = MonomialBasis::get(3, 1);
        for (int k = 0; k < 3; ++k) {
          for (int l = k + 1; l < 3; ++l) {
            std::vector<int> xl(3, 0), xk(3, 0);
            xl[l] = 1;
            xk[k] = 1;
            Vector e(u.dim());
            e[u.index(mono.index(xl), 0, k)] = 1;   // u_k = x_l
            e[u.index(mono.index(xk), 0, l)] = -1;  // u_l = -x_k
            expected.push_back(e);
          }
        }
      }
      std::vector<Vector> both = upart;
      both.insert(both.end(), expected.begin(), expected.end());
      std::size_t ru = upart.empty() ? 0 : rank(SparseMat::from_columns(u.dim(), upart));
      std::size_t rb = both.empty() ? 0 : rank(SparseMat::from_columns(u.dim(), both));
      spans = spans && ru == ker.size() && ru == expected.size() && rb == ru;
    }
    std::size_t mobius = total(twisted_cohomology(*find("mobius-2d").bd), 0);
    std::size_t mobius_bgg = total(bgg_cohomology(*find("mobius-2d").bc), 0);
    auto korn = korn2d_experiment(3, 8);
    bool dev_deff = korn.size() == 6;
    std::ostringstream dd;
    for (const auto& r : korn) {
      dev_deff = dev_deff && r.dev_deff_kernel == static_cast<std::size_t>(2 * (r.r + 1));
      dd << r.dev_deff_kernel << " ";
    }
    bool ok = kernel == 6 && spans && mobius == 6 && mobius_bgg == 6 && dev_deff;
    emit(5, ok,
         "elasticity ker d_V^0 dim " + std::to_string(kernel) + (spans ? " = {(a, b x x)}" : " (span mismatch)") +
             "; mobius kernel " + std::to_string(mobius) + "; ker dev deff for r = 3..8: " + dd.str());
  }

  // 6. Cosserat energy
  {
    BuiltDiagram bd = build(get("elasticity-3d").spec, 3);
    std::vector<EnergyParams> sets = {EnergyParams{}, EnergyParams{frac(3, 2), 2, frac(1, 3), 5, frac(1, 7), 3},
                                      EnergyParams{frac(1, 10), frac(7, 4), 4, frac(2, 9), frac(5, 2), frac(1, 2)}};
    std::mt19937_64 rng(20240611);
    int agree = 0, n = 0;
    for (const auto& p : sets) {
      for (int s = 0; s < 50; ++s, ++n) {
        Field u = random_field(rng, 3, 3, 2);
        Field w = random_field(rng, 3, 3, 2);
        if (cosserat_energy(u, w, p) == cosserat_energy_dv(bd, u, w, p)) ++agree;
      }
    }
    Field x = {Polynomial::coordinate(3, 0), Polynomial::coordinate(3, 1), Polynomial::coordinate(3, 2)};
    Field zero(3, Polynomial(3));
    Field cst = {Polynomial::constant(3, 1), Polynomial::constant(3, 2), Polynomial::constant(3, -3)};
    EnergyParams ones;
    Rational e1 = cosserat_energy_dv(bd, x, zero, ones), e2 = cosserat_energy_dv(bd, zero, cst, ones);
    bool closed = e1 == frac(15, 2) && e2 == 28 && cosserat_energy(x, zero, ones) == e1 &&
                  cosserat_energy(zero, cst, ones) == e2;
    emit(6, agree == n && closed,
         std::to_string(agree) + "/" + std::to_string(n) + " seeded fields agree; u = x gives " + to_string(e1) +
             ", omega = (1,2,-3) gives " + to_string(e2));
  }

  // 7. equivariance
  {
    BuiltDiagram bd = build(get("conf-hessian-3d").spec, kEquivarianceWmax);
    BGGComplex bc = compute_bgg(bd);
    auto motions = conf_hessian_motions();
    Report r = verify_equivariance(bc, motions);
    std::size_t comparisons = 0;
    for (const auto& c : r.checks) comparisons += c.comparisons;
    emit(7, r.passed(),
         std::to_string(motions.size()) + " motions (signed permutations, (3/5, 4/5) rotation) commute with d, S, d_V, D "
             "at weights <= " + std::to_string(kEquivarianceWmax) + ": " + std::to_string(comparisons) + " comparisons" +
             (r.passed() ? "" : "; " + first_failure(r)));
  }

  // 8. Korn experiment
  {
    auto t0 = Clock::now();
    auto rows = korn2d_experiment(3, 8);
    double secs = seconds_since(t0);
    bool ok = rows.size() == 6 && secs < kKornBudgetSeconds;
    std::ostringstream s;
    for (const auto& r : rows) {
      ok = ok && r.kernel_dim == 6 && r.sigma_min > kSigmaFloor;
      s << "r=" << r.r << " ker " << r.kernel_dim << " sigma_min " << r.sigma_min << "; ";
    }
    s << secs << " s (budget " << kKornBudgetSeconds << " s, floor " << kSigmaFloor << ")";
    emit(8, ok, s.str());
  }

  return failures == 0 ? 0 : 1;
}
