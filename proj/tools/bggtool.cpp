// Command-line front end: verification, cohomology tables, derived operators,
// operator export, energy identities and the 2D Korn experiment.
#include "bgg/analysis.hpp"
#include "bgg/catalog.hpp"
#include "bgg/export.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>

using namespace bgg;
using nlohmann::json;

namespace {

constexpr int kPass = 0;
constexpr int kMismatch = 1;
constexpr int kInvalid = 2;

struct Common {
  std::string diagram;
  int wmax = 8;
  std::string format = "text";
};

void add_common(CLI::App* app, Common& c, bool need_diagram = true) {
  auto* opt = app->add_option("--diagram", c.diagram, "catalog name (higher-hessian-3d:N) or path to a .bgg spec file");
  if (need_diagram) opt->required();
  app->add_option("--wmax", c.wmax, "largest weight")->check(CLI::Range(0, 40));
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"text", "matrixmarket", "json"}));
}

json table_json(const CohomologyTable& t) {
  json a = json::array();
  for (const auto& row : t) a.push_back(row);
  return a;
}

json report_json(const Report& r) {
  json a = json::array();
  for (const auto& c : r.checks) {
    a.push_back({{"name", c.name}, {"passed", c.passed}, {"comparisons", c.comparisons}, {"detail", c.detail}});
  }
  return a;
}

int cmd_verify(const Common& c) {
  CatalogEntry e = load_entry(c.diagram);
  Fingerprint fp = fingerprint(e, c.wmax);
  if (c.format == "json") {
    json items = json::array();
    for (const auto& it : fp.items) {
      items.push_back({{"key", it.key}, {"expected", it.expected}, {"actual", it.actual}, {"source", it.source},
                       {"passed", it.passed}});
    }
    json out = {{"diagram", e.name},
                {"wmax", c.wmax},
                {"checks", report_json(fp.checks)},
                {"fingerprint", items},
                {"cohomology", {{"bgg", table_json(fp.cohomology)}, {"h0_total", total(fp.cohomology, 0)}}},
                {"passed", fp.passed()}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "diagram " << e.name << "  wmax " << c.wmax << "\n";
    for (const auto& ch : fp.checks.checks) {
      std::cout << (ch.passed ? "  ok    " : "  FAIL  ") << std::left << std::setw(34) << ch.name << std::right
                << std::setw(8) << ch.comparisons;
      if (!ch.passed) std::cout << "  " << ch.detail;
      std::cout << "\n";
    }
    for (const auto& it : fp.items) {
      std::cout << (it.passed ? "  ok    " : "  FAIL  ") << it.key << ": " << it.actual;
      if (!it.passed) std::cout << " (expected " << it.expected << ")";
      std::cout << "  [" << it.source << "]\n";
    }
    std::cout << (fp.passed() ? "PASS" : "FAIL") << "\n";
  }
  return fp.passed() ? kPass : kMismatch;
}

int cmd_cohomology(const Common& c) {
  CatalogEntry e = load_entry(c.diagram);
  BuiltDiagram bd = build(e.spec, c.wmax);
  BGGComplex bc = compute_bgg(bd);
  CohomologyTable b = bgg_cohomology(bc), t = twisted_cohomology(bd), r = row_cohomology(bd);
  bool ok = b == t && t == r;
  if (c.format == "json") {
    json out = {{"diagram", e.name},
                {"wmax", c.wmax},
                {"checks", json::array({{{"name", "bgg = twisted = rows"}, {"passed", ok}}})},
                {"cohomology", {{"bgg", table_json(b)}, {"twisted", table_json(t)}, {"rows", table_json(r)}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "diagram " << e.name << "  dims per weight (bgg / twisted / rows)\n";
    for (int w = 0; w <= c.wmax; ++w) {
      std::cout << "  w=" << w << ":";
      for (int i = 0; i <= e.spec.n; ++i) std::cout << "  H" << i << " " << b[w][i] << "/" << t[w][i] << "/" << r[w][i];
      std::cout << "\n";
    }
    std::cout << "  total:";
    for (int i = 0; i <= e.spec.n; ++i) std::cout << "  H" << i << " " << total(b, i);
    std::cout << "\n" << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kPass : kMismatch;
}

int cmd_derive(const Common& c, int weight) {
  CatalogEntry e = load_entry(c.diagram);
  BuiltDiagram bd = build(e.spec, c.wmax);
  BGGComplex bc = compute_bgg(bd);
  const HodgeSplit& hs = bc.split();
  auto orders = operator_orders(bc);
  if (weight > c.wmax) throw std::invalid_argument("--weight exceeds --wmax");
  if (c.format == "json") {
    json ups = json::array();
    for (const auto& [i, j] : ups_support(hs, e.spec)) ups.push_back({{"i", i}, {"j", j}, {"dim", hs.ups_dim(i, j)}});
    json ord = json::array();
    for (const auto& s : orders) ord.push_back(std::vector<int>(s.begin(), s.end()));
    json ops = json::array();
    for (int i = 0; i < e.spec.n; ++i) {
      ops.push_back(json::parse(to_json_matrix(select_operator(bc, "D", i, weight))));
    }
    std::cout << json{{"diagram", e.name}, {"wmax", c.wmax}, {"ups", ups}, {"orders", ord}, {"weight", weight}, {"D", ops}}.dump(2)
              << "\n";
    return kPass;
  }
  std::cout << "diagram " << e.name << "\n  Υ^{i,j} (constant coefficients):\n";
  for (const auto& [i, j] : ups_support(hs, e.spec)) {
    std::cout << "    (" << i << "," << j << ") dim " << hs.ups_dim(i, j) << "\n";
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    std::cout << "  D^" << i << " orders:";
    for (int k : orders[i]) std::cout << ' ' << k;
    std::cout << "\n";
  }
  for (int i = 0; i < e.spec.n; ++i) {
    SparseMat m = select_operator(bc, "D", i, weight);
    std::cout << "  D^" << i << " at weight " << weight << ":\n";
    std::string s = to_stencil_text(m, column_labels(bd, i + 1, weight), column_labels(bd, i, weight));
    std::istringstream lines(s);
    for (std::string l; std::getline(lines, l);) std::cout << "    " << l << "\n";
  }
  return kPass;
}

int cmd_export(const Common& c, const std::string& op, int index, int weight, const std::string& output) {
  CatalogEntry e = load_entry(c.diagram);
  if (weight > c.wmax) throw std::invalid_argument("--weight exceeds --wmax");
  BuiltDiagram bd = build(e.spec, c.wmax);
  BGGComplex bc = compute_bgg(bd);
  SparseMat m = select_operator(bc, op, index, weight);
  std::string text;
  if (c.format == "matrixmarket") {
    text = to_matrix_market(m, {e.name + " " + op + " index " + std::to_string(index) + " weight " + std::to_string(weight)});
  } else if (c.format == "json") {
    text = to_json_matrix(m) + "\n";
  } else {
    text = to_stencil_text(m, column_labels(bd, codomain_index(op, index), weight), column_labels(bd, index, weight));
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write '" + output + "'");
    f << text;
  }
  return kPass;
}

struct EnergyOptions {
  int samples = 50;
  unsigned long seed = 20240611;
  int degree = 2;
  std::vector<std::string> params;  // mu lambda mu_c alpha beta gamma
};

int cmd_energy(const Common& c, const EnergyOptions& o) {
  std::vector<EnergyParams> sets;
  if (o.params.empty()) {
    sets = {EnergyParams{}, EnergyParams{frac(3, 2), 2, frac(1, 3), 5, frac(1, 7), 3},
            EnergyParams{frac(1, 10), frac(7, 4), 4, frac(2, 9), frac(5, 2), frac(1, 2)}};
  } else {
    if (o.params.size() != 6) throw std::invalid_argument("--params takes mu lambda mu_c alpha beta gamma");
    std::vector<Rational> v;
    for (const auto& s : o.params) v.push_back(parse_rational(s));
    sets = {EnergyParams{v[0], v[1], v[2], v[3], v[4], v[5]}};
  }
  BuiltDiagram bd = build(get("elasticity-3d").spec, o.degree + 1);
  std::mt19937_64 rng(o.seed);
  std::size_t agree = 0, total_n = 0;
  for (const auto& p : sets) {
    for (int s = 0; s < o.samples; ++s) {
      Field u = random_field(rng, 3, 3, o.degree);
      Field w = random_field(rng, 3, 3, o.degree);
      ++total_n;
      if (cosserat_energy(u, w, p) == cosserat_energy_dv(bd, u, w, p)) ++agree;
    }
  }
  EnergyParams ones;
  Field x = {Polynomial::coordinate(3, 0), Polynomial::coordinate(3, 1), Polynomial::coordinate(3, 2)};
  Field zero(3, Polynomial(3));
  Field cst = {Polynomial::constant(3, 1), Polynomial::constant(3, -2), Polynomial::constant(3, 3)};
  Rational e1 = cosserat_energy(x, zero, ones), e2 = cosserat_energy(zero, cst, ones);
  bool closed = e1 == frac(15, 2) && e2 == 28 && cosserat_energy_dv(bd, x, zero, ones) == e1 &&
                cosserat_energy_dv(bd, zero, cst, ones) == e2;
  bool ok = agree == total_n && closed;
  if (c.format == "json") {
    json out = {{"diagram", "elasticity-3d"},
                {"wmax", o.degree + 1},
                {"checks", json::array({{{"name", "cosserat energy = |d_V^0|_C^2"}, {"passed", agree == total_n},
                                         {"comparisons", total_n}},
                                        {{"name", "closed forms"}, {"passed", closed}}})},
                {"closed_forms", {{"u=x", to_string(e1)}, {"omega=(1,-2,3)", to_string(e2)}}}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "cosserat energy vs |d_V^0(u, omega)|_C^2: " << agree << "/" << total_n << " agree\n";
    std::cout << "u = x, omega = 0: " << to_string(e1) << "\n";
    std::cout << "u = 0, omega = (1,-2,3): " << to_string(e2) << "\n";
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kPass : kMismatch;
}

int cmd_korn(const Common& c, int rmin, int rmax) {
  auto rows = korn2d_experiment(rmin, rmax);
  bool ok = true;
  json arr = json::array();
  for (const auto& r : rows) {
    bool row_ok = r.kernel_dim == 6 && r.dev_deff_kernel == static_cast<std::size_t>(2 * (r.r + 1)) && r.sigma_min > 1e-10;
    if (r.r >= 3) ok = ok && row_ok;
    arr.push_back({{"r", r.r}, {"dim", r.dim}, {"kernel_dim", r.kernel_dim}, {"dev_deff_kernel", r.dev_deff_kernel},
                   {"sigma_min", r.sigma_min}});
  }
  if (c.format == "json") {
    std::cout << json{{"diagram", "mobius-2d"}, {"rows", arr}, {"passed", ok}}.dump(2) << "\n";
  } else {
    std::cout << "   r   dim  ker D0  ker dev deff   sigma_min\n";
    for (const auto& r : rows) {
      std::cout << std::setw(4) << r.r << std::setw(6) << r.dim << std::setw(8) << r.kernel_dim << std::setw(14)
                << r.dev_deff_kernel << "   " << std::setprecision(6) << r.sigma_min << "\n";
    }
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  return ok ? kPass : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact BGG diagram toolkit"};
  app.require_subcommand(1);

  Common verify_c, coh_c, derive_c, export_c, energy_c, korn_c;
  auto* verify = app.add_subcommand("verify", "identity suite, BGG invariants and catalog fingerprint");
  add_common(verify, verify_c);
  auto* coh = app.add_subcommand("cohomology", "BGG, twisted and row cohomology per weight");
  add_common(coh, coh_c);
  auto* derive = app.add_subcommand("derive", "Υ spaces, operator orders and the BGG operators at one weight");
  add_common(derive, derive_c);
  int derive_weight = 3;
  derive->add_option("--weight", derive_weight, "weight of the printed operators")->check(CLI::NonNegativeNumber);

  auto* exp = app.add_subcommand("export", "write one operator block");
  add_common(exp, export_c);
  std::string op = "D", output;
  int index = 0, weight = 0;
  exp->add_option("--op", op, "operator")->check(CLI::IsMember(operator_names()));
  exp->add_option("--index", index, "form index i")->required();
  exp->add_option("--weight", weight, "weight w")->required()->check(CLI::NonNegativeNumber);
  exp->add_option("--output,-o", output, "output file (default stdout)");

  auto* energy = app.add_subcommand("cosserat-energy", "Cosserat energy against |d_V^0(u, omega)|_C^2");
  add_common(energy, energy_c, false);
  EnergyOptions eo;
  energy->add_option("--samples", eo.samples, "random fields per parameter set")->check(CLI::PositiveNumber);
  energy->add_option("--seed", eo.seed, "random seed");
  energy->add_option("--degree", eo.degree, "field degree")->check(CLI::Range(0, 6));
  energy->add_option("--params", eo.params, "mu lambda mu_c alpha beta gamma as rationals");

  auto* korn = app.add_subcommand("korn2d", "2D conformal Korn experiment");
  add_common(korn, korn_c, false);
  int rmin = 3, rmax = 8;
  korn->add_option("--rmin", rmin, "smallest degree")->check(CLI::Range(0, 12));
  korn->add_option("--rmax", rmax, "largest degree")->check(CLI::Range(0, 12));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }
  try {
    if (*verify) return cmd_verify(verify_c);
    if (*coh) return cmd_cohomology(coh_c);
    if (*derive) return cmd_derive(derive_c, derive_weight);
    if (*exp) return cmd_export(export_c, op, index, weight, output);
    if (*energy) return cmd_energy(energy_c, eo);
    if (*korn) {
      if (rmax < rmin) throw std::invalid_argument("--rmax is below --rmin");
      return cmd_korn(korn_c, rmin, rmax);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}
