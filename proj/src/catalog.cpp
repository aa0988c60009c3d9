#include "bgg/catalog.hpp"

#include "bgg/linalg.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bgg {

namespace {

using Dense = std::vector<Vector>;

SparseMat dense(std::initializer_list<std::initializer_list<long>> rows) {
  Dense d;
  for (const auto& r : rows) {
    Vector v;
    for (long x : r) v.emplace_back(x);
    d.push_back(std::move(v));
  }
  return SparseMat::from_dense(d);
}

DiagramSpec make_spec(std::string name, int n, std::vector<ValueSpacePtr> rows) {
  DiagramSpec s;
  s.name = std::move(name);
  s.n = n;
  s.kappa.assign(rows.size(), {});
  s.rows = std::move(rows);
  return s;
}

std::string support_string(std::initializer_list<std::pair<int, int>> pairs) {
  std::string out;
  for (const auto& [i, j] : pairs) {
    if (!out.empty()) out += ' ';
    out += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  }
  return out;
}

CatalogEntry conf_hessian() {
  CatalogEntry e;
  e.spec = make_spec("conf-hessian-3d", 3,
                     {make_value_space("R", {"u"}), make_value_space("R3", {"psi1", "psi2", "psi3"}),
                      make_value_space("R", {"w"})});
  for (int l = 0; l < 3; ++l) {
    SparseBuilder a(1, 3), b(3, 1);
    a.add(0, l, 1);
    b.add(l, 0, 1);
    e.spec.kappa[1].push_back(std::move(a).build());
    e.spec.kappa[2].push_back(std::move(b).build());
  }
  e.expected = {{"h0", "5", "reference"},
                {"support", support_string({{0, 0}, {1, 1}, {2, 1}, {3, 2}}), "reference"},
                {"ups_dims", "1 5 5 1", "reference"},
                {"orders", "2 1 2", "reference"}};
  return e;
}

CatalogEntry conf_deformation() {
  CatalogEntry e;
  e.spec = make_spec("conf-deformation-3d", 3,
                     {make_value_space("R3", {"phi1", "phi2", "phi3"}),
                      make_value_space("o3+R", {"psi1", "psi2", "psi3", "psi"}),
                      make_value_space("R3*", {"w1", "w2", "w3"})});
  // Matrix acting on the position vector; columns (psi1, psi2, psi3, psi).
  e.spec.kappa[1] = {dense({{0, 0, 0, 1}, {0, 0, -1, 0}, {0, 1, 0, 0}}),
                     dense({{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}}),
                     dense({{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}})};
  // Coefficient of x^l in the matrix K^{i,2}(w), read back into (psi1, psi2, psi3, psi).
  e.spec.kappa[2] = {dense({{0, 0, 0}, {0, 0, 1}, {0, -1, 0}, {-1, 0, 0}}),
                     dense({{0, 0, -1}, {0, 0, 0}, {1, 0, 0}, {0, -1, 0}}),
                     dense({{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}, {0, 0, -1}})};
  e.expected = {{"h0", "10", "reference"},
                {"support", support_string({{0, 0}, {1, 0}, {2, 2}, {3, 2}}), "reference"},
                {"ups_dims", "3 5 5 3", "reference"},
                {"orders", "1 3 1", "reference"}};
  return e;
}

// Sorted multisets of size j over {0, 1, 2}, in lexicographic order.
std::vector<std::vector<int>> multisets(int j) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == j) {
      out.push_back(cur);
      return;
    }
    for (int k = start; k < 3; ++k) {
      cur.push_back(k);
      self(self, k);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

CatalogEntry higher_hessian(int N) {
  if (N < 1 || N > 8) throw std::invalid_argument("higher-hessian-3d: N must be in 1..8");
  std::vector<ValueSpacePtr> rows;
  std::vector<std::vector<std::vector<int>>> bases;
  for (int j = 0; j <= N; ++j) {
    bases.push_back(multisets(j));
    std::vector<std::string> labels;
    for (const auto& m : bases.back()) {
      std::string s = "phi";
      for (int k : m) s += std::to_string(k + 1);
      labels.push_back(s);
    }
    rows.push_back(make_value_space("S" + std::to_string(j), labels));
  }
  CatalogEntry e;
  e.spec = make_spec("higher-hessian-3d:" + std::to_string(N), 3, rows);
  for (int j = 1; j <= N; ++j) {
    for (int l = 0; l < 3; ++l) {
      SparseBuilder b(bases[j - 1].size(), bases[j].size());
      for (std::size_t r = 0; r < bases[j - 1].size(); ++r) {
        std::vector<int> m = bases[j - 1][r];
        m.push_back(l);
        std::sort(m.begin(), m.end());
        auto c = std::find(bases[j].begin(), bases[j].end(), m) - bases[j].begin();
        b.add(r, static_cast<std::size_t>(c), 1);
      }
      e.spec.kappa[j].push_back(std::move(b).build());
    }
  }
  auto C = [](int a, int b) { return binomial(a, b); };
  std::ostringstream ups;
  ups << 1 << ' ' << C(N + 3, 2) << ' ' << 3 * C(N + 2, 2) - C(N + 1, 2) << ' ' << C(N + 2, 2);
  e.expected = {{"h0", std::to_string(C(N + 3, 3)), "reference"},
                {"support", support_string({{0, 0}, {1, N}, {2, N}, {3, N}}), "oracle"},
                {"ups_dims", ups.str(), "oracle"},
                {"orders", std::to_string(N + 1) + " 1 1", "oracle"}};
  return e;
}

CatalogEntry mobius() {
  CatalogEntry e;
  e.spec = make_spec("mobius-2d", 2,
                     {make_value_space("R2", {"phi1", "phi2"}), make_value_space("R+R", {"u", "v"}),
                      make_value_space("R2", {"w1", "w2"})});
  // K^{i,1}(u,v) = x u + x^perp v and K^{i,2}(w) = (x.w, -x^perp.w), x^perp = (-x2, x1).
  e.spec.kappa[1] = {dense({{1, 0}, {0, 1}}), dense({{0, -1}, {1, 0}})};
  e.spec.kappa[2] = {dense({{1, 0}, {0, -1}}), dense({{0, 1}, {1, 0}})};
  e.expected = {{"h0", "6", "reference"},
                {"support", support_string({{0, 0}, {1, 0}, {1, 2}, {2, 2}}), "reference"},
                {"ups_dims", "2 4 2", "reference"},
                {"orders", "1,3 1,3", "reference"}};
  return e;
}

CatalogEntry elasticity() {
  CatalogEntry e;
  e.spec = make_spec("elasticity-3d", 3,
                     {make_value_space("R3*", {"u1", "u2", "u3"}),
                      make_value_space("L2", {"psi12", "psi13", "psi23"})});
  // (kappa_l psi)_j = psi_{lj}, psi antisymmetric.
  auto idx = [](int a, int b) { return a == 0 ? b - 1 : 2; };  // a < b
  for (int l = 0; l < 3; ++l) {
    SparseBuilder b(3, 3);
    for (int j = 0; j < 3; ++j) {
      if (j == l) continue;
      if (l < j) {
        b.add(j, idx(l, j), 1);
      } else {
        b.add(j, idx(j, l), -1);
      }
    }
    e.spec.kappa[1].push_back(std::move(b).build());
  }
  e.expected = {{"h0", "6", "reference"},
                {"support", support_string({{0, 0}, {1, 0}, {2, 1}, {3, 1}}), "oracle"},
                {"ups_dims", "3 6 6 3", "oracle"},
                {"orders", "1 2 1", "oracle"}};
  return e;
}

CatalogEntry plate() {
  CatalogEntry e;
  e.spec = make_spec("plate-2d", 2,
                     {make_value_space("R", {"u"}), make_value_space("R2", {"phi1", "phi2"})});
  e.spec.kappa[1] = {dense({{1, 0}}), dense({{0, 1}})};
  e.expected = {{"h0", "3", "oracle"},
                {"support", support_string({{0, 0}, {1, 1}, {2, 1}}), "oracle"},
                {"ups_dims", "1 3 2", "oracle"},
                {"orders", "2 1", "oracle"}};
  return e;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

std::vector<std::string> catalog_names() {
  return {"conf-hessian-3d", "conf-deformation-3d", "higher-hessian-3d", "mobius-2d", "elasticity-3d", "plate-2d"};
}

CatalogEntry get(const std::string& name) {
  CatalogEntry e;
  if (name == "conf-hessian-3d") {
    e = conf_hessian();
  } else if (name == "conf-deformation-3d") {
    e = conf_deformation();
  } else if (name.rfind("higher-hessian-3d", 0) == 0) {
    std::string rest = name.substr(std::string("higher-hessian-3d").size());
    int N = 1;
    if (!rest.empty()) {
      if (rest[0] != ':' || rest.size() < 2 || !std::all_of(rest.begin() + 1, rest.end(), ::isdigit)) {
        throw std::invalid_argument("unknown diagram '" + name + "'");
      }
      N = std::stoi(rest.substr(1));
    }
    e = higher_hessian(N);
  } else if (name == "mobius-2d") {
    e = mobius();
  } else if (name == "elasticity-3d") {
    e = elasticity();
  } else if (name == "plate-2d") {
    e = plate();
  } else {
    throw std::invalid_argument("unknown diagram '" + name + "'");
  }
  e.name = e.spec.name;
  e.spec.validate();
  return e;
}

CatalogEntry load_entry(const std::string& name_or_path) {
  if (ends_with(name_or_path, ".bgg")) return parse_entry_file(name_or_path);
  return get(name_or_path);
}

CatalogEntry parse_entry(std::istream& in) {
  CatalogEntry e;
  struct KappaLine {
    int j, l;
    std::size_t r, c;
    Rational v;
    int line;
  };
  std::vector<KappaLine> kl;
  std::string raw;
  int lineno = 0;
  bool have_n = false;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string cmd;
    if (!(ls >> cmd)) continue;
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    auto to_int = [&](const std::string& s) {
      try {
        std::size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::exception&) {
        fail("expected an integer, got '" + s + "'");
      }
      return 0L;
    };
    if (cmd == "diagram") {
      if (tok.size() != 1) fail("diagram takes one name");
      e.name = e.spec.name = tok[0];
    } else if (cmd == "n") {
      if (tok.size() != 1) fail("n takes one value");
      e.spec.n = static_cast<int>(to_int(tok[0]));
      have_n = true;
    } else if (cmd == "row") {
      if (tok.size() < 4 || tok[2] != ":") fail("expected 'row J NAME : LABEL...'");
      if (to_int(tok[0]) != static_cast<long>(e.spec.rows.size())) fail("rows must be listed in order from 0");
      e.spec.rows.push_back(make_value_space(tok[1], std::vector<std::string>(tok.begin() + 3, tok.end())));
    } else if (cmd == "kappa") {
      if (tok.size() != 5) fail("expected 'kappa J L TARGET SOURCE VALUE'");
      KappaLine k{static_cast<int>(to_int(tok[0])), static_cast<int>(to_int(tok[1])),
                  static_cast<std::size_t>(to_int(tok[2])), static_cast<std::size_t>(to_int(tok[3])), 0, lineno};
      try {
        k.v = parse_rational(tok[4]);
      } catch (const std::invalid_argument&) {
        fail("bad rational '" + tok[4] + "'");
      }
      kl.push_back(std::move(k));
    } else if (cmd == "expect") {
      if (tok.size() < 3 || tok.back().rfind("source=", 0) != 0) fail("expected 'expect KEY VALUE... source=SRC'");
      std::string value;
      for (std::size_t t = 1; t + 1 < tok.size(); ++t) value += (t > 1 ? " " : "") + tok[t];
      std::string src = tok.back().substr(7);
      if (src != "reference" && src != "oracle") fail("source must be reference or oracle");
      e.expected.push_back({tok[0], value, src});
    } else {
      fail("unknown directive '" + cmd + "'");
    }
  }
  if (e.spec.name.empty()) throw std::invalid_argument("missing 'diagram' line");
  if (!have_n) throw std::invalid_argument("missing 'n' line");
  if (e.spec.rows.empty()) throw std::invalid_argument("no rows");
  const int n = e.spec.n;
  if (n < 1 || n > 8) throw std::invalid_argument("n must be in 1..8");
  std::vector<std::vector<SparseBuilder>> builders(e.spec.rows.size());
  for (std::size_t j = 1; j < e.spec.rows.size(); ++j) {
    for (int l = 0; l < n; ++l) builders[j].emplace_back(e.spec.rows[j - 1]->dim(), e.spec.rows[j]->dim());
  }
  for (const auto& k : kl) {
    lineno = k.line;
    if (k.j < 1 || k.j >= static_cast<int>(e.spec.rows.size())) fail("kappa row out of range");
    if (k.l < 1 || k.l > n) fail("kappa axis out of range");
    if (k.r < 1 || k.r > e.spec.rows[k.j - 1]->dim() || k.c < 1 || k.c > e.spec.rows[k.j]->dim()) {
      fail("kappa entry out of range");
    }
    builders[k.j][k.l - 1].add(k.r - 1, k.c - 1, k.v);
  }
  e.spec.kappa.assign(e.spec.rows.size(), {});
  for (std::size_t j = 1; j < e.spec.rows.size(); ++j) {
    for (auto& b : builders[j]) e.spec.kappa[j].push_back(std::move(b).build());
  }
  e.spec.validate();
  return e;
}

CatalogEntry parse_entry_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open '" + path + "'");
  return parse_entry(f);
}

std::string serialize(const CatalogEntry& entry) {
  const DiagramSpec& s = entry.spec;
  std::ostringstream o;
  o << "diagram " << s.name << "\n";
  o << "n " << s.n << "\n";
  for (int j = 0; j <= s.N(); ++j) {
    o << "row " << j << ' ' << s.rows[j]->name << " :";
    for (const auto& l : s.rows[j]->labels) o << ' ' << l;
    o << "\n";
  }
  for (int j = 1; j <= s.N(); ++j) {
    for (int l = 0; l < s.n; ++l) {
      for (const auto& t : s.kappa[j][l].triplets()) {
        o << "kappa " << j << ' ' << l + 1 << ' ' << t.row + 1 << ' ' << t.col + 1 << ' ' << to_string(t.value) << "\n";
      }
    }
  }
  for (const auto& x : entry.expected) o << "expect " << x.key << ' ' << x.value << " source=" << x.source << "\n";
  return o.str();
}

std::string measure(const BGGComplex& bc, const std::string& key) {
  const BuiltDiagram& bd = bc.diagram();
  const auto& spec = bd.spec();
  std::ostringstream o;
  if (key == "h0") {
    o << total(bgg_cohomology(bc), 0);
  } else if (key == "support") {
    bool first = true;
    for (const auto& [i, j] : ups_support(bc.split(), spec)) {
      o << (first ? "" : " ") << "(" << i << "," << j << ")";
      first = false;
    }
  } else if (key == "ups_dims") {
    for (int i = 0; i <= spec.n; ++i) {
      std::size_t d = 0;
      for (int j = 0; j <= spec.N(); ++j) d += bc.split().ups_dim(i, j);
      o << (i ? " " : "") << d;
    }
  } else if (key == "orders") {
    auto orders = operator_orders(bc);
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (i) o << ' ';
      bool first = true;
      for (int k : orders[i]) {
        o << (first ? "" : ",") << k;
        first = false;
      }
    }
  } else {
    throw std::invalid_argument("unknown fingerprint key '" + key + "'");
  }
  return o.str();
}

bool Fingerprint::passed() const {
  if (!checks.passed()) return false;
  return std::all_of(items.begin(), items.end(), [](const FingerprintItem& x) { return x.passed; });
}

Fingerprint fingerprint(const CatalogEntry& entry, int wmax) {
  Fingerprint fp;
  BuiltDiagram bd = build(entry.spec, wmax);
  BGGComplex bc = compute_bgg(bd);
  Checker ck;
  ck.merge(verify_identities(bd));
  ck.merge(verify_bgg(bc));
  ck.merge(verify_block_forms(bc));
  if (entry.spec.N() == 1) ck.merge(verify_two_row_cases(bc).report);
  CohomologyTable tw = twisted_cohomology(bd);
  CohomologyTable rw = row_cohomology(bd);
  fp.cohomology = bgg_cohomology(bc);
  for (int w = 0; w <= wmax; ++w) {
    std::string where = "w=" + std::to_string(w);
    ck.expect_true("cohomology: BGG = twisted", fp.cohomology[w] == tw[w], where);
    ck.expect_true("cohomology: twisted = rows", tw[w] == rw[w], where);
  }
  fp.checks = ck.report();
  for (const auto& x : entry.expected) {
    FingerprintItem it{x.key, x.value, measure(bc, x.key), x.source, false};
    it.passed = it.actual == it.expected;
    fp.items.push_back(std::move(it));
  }
  return fp;
}

}  // namespace bgg
