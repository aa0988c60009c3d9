#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bgg/catalog.hpp"

#include <fstream>
#include <sstream>

using namespace bgg;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string data_path(const std::string& file) { return std::string(BGG_DATA_DIR) + "/catalog/" + file + ".bgg"; }

}  // namespace

TEST_CASE("catalog entries") {
  auto ch = get("conf-hessian-3d");
  REQUIRE(ch.spec.rows.size() == 3);
  CHECK(ch.spec.rows[0]->dim() == 1);
  CHECK(ch.spec.rows[1]->dim() == 3);
  CHECK(ch.spec.rows[2]->dim() == 1);
  auto mb = get("mobius-2d");
  CHECK(mb.spec.n == 2);
  CHECK(mb.spec.rows[1]->dim() == 2);
  CHECK(get("higher-hessian-3d").spec.N() == 1);
  auto hh = get("higher-hessian-3d:3");
  CHECK(hh.spec.N() == 3);
  CHECK(hh.spec.rows[3]->dim() == 10);
  CHECK_THROWS_AS(get("nope"), std::invalid_argument);
  CHECK_THROWS_AS(get("higher-hessian-3d:x"), std::invalid_argument);
  CHECK_THROWS_AS(get("higher-hessian-3d:0"), std::invalid_argument);
}

TEST_CASE("shipped spec files match the built-in entries") {
  std::vector<std::pair<std::string, std::string>> files = {
      {"conf-hessian-3d", "conf-hessian-3d"}, {"conf-deformation-3d", "conf-deformation-3d"},
      {"mobius-2d", "mobius-2d"},             {"elasticity-3d", "elasticity-3d"},
      {"plate-2d", "plate-2d"}};
  for (int N = 1; N <= 4; ++N) files.push_back({"higher-hessian-3d:" + std::to_string(N), "higher-hessian-3d-N" + std::to_string(N)});
  for (const auto& [name, file] : files) {
    CAPTURE(name);
    auto e = get(name);
    CHECK(read_file(data_path(file)) == serialize(e));
    auto back = load_entry(data_path(file));
    CHECK(back.name == e.name);
    CHECK(back.spec.n == e.spec.n);
    REQUIRE(back.spec.rows.size() == e.spec.rows.size());
    for (std::size_t j = 0; j < e.spec.rows.size(); ++j) {
      CHECK(back.spec.rows[j]->labels == e.spec.rows[j]->labels);
      CHECK(back.spec.kappa[j].size() == e.spec.kappa[j].size());
      for (std::size_t l = 0; l < e.spec.kappa[j].size(); ++l) CHECK(back.spec.kappa[j][l] == e.spec.kappa[j][l]);
    }
    CHECK(serialize(back) == serialize(e));
  }
}

TEST_CASE("spec file parse errors") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return parse_entry(in);
  };
  CHECK_NOTHROW(parse("diagram t\nn 2\nrow 0 R : u  # comment\n"));
  CHECK_THROWS_WITH_AS(parse("diagram t\nn 2\nrow 0 R : u\nbogus 1\n"), doctest::Contains("line 4"), std::invalid_argument);
  CHECK_THROWS_AS(parse("n 2\nrow 0 R : u\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("diagram t\nrow 0 R : u\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("diagram t\nn 2\nrow 1 R : u\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("diagram t\nn 2\nrow 0 R : u\nrow 1 R : v\nkappa 1 3 1 1 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("diagram t\nn 2\nrow 0 R : u\nrow 1 R : v\nkappa 1 1 1 1 1/0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse("diagram t\nn 2\nrow 0 R : u\nexpect h0 1 source=guess\n"), std::invalid_argument);
  auto e = parse("diagram t\nn 1\nrow 0 R : u\nrow 1 R : v\nkappa 1 1 1 1 -2/4\nexpect h0 2 source=oracle\n");
  CHECK(e.spec.kappa[1][0].at(0, 0) == frac(-1, 2));
  REQUIRE(e.expected.size() == 1);
  CHECK(e.expected[0].value == "2");
}

TEST_CASE("fingerprints") {
  for (const auto& name : {"conf-hessian-3d", "conf-deformation-3d", "mobius-2d", "elasticity-3d", "plate-2d",
                           "higher-hessian-3d:1", "higher-hessian-3d:2"}) {
    CAPTURE(name);
    Fingerprint fp = fingerprint(get(name), 6);
    for (const auto& it : fp.items) {
      CAPTURE(it.key);
      CAPTURE(it.actual);
      CHECK(it.passed);
    }
    CHECK(fp.checks.passed());
  }
  // higher-hessian N = 1: Υ^2 has dimension 3*3 - 1.
  Fingerprint fp = fingerprint(get("higher-hessian-3d:1"), 3);
  CHECK(fp.items[2].key == "ups_dims");
  CHECK(fp.items[2].actual == "1 6 8 3");
}

TEST_CASE("fingerprint mismatches are reported, not thrown") {
  auto e = get("plate-2d");
  e.expected[0].value = "4";
  Fingerprint fp = fingerprint(e, 4);
  CHECK_FALSE(fp.items[0].passed);
  CHECK(fp.items[0].actual == "3");
  CHECK_FALSE(fp.passed());
}
