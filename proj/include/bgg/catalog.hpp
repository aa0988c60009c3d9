#pragma once

#include "bgg/bgg.hpp"
#include "bgg/diagram.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bgg {

/// One expected fingerprint value. `source` is "reference" for values stated
/// for the diagram in the literature and "oracle" for values obtained from an
/// independent computation.
struct Expectation {
  std::string key;
  std::string value;
  std::string source;
};

struct CatalogEntry {
  std::string name;
  DiagramSpec spec;
  std::vector<Expectation> expected;
};

/// Names accepted by get(). "higher-hessian-3d" takes an optional ":N" suffix
/// (default N = 1).
std::vector<std::string> catalog_names();

/// Throws std::invalid_argument for unknown names.
CatalogEntry get(const std::string& name);

/// Loads a built-in name, or a spec file when `name_or_path` ends in ".bgg".
CatalogEntry load_entry(const std::string& name_or_path);

/// Spec file format, one directive per line, '#' starts a comment:
///   diagram NAME
///   n DIM
///   row J NAME : LABEL...          (rows in order 0..N)
///   kappa J L TARGET SOURCE VALUE  (1-based L, TARGET in V_{J-1}, SOURCE in V_J)
///   expect KEY VALUE source=reference|oracle
/// Throws std::invalid_argument with a line number on malformed input.
CatalogEntry parse_entry(std::istream& in);
CatalogEntry parse_entry_file(const std::string& path);
std::string serialize(const CatalogEntry& entry);

/// Fingerprint keys:
///   h0         total dim of H^0 of the BGG complex over all weights
///   support    pairs "(i,j)" with Υ^{i,j} != 0
///   ups_dims   constant-coefficient dim Υ^i per index
///   orders     per index i < n, the set of orders of D^i as "a,b"
struct FingerprintItem {
  std::string key;
  std::string expected;
  std::string actual;
  std::string source;
  bool passed = false;
};

struct Fingerprint {
  std::vector<FingerprintItem> items;
  Report checks;
  CohomologyTable cohomology;
  bool passed() const;
};

/// Builds, verifies and runs the whole pipeline, then compares each expectation.
Fingerprint fingerprint(const CatalogEntry& entry, int wmax);

/// Measured fingerprint values of a computed complex, keyed as above.
std::string measure(const BGGComplex& bc, const std::string& key);

}  // namespace bgg
