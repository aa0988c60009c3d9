#include "bgg/export.hpp"

#include <json.hpp>

#include <istream>
#include <sstream>
#include <stdexcept>

namespace bgg {

const std::vector<std::string>& operator_names() {
  static const std::vector<std::string> names = {"d", "S", "K", "dV", "F", "T", "G", "A", "B", "D"};
  return names;
}

int codomain_index(const std::string& op, int i) {
  if (op == "d" || op == "S" || op == "dV" || op == "D") return i + 1;
  if (op == "T" || op == "G") return i - 1;
  return i;
}

SparseMat select_operator(const BGGComplex& bc, const std::string& op, int index, int w) {
  const BuiltDiagram& bd = bc.diagram();
  if (w < 0 || w > bd.wmax()) {
    throw std::invalid_argument("weight " + std::to_string(w) + " outside 0.." + std::to_string(bd.wmax()));
  }
  if (index < 0 || index > bd.spec().n) {
    throw std::invalid_argument("index " + std::to_string(index) + " outside 0.." + std::to_string(bd.spec().n));
  }
  const WeightBlock& wb = bd.weight(w);
  const BGGWeight& bw = bc.weight(w);
  if (op == "d") return wb.dcol[index];
  if (op == "S") return wb.Scol[index];
  if (op == "K") return wb.Kcol[index];
  if (op == "dV") return wb.dV[index];
  if (op == "F") return wb.F[index];
  if (op == "T") return bw.T[index];
  if (op == "G") return bw.G[index];
  if (op == "A") return bw.A[index];
  if (op == "B") return bw.B[index];
  if (op == "D") return bw.D[index];
  throw std::invalid_argument("unknown operator '" + op + "'");
}

std::vector<std::string> column_labels(const BuiltDiagram& bd, int i, int w) {
  std::vector<std::string> out;
  if (i < 0 || i > bd.spec().n) return out;
  for (int j = 0; j <= bd.spec().N(); ++j) {
    FormBlock b = bd.block(i, j, w);
    for (std::size_t k = 0; k < b.dim(); ++k) out.push_back(b.label(k));
  }
  return out;
}

std::string to_matrix_market(const SparseMat& m, const std::vector<std::string>& comments) {
  std::ostringstream o;
  o << "%%MatrixMarket matrix coordinate rational general\n";
  for (const auto& c : comments) o << "% " << c << "\n";
  o << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << "\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (const auto& e : m.row(r)) o << r + 1 << ' ' << e.col + 1 << ' ' << to_string(e.value) << "\n";
  }
  return o.str();
}

SparseMat parse_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("matrix market: empty input");
  std::istringstream h(line);
  std::string banner, object, format, field, symmetry;
  h >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate") {
    throw std::invalid_argument("matrix market: expected a coordinate matrix header");
  }
  if (field != "rational" && field != "real" && field != "integer") {
    throw std::invalid_argument("matrix market: unsupported field '" + field + "'");
  }
  if (symmetry != "general") throw std::invalid_argument("matrix market: only general matrices are supported");
  while (std::getline(in, line) && (line.empty() || line[0] == '%')) {
  }
  std::istringstream sz(line);
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(sz >> rows >> cols >> nnz)) throw std::invalid_argument("matrix market: bad size line");
  std::vector<Triplet> t;
  for (std::size_t k = 0; k < nnz; ++k) {
    if (!std::getline(in, line)) throw std::invalid_argument("matrix market: missing entries");
    std::istringstream es(line);
    std::size_t r = 0, c = 0;
    std::string v;
    if (!(es >> r >> c >> v) || r < 1 || r > rows || c < 1 || c > cols) {
      throw std::invalid_argument("matrix market: bad entry '" + line + "'");
    }
    Rational q;
    if (field == "real" && v.find_first_of("eE") != std::string::npos) {
      throw std::invalid_argument("matrix market: exponent notation is not read exactly: '" + v + "'");
    }
    if (auto dot = v.find('.'); field == "real" && dot != std::string::npos) {
      // finite decimal: digits after the point scale the integer
      std::string digits = v.substr(0, dot) + v.substr(dot + 1);
      mpz_class scale = 1;
      for (std::size_t k = dot + 1; k < v.size(); ++k) scale *= 10;
      q = parse_rational(digits) / Rational(scale);
    } else {
      q = parse_rational(v);
    }
    t.push_back({r - 1, c - 1, q});
  }
  return SparseMat::from_triplets(rows, cols, std::move(t));
}

std::string to_stencil_text(const SparseMat& m, const std::vector<std::string>& row_labels,
                            const std::vector<std::string>& col_labels) {
  std::ostringstream o;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.row(r).empty()) continue;
    o << (r < row_labels.size() ? row_labels[r] : "r" + std::to_string(r + 1)) << " =";
    bool first = true;
    for (const auto& e : m.row(r)) {
      Rational v = e.value;
      if (first) {
        if (sgn(v) < 0) o << " -";
        o << ' ';
      } else {
        o << (sgn(v) < 0 ? " - " : " + ");
      }
      Rational a = abs(v);
      if (a != 1) o << to_string(a) << " * ";
      o << '[' << (e.col < col_labels.size() ? col_labels[e.col] : "c" + std::to_string(e.col + 1)) << ']';
      first = false;
    }
    o << "\n";
  }
  return o.str();
}

std::string to_json_matrix(const SparseMat& m) {
  nlohmann::json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["entries"] = nlohmann::json::array();
  for (const auto& t : m.triplets()) j["entries"].push_back({t.row, t.col, to_string(t.value)});
  return j.dump(1);
}

}  // namespace bgg
