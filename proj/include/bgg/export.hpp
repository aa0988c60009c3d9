#pragma once

#include "bgg/bgg.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bgg {

/// Operator names accepted by select_operator.
const std::vector<std::string>& operator_names();

/// Column operator `op` at form index `index` and weight `w`:
/// d, S, dV, D: Z^i -> Z^{i+1};  K, F, A, B: Z^i -> Z^i;  T, G: Z^i -> Z^{i-1}.
/// Throws std::invalid_argument for an unknown operator, index or weight.
SparseMat select_operator(const BGGComplex& bc, const std::string& op, int index, int w);

/// Form index of the codomain of `op` applied at index i.
int codomain_index(const std::string& op, int i);

/// Basis labels of Z^i at weight w ("x1*x2 dx1 psi1"); empty outside 0..n.
std::vector<std::string> column_labels(const BuiltDiagram& bd, int i, int w);

/// Matrix Market coordinate file with exact "p/q" entries, 1-based indices,
/// row-major order.
std::string to_matrix_market(const SparseMat& m, const std::vector<std::string>& comments = {});
/// Parses the output of to_matrix_market. Also accepts the "integer" field and
/// "real" entries written as finite decimals; exponent notation is rejected.
/// Throws std::invalid_argument on malformed input.
SparseMat parse_matrix_market(std::istream& in);

/// One line per nonzero row: "label = c * label + ...".
std::string to_stencil_text(const SparseMat& m, const std::vector<std::string>& row_labels,
                            const std::vector<std::string>& col_labels);

/// {"rows": R, "cols": C, "entries": [[i, j, "p/q"], ...]} with 0-based indices.
std::string to_json_matrix(const SparseMat& m);

}  // namespace bgg
