#pragma once

// JSON matrix files and CSV sample output.
//
// A matrix is {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major
// order. Composite files are objects whose members are matrices, e.g. a triple
// {"A": ..., "B": ..., "P": ...}. Every parse failure throws SchemaError whose
// message names the source and either a line/column (malformed JSON) or a
// field path such as `A.data[3]`.

#include "tetra/factorization.hpp"
#include "tetra/models.hpp"
#include "tetra/numerics.hpp"
#include "tetra/triples.hpp"
#include "tetra/varieties.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace tetra::io {

using Json = nlohmann::ordered_json;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& path = "$");

/// Parses JSON text; `source` is used in error messages.
Json parse_json(const std::string& text, const std::string& source = "<input>");

/// Pretty-printed JSON with a trailing newline. Doubles are written with the
/// shortest representation that round-trips exactly.
std::string dump(const Json& j);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);
Json load_json_file(const std::string& path);

/// Object of named matrices. `required` members must be present.
std::map<std::string, Matrix> named_matrices(const Json& j, const std::vector<std::string>& required,
                                             const std::string& path = "$");
Json named_matrices_to_json(const std::map<std::string, Matrix>& m);

CommutingTriple triple_from_json(const Json& j, const std::string& path = "$");
Json triple_to_json(const CommutingTriple& t);

AnalyticSymbol symbol_from_json(const Json& j, const std::string& path = "$");
Json symbol_to_json(const AnalyticSymbol& s);

/// {"T1": ..., "T2": ...}
std::pair<Matrix, Matrix> pair_from_json(const Json& j, const std::string& path = "$");
Json pair_to_json(const Matrix& t1, const Matrix& t2);

/// {"A1": ..., "A2": ...}
std::pair<Matrix, Matrix> generators_from_json(const Json& j, const std::string& path = "$");
Json generators_to_json(const Matrix& a1, const Matrix& a2);

/// {"E_dim": d, "N": n, "P": ..., "U": ..., "J": ...}
DSSCertificate certificate_from_json(const Json& j, const std::string& path = "$");
Json certificate_to_json(const DSSCertificate& c);

/// Header re_x1,im_x1,re_x2,im_x2,re_x3,im_x3,abs_x3,closure_residual,in_bE and
/// one row per point in grid order.
void write_variety_csv(std::ostream& os, const VarietySample& sample);

}  // namespace tetra::io
