#include "tetra/io.hpp"

#include "tetra/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace tetra::io {

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::SchemaError, path + ": " + what);
}

Index read_dim(const Json& j, const std::string& path, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) schema_fail(path, std::string("missing field '") + key + "'");
  if (!it->is_number_integer()) schema_fail(path + "." + key, "expected an integer");
  const auto v = it->get<std::int64_t>();
  if (v < 0) schema_fail(path + "." + key, "must be non-negative");
  return static_cast<Index>(v);
}

double read_finite(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema_fail(path, "non-finite entry");
  return v;
}

const Json& member(const Json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_fail(path, "missing field '" + key + "'");
  return *it;
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
  Json data = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index k = 0; k < m.cols(); ++k) data.push_back(Json::array({m(i, k).real(), m(i, k).imag()}));
  }
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  j["data"] = std::move(data);
  return j;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected a matrix object");
  const Index rows = read_dim(j, path, "rows");
  const Index cols = read_dim(j, path, "cols");
  const Json& data = member(j, path, "data");
  if (!data.is_array()) schema_fail(path + ".data", "expected an array");
  if (static_cast<Index>(data.size()) != rows * cols) {
    schema_fail(path + ".data", "length " + std::to_string(data.size()) + " does not match rows*cols = " +
                                    std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  for (Index idx = 0; idx < rows * cols; ++idx) {
    const Json& e = data[static_cast<std::size_t>(idx)];
    const std::string ep = path + ".data[" + std::to_string(idx) + "]";
    if (!e.is_array() || e.size() != 2) schema_fail(ep, "expected an [re, im] pair");
    m(idx / cols, idx % cols) = Complex(read_finite(e[0], ep + "[0]"), read_finite(e[1], ep + "[1]"));
  }
  return m;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::SchemaError,
                source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

Json load_json_file(const std::string& path) { return parse_json(read_file(path), path); }

std::map<std::string, Matrix> named_matrices(const Json& j, const std::vector<std::string>& required,
                                             const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  std::map<std::string, Matrix> out;
  for (const auto& key : required) out[key] = matrix_from_json(member(j, path, key), path + "." + key);
  return out;
}

Json named_matrices_to_json(const std::map<std::string, Matrix>& m) {
  Json j = Json::object();
  for (const auto& [k, v] : m) j[k] = matrix_to_json(v);
  return j;
}

CommutingTriple triple_from_json(const Json& j, const std::string& path) {
  auto m = named_matrices(j, {"A", "B", "P"}, path);
  try {
    return CommutingTriple(std::move(m["A"]), std::move(m["B"]), std::move(m["P"]));
  } catch (const Error& e) {
    schema_fail(path, e.what());
  }
}

Json triple_to_json(const CommutingTriple& t) {
  Json j;
  j["A"] = matrix_to_json(t.A());
  j["B"] = matrix_to_json(t.B());
  j["P"] = matrix_to_json(t.P());
  return j;
}

AnalyticSymbol symbol_from_json(const Json& j, const std::string& path) {
  auto m = named_matrices(j, {"C0", "C1"}, path);
  if (m["C0"].rows() != m["C0"].cols() || m["C0"].rows() != m["C1"].rows() || m["C0"].cols() != m["C1"].cols()) {
    schema_fail(path, "C0 and C1 must be square of the same size");
  }
  return {m["C0"], m["C1"]};
}

Json symbol_to_json(const AnalyticSymbol& s) {
  Json j;
  j["C0"] = matrix_to_json(s.C0);
  j["C1"] = matrix_to_json(s.C1);
  return j;
}

std::pair<Matrix, Matrix> pair_from_json(const Json& j, const std::string& path) {
  auto m = named_matrices(j, {"T1", "T2"}, path);
  return {m["T1"], m["T2"]};
}

Json pair_to_json(const Matrix& t1, const Matrix& t2) {
  Json j;
  j["T1"] = matrix_to_json(t1);
  j["T2"] = matrix_to_json(t2);
  return j;
}

std::pair<Matrix, Matrix> generators_from_json(const Json& j, const std::string& path) {
  auto m = named_matrices(j, {"A1", "A2"}, path);
  return {m["A1"], m["A2"]};
}

Json generators_to_json(const Matrix& a1, const Matrix& a2) {
  Json j;
  j["A1"] = matrix_to_json(a1);
  j["A2"] = matrix_to_json(a2);
  return j;
}

DSSCertificate certificate_from_json(const Json& j, const std::string& path) {
  auto m = named_matrices(j, {"P", "U", "J"}, path);
  DSSCertificate c;
  c.E_dim = read_dim(j, path, "E_dim");
  c.N = read_dim(j, path, "N");
  c.P = m["P"];
  c.U = m["U"];
  c.J = m["J"];
  return c;
}

Json certificate_to_json(const DSSCertificate& c) {
  Json j;
  j["E_dim"] = c.E_dim;
  j["N"] = c.N;
  j["P"] = matrix_to_json(c.P);
  j["U"] = matrix_to_json(c.U);
  j["J"] = matrix_to_json(c.J);
  return j;
}

void write_variety_csv(std::ostream& os, const VarietySample& sample) {
  os << "re_x1,im_x1,re_x2,im_x2,re_x3,im_x3,abs_x3,closure_residual,in_bE\n";
  char buf[512];
  for (const auto& v : sample.points) {
    const auto& p = v.point;
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n", p.x1.real(), p.x1.imag(),
                  p.x2.real(), p.x2.imag(), p.x3.real(), p.x3.imag(), v.abs_x3, v.closure_residual,
                  v.in_bE ? 1 : 0);
    os << buf;
  }
}

}  // namespace tetra::io
