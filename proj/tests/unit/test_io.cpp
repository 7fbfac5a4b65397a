#include "helpers.hpp"

#include "tetra/error.hpp"
#include "tetra/instances.hpp"
#include "tetra/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace tetra;
using namespace testing;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("scalar matrix") {
  const Matrix m = io::matrix_from_json(io::parse_json(R"({"rows":1,"cols":1,"data":[[0.5,0]]})"));
  CHECK(m == scalar(0.5));
}

TEST_CASE("triple round trip is byte identical") {
  const auto t = random_triangular_triple(4, 3);
  const std::string once = io::dump(io::triple_to_json(t));
  const auto back = io::triple_from_json(io::parse_json(once));
  CHECK(back.A() == t.A());
  CHECK(back.P() == t.P());
  CHECK(io::dump(io::triple_to_json(back)) == once);
}

TEST_CASE("schema errors") {
  CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"rows":2,"cols":1,"data":[[0.5,0]]})")); }) ==
        ErrorCode::SchemaError);
  CHECK(message_of([] {
          io::matrix_from_json(io::parse_json(R"({"rows":2,"cols":1,"data":[[0.5,0]]})"));
        }).find("$.data") != std::string::npos);
  CHECK(message_of([] {
          io::matrix_from_json(io::parse_json(R"({"rows":1,"cols":2,"data":[[0.5,0],[1]]})"));
        }).find("data[1]") != std::string::npos);
  CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"rows":1,"data":[]})")); }) == ErrorCode::SchemaError);
  CHECK(code_of([] { io::matrix_from_json(io::parse_json(R"({"rows":1,"cols":1,"data":[["a",0]]})")); }) ==
        ErrorCode::SchemaError);
  const std::string bad = "{\n  \"rows\": 1,\n  \"cols\": 1\n  \"data\": []\n}";
  const std::string msg = message_of([&] { io::parse_json(bad, "m.json"); });
  CHECK(msg.find("m.json:4:") != std::string::npos);
  CHECK(message_of([] {
          io::triple_from_json(io::parse_json(R"({"A":{"rows":1,"cols":1,"data":[[0,0]]}})"));
        }).find("missing field 'B'") != std::string::npos);
}

TEST_CASE("symbol, pair, generators and certificate round trips") {
  const AnalyticSymbol s{random_gaussian(2, 2, 1), random_gaussian(2, 2, 2)};
  const auto s2 = io::symbol_from_json(io::parse_json(io::dump(io::symbol_to_json(s))));
  CHECK(s2.C0 == s.C0);
  CHECK(s2.C1 == s.C1);
  const auto [a, b] = io::pair_from_json(io::pair_to_json(s.C0, s.C1));
  CHECK(a == s.C0);
  CHECK(b == s.C1);
  const auto [g1, g2] = io::generators_from_json(io::generators_to_json(s.C0, s.C1));
  CHECK(g2 == s.C1);
  const auto inst = dss_ground_truth(2, 2, 3);
  const auto c = io::certificate_from_json(io::parse_json(io::dump(io::certificate_to_json(inst.certificate))));
  CHECK(c.E_dim == 2);
  CHECK(c.N == inst.certificate.N);
  CHECK(c.J == inst.certificate.J);
}

TEST_CASE("variety CSV") {
  VarietySample s;
  VarietyPoint p;
  p.point = {Complex(0.7, 0), Complex(0.7, 0), Complex(1, 0)};
  p.abs_x3 = 1.0;
  p.in_bE = true;
  s.points.push_back(p);
  std::ostringstream os;
  io::write_variety_csv(os, s);
  CHECK(os.str() == "re_x1,im_x1,re_x2,im_x2,re_x3,im_x3,abs_x3,closure_residual,in_bE\n"
                    "0.69999999999999996,0,0.69999999999999996,0,1,0,1,0,1\n");
}
