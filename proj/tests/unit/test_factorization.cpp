#include "helpers.hpp"

#include "tetra/error.hpp"
#include "tetra/factorization.hpp"
#include "tetra/instances.hpp"

#include <doctest.h>

#include <algorithm>

using namespace tetra;
using namespace testing;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("bcl_extract examples") {
  auto qw = bcl_extract(AnalyticSymbol::shift(2));
  CHECK(op_norm(qw.Q - Matrix::Identity(2, 2)) < 1e-14);
  CHECK(op_norm(qw.W - Matrix::Identity(2, 2)) < 1e-14);
  qw = bcl_extract(AnalyticSymbol::constant(Matrix::Identity(2, 2)));
  CHECK(qw.Q.norm() < 1e-14);
  CHECK(op_norm(qw.W - Matrix::Identity(2, 2)) < 1e-14);
  const AnalyticSymbol phi{mat({{0.0, 0.0}, {1.0, 0.0}}), mat({{0.0, 1.0}, {0.0, 0.0}})};
  qw = bcl_extract(phi);
  CHECK(qw.Q == diag({1.0, 0.0}));
  CHECK(qw.W == mat({{0.0, 1.0}, {1.0, 0.0}}));
  CHECK_THROWS_AS(bcl_extract(AnalyticSymbol::constant(0.5 * Matrix::Identity(2, 2))), Error);
}

TEST_CASE("bcl round trip on random pairs") {
  for (int i = 0; i < 200; ++i) {
    const Index d = 1 + i % 8;
    const Matrix q = random_projection(d, (i / 8) % (d + 1), 100 + i);
    const Matrix w = random_unitary(d, 400 + i);
    const auto qw = bcl_extract(triangular_model(q, w).phi);
    CHECK(op_norm(qw.Q - q) <= 1e-12);
    CHECK(op_norm(qw.W - w) <= 1e-12);
  }
}

TEST_CASE("bcl_verify_n examples") {
  const AnalyticSymbol z = AnalyticSymbol::shift(2);
  const AnalyticSymbol one = AnalyticSymbol::constant(Matrix::Identity(2, 2));
  auto r = bcl_verify_n({z, one, one});
  CHECK(r.passed());
  const auto m = triangular_model(random_projection(3, 1, 1), random_unitary(3, 2));
  CHECK(bcl_verify_n({m.phi, m.psi}).passed());
  r = bcl_verify_n({z, z});
  CHECK_FALSE(r.passed());
  CHECK(has(r.failed, "product"));
}

TEST_CASE("bcl_extract_n") {
  const auto ex = bcl_extract_n({AnalyticSymbol::shift(1), AnalyticSymbol::constant(Matrix::Identity(1, 1))});
  REQUIRE(ex.pairs.size() == 2);
  CHECK(std::abs(ex.pairs[0].Q(0, 0) - 1.0) < 1e-14);
  CHECK(std::abs(ex.pairs[1].Q(0, 0)) < 1e-14);
  CHECK(std::abs(ex.pairs[1].W(0, 0) - 1.0) < 1e-14);

  // Two independent models stacked block-diagonally.
  const Matrix q1 = random_projection(2, 1, 3), w1 = random_unitary(2, 4);
  const Matrix q2 = random_projection(3, 2, 5), w2 = random_unitary(3, 6);
  const auto m1 = triangular_model(q1, w1);
  const auto m2 = triangular_model(q2, w2);
  auto stack = [](const Matrix& a, const Matrix& b) {
    Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
    m.topLeftCorner(a.rows(), a.cols()) = a;
    m.bottomRightCorner(b.rows(), b.cols()) = b;
    return m;
  };
  const AnalyticSymbol phi{stack(m1.phi.C0, m2.phi.C0), stack(m1.phi.C1, m2.phi.C1)};
  const AnalyticSymbol psi{stack(m1.psi.C0, m2.psi.C0), stack(m1.psi.C1, m2.psi.C1)};
  const auto both = bcl_extract_n({phi, psi});
  CHECK(op_norm(both.pairs[0].Q - stack(q1, q2)) < 1e-12);
  CHECK(op_norm(both.pairs[0].W - stack(w1, w2)) < 1e-12);
}

TEST_CASE("dss and bcl parameterizations convert exactly") {
  for (int i = 0; i < 50; ++i) {
    const Index d = 1 + i % 5;
    const Matrix p = random_projection(d, i % (d + 1), 10 + i);
    const Matrix u = random_unitary(d, 20 + i);
    const auto qw = dss_to_bcl(p, u);
    const auto [p2, u2] = bcl_to_dss(qw);
    CHECK(op_norm(p2 - p) < 1e-13);
    CHECK(op_norm(u2 - u) < 1e-13);
    const auto phi = dss_phi(p, u);
    const auto psi = dss_psi(p, u);
    CHECK(coefficient_distance(symbol_mul(phi, psi), z_identity(d)) < 1e-12);
  }
}

TEST_CASE("dss_verify on ground truth and negative fixtures") {
  const auto inst = dss_ground_truth(3, 3, 7);
  auto r = dss_verify(inst.T1, inst.T2, inst.certificate);
  CHECK(r.passed());
  CHECK(r.max_residual() <= 1e-10);

  auto cert = inst.certificate;
  cert.U *= 1.2;
  CHECK(has(dss_verify(inst.T1, inst.T2, cert).failed, "NotUnitary"));

  cert = inst.certificate;
  Eigen::HouseholderQR<Matrix> qr(random_gaussian(cert.J.rows(), cert.J.cols(), 8));
  cert.J = qr.householderQ() * Matrix::Identity(cert.J.rows(), cert.J.cols());
  r = dss_verify(inst.T1, inst.T2, cert);
  CHECK((has(r.failed, "CoinvariancePhi") || has(r.failed, "CoinvariancePsi") || has(r.failed, "CoinvarianceZ")));

  CHECK_THROWS_AS(dss_verify(inst.T1, inst.T2, DSSCertificate{2, Matrix::Zero(2, 2), Matrix::Identity(2, 2), 1,
                                                               Matrix::Zero(2, 3)}),
                  Error);
}

TEST_CASE("compression multiplicativity on co-invariant blocks") {
  for (int i = 0; i < 20; ++i) {
    const auto inst = dss_ground_truth(1 + i % 4, 1 + i % 3, 30 + i, i % 2 == 1);
    const auto& c = inst.certificate;
    const Matrix tz = c.J.adjoint() * toeplitz_truncate(AnalyticSymbol::shift(c.E_dim), c.N) * c.J;
    CHECK(op_norm(inst.T1 * inst.T2 - tz) <= 1e-10);
    CHECK(op_norm(inst.T2 * inst.T1 - tz) <= 1e-10);
  }
}

TEST_CASE("dss_construct round trip") {
  for (int i = 0; i < 30; ++i) {
    const auto inst = dss_ground_truth(1 + i % 4, 1 + (i / 4) % 4, 60 + i, i % 2 == 1);
    const auto cert = dss_construct(inst.T1, inst.T2);
    const auto r = dss_verify(inst.T1, inst.T2, cert);
    CHECK(r.passed());
    CHECK(r.max_residual() <= 1e-8);
  }
}

TEST_CASE("dss_construct restrictions") {
  try {
    dss_construct(scalar(1.0), scalar(1.0));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPure);
  }
  try {
    dss_construct(scalar(2.0), scalar(0.1));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotContractions);
  }
  // A normal pair whose adjoint fundamental pair commutes but does not satisfy
  // the triangular symbol identities.
  try {
    dss_construct(scalar(0.3), scalar(0.4));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotTriangularSymbol);
  }
}
