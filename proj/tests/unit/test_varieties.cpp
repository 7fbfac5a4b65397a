#include "helpers.hpp"

#include "tetra/error.hpp"
#include "tetra/instances.hpp"
#include "tetra/varieties.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace tetra;
using namespace testing;

TEST_CASE("generator check examples") {
  auto g = variety_generator_check(scalar(0.0), scalar(0.0));
  CHECK(g.report.strict);
  CHECK(g.report.circle_sup == doctest::Approx(0.0));
  g = variety_generator_check(scalar(0.3), scalar(0.4));
  CHECK(g.report.strict);
  CHECK(g.report.circle_sup == doctest::Approx(0.7).epsilon(1e-12));
  g = variety_generator_check(jordan(2), Matrix::Zero(2, 2));
  CHECK(g.report.selfcomm_gap == doctest::Approx(1.0));
  CHECK_FALSE(g.report.algebraic);
  CHECK_FALSE(g.report.non_strict);
}

TEST_CASE("variety sample of scalar generators") {
  const auto zero = variety_sample(variety_generator_check(scalar(0.0), scalar(0.0)), 4, 8);
  for (const auto& v : zero.points) {
    CHECK(std::abs(v.point.x1) < 1e-14);
    CHECK(std::abs(v.point.x2) < 1e-14);
    if (v.radial_index < zero.radial_steps) CHECK(v.in_open);
  }
  const auto s = variety_sample(variety_generator_check(scalar(0.3), scalar(0.4)), 4, 8);
  for (const auto& v : s.points) {
    const Complex x3 = v.point.x3;
    CHECK(std::abs(v.point.x1 - (0.3 + 0.4 * x3)) < 1e-12);
    CHECK(std::abs(v.point.x2 - (0.4 + 0.3 * x3)) < 1e-12);
  }
}

TEST_CASE("tight boundary point of the scalar example") {
  const auto r = tetra_membership({0.7, 0.7, 1.0});
  CHECK(std::abs(r.lhs2 - 0.51) < 1e-12);
  CHECK(std::abs(r.rhs2 - 0.51) < 1e-12);
  CHECK(r.in_bE);
  const auto ex = distinguished_exit_check(variety_generator_check(scalar(0.3), scalar(0.4)), 32);
  CHECK(ex.passed);
  CHECK(ex.violations == 0);
}

TEST_CASE("variety sample rejects failing generators") {
  try {
    variety_sample(variety_generator_check(jordan(2), Matrix::Zero(2, 2)), 2, 4);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ConditionsFail);
  }
  CHECK_THROWS_AS(distinguished_exit_check(variety_generator_check(jordan(2), Matrix::Zero(2, 2)), 8), Error);
}

TEST_CASE("determinantal polynomials") {
  const auto s = determinantal_polys(scalar(Complex(0.3, 0.1)), scalar(0.4));
  // f1 = conj(a) + b z3 - z1
  for (const Complex z1 : {Complex(0.1, 0.2), Complex(-0.5, 0.0)}) {
    for (const Complex z3 : {Complex(0.3, -0.2), Complex(0.0, 1.0)}) {
      CHECK(std::abs(s.f1(z1, z3) - (Complex(0.3, -0.1) + 0.4 * z3 - z1)) < 1e-12);
    }
  }
  const auto z = determinantal_polys(Matrix::Zero(2, 2), Matrix::Zero(2, 2));
  CHECK(std::abs(z.f1(Complex(0.3, 0.4), 0.7) - Complex(0.3, 0.4) * Complex(0.3, 0.4)) < 1e-12);

  // Interpolated coefficients against direct determinants.
  const Matrix f = random_gaussian(3, 3, 1);
  const Matrix g = random_gaussian(3, 3, 2);
  const auto p = determinantal_polys(f, g);
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Complex z1(n(rng), n(rng)), z3(n(rng), n(rng));
    const Complex direct = (Matrix(f.adjoint() + z3 * g - z1 * Matrix::Identity(3, 3))).determinant();
    CHECK(std::abs(p.f1(z1, z3) - direct) <= 1e-9 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("strict generators: interior in E, boundary in bE, polynomials vanish") {
  for (int i = 0; i < 20; ++i) {
    const auto [a1, a2] = random_strict_generators(1 + i % 4, 10 + i);
    const auto gen = variety_generator_check(a1, a2);
    REQUIRE(gen.report.strict);
    const auto s = variety_sample(gen, 6, 24);
    CHECK(s.flagged == 0);
    const auto polys = determinantal_polys(a1, a2);
    for (const auto& v : s.points) {
      CHECK(std::abs(polys.f1(v.point.x1, v.point.x3)) <= 1e-8);
      CHECK(std::abs(polys.f2(v.point.x2, v.point.x3)) <= 1e-8);
      if (v.radial_index < s.radial_steps) {
        CHECK(v.in_open);
      } else {
        CHECK(v.in_bE);
      }
    }
    CHECK(distinguished_exit_check(gen, 32).passed);
  }
}

TEST_CASE("swapping generators swaps coordinates") {
  const auto [a1, a2] = random_strict_generators(3, 40);
  const auto s = variety_sample(variety_generator_check(a1, a2), 3, 6);
  const auto t = variety_sample(variety_generator_check(a2, a1), 3, 6);
  REQUIRE(s.points.size() == t.points.size());
  for (std::size_t k = 0; k < s.points.size(); k += 3) {
    const auto& p = s.points[k].point;
    bool found = false;
    for (std::size_t m = 0; m < t.points.size(); ++m) {
      const auto& q = t.points[m].point;
      if (std::abs(q.x3 - p.x3) < 1e-12 && std::abs(q.x1 - p.x2) < 1e-8 && std::abs(q.x2 - p.x1) < 1e-8) {
        found = true;
        break;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("dilation/variety equivalence") {
  const auto r = dilation_variety_report(CommutingTriple(scalar(0.5), scalar(0.5), scalar(0.25)));
  CHECK(r.cond1);
  CHECK(r.cond2);
  CHECK(r.cond3);
  CHECK(r.cond4);
  CHECK(r.agree);

  const auto bad = dilation_variety_report(random_triangular_triple(3, 50, PairMode::Polynomial, 0.1));
  CHECK_FALSE(bad.cond1);
  CHECK_FALSE(bad.cond2);
  CHECK_FALSE(bad.cond3);
  CHECK_FALSE(bad.cond4);
  CHECK(bad.agree);

  const Matrix u = random_unitary(2, 51);
  try {
    dilation_variety_report(CommutingTriple(u, u.adjoint(), Matrix::Identity(2, 2)));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPure);
  }

  for (int i = 0; i < 24; ++i) {
    const auto t = random_triangular_triple(1 + (i / 4) % 4, 60 + i, static_cast<PairMode>(i % 4), 0.1);
    const auto rep = dilation_variety_report(t);
    CHECK(rep.agree);
    CHECK(rep.f_conditions == rep.cond2);
  }
}
