#include "tetra/varieties.hpp"

#include "tetra/dilation.hpp"
#include "tetra/error.hpp"
#include "tetra/fundops.hpp"
#include "tetra/models.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tetra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_generator_shapes(const Matrix& a1, const Matrix& a2) {
  require_square(a1, "A1");
  if (a2.rows() != a1.rows() || !is_square(a2)) throw Error(ErrorCode::DimensionMismatch, "A1 and A2 differ in size");
}

void require_conditions(const VarietyGenerators& gen) {
  if (!gen.report.non_strict) {
    std::ostringstream os;
    os << "generator conditions fail: commutator " << gen.report.commutator << ", self-commutator gap "
       << gen.report.selfcomm_gap << ", circle sup " << gen.report.circle_sup;
    throw Error(ErrorCode::ConditionsFail, os.str());
  }
}

std::vector<JointEigenvalue> pencil_points(const Matrix& a1, const Matrix& a2, Complex x3, const Tolerances& tol,
                                           std::uint64_t seed) {
  const std::vector<Matrix> family{a1.adjoint() + x3 * a2, a2.adjoint() + x3 * a1};
  return joint_eigs(family, tol, seed);
}

Complex det(const Matrix& m) { return m.rows() == 0 ? Complex(1.0) : Eigen::PartialPivLU<Matrix>(m).determinant(); }

BivariatePoly interpolate(const Matrix& c0, const Matrix& c1) {
  // det(c0 + w·c1 − z·I) sampled on a (d+1) x (d+1) grid of roots of unity
  const Index d = c0.rows();
  const Index m = d + 1;
  const Matrix id = Matrix::Identity(d, d);
  Matrix values(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      const Complex z = std::polar(1.0, kTwoPi * static_cast<double>(a) / static_cast<double>(m));
      const Complex w = std::polar(1.0, kTwoPi * static_cast<double>(b) / static_cast<double>(m));
      values(a, b) = det(c0 + w * c1 - z * id);
    }
  }
  Matrix dft(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index a = 0; a < m; ++a) {
      dft(j, a) = std::polar(1.0 / static_cast<double>(m), -kTwoPi * static_cast<double>(j * a) / static_cast<double>(m));
    }
  }
  return {dft * values * dft.transpose()};
}

}  // namespace

VarietyGenerators variety_generator_check(const Matrix& a1, const Matrix& a2, const Tolerances& tol) {
  require_generator_shapes(a1, a2);
  VarietyGenerators gen{a1, a2, {}};
  GeneratorReport& r = gen.report;
  r.commutator = op_norm(commutator(a1, a2));
  r.selfcomm_gap = selfcommutator_gap(a1, a2);
  const CircleExtremes ce = circle_extremes(a1.adjoint(), a2, tol);
  r.circle_sup = ce.sup_opnorm;
  r.circle_upper_bound = ce.opnorm_upper_bound;
  r.algebraic = r.commutator <= tol.residual_tol && r.selfcomm_gap <= tol.residual_tol;
  r.strict = r.algebraic && r.circle_upper_bound < 1.0;
  r.non_strict = r.algebraic && r.circle_sup <= 1.0 + tol.residual_tol;
  return gen;
}

VarietySample variety_sample(const VarietyGenerators& gen, Index radial_steps, Index angular_steps,
                             const Tolerances& tol) {
  if (radial_steps < 1 || angular_steps < 1) throw Error(ErrorCode::InvalidArgument, "grid steps must be >= 1");
  require_conditions(gen);
  VarietySample s;
  s.radial_steps = radial_steps;
  s.angular_steps = angular_steps;
  for (Index i = 0; i <= radial_steps; ++i) {
    const double r = static_cast<double>(i) / static_cast<double>(radial_steps);
    const Index angles = i == 0 ? 1 : angular_steps;
    for (Index j = 0; j < angles; ++j) {
      const Complex x3 = std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(angular_steps));
      std::vector<JointEigenvalue> eigs;
      try {
        eigs = pencil_points(gen.A1, gen.A2, x3, tol, static_cast<std::uint64_t>(i * angular_steps + j));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TriangularizationFailed && e.code() != ErrorCode::NotCommuting) throw;
        ++s.skipped_nodes;
        continue;
      }
      for (const JointEigenvalue& e : eigs) {
        VarietyPoint vp;
        vp.point = {e[0], e[1], x3};
        vp.radial_index = i;
        vp.angular_index = j;
        vp.abs_x3 = std::abs(x3);
        const MembershipReport m = tetra_membership(vp.point, tol.residual_tol);
        vp.closure_residual = m.closure_residual;
        vp.in_open = m.in_open;
        vp.in_closed = m.in_closed;
        vp.in_bE = m.in_bE;
        vp.flagged = i < radial_steps && !m.in_open && !m.marginal;
        if (vp.flagged) ++s.flagged;
        s.points.push_back(vp);
      }
    }
  }
  return s;
}

Complex BivariatePoly::operator()(Complex z, Complex w) const {
  Complex sum = 0.0;
  Complex zj = 1.0;
  for (Index j = 0; j < coeffs.rows(); ++j) {
    Complex wk = 1.0;
    for (Index k = 0; k < coeffs.cols(); ++k) {
      sum += coeffs(j, k) * zj * wk;
      wk *= w;
    }
    zj *= z;
  }
  return sum;
}

DeterminantalPolys determinantal_polys(const Matrix& f, const Matrix& g) {
  require_generator_shapes(f, g);
  if (f.rows() == 0) throw Error(ErrorCode::InvalidArgument, "determinantal_polys needs d >= 1");
  return {interpolate(f.adjoint(), g), interpolate(g.adjoint(), f)};
}

ExitReport distinguished_exit_check(const VarietyGenerators& gen, Index boundary_steps, const Tolerances& tol) {
  if (boundary_steps < 1) throw Error(ErrorCode::InvalidArgument, "boundary_steps must be >= 1");
  require_conditions(gen);
  ExitReport r;
  r.max_closure_residual = -std::numeric_limits<double>::infinity();
  for (Index j = 0; j < boundary_steps; ++j) {
    const Complex x3 = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(boundary_steps));
    std::vector<JointEigenvalue> eigs;
    try {
      eigs = pencil_points(gen.A1, gen.A2, x3, tol, static_cast<std::uint64_t>(j));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TriangularizationFailed && e.code() != ErrorCode::NotCommuting) throw;
      ++r.violations;
      continue;
    }
    for (const JointEigenvalue& e : eigs) {
      const MembershipReport m = tetra_membership({e[0], e[1], x3}, tol.residual_tol);
      ++r.points;
      r.max_closure_residual = std::max(r.max_closure_residual, m.closure_residual);
      r.max_x3_deviation = std::max(r.max_x3_deviation, std::abs(std::abs(x3) - 1.0));
      if (!m.in_closed || !m.in_bE) ++r.violations;
    }
  }
  if (r.points == 0) r.max_closure_residual = 0.0;
  r.passed = r.violations == 0;
  return r;
}

EquivalenceReport dilation_variety_report(const CommutingTriple& t, const Tolerances& tol) {
  const PurityReport purity = is_pure(t.P(), tol);
  if (!purity.pure) {
    std::ostringstream os;
    os << "spectral margin " << purity.spectral_margin;
    throw Error(ErrorCode::NotPure, os.str());
  }
  const double eps = tol.residual_tol;
  EquivalenceReport r;
  const FundamentalPair g = adjoint_fundamental_pair(t, tol);
  r.f_conditions = fundamental_pair(t, tol).conditions_hold(eps);
  r.cond2 = g.conditions_hold(eps);

  const VarietyGenerators gen = variety_generator_check(g.F1, g.F2, tol);
  r.generators = gen.report;
  if (gen.report.non_strict) {
    r.cond3 = distinguished_exit_check(gen, 64, tol).passed;
    if (!gen.report.strict) r.warnings.emplace_back("circle sup is not certified below 1; only the non-strict form holds");
  }

  // pure model and its Laurent extension, built without presupposing the conditions
  const AnalyticSymbol phi{g.F1.adjoint(), g.F2};
  const AnalyticSymbol psi{g.F2.adjoint(), g.F1};
  Index n_blocks = 1;
  Matrix power = t.P();
  while (n_blocks < 400 && op_norm(power) > 1e-12) {
    power = power * t.P();
    ++n_blocks;
  }
  const Matrix w = orthonormalize_embedding(observability_map(t.P(), g.defect, n_blocks));
  const int degree = static_cast<int>(std::min<Index>(4, n_blocks - 1));
  r.compression_residual =
      verify_dilation(t, toeplitz_truncate(phi, n_blocks), toeplitz_truncate(psi, n_blocks),
                      toeplitz_truncate(AnalyticSymbol::shift(g.defect.rank), n_blocks), w, degree, tol)
          .max_residual;
  r.laurent_residual = laurent_interior_checks(laurent_extension(phi, psi, 4)).max();
  r.cond1 = r.compression_residual <= eps && r.laurent_residual <= eps && gen.report.circle_sup <= 1.0 + eps;

  if (r.cond1) {
    const DeterminantalPolys polys = determinantal_polys(g.F1, g.F2);
    bool inside = true;
    constexpr int kBoundarySteps = 64;
    for (int j = 0; j < kBoundarySteps && inside; ++j) {
      const Complex z = std::polar(1.0, kTwoPi * j / kBoundarySteps);
      const Index q = g.defect.rank;
      const std::vector<Matrix> family{phi.at(z), psi.at(z), z * Matrix::Identity(q, q)};
      try {
        for (const JointEigenvalue& e : joint_eigs(family, tol, static_cast<std::uint64_t>(j))) {
          const MembershipReport m = tetra_membership({e[0], e[1], e[2]}, eps);
          const double res = std::max({std::abs(polys.f1(e[0], e[2])), std::abs(polys.f2(e[1], e[2])),
                                       m.closure_residual});
          r.boundary_residual = std::max(r.boundary_residual, res);
          if (!m.in_bE || res > 100.0 * eps) inside = false;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::TriangularizationFailed && e.code() != ErrorCode::NotCommuting) throw;
        inside = false;
      }
    }
    r.cond4 = inside;
  }
  r.agree = r.cond1 == r.cond2 && r.cond2 == r.cond3 && r.cond3 == r.cond4;
  return r;
}

}  // namespace tetra
