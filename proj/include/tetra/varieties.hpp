#pragma once

#include "tetra/geometry.hpp"
#include "tetra/numerics.hpp"
#include "tetra/triples.hpp"

#include <string>
#include <vector>

namespace tetra {

struct GeneratorReport {
  double commutator = 0.0;
  double selfcomm_gap = 0.0;
  /// Sampled sup over |z| = 1 of ‖A1* + zA2‖ (a lower bound).
  double circle_sup = 0.0;
  /// Certified upper bound: best grid value plus the Lipschitz slack.
  double circle_upper_bound = 0.0;
  /// Commutator and self-commutator conditions within tolerance.
  bool algebraic = false;
  /// algebraic and certified sup < 1.
  bool strict = false;
  /// algebraic and sup <= 1 + tol.
  bool non_strict = false;
};

struct VarietyGenerators {
  Matrix A1;
  Matrix A2;
  GeneratorReport report;
};

VarietyGenerators variety_generator_check(const Matrix& a1, const Matrix& a2, const Tolerances& tol = {});

struct VarietyPoint {
  TetraPoint point;
  Index radial_index = 0;
  Index angular_index = 0;
  double abs_x3 = 0.0;
  double closure_residual = 0.0;
  bool in_open = false;
  bool in_closed = false;
  bool in_bE = false;
  /// Interior node (|x3| < 1) whose point is outside E beyond tolerance.
  bool flagged = false;
};

struct VarietySample {
  std::vector<VarietyPoint> points;
  Index radial_steps = 0;
  Index angular_steps = 0;
  Index skipped_nodes = 0;
  Index flagged = 0;
};

/// Joint eigenvalues of (A1* + x3A2, A2* + x3A1) for x3 on the polar grid
/// r = i/radial (i = 0..radial), θ = 2πj/angular. Throws ConditionsFail when
/// the generators do not satisfy the non-strict conditions.
VarietySample variety_sample(const VarietyGenerators& gen, Index radial_steps, Index angular_steps,
                             const Tolerances& tol = {});

/// Dense coefficients c(j, k) of Σ c(j,k) z^j w^k.
struct BivariatePoly {
  Matrix coeffs;
  Complex operator()(Complex z, Complex w) const;
};

/// f1(z1, z3) = det(F* + z3G − z1I) (coefficient rows index z1, columns z3)
/// and f2(z2, z3) = det(G* + z3F − z2I).
struct DeterminantalPolys {
  BivariatePoly f1;
  BivariatePoly f2;
};

DeterminantalPolys determinantal_polys(const Matrix& f, const Matrix& g);

struct ExitReport {
  Index points = 0;
  double max_closure_residual = 0.0;
  double max_x3_deviation = 0.0;
  Index violations = 0;
  bool passed = false;
};

/// Samples |x3| = 1 and requires every pencil point to lie in the distinguished
/// boundary. Throws ConditionsFail.
ExitReport distinguished_exit_check(const VarietyGenerators& gen, Index boundary_steps, const Tolerances& tol = {});

struct EquivalenceReport {
  bool cond1 = false;  // Laurent extension of the pure model is an E-unitary dilation
  bool cond2 = false;  // [G1,G2] = 0 and [G1*,G1] = [G2*,G2]
  bool cond3 = false;  // (G1, G2) generate a distinguished variety
  bool cond4 = false;  // cond1 plus boundary spectrum in bĒ ∩ {f1 = f2 = 0}
  bool agree = false;
  bool f_conditions = false;
  double compression_residual = 0.0;
  double laurent_residual = 0.0;
  double boundary_residual = 0.0;
  GeneratorReport generators;
  std::vector<std::string> warnings;
};

/// Throws NotPure.
EquivalenceReport dilation_variety_report(const CommutingTriple& t, const Tolerances& tol = {});

}  // namespace tetra
