#pragma once

#include "tetra/numerics.hpp"
#include "tetra/polynomial.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace tetra {

struct TetraPoint {
  Complex x1;
  Complex x2;
  Complex x3;
};

/// Membership of a point in the tetrablock E and its closure.
///
/// Verdicts come from the criterion |x1 − x̄2x3| + |x1x2 − x3| < 1 − |x2|²
/// (lhs2/rhs2). The symmetric criterion (lhs3/rhs3, roles of x1 and x2
/// swapped) is evaluated alongside and its verdicts are kept in open3/closed3.
struct MembershipReport {
  bool in_open = false;
  bool in_closed = false;
  bool in_bE = false;
  bool is_triangular = false;
  double lhs2 = 0.0;
  double rhs2 = 0.0;
  double lhs3 = 0.0;
  double rhs3 = 0.0;
  bool open3 = false;
  bool closed3 = false;
  /// Some inequality is within tol of equality.
  bool marginal = false;
  /// lhs2 − rhs2; non-positive on the closure.
  double closure_residual = 0.0;
  std::optional<Complex> alpha1;
  std::optional<Complex> alpha2;
};

MembershipReport tetra_membership(const TetraPoint& p, double tol = 1e-8);

/// μ_E(M) < 1 for a 2×2 matrix, i.e. (m11, m22, det M) ∈ E.
bool mu_diag2(const Matrix& m, double tol = 1e-8);

/// Points (a11, a22, det A) for random 2×2 A with ‖A‖ ≤ 1.
std::vector<TetraPoint> sample_closure(std::size_t n, std::uint64_t seed);

/// Random points of the distinguished boundary, (u11, u22, det U) for unitary U.
std::vector<TetraPoint> sample_distinguished_boundary(std::size_t n, std::uint64_t seed);

/// Point of the distinguished boundary with x3 = e^{iψ}, x2 = ρe^{iθ}, x1 = x̄2·x3.
TetraPoint distinguished_point(double psi, double theta, double rho);

struct SupEstimate {
  double value = 0.0;
  std::size_t closure_samples = 0;
  std::size_t boundary_samples = 0;
  /// Always true: sampling can only under-estimate the supremum.
  bool lower_bound = true;
};

/// Estimate of sup |f| over the closed tetrablock from n closure samples,
/// n distinguished-boundary samples and local refinement on the boundary.
/// `extra` points (assumed to lie in the closure) are included as samples.
SupEstimate sup_poly_closure(const Polynomial3& f, std::size_t n, std::uint64_t seed,
                             const std::vector<TetraPoint>& extra = {});

/// (x1, x2, x3) in the closure of {(z1, z2, z1z2) : |z1|, |z2| < 1}.
bool triangular_closure_membership(const TetraPoint& p, double tol = 1e-8);

}  // namespace tetra
