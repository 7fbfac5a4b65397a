#pragma once

#include "tetra/numerics.hpp"
#include "tetra/triples.hpp"

namespace tetra {

/// D = (I − P*P)^{1/2} with its spectral data. `basis` spans the defect space
/// and D = basis · diag(singvals) · basis*.
struct DefectData {
  Matrix D;
  Index rank = 0;
  Matrix basis;
  Eigen::VectorXd singvals;
};

/// Throws NotAContraction when ‖P‖ > 1 + residual_tol.
DefectData defect(const Matrix& p, const Tolerances& tol = {});

/// Solution (F1, F2) of A − B*P = D F1 D, B − A*P = D F2 D, in coordinates of
/// the defect basis.
struct FundamentalPair {
  Matrix F1;
  Matrix F2;
  double residual1 = 0.0;
  double residual2 = 0.0;
  double commutator_norm = 0.0;
  double selfcomm_gap = 0.0;
  /// sup over |z| = 1 of the numerical radius of F1* + zF2.
  double circle_numrad_sup = 0.0;
  DefectData defect;

  double residual() const { return std::max(residual1, residual2); }
  /// [F1, F2] = 0 and [F1*, F1] = [F2*, F2] within `eps`.
  bool conditions_hold(double eps) const { return commutator_norm <= eps && selfcomm_gap <= eps; }
};

/// Never throws on large residuals; they are only reported.
FundamentalPair fundamental_pair_unchecked(const Matrix& a, const Matrix& b, const Matrix& p,
                                           const Tolerances& tol = {});

/// Throws UnsolvableWithinTolerance when a residual exceeds 100 · residual_tol.
FundamentalPair fundamental_pair(const CommutingTriple& t, const Tolerances& tol = {});

/// fundamental_pair of (A*, B*, P*), living on the defect space of P*.
FundamentalPair adjoint_fundamental_pair(const CommutingTriple& t, const Tolerances& tol = {});

/// Residual of D X D = target for a defect-coordinate X.
double fundamental_residual(const DefectData& d, const Matrix& x, const Matrix& target);

/// basis · X · basis*: a defect-coordinate operator on the full space.
Matrix embed(const DefectData& d, const Matrix& x);

struct SauBhReport {
  bool f_conditions = false;
  bool g_conditions = false;
  bool agree = false;
  FundamentalPair F;
  FundamentalPair G;
};

SauBhReport sau_bh_crosscheck(const CommutingTriple& t, const Tolerances& tol = {});

}  // namespace tetra
