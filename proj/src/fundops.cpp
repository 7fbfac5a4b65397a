#include "tetra/fundops.hpp"

#include "tetra/error.hpp"

#include <sstream>

namespace tetra {

DefectData defect(const Matrix& p, const Tolerances& tol) {
  require_square(p, "P");
  const double norm = op_norm(p);
  if (norm > 1.0 + tol.residual_tol) {
    std::ostringstream os;
    os << "P has norm " << norm;
    throw Error(ErrorCode::NotAContraction, os.str());
  }
  const Index n = p.rows();
  const Matrix m = Matrix::Identity(n, n) - p.adjoint() * p;
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5);
  Eigen::VectorXd values = es.eigenvalues();
  const double threshold = tol.rank_threshold(n, 1.0);
  for (Index i = 0; i < n; ++i) {
    if (values(i) < threshold) values(i) = 0.0;
  }
  DefectData d;
  const Eigen::VectorXd roots = values.cwiseSqrt();
  d.D = es.eigenvectors() * roots.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  // eigenvalues ascend, so the defect directions are the trailing columns
  Index first = 0;
  while (first < n && values(first) == 0.0) ++first;
  d.rank = n - first;
  d.basis = es.eigenvectors().rightCols(d.rank);
  d.singvals = roots.tail(d.rank);
  return d;
}

Matrix embed(const DefectData& d, const Matrix& x) { return d.basis * x * d.basis.adjoint(); }

double fundamental_residual(const DefectData& d, const Matrix& x, const Matrix& target) {
  return op_norm(d.D * embed(d, x) * d.D - target);
}

FundamentalPair fundamental_pair_unchecked(const Matrix& a, const Matrix& b, const Matrix& p,
                                           const Tolerances& tol) {
  require_square(a, "A");
  if (b.rows() != a.rows() || p.rows() != a.rows() || !is_square(b) || !is_square(p)) {
    throw Error(ErrorCode::DimensionMismatch, "A, B and P must have the same size");
  }
  FundamentalPair fp;
  fp.defect = defect(p, tol);
  const DefectData& d = fp.defect;
  const Matrix target1 = a - b.adjoint() * p;
  const Matrix target2 = b - a.adjoint() * p;
  Matrix scale(d.rank, d.rank);
  for (Index i = 0; i < d.rank; ++i) {
    for (Index j = 0; j < d.rank; ++j) scale(i, j) = 1.0 / (d.singvals(i) * d.singvals(j));
  }
  fp.F1 = (d.basis.adjoint() * target1 * d.basis).cwiseProduct(scale);
  fp.F2 = (d.basis.adjoint() * target2 * d.basis).cwiseProduct(scale);
  fp.residual1 = fundamental_residual(d, fp.F1, target1);
  fp.residual2 = fundamental_residual(d, fp.F2, target2);
  if (d.rank > 0) {
    fp.commutator_norm = op_norm(commutator(fp.F1, fp.F2));
    fp.selfcomm_gap = selfcommutator_gap(fp.F1, fp.F2);
    fp.circle_numrad_sup = circle_sup_numrad(fp.F1.adjoint(), fp.F2, tol);
  }
  return fp;
}

FundamentalPair fundamental_pair(const CommutingTriple& t, const Tolerances& tol) {
  FundamentalPair fp = fundamental_pair_unchecked(t.A(), t.B(), t.P(), tol);
  if (fp.residual() > 100.0 * tol.residual_tol) {
    std::ostringstream os;
    os << "fundamental equation residuals " << fp.residual1 << ", " << fp.residual2;
    throw Error(ErrorCode::UnsolvableWithinTolerance, os.str());
  }
  return fp;
}

FundamentalPair adjoint_fundamental_pair(const CommutingTriple& t, const Tolerances& tol) {
  return fundamental_pair(t.adjoint(), tol);
}

SauBhReport sau_bh_crosscheck(const CommutingTriple& t, const Tolerances& tol) {
  SauBhReport r;
  r.F = fundamental_pair(t, tol);
  r.G = adjoint_fundamental_pair(t, tol);
  r.f_conditions = r.F.conditions_hold(tol.residual_tol);
  r.g_conditions = r.G.conditions_hold(tol.residual_tol);
  r.agree = r.f_conditions == r.g_conditions;
  return r;
}

}  // namespace tetra
