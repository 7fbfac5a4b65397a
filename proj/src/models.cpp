#include "tetra/models.hpp"

#include "tetra/error.hpp"

#include <sstream>

namespace tetra {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || !is_square(a)) {
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + ": coefficients must be equal square shapes");
  }
}

}  // namespace

AnalyticSymbol AnalyticSymbol::constant(const Matrix& c0) {
  return {c0, Matrix::Zero(c0.rows(), c0.cols())};
}

AnalyticSymbol AnalyticSymbol::shift(Index d) {
  return {Matrix::Zero(d, d), Matrix::Identity(d, d)};
}

Matrix MatrixPolynomial::at(Complex z) const {
  Matrix sum = Matrix::Zero(dim(), dim());
  Complex zk = 1.0;
  for (const Matrix& c : coeffs) {
    sum += zk * c;
    zk *= z;
  }
  return sum;
}

MatrixPolynomial symbol_mul(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  if (a.coeffs.empty() || b.coeffs.empty()) return {};
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "symbol_mul: dimensions differ");
  const Index d = a.dim();
  MatrixPolynomial out;
  out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Matrix::Zero(d, d));
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  }
  return out;
}

MatrixPolynomial symbol_mul(const AnalyticSymbol& a, const AnalyticSymbol& b) {
  require_same_shape(a.C0, a.C1, "symbol_mul");
  require_same_shape(b.C0, b.C1, "symbol_mul");
  return symbol_mul(MatrixPolynomial::from(a), MatrixPolynomial::from(b));
}

double coefficient_distance(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  const Index d = std::max(a.dim(), b.dim());
  const std::size_t n = std::max(a.coeffs.size(), b.coeffs.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Matrix x = k < a.coeffs.size() ? a.coeffs[k] : Matrix::Zero(d, d);
    const Matrix y = k < b.coeffs.size() ? b.coeffs[k] : Matrix::Zero(d, d);
    if (x.rows() != y.rows()) throw Error(ErrorCode::DimensionMismatch, "coefficient_distance: dimensions differ");
    worst = std::max(worst, op_norm(x - y));
  }
  return worst;
}

MatrixPolynomial z_identity(Index d) { return {{Matrix::Zero(d, d), Matrix::Identity(d, d)}}; }

double symbol_inner_residual(const AnalyticSymbol& phi) {
  require_same_shape(phi.C0, phi.C1, "symbol");
  const Index d = phi.dim();
  return std::max(op_norm(phi.C0.adjoint() * phi.C1),
                  op_norm(phi.C0.adjoint() * phi.C0 + phi.C1.adjoint() * phi.C1 - Matrix::Identity(d, d)));
}

bool symbol_inner_check(const AnalyticSymbol& phi, const Tolerances& tol) {
  return symbol_inner_residual(phi) <= tol.residual_tol;
}

Matrix toeplitz_truncate(const MatrixPolynomial& phi, Index n_blocks) {
  if (n_blocks < 1) throw Error(ErrorCode::InvalidArgument, "toeplitz_truncate needs N >= 1");
  const Index d = phi.dim();
  Matrix t = Matrix::Zero(n_blocks * d, n_blocks * d);
  for (std::size_t k = 0; k < phi.coeffs.size(); ++k) {
    for (Index j = 0; j + static_cast<Index>(k) < n_blocks; ++j) {
      t.block((j + static_cast<Index>(k)) * d, j * d, d, d) = phi.coeffs[k];
    }
  }
  return t;
}

Matrix toeplitz_truncate(const AnalyticSymbol& phi, Index n_blocks) {
  require_same_shape(phi.C0, phi.C1, "toeplitz_truncate");
  return toeplitz_truncate(MatrixPolynomial::from(phi), n_blocks);
}

ModelConditions model_conditions(const Matrix& f1, const Matrix& f2, const Tolerances& tol) {
  require_same_shape(f1, f2, "model_conditions");
  ModelConditions c;
  if (f1.rows() == 0) {
    c.holds = true;
    return c;
  }
  c.commutator = op_norm(commutator(f1, f2));
  c.selfcomm_gap = selfcommutator_gap(f1, f2);
  c.circle_sup = circle_extremes(f1.adjoint(), f2, tol).sup_opnorm;
  c.holds = c.commutator <= tol.residual_tol && c.selfcomm_gap <= tol.residual_tol &&
            c.circle_sup <= 1.0 + tol.residual_tol;
  return c;
}

PureModel pure_e_isometry_model(const Matrix& f1, const Matrix& f2, const Tolerances& tol) {
  PureModel m;
  m.conditions = model_conditions(f1, f2, tol);
  const ModelConditions& c = m.conditions;
  std::ostringstream os;
  if (c.commutator > tol.residual_tol) {
    os << "condition (1) [F1,F2] = 0 fails: " << c.commutator;
  } else if (c.selfcomm_gap > tol.residual_tol) {
    os << "condition (2) [F1*,F1] = [F2*,F2] fails: " << c.selfcomm_gap;
  } else if (c.circle_sup > 1.0 + tol.residual_tol) {
    os << "condition (3) sup ||F1* + zF2|| <= 1 fails: " << c.circle_sup;
  }
  if (!os.str().empty()) throw Error(ErrorCode::ConditionsViolated, os.str());
  m.phi = {f1.adjoint(), f2};
  m.psi = {f2.adjoint(), f1};
  return m;
}

TriangularModel triangular_model(const Matrix& q, const Matrix& w, const Tolerances& tol) {
  require_same_shape(q, w, "triangular_model");
  const double pd = projection_defect(q);
  if (pd > tol.residual_tol) {
    std::ostringstream os;
    os << "Q projection defect " << pd;
    throw Error(ErrorCode::NotAProjection, os.str());
  }
  const double ud = unitarity_defect(w);
  if (ud > tol.residual_tol) {
    std::ostringstream os;
    os << "W unitarity defect " << ud;
    throw Error(ErrorCode::NotUnitary, os.str());
  }
  const Index d = q.rows();
  const Matrix qperp = Matrix::Identity(d, d) - q;
  TriangularModel m;
  m.phi = {qperp * w, q * w};
  m.psi = {w.adjoint() * q, w.adjoint() * qperp};
  const MatrixPolynomial z = z_identity(d);
  m.product_residual = std::max({coefficient_distance(symbol_mul(m.phi, m.psi), z),
                                 coefficient_distance(symbol_mul(m.psi, m.phi), z),
                                 symbol_inner_residual(m.phi), symbol_inner_residual(m.psi)});
  if (m.product_residual > tol.residual_tol) {
    std::ostringstream os;
    os << "model symbols miss z*I by " << m.product_residual;
    throw Error(ErrorCode::VerificationFailed, os.str());
  }
  return m;
}

double triangular_symbol_residual(const Matrix& f1, const Matrix& f2) {
  require_same_shape(f1, f2, "triangular_symbol_identities");
  const Index d = f1.rows();
  const Matrix id = Matrix::Identity(d, d);
  return std::max({op_norm(f1 * f2), op_norm(f2 * f1),
                   op_norm(f1.adjoint() * f1 + f2 * f2.adjoint() - id),
                   op_norm(f1 * f1.adjoint() + f2.adjoint() * f2 - id)});
}

bool triangular_symbol_identities(const Matrix& f1, const Matrix& f2, const Tolerances& tol) {
  return triangular_symbol_residual(f1, f2) <= tol.residual_tol;
}

}  // namespace tetra
