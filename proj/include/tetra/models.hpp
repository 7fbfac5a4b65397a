#pragma once

#include "tetra/numerics.hpp"

#include <string>
#include <vector>

namespace tetra {

/// φ(z) = C0 + zC1 with d×d coefficients.
struct AnalyticSymbol {
  Matrix C0;
  Matrix C1;

  Index dim() const { return C0.rows(); }
  Matrix at(Complex z) const { return C0 + z * C1; }
  /// z·φ(z)* on the circle, as an analytic symbol: C1* + zC0*.
  AnalyticSymbol reflected() const { return {C1.adjoint(), C0.adjoint()}; }

  static AnalyticSymbol constant(const Matrix& c0);
  static AnalyticSymbol shift(Index d);  // zI
};

/// Matrix polynomial Σ z^k D_k of arbitrary degree.
struct MatrixPolynomial {
  std::vector<Matrix> coeffs;

  Index dim() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  Matrix at(Complex z) const;

  static MatrixPolynomial from(const AnalyticSymbol& s) { return {{s.C0, s.C1}}; }
};

MatrixPolynomial symbol_mul(const MatrixPolynomial& a, const MatrixPolynomial& b);
MatrixPolynomial symbol_mul(const AnalyticSymbol& a, const AnalyticSymbol& b);

/// max_k ‖D_k − E_k‖ with the shorter polynomial padded by zeros.
double coefficient_distance(const MatrixPolynomial& a, const MatrixPolynomial& b);

/// The polynomial z·I_d.
MatrixPolynomial z_identity(Index d);

/// φ(z)*φ(z) = I on the circle, i.e. C0*C1 = 0 and C0*C0 + C1*C1 = I.
bool symbol_inner_check(const AnalyticSymbol& phi, const Tolerances& tol = {});
double symbol_inner_residual(const AnalyticSymbol& phi);

/// N-block section of the Toeplitz operator: block (i, j) is D_{i−j}.
/// Vectors are coefficient stacks (h_0, …, h_{N−1}) and T_z is the block
/// down-shift.
Matrix toeplitz_truncate(const MatrixPolynomial& phi, Index n_blocks);
Matrix toeplitz_truncate(const AnalyticSymbol& phi, Index n_blocks);

struct ModelConditions {
  double commutator = 0.0;     // ‖[F1, F2]‖
  double selfcomm_gap = 0.0;   // ‖[F1*, F1] − [F2*, F2]‖
  double circle_sup = 0.0;     // sup_{|z|=1} ‖F1* + zF2‖
  bool holds = false;
};

ModelConditions model_conditions(const Matrix& f1, const Matrix& f2, const Tolerances& tol = {});

struct PureModel {
  AnalyticSymbol phi;  // F1* + zF2
  AnalyticSymbol psi;  // F2* + zF1
  ModelConditions conditions;
};

/// Throws ConditionsViolated naming the first failing condition.
PureModel pure_e_isometry_model(const Matrix& f1, const Matrix& f2, const Tolerances& tol = {});

struct TriangularModel {
  AnalyticSymbol phi;  // Q^⊥W + zQW
  AnalyticSymbol psi;  // W*Q + zW*Q^⊥
  double product_residual = 0.0;
};

/// Throws NotAProjection / NotUnitary on bad input and VerificationFailed if
/// the products φψ, ψφ are not z·I.
TriangularModel triangular_model(const Matrix& q, const Matrix& w, const Tolerances& tol = {});

/// Largest deviation in F1F2 = F2F1 = 0 and F1*F1 + F2F2* = F1F1* + F2*F2 = I.
double triangular_symbol_residual(const Matrix& f1, const Matrix& f2);
bool triangular_symbol_identities(const Matrix& f1, const Matrix& f2, const Tolerances& tol = {});

}  // namespace tetra
