#pragma once

#include "tetra/models.hpp"
#include "tetra/numerics.hpp"

#include <string>
#include <vector>

namespace tetra {

/// Projection Q and unitary W with φ(z) = Q^⊥W + zQW.
struct BCLPair {
  Matrix Q;
  Matrix W;
};

/// W = φ(1), Q = (I − φ(−1)φ(1)*)/2. Throws NotTriangularSymbol when φ is not
/// of the form Q^⊥W + zQW.
BCLPair bcl_extract(const AnalyticSymbol& phi, const Tolerances& tol = {});

struct BCLReport {
  bool inner = false;
  bool commuting = false;
  bool product_is_z = false;
  bool partners = false;
  double inner_residual = 0.0;
  double commute_residual = 0.0;
  double product_residual = 0.0;
  double partner_residual = 0.0;
  std::vector<std::string> failed;
  bool passed() const { return failed.empty(); }
};

/// Checks an n-tuple of symbols: each inner, pairwise commuting products,
/// ordered product z·I, and for each i the product of the others equal to
/// C1ᵢ* + zC0ᵢ*.
BCLReport bcl_verify_n(const std::vector<AnalyticSymbol>& symbols, const Tolerances& tol = {});

struct BCLExtraction {
  std::vector<BCLPair> pairs;
  /// Fundamental-operator reading (C0ᵢ*, C1ᵢ) of each symbol.
  std::vector<std::pair<Matrix, Matrix>> fundamental;
};

/// Throws VerificationFailed naming the failed checks of bcl_verify_n.
BCLExtraction bcl_extract_n(const std::vector<AnalyticSymbol>& symbols, const Tolerances& tol = {});

/// Factorization data: Φ = (P + zP^⊥)U*, Ψ = U(P^⊥ + zP) on E = C^{E_dim},
/// and J an isometry from H into the N-block section of H²(E).
struct DSSCertificate {
  Index E_dim = 0;
  Matrix P;
  Matrix U;
  Index N = 0;
  Matrix J;
};

AnalyticSymbol dss_phi(const Matrix& p, const Matrix& u);
AnalyticSymbol dss_psi(const Matrix& p, const Matrix& u);

/// Between (Q, W) with φ = Q^⊥W + zQW and (P, U) with φ = (P + zP^⊥)U*.
std::pair<Matrix, Matrix> bcl_to_dss(const BCLPair& qw);
BCLPair dss_to_bcl(const Matrix& p, const Matrix& u);

struct DSSReport {
  double projection_defect = 0.0;
  double unitarity_defect = 0.0;
  double isometry_defect = 0.0;
  double coinvariance_phi = 0.0;
  double coinvariance_psi = 0.0;
  double coinvariance_z = 0.0;
  double cond_i_phipsi = 0.0;  // J*T_{ΦΨ}J − J*T_zJ
  double cond_i_psiphi = 0.0;  // J*T_{ΨΦ}J − J*T_zJ
  double cond_ii_t1 = 0.0;     // J*T_ΦJ − T1
  double cond_ii_t2 = 0.0;     // J*T_ΨJ − T2
  double commutator = 0.0;
  double spectral_margin = 0.0;
  std::vector<std::string> failed;

  bool passed() const { return failed.empty(); }
  double max_residual() const;
};

/// Every residual is reported; `failed` names the conditions above tolerance.
/// Throws only on malformed shapes.
DSSReport dss_verify(const Matrix& t1, const Matrix& t2, const DSSCertificate& cert, const Tolerances& tol = {});

/// Builds a certificate from the adjoint fundamental pair of (T1, T2, T1T2).
/// Throws GConditionsFail, NotTriangularSymbol, NotPure or VerificationFailed.
DSSCertificate dss_construct(const Matrix& t1, const Matrix& t2, const Tolerances& tol = {},
                             Index max_blocks = 400);

}  // namespace tetra
