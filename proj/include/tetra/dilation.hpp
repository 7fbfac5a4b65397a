#pragma once

#include "tetra/fundops.hpp"
#include "tetra/models.hpp"
#include "tetra/numerics.hpp"
#include "tetra/triples.hpp"

#include <array>
#include <map>

namespace tetra {

/// Block layout of a truncated dilation space: `past_blocks` copies of the
/// defect space of P, then H, then `future_blocks` copies of the defect space
/// of P*.
struct BlockLayout {
  Index past_blocks = 0;
  Index past_dim = 0;
  Index center_dim = 0;
  Index future_blocks = 0;
  Index future_dim = 0;

  Index total() const { return past_blocks * past_dim + center_dim + future_blocks * future_dim; }
  Index center_offset() const { return past_blocks * past_dim; }
  /// Offset of the block j steps before H (j = 1 is adjacent to H).
  Index past_offset(Index j) const { return (past_blocks - j) * past_dim; }
  /// Offset of the m-th block after H (m = 0 is adjacent to H).
  Index future_offset(Index m) const { return center_offset() + center_dim + m * future_dim; }
};

/// Residuals of the identities the unitary dilation satisfies away from the
/// outermost past and future blocks.
struct InteriorChecks {
  double t1_relation = 0.0;   // T1 − T2*U
  double t2_relation = 0.0;   // T2 − T1*U
  double unitarity = 0.0;     // U*U − I and UU* − I
  double commutators = 0.0;   // [T1,T2], [T1,U], [T2,U]
  double normality = 0.0;     // T_i*T_i − T_iT_i*
  double max() const;
};

struct BlockDilation {
  Matrix T1;
  Matrix T2;
  Matrix U;
  BlockLayout layout;
  Matrix H_embedding;
  int safe_degree = 0;
  InteriorChecks interior;
};

/// Throws UnsolvableWithinTolerance or FundamentalConditionsFail.
BlockDilation schaeffer_e_unitary_dilation(const CommutingTriple& t, Index k, const Tolerances& tol = {});

struct PureDilation {
  Matrix R1;
  Matrix R2;
  Matrix V;
  /// Observability embedding rescaled to an exact isometry.
  Matrix W_embedding;
  /// ‖W*W − I‖ of the raw truncated embedding.
  double embedding_defect = 0.0;
  Index n_blocks = 0;
  int safe_degree = 0;
  AnalyticSymbol phi;
  AnalyticSymbol psi;
};

/// Raw truncated observability map h ↦ (D·(P*)^m h)_{m<N} in the coordinates
/// of the defect basis of P*.
Matrix observability_map(const Matrix& p, const DefectData& defect_of_adjoint, Index n_blocks);

/// X·(X*X)^{-1/2}; columns of X must be linearly independent.
Matrix orthonormalize_embedding(const Matrix& x);

/// Throws NotPure or GConditionsFail.
PureDilation pure_e_isometric_dilation(const CommutingTriple& t, Index n_blocks, const Tolerances& tol = {});

/// (2N+1)-block section of the bilateral Laurent operators, blocks −N..N.
struct LaurentSection {
  Matrix M_phi;
  Matrix M_psi;
  Matrix M_z;
  Index N = 0;
  Index d = 0;
};

LaurentSection laurent_extension(const AnalyticSymbol& phi, const AnalyticSymbol& psi, Index n);

struct LaurentChecks {
  double z_unitarity = 0.0;   // interior unitarity of M_z
  double commutator = 0.0;    // [M_phi, M_psi]
  double phi_relation = 0.0;  // M_phi − M_psi* M_z
  double psi_relation = 0.0;  // M_psi − M_phi* M_z
  double normality = 0.0;
  double max() const;
};

/// Interior residuals (outermost blocks on both sides excluded).
LaurentChecks laurent_interior_checks(const LaurentSection& s);

struct AndoDilation {
  Matrix V1;
  Matrix V2;
  Matrix H_embedding;
  Index k_groups = 0;
  /// Leading coordinates spanning H ⊕ groups 1..K−2.
  Index protected_dim = 0;
  double commutator_defect = 0.0;
  double isometry_defect = 0.0;
  /// ‖V1 − V2*(V1V2)‖ on the protected range.
  double triangular_defect = 0.0;
  int safe_degree = 0;
};

/// Throws NotContractions, NotCommuting or VerificationFailed.
AndoDilation ando_dilation(const Matrix& t1, const Matrix& t2, Index k, const Tolerances& tol = {});

struct DilationReport {
  int max_degree_checked = 0;
  double max_residual = 0.0;
  std::map<std::array<int, 3>, double> per_monomial;
};

/// ‖E*·Q1^{m1}Q2^{m2}V^n·E − A^{m1}B^{m2}P^n‖ for m1 + m2 + n <= max_total_degree.
/// Throws EmbeddingNotIsometric.
DilationReport verify_dilation(const CommutingTriple& original, const Matrix& q1, const Matrix& q2,
                               const Matrix& v, const Matrix& embedding, int max_total_degree,
                               const Tolerances& tol = {});

/// verify_dilation restricted to monomials V1^m V2^n (m + n <= max_total_degree)
/// against T1^m T2^n.
DilationReport verify_pair_dilation(const Matrix& t1, const Matrix& t2, const Matrix& v1, const Matrix& v2,
                                    const Matrix& embedding, int max_total_degree, const Tolerances& tol = {});

/// dim span{V1^a V2^b E h : a + b <= degree}.
Index krylov_span_dimension(const Matrix& v1, const Matrix& v2, const Matrix& embedding, int degree,
                            const Tolerances& tol = {});

}  // namespace tetra
