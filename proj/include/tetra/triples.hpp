#pragma once

#include "tetra/geometry.hpp"
#include "tetra/numerics.hpp"
#include "tetra/polynomial.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tetra {

/// Ordered triple (A, B, P) of equal-size square matrices together with the
/// commutator norms ‖[A,B]‖, ‖[A,P]‖, ‖[B,P]‖.
class CommutingTriple {
 public:
  CommutingTriple(Matrix a, Matrix b, Matrix p);

  const Matrix& A() const { return a_; }
  const Matrix& B() const { return b_; }
  const Matrix& P() const { return p_; }
  Index dim() const { return a_.rows(); }
  const std::array<double, 3>& comm_residuals() const { return residuals_; }

  /// Each commutator below residual_tol · max(1, ‖X‖‖Y‖).
  bool commuting(const Tolerances& tol) const;

  /// Throws NotCommuting unless commuting(tol).
  void require_commuting(const Tolerances& tol) const;

  CommutingTriple adjoint() const;

 private:
  Matrix a_;
  Matrix b_;
  Matrix p_;
  std::array<double, 3> residuals_{};
};

enum class Verdict { EUnitary, EIsometry, ECoisometry, CandidateEContraction, NotEContraction };

const char* to_string(Verdict v);

struct ClassificationReport {
  bool commuting = false;
  bool e_unitary = false;
  bool e_isometry = false;
  bool e_coisometry = false;
  std::array<double, 3> contraction_norms{};
  bool spectrum_in_closure = false;
  std::vector<TetraPoint> spectrum;
  double fundamental_residual = 0.0;
  /// Largest ‖f(A,B,P)‖ / sup|f| seen during randomized screening (0 if skipped).
  double von_neumann_ratio = 0.0;
  Verdict verdict = Verdict::NotEContraction;
  bool triangular = false;
};

struct ClassifyOptions {
  std::uint64_t seed = 0;
  /// Random polynomials used for von Neumann screening of candidates.
  int screening_polys = 8;
  int screening_degree = 3;
  std::size_t screening_samples = 2000;
};

/// Throws NotCommuting when the commutators exceed tolerance.
ClassificationReport classify_triple(const CommutingTriple& t, const Tolerances& tol = {},
                                     const ClassifyOptions& opts = {});

struct PurityReport {
  bool pure = false;
  double spectral_margin = 0.0;
};

/// For matrices P*^n → 0 iff r(P) < 1. Throws NotAContraction.
PurityReport is_pure(const Matrix& p, const Tolerances& tol = {});

struct CanonicalDecomposition {
  Matrix unitary_basis;  // orthonormal columns, P restricted here is unitary
  Matrix cnu_basis;      // orthonormal columns spanning the complement
  double off_block_residual = 0.0;
};

/// Largest reducing subspace on which P is unitary. Throws NotAContraction.
CanonicalDecomposition canonical_decomposition(const Matrix& p, const Tolerances& tol = {});

/// Joint eigenvalues of (A, B, P). Throws NotCommuting.
std::vector<TetraPoint> taylor_spectrum(const CommutingTriple& t, const Tolerances& tol = {},
                                        std::uint64_t seed = 0);

struct VonNeumannReport {
  double max_ratio = 0.0;
  Polynomial3 witness_poly;
  double safety_factor = 1.05;
  bool violation = false;
  std::size_t sup_samples = 0;
};

/// ‖f(A,B,P)‖ / (estimated sup of |f| over the closure) for one polynomial.
/// The joint spectrum points lying in the closure join the sup samples.
double von_neumann_ratio(const CommutingTriple& t, const Polynomial3& f, std::size_t samples,
                         std::uint64_t seed, const Tolerances& tol = {});

/// Randomized screening over `polys` random polynomials of degree <= degree.
VonNeumannReport von_neumann_spot_check(const CommutingTriple& t, int degree, int polys,
                                        std::uint64_t seed, const Tolerances& tol = {},
                                        std::size_t sup_samples = 10000);

}  // namespace tetra
