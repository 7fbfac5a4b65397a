#pragma once

// Dense complex linear-algebra kernel shared by every other module.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace tetra {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Numerical thresholds used throughout the toolkit.
///
/// Singular values (or eigenvalues of a PSD operator) below
/// `rank_tol_factor * dim * scale` are treated as zero, where `scale` is the
/// natural magnitude of the operator being inspected.
struct Tolerances {
  double residual_tol = 1e-8;
  double rank_tol_factor = 1e-10;
  int circle_grid = 512;
  int refine_iters = 40;

  /// Throws InvalidArgument unless every field is positive and circle_grid >= 16.
  void validate() const;

  double rank_threshold(Index dim, double scale) const {
    return rank_tol_factor * static_cast<double>(dim) * scale;
  }

  /// Default tolerances, with residual_tol taken from TETRA_TOL when set.
  static Tolerances from_environment();
};

// --- small helpers -------------------------------------------------------

/// Largest singular value. Exact (SVD) for small matrices; for matrices whose
/// smaller side exceeds 256 the cheaper bound min(‖X‖_F, sqrt(‖X‖_1‖X‖_∞)) is
/// returned, which is never below the true operator norm.
double op_norm(const Matrix& m);

Matrix commutator(const Matrix& x, const Matrix& y);

/// ‖[X*,X] − [Y*,Y]‖.
double selfcommutator_gap(const Matrix& x, const Matrix& y);

bool commute(const Matrix& x, const Matrix& y, const Tolerances& tol);

bool is_square(const Matrix& m);

void require_square(const Matrix& m, const char* what);

/// ‖X*X − I‖ and ‖XX* − I‖ maximum.
double unitarity_defect(const Matrix& x);

/// ‖X*X − I‖ only.
double isometry_defect(const Matrix& x);

/// max(‖X² − X‖, ‖X* − X‖).
double projection_defect(const Matrix& x);

/// Reproducible standard complex Gaussian matrix (real and imaginary parts
/// N(0, 1/2)).
Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed);

// --- operations ----------------------------------------------------------

/// Hermitian PSD square root. Eigenvalues below the rank threshold
/// (scale = largest |eigenvalue|) are clamped to zero.
Matrix hermitian_psd_sqrt(const Matrix& m, const Tolerances& tol = {});

/// Eigen-decomposition of a Hermitian PSD matrix with clamping against an
/// explicit scale. Eigenvalues are ascending.
struct ClampedEigen {
  Eigen::VectorXd values;   // clamped, ascending
  Matrix vectors;           // orthonormal columns
  double threshold = 0.0;   // values below this were zeroed
};

ClampedEigen clamped_hermitian_eigen(const Matrix& m, double scale, const Tolerances& tol);

/// Joint eigenvalues of a commuting family. Result has one k-tuple per
/// dimension (with multiplicity); tuple j holds the j-th diagonal entry of
/// every simultaneously triangularized matrix.
using JointEigenvalue = std::vector<Complex>;

std::vector<JointEigenvalue> joint_eigs(std::span<const Matrix> family, const Tolerances& tol = {},
                                        std::uint64_t seed = 0);

struct SpectralQuantities {
  double op_norm = 0.0;
  double spectral_radius = 0.0;
  double numerical_radius = 0.0;
};

SpectralQuantities spectral_quantities(const Matrix& m, const Tolerances& tol = {});

double spectral_radius(const Matrix& m);

/// Numerical radius max_θ λ_max((e^{iθ}M + e^{-iθ}M*)/2), grid plus golden
/// section refinement.
double numerical_radius(const Matrix& m, const Tolerances& tol = {});

/// Suprema over the unit circle of ‖C0 + zC1‖ and ω(C0 + zC1).
///
/// Both values are lower bounds obtained by sampling and local refinement.
/// `opnorm_upper_bound` adds the Lipschitz slack ‖C1‖·π/circle_grid to the
/// best grid value and is a certified upper bound for sup ‖C0 + zC1‖.
struct CircleExtremes {
  double sup_opnorm = 0.0;
  double sup_numrad = 0.0;
  double argmax_angle = 0.0;
  double grid_resolution = 0.0;
  double opnorm_upper_bound = 0.0;
};

CircleExtremes circle_extremes(const Matrix& c0, const Matrix& c1, const Tolerances& tol = {});

/// The sup_numrad field of circle_extremes on its own.
double circle_sup_numrad(const Matrix& c0, const Matrix& c1, const Tolerances& tol = {});

/// Unitary G with G·us.col(i) ≈ vs.col(i). Requires equal Gram matrices.
Matrix unitary_extension(const Matrix& us, const Matrix& vs, const Tolerances& tol = {});

Matrix unitary_extension(std::span<const Vector> us, std::span<const Vector> vs,
                         const Tolerances& tol = {});

/// Orthonormal basis of the orthogonal complement of span(basis) in C^dim.
Matrix orthogonal_complement(const Matrix& basis, Index dim);

/// Orthonormal basis for the null space of m (columns), using the rank
/// threshold scaled by the largest singular value (at least `scale`).
Matrix null_space(const Matrix& m, double scale, const Tolerances& tol);

/// Numerical rank with the dimension-aware threshold.
Index numerical_rank(const Matrix& m, const Tolerances& tol);

/// Golden-section maximisation of a unimodal-near-the-optimum function on
/// [a, b]. Returns the argmax.
template <typename F>
double golden_maximize(F&& f, double a, double b, int iters) {
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iters; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc > fd ? c : d;
}

}  // namespace tetra
