#include "tetra/triples.hpp"

#include "tetra/error.hpp"
#include "tetra/fundops.hpp"

#include <limits>
#include <sstream>

namespace tetra {

namespace {

void require_contraction(const Matrix& p, const Tolerances& tol, const char* what) {
  const double n = op_norm(p);
  if (n > 1.0 + tol.residual_tol) {
    std::ostringstream os;
    os << what << " has norm " << n;
    throw Error(ErrorCode::NotAContraction, os.str());
  }
}

}  // namespace

CommutingTriple::CommutingTriple(Matrix a, Matrix b, Matrix p)
    : a_(std::move(a)), b_(std::move(b)), p_(std::move(p)) {
  require_square(a_, "A");
  require_square(b_, "B");
  require_square(p_, "P");
  if (b_.rows() != a_.rows() || p_.rows() != a_.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "A, B and P must have the same size");
  }
  if (!a_.allFinite() || !b_.allFinite() || !p_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "triple has non-finite entries");
  }
  residuals_ = {op_norm(commutator(a_, b_)), op_norm(commutator(a_, p_)), op_norm(commutator(b_, p_))};
}

bool CommutingTriple::commuting(const Tolerances& tol) const {
  const double na = op_norm(a_);
  const double nb = op_norm(b_);
  const double np = op_norm(p_);
  const std::array<double, 3> scale{na * nb, na * np, nb * np};
  for (std::size_t i = 0; i < 3; ++i) {
    if (residuals_[i] > tol.residual_tol * std::max(1.0, scale[i])) return false;
  }
  return true;
}

void CommutingTriple::require_commuting(const Tolerances& tol) const {
  if (!commuting(tol)) {
    std::ostringstream os;
    os << "commutator norms [A,B]=" << residuals_[0] << " [A,P]=" << residuals_[1]
       << " [B,P]=" << residuals_[2];
    throw Error(ErrorCode::NotCommuting, os.str());
  }
}

CommutingTriple CommutingTriple::adjoint() const {
  return CommutingTriple(a_.adjoint(), b_.adjoint(), p_.adjoint());
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::EUnitary: return "EUnitary";
    case Verdict::EIsometry: return "EIsometry";
    case Verdict::ECoisometry: return "ECoisometry";
    case Verdict::CandidateEContraction: return "CandidateEContraction";
    case Verdict::NotEContraction: return "NotEContraction";
  }
  return "Unknown";
}

ClassificationReport classify_triple(const CommutingTriple& t, const Tolerances& tol,
                                     const ClassifyOptions& opts) {
  t.require_commuting(tol);
  const double eps = tol.residual_tol;
  ClassificationReport r;
  r.commuting = true;
  r.contraction_norms = {op_norm(t.A()), op_norm(t.B()), op_norm(t.P())};
  const bool contractions = r.contraction_norms[0] <= 1.0 + eps && r.contraction_norms[1] <= 1.0 + eps &&
                            r.contraction_norms[2] <= 1.0 + eps;

  const bool b_contraction = r.contraction_norms[1] <= 1.0 + eps;
  const double a_gap = op_norm(t.A() - t.B().adjoint() * t.P());
  r.e_unitary = b_contraction && unitarity_defect(t.P()) <= eps && a_gap <= eps;
  r.e_isometry = b_contraction && isometry_defect(t.P()) <= eps && a_gap <= eps;
  const double a_gap_adj = op_norm(t.A().adjoint() - t.B() * t.P().adjoint());
  r.e_coisometry = b_contraction && isometry_defect(t.P().adjoint()) <= eps && a_gap_adj <= eps;
  r.triangular = op_norm(t.A() * t.B() - t.P()) <= eps;

  r.spectrum_in_closure = true;
  try {
    r.spectrum = taylor_spectrum(t, tol, opts.seed);
    for (const TetraPoint& p : r.spectrum) {
      if (!tetra_membership(p, 100.0 * eps).in_closed) r.spectrum_in_closure = false;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TriangularizationFailed) throw;
    r.spectrum_in_closure = false;
  }

  r.fundamental_residual = std::numeric_limits<double>::infinity();
  if (contractions) {
    r.fundamental_residual = fundamental_pair_unchecked(t.A(), t.B(), t.P(), tol).residual();
  }

  if (r.e_unitary) {
    r.verdict = Verdict::EUnitary;
  } else if (r.e_isometry) {
    r.verdict = Verdict::EIsometry;
  } else if (r.e_coisometry) {
    r.verdict = Verdict::ECoisometry;
  } else if (contractions && r.spectrum_in_closure && r.fundamental_residual <= 100.0 * eps) {
    r.verdict = Verdict::CandidateEContraction;
    if (opts.screening_polys > 0) {
      const VonNeumannReport vn = von_neumann_spot_check(t, opts.screening_degree, opts.screening_polys,
                                                         opts.seed, tol, opts.screening_samples);
      r.von_neumann_ratio = vn.max_ratio;
      if (vn.violation) r.verdict = Verdict::NotEContraction;
    }
  } else {
    r.verdict = Verdict::NotEContraction;
  }
  return r;
}

PurityReport is_pure(const Matrix& p, const Tolerances& tol) {
  require_square(p, "P");
  require_contraction(p, tol, "P");
  PurityReport r;
  r.spectral_margin = 1.0 - spectral_radius(p);
  r.pure = r.spectral_margin > tol.residual_tol;
  return r;
}

CanonicalDecomposition canonical_decomposition(const Matrix& p, const Tolerances& tol) {
  require_square(p, "P");
  require_contraction(p, tol, "P");
  const Index n = p.rows();
  const Matrix id = Matrix::Identity(n, n);
  Matrix stacked(2 * n, n);
  stacked << id - p.adjoint() * p, id - p * p.adjoint();
  Matrix k = null_space(stacked, 1.0, tol);
  while (k.cols() > 0) {
    const Matrix proj_out = id - k * k.adjoint();
    Matrix escape(2 * n, k.cols());
    escape << proj_out * p * k, proj_out * p.adjoint() * k;
    const Matrix c = null_space(escape, 1.0, tol);
    if (c.cols() == k.cols()) break;
    k = k * c;
    // re-orthonormalize to keep the basis clean across iterations
    if (k.cols() > 0) {
      Eigen::HouseholderQR<Matrix> qr(k);
      k = qr.householderQ() * Matrix::Identity(n, k.cols());
    }
  }
  CanonicalDecomposition out;
  out.unitary_basis = k;
  out.cnu_basis = orthogonal_complement(k, n);
  if (k.cols() > 0 && out.cnu_basis.cols() > 0) {
    out.off_block_residual = std::max(op_norm(out.unitary_basis.adjoint() * p * out.cnu_basis),
                                      op_norm(out.cnu_basis.adjoint() * p * out.unitary_basis));
  }
  return out;
}

std::vector<TetraPoint> taylor_spectrum(const CommutingTriple& t, const Tolerances& tol, std::uint64_t seed) {
  const std::vector<Matrix> family{t.A(), t.B(), t.P()};
  std::vector<TetraPoint> out;
  for (const JointEigenvalue& e : joint_eigs(family, tol, seed)) out.push_back({e[0], e[1], e[2]});
  return out;
}

namespace {

std::vector<TetraPoint> closure_spectrum(const CommutingTriple& t, const Tolerances& tol, std::uint64_t seed) {
  std::vector<TetraPoint> pts;
  try {
    for (const TetraPoint& p : taylor_spectrum(t, tol, seed)) {
      if (tetra_membership(p, 1e-10).in_closed) pts.push_back(p);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TriangularizationFailed) throw;
  }
  return pts;
}

double ratio_with(const CommutingTriple& t, const Polynomial3& f, std::size_t samples, std::uint64_t seed,
                  const std::vector<TetraPoint>& extra) {
  const double num = op_norm(f(t.A(), t.B(), t.P()));
  const double sup = sup_poly_closure(f, samples, seed, extra).value;
  if (sup == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return num / sup;
}

}  // namespace

double von_neumann_ratio(const CommutingTriple& t, const Polynomial3& f, std::size_t samples,
                         std::uint64_t seed, const Tolerances& tol) {
  t.require_commuting(tol);
  return ratio_with(t, f, samples, seed, closure_spectrum(t, tol, seed));
}

VonNeumannReport von_neumann_spot_check(const CommutingTriple& t, int degree, int polys,
                                        std::uint64_t seed, const Tolerances& tol,
                                        std::size_t sup_samples) {
  t.require_commuting(tol);
  const std::vector<TetraPoint> extra = closure_spectrum(t, tol, seed);
  VonNeumannReport r;
  r.sup_samples = sup_samples;
  for (int i = 0; i < polys; ++i) {
    const std::uint64_t s = seed * 1000003ULL + static_cast<std::uint64_t>(i);
    const Polynomial3 f = Polynomial3::random(degree, s);
    const double ratio = ratio_with(t, f, sup_samples, s, extra);
    if (i == 0 || ratio > r.max_ratio) {
      r.max_ratio = ratio;
      r.witness_poly = f;
    }
  }
  r.violation = r.max_ratio > r.safety_factor;
  return r;
}

}  // namespace tetra
