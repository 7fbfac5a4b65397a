#include "tetra/dilation.hpp"

#include "tetra/error.hpp"

#include <sstream>

namespace tetra {

namespace {

// Submatrix on indices [lo, hi) for both rows and columns.
double interior_norm(const Matrix& m, Index lo, Index hi) {
  if (hi <= lo) return 0.0;
  return op_norm(m.block(lo, lo, hi - lo, hi - lo));
}

Matrix diag(const Eigen::VectorXd& s) { return s.cast<Complex>().asDiagonal(); }

}  // namespace

double InteriorChecks::max() const {
  return std::max({t1_relation, t2_relation, unitarity, commutators, normality});
}

double LaurentChecks::max() const {
  return std::max({z_unitarity, commutator, phi_relation, psi_relation, normality});
}

BlockDilation schaeffer_e_unitary_dilation(const CommutingTriple& t, Index k, const Tolerances& tol) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "Schaeffer dilation needs K >= 1");
  const FundamentalPair f = fundamental_pair(t, tol);
  const FundamentalPair g = adjoint_fundamental_pair(t, tol);
  if (!f.conditions_hold(tol.residual_tol)) {
    std::ostringstream os;
    os << "[F1,F2] = " << f.commutator_norm << ", self-commutator gap " << f.selfcomm_gap;
    throw Error(ErrorCode::FundamentalConditionsFail, os.str());
  }
  const Matrix& p = t.P();
  const Index n = t.dim();
  const Matrix& vp = f.defect.basis;
  const Matrix& vq = g.defect.basis;

  BlockDilation out;
  BlockLayout& L = out.layout;
  L.past_blocks = k;
  L.past_dim = f.defect.rank;
  L.center_dim = n;
  L.future_blocks = k;
  L.future_dim = g.defect.rank;
  const Index total = L.total();
  const Index pd = L.past_dim;
  const Index qd = L.future_dim;
  const Index h = L.center_offset();

  const Matrix dp = diag(f.defect.singvals) * vp.adjoint();   // D_P : H → D_P
  const Matrix dq = vq * diag(g.defect.singvals);             // D_{P*} : D_{P*} → H
  const Matrix pstar = vp.adjoint() * p.adjoint() * vq;       // P* : D_{P*} → D_P

  auto build = [&](const Matrix& x, const Matrix& y, const Matrix& center, const Matrix& gx,
                   const Matrix& gy) {
    // x, y: the defect pair (x on the diagonal, y* above it); gx, gy: the
    // adjoint pair (gx* on the diagonal, gy above it)
    Matrix m = Matrix::Zero(total, total);
    if (pd > 0) {
      for (Index j = 1; j <= k; ++j) m.block(L.past_offset(j), L.past_offset(j), pd, pd) = x;
      for (Index j = 2; j <= k; ++j) m.block(L.past_offset(j), L.past_offset(j - 1), pd, pd) = y.adjoint();
      m.block(L.past_offset(1), h, pd, n) = y.adjoint() * dp;
      if (qd > 0) m.block(L.past_offset(1), L.future_offset(0), pd, qd) = -y.adjoint() * pstar;
    }
    m.block(h, h, n, n) = center;
    if (qd > 0) {
      m.block(h, L.future_offset(0), n, qd) = dq * gy;
      for (Index j = 0; j < k; ++j) m.block(L.future_offset(j), L.future_offset(j), qd, qd) = gx.adjoint();
      for (Index j = 0; j + 1 < k; ++j) m.block(L.future_offset(j), L.future_offset(j + 1), qd, qd) = gy;
    }
    return m;
  };
  out.T1 = build(f.F1, f.F2, t.A(), g.F1, g.F2);
  out.T2 = build(f.F2, f.F1, t.B(), g.F2, g.F1);

  Matrix& u = out.U;
  u = Matrix::Zero(total, total);
  if (pd > 0) {
    for (Index j = 2; j <= k; ++j) u.block(L.past_offset(j), L.past_offset(j - 1), pd, pd).setIdentity();
    u.block(L.past_offset(1), h, pd, n) = dp;
    if (qd > 0) u.block(L.past_offset(1), L.future_offset(0), pd, qd) = -pstar;
  }
  u.block(h, h, n, n) = p;
  if (qd > 0) {
    u.block(h, L.future_offset(0), n, qd) = dq;
    for (Index j = 0; j + 1 < k; ++j) u.block(L.future_offset(j), L.future_offset(j + 1), qd, qd).setIdentity();
  }

  out.H_embedding = Matrix::Zero(total, n);
  out.H_embedding.block(h, 0, n, n).setIdentity();
  out.safe_degree = static_cast<int>(k) - 1;

  const Index lo = pd;
  const Index hi = total - qd;
  const Matrix id = Matrix::Identity(total, total);
  InteriorChecks& c = out.interior;
  c.t1_relation = interior_norm(out.T1 - out.T2.adjoint() * u, lo, hi);
  c.t2_relation = interior_norm(out.T2 - out.T1.adjoint() * u, lo, hi);
  c.unitarity = std::max(interior_norm(u.adjoint() * u - id, lo, hi), interior_norm(u * u.adjoint() - id, lo, hi));
  c.commutators = std::max({interior_norm(commutator(out.T1, out.T2), lo, hi),
                            interior_norm(commutator(out.T1, u), lo, hi),
                            interior_norm(commutator(out.T2, u), lo, hi)});
  c.normality = std::max(interior_norm(commutator(out.T1.adjoint(), out.T1), lo, hi),
                         interior_norm(commutator(out.T2.adjoint(), out.T2), lo, hi));
  return out;
}

Matrix observability_map(const Matrix& p, const DefectData& dq, Index n_blocks) {
  const Index n = p.rows();
  const Index q = dq.rank;
  Matrix w(n_blocks * q, n);
  Matrix block = diag(dq.singvals) * dq.basis.adjoint();
  const Matrix pstar = p.adjoint();
  for (Index m = 0; m < n_blocks; ++m) {
    w.block(m * q, 0, q, n) = block;
    block = block * pstar;
  }
  return w;
}

Matrix orthonormalize_embedding(const Matrix& x) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(x.adjoint() * x);
  const Eigen::VectorXd inv_sqrt = es.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return x * es.eigenvectors() * diag(inv_sqrt) * es.eigenvectors().adjoint();
}

PureDilation pure_e_isometric_dilation(const CommutingTriple& t, Index n_blocks, const Tolerances& tol) {
  if (n_blocks < 1) throw Error(ErrorCode::InvalidArgument, "pure dilation needs N >= 1");
  const PurityReport purity = is_pure(t.P(), tol);
  if (!purity.pure) {
    std::ostringstream os;
    os << "spectral margin " << purity.spectral_margin;
    throw Error(ErrorCode::NotPure, os.str());
  }
  const FundamentalPair g = adjoint_fundamental_pair(t, tol);
  if (!g.conditions_hold(tol.residual_tol)) {
    std::ostringstream os;
    os << "[G1,G2] = " << g.commutator_norm << ", self-commutator gap " << g.selfcomm_gap;
    throw Error(ErrorCode::GConditionsFail, os.str());
  }
  PureDilation out;
  out.n_blocks = n_blocks;
  out.phi = {g.F1.adjoint(), g.F2};
  out.psi = {g.F2.adjoint(), g.F1};
  out.R1 = toeplitz_truncate(out.phi, n_blocks);
  out.R2 = toeplitz_truncate(out.psi, n_blocks);
  out.V = toeplitz_truncate(AnalyticSymbol::shift(g.defect.rank), n_blocks);
  const Matrix w = observability_map(t.P(), g.defect, n_blocks);
  const Index n = t.dim();
  out.embedding_defect = op_norm(w.adjoint() * w - Matrix::Identity(n, n));
  out.W_embedding = orthonormalize_embedding(w);
  out.safe_degree = static_cast<int>(n_blocks) - 1;
  return out;
}

LaurentSection laurent_extension(const AnalyticSymbol& phi, const AnalyticSymbol& psi, Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "Laurent section needs N >= 1");
  if (phi.dim() != psi.dim()) throw Error(ErrorCode::DimensionMismatch, "phi and psi differ in size");
  LaurentSection s;
  s.N = n;
  s.d = phi.dim();
  // a lower-banded operator has the same finite section whether the index set
  // is 0..2N or −N..N; only the interpretation of the edges differs
  s.M_phi = toeplitz_truncate(phi, 2 * n + 1);
  s.M_psi = toeplitz_truncate(psi, 2 * n + 1);
  s.M_z = toeplitz_truncate(AnalyticSymbol::shift(s.d), 2 * n + 1);
  return s;
}

LaurentChecks laurent_interior_checks(const LaurentSection& s) {
  const Index total = s.M_z.rows();
  const Index lo = s.d;
  const Index hi = total - s.d;
  const Matrix id = Matrix::Identity(total, total);
  LaurentChecks c;
  c.z_unitarity = std::max(interior_norm(s.M_z.adjoint() * s.M_z - id, lo, hi),
                           interior_norm(s.M_z * s.M_z.adjoint() - id, lo, hi));
  c.commutator = interior_norm(commutator(s.M_phi, s.M_psi), lo, hi);
  c.phi_relation = interior_norm(s.M_phi - s.M_psi.adjoint() * s.M_z, lo, hi);
  c.psi_relation = interior_norm(s.M_psi - s.M_phi.adjoint() * s.M_z, lo, hi);
  c.normality = std::max(interior_norm(commutator(s.M_phi.adjoint(), s.M_phi), lo, hi),
                         interior_norm(commutator(s.M_psi.adjoint(), s.M_psi), lo, hi));
  return c;
}

AndoDilation ando_dilation(const Matrix& t1, const Matrix& t2, Index k, const Tolerances& tol) {
  require_square(t1, "T1");
  require_square(t2, "T2");
  if (t1.rows() != t2.rows()) throw Error(ErrorCode::DimensionMismatch, "T1 and T2 differ in size");
  if (k < 2) throw Error(ErrorCode::InvalidArgument, "Ando dilation needs K >= 2");
  const double n1 = op_norm(t1);
  const double n2 = op_norm(t2);
  if (n1 > 1.0 + tol.residual_tol || n2 > 1.0 + tol.residual_tol) {
    std::ostringstream os;
    os << "norms " << n1 << ", " << n2;
    throw Error(ErrorCode::NotContractions, os.str());
  }
  const double comm = op_norm(commutator(t1, t2));
  if (comm > tol.residual_tol * std::max(1.0, n1 * n2)) {
    std::ostringstream os;
    os << "[T1,T2] has norm " << comm;
    throw Error(ErrorCode::NotCommuting, os.str());
  }
  const Index n = t1.rows();
  const Matrix d1 = defect(t1, tol).D;
  const Matrix d2 = defect(t2, tol).D;

  // slot 0 is H; slots 1..4K form K groups of four copies of H
  const Index slots = 4 * k;
  const Index total = n * (1 + slots);
  auto lift = [&](const Matrix& t, const Matrix& d) {
    Matrix w = Matrix::Zero(total, total);
    w.block(0, 0, n, n) = t;
    w.block(n, 0, n, n) = d;
    for (Index s = 1; s + 2 <= slots; ++s) w.block((s + 2) * n, s * n, n, n).setIdentity();
    return w;
  };
  const Matrix w1 = lift(t1, d1);
  const Matrix w2 = lift(t2, d2);

  Matrix us = Matrix::Zero(4 * n, n);
  us.block(0, 0, n, n) = d1 * t2;
  us.block(2 * n, 0, n, n) = d2;
  Matrix vs = Matrix::Zero(4 * n, n);
  vs.block(0, 0, n, n) = d2 * t1;
  vs.block(2 * n, 0, n, n) = d1;
  const Matrix g = unitary_extension(us, vs, tol);

  Matrix g_big = Matrix::Identity(total, total);
  for (Index grp = 0; grp < k; ++grp) g_big.block(n + 4 * n * grp, n + 4 * n * grp, 4 * n, 4 * n) = g;

  AndoDilation out;
  out.k_groups = k;
  out.V1 = g_big * w1;
  out.V2 = w2 * g_big.adjoint();
  out.H_embedding = Matrix::Zero(total, n);
  out.H_embedding.topRows(n).setIdentity();
  out.protected_dim = n * (1 + 4 * (k - 2));
  out.safe_degree = static_cast<int>(k) - 2;

  const Index pr = out.protected_dim;
  const Matrix v12 = out.V1 * out.V2;
  const Matrix id = Matrix::Identity(pr, pr);
  out.commutator_defect = op_norm((v12 - out.V2 * out.V1).leftCols(pr));
  out.isometry_defect = std::max(op_norm(out.V1.leftCols(pr).adjoint() * out.V1.leftCols(pr) - id),
                                 op_norm(out.V2.leftCols(pr).adjoint() * out.V2.leftCols(pr) - id));
  out.triangular_defect = op_norm((out.V1 - out.V2.adjoint() * v12).leftCols(pr));
  const double worst = std::max(out.commutator_defect, out.isometry_defect);
  if (worst > 100.0 * tol.residual_tol) {
    std::ostringstream os;
    os << "commuting isometric lift has defect " << worst;
    throw Error(ErrorCode::VerificationFailed, os.str());
  }
  return out;
}

namespace {

DilationReport verify_monomials(const CommutingTriple& original, const Matrix& q1, const Matrix& q2,
                                const Matrix& v, const Matrix& embedding, int max_total_degree, int max_e3,
                                const Tolerances& tol) {
  const Index n = original.dim();
  if (embedding.cols() != n || embedding.rows() != q1.rows() || !is_square(q1) || q2.rows() != q1.rows() ||
      v.rows() != q1.rows() || !is_square(q2) || !is_square(v)) {
    throw Error(ErrorCode::DimensionMismatch, "dilation and embedding shapes are inconsistent");
  }
  if (max_total_degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be >= 0");
  const double defect_e = isometry_defect(embedding);
  if (defect_e > tol.residual_tol) {
    std::ostringstream os;
    os << "embedding isometry defect " << defect_e;
    throw Error(ErrorCode::EmbeddingNotIsometric, os.str());
  }
  const auto powers = [&](const Matrix& x) {
    std::vector<Matrix> out{Matrix::Identity(n, n)};
    for (int i = 1; i <= max_total_degree; ++i) out.push_back(out.back() * x);
    return out;
  };
  const auto pa = powers(original.A());
  const auto pb = powers(original.B());
  const auto pp = powers(original.P());

  DilationReport r;
  r.max_degree_checked = max_total_degree;
  const Matrix et = embedding.adjoint();
  Matrix vn = embedding;
  for (int e3 = 0; e3 <= std::min(max_total_degree, max_e3); ++e3) {
    Matrix y = vn;
    for (int e2 = 0; e2 + e3 <= max_total_degree; ++e2) {
      Matrix z = y;
      for (int e1 = 0; e1 + e2 + e3 <= max_total_degree; ++e1) {
        const Matrix target = pa[static_cast<std::size_t>(e1)] * pb[static_cast<std::size_t>(e2)] *
                              pp[static_cast<std::size_t>(e3)];
        const double res = op_norm(et * z - target);
        r.per_monomial[{e1, e2, e3}] = res;
        r.max_residual = std::max(r.max_residual, res);
        z = q1 * z;
      }
      y = q2 * y;
    }
    vn = v * vn;
  }
  return r;
}

}  // namespace

DilationReport verify_dilation(const CommutingTriple& original, const Matrix& q1, const Matrix& q2,
                               const Matrix& v, const Matrix& embedding, int max_total_degree,
                               const Tolerances& tol) {
  return verify_monomials(original, q1, q2, v, embedding, max_total_degree, max_total_degree, tol);
}

DilationReport verify_pair_dilation(const Matrix& t1, const Matrix& t2, const Matrix& v1, const Matrix& v2,
                                    const Matrix& embedding, int max_total_degree, const Tolerances& tol) {
  require_square(t1, "T1");
  if (t2.rows() != t1.rows() || t2.cols() != t1.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "T1 and T2 must have the same size");
  }
  const CommutingTriple t(t1, t2, t1 * t2);
  return verify_monomials(t, v1, v2, v1 * v2, embedding, max_total_degree, 0, tol);
}

Index krylov_span_dimension(const Matrix& v1, const Matrix& v2, const Matrix& embedding, int degree,
                            const Tolerances& tol) {
  std::vector<Matrix> blocks;
  Matrix a = embedding;
  for (int i = 0; i <= degree; ++i) {
    Matrix b = a;
    for (int j = 0; i + j <= degree; ++j) {
      blocks.push_back(b);
      b = v2 * b;
    }
    a = v1 * a;
  }
  Matrix all(embedding.rows(), embedding.cols() * static_cast<Index>(blocks.size()));
  for (std::size_t i = 0; i < blocks.size(); ++i) all.middleCols(static_cast<Index>(i) * embedding.cols(), embedding.cols()) = blocks[i];
  return numerical_rank(all, tol);
}

}  // namespace tetra
