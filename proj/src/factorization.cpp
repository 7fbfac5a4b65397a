#include "tetra/factorization.hpp"

#include "tetra/dilation.hpp"
#include "tetra/error.hpp"
#include "tetra/fundops.hpp"
#include "tetra/triples.hpp"

#include <sstream>

namespace tetra {

BCLPair bcl_extract(const AnalyticSymbol& phi, const Tolerances& tol) {
  if (phi.C0.rows() != phi.C1.rows() || phi.C0.cols() != phi.C1.cols() || !is_square(phi.C0)) {
    throw Error(ErrorCode::DimensionMismatch, "symbol coefficients must be equal square shapes");
  }
  const double inner = symbol_inner_residual(phi);
  const double tri = triangular_symbol_residual(phi.C0.adjoint(), phi.C1);
  if (inner > tol.residual_tol || tri > tol.residual_tol) {
    std::ostringstream os;
    os << "inner residual " << inner << ", triangular identity residual " << tri;
    throw Error(ErrorCode::NotTriangularSymbol, os.str());
  }
  const Index d = phi.dim();
  const Matrix id = Matrix::Identity(d, d);
  BCLPair out;
  out.W = phi.C0 + phi.C1;
  out.Q = (id - (phi.C0 - phi.C1) * out.W.adjoint()) * 0.5;
  const double reassembly = std::max(op_norm((id - out.Q) * out.W - phi.C0), op_norm(out.Q * out.W - phi.C1));
  const double worst = std::max({projection_defect(out.Q), unitarity_defect(out.W), reassembly});
  if (worst > tol.residual_tol) {
    std::ostringstream os;
    os << "extracted pair misses the symbol by " << worst;
    throw Error(ErrorCode::NotTriangularSymbol, os.str());
  }
  return out;
}

BCLReport bcl_verify_n(const std::vector<AnalyticSymbol>& symbols, const Tolerances& tol) {
  if (symbols.size() < 2) throw Error(ErrorCode::InvalidArgument, "bcl_verify_n needs at least two symbols");
  const Index d = symbols.front().dim();
  for (const AnalyticSymbol& s : symbols) {
    if (s.dim() != d || s.C1.rows() != d || !is_square(s.C0) || !is_square(s.C1)) {
      throw Error(ErrorCode::DimensionMismatch, "symbols differ in coefficient dimension");
    }
  }
  BCLReport r;
  for (const AnalyticSymbol& s : symbols) r.inner_residual = std::max(r.inner_residual, symbol_inner_residual(s));
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    for (std::size_t j = i + 1; j < symbols.size(); ++j) {
      r.commute_residual = std::max(r.commute_residual, coefficient_distance(symbol_mul(symbols[i], symbols[j]),
                                                                             symbol_mul(symbols[j], symbols[i])));
    }
  }
  MatrixPolynomial product = MatrixPolynomial::from(symbols.front());
  for (std::size_t i = 1; i < symbols.size(); ++i) product = symbol_mul(product, MatrixPolynomial::from(symbols[i]));
  r.product_residual = coefficient_distance(product, z_identity(d));
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    MatrixPolynomial others{{Matrix::Identity(d, d)}};
    for (std::size_t j = 0; j < symbols.size(); ++j) {
      if (j != i) others = symbol_mul(others, MatrixPolynomial::from(symbols[j]));
    }
    r.partner_residual = std::max(r.partner_residual,
                                  coefficient_distance(others, MatrixPolynomial::from(symbols[i].reflected())));
  }
  const double eps = tol.residual_tol;
  r.inner = r.inner_residual <= eps;
  r.commuting = r.commute_residual <= eps;
  r.product_is_z = r.product_residual <= eps;
  r.partners = r.partner_residual <= eps;
  if (!r.inner) r.failed.emplace_back("inner");
  if (!r.commuting) r.failed.emplace_back("commuting");
  if (!r.product_is_z) r.failed.emplace_back("product");
  if (!r.partners) r.failed.emplace_back("partner");
  return r;
}

BCLExtraction bcl_extract_n(const std::vector<AnalyticSymbol>& symbols, const Tolerances& tol) {
  const BCLReport report = bcl_verify_n(symbols, tol);
  if (!report.passed()) {
    std::string names;
    for (const std::string& f : report.failed) names += (names.empty() ? "" : ", ") + f;
    throw Error(ErrorCode::VerificationFailed, "failed checks: " + names);
  }
  BCLExtraction out;
  for (const AnalyticSymbol& s : symbols) {
    out.pairs.push_back(bcl_extract(s, tol));
    out.fundamental.emplace_back(s.C0.adjoint(), s.C1);
  }
  return out;
}

AnalyticSymbol dss_phi(const Matrix& p, const Matrix& u) {
  const Matrix pperp = Matrix::Identity(p.rows(), p.cols()) - p;
  return {p * u.adjoint(), pperp * u.adjoint()};
}

AnalyticSymbol dss_psi(const Matrix& p, const Matrix& u) {
  const Matrix pperp = Matrix::Identity(p.rows(), p.cols()) - p;
  return {u * pperp, u * p};
}

std::pair<Matrix, Matrix> bcl_to_dss(const BCLPair& qw) {
  return {Matrix::Identity(qw.Q.rows(), qw.Q.cols()) - qw.Q, qw.W.adjoint()};
}

BCLPair dss_to_bcl(const Matrix& p, const Matrix& u) {
  return {Matrix::Identity(p.rows(), p.cols()) - p, u.adjoint()};
}

double DSSReport::max_residual() const {
  return std::max({projection_defect, unitarity_defect, isometry_defect, coinvariance_phi, coinvariance_psi,
                   coinvariance_z, cond_i_phipsi, cond_i_psiphi, cond_ii_t1, cond_ii_t2, commutator});
}

DSSReport dss_verify(const Matrix& t1, const Matrix& t2, const DSSCertificate& cert, const Tolerances& tol) {
  require_square(t1, "T1");
  require_square(t2, "T2");
  const Index n = t1.rows();
  const Index e = cert.E_dim;
  if (t2.rows() != n || cert.P.rows() != e || cert.U.rows() != e || !is_square(cert.P) || !is_square(cert.U) ||
      cert.N < 1 || cert.J.rows() != cert.N * e || cert.J.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "certificate shapes are inconsistent with (T1, T2)");
  }
  DSSReport r;
  r.projection_defect = projection_defect(cert.P);
  r.unitarity_defect = unitarity_defect(cert.U);
  r.isometry_defect = isometry_defect(cert.J);

  const AnalyticSymbol phi = dss_phi(cert.P, cert.U);
  const AnalyticSymbol psi = dss_psi(cert.P, cert.U);
  const Matrix t_phi = toeplitz_truncate(phi, cert.N);
  const Matrix t_psi = toeplitz_truncate(psi, cert.N);
  const Matrix t_z = toeplitz_truncate(AnalyticSymbol::shift(e), cert.N);
  const Matrix& j = cert.J;
  const Matrix jt = j.adjoint();
  auto coinvariance = [&](const Matrix& t) {
    const Matrix x = t.adjoint() * j;
    return op_norm(x - j * (jt * x));
  };
  r.coinvariance_phi = coinvariance(t_phi);
  r.coinvariance_psi = coinvariance(t_psi);
  r.coinvariance_z = coinvariance(t_z);

  const Matrix z_c = jt * t_z * j;
  r.cond_i_phipsi = op_norm(jt * toeplitz_truncate(symbol_mul(phi, psi), cert.N) * j - z_c);
  r.cond_i_psiphi = op_norm(jt * toeplitz_truncate(symbol_mul(psi, phi), cert.N) * j - z_c);
  r.cond_ii_t1 = op_norm(jt * t_phi * j - t1);
  r.cond_ii_t2 = op_norm(jt * t_psi * j - t2);
  r.commutator = op_norm(commutator(t1, t2));
  r.spectral_margin = 1.0 - spectral_radius(t1 * t2);

  const double eps = tol.residual_tol;
  if (r.projection_defect > eps) r.failed.emplace_back("NotAProjection");
  if (r.unitarity_defect > eps) r.failed.emplace_back("NotUnitary");
  if (r.isometry_defect > eps) r.failed.emplace_back("NotIsometric");
  if (r.coinvariance_phi > eps) r.failed.emplace_back("CoinvariancePhi");
  if (r.coinvariance_psi > eps) r.failed.emplace_back("CoinvariancePsi");
  if (r.coinvariance_z > eps) r.failed.emplace_back("CoinvarianceZ");
  if (r.cond_i_phipsi > eps) r.failed.emplace_back("ConditionI_PhiPsi");
  if (r.cond_i_psiphi > eps) r.failed.emplace_back("ConditionI_PsiPhi");
  if (r.cond_ii_t1 > eps) r.failed.emplace_back("ConditionII_T1");
  if (r.cond_ii_t2 > eps) r.failed.emplace_back("ConditionII_T2");
  if (r.commutator > eps * std::max(1.0, op_norm(t1) * op_norm(t2))) r.failed.emplace_back("NotCommuting");
  if (r.spectral_margin <= eps) r.failed.emplace_back("NotPure");
  return r;
}

DSSCertificate dss_construct(const Matrix& t1, const Matrix& t2, const Tolerances& tol, Index max_blocks) {
  require_square(t1, "T1");
  if (t2.rows() != t1.rows() || !is_square(t2)) throw Error(ErrorCode::DimensionMismatch, "T1 and T2 differ in size");
  const double n1 = op_norm(t1);
  const double n2 = op_norm(t2);
  if (n1 > 1.0 + tol.residual_tol || n2 > 1.0 + tol.residual_tol) {
    std::ostringstream os;
    os << "norms " << n1 << ", " << n2;
    throw Error(ErrorCode::NotContractions, os.str());
  }
  const Matrix t = t1 * t2;
  const CommutingTriple triple(t1, t2, t);
  triple.require_commuting(tol);
  const PurityReport purity = is_pure(t, tol);
  if (!purity.pure) {
    std::ostringstream os;
    os << "T1T2 has spectral margin " << purity.spectral_margin;
    throw Error(ErrorCode::NotPure, os.str());
  }
  const FundamentalPair g = adjoint_fundamental_pair(triple, tol);
  if (!g.conditions_hold(tol.residual_tol)) {
    std::ostringstream os;
    os << "[G1,G2] = " << g.commutator_norm << ", self-commutator gap " << g.selfcomm_gap;
    throw Error(ErrorCode::GConditionsFail, os.str());
  }
  const double tri = g.defect.rank == 0 ? 1.0 : triangular_symbol_residual(g.F1, g.F2);
  if (tri > tol.residual_tol) {
    std::ostringstream os;
    os << "adjoint fundamental pair misses the triangular identities by " << tri;
    throw Error(ErrorCode::NotTriangularSymbol, os.str());
  }
  const BCLPair qw = bcl_extract({g.F1.adjoint(), g.F2}, tol);
  DSSCertificate cert;
  cert.E_dim = g.defect.rank;
  std::tie(cert.P, cert.U) = bcl_to_dss(qw);

  Index n_blocks = 1;
  Matrix power = t;
  while (n_blocks < max_blocks && op_norm(power) > 1e-12) {
    power = power * t;
    ++n_blocks;
  }
  cert.N = n_blocks;
  cert.J = orthonormalize_embedding(observability_map(t, g.defect, n_blocks));

  const DSSReport report = dss_verify(t1, t2, cert, tol);
  if (!report.passed()) {
    std::string names;
    for (const std::string& f : report.failed) names += (names.empty() ? "" : ", ") + f;
    throw Error(ErrorCode::VerificationFailed, "constructed certificate fails: " + names);
  }
  return cert;
}

}  // namespace tetra
