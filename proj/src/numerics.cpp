#include "tetra/numerics.hpp"

#include "tetra/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace tetra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr Index kExactNormLimit = 256;

double largest_hermitian_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(es.eigenvalues().size() - 1);
}

// λ_max of Re(e^{iθ} M) = (e^{iθ}M + e^{-iθ}M*)/2.
double real_part_top(const Matrix& m, double theta) {
  const Complex w = std::polar(1.0, theta);
  const Matrix x = w * m;
  return largest_hermitian_eigenvalue((x + x.adjoint()) * 0.5);
}

}  // namespace

void Tolerances::validate() const {
  if (!(residual_tol > 0.0) || !(rank_tol_factor > 0.0) || refine_iters <= 0 || circle_grid < 16) {
    throw Error(ErrorCode::InvalidArgument,
                "tolerances must be positive and circle_grid >= 16");
  }
}

Tolerances Tolerances::from_environment() {
  Tolerances tol;
  if (const char* env = std::getenv("TETRA_TOL"); env != nullptr && *env != '\0') {
    try {
      tol.residual_tol = std::stod(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, std::string("TETRA_TOL is not a number: ") + env);
    }
    tol.validate();
  }
  return tol;
}

double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (std::min(m.rows(), m.cols()) <= kExactNormLimit) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues()(0);
  }
  const double frob = m.norm();
  const double one = m.cwiseAbs().colwise().sum().maxCoeff();
  const double inf = m.cwiseAbs().rowwise().sum().maxCoeff();
  return std::min(frob, std::sqrt(one * inf));
}

Matrix commutator(const Matrix& x, const Matrix& y) { return x * y - y * x; }

double selfcommutator_gap(const Matrix& x, const Matrix& y) {
  return op_norm(commutator(x.adjoint(), x) - commutator(y.adjoint(), y));
}

bool commute(const Matrix& x, const Matrix& y, const Tolerances& tol) {
  return op_norm(commutator(x, y)) <= tol.residual_tol * op_norm(x) * op_norm(y);
}

bool is_square(const Matrix& m) { return m.rows() == m.cols(); }

void require_square(const Matrix& m, const char* what) {
  if (!is_square(m)) {
    std::ostringstream os;
    os << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

double isometry_defect(const Matrix& x) {
  return op_norm(x.adjoint() * x - Matrix::Identity(x.cols(), x.cols()));
}

double unitarity_defect(const Matrix& x) {
  if (!is_square(x)) return std::numeric_limits<double>::infinity();
  return std::max(isometry_defect(x), op_norm(x * x.adjoint() - Matrix::Identity(x.rows(), x.rows())));
}

double projection_defect(const Matrix& x) {
  if (!is_square(x)) return std::numeric_limits<double>::infinity();
  return std::max(op_norm(x * x - x), op_norm(x.adjoint() - x));
}

Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

ClampedEigen clamped_hermitian_eigen(const Matrix& m, double scale, const Tolerances& tol) {
  require_square(m, "Hermitian matrix");
  const double mnorm = op_norm(m);
  if (op_norm(m - m.adjoint()) > tol.residual_tol * std::max(1.0, mnorm)) {
    throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian within residual_tol");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) * 0.5);
  ClampedEigen out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  out.threshold = tol.rank_threshold(m.rows(), scale);
  for (Index i = 0; i < out.values.size(); ++i) {
    const double v = out.values(i);
    if (v < -10.0 * out.threshold) {
      std::ostringstream os;
      os << "eigenvalue " << v << " below -10 x rank threshold " << out.threshold;
      throw Error(ErrorCode::SignificantlyIndefinite, os.str());
    }
    if (v < out.threshold) out.values(i) = 0.0;
  }
  return out;
}

Matrix hermitian_psd_sqrt(const Matrix& m, const Tolerances& tol) {
  require_square(m, "hermitian_psd_sqrt input");
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Matrix> probe((m + m.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
  const double scale = probe.eigenvalues().cwiseAbs().maxCoeff();
  const ClampedEigen ce = clamped_hermitian_eigen(m, scale, tol);
  return ce.vectors * ce.values.cwiseSqrt().cast<Complex>().asDiagonal() * ce.vectors.adjoint();
}

std::vector<JointEigenvalue> joint_eigs(std::span<const Matrix> family, const Tolerances& tol,
                                        std::uint64_t seed) {
  if (family.empty()) return {};
  const Index n = family.front().rows();
  std::vector<double> norms;
  for (const Matrix& m : family) {
    require_square(m, "joint_eigs member");
    if (m.rows() != n) throw Error(ErrorCode::DimensionMismatch, "joint_eigs family sizes differ");
    norms.push_back(op_norm(m));
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      const double c = op_norm(commutator(family[i], family[j]));
      if (c > tol.residual_tol * norms[i] * norms[j]) {
        std::ostringstream os;
        os << "members " << i << " and " << j << " have commutator norm " << c;
        throw Error(ErrorCode::NotCommuting, os.str());
      }
    }
  }
  if (n == 0) return {};

  constexpr int kAttempts = 5;
  double worst = 0.0;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const Matrix coeffs =
        random_gaussian(static_cast<Index>(family.size()), 1, seed * 7919 + static_cast<std::uint64_t>(attempt));
    Matrix combo = Matrix::Zero(n, n);
    for (std::size_t k = 0; k < family.size(); ++k) combo += coeffs(static_cast<Index>(k), 0) * family[k];
    Eigen::ComplexSchur<Matrix> schur(combo);
    if (schur.info() != Eigen::Success) continue;
    const Matrix& u = schur.matrixU();

    std::vector<Matrix> triangular;
    bool ok = true;
    worst = 0.0;
    for (std::size_t k = 0; k < family.size(); ++k) {
      Matrix t = u.adjoint() * family[k] * u;
      const Matrix lower = t.triangularView<Eigen::StrictlyLower>();
      const double residual = lower.size() == 0 ? 0.0 : op_norm(lower);
      worst = std::max(worst, residual);
      if (residual > 100.0 * tol.residual_tol * norms[k]) {
        ok = false;
        break;
      }
      triangular.push_back(std::move(t));
    }
    if (!ok) continue;

    std::vector<JointEigenvalue> out(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
      auto& tuple = out[static_cast<std::size_t>(i)];
      tuple.reserve(family.size());
      for (const Matrix& t : triangular) tuple.push_back(t(i, i));
    }
    return out;
  }
  std::ostringstream os;
  os << "no simultaneous triangularization after " << kAttempts << " attempts (last residual " << worst
     << ")";
  throw Error(ErrorCode::TriangularizationFailed, os.str());
}

double spectral_radius(const Matrix& m) {
  require_square(m, "spectral_radius input");
  if (m.rows() == 0) return 0.0;
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double numerical_radius(const Matrix& m, const Tolerances& tol) {
  require_square(m, "numerical_radius input");
  if (m.rows() == 0) return 0.0;
  const int grid = tol.circle_grid;
  const double h = kTwoPi / grid;
  double best = -std::numeric_limits<double>::infinity();
  double best_theta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double theta = i * h;
    const double v = real_part_top(m, theta);
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  }
  auto f = [&](double theta) { return real_part_top(m, theta); };
  const double refined = golden_maximize(f, best_theta - h, best_theta + h, tol.refine_iters);
  return std::max({best, f(refined), 0.0});
}

SpectralQuantities spectral_quantities(const Matrix& m, const Tolerances& tol) {
  require_square(m, "spectral_quantities input");
  SpectralQuantities q;
  q.op_norm = op_norm(m);
  q.spectral_radius = spectral_radius(m);
  q.numerical_radius = numerical_radius(m, tol);
  return q;
}

double circle_sup_numrad(const Matrix& c0, const Matrix& c1, const Tolerances& tol) {
  require_square(c0, "C0");
  if (c0.rows() != c1.rows() || c0.cols() != c1.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "circle_sup_numrad: C0 and C1 differ in shape");
  }
  if (c0.rows() == 0) return 0.0;
  const int grid = tol.circle_grid;
  // max over (α, β) ∈ T² of λ_max Re(e^{iα}C0 + e^{iβ}C1)
  auto g = [&](double alpha, double beta) {
    const Matrix x = std::polar(1.0, alpha) * c0 + std::polar(1.0, beta) * c1;
    return largest_hermitian_eigenvalue((x + x.adjoint()) * 0.5);
  };
  const int tgrid = std::max(16, grid / 16);
  const double th = kTwoPi / tgrid;
  double tbest = -std::numeric_limits<double>::infinity();
  double ta = 0.0;
  double tb = 0.0;
  for (int i = 0; i < tgrid; ++i) {
    for (int j = 0; j < tgrid; ++j) {
      const double v = g(i * th, j * th);
      if (v > tbest) {
        tbest = v;
        ta = i * th;
        tb = j * th;
      }
    }
  }
  double width = th;
  for (int round = 0; round < 6; ++round) {
    ta = golden_maximize([&](double a) { return g(a, tb); }, ta - width, ta + width, tol.refine_iters);
    tb = golden_maximize([&](double b) { return g(ta, b); }, tb - width, tb + width, tol.refine_iters);
    width *= 0.5;
  }
  return std::max({tbest, g(ta, tb), 0.0});
}

CircleExtremes circle_extremes(const Matrix& c0, const Matrix& c1, const Tolerances& tol) {
  require_square(c0, "C0");
  if (c0.rows() != c1.rows() || c0.cols() != c1.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "circle_extremes: C0 and C1 differ in shape");
  }
  CircleExtremes out;
  if (c0.rows() == 0) return out;

  const int grid = tol.circle_grid;
  const double h = kTwoPi / grid;

  // sup of the operator norm
  auto norm_at = [&](double theta) {
    Eigen::JacobiSVD<Matrix> svd(c0 + std::polar(1.0, theta) * c1);
    return svd.singularValues()(0);
  };
  double best = -1.0;
  double best_theta = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double v = norm_at(i * h);
    if (v > best) {
      best = v;
      best_theta = i * h;
    }
  }
  const double c1_norm = op_norm(c1);
  out.grid_resolution = c1_norm * std::numbers::pi / grid;
  out.opnorm_upper_bound = best + out.grid_resolution;
  const double theta_star = golden_maximize(norm_at, best_theta - h, best_theta + h, tol.refine_iters);
  const double refined = norm_at(theta_star);
  out.sup_opnorm = std::max(best, refined);
  out.argmax_angle = refined >= best ? theta_star : best_theta;

  out.sup_numrad = circle_sup_numrad(c0, c1, tol);
  return out;
}

Matrix orthogonal_complement(const Matrix& basis, Index dim) {
  if (basis.cols() == 0) return Matrix::Identity(dim, dim);
  Eigen::HouseholderQR<Matrix> qr(basis);
  const Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  return q.rightCols(dim - basis.cols());
}

Matrix null_space(const Matrix& m, double scale, const Tolerances& tol) {
  const Index cols = m.cols();
  if (m.rows() == 0) return Matrix::Identity(cols, cols);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double top = s.size() > 0 ? s(0) : 0.0;
  const double thr = tol.rank_threshold(std::max(m.rows(), cols), std::max(top, scale));
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
  }
  return svd.matrixV().rightCols(cols - rank);
}

Index numerical_rank(const Matrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  const double thr = tol.rank_threshold(std::max(m.rows(), m.cols()), s(0));
  Index rank = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++rank;
  }
  return rank;
}

Matrix unitary_extension(const Matrix& us, const Matrix& vs, const Tolerances& tol) {
  if (us.rows() != vs.rows() || us.cols() != vs.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary_extension: vector lists differ in shape");
  }
  const Index n = us.rows();
  const Matrix gu = us.adjoint() * us;
  const Matrix gv = vs.adjoint() * vs;
  const double gap = gu.size() == 0 ? 0.0 : op_norm(gu - gv);
  const double gscale = gu.size() == 0 ? 0.0 : op_norm(gu);
  if (gap > tol.residual_tol * std::max(1.0, gscale)) {
    std::ostringstream os;
    os << "Gram matrices differ by " << gap;
    throw Error(ErrorCode::GramMismatch, os.str());
  }
  if (n == 0) return Matrix(0, 0);

  Matrix wu(n, 0);
  Matrix wv(n, 0);
  if (us.cols() > 0) {
    Eigen::BDCSVD<Matrix> svd(us, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    const double thr = tol.rank_threshold(std::max(n, us.cols()), std::max(s(0), 1e-300));
    Index r = 0;
    while (r < s.size() && s(r) > std::max(thr, std::sqrt(tol.residual_tol) * 1e-4)) ++r;
    wu = svd.matrixU().leftCols(r);
    const Matrix raw = vs * svd.matrixV().leftCols(r) *
                       s.head(r).cwiseInverse().cast<Complex>().asDiagonal();
    if (r > 0) {
      // nearest matrix with orthonormal columns (polar factor)
      Eigen::JacobiSVD<Matrix> polar(raw, Eigen::ComputeThinU | Eigen::ComputeThinV);
      wv = polar.matrixU() * polar.matrixV().adjoint();
    }
  }
  Matrix left(n, n);
  left << wv, orthogonal_complement(wv, n);
  Matrix right(n, n);
  right << wu, orthogonal_complement(wu, n);
  return left * right.adjoint();
}

Matrix unitary_extension(std::span<const Vector> us, std::span<const Vector> vs, const Tolerances& tol) {
  if (us.size() != vs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary_extension: lists differ in length");
  }
  if (us.empty()) return Matrix(0, 0);
  const Index n = us.front().size();
  Matrix mu(n, static_cast<Index>(us.size()));
  Matrix mv(n, static_cast<Index>(vs.size()));
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (us[i].size() != n || vs[i].size() != n) {
      throw Error(ErrorCode::DimensionMismatch, "unitary_extension: vectors differ in length");
    }
    mu.col(static_cast<Index>(i)) = us[i];
    mv.col(static_cast<Index>(i)) = vs[i];
  }
  return unitary_extension(mu, mv, tol);
}

}  // namespace tetra
