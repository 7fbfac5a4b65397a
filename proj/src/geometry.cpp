#include "tetra/geometry.hpp"

#include "tetra/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tetra {

MembershipReport tetra_membership(const TetraPoint& p, double tol) {
  const Complex x1 = p.x1;
  const Complex x2 = p.x2;
  const Complex x3 = p.x3;
  MembershipReport r;
  const double tri = std::abs(x1 * x2 - x3);
  r.lhs2 = std::abs(x1 - std::conj(x2) * x3) + tri;
  r.rhs2 = 1.0 - std::norm(x2);
  r.lhs3 = std::abs(x2 - std::conj(x1) * x3) + tri;
  r.rhs3 = 1.0 - std::norm(x1);
  r.closure_residual = r.lhs2 - r.rhs2;
  r.is_triangular = tri <= tol;

  r.in_open = r.lhs2 < r.rhs2;
  r.in_closed = r.in_open || (r.lhs2 <= r.rhs2 + tol && (tri > tol || std::abs(x1) <= 1.0 + tol));
  r.open3 = r.lhs3 < r.rhs3;
  r.closed3 = r.open3 || (r.lhs3 <= r.rhs3 + tol && (tri > tol || std::abs(x2) <= 1.0 + tol));
  r.in_bE = r.in_closed && std::abs(std::abs(x3) - 1.0) <= tol;
  r.marginal = std::abs(r.lhs2 - r.rhs2) <= tol || std::abs(r.lhs3 - r.rhs3) <= tol;

  if (std::abs(x3) < 1.0 - tol) {
    const double denom = 1.0 - std::norm(x3);
    r.alpha1 = (x1 - std::conj(x2) * x3) / denom;
    r.alpha2 = (x2 - std::conj(x1) * x3) / denom;
  }
  return r;
}

bool mu_diag2(const Matrix& m, double tol) {
  if (m.rows() != 2 || m.cols() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "mu_diag2 expects a 2x2 matrix");
  }
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return tetra_membership({m(0, 0), m(1, 1), det}, tol).in_open;
}

std::vector<TetraPoint> sample_closure(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TetraPoint> out;
  out.reserve(n);
  while (out.size() < n) {
    Eigen::Matrix2cd a;
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        const double re = normal(rng);
        const double im = normal(rng);
        a(i, j) = Complex(re, im);
      }
    }
    const double norm = Eigen::JacobiSVD<Eigen::Matrix2cd>(a).singularValues()(0);
    if (norm == 0.0) continue;
    a *= std::pow(unit(rng), 0.25) / norm;
    out.push_back({a(0, 0), a(1, 1), a.determinant()});
  }
  return out;
}

TetraPoint distinguished_point(double psi, double theta, double rho) {
  const Complex x3 = std::polar(1.0, psi);
  const Complex x2 = std::polar(rho, theta);
  return {std::conj(x2) * x3, x2, x3};
}

std::vector<TetraPoint> sample_distinguished_boundary(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<TetraPoint> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    // |u11|^2 is uniform on [0, 1] for Haar-distributed 2x2 unitaries
    const double psi = angle(rng);
    const double theta = angle(rng);
    const double rho = std::sqrt(unit(rng));
    out.push_back(distinguished_point(psi, theta, rho));
  }
  return out;
}

namespace {

struct BoundaryParams {
  double psi;
  double theta;
  double rho;
};

double pattern_search(const Polynomial3& f, BoundaryParams x) {
  auto value = [&](const BoundaryParams& q) {
    const TetraPoint p = distinguished_point(q.psi, q.theta, q.rho);
    return std::abs(f(p.x1, p.x2, p.x3));
  };
  double best = value(x);
  double step = 0.05;
  for (int iter = 0; iter < 400 && step > 1e-11; ++iter) {
    bool improved = false;
    for (int axis = 0; axis < 3; ++axis) {
      for (double sign : {1.0, -1.0}) {
        BoundaryParams y = x;
        double* coord = axis == 0 ? &y.psi : axis == 1 ? &y.theta : &y.rho;
        *coord += sign * step;
        y.rho = std::clamp(y.rho, 0.0, 1.0);
        const double v = value(y);
        if (v > best) {
          best = v;
          x = y;
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

}  // namespace

SupEstimate sup_poly_closure(const Polynomial3& f, std::size_t n, std::uint64_t seed,
                             const std::vector<TetraPoint>& extra) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sup_poly_closure needs n >= 1");
  SupEstimate est;
  double best = 0.0;
  for (const TetraPoint& p : sample_closure(n, seed)) best = std::max(best, std::abs(f(p.x1, p.x2, p.x3)));
  for (const TetraPoint& p : extra) best = std::max(best, std::abs(f(p.x1, p.x2, p.x3)));
  est.closure_samples = n + extra.size();

  // the supremum of a polynomial over the closure is attained on the
  // distinguished boundary, so sample there and refine the best starts
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::pair<double, BoundaryParams>> scored;
  scored.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const BoundaryParams q{angle(rng), angle(rng), std::sqrt(unit(rng))};
    const TetraPoint p = distinguished_point(q.psi, q.theta, q.rho);
    scored.emplace_back(std::abs(f(p.x1, p.x2, p.x3)), q);
  }
  for (const TetraPoint& p : extra) {
    if (std::abs(std::abs(p.x3) - 1.0) < 1e-6) {
      scored.emplace_back(std::abs(f(p.x1, p.x2, p.x3)),
                          BoundaryParams{std::arg(p.x3), std::arg(p.x2), std::min(1.0, std::abs(p.x2))});
    }
  }
  est.boundary_samples = n;
  const std::size_t starts = std::min<std::size_t>(10, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(starts), scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  for (const auto& [v, q] : scored) best = std::max(best, v);
  for (std::size_t i = 0; i < starts; ++i) best = std::max(best, pattern_search(f, scored[i].second));
  est.value = best;
  return est;
}

bool triangular_closure_membership(const TetraPoint& p, double tol) {
  return std::abs(p.x1 * p.x2 - p.x3) <= tol && std::abs(p.x1) <= 1.0 + tol &&
         std::abs(p.x2) <= 1.0 + tol;
}

}  // namespace tetra
