#include "tetra/instances.hpp"

#include "tetra/error.hpp"
#include "tetra/models.hpp"

#include <numbers>
#include <random>

namespace tetra {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Matrix scaled_to(const Matrix& m, double target) {
  const double n = op_norm(m);
  return n == 0.0 ? m : m * (target / n);
}

Complex random_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  return std::polar(r, kTwoPi * unit(rng));
}

void require_dim(Index n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "dimension must be >= 1");
}

void require_margin(double margin) {
  if (!(margin > 0.0) || margin >= 1.0) throw Error(ErrorCode::InvalidArgument, "margin must lie in (0, 1)");
}

std::pair<Matrix, Matrix> polynomial_pair(Index n, std::uint64_t seed, double margin) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Matrix x = scaled_to(random_gaussian(n, n, seed), 1.0);
  auto poly = [&](std::uint64_t s) {
    const Matrix a = random_gaussian(4, 1, s);
    const int degree = 1 + static_cast<int>(rng() % 3);
    Matrix sum = a(0, 0) * Matrix::Identity(n, n);
    Matrix power = Matrix::Identity(n, n);
    for (int k = 1; k <= degree; ++k) {
      power = power * x;
      sum += a(k, 0) * power;
    }
    return scaled_to(sum, (1.0 - margin) * (0.5 + 0.5 * unit(rng)));
  };
  Matrix p = poly(seed * 31 + 1);
  Matrix q = poly(seed * 31 + 2);
  return {p, q};
}

}  // namespace

const char* to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::Contraction: return "contraction";
    case InstanceKind::CommutingPair: return "commuting-pair";
    case InstanceKind::Unitary: return "unitary";
    case InstanceKind::Projection: return "projection";
    case InstanceKind::TriangularTriple: return "triangular-triple";
    case InstanceKind::DSSGroundTruth: return "dss-ground-truth";
    case InstanceKind::StrictGenerators: return "strict-generators";
  }
  return "unknown";
}

const char* to_string(PairMode m) {
  switch (m) {
    case PairMode::Polynomial: return "polynomial";
    case PairMode::DirectSum: return "direct-sum";
    case PairMode::Normal: return "normal";
    case PairMode::Dilatable: return "dilatable";
  }
  return "unknown";
}

InstanceKind parse_instance_kind(const std::string& s) {
  for (InstanceKind k : {InstanceKind::Contraction, InstanceKind::CommutingPair, InstanceKind::Unitary,
                         InstanceKind::Projection, InstanceKind::TriangularTriple, InstanceKind::DSSGroundTruth,
                         InstanceKind::StrictGenerators}) {
    if (s == to_string(k)) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown instance kind '" + s + "'");
}

PairMode parse_pair_mode(const std::string& s) {
  for (PairMode m : {PairMode::Polynomial, PairMode::DirectSum, PairMode::Normal, PairMode::Dilatable}) {
    if (s == to_string(m)) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pair mode '" + s + "'");
}

Matrix random_contraction(Index n, double margin, std::uint64_t seed) {
  require_dim(n);
  require_margin(margin);
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::uniform_real_distribution<double> unit(0.5, 1.0);
  return scaled_to(random_gaussian(n, n, seed), (1.0 - margin) * unit(rng));
}

Matrix random_unitary(Index n, std::uint64_t seed) {
  require_dim(n);
  const Matrix g = random_gaussian(n, n, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

Matrix random_projection(Index n, Index rank, std::uint64_t seed) {
  require_dim(n);
  if (rank < 0 || rank > n) throw Error(ErrorCode::InvalidArgument, "projection rank must lie in [0, dim]");
  const Matrix v = random_unitary(n, seed).leftCols(rank);
  return v * v.adjoint();
}

std::pair<Matrix, Matrix> random_commuting_pair(Index n, std::uint64_t seed, PairMode mode, double margin) {
  require_dim(n);
  require_margin(margin);
  std::mt19937_64 rng(seed ^ 0x2545f4914f6cdd1dULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (mode) {
    case PairMode::Polynomial:
      return polynomial_pair(n, seed, margin);
    case PairMode::DirectSum: {
      if (n == 1) return polynomial_pair(n, seed, margin);
      const Index n1 = n / 2;
      const auto [p1, q1] = polynomial_pair(n1, seed * 2 + 11, margin);
      const auto [p2, q2] = polynomial_pair(n - n1, seed * 2 + 12, margin);
      return {block_diag(p1, p2), block_diag(q1, q2)};
    }
    case PairMode::Normal: {
      const Matrix v = random_unitary(n, seed);
      Vector p(n);
      Vector q(n);
      for (Index i = 0; i < n; ++i) {
        p(i) = random_in_disk(rng, 1.0 - margin);
        q(i) = random_in_disk(rng, 1.0 - margin);
      }
      return {v * p.asDiagonal() * v.adjoint(), v * q.asDiagonal() * v.adjoint()};
    }
    case PairMode::Dilatable: {
      const Index m = n == 1 ? 1 : 2 + static_cast<Index>(rng() % static_cast<std::uint64_t>(n - 1));
      Matrix jordan = Matrix::Zero(m, m);
      for (Index i = 0; i + 1 < m; ++i) jordan(i, i + 1) = 1.0;
      const double t = 0.3 + (1.0 - margin - 0.3) * unit(rng);
      const Complex u = std::polar(1.0, kTwoPi * unit(rng));
      Matrix p = t * jordan;
      Matrix q = u * Matrix::Identity(m, m);
      if (m < n) {
        const auto [pn, qn] = random_commuting_pair(n - m, seed * 7 + 3, PairMode::Normal, margin);
        p = block_diag(p, pn);
        q = block_diag(q, qn);
      }
      const Matrix v = random_unitary(n, seed * 7 + 5);
      return {v * p * v.adjoint(), v * q * v.adjoint()};
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown pair mode");
}

CommutingTriple random_triangular_triple(Index n, std::uint64_t seed, PairMode mode, double margin) {
  auto [p, q] = random_commuting_pair(n, seed, mode, margin);
  Matrix pq = p * q;
  return CommutingTriple(std::move(p), std::move(q), std::move(pq));
}

std::pair<Matrix, Matrix> random_strict_generators(Index d, std::uint64_t seed) {
  require_dim(d);
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Index m = (d >= 2 && rng() % 2 == 0) ? 2 : 0;
  Matrix a1 = Matrix::Zero(d, d);
  Matrix a2 = Matrix::Zero(d, d);
  if (m == 2) {
    const Matrix mm = scaled_to(random_gaussian(2, 2, seed * 13 + 1), 0.45 * (0.2 + 0.8 * unit(rng)));
    const Complex c = std::polar(1.0, kTwoPi * unit(rng));
    a1.topLeftCorner(2, 2) = mm;
    a2.topLeftCorner(2, 2) = c * mm;
  }
  for (Index i = m; i < d; ++i) {
    const double s = 0.95 * unit(rng);
    const double lambda = unit(rng);
    a1(i, i) = std::polar(s * lambda, kTwoPi * unit(rng));
    a2(i, i) = std::polar(s * (1.0 - lambda), kTwoPi * unit(rng));
  }
  const Matrix v = random_unitary(d, seed * 13 + 2);
  return {v * a1 * v.adjoint(), v * a2 * v.adjoint()};
}

DSSInstance dss_ground_truth(Index d, Index k, std::uint64_t seed, bool staircase) {
  require_dim(d);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::mt19937_64 rng(seed ^ 0x94d049bb133111ebULL);
  const bool split = staircase && d >= 2;
  Matrix p;
  Matrix u;
  Matrix e1;  // orthonormal basis of the subspace kept in the last block
  if (split) {
    const Index d1 = 1 + static_cast<Index>(rng() % static_cast<std::uint64_t>(d - 1));
    const Index d2 = d - d1;
    const Index r1 = static_cast<Index>(rng() % static_cast<std::uint64_t>(d1 + 1));
    const Index r2 = static_cast<Index>(rng() % static_cast<std::uint64_t>(d2 + 1));
    const Matrix v = random_unitary(d, seed * 17 + 1);
    p = v * block_diag(random_projection(d1, r1, seed * 17 + 2), random_projection(d2, r2, seed * 17 + 3)) *
        v.adjoint();
    u = v * block_diag(random_unitary(d1, seed * 17 + 4), random_unitary(d2, seed * 17 + 5)) * v.adjoint();
    e1 = v.leftCols(d1);
  } else {
    const Index r = static_cast<Index>(rng() % static_cast<std::uint64_t>(d + 1));
    p = random_projection(d, r, seed * 17 + 2);
    u = random_unitary(d, seed * 17 + 4);
    e1 = Matrix::Identity(d, d);
  }
  const Index n_blocks = k + 1;
  const Index h_dim = (k - 1) * d + e1.cols();
  Matrix j = Matrix::Zero(n_blocks * d, h_dim);
  j.topLeftCorner((k - 1) * d, (k - 1) * d).setIdentity();
  j.block((k - 1) * d, (k - 1) * d, d, e1.cols()) = e1;

  DSSInstance out;
  out.certificate = {d, p, u, n_blocks, j};
  out.T1 = j.adjoint() * toeplitz_truncate(dss_phi(p, u), n_blocks) * j;
  out.T2 = j.adjoint() * toeplitz_truncate(dss_psi(p, u), n_blocks) * j;
  return out;
}

Instance generate(const InstanceSpec& spec) {
  Instance out;
  out.kind = spec.kind;
  switch (spec.kind) {
    case InstanceKind::Contraction:
      out.matrices["T"] = random_contraction(spec.dim, spec.margin, spec.seed);
      break;
    case InstanceKind::CommutingPair: {
      auto [p, q] = random_commuting_pair(spec.dim, spec.seed, spec.mode, spec.margin);
      out.matrices["T1"] = p;
      out.matrices["T2"] = q;
      break;
    }
    case InstanceKind::Unitary:
      out.matrices["U"] = random_unitary(spec.dim, spec.seed);
      break;
    case InstanceKind::Projection:
      out.matrices["P"] = random_projection(spec.dim, spec.rank, spec.seed);
      break;
    case InstanceKind::TriangularTriple: {
      const CommutingTriple t = random_triangular_triple(spec.dim, spec.seed, spec.mode, spec.margin);
      out.matrices["A"] = t.A();
      out.matrices["B"] = t.B();
      out.matrices["P"] = t.P();
      break;
    }
    case InstanceKind::DSSGroundTruth: {
      DSSInstance inst = dss_ground_truth(spec.dim, spec.k, spec.seed, spec.staircase);
      out.matrices["T1"] = inst.T1;
      out.matrices["T2"] = inst.T2;
      out.certificate = inst.certificate;
      break;
    }
    case InstanceKind::StrictGenerators: {
      auto [a1, a2] = random_strict_generators(spec.dim, spec.seed);
      out.matrices["A1"] = a1;
      out.matrices["A2"] = a2;
      break;
    }
  }
  return out;
}

}  // namespace tetra
