#include "tetra/polynomial.hpp"

#include "tetra/error.hpp"

#include <random>

namespace tetra {

namespace {

Complex ipow(Complex z, int e) {
  Complex r = 1.0;
  for (int i = 0; i < e; ++i) r *= z;
  return r;
}

}  // namespace

void Polynomial3::set(int e1, int e2, int e3, Complex c) {
  if (e1 < 0 || e2 < 0 || e3 < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  terms_[{e1, e2, e3}] = c;
}

void Polynomial3::add(int e1, int e2, int e3, Complex c) {
  if (e1 < 0 || e2 < 0 || e3 < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  terms_[{e1, e2, e3}] += c;
}

int Polynomial3::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    if (c != Complex(0.0)) d = std::max(d, e[0] + e[1] + e[2]);
  }
  return d;
}

Complex Polynomial3::operator()(Complex z1, Complex z2, Complex z3) const {
  Complex sum = 0.0;
  for (const auto& [e, c] : terms_) {
    sum += c * ipow(z1, e[0]) * ipow(z2, e[1]) * ipow(z3, e[2]);
  }
  return sum;
}

Matrix Polynomial3::operator()(const Matrix& a, const Matrix& b, const Matrix& p) const {
  require_square(a, "A");
  if (b.rows() != a.rows() || p.rows() != a.rows() || !is_square(b) || !is_square(p)) {
    throw Error(ErrorCode::DimensionMismatch, "polynomial arguments differ in size");
  }
  const Index n = a.rows();
  std::array<int, 3> top{0, 0, 0};
  for (const auto& [e, c] : terms_) {
    for (int k = 0; k < 3; ++k) top[static_cast<std::size_t>(k)] = std::max(top[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]);
  }
  auto powers = [n](const Matrix& x, int m) {
    std::vector<Matrix> out{Matrix::Identity(n, n)};
    for (int i = 1; i <= m; ++i) out.push_back(out.back() * x);
    return out;
  };
  const auto pa = powers(a, top[0]);
  const auto pb = powers(b, top[1]);
  const auto pp = powers(p, top[2]);
  Matrix sum = Matrix::Zero(n, n);
  for (const auto& [e, c] : terms_) {
    if (c == Complex(0.0)) continue;
    sum += c * (pa[static_cast<std::size_t>(e[0])] * pb[static_cast<std::size_t>(e[1])] *
                pp[static_cast<std::size_t>(e[2])]);
  }
  return sum;
}

Polynomial3 Polynomial3::constant(Complex c) { return monomial(0, 0, 0, c); }

Polynomial3 Polynomial3::monomial(int e1, int e2, int e3, Complex c) {
  Polynomial3 f;
  f.set(e1, e2, e3, c);
  return f;
}

Polynomial3 Polynomial3::random(int degree, std::uint64_t seed) {
  if (degree < 0) throw Error(ErrorCode::InvalidArgument, "degree must be >= 0");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Polynomial3 f;
  for (int total = 0; total <= degree; ++total) {
    for (int e1 = 0; e1 <= total; ++e1) {
      for (int e2 = 0; e1 + e2 <= total; ++e2) {
        const double re = normal(rng);
        const double im = normal(rng);
        f.set(e1, e2, total - e1 - e2, Complex(re, im));
      }
    }
  }
  return f;
}

Polynomial3 Polynomial3::operator+(const Polynomial3& o) const {
  Polynomial3 r = *this;
  for (const auto& [e, c] : o.terms_) r.terms_[e] += c;
  return r;
}

Polynomial3 Polynomial3::operator-(const Polynomial3& o) const {
  Polynomial3 r = *this;
  for (const auto& [e, c] : o.terms_) r.terms_[e] -= c;
  return r;
}

}  // namespace tetra
