#pragma once

#include "tetra/numerics.hpp"

#include <array>
#include <cstdint>
#include <map>

namespace tetra {

/// Polynomial in three complex variables stored as exponent triple -> coefficient.
class Polynomial3 {
 public:
  using Exponents = std::array<int, 3>;

  Polynomial3() = default;

  void set(int e1, int e2, int e3, Complex c);
  void add(int e1, int e2, int e3, Complex c);
  const std::map<Exponents, Complex>& terms() const { return terms_; }
  int degree() const;

  Complex operator()(Complex z1, Complex z2, Complex z3) const;

  /// f(A, B, P) for commuting square matrices of equal size.
  Matrix operator()(const Matrix& a, const Matrix& b, const Matrix& p) const;

  static Polynomial3 constant(Complex c);
  static Polynomial3 monomial(int e1, int e2, int e3, Complex c = 1.0);

  /// Random polynomial with Gaussian coefficients on every monomial of total
  /// degree <= degree.
  static Polynomial3 random(int degree, std::uint64_t seed);

  Polynomial3 operator+(const Polynomial3& o) const;
  Polynomial3 operator-(const Polynomial3& o) const;

 private:
  std::map<Exponents, Complex> terms_;
};

}  // namespace tetra
