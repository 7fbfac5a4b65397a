#pragma once

#include "tetra/numerics.hpp"

#include <initializer_list>

namespace testing {

using tetra::Complex;
using tetra::Matrix;

inline Matrix scalar(Complex v) {
  Matrix m(1, 1);
  m(0, 0) = v;
  return m;
}

inline Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  Matrix m(static_cast<tetra::Index>(rows.size()), static_cast<tetra::Index>(rows.begin()->size()));
  tetra::Index i = 0;
  for (const auto& r : rows) {
    tetra::Index k = 0;
    for (const auto& v : r) m(i, k++) = v;
    ++i;
  }
  return m;
}

inline Matrix diag(std::initializer_list<Complex> d) {
  Matrix m = Matrix::Zero(static_cast<tetra::Index>(d.size()), static_cast<tetra::Index>(d.size()));
  tetra::Index i = 0;
  for (const auto& v : d) m(i, i) = v, ++i;
  return m;
}

inline Matrix jordan(tetra::Index n) {
  Matrix m = Matrix::Zero(n, n);
  for (tetra::Index i = 0; i + 1 < n; ++i) m(i, i + 1) = 1.0;
  return m;
}

// Random Hermitian PSD matrix G G*.
inline Matrix random_psd(tetra::Index n, std::uint64_t seed) {
  const Matrix g = tetra::random_gaussian(n, n, seed);
  return g * g.adjoint();
}

}  // namespace testing
