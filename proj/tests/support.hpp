#pragma once

#include "lrmoa/types.hpp"

#include <cstdint>
#include <random>

namespace lrmoa::testing {

inline Matrix e_outer(Index m, Index n, Index i, Index j) {
  Matrix x = Matrix::Zero(m, n);
  x(i, j) = 1.0;
  return x;
}

inline Matrix gaussian(Index m, Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix x(m, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i) x(i, j) = g(rng);
  return x;
}

inline Vector gaussian(Index k, std::mt19937_64& rng) {
  return gaussian(k, 1, rng).col(0);
}

/// Random m x n matrix of exact rank s, built from Gaussian factors.
inline Matrix random_rank(Index m, Index n, Index s, std::mt19937_64& rng) {
  if (s == 0) return Matrix::Zero(m, n);
  return gaussian(m, s, rng) * gaussian(s, n, rng);
}

inline double inner(const Matrix& a, const Matrix& b) { return (a.array() * b.array()).sum(); }

}  // namespace lrmoa::testing
