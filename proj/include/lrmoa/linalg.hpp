#pragma once

#include "lrmoa/types.hpp"

namespace lrmoa {

/**
 * Full singular value decomposition X = U diag(sigma) V^T with a numerical
 * rank.
 *
 * U is m x m and V is n x n, both orthogonal. sigma holds the min(m, n)
 * singular values in nonincreasing order. The index set of "nonzero"
 * singular values is always the prefix {0, ..., rank - 1}, where an entry
 * counts as nonzero when it exceeds rank_tol = rel_tol * sigma_1.
 */
struct ThinSVD {
  Matrix u;
  Vector sigma;
  Matrix v;
  Index rank = 0;
  double rank_tol = 0.0;
  double rel_tol = kDefaultRankTol;

  Index rows() const { return u.rows(); }
  Index cols() const { return v.rows(); }
  Index s() const { return rank; }

  auto u_gamma() const { return u.leftCols(rank); }
  auto u_perp() const { return u.rightCols(u.cols() - rank); }
  auto v_gamma() const { return v.leftCols(rank); }
  auto v_perp() const { return v.rightCols(v.cols() - rank); }

  /// k-th singular value, zero-based; zero past min(m, n).
  double sigma_at(Index k) const {
    return k < sigma.size() ? sigma(k) : 0.0;
  }

  Matrix reconstruct() const;

  /// Assemble from explicit factors (used when a specific basis is wanted,
  /// e.g. a hand-chosen diagonalization). Rank is recomputed from sigma.
  static ThinSVD from_factors(Matrix u, Vector sigma, Matrix v,
                              double rel_tol = kDefaultRankTol);
};

ThinSVD thin_svd(const Matrix& x, double rel_tol = kDefaultRankTol);

/// As thin_svd, then fixes signs: in every singular pair the
/// largest-magnitude entry of the U column is nonnegative (lowest row index
/// wins ties). Columns without a partner are normalized the same way.
ThinSVD orient_svd(const Matrix& x, double rel_tol = kDefaultRankTol);
void orient(ThinSVD& svd);

/// V_G diag(sigma_G)^{-1} U_G^T; zero matrix for rank 0.
Matrix pseudo_inverse(const ThinSVD& svd);

struct LowRankProjection {
  Matrix matrix;
  // sigma_r <= sigma_{r+1} + rank_tol: the projection is not unique.
  bool tie = false;
};

LowRankProjection project_low_rank(const Matrix& z, Index r,
                                   double rel_tol = kDefaultRankTol);

double spectral_norm(const Matrix& x);
Index rank_estimate(const Matrix& x, double rel_tol = kDefaultRankTol);

/// Count of entries of a nonincreasing sequence above
/// max(rel_tol * sv(0), abs_floor).
Index numerical_rank(const Vector& singular_values, double rel_tol,
                     double abs_floor = 0.0);

Vector singular_values(const Matrix& x);

/// Column-major vectorization; Frobenius inner products become dot products.
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v, Index rows, Index cols);

/// Rows are vec(mats[i])^T.
Matrix stack_rows(const std::vector<Matrix>& mats, Index rows, Index cols);

struct LeastSquares {
  Vector x;
  double residual = 0.0;
  Index rank = 0;
};

/// Minimum-norm least-squares solution of a x = b. Singular values below
/// rel_tol * sigma_1 are treated as zero.
LeastSquares solve_min_norm(const Matrix& a, const Vector& b,
                            double rel_tol = 1e-12);

/// Orthonormal basis (columns) of the nullspace of a, with a.cols() rows.
Matrix nullspace(const Matrix& a, double rel_tol = kDefaultRankTol,
                 double abs_floor = 0.0);

void require_finite(const Matrix& x, const char* what);

}  // namespace lrmoa
