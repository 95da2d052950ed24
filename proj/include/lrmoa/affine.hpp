#pragma once

#include "lrmoa/types.hpp"

#include <optional>

namespace lrmoa {

/// The affine constraints <A^i, X> = b_i, i = 1..l, on m x n matrices.
/// l may be zero; linearly dependent A^i are allowed.
class AffineMap {
 public:
  AffineMap(Index rows, Index cols);
  AffineMap(Index rows, Index cols, std::vector<Matrix> mats, Vector rhs);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index size() const { return static_cast<Index>(mats_.size()); }
  bool empty() const { return mats_.empty(); }

  const std::vector<Matrix>& matrices() const { return mats_; }
  const Matrix& matrix(Index i) const { return mats_.at(static_cast<std::size_t>(i)); }
  const Vector& rhs() const { return rhs_; }

  void add(Matrix a, double b);

  /// l x mn matrix whose rows are vec(A^i)^T.
  Matrix stack() const;
  Index stack_rank(double rel_tol = kDefaultRankTol) const;

 private:
  Index rows_;
  Index cols_;
  std::vector<Matrix> mats_;
  Vector rhs_;
};

Vector apply(const AffineMap& a, const Matrix& x);
Matrix adjoint(const AffineMap& a, const Vector& y);
double feasibility_residual(const AffineMap& a, const Matrix& x);

/// Frobenius-orthonormal basis of ker A (the tangent space of the affine
/// manifold). Has mn - rank(stack) elements.
std::vector<Matrix> kernel_basis(const AffineMap& a,
                                 double rel_tol = kDefaultRankTol);

struct NormalSpaceFit {
  bool member = false;
  std::optional<Vector> y;
  double residual = 0.0;
};

/// Least-squares fit w ~ sum y_i A^i. Member iff the residual is at most
/// tol * max(1, |w|_F); y is reported only for members.
NormalSpaceFit normal_space_member(const AffineMap& a, const Matrix& w,
                                   double tol = kDefaultTol);

}  // namespace lrmoa
