#pragma once

#include "lrmoa/affine.hpp"
#include "lrmoa/objective.hpp"

namespace lrmoa {

/// min f(X) s.t. A(X) = b, rank(X) <= r.
struct ProblemSpec {
  Objective objective;
  AffineMap affine;
  Index rank_bound = 0;
  double rank_tol = kDefaultRankTol;  // relative numerical-rank threshold
  double tol = kDefaultTol;           // membership / residual tolerance

  Index rows() const { return affine.rows(); }
  Index cols() const { return affine.cols(); }

  /// Throws ShapeError / InputError on incoherent fields. Requires
  /// 0 <= r < min(m, n).
  void validate() const;
};

}  // namespace lrmoa
