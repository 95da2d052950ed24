#pragma once

#include "lrmoa/linalg.hpp"

namespace lrmoa {

// Tangent/normal cones of the fixed-rank manifold M^s, the low-rank set
// M(r) and the flat subspaces M_X(J), evaluated at the base point carried by
// an SVD. Cones are never materialized; only projections and membership
// predicates exist. All memberships are tolerance-relative.

Matrix project_tangent_fixed_rank(const ThinSVD& svd, const Matrix& z);
Matrix project_normal_fixed_rank(const ThinSVD& svd, const Matrix& z);

struct ConeQuery {
  ThinSVD svd;
  Index r = 0;
  double tol = kDefaultTol;

  ConeQuery(ThinSVD base, Index rank_bound, double tolerance = kDefaultTol);

  Index s() const { return svd.rank; }
};

bool in_tangent_bouligand_Mr(const ConeQuery& q, const Matrix& h);
bool in_normal_frechet_Mr(const ConeQuery& q, const Matrix& w);
bool in_normal_mordukhovich_Mr(const ConeQuery& q, const Matrix& w);

/// Normal space of the flat subspace through X spanned by the columns J of
/// the right (m >= n) or left (m < n) singular basis.
bool in_normal_MXJ(const ThinSVD& svd, const IndexSet& j, const Matrix& w,
                   double tol = kDefaultTol);
bool in_normal_frechet_MXr(const ConeQuery& q, const Matrix& w);

/// All size-r supersets of {0..s-1} inside {0..k-1}, lexicographic.
std::vector<IndexSet> enumerate_J(Index s, Index k, Index r,
                                  std::size_t cap = 1'000'000);

/// Rank with the cone tests' threshold: singular values above
/// max(rel_tol * sigma_1, tol * max(1, scale)).
Index cone_rank(const Matrix& x, double rel_tol, double tol, double scale);

}  // namespace lrmoa
