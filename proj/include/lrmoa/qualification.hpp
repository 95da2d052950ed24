#pragma once

#include "lrmoa/affine.hpp"
#include "lrmoa/linalg.hpp"

#include <string>

namespace lrmoa {

enum class IntersectionRuleCase {
  eq_full_rank,       // s = r with independent T^i
  eq_rank_deficient,  // s < r with independent R^i
  not_certified,
};

std::string to_string(IntersectionRuleCase c);

struct IndependenceCheck {
  bool holds = false;
  Index rank = 0;
  std::vector<std::string> warnings;
};

struct QualificationReport {
  Index s = 0;
  Index r = 0;
  Index l = 0;
  Index t_rank = 0;
  Index r_rank = 0;
  bool assumption1 = false;
  bool assumption2 = false;
  bool bq_mordukhovich = false;
  bool bq_subspace = false;
  IntersectionRuleCase intersection_rule_case = IntersectionRuleCase::not_certified;
  bool rank_fragile = false;
  std::vector<std::string> warnings;
};

/// Compressed constraint matrices: U^T A^i V with the lower-right
/// (m-s) x (n-s) block zeroed.
std::vector<Matrix> build_T(const ThinSVD& svd, const AffineMap& a);

/// U^T A^i V_G, each m x s.
std::vector<Matrix> build_R(const ThinSVD& svd, const AffineMap& a);

/// Numerical rank of a family of equally-shaped matrices: singular values of
/// the vectorized stack above max(rel_tol * sigma_1, rel_tol * abs_scale).
Index family_rank(const std::vector<Matrix>& mats, double rel_tol,
                  double abs_scale);

IndependenceCheck assumption1_holds(const ThinSVD& svd, const AffineMap& a,
                                    double tol = kDefaultRankTol);
IndependenceCheck assumption2_holds(const ThinSVD& svd, const AffineMap& a,
                                    double tol = kDefaultRankTol);

QualificationReport bq_certificates(const ThinSVD& svd, const AffineMap& a,
                                    Index r, double tol = kDefaultRankTol);

struct FeasibleNormalFit {
  bool member = false;
  Vector y;
  double residual = 0.0;
  IntersectionRuleCase rule = IntersectionRuleCase::not_certified;
};

/// Membership of w in the Frechet normal cone of L cap M(r) at the base
/// point, via the sum rule N_L + N^F_{M(r)}. Throws QualificationError where
/// the sum rule is not certified.
FeasibleNormalFit frechet_normal_of_feasible_set(const ThinSVD& svd,
                                                 const AffineMap& a, Index r,
                                                 const Matrix& w,
                                                 double tol = kDefaultTol);

}  // namespace lrmoa
