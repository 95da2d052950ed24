#include "lrmoa/qualification.hpp"

#include "lrmoa/cones.hpp"

#include <algorithm>

namespace lrmoa {

namespace {

void check_shape(const ThinSVD& svd, const AffineMap& a, const char* what) {
  if (svd.rows() != a.rows() || svd.cols() != a.cols()) {
    throw ShapeError(std::string(what) + ": constraint and base point shapes differ");
  }
}

double largest_norm(const AffineMap& a) {
  double top = 0.0;
  for (const Matrix& m : a.matrices()) top = std::max(top, m.norm());
  return top;
}

}  // namespace

std::string to_string(IntersectionRuleCase c) {
  switch (c) {
    case IntersectionRuleCase::eq_full_rank:
      return "eq_full_rank";
    case IntersectionRuleCase::eq_rank_deficient:
      return "eq_rank_deficient";
    case IntersectionRuleCase::not_certified:
      break;
  }
  return "not_certified";
}

std::vector<Matrix> build_T(const ThinSVD& svd, const AffineMap& a) {
  check_shape(svd, a, "build_T");
  const Index s = svd.rank;
  std::vector<Matrix> out;
  out.reserve(a.matrices().size());
  for (const Matrix& ai : a.matrices()) {
    Matrix t = svd.u.transpose() * ai * svd.v;
    t.bottomRightCorner(t.rows() - s, t.cols() - s).setZero();
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Matrix> build_R(const ThinSVD& svd, const AffineMap& a) {
  check_shape(svd, a, "build_R");
  std::vector<Matrix> out;
  out.reserve(a.matrices().size());
  for (const Matrix& ai : a.matrices()) {
    out.push_back(svd.u.transpose() * ai * svd.v_gamma());
  }
  return out;
}

Index family_rank(const std::vector<Matrix>& mats, double rel_tol,
                  double abs_scale) {
  if (mats.empty()) return 0;
  const Matrix stack = stack_rows(mats, mats.front().rows(), mats.front().cols());
  if (stack.cols() == 0) return 0;
  return numerical_rank(singular_values(stack), rel_tol,
                        rel_tol * std::max(1.0, abs_scale));
}

IndependenceCheck assumption1_holds(const ThinSVD& svd, const AffineMap& a,
                                    double tol) {
  IndependenceCheck out;
  const Index l = a.size();
  out.rank = family_rank(build_T(svd, a), tol, largest_norm(a));
  out.holds = out.rank == l;
  const Index m = svd.rows();
  const Index n = svd.cols();
  const Index s = svd.rank;
  const Index bound = m * n - (m - s) * (n - s);
  if (l > bound) {
    out.warnings.push_back("T-independence impossible: l = " + std::to_string(l) +
                           " exceeds mn - (m-s)(n-s) = " + std::to_string(bound));
  }
  return out;
}

IndependenceCheck assumption2_holds(const ThinSVD& svd, const AffineMap& a,
                                    double tol) {
  IndependenceCheck out;
  const Index l = a.size();
  out.rank = svd.rank == 0 ? 0 : family_rank(build_R(svd, a), tol, largest_norm(a));
  out.holds = out.rank == l;
  const Index bound = svd.rows() * svd.rank;
  if (l > bound) {
    out.warnings.push_back("R-independence impossible: l = " + std::to_string(l) +
                           " exceeds ms = " + std::to_string(bound));
  }
  return out;
}

QualificationReport bq_certificates(const ThinSVD& svd, const AffineMap& a,
                                    Index r, double tol) {
  QualificationReport rep;
  rep.s = svd.rank;
  rep.r = r;
  rep.l = a.size();

  IndependenceCheck a1 = assumption1_holds(svd, a, tol);
  IndependenceCheck a2 = assumption2_holds(svd, a, tol);
  rep.t_rank = a1.rank;
  rep.r_rank = a2.rank;
  rep.assumption1 = a1.holds;
  rep.assumption2 = a2.holds;
  rep.warnings = std::move(a1.warnings);
  rep.warnings.insert(rep.warnings.end(), a2.warnings.begin(), a2.warnings.end());

  // y -> P_T(sum y_i A^i) injective, i.e. N_{M^s} cap N_L = {0}.
  std::vector<Matrix> tangent_parts;
  tangent_parts.reserve(a.matrices().size());
  for (const Matrix& ai : a.matrices()) {
    tangent_parts.push_back(project_tangent_fixed_rank(svd, ai));
  }
  rep.bq_subspace = family_rank(tangent_parts, tol, largest_norm(a)) == rep.l;
  // N^M_{M(r)} is contained in N_{M^s}.
  rep.bq_mordukhovich = rep.bq_subspace;

  if (rep.s == r && rep.assumption1) {
    rep.intersection_rule_case = IntersectionRuleCase::eq_full_rank;
  } else if (rep.s < r && rep.assumption2) {
    rep.intersection_rule_case = IntersectionRuleCase::eq_rank_deficient;
  }

  const Index k = svd.sigma.size();
  const bool weak_last = rep.s > 0 && svd.sigma(rep.s - 1) <= 1e3 * svd.rank_tol;
  const bool strong_next = rep.s < k && svd.sigma(rep.s) > 1e-3 * svd.rank_tol &&
                           svd.sigma(rep.s) > 0.0;
  rep.rank_fragile = weak_last || strong_next;
  if (rep.rank_fragile) {
    rep.warnings.push_back("rank-fragile: a singular value lies near the rank tolerance");
  }
  return rep;
}

FeasibleNormalFit frechet_normal_of_feasible_set(const ThinSVD& svd,
                                                 const AffineMap& a, Index r,
                                                 const Matrix& w, double tol) {
  const QualificationReport rep = bq_certificates(svd, a, r);
  if (rep.intersection_rule_case == IntersectionRuleCase::not_certified) {
    throw QualificationError(
        "normal cone sum rule not certified at this point (s = " +
        std::to_string(rep.s) + ", r = " + std::to_string(r) + ")");
  }
  if (w.rows() != svd.rows() || w.cols() != svd.cols()) {
    throw ShapeError("frechet_normal_of_feasible_set: shape mismatch");
  }

  FeasibleNormalFit fit;
  fit.rule = rep.intersection_rule_case;
  const bool full_rank = rep.intersection_rule_case == IntersectionRuleCase::eq_full_rank;
  // Full rank: W - A*y must lie in N_{M^s}, i.e. its tangent part vanishes.
  // Rank deficient: W - A*y must vanish.
  Matrix columns(w.size(), a.size());
  for (Index i = 0; i < a.size(); ++i) {
    columns.col(i) = vec(full_rank ? project_tangent_fixed_rank(svd, a.matrix(i))
                                   : a.matrix(i));
  }
  const Vector target = vec(full_rank ? project_tangent_fixed_rank(svd, w) : w);
  const LeastSquares ls = solve_min_norm(columns, target);
  fit.y = ls.x.size() == a.size() ? ls.x : Vector::Zero(a.size());
  fit.residual = ls.residual;
  fit.member = fit.residual <= tol * std::max(1.0, w.norm());
  return fit;
}

}  // namespace lrmoa
