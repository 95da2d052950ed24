#include "lrmoa/stationarity.hpp"

#include "lrmoa/cones.hpp"

#include <algorithm>
#include <cmath>

namespace lrmoa {

namespace {

struct MultiplierFit {
  Vector y;
  double residual = 0.0;
};

// min_y |P(grad f + A* y)|_F with P the tangent projection (tangent_only) or
// the identity.
MultiplierFit fit_multiplier(const ProblemSpec& prob, const ThinSVD& svd,
                             const Matrix& grad_f, bool tangent_only) {
  const AffineMap& a = prob.affine;
  auto project = [&](const Matrix& z) -> Matrix {
    return tangent_only ? project_tangent_fixed_rank(svd, z) : z;
  };
  Matrix columns(grad_f.size(), a.size());
  for (Index i = 0; i < a.size(); ++i) columns.col(i) = vec(project(a.matrix(i)));
  const LeastSquares ls = solve_min_norm(columns, -vec(project(grad_f)));
  MultiplierFit fit;
  fit.y = ls.x.size() == a.size() ? ls.x : Vector::Zero(a.size());
  fit.residual = ls.residual;
  return fit;
}

double gradient_scale(const Matrix& grad_f) { return std::max(1.0, grad_f.norm()); }

}  // namespace

double lagrangian(const ProblemSpec& prob, const Matrix& x, const Vector& y) {
  const Vector residual = apply(prob.affine, x) - prob.affine.rhs();
  if (y.size() != residual.size()) throw ShapeError("lagrangian: multiplier length mismatch");
  return prob.objective.value(x) + y.dot(residual);
}

Matrix lagrangian_grad(const ProblemSpec& prob, const Matrix& x, const Vector& y) {
  return prob.objective.gradient(x) + adjoint(prob.affine, y);
}

bool is_feasible(const ProblemSpec& prob, const Matrix& x, const ThinSVD& svd,
                 double* residual) {
  const double res = feasibility_residual(prob.affine, x);
  if (residual != nullptr) *residual = res;
  return res <= prob.tol * std::max(1.0, prob.affine.rhs().norm()) &&
         svd.rank <= prob.rank_bound;
}

StationarityReport check_F_stationary(const ProblemSpec& prob, const Matrix& x) {
  prob.validate();
  const ThinSVD svd = orient_svd(x, prob.rank_tol);
  const Matrix grad_f = prob.objective.gradient(x);

  StationarityReport rep;
  rep.s = svd.rank;
  rep.r = prob.rank_bound;
  rep.scale = gradient_scale(grad_f);
  rep.feasible = is_feasible(prob, x, svd, &rep.feasibility_residual);
  rep.y = Vector::Zero(prob.affine.size());
  rep.grad_lagrangian = grad_f;
  if (!rep.feasible) return rep;

  const MultiplierFit fit = fit_multiplier(prob, svd, grad_f, rep.s == rep.r);
  rep.y = fit.y;
  rep.f_residual = fit.residual;
  rep.grad_lagrangian = grad_f + adjoint(prob.affine, rep.y);
  rep.is_F = rep.f_residual <= prob.tol * rep.scale;
  rep.beta = beta_bound(prob, x, rep.y);
  return rep;
}

bool check_alpha_stationary(const ProblemSpec& prob, const Matrix& x,
                            const Vector& y, double alpha, AlphaRoute route) {
  if (!(alpha > 0.0)) throw InputError("alpha must be positive");
  prob.validate();
  const ThinSVD svd = orient_svd(x, prob.rank_tol);
  if (!is_feasible(prob, x, svd)) return false;

  const Matrix grad_f = prob.objective.gradient(x);
  const Matrix grad_l = grad_f + adjoint(prob.affine, y);
  const Index r = prob.rank_bound;

  if (route == AlphaRoute::characterization) {
    if (svd.rank < r) return grad_l.norm() <= prob.tol;
    const double scale = gradient_scale(grad_f);
    if (project_tangent_fixed_rank(svd, grad_l).norm() > prob.tol * scale) return false;
    return spectral_norm(grad_l) <= svd.sigma_at(r - 1) / alpha + prob.tol;
  }

  // X is a nearest rank-r point of Z iff |Z - X|_F equals the Eckart-Young
  // distance, i.e. the norm of the trailing singular values of Z.
  const Matrix z = x - alpha * grad_l;
  const Vector sv = singular_values(z);
  const double tail_sq = sv.tail(sv.size() - r).squaredNorm();
  const double dist_sq = (z - x).squaredNorm();
  const double slack = std::pow(alpha * prob.tol * gradient_scale(grad_f), 2) +
                       1e-13 * std::max(1.0, z.squaredNorm());
  return dist_sq - tail_sq <= slack;
}

double beta_bound(const ProblemSpec& prob, const Matrix& x, const Vector& y) {
  const Matrix grad_f = prob.objective.gradient(x);
  const Matrix grad_l = grad_f + adjoint(prob.affine, y);
  if (grad_l.norm() <= prob.tol * gradient_scale(grad_f)) {
    return std::numeric_limits<double>::infinity();
  }
  const Index r = prob.rank_bound;
  const Vector sv = singular_values(x);
  const double sigma_r = r >= 1 && r - 1 < sv.size() ? sv(r - 1) : 0.0;
  return sigma_r / spectral_norm(grad_l);
}

MStationarity check_M_stationary(const ProblemSpec& prob, const Matrix& x,
                                 const std::optional<Vector>& y_hint) {
  prob.validate();
  const ThinSVD svd = orient_svd(x, prob.rank_tol);
  const Matrix grad_f = prob.objective.gradient(x);

  MStationarity out;
  if (y_hint) {
    if (y_hint->size() != prob.affine.size()) {
      throw ShapeError("check_M_stationary: multiplier length mismatch");
    }
    out.y = *y_hint;
  } else {
    out.y = fit_multiplier(prob, svd, grad_f, true).y;
  }
  if (!is_feasible(prob, x, svd)) return out;

  const Matrix grad_l = grad_f + adjoint(prob.affine, out.y);
  const double scale = gradient_scale(grad_f);
  if (project_tangent_fixed_rank(svd, grad_l).norm() > prob.tol * scale) return out;
  const Index k = std::min(x.rows(), x.cols());
  out.holds = cone_rank(grad_l, prob.rank_tol, prob.tol, scale) <= k - prob.rank_bound;
  return out;
}

StationarityReport classify_first_order(const ProblemSpec& prob, const Matrix& x,
                                        std::optional<double> alpha) {
  StationarityReport rep = check_F_stationary(prob, x);
  if (!rep.feasible) {
    rep.notes.push_back("point is infeasible; no stationarity verdicts apply");
    return rep;
  }

  const Objective& f = prob.objective;
  const ThinSVD svd = orient_svd(x, prob.rank_tol);
  rep.qualification = bq_certificates(svd, prob.affine, prob.rank_bound, prob.rank_tol);
  const QualificationReport& q = *rep.qualification;

  const MStationarity m = check_M_stationary(
      prob, x, rep.is_F ? std::optional<Vector>(rep.y) : std::nullopt);
  rep.is_M = m.holds;
  if (!rep.is_F) {
    rep.notes.push_back("M-stationarity tested at the minimum-norm multiplier only");
  }

  const double step = alpha.value_or(
      f.strong_convexity_modulus() ? 1.0 / *f.strong_convexity_modulus() : 0.5);
  rep.alpha_tested = step;
  rep.is_alpha = check_alpha_stationary(prob, x, rep.y, step);

  const bool full_rank = rep.s == rep.r;
  auto conclude = [&](const std::string& text, const std::string& why) {
    if (std::find(rep.classification.begin(), rep.classification.end(), text) ==
        rep.classification.end()) {
      rep.classification.push_back(text);
      rep.notes.push_back(text + ": " + why);
    }
  };

  if (f.convex() && rep.is_F) {
    if (full_rank) {
      conclude(conclusions::kGlobalOnFlat, "convex objective and F-stationary at full rank");
    } else {
      conclude(conclusions::kGlobal, "convex objective and F-stationary below the rank bound");
    }
  }
  if (f.convex() && rep.is_M) {
    conclude(conclusions::kGlobalOnFlat, "convex objective and M-stationary");
  }
  if (const auto lf = f.strong_convexity_modulus();
      lf && *rep.is_alpha && step >= (1.0 / *lf) * (1.0 - 1e-12)) {
    conclude(conclusions::kUniqueGlobal,
             "strongly convex objective (modulus " + std::to_string(*lf) +
                 ") and alpha-stationary with alpha >= 1/modulus");
  }

  if (full_rank && q.assumption1) {
    if (rep.is_F) {
      rep.classification.push_back(
          "first-order necessary condition satisfied (T-independence holds)");
    } else {
      rep.classification.push_back(
          "not a local minimizer: F-stationarity fails although T-independence holds");
    }
  }
  if (!full_rank && q.assumption2) {
    if (rep.is_F) {
      rep.classification.push_back(
          "first-order necessary condition satisfied (R-independence holds)");
    } else {
      rep.classification.push_back(
          "not a local minimizer: F-stationarity fails although R-independence holds");
    }
  }
  if (q.assumption1 && !rep.is_M) {
    rep.classification.push_back(
        "not a local minimizer: M-stationarity fails although T-independence holds");
  }
  if (q.intersection_rule_case == IntersectionRuleCase::not_certified) {
    rep.notes.push_back("no constraint qualification certified; necessity results do not apply");
  }
  return rep;
}

}  // namespace lrmoa
