#include "lrmoa/solver.hpp"

#include "lrmoa/cones.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace lrmoa {

namespace {

constexpr double kDivergenceLimit = 1e12;

// Cached pseudo-inverse of the constraint stack.
class AffineProjector {
 public:
  explicit AffineProjector(const AffineMap& a) : a_(a) {
    if (a.empty()) return;
    const Matrix stack = a.stack();
    Eigen::JacobiSVD<Matrix> svd(stack, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    const double cut = sv.size() > 0 ? 1e-12 * sv(0) : 0.0;
    Vector inv = Vector::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > cut) inv(i) = 1.0 / sv(i);
    }
    pinv_ = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    stack_ = stack;
  }

  Matrix project(const Matrix& x, bool* consistent = nullptr) const {
    if (a_.empty()) {
      if (consistent != nullptr) *consistent = true;
      return x;
    }
    const Vector residual = stack_ * vec(x) - a_.rhs();
    const Matrix y = x - unvec(pinv_ * residual, x.rows(), x.cols());
    if (consistent != nullptr) {
      *consistent = feasibility_residual(a_, y) <= 1e-9 * std::max(1.0, a_.rhs().norm());
    }
    return y;
  }

 private:
  const AffineMap& a_;
  Matrix stack_;
  Matrix pinv_;
};

Vector recover_multiplier(const ProblemSpec& prob, const ThinSVD& svd, const Matrix& grad_f) {
  const AffineMap& a = prob.affine;
  if (a.empty()) return Vector();
  const bool tangent = svd.rank == prob.rank_bound;
  Matrix cols(grad_f.size(), a.size());
  for (Index i = 0; i < a.size(); ++i) {
    cols.col(i) = vec(tangent ? project_tangent_fixed_rank(svd, a.matrix(i)) : a.matrix(i));
  }
  const Matrix target = tangent ? project_tangent_fixed_rank(svd, grad_f) : grad_f;
  return solve_min_norm(cols, -vec(target)).x;
}

double residual_for_gradient(const ThinSVD& svd, Index r, double alpha, const Matrix& g) {
  if (svd.rank < r) return g.norm();
  const double excess = spectral_norm(g) - svd.sigma_at(r - 1) / alpha;
  return project_tangent_fixed_rank(svd, g).norm() + std::max(0.0, excess);
}

void check_divergence(double f) {
  if (!std::isfinite(f) || f > kDivergenceLimit) {
    throw DivergenceError("solver diverged: objective " + std::to_string(f));
  }
}

}  // namespace

Matrix project_affine(const AffineMap& a, const Matrix& x, bool* consistent) {
  if (x.rows() != a.rows() || x.cols() != a.cols()) throw ShapeError("project_affine: shape mismatch");
  return AffineProjector(a).project(x, consistent);
}

void SolverConfig::validate() const {
  if (!(alpha > 0.0)) throw InputError("solver: alpha must be positive");
  if (max_iters < 1) throw InputError("solver: max_iters must be at least 1");
  if (!(stop_tol > 0.0)) throw InputError("solver: stop_tol must be positive");
  if (affine_mode == AffineMode::quadratic_penalty && !(rho > 0.0)) {
    throw InputError("solver: rho must be positive in penalty mode");
  }
  if (min_inner < 1 || max_inner < min_inner) throw InputError("solver: bad inner alternation limits");
}

double alpha_stationarity_residual(const ProblemSpec& prob, const Matrix& x,
                                   double alpha, const Vector& y) {
  const ThinSVD svd = thin_svd(x, prob.rank_tol);
  return residual_for_gradient(svd, prob.rank_bound, alpha, lagrangian_grad(prob, x, y));
}

SolveResult solve(const ProblemSpec& prob, const Matrix& x0, const SolverConfig& cfg) {
  prob.validate();
  cfg.validate();
  if (x0.rows() != prob.rows() || x0.cols() != prob.cols()) throw ShapeError("solve: x0 shape mismatch");
  require_finite(x0, "solve");

  const AffineMap& a = prob.affine;
  const Index r = prob.rank_bound;
  const double feas_cut = 10.0 * cfg.stop_tol * std::max(1.0, a.rhs().norm());
  const bool penalty = cfg.affine_mode == AffineMode::quadratic_penalty;
  const AffineProjector proj(a);

  SolveResult out;
  out.notes.push_back(penalty ? "heuristic: quadratic-penalty projected gradient"
                              : "heuristic: projected gradient with alternating affine/rank projections");
  bool consistent = true;
  proj.project(x0, &consistent);
  if (!consistent) out.notes.push_back("constraints are inconsistent; affine steps are least-squares projections");

  Matrix x = x0;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    const double fx = prob.objective.value(x);
    check_divergence(fx);
    const Matrix grad_f = prob.objective.gradient(x);
    const ThinSVD svd = thin_svd(x, prob.rank_tol);
    const double feas = feasibility_residual(a, x);

    Matrix step_grad;
    double stat = 0.0;
    if (penalty) {
      step_grad = grad_f + cfg.rho * adjoint(a, apply(a, x) - a.rhs());
      stat = residual_for_gradient(svd, r, cfg.alpha, step_grad);
    } else {
      step_grad = grad_f;
      const Vector y = recover_multiplier(prob, svd, grad_f);
      const Matrix grad_l = a.empty() ? grad_f : Matrix(grad_f + adjoint(a, y));
      stat = residual_for_gradient(svd, r, cfg.alpha, grad_l);
    }
    out.log.push_back({iter, fx, feas, stat});
    out.iterations = iter;

    const bool stationary = stat <= cfg.stop_tol * std::max(1.0, grad_f.norm());
    if (stationary && svd.rank <= r && (penalty || feas <= feas_cut)) {
      out.converged = true;
      break;
    }
    if (iter == cfg.max_iters) break;

    const Matrix z = x - cfg.alpha * step_grad;
    if (penalty) {
      x = project_low_rank(z, r, prob.rank_tol).matrix;
      continue;
    }
    Matrix w = z;
    for (int inner = 1; inner <= cfg.max_inner; ++inner) {
      w = project_low_rank(proj.project(w), r, prob.rank_tol).matrix;
      if (inner >= cfg.min_inner &&
          feasibility_residual(a, w) <= cfg.inner_tol * std::max(1.0, a.rhs().norm())) {
        break;
      }
    }
    x = w;
  }

  if (!out.converged) {
    out.notes.push_back("stopped at max_iters without meeting the stopping rule");
  }
  out.x = x;
  out.report = classify_first_order(prob, x, cfg.alpha);
  return out;
}

Matrix random_start(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix x(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) x(i, j) = gauss(rng);
  return x;
}

std::string iterate_log_csv(const std::vector<IterateRecord>& log) {
  std::ostringstream os;
  os.precision(17);
  os << "iter,f,feas_residual,stat_residual\n";
  for (const IterateRecord& rec : log) {
    os << rec.iter << ',' << rec.f << ',' << rec.feas_residual << ',' << rec.stat_residual << '\n';
  }
  return os.str();
}

}  // namespace lrmoa
