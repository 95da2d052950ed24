#pragma once

#include "lrmoa/linalg.hpp"
#include "lrmoa/problem.hpp"
#include "lrmoa/qualification.hpp"

#include <limits>
#include <optional>
#include <string>

namespace lrmoa {

double lagrangian(const ProblemSpec& prob, const Matrix& x, const Vector& y);
Matrix lagrangian_grad(const ProblemSpec& prob, const Matrix& x, const Vector& y);

struct StationarityReport {
  bool feasible = false;
  double feasibility_residual = 0.0;
  Index s = 0;
  Index r = 0;
  Vector y;
  Matrix grad_lagrangian;
  // Least-squares residual of the F-stationarity system at y, and the scale
  // max(1, |grad f|_F) it is compared against.
  double f_residual = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  bool is_F = false;
  bool is_M = false;
  std::optional<double> alpha_tested;
  std::optional<bool> is_alpha;
  double beta = 0.0;  // may be +inf
  std::vector<std::string> classification;
  std::vector<std::string> notes;
  std::optional<QualificationReport> qualification;
};

/// Feasibility: affine residual within tol * max(1, |b|) and numerical rank
/// at most r.
bool is_feasible(const ProblemSpec& prob, const Matrix& x, const ThinSVD& svd,
                 double* residual = nullptr);

/// Multiplier recovery and the F-stationarity verdict. Infeasible points get
/// a report with feasible = is_F = false.
StationarityReport check_F_stationary(const ProblemSpec& prob, const Matrix& x);

enum class AlphaRoute {
  characterization,  // closed form on the gradient of the Lagrangian
  projection,        // X in Pi_{M(r)}(X - alpha grad L), tie-aware
};

/// alpha-stationarity of x with the given multiplier. Throws InputError for
/// alpha <= 0; infeasible points are never alpha-stationary.
bool check_alpha_stationary(const ProblemSpec& prob, const Matrix& x,
                            const Vector& y, double alpha,
                            AlphaRoute route = AlphaRoute::characterization);

/// sigma_r(X) / |grad L|_2, or +inf when grad L vanishes.
double beta_bound(const ProblemSpec& prob, const Matrix& x, const Vector& y);

struct MStationarity {
  bool holds = false;
  Vector y;
};

/// M-stationarity certified at y_hint, or at the minimum-norm minimizer of
/// |P_T(grad L)| when no hint is given. Only the tested multiplier is
/// certified or refuted.
MStationarity check_M_stationary(const ProblemSpec& prob, const Matrix& x,
                                 const std::optional<Vector>& y_hint = std::nullopt);

/// All first-order checks plus the conclusions they support. alpha defaults
/// to 1 / l_f for strongly convex objectives and 0.5 otherwise.
StationarityReport classify_first_order(const ProblemSpec& prob, const Matrix& x,
                                        std::optional<double> alpha = std::nullopt);

namespace conclusions {
inline constexpr const char* kGlobal = "global minimizer";
inline constexpr const char* kGlobalOnFlat =
    "global minimizer restricted to the flat subspace {U B V_G^T}";
inline constexpr const char* kUniqueGlobal = "unique global minimizer";
}  // namespace conclusions

}  // namespace lrmoa
