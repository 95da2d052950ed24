#pragma once

#include "lrmoa/problem.hpp"
#include "lrmoa/stationarity.hpp"

#include <cstdint>
#include <string>

namespace lrmoa {

/// Frobenius-nearest Y with A(Y) = b. When the system is inconsistent the
/// least-squares version is returned and *consistent is set to false.
Matrix project_affine(const AffineMap& a, const Matrix& x, bool* consistent = nullptr);

enum class AffineMode { exact_projection, quadratic_penalty };

struct SolverConfig {
  double alpha = 0.5;
  int max_iters = 10000;
  double stop_tol = 1e-9;
  AffineMode affine_mode = AffineMode::exact_projection;
  double rho = 10.0;  // penalty weight, quadratic_penalty mode only
  std::uint64_t seed = 0;
  // Affine/rank alternations after each gradient step: at least min_inner,
  // then until the affine residual drops below inner_tol or max_inner.
  int min_inner = 3;
  int max_inner = 1000;
  double inner_tol = 1e-13;

  void validate() const;
};

struct IterateRecord {
  int iter = 0;
  double f = 0.0;
  double feas_residual = 0.0;
  double stat_residual = 0.0;
};

struct SolveResult {
  Matrix x;
  StationarityReport report;
  std::vector<IterateRecord> log;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> notes;
};

/// Projected gradient search for an alpha-stationary point.
///
/// exact_projection: X <- alternate(P_A, Pi_{M(r)})(X - alpha grad f), ending
/// on the rank projection. quadratic_penalty: X <- Pi_{M(r)}(X - alpha grad
/// f_rho) with f_rho = f + rho/2 |A(X) - b|^2. Stops when the
/// alpha-stationarity residual (with the recovered multiplier) is below
/// stop_tol * max(1, |grad f|) at a feasible iterate.
///
/// Throws DivergenceError when the objective exceeds 1e12 or stops being
/// finite.
SolveResult solve(const ProblemSpec& prob, const Matrix& x0, const SolverConfig& cfg = {});

/// Residual used by the stopping rule; also the last log column.
double alpha_stationarity_residual(const ProblemSpec& prob, const Matrix& x,
                                   double alpha, const Vector& y);

/// Standard Gaussian m x n matrix from a seeded generator.
Matrix random_start(Index rows, Index cols, std::uint64_t seed);

/// "iter,f,feas_residual,stat_residual" header plus one row per record.
std::string iterate_log_csv(const std::vector<IterateRecord>& log);

}  // namespace lrmoa
