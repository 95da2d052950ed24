#pragma once

#include "lrmoa/linalg.hpp"
#include "lrmoa/problem.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace lrmoa {

/// Coefficient of the curvature term <grad L, Xi X^+ Xi> in the quadratic
/// form on M^r. as_stated uses -2; alternate uses +2, which is what the
/// second derivative of the Lagrangian along curves in M^r produces.
enum class CurvatureSign { as_stated, alternate };

std::string to_string(CurvatureSign s);
double curvature_coefficient(CurvatureSign s);

/// nabla^2 f(X)[Xi, Xi] + c <grad L(X; y), Xi X^+ Xi>, c from the sign
/// policy. Requires s = r (WrongCaseError otherwise).
double riemannian_quad(const ProblemSpec& prob, const ThinSVD& svd,
                       const Vector& y, const Matrix& xi,
                       CurvatureSign sign = CurvatureSign::as_stated);

/// nabla^2 f(X)[Xi, Xi].
double plain_quad(const ProblemSpec& prob, const Matrix& x, const Matrix& xi);

/// Orthonormal basis of T_{M^s}(X) cap ker A at the base point of svd.
std::vector<Matrix> fixed_rank_tangent_kernel_basis(const ThinSVD& svd,
                                                    const AffineMap& a);

/// Same, restricted to the s = r case where the Bouligand tangent cone of
/// M(r) is the subspace T_{M^r}. Throws WrongCaseError when s < r.
std::vector<Matrix> tangent_intersection_basis(const ThinSVD& svd,
                                               const AffineMap& a, Index r);

enum class SecondOrderCase { full_rank, rank_deficient };

std::string to_string(SecondOrderCase c);

struct SecondOrderOptions {
  int samples = 2000;
  std::uint64_t seed = 0;
  CurvatureSign sign = CurvatureSign::as_stated;
};

struct SecondOrderReport {
  SecondOrderCase rank_case = SecondOrderCase::full_rank;
  CurvatureSign sign = CurvatureSign::as_stated;
  Index basis_dim = 0;
  double min_eig = 0.0;
  double max_eig = 0.0;
  bool necessary_ok = false;
  bool sufficient_ok = false;

  // Rank-deficient case only.
  Index kernel_dim = 0;
  std::optional<double> kernel_min_eig;
  Index flats_checked = 0;
  std::optional<double> flat_min_eig;
  int cone_samples_tested = 0;
  int cone_violations = 0;
  int cone_samples_rejected = 0;

  std::string verdict;
  std::vector<std::string> notes;
};

/// Second-order verdicts at an F-stationary point with multiplier y.
///
/// s = r: spectrum of the quadratic form on T_L cap T_{M^r}.
/// s < r: certificate tier (plain Hessian form on T_L cap T_{M^s} and on all
/// of ker A, plus every flat subspace through X intersected with ker A) and
/// a falsification tier sampling directions of T_L cap T^B_{M(r)}.
///
/// Throws NotStationaryError when y does not certify F-stationarity.
SecondOrderReport check_second_order(const ProblemSpec& prob, const Matrix& x,
                                     const Vector& y,
                                     const SecondOrderOptions& opts = {});

namespace verdicts {
inline constexpr const char* kStrictOnManifold =
    "strictly local minimizer restricted on M^r";
inline constexpr const char* kStrictOnKernel =
    "strictly local minimizer (positive Hessian form on ker A)";
inline constexpr const char* kNecessaryOnly = "second-order necessary condition holds";
inline constexpr const char* kNecessaryFails = "second-order necessary condition violated";
}  // namespace verdicts

}  // namespace lrmoa
