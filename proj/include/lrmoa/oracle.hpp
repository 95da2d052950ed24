#pragma once

#include "lrmoa/objective.hpp"
#include "lrmoa/problem.hpp"

#include <cstdint>
#include <string>

namespace lrmoa::oracle {

// Brute-force checks that avoid the code paths they verify: no SVD-based
// projection, no cone or qualification routines. Tolerances are stated per
// check and are looser than the library defaults.

inline constexpr double kFdStep = 1e-4;

/// Central differences, O(h^2).
Matrix fd_gradient(const Objective& f, const Matrix& x, double h = kFdStep);
/// Second central difference of t -> f(X + t Xi) at 0.
double fd_quad(const Objective& f, const Matrix& x, const Matrix& xi, double h = kFdStep);

/// Best rank-r approximation from the eigendecomposition of Z^T Z (or Z Z^T
/// when m < n). Independent of the SVD routines.
Matrix eig_low_rank(const Matrix& z, Index r);

struct ProjectionCheck {
  double discrepancy = 0.0;  // |Pi_svd - Pi_eig|_F / max(1, |Z|_F)
  double objective_gap = 0.0;  // | |Z - Pi_svd| - |Z - Pi_eig| |
  bool tie = false;            // sigma_r and sigma_{r+1} too close to compare matrices
};

ProjectionCheck projection_cross_check(const Matrix& z, Index r);

struct Rank1HankelMin {
  double value = 0.0;
  Matrix x;
  std::string family;  // "c*uu^T, u=(1,q,q^2)", "t*e1e1^T" or "t*e3e3^T"
  double q = 0.0;
  double c = 0.0;
};

/// min 1/2 |H - X|_F^2 over 3x3 rank-1 Hankel X: grid over q in [-10, 10]
/// (and the reciprocal parameter in [-0.1, 0.1]) with golden-section
/// refinement, plus the degenerate families in closed form.
Rank1HankelMin rank1_hankel_min(const Matrix& h, int grid = 10000, int refine_iters = 100);

struct SparseInstance {
  Vector x;                // candidate point
  std::vector<Vector> a;   // constraint vectors
  Index r = 0;             // sparsity bound
};

struct DiagEmbeddingCheck {
  bool restricted_licq = false;  // (a_i) restricted to supp(x) independent
  bool assumption1 = false;
  bool assumption2 = false;
  bool equivalent() const {
    return restricted_licq == assumption1 && assumption1 == assumption2;
  }
};

/// Embeds the sparse instance as diagonal matrices and compares the two
/// independence assumptions with independence of the restricted vectors.
DiagEmbeddingCheck diag_embedding_equivalence(const SparseInstance& inst);

/// Quadratic form on M^r from explicit factors X = U diag(sigma) V^T:
/// nabla^2 f[Xi, Xi] + coef <U^T G V, [M11; M21] S^{-1} [M11 M12]> with
/// M = U^T Xi V and G = grad L.
double block_riemannian_quad(const ProblemSpec& prob, const Matrix& u, const Vector& sigma,
                             const Matrix& v, Index s, const Vector& y, const Matrix& xi,
                             double coef);

/// d^2/dt^2 L(R(t)) at 0 along R(t) = Pi_{M(r)}(X + t Xi), by central
/// differences with step h.
double curve_second_derivative(const ProblemSpec& prob, const Matrix& x, const Vector& y,
                               const Matrix& xi, double h = 1e-3);

struct SuiteResult {
  std::string name;
  std::uint64_t seed = 0;
  int cases = 0;
  int failures = 0;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::vector<std::string> messages;

  bool passed() const { return failures == 0; }
};

/// Suites: fd, projection, hankel-rank1, diag-embed, eckart-young,
/// polarity, implication-chain. cases <= 0 picks the suite default.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases = 0);
std::vector<std::string> suite_names();

}  // namespace lrmoa::oracle
