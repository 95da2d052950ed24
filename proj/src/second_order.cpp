#include "lrmoa/second_order.hpp"

#include "lrmoa/cones.hpp"
#include "lrmoa/stationarity.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace lrmoa {

std::string to_string(CurvatureSign s) {
  return s == CurvatureSign::as_stated ? "as_stated" : "alternate";
}

double curvature_coefficient(CurvatureSign s) {
  return s == CurvatureSign::as_stated ? -2.0 : 2.0;
}

std::string to_string(SecondOrderCase c) {
  return c == SecondOrderCase::full_rank ? "full_rank" : "rank_deficient";
}

namespace {

void require_full_rank(const ThinSVD& svd, Index r, const char* what) {
  if (svd.rank != r) {
    throw WrongCaseError(std::string(what) + ": requires rank(X) = r (got s = " +
                         std::to_string(svd.rank) + ", r = " + std::to_string(r) + ")");
  }
}

// Orthonormal basis of span(cols) cap ker A, returned as matrices. cols holds
// orthonormal vectorized directions.
std::vector<Matrix> restrict_to_kernel(const Matrix& cols, const AffineMap& a) {
  const Index m = a.rows();
  const Index n = a.cols();
  Matrix coeffs;
  if (a.empty()) {
    coeffs = Matrix::Identity(cols.cols(), cols.cols());
  } else {
    const Matrix stack = a.stack();
    const Matrix reduced = stack * cols;
    coeffs = nullspace(reduced, kDefaultRankTol, 1e-12 * std::max(1.0, stack.norm()));
  }
  const Matrix basis = cols * coeffs;
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Index j = 0; j < basis.cols(); ++j) out.push_back(unvec(basis.col(j), m, n));
  return out;
}

struct Spectrum {
  double min = 0.0;
  double max = 0.0;
};

Spectrum spectrum(const Matrix& q) {
  if (q.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (q + q.transpose()),
                                            Eigen::EigenvaluesOnly);
  return {eig.eigenvalues().minCoeff(), eig.eigenvalues().maxCoeff()};
}

Matrix plain_form_matrix(const Objective& f, const Matrix& x,
                         const std::vector<Matrix>& basis) {
  const Index d = static_cast<Index>(basis.size());
  Matrix q(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = i; j < d; ++j) {
      q(i, j) = q(j, i) = f.hessian_bilinear(x, basis[static_cast<std::size_t>(i)],
                                             basis[static_cast<std::size_t>(j)]);
    }
  }
  return q;
}

Matrix project_onto_kernel(const AffineMap& a, const Matrix& xi) {
  if (a.empty()) return xi;
  const LeastSquares ls = solve_min_norm(a.stack(), apply(a, xi));
  return xi - unvec(ls.x, xi.rows(), xi.cols());
}

// Rank-k truncation through the full SVD; independent of any rank tolerance.
Matrix truncate(const Matrix& z, Index k) {
  Eigen::JacobiSVD<Matrix> svd(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Index keep = std::min<Index>(k, svd.singularValues().size());
  return svd.matrixU().leftCols(keep) *
         svd.singularValues().head(keep).asDiagonal() *
         svd.matrixV().leftCols(keep).transpose();
}

}  // namespace

double riemannian_quad(const ProblemSpec& prob, const ThinSVD& svd,
                       const Vector& y, const Matrix& xi, CurvatureSign sign) {
  require_full_rank(svd, prob.rank_bound, "riemannian_quad");
  const Matrix x = svd.reconstruct();
  const Matrix grad_l = lagrangian_grad(prob, x, y);
  const Matrix curvature = xi * pseudo_inverse(svd) * xi;
  return prob.objective.hessian_quad(x, xi) +
         curvature_coefficient(sign) * grad_l.cwiseProduct(curvature).sum();
}

double plain_quad(const ProblemSpec& prob, const Matrix& x, const Matrix& xi) {
  return prob.objective.hessian_quad(x, xi);
}

std::vector<Matrix> fixed_rank_tangent_kernel_basis(const ThinSVD& svd,
                                                    const AffineMap& a) {
  const Index m = svd.rows();
  const Index n = svd.cols();
  if (a.rows() != m || a.cols() != n) throw ShapeError("tangent basis: shape mismatch");
  const Index s = svd.rank;
  const Index dim = m * n - (m - s) * (n - s);
  Matrix cols(m * n, dim);
  Index c = 0;
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i >= s && j >= s) continue;
      cols.col(c++) = vec(svd.u.col(i) * svd.v.col(j).transpose());
    }
  }
  return restrict_to_kernel(cols, a);
}

std::vector<Matrix> tangent_intersection_basis(const ThinSVD& svd,
                                               const AffineMap& a, Index r) {
  require_full_rank(svd, r, "tangent_intersection_basis");
  return fixed_rank_tangent_kernel_basis(svd, a);
}

SecondOrderReport check_second_order(const ProblemSpec& prob, const Matrix& x,
                                     const Vector& y, const SecondOrderOptions& opts) {
  prob.validate();
  if (y.size() != prob.affine.size()) throw ShapeError("check_second_order: multiplier length mismatch");
  if (opts.samples < 0) throw InputError("check_second_order: samples must be nonnegative");

  const ThinSVD svd = orient_svd(x, prob.rank_tol);
  const Objective& f = prob.objective;
  const Index r = prob.rank_bound;
  const Index s = svd.rank;
  const double tol = prob.tol;

  if (!is_feasible(prob, x, svd)) throw NotStationaryError("check_second_order: point is infeasible");
  const Matrix grad_f = f.gradient(x);
  const Matrix grad_l = grad_f + adjoint(prob.affine, y);
  const double stat_residual =
      s == r ? project_tangent_fixed_rank(svd, grad_l).norm() : grad_l.norm();
  if (stat_residual > tol * std::max(1.0, grad_f.norm())) {
    throw NotStationaryError("check_second_order: multiplier does not certify F-stationarity (residual " +
                             std::to_string(stat_residual) + ")");
  }

  SecondOrderReport rep;
  rep.sign = opts.sign;

  if (s == r) {
    rep.rank_case = SecondOrderCase::full_rank;
    const std::vector<Matrix> basis = tangent_intersection_basis(svd, prob.affine, r);
    const Index d = static_cast<Index>(basis.size());
    rep.basis_dim = d;
    const Matrix pinv = pseudo_inverse(svd);
    const double coef = curvature_coefficient(opts.sign);
    Matrix q(d, d);
    for (Index i = 0; i < d; ++i) {
      const Matrix& bi = basis[static_cast<std::size_t>(i)];
      for (Index j = i; j < d; ++j) {
        const Matrix& bj = basis[static_cast<std::size_t>(j)];
        const Matrix cross = 0.5 * (bi * pinv * bj + bj * pinv * bi);
        q(i, j) = q(j, i) = f.hessian_bilinear(x, bi, bj) +
                            coef * grad_l.cwiseProduct(cross).sum();
      }
    }
    const Spectrum sp = spectrum(q);
    rep.min_eig = sp.min;
    rep.max_eig = sp.max;
    if (d == 0) {
      rep.necessary_ok = rep.sufficient_ok = true;
      rep.notes.push_back("T_L cap T_{M^r} is {O}; both conditions hold vacuously");
    } else {
      rep.necessary_ok = sp.min >= -tol;
      rep.sufficient_ok = sp.min > tol;
    }
    rep.verdict = rep.sufficient_ok  ? verdicts::kStrictOnManifold
                  : rep.necessary_ok ? verdicts::kNecessaryOnly
                                     : verdicts::kNecessaryFails;
    rep.notes.push_back("curvature coefficient " + std::to_string(coef) + " (" +
                        to_string(opts.sign) + ")");
    return rep;
  }

  rep.rank_case = SecondOrderCase::rank_deficient;
  const Index m = x.rows();
  const Index n = x.cols();

  // Tier 1: exact spectra on linear subspaces of the tangent cone.
  const std::vector<Matrix> tangent = fixed_rank_tangent_kernel_basis(svd, prob.affine);
  rep.basis_dim = static_cast<Index>(tangent.size());
  const Spectrum sp = spectrum(plain_form_matrix(f, x, tangent));
  rep.min_eig = sp.min;
  rep.max_eig = sp.max;
  rep.necessary_ok = tangent.empty() || sp.min >= -tol;

  const std::vector<Matrix> kernel = kernel_basis(prob.affine);
  rep.kernel_dim = static_cast<Index>(kernel.size());
  if (!kernel.empty()) {
    rep.kernel_min_eig = spectrum(plain_form_matrix(f, x, kernel)).min;
    rep.sufficient_ok = *rep.kernel_min_eig > tol;
  } else {
    rep.sufficient_ok = true;
    rep.notes.push_back("ker A is {O}; the feasible set is a single point");
  }

  const Index k = std::min(m, n);
  try {
    const std::vector<IndexSet> flats = enumerate_J(s, k, r);
    for (const IndexSet& j : flats) {
      // {W V_J^T} for m >= n, {U_J W} otherwise.
      const Index free = m >= n ? m : n;
      Matrix cols(m * n, free * static_cast<Index>(j.size()));
      Index c = 0;
      for (Index idx : j) {
        for (Index e = 0; e < free; ++e) {
          const Matrix dir = m >= n ? Matrix(Vector::Unit(m, e) * svd.v.col(idx).transpose())
                                    : Matrix(svd.u.col(idx) * Vector::Unit(n, e).transpose());
          cols.col(c++) = vec(dir);
        }
      }
      const std::vector<Matrix> flat = restrict_to_kernel(cols, prob.affine);
      ++rep.flats_checked;
      if (flat.empty()) continue;
      const double e = spectrum(plain_form_matrix(f, x, flat)).min;
      rep.flat_min_eig = rep.flat_min_eig ? std::min(*rep.flat_min_eig, e) : e;
    }
    if (rep.flat_min_eig && *rep.flat_min_eig < -tol) rep.necessary_ok = false;
  } catch (const SizeError&) {
    rep.notes.push_back("too many flat subspaces; exact flat checks skipped");
  }

  // Tier 2: sampled directions of ker A cap T^B_{M(r)}.
  const ConeQuery cone(svd, r, tol);
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto random_matrix = [&]() {
    Matrix g(m, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) g(i, j) = gauss(rng);
    return g;
  };
  for (int t = 0; t < opts.samples; ++t) {
    const Matrix g1 = random_matrix();
    const Matrix g2 = random_matrix();
    Matrix xi = project_tangent_fixed_rank(svd, g1) +
                truncate(project_normal_fixed_rank(svd, g2), r - s);
    xi = project_onto_kernel(prob.affine, xi);
    const double nrm = xi.norm();
    if (nrm <= 1e-12 || !in_tangent_bouligand_Mr(cone, xi)) {
      ++rep.cone_samples_rejected;
      continue;
    }
    xi /= nrm;
    ++rep.cone_samples_tested;
    if (plain_quad(prob, x, xi) < -tol) ++rep.cone_violations;
  }
  if (rep.cone_violations > 0) rep.necessary_ok = false;
  if (rep.cone_samples_rejected > 0) {
    rep.notes.push_back(std::to_string(rep.cone_samples_rejected) +
                        " sampled directions left the tangent cone after the kernel projection");
  }
  if (!rep.necessary_ok) rep.sufficient_ok = false;

  rep.verdict = rep.sufficient_ok  ? verdicts::kStrictOnKernel
                : rep.necessary_ok ? verdicts::kNecessaryOnly
                                   : verdicts::kNecessaryFails;
  if (!rep.sufficient_ok && rep.necessary_ok) {
    rep.notes.push_back("no cone violation found in " + std::to_string(rep.cone_samples_tested) +
                        " samples; exact copositivity over the cone is not decided");
  }
  return rep;
}

}  // namespace lrmoa
