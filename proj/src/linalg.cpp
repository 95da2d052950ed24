#include "lrmoa/linalg.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <string>

namespace lrmoa {

namespace {

// Row index of the largest-magnitude entry; the lowest index among
// (numerically) equal magnitudes.
Index pivot_row(const Eigen::Ref<const Vector>& col) {
  const double peak = col.cwiseAbs().maxCoeff();
  const double slack = 1e-12 * peak;
  for (Index i = 0; i < col.size(); ++i) {
    if (std::abs(col(i)) >= peak - slack) return i;
  }
  return 0;
}

}  // namespace

void require_finite(const Matrix& x, const char* what) {
  if (!x.allFinite()) {
    throw InputError(std::string(what) + ": matrix has non-finite entries");
  }
}

Matrix ThinSVD::reconstruct() const {
  const Index k = sigma.size();
  return u.leftCols(k) * sigma.asDiagonal() * v.leftCols(k).transpose();
}

ThinSVD ThinSVD::from_factors(Matrix u, Vector sigma, Matrix v,
                              double rel_tol) {
  ThinSVD out;
  out.u = std::move(u);
  out.v = std::move(v);
  out.sigma = std::move(sigma);
  out.rel_tol = rel_tol;
  const double top = out.sigma.size() > 0 ? out.sigma(0) : 0.0;
  out.rank_tol = rel_tol * top;
  out.rank = 0;
  while (out.rank < out.sigma.size() && out.sigma(out.rank) > out.rank_tol) {
    ++out.rank;
  }
  return out;
}

ThinSVD thin_svd(const Matrix& x, double rel_tol) {
  require_finite(x, "thin_svd");
  if (!(rel_tol > 0.0)) throw InputError("thin_svd: rank tolerance must be positive");
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return ThinSVD::from_factors(svd.matrixU(), svd.singularValues(),
                               svd.matrixV(), rel_tol);
}

void orient(ThinSVD& svd) {
  const Index k = svd.sigma.size();
  for (Index i = 0; i < k; ++i) {
    const Index p = pivot_row(svd.u.col(i));
    if (svd.u(p, i) < 0.0) {
      svd.u.col(i) *= -1.0;
      svd.v.col(i) *= -1.0;
    }
  }
  for (Index i = k; i < svd.u.cols(); ++i) {
    const Index p = pivot_row(svd.u.col(i));
    if (svd.u(p, i) < 0.0) svd.u.col(i) *= -1.0;
  }
  for (Index i = k; i < svd.v.cols(); ++i) {
    const Index p = pivot_row(svd.v.col(i));
    if (svd.v(p, i) < 0.0) svd.v.col(i) *= -1.0;
  }
}

ThinSVD orient_svd(const Matrix& x, double rel_tol) {
  ThinSVD svd = thin_svd(x, rel_tol);
  orient(svd);
  return svd;
}

Matrix pseudo_inverse(const ThinSVD& svd) {
  const Index s = svd.rank;
  if (s == 0) return Matrix::Zero(svd.cols(), svd.rows());
  const Vector inv = svd.sigma.head(s).cwiseInverse();
  return svd.v_gamma() * inv.asDiagonal() * svd.u_gamma().transpose();
}

LowRankProjection project_low_rank(const Matrix& z, Index r, double rel_tol) {
  const Index k = std::min(z.rows(), z.cols());
  if (r < 0 || r > k) {
    throw InputError("project_low_rank: rank bound " + std::to_string(r) +
                     " outside [0, " + std::to_string(k) + "]");
  }
  const ThinSVD svd = orient_svd(z, rel_tol);
  LowRankProjection out;
  out.matrix = svd.u.leftCols(r) * svd.sigma.head(r).asDiagonal() *
               svd.v.leftCols(r).transpose();
  if (r > 0 && r < k) {
    const double sr = svd.sigma(r - 1);
    out.tie = sr > svd.rank_tol && sr <= svd.sigma(r) + svd.rank_tol;
  }
  return out;
}

Vector singular_values(const Matrix& x) {
  if (x.size() == 0) return Vector();
  return Eigen::JacobiSVD<Matrix>(x).singularValues();
}

double spectral_norm(const Matrix& x) {
  const Vector sv = singular_values(x);
  return sv.size() > 0 ? sv(0) : 0.0;
}

Index numerical_rank(const Vector& singular_values, double rel_tol,
                     double abs_floor) {
  if (singular_values.size() == 0) return 0;
  const double cut = std::max(rel_tol * singular_values(0), abs_floor);
  Index rank = 0;
  while (rank < singular_values.size() && singular_values(rank) > cut) ++rank;
  return rank;
}

Index rank_estimate(const Matrix& x, double rel_tol) {
  return numerical_rank(singular_values(x), rel_tol);
}

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, Index rows, Index cols) {
  if (v.size() != rows * cols) throw ShapeError("unvec: length mismatch");
  return Eigen::Map<const Matrix>(v.data(), rows, cols);
}

Matrix stack_rows(const std::vector<Matrix>& mats, Index rows, Index cols) {
  Matrix out(static_cast<Index>(mats.size()), rows * cols);
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != rows || mats[i].cols() != cols) {
      throw ShapeError("stack_rows: matrix " + std::to_string(i) +
                       " has the wrong shape");
    }
    out.row(static_cast<Index>(i)) = vec(mats[i]).transpose();
  }
  return out;
}

LeastSquares solve_min_norm(const Matrix& a, const Vector& b, double rel_tol) {
  if (a.rows() != b.size()) throw ShapeError("solve_min_norm: size mismatch");
  LeastSquares out;
  if (a.cols() == 0) {
    out.x = Vector();
    out.residual = b.norm();
    return out;
  }
  if (a.rows() == 0) {
    out.x = Vector::Zero(a.cols());
    return out;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sv = svd.singularValues();
  out.rank = numerical_rank(sv, rel_tol);
  Vector coeff = svd.matrixU().leftCols(out.rank).transpose() * b;
  coeff.array() /= sv.head(out.rank).array();
  out.x = svd.matrixV().leftCols(out.rank) * coeff;
  out.residual = (a * out.x - b).norm();
  return out;
}

Matrix nullspace(const Matrix& a, double rel_tol, double abs_floor) {
  const Index q = a.cols();
  if (a.rows() == 0) return Matrix::Identity(q, q);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const Index rank = numerical_rank(svd.singularValues(), rel_tol, abs_floor);
  return svd.matrixV().rightCols(q - rank);
}

}  // namespace lrmoa
