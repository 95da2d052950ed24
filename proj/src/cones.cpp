#include "lrmoa/cones.hpp"

#include <algorithm>
#include <string>

namespace lrmoa {

namespace {

void check_shape(const ThinSVD& svd, const Matrix& z, const char* what) {
  if (z.rows() != svd.rows() || z.cols() != svd.cols()) {
    throw ShapeError(std::string(what) + ": shape mismatch with base point");
  }
}

double relative_scale(const Matrix& w) { return std::max(1.0, w.norm()); }

void check_J(const ThinSVD& svd, const IndexSet& j) {
  const Index k = std::min(svd.rows(), svd.cols());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i] < 0 || j[i] >= k) throw InputError("index set J: index out of range");
    if (i > 0 && j[i] <= j[i - 1]) throw InputError("index set J: not strictly increasing");
  }
  for (Index g = 0; g < svd.rank; ++g) {
    if (!std::binary_search(j.begin(), j.end(), g)) {
      throw InputError("index set J must contain the support of the base point");
    }
  }
}

}  // namespace

ConeQuery::ConeQuery(ThinSVD base, Index rank_bound, double tolerance)
    : svd(std::move(base)), r(rank_bound), tol(tolerance) {
  if (svd.rank > r) {
    throw InputError("ConeQuery: base point rank " + std::to_string(svd.rank) +
                     " exceeds the bound " + std::to_string(r));
  }
}

Matrix project_tangent_fixed_rank(const ThinSVD& svd, const Matrix& z) {
  check_shape(svd, z, "project_tangent_fixed_rank");
  if (svd.rank == 0) return Matrix::Zero(z.rows(), z.cols());
  const auto ug = svd.u_gamma();
  const auto vg = svd.v_gamma();
  // P_U Z P_V + P_U Z P_V^perp + P_U^perp Z P_V = P_U Z + P_U^perp Z P_V
  const Matrix pu_z = ug * (ug.transpose() * z);
  return pu_z + ((z - pu_z) * vg) * vg.transpose();
}

Matrix project_normal_fixed_rank(const ThinSVD& svd, const Matrix& z) {
  check_shape(svd, z, "project_normal_fixed_rank");
  const auto up = svd.u_perp();
  const auto vp = svd.v_perp();
  return up * (up.transpose() * z * vp) * vp.transpose();
}

Index cone_rank(const Matrix& x, double rel_tol, double tol, double scale) {
  return numerical_rank(singular_values(x), rel_tol,
                        tol * std::max(1.0, scale));
}

bool in_tangent_bouligand_Mr(const ConeQuery& q, const Matrix& h) {
  const Matrix normal = project_normal_fixed_rank(q.svd, h);
  return cone_rank(normal, q.svd.rel_tol, q.tol, h.norm()) <= q.r - q.s();
}

bool in_normal_frechet_Mr(const ConeQuery& q, const Matrix& w) {
  check_shape(q.svd, w, "in_normal_frechet_Mr");
  if (q.s() == q.r) {
    return project_tangent_fixed_rank(q.svd, w).norm() <=
           q.tol * relative_scale(w);
  }
  return w.norm() <= q.tol;
}

bool in_normal_mordukhovich_Mr(const ConeQuery& q, const Matrix& w) {
  check_shape(q.svd, w, "in_normal_mordukhovich_Mr");
  if (project_tangent_fixed_rank(q.svd, w).norm() > q.tol * relative_scale(w)) {
    return false;
  }
  const Index k = std::min(w.rows(), w.cols());
  return cone_rank(w, q.svd.rel_tol, q.tol, w.norm()) <= k - q.r;
}

bool in_normal_MXJ(const ThinSVD& svd, const IndexSet& j, const Matrix& w,
                   double tol) {
  check_shape(svd, w, "in_normal_MXJ");
  check_J(svd, j);
  const Index jn = static_cast<Index>(j.size());
  Matrix block;
  if (svd.rows() >= svd.cols()) {
    Matrix vj(svd.cols(), jn);
    for (Index c = 0; c < jn; ++c) vj.col(c) = svd.v.col(j[static_cast<std::size_t>(c)]);
    block = svd.u.transpose() * w * vj;
  } else {
    Matrix uj(svd.rows(), jn);
    for (Index c = 0; c < jn; ++c) uj.col(c) = svd.u.col(j[static_cast<std::size_t>(c)]);
    block = uj.transpose() * w * svd.v;
  }
  return block.norm() <= tol * relative_scale(w);
}

bool in_normal_frechet_MXr(const ConeQuery& q, const Matrix& w) {
  check_shape(q.svd, w, "in_normal_frechet_MXr");
  if (q.s() < q.r) return w.norm() <= q.tol;
  Matrix block = q.svd.rows() >= q.svd.cols()
                     ? Matrix(q.svd.u.transpose() * w * q.svd.v_gamma())
                     : Matrix(q.svd.u_gamma().transpose() * w * q.svd.v);
  return block.norm() <= q.tol * relative_scale(w);
}

std::vector<IndexSet> enumerate_J(Index s, Index k, Index r, std::size_t cap) {
  if (s < 0 || s > r || r > k) {
    throw InputError("enumerate_J: need 0 <= s <= r <= min(m, n)");
  }
  // C(k - s, r - s), aborting as soon as the cap is exceeded.
  const Index pool = k - s;
  const Index pick = r - s;
  double count = 1.0;
  for (Index i = 1; i <= pick; ++i) {
    count = count * static_cast<double>(pool - pick + i) / static_cast<double>(i);
    if (count > static_cast<double>(cap)) {
      throw SizeError("enumerate_J: more than " + std::to_string(cap) +
                      " index sets");
    }
  }

  std::vector<IndexSet> out;
  out.reserve(static_cast<std::size_t>(count + 0.5));
  IndexSet extra(static_cast<std::size_t>(pick));
  for (Index i = 0; i < pick; ++i) extra[static_cast<std::size_t>(i)] = s + i;
  while (true) {
    IndexSet j;
    j.reserve(static_cast<std::size_t>(r));
    for (Index g = 0; g < s; ++g) j.push_back(g);
    j.insert(j.end(), extra.begin(), extra.end());
    out.push_back(std::move(j));

    Index pos = pick - 1;
    while (pos >= 0 && extra[static_cast<std::size_t>(pos)] == k - pick + pos) --pos;
    if (pos < 0) break;
    ++extra[static_cast<std::size_t>(pos)];
    for (Index i = pos + 1; i < pick; ++i) {
      extra[static_cast<std::size_t>(i)] = extra[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return out;
}

}  // namespace lrmoa
