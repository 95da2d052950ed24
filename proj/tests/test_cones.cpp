#include "lrmoa/cones.hpp"
#include "lrmoa/problems.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace lrmoa;
using namespace lrmoa::testing;

namespace {

Matrix diag(std::initializer_list<double> d) {
  Matrix x = Matrix::Zero(static_cast<Index>(d.size()), static_cast<Index>(d.size()));
  Index i = 0;
  for (double v : d) x(i, i) = v, ++i;
  return x;
}

// A direction in the Bouligand tangent cone: tangent part plus a normal part
// truncated to rank r - s.
Matrix sample_tangent(const ThinSVD& svd, Index r, std::mt19937_64& rng) {
  const Index m = svd.rows();
  const Index n = svd.cols();
  const Matrix t = project_tangent_fixed_rank(svd, gaussian(m, n, rng));
  const Matrix nrm = project_normal_fixed_rank(svd, gaussian(m, n, rng));
  return t + project_low_rank(nrm, r - svd.rank).matrix;
}

}  // namespace

TEST_SUITE("cones") {

TEST_CASE("tangent projection fixes tangent matrices and kills pure normal directions") {
  std::mt19937_64 rng(1);
  const ThinSVD svd = orient_svd(random_rank(4, 3, 2, rng));
  const Matrix b1 = gaussian(2, 3, rng);
  const Matrix b2 = gaussian(4, 2, rng);
  const Matrix z = svd.u_gamma() * b1 + b2 * svd.v_gamma().transpose();
  CHECK((project_tangent_fixed_rank(svd, z) - z).norm() < 1e-12);

  const ThinSVD d = orient_svd(diag({1, 0}));
  CHECK(project_tangent_fixed_rank(d, e_outer(2, 2, 1, 1)).norm() < 1e-15);
  CHECK((project_normal_fixed_rank(d, e_outer(2, 2, 1, 1)) - e_outer(2, 2, 1, 1)).norm() < 1e-15);
}

TEST_CASE("tangent projection at the zero matrix is zero") {
  const ThinSVD svd = orient_svd(Matrix::Zero(3, 3));
  CHECK(project_tangent_fixed_rank(svd, Matrix::Ones(3, 3)).norm() == 0.0);
}

TEST_CASE("projections reject shape mismatch") {
  const ThinSVD svd = orient_svd(diag({1, 0}));
  CHECK_THROWS_AS(project_tangent_fixed_rank(svd, Matrix::Zero(3, 2)), ShapeError);
  CHECK_THROWS_AS(project_normal_fixed_rank(svd, Matrix::Zero(2, 3)), ShapeError);
}

TEST_CASE("tangent and normal projections are complementary and orthogonal") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 100; ++t) {
    const Index m = 1 + static_cast<Index>(rng() % 6);
    const Index n = 1 + static_cast<Index>(rng() % 6);
    const Index s = static_cast<Index>(rng() % (std::min(m, n) + 1));
    const ThinSVD svd = orient_svd(random_rank(m, n, s, rng));
    const Matrix z = gaussian(m, n, rng);
    const Matrix pt = project_tangent_fixed_rank(svd, z);
    const Matrix pn = project_normal_fixed_rank(svd, z);
    CHECK((pt + pn - z).norm() <= 1e-12 * std::max(1.0, z.norm()));
    CHECK(std::abs(inner(pt, pn)) <= 1e-12 * std::max(1.0, z.squaredNorm()));
    CHECK((project_tangent_fixed_rank(svd, pt) - pt).norm() <= 1e-12 * std::max(1.0, z.norm()));
  }
}

TEST_CASE("Bouligand tangent cone membership") {
  const ConeQuery full(orient_svd(diag({2, 1, 0})), 2);
  CHECK(in_tangent_bouligand_Mr(full, e_outer(3, 3, 0, 2)));
  CHECK_FALSE(in_tangent_bouligand_Mr(full, e_outer(3, 3, 2, 2)));

  const ConeQuery deficient(orient_svd(diag({1, 0, 0})), 2);
  CHECK_FALSE(in_tangent_bouligand_Mr(deficient, e_outer(3, 3, 1, 1) + e_outer(3, 3, 2, 2)));
  CHECK(in_tangent_bouligand_Mr(deficient, e_outer(3, 3, 1, 1)));
  CHECK(in_tangent_bouligand_Mr(deficient, Matrix::Zero(3, 3)));
}

TEST_CASE("Frechet normal cone of the rank-deficient trace example point is trivial") {
  const ProblemInstance tr = example_tr();
  const ConeQuery q(orient_svd(tr.point("X1")), 3);
  CHECK(q.s() == 2);
  CHECK(in_normal_frechet_Mr(q, Matrix::Zero(4, 4)));
  CHECK_FALSE(in_normal_frechet_Mr(q, -e_outer(4, 4, 3, 3)));
  CHECK_FALSE(in_normal_frechet_Mr(q, 1e-3 * e_outer(4, 4, 2, 3)));
}

TEST_CASE("Frechet normal cone at the Hankel point") {
  const ConeQuery q(orient_svd(example_hankel().point("Xbar")), 2);
  CHECK(in_normal_frechet_Mr(q, 1e-6 * e_outer(3, 3, 2, 2)));
  CHECK(in_normal_frechet_Mr(q, Matrix::Zero(3, 3)));
  CHECK_FALSE(in_normal_frechet_Mr(q, e_outer(3, 3, 0, 0)));
  CHECK(in_normal_frechet_MXr(q, 1e-6 * e_outer(3, 3, 2, 2)));
}

TEST_CASE("Mordukhovich normal cone at the trace example point") {
  const ConeQuery q(orient_svd(example_tr().point("X1")), 3);
  CHECK(in_normal_mordukhovich_Mr(q, -e_outer(4, 4, 3, 3)));
  Matrix w = Matrix::Zero(4, 4);
  w.bottomRightCorner(2, 2) << 1, 2, 3, 5;
  CHECK_FALSE(in_normal_mordukhovich_Mr(q, w));
  w.bottomRightCorner(2, 2) << 1, 2, 2, 4;
  CHECK(in_normal_mordukhovich_Mr(q, w));
  CHECK(in_normal_mordukhovich_Mr(q, Matrix::Zero(4, 4)));
}

TEST_CASE("ConeQuery rejects a base point above the bound") {
  CHECK_THROWS_AS(ConeQuery(orient_svd(diag({1, 1, 1})), 2), InputError);
}

TEST_CASE("flat-subspace normal membership") {
  const ThinSVD svd = orient_svd(diag({1, 0, 0}));
  const IndexSet j{0, 1};
  CHECK(in_normal_MXJ(svd, j, Matrix::Zero(3, 3)));
  CHECK_FALSE(in_normal_MXJ(svd, j, svd.u.col(0) * svd.v.col(0).transpose()));
  CHECK_FALSE(in_normal_MXJ(svd, j, e_outer(3, 3, 0, 1)));
  CHECK(in_normal_MXJ(svd, j, e_outer(3, 3, 1, 2)));
  CHECK_THROWS_AS(in_normal_MXJ(svd, IndexSet{1, 2}, Matrix::Zero(3, 3)), InputError);
}

TEST_CASE("LAF base point flat subspace by hand") {
  // X = e3 e3^T with U = V = [e3 e2 e1], J = {1, 2}: U^T W V_J reads the
  // entries of W in columns 3 and 2.
  ThinSVD svd = ThinSVD::from_factors(Matrix::Identity(3, 3).rowwise().reverse(), Vector::Unit(3, 0),
                                      Matrix::Identity(3, 3).rowwise().reverse());
  CHECK(svd.rank == 1);
  CHECK_FALSE(in_normal_MXJ(svd, IndexSet{0, 1}, e_outer(3, 3, 0, 1)));
  CHECK(in_normal_MXJ(svd, IndexSet{0, 1}, e_outer(3, 3, 1, 0)));
}

TEST_CASE("enumerate_J counts and order") {
  CHECK(enumerate_J(2, 3, 2) == std::vector<IndexSet>{{0, 1}});
  CHECK(enumerate_J(1, 3, 2) == std::vector<IndexSet>{{0, 1}, {0, 2}});
  CHECK(enumerate_J(0, 4, 2).size() == 6);
  CHECK(enumerate_J(0, 4, 2).front() == IndexSet{0, 1});
  CHECK(enumerate_J(0, 4, 2).back() == IndexSet{2, 3});
  CHECK_THROWS_AS(enumerate_J(0, 30, 15, 1000), SizeError);
  CHECK_THROWS_AS(enumerate_J(3, 4, 2), InputError);
}

TEST_CASE("Frechet normals are polar to Bouligand tangents") {
  std::mt19937_64 rng(3);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    const Index m = 2 + static_cast<Index>(rng() % 4);
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const Index r = 1 + static_cast<Index>(rng() % (std::min(m, n) - 1));
    const Index s = (t % 2 == 0) ? r : static_cast<Index>(rng() % r);
    const ConeQuery q(orient_svd(random_rank(m, n, s, rng)), r);
    const Matrix w = s == r ? project_normal_fixed_rank(q.svd, gaussian(m, n, rng)) : Matrix::Zero(m, n);
    REQUIRE(in_normal_frechet_Mr(q, w));
    CHECK(in_normal_mordukhovich_Mr(q, w) == (cone_rank(w, q.svd.rel_tol, q.tol, w.norm()) <= std::min(m, n) - r));
    for (int k = 0; k < 500; ++k) {
      const Matrix h = sample_tangent(q.svd, r, rng);
      REQUIRE(in_tangent_bouligand_Mr(q, h));
      CHECK(inner(w, h) <= 1e-8 * w.norm() * h.norm() + 1e-15);
      ++checked;
    }
  }
  CHECK(checked == 40 * 500);
}

TEST_CASE("Frechet normal implies Mordukhovich normal on accepted samples") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const Index m = 2 + static_cast<Index>(rng() % 4);
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const Index r = 1 + static_cast<Index>(rng() % (std::min(m, n) - 1));
    const Index s = static_cast<Index>(rng() % (r + 1));
    const ConeQuery q(orient_svd(random_rank(m, n, s, rng)), r);
    // Normal part of rank at most min(m, n) - r, so full-rank points accept it.
    const Matrix w = project_low_rank(project_normal_fixed_rank(q.svd, gaussian(m, n, rng)),
                                      std::min(m, n) - r).matrix;
    for (const Matrix& cand : {w, Matrix(Matrix::Zero(m, n))}) {
      if (in_normal_frechet_Mr(q, cand)) CHECK(in_normal_mordukhovich_Mr(q, cand));
    }
  }
}

TEST_CASE("Frechet normal of the flat union equals the intersection over index sets") {
  std::mt19937_64 rng(5);
  for (Index n = 1; n <= 5; ++n) {
    for (Index m = n; m <= n + 1; ++m) {
      for (Index r = 0; r < n; ++r) {
        for (Index s = 0; s <= r; ++s) {
          const ConeQuery q(orient_svd(random_rank(m, n, s, rng)), r);
          const auto js = enumerate_J(s, n, r);
          const Matrix vp = q.svd.v_perp();
          const std::vector<Matrix> candidates{Matrix::Zero(m, n), gaussian(m, n, rng),
                                               gaussian(m, n, rng) * vp * vp.transpose()};
          for (const Matrix& w : candidates) {
            bool all = true;
            for (const IndexSet& j : js) all = all && in_normal_MXJ(q.svd, j, w, q.tol);
            CHECK(in_normal_frechet_MXr(q, w) == all);
          }
        }
      }
    }
  }
}

}
