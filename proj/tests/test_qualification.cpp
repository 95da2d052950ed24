#include "lrmoa/cones.hpp"
#include "lrmoa/oracle.hpp"
#include "lrmoa/problems.hpp"
#include "lrmoa/qualification.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>

using namespace lrmoa;
using namespace lrmoa::testing;

namespace {

Matrix laf_basis() { return Matrix::Identity(3, 3).rowwise().reverse(); }

}  // namespace

TEST_SUITE("qualification") {

TEST_CASE("compressed matrices at the Hankel point match the displayed family") {
  const ProblemInstance hk = example_hankel();
  const double a = std::sqrt(112.5 / 113.0);
  const double b = std::sqrt(0.5 / 113.0);
  Matrix u(3, 3);
  u << -a, b, 0, -b, -a, 0, 0, 0, 1;
  Vector sigma(3);
  sigma << 112.5, 0.5, 0.0;
  const auto t = build_T(ThinSVD::from_factors(u, sigma, u), hk.spec.affine);
  REQUIRE(t.size() == 4);

  std::vector<Matrix> expect(4, Matrix(3, 3));
  expect[0] << 0, -1, 0, 1, 0, 0, 0, 0, 0;
  expect[1] << b * b, a * b, a, a * b, a * a, -b, 0, 0, 0;
  expect[2] << -b * b, -a * b, 0, -a * b, -a * a, 0, -a, b, 0;
  expect[3] << 0, 0, b, 0, 0, a, -b, a, 0;
  // Entry (3,2) of T^4 is e3^T A^4 u2 = -a; the hand-derived display shows +a.
  expect[3](2, 1) = -a;
  for (std::size_t i = 0; i < 4; ++i) {
    CAPTURE(i);
    CHECK((t[i] - expect[i]).norm() < 1e-12);
  }
}

TEST_CASE("Assumption 1 at the Hankel points") {
  const ProblemInstance hk = example_hankel();
  const IndependenceCheck ok = assumption1_holds(orient_svd(hk.point("Xbar")), hk.spec.affine);
  CHECK(ok.holds);
  CHECK(ok.rank == 4);

  const ProblemInstance r1 = example_hankel(1);
  const ThinSVD tilde = orient_svd(r1.point("Xtilde"));
  const auto t = build_T(tilde, r1.spec.affine);
  CHECK(t[3].norm() <= 1e-10);
  const IndependenceCheck bad = assumption1_holds(tilde, r1.spec.affine);
  CHECK_FALSE(bad.holds);
  CHECK(bad.rank == 3);

  CHECK(assumption1_holds(orient_svd(hk.point("Xbar")), AffineMap(3, 3)).holds);
}

TEST_CASE("zero constraint matrices compress to zero") {
  AffineMap a(3, 3);
  a.add(Matrix::Zero(3, 3), 0.0);
  const ThinSVD svd = orient_svd(e_outer(3, 3, 0, 0));
  CHECK(build_T(svd, a)[0].norm() == 0.0);
  CHECK(build_R(svd, a)[0].norm() == 0.0);
}

TEST_CASE("Assumption 2 at the LAF point fails through R^1 = O") {
  const ProblemInstance laf = example_laf();
  const ThinSVD svd = ThinSVD::from_factors(laf_basis(), Vector::Unit(3, 0), laf_basis());
  const auto r = build_R(svd, laf.spec.affine);
  CHECK(r[0].rows() == 3);
  CHECK(r[0].cols() == 1);
  CHECK(r[0].norm() <= 1e-10);
  CHECK_FALSE(assumption2_holds(svd, laf.spec.affine).holds);
  // Same verdict from the canonical SVD.
  CHECK_FALSE(assumption2_holds(orient_svd(laf.point("Xbar")), laf.spec.affine).holds);
  const QualificationReport rep = bq_certificates(orient_svd(laf.point("Xbar")), laf.spec.affine, 2);
  CHECK(rep.intersection_rule_case == IntersectionRuleCase::not_certified);
}

TEST_CASE("Assumption 2 at the LRR point") {
  for (Index n : {3, 5}) {
    const ProblemInstance lrr = example_lrr(n);
    const ThinSVD svd = orient_svd(lrr.point("Wbar"));
    const auto r = build_R(svd, lrr.spec.affine);
    for (Index i = 0; i < n; ++i) {
      // R^i = U^T E^i v with v = e / sqrt(N), so R^i = sqrt(N) U^T e_i.
      CHECK((r[static_cast<std::size_t>(i)] - std::sqrt(double(n)) * svd.u.transpose() * Vector::Unit(n, i)).norm() <
            1e-12);
    }
    const IndependenceCheck ok = assumption2_holds(svd, lrr.spec.affine);
    CHECK(ok.holds);
    CHECK(ok.rank == n);
    const QualificationReport rep = bq_certificates(svd, lrr.spec.affine, 2);
    CHECK(rep.intersection_rule_case == IntersectionRuleCase::eq_rank_deficient);
    CHECK(assumption2_holds(svd, AffineMap(n, n)).holds);
  }
}

TEST_CASE("bq_certificates at the Hankel point") {
  const ProblemInstance hk = example_hankel();
  const QualificationReport rep = bq_certificates(orient_svd(hk.point("Xbar")), hk.spec.affine, 2);
  CHECK(rep.intersection_rule_case == IntersectionRuleCase::eq_full_rank);
  CHECK(rep.assumption1);
  CHECK(rep.bq_subspace == rep.assumption1);
  CHECK(rep.bq_mordukhovich == rep.bq_subspace);
  CHECK(rep.t_rank == 4);
  CHECK(rep.l == 4);
}

TEST_CASE("cardinality warnings") {
  // l = 5 > m s = 2 * 1: R-independence is impossible.
  std::mt19937_64 rng(1);
  AffineMap a(2, 2);
  for (int i = 0; i < 5; ++i) a.add(gaussian(2, 2, rng), 0.0);
  const IndependenceCheck c = assumption2_holds(orient_svd(e_outer(2, 2, 0, 0)), a);
  CHECK_FALSE(c.holds);
  CHECK_FALSE(c.warnings.empty());
}

TEST_CASE("frechet_normal_of_feasible_set examples") {
  const ProblemInstance hk = example_hankel();
  const ThinSVD svd = orient_svd(hk.point("Xbar"));
  const Matrix g = hk.spec.objective.gradient(hk.point("Xbar"));
  const FeasibleNormalFit fit = frechet_normal_of_feasible_set(svd, hk.spec.affine, 2, -g);
  CHECK(fit.member);
  CHECK(fit.rule == IntersectionRuleCase::eq_full_rank);
  CHECK(fit.y.norm() <= 1e-8);
  CHECK(frechet_normal_of_feasible_set(svd, hk.spec.affine, 2, Matrix::Zero(3, 3)).member);

  const ProblemInstance lrr = example_lrr(4);
  const ThinSVD ws = orient_svd(lrr.point("Wbar"));
  const Matrix gw = lrr.spec.objective.gradient(lrr.point("Wbar"));
  const FeasibleNormalFit fw = frechet_normal_of_feasible_set(ws, lrr.spec.affine, 2, -gw);
  CHECK(fw.member);
  CHECK((fw.y + Vector::Constant(4, 0.25)).norm() <= 1e-8);

  const ProblemInstance laf = example_laf();
  CHECK_THROWS_AS(
      frechet_normal_of_feasible_set(orient_svd(laf.point("Xbar")), laf.spec.affine, 2, Matrix::Zero(3, 3)),
      QualificationError);
}

TEST_CASE("compressed matrices never grow in norm") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const Index m = 1 + static_cast<Index>(rng() % 5);
    const Index n = 1 + static_cast<Index>(rng() % 5);
    const Index s = static_cast<Index>(rng() % (std::min(m, n) + 1));
    const ThinSVD svd = orient_svd(random_rank(m, n, s, rng));
    AffineMap a(m, n);
    for (int i = 0; i < 3; ++i) a.add(gaussian(m, n, rng), 0.0);
    const auto tt = build_T(svd, a);
    const auto rr = build_R(svd, a);
    for (Index i = 0; i < a.size(); ++i) {
      CHECK(tt[static_cast<std::size_t>(i)].norm() <= a.matrix(i).norm() + 1e-12);
      CHECK(rr[static_cast<std::size_t>(i)].norm() <= a.matrix(i).norm() + 1e-12);
    }
  }
}

TEST_CASE("independence verdicts do not depend on singular-vector signs") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Index m = 2 + static_cast<Index>(rng() % 4);
    const Index n = 2 + static_cast<Index>(rng() % 4);
    const Index s = 1 + static_cast<Index>(rng() % (std::min(m, n) - 1));
    const ThinSVD svd = orient_svd(random_rank(m, n, s, rng));
    AffineMap a(m, n);
    const Index l = 1 + static_cast<Index>(rng() % (m * n));
    for (Index i = 0; i < l; ++i) a.add(gaussian(m, n, rng), 0.0);

    ThinSVD flipped = svd;
    for (Index k = 0; k < std::min(m, n); ++k) {
      if (rng() % 2) {
        flipped.u.col(k) *= -1;
        flipped.v.col(k) *= -1;
      }
    }
    for (Index k = std::min(m, n); k < m; ++k)
      if (rng() % 2) flipped.u.col(k) *= -1;
    for (Index k = std::min(m, n); k < n; ++k)
      if (rng() % 2) flipped.v.col(k) *= -1;

    const IndependenceCheck a1 = assumption1_holds(svd, a);
    const IndependenceCheck b1 = assumption1_holds(flipped, a);
    CHECK(a1.holds == b1.holds);
    CHECK(a1.rank == b1.rank);
    CHECK(assumption2_holds(svd, a).rank == assumption2_holds(flipped, a).rank);
  }
}

TEST_CASE("diagonal embedding: both assumptions agree with restricted independence") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    const Index n = 5;
    oracle::SparseInstance inst;
    inst.r = 2;
    inst.x = Vector::Zero(n);
    const Index support = 1 + static_cast<Index>(rng() % 2);
    for (Index k = 0; k < support; ++k) inst.x(static_cast<Index>(rng() % n)) = 1.0 + static_cast<double>(k);
    const Index l = static_cast<Index>(rng() % 3);
    for (Index i = 0; i < l; ++i) {
      Vector ai = gaussian(n, rng);
      if (rng() % 3 == 0) ai = ai.cwiseProduct((inst.x.array() == 0.0).cast<double>().matrix());
      inst.a.push_back(ai);
    }
    CHECK(oracle::diag_embedding_equivalence(inst).equivalent());
  }
}

TEST_CASE("diagonal embedding: a constraint supported off the pattern fails both") {
  oracle::SparseInstance inst;
  inst.r = 2;
  inst.x = Vector::Zero(5);
  inst.x(0) = 1.0;
  inst.x(1) = 2.0;
  inst.a.push_back(Vector::Unit(5, 3));
  const oracle::DiagEmbeddingCheck c = oracle::diag_embedding_equivalence(inst);
  CHECK_FALSE(c.restricted_licq);
  CHECK_FALSE(c.assumption1);
  CHECK_FALSE(c.assumption2);

  oracle::SparseInstance none;
  none.r = 1;
  none.x = Vector::Unit(4, 0);
  CHECK(oracle::diag_embedding_equivalence(none).equivalent());
}

}
