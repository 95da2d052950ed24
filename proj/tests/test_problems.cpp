#include "lrmoa/problems.hpp"
#include "lrmoa/solver.hpp"
#include "support.hpp"

#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>

using namespace lrmoa;
using namespace lrmoa::testing;

namespace {

ProblemInstance roundtrip(const ProblemInstance& inst) { return problem_from_json(problem_to_json(inst)); }

std::size_t parse_error_line(const std::string& text) {
  try {
    problem_from_json(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("3x3 Hankel constraints match the displayed family") {
  const ProblemSpec p = build_hankel(3, 3, Matrix::Zero(3, 3), 2);
  REQUIRE(p.affine.size() == 4);
  auto col = [](Index k) { return Vector(Vector::Unit(3, k)); };
  Matrix a1 = Matrix::Zero(3, 3), a2 = a1, a3 = a1, a4 = a1;
  a1.col(0) = col(1);
  a1.col(1) = -col(0);
  a2.col(1) = col(1);
  a2.col(2) = -col(0);
  a3.col(0) = col(2);
  a3.col(1) = -col(1);
  a4.col(1) = col(2);
  a4.col(2) = -col(1);
  CHECK((p.affine.matrix(0) - a1).norm() == 0.0);
  CHECK((p.affine.matrix(1) - a2).norm() == 0.0);
  CHECK((p.affine.matrix(2) - a3).norm() == 0.0);
  CHECK((p.affine.matrix(3) - a4).norm() == 0.0);
  CHECK(p.affine.rhs().norm() == 0.0);
}

TEST_CASE("2x2 Hankel has one symmetric constraint") {
  const ProblemSpec p = build_hankel(2, 2, Matrix::Zero(2, 2), 1);
  REQUIRE(p.affine.size() == 1);
  Matrix x(2, 2);
  x << 1, 2, 2, 5;
  CHECK(feasibility_residual(p.affine, x) == 0.0);
  x(1, 0) = 3;
  CHECK(feasibility_residual(p.affine, x) == doctest::Approx(1.0));
  CHECK_THROWS_AS(build_hankel(1, 3, Matrix::Zero(1, 3), 0), InputError);
}

TEST_CASE("Hankel constraints vanish exactly on Hankel matrices") {
  std::mt19937_64 rng(1);
  for (Index m = 2; m <= 5; ++m) {
    for (Index n = 2; n <= 5; ++n) {
      const ProblemSpec p = build_hankel(m, n, Matrix::Zero(m, n), 1);
      CHECK(p.affine.size() == (m - 1) * (n - 1));
      CHECK(static_cast<Index>(kernel_basis(p.affine).size()) == m + n - 1);
      const Vector h = gaussian(m + n - 1, rng);
      Matrix x(m, n);
      for (Index i = 0; i < m; ++i)
        for (Index j = 0; j < n; ++j) x(i, j) = h(i + j);
      CHECK(feasibility_residual(p.affine, x) <= 1e-14);
    }
  }
}

TEST_CASE("LRR builder") {
  std::vector<Matrix> id(4, Matrix::Identity(4, 4));
  const ProblemSpec p = build_lrr(id, 2);
  std::mt19937_64 rng(2);
  const Matrix w = gaussian(4, 4, rng);
  CHECK((p.objective.gradient(w) - w).norm() < 1e-14);
  for (Index i = 0; i < 4; ++i) {
    CHECK(p.affine.matrix(i).row(i).sum() == 4.0);
    CHECK(p.affine.matrix(i).sum() == 4.0);
  }
  CHECK(p.affine.rhs() == Vector::Ones(4));

  // N = 1: the single entry is forced to 1.
  const ProblemSpec one = build_lrr({Matrix::Identity(1, 1)}, 0);
  CHECK(one.affine.size() == 1);

  std::vector<Matrix> psd;
  for (int i = 0; i < 3; ++i) {
    const Matrix g = gaussian(3, 3, rng);
    psd.push_back(g * g.transpose());
  }
  CHECK(build_lrr(psd, 1).objective.convex());
  CHECK_THROWS_AS(build_lrr({Matrix::Identity(3, 3), Matrix::Identity(2, 2)}, 1), ShapeError);
}

TEST_CASE("LRR projections have unit row sums") {
  const ProblemInstance lrr = example_lrr(5);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const Matrix w = project_affine(lrr.spec.affine, gaussian(5, 5, rng));
    CHECK((w.rowwise().sum() - Vector::Ones(5)).norm() <= 1e-12);
  }
}

TEST_CASE("named points of the examples are feasible") {
  for (const std::string& name : example_names()) {
    const ProblemInstance inst = example_by_name(name);
    for (const NamedPoint& p : inst.points) {
      CAPTURE(name);
      CAPTURE(p.label);
      if (p.label == "H" || p.label == "X0") continue;
      CHECK(feasibility_residual(inst.spec.affine, p.matrix) <= 1e-12);
    }
  }
}

TEST_CASE("trace example arithmetic") {
  const ProblemInstance tr = example_tr();
  const Matrix x4 = tr.point("X4");
  CHECK(x4.trace() == doctest::Approx(2.0));
  // 1/2 (3 (2/3)^2 + 1) = 7/6
  CHECK(tr.spec.objective.value(x4) == doctest::Approx(7.0 / 6.0));
  CHECK(tr.spec.objective.value(tr.point("X1")) == doctest::Approx(1.5));
  REQUIRE(tr.spec.objective.strong_convexity_modulus());
  CHECK(*tr.spec.objective.strong_convexity_modulus() == 1.0);
  CHECK(tr.spec.affine.size() == 1);
  CHECK(tr.spec.rank_bound == 3);
}

TEST_CASE("LAF example shape") {
  const ProblemInstance laf = example_laf();
  CHECK(laf.spec.affine.size() == 8);
  CHECK(laf.has_point("Xbar"));
  CHECK_THROWS_AS(laf.point("nope"), InputError);
  CHECK_THROWS_AS(example_by_name("nope"), InputError);
}

TEST_CASE("problem documents round-trip") {
  for (const std::string& name : example_names()) {
    CAPTURE(name);
    const ProblemInstance a = example_by_name(name);
    const ProblemInstance b = roundtrip(a);
    CHECK(b.name == a.name);
    CHECK(b.spec.rank_bound == a.spec.rank_bound);
    CHECK(b.spec.tol == a.spec.tol);
    CHECK(b.spec.rank_tol == a.spec.rank_tol);
    CHECK(b.spec.objective.kind() == a.spec.objective.kind());
    REQUIRE(b.spec.affine.size() == a.spec.affine.size());
    for (Index i = 0; i < a.spec.affine.size(); ++i) {
      CHECK((b.spec.affine.matrix(i) - a.spec.affine.matrix(i)).norm() == 0.0);
    }
    CHECK((b.spec.affine.rhs() - a.spec.affine.rhs()).norm() == 0.0);
    REQUIRE(b.points.size() == a.points.size());
    for (std::size_t k = 0; k < a.points.size(); ++k) {
      CHECK(b.points[k].label == a.points[k].label);
      CHECK((b.points[k].matrix - a.points[k].matrix).norm() == 0.0);
    }
    std::mt19937_64 rng(4);
    const Matrix x = gaussian(a.spec.rows(), a.spec.cols(), rng);
    CHECK(b.spec.objective.value(x) == a.spec.objective.value(x));
  }
}

TEST_CASE("save and load through the filesystem") {
  const auto dir = std::filesystem::temp_directory_path() / "lrmoa-problems-test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "hankel.prob";
  save_problem(example_hankel(), path);
  const ProblemInstance back = load_problem(path);
  CHECK(back.name == "hankel");
  CHECK_THROWS_AS(load_problem(dir / "missing.prob"), ParseError);

  const auto mpath = dir / "m.json";
  std::ofstream(mpath) << "[[1, 2], [3, 4]]";
  const Matrix m = load_matrix(mpath);
  CHECK(m(1, 0) == 3.0);
  std::ofstream(mpath) << R"({"matrix": [[1, 2, 3]]})";
  CHECK(load_matrix(mpath).cols() == 3);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid documents are rejected with locations") {
  nlohmann::json doc = nlohmann::json::parse(problem_to_json(example_tr()));

  nlohmann::json bad = doc;
  bad["r"] = 4;
  CHECK_THROWS_AS(problem_from_json(bad.dump(2)), ParseError);

  bad = doc;
  bad["constraints"][0]["matrix"] = nlohmann::json::array({nlohmann::json::array({1, 0}), nlohmann::json::array({0, 1})});
  CHECK_THROWS_AS(problem_from_json(bad.dump(2)), ParseError);

  bad = doc;
  bad["l"] = 3;
  CHECK_THROWS_AS(problem_from_json(bad.dump(2)), ParseError);

  bad = doc;
  bad.erase("objective");
  try {
    problem_from_json(bad.dump(2));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.field() == "objective");
  }

  CHECK(parse_error_line("{\n  \"m\": 3,\n  oops\n}") == 3);

  bad = doc;
  bad["r"] = "three";
  const std::string text = bad.dump(2);
  std::size_t line = 1;
  for (std::size_t i = 0; i < text.find("\"r\""); ++i) line += text[i] == '\n';
  CHECK(parse_error_line(text) == line);
}

}
