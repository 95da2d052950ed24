#include "lrmoa/problems.hpp"
#include "lrmoa/report.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace lrmoa;
using nlohmann::json;

namespace {

// Keys and value types only; numbers are free to move.
json skeleton(const json& v) {
  switch (v.type()) {
    case json::value_t::object: {
      json out = json::object();
      for (const auto& [k, item] : v.items()) out[k] = skeleton(item);
      return out;
    }
    case json::value_t::array:
      return v.empty() ? json::array() : json::array({skeleton(v.front())});
    case json::value_t::string:
      return "string";
    case json::value_t::boolean:
      return "boolean";
    case json::value_t::null:
      return "null";
    default:
      return "number";
  }
}

void check_golden(const std::string& name, const json& doc) {
  const std::filesystem::path path = std::filesystem::path(LRMOA_GOLDEN_DIR) / name;
  const json shape = skeleton(doc);
  if (std::getenv("LRMOA_UPDATE_GOLDEN")) {
    std::ofstream(path) << shape.dump(2) << "\n";
  }
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path.string());
  const json golden = json::parse(in);
  CHECK_MESSAGE(golden == shape, "schema drift in " << name << ":\n" << json::diff(golden, shape).dump(2));
}

Analysis analyze_example(const std::string& problem, const std::string& label) {
  const ProblemInstance inst = example_by_name(problem);
  AnalysisOptions opts;
  opts.second_order.samples = 200;
  return analyze_point(inst.spec, inst.point(label), opts, inst.name, label);
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("analysis JSON keeps its schema") {
  check_golden("analysis_full_rank.json", to_json(analyze_example("hankel", "Xbar")));
  check_golden("analysis_rank_deficient.json", to_json(analyze_example("lrr3", "Wbar")));
  check_golden("analysis_not_stationary.json", to_json(analyze_example("tr", "X1")));
}

TEST_CASE("analysis JSON of the Hankel point") {
  const json doc = to_json(analyze_example("hankel", "Xbar"));
  CHECK(doc["schema"] == "lrmoa-analysis");
  CHECK(doc["version"] == 1);
  CHECK(doc["svd"]["rank"] == 2);
  CHECK(doc["svd"]["singular_values"][0].get<double>() == doctest::Approx(112.5));
  CHECK(doc["qualification"]["intersection_rule_case"] == "eq_full_rank");
  CHECK(doc["stationarity"]["is_F"] == true);
  CHECK(doc["second_order"]["sufficient_ok"] == true);
  CHECK(doc["certified"] == true);
  // Matrices are row-major arrays.
  CHECK(doc["stationarity"]["grad_lagrangian"][2][2].get<double>() == doctest::Approx(-1e-6));
}

TEST_CASE("infinite beta is serialized as null") {
  const json doc = to_json(analyze_example("lrr3", "Wbar"));
  CHECK(doc["stationarity"]["beta"].is_null());
}

TEST_CASE("text report of the trace example point") {
  const std::string text = render_text(analyze_example("tr", "X1"));
  CHECK(text.find("F-stationary: no") != std::string::npos);
  CHECK(text.find("M-stationary: yes") != std::string::npos);
}

TEST_CASE("uncertified points carry a warning") {
  const Analysis a = analyze_example("laf", "Xbar");
  CHECK_FALSE(a.certified());
  CHECK_FALSE(a.warnings.empty());
  CHECK_FALSE(a.second_order.has_value());
}

TEST_CASE("analyze rejects mismatched points") {
  const ProblemInstance inst = example_tr();
  CHECK_THROWS_AS(analyze_point(inst.spec, Matrix::Zero(3, 3)), ShapeError);
}

TEST_CASE("suite results serialize") {
  const oracle::SuiteResult res = oracle::run_suite("hankel-rank1", 0, 2);
  const json doc = to_json(res);
  CHECK(doc["suite"] == "hankel-rank1");
  CHECK(doc["passed"] == true);
  CHECK(render_text(res).find("PASS") != std::string::npos);
}

}
