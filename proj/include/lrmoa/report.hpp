#pragma once

#include "lrmoa/oracle.hpp"
#include "lrmoa/second_order.hpp"
#include "lrmoa/solver.hpp"
#include "lrmoa/stationarity.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace lrmoa {

struct AnalysisOptions {
  std::optional<double> alpha;
  SecondOrderOptions second_order;
};

/// Everything `analyze` reports for one point.
struct Analysis {
  std::string problem;
  std::string point;
  Index m = 0;
  Index n = 0;
  Index l = 0;
  Index r = 0;
  double f_value = 0.0;
  Vector singular_values;
  Index rank = 0;
  double rank_cut = 0.0;
  StationarityReport first_order;
  std::optional<SecondOrderReport> second_order;
  std::vector<std::string> warnings;

  /// A constraint qualification is certified and no rank warning is raised.
  bool certified() const;
};

Analysis analyze_point(const ProblemSpec& prob, const Matrix& x,
                       const AnalysisOptions& opts = {}, std::string problem_name = "",
                       std::string point_label = "");

// Stable JSON shapes: matrices are row-major arrays, infinities become null.
nlohmann::json matrix_json(const Matrix& x);
nlohmann::json to_json(const QualificationReport& q);
nlohmann::json to_json(const StationarityReport& s);
nlohmann::json to_json(const SecondOrderReport& s);
nlohmann::json to_json(const Analysis& a);
nlohmann::json to_json(const SolveResult& s, const std::string& problem_name);
nlohmann::json to_json(const oracle::SuiteResult& s);

std::string render_text(const Analysis& a);
std::string render_text(const oracle::SuiteResult& s);

}  // namespace lrmoa
