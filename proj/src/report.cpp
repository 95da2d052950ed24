#include "lrmoa/report.hpp"

#include <cmath>
#include <sstream>

namespace lrmoa {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json vector_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(number_or_null(v(i)));
  return out;
}

template <class T>
json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) {
    return number_or_null(*v);
  } else {
    return json(*v);
  }
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string vec_text(const Vector& v) {
  std::ostringstream os;
  os << '(';
  for (Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << num(v(i));
  os << ')';
  return os.str();
}

}  // namespace

bool Analysis::certified() const {
  const auto& q = first_order.qualification;
  return q && q->intersection_rule_case != IntersectionRuleCase::not_certified && !q->rank_fragile;
}

Analysis analyze_point(const ProblemSpec& prob, const Matrix& x, const AnalysisOptions& opts,
                       std::string problem_name, std::string point_label) {
  prob.validate();
  if (x.rows() != prob.rows() || x.cols() != prob.cols()) {
    throw ShapeError("analyze: point is " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()) + ", problem is " + std::to_string(prob.rows()) +
                     "x" + std::to_string(prob.cols()));
  }
  require_finite(x, "analyze");

  Analysis a;
  a.problem = std::move(problem_name);
  a.point = std::move(point_label);
  a.m = prob.rows();
  a.n = prob.cols();
  a.l = prob.affine.size();
  a.r = prob.rank_bound;
  a.f_value = prob.objective.value(x);
  const ThinSVD svd = orient_svd(x, prob.rank_tol);
  a.singular_values = svd.sigma;
  a.rank = svd.rank;
  a.rank_cut = svd.rank_tol;

  a.first_order = classify_first_order(prob, x, opts.alpha);
  if (const auto& q = a.first_order.qualification) {
    a.warnings.insert(a.warnings.end(), q->warnings.begin(), q->warnings.end());
    if (q->rank_fragile) a.warnings.push_back("numerical rank is fragile at this point");
    if (q->intersection_rule_case == IntersectionRuleCase::not_certified) {
      a.warnings.push_back("no constraint qualification certified at this point");
    }
  }
  if (a.first_order.is_F) {
    try {
      a.second_order = check_second_order(prob, x, a.first_order.y, opts.second_order);
    } catch (const NotStationaryError& e) {
      a.warnings.push_back(e.what());
    }
  }
  return a;
}

json matrix_json(const Matrix& x) {
  json rows = json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < x.cols(); ++j) row.push_back(number_or_null(x(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const QualificationReport& q) {
  return {{"s", q.s},
          {"r", q.r},
          {"l", q.l},
          {"t_rank", q.t_rank},
          {"r_rank", q.r_rank},
          {"assumption1", q.assumption1},
          {"assumption2", q.assumption2},
          {"bq_mordukhovich", q.bq_mordukhovich},
          {"bq_subspace", q.bq_subspace},
          {"intersection_rule_case", to_string(q.intersection_rule_case)},
          {"rank_fragile", q.rank_fragile},
          {"warnings", q.warnings}};
}

json to_json(const StationarityReport& s) {
  return {{"feasible", s.feasible},
          {"feasibility_residual", number_or_null(s.feasibility_residual)},
          {"s", s.s},
          {"r", s.r},
          {"y", vector_json(s.y)},
          {"grad_lagrangian", matrix_json(s.grad_lagrangian)},
          {"f_residual", number_or_null(s.f_residual)},
          {"scale", s.scale},
          {"is_F", s.is_F},
          {"is_M", s.is_M},
          {"alpha_tested", optional_json(s.alpha_tested)},
          {"is_alpha", optional_json(s.is_alpha)},
          {"beta", number_or_null(s.beta)},
          {"classification", s.classification},
          {"notes", s.notes}};
}

json to_json(const SecondOrderReport& s) {
  return {{"case", to_string(s.rank_case)},
          {"sign", to_string(s.sign)},
          {"basis_dim", s.basis_dim},
          {"min_eig", number_or_null(s.min_eig)},
          {"max_eig", number_or_null(s.max_eig)},
          {"necessary_ok", s.necessary_ok},
          {"sufficient_ok", s.sufficient_ok},
          {"kernel_dim", s.kernel_dim},
          {"kernel_min_eig", optional_json(s.kernel_min_eig)},
          {"flats_checked", s.flats_checked},
          {"flat_min_eig", optional_json(s.flat_min_eig)},
          {"cone_samples_tested", s.cone_samples_tested},
          {"cone_violations", s.cone_violations},
          {"cone_samples_rejected", s.cone_samples_rejected},
          {"verdict", s.verdict},
          {"notes", s.notes}};
}

json to_json(const Analysis& a) {
  json doc;
  doc["schema"] = "lrmoa-analysis";
  doc["version"] = 1;
  doc["problem"] = a.problem;
  doc["point"] = a.point;
  doc["m"] = a.m;
  doc["n"] = a.n;
  doc["l"] = a.l;
  doc["r"] = a.r;
  doc["f"] = number_or_null(a.f_value);
  doc["svd"] = {{"singular_values", vector_json(a.singular_values)},
                {"rank", a.rank},
                {"rank_cut", a.rank_cut}};
  doc["qualification"] = a.first_order.qualification ? to_json(*a.first_order.qualification) : json(nullptr);
  doc["stationarity"] = to_json(a.first_order);
  doc["second_order"] = a.second_order ? to_json(*a.second_order) : json(nullptr);
  doc["certified"] = a.certified();
  doc["warnings"] = a.warnings;
  return doc;
}

json to_json(const SolveResult& s, const std::string& problem_name) {
  json doc;
  doc["schema"] = "lrmoa-solve";
  doc["version"] = 1;
  doc["problem"] = problem_name;
  doc["iterations"] = s.iterations;
  doc["converged"] = s.converged;
  doc["x"] = matrix_json(s.x);
  doc["stationarity"] = to_json(s.report);
  doc["notes"] = s.notes;
  return doc;
}

json to_json(const oracle::SuiteResult& s) {
  return {{"suite", s.name},
          {"seed", s.seed},
          {"cases", s.cases},
          {"failures", s.failures},
          {"max_error", number_or_null(s.max_error)},
          {"tolerance", s.tolerance},
          {"passed", s.passed()},
          {"messages", s.messages}};
}

std::string render_text(const Analysis& a) {
  std::ostringstream os;
  const StationarityReport& st = a.first_order;
  os << "problem " << a.problem << ", point " << a.point << " (" << a.m << "x" << a.n
     << ", l = " << a.l << ", r = " << a.r << ")\n";
  os << "f = " << num(a.f_value) << "\n\n";

  os << "feasibility\n";
  os << "  feasible: " << yes_no(st.feasible) << "  residual: " << num(st.feasibility_residual) << "\n\n";

  os << "svd\n";
  os << "  singular values: " << vec_text(a.singular_values) << "\n";
  os << "  rank: " << a.rank << " (cut " << num(a.rank_cut) << ")\n\n";

  if (const auto& q = st.qualification) {
    os << "qualification\n";
    os << "  T-independence: " << yes_no(q->assumption1) << " (rank " << q->t_rank << " of " << q->l << ")\n";
    os << "  R-independence: " << yes_no(q->assumption2) << " (rank " << q->r_rank << " of " << q->l << ")\n";
    os << "  basic qualification (subspace / Mordukhovich): " << yes_no(q->bq_subspace) << " / "
       << yes_no(q->bq_mordukhovich) << "\n";
    os << "  intersection rule: " << to_string(q->intersection_rule_case) << "\n";
    if (q->rank_fragile) os << "  rank is fragile\n";
    os << "\n";
  }

  os << "stationarity\n";
  os << "  F-stationary: " << yes_no(st.is_F) << "  (residual " << num(st.f_residual) << ", scale "
     << num(st.scale) << ")\n";
  os << "  M-stationary: " << yes_no(st.is_M) << "\n";
  if (st.alpha_tested) {
    os << "  alpha-stationary at alpha = " << num(*st.alpha_tested) << ": " << yes_no(st.is_alpha.value_or(false))
       << "\n";
  }
  os << "  beta: " << num(st.beta) << "\n";
  os << "  multiplier y: " << vec_text(st.y) << "\n";
  for (const std::string& c : st.classification) os << "  * " << c << "\n";
  for (const std::string& n : st.notes) os << "  note: " << n << "\n";
  os << "\n";

  if (const auto& so = a.second_order) {
    os << "second order (" << to_string(so->rank_case) << ", curvature sign " << to_string(so->sign) << ")\n";
    os << "  basis dimension: " << so->basis_dim << "\n";
    os << "  eigenvalues: min " << num(so->min_eig) << ", max " << num(so->max_eig) << "\n";
    if (so->rank_case == SecondOrderCase::rank_deficient) {
      os << "  ker A: dimension " << so->kernel_dim << ", min eigenvalue "
         << (so->kernel_min_eig ? num(*so->kernel_min_eig) : std::string("n/a")) << "\n";
      os << "  flat subspaces checked: " << so->flats_checked << ", min eigenvalue "
         << (so->flat_min_eig ? num(*so->flat_min_eig) : std::string("n/a")) << "\n";
      os << "  cone samples: " << so->cone_samples_tested << " tested, " << so->cone_violations
         << " violations, " << so->cone_samples_rejected << " rejected\n";
    }
    os << "  necessary: " << yes_no(so->necessary_ok) << "  sufficient: " << yes_no(so->sufficient_ok) << "\n";
    os << "  verdict: " << so->verdict << "\n";
    for (const std::string& n : so->notes) os << "  note: " << n << "\n";
    os << "\n";
  }

  for (const std::string& w : a.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string render_text(const oracle::SuiteResult& s) {
  std::ostringstream os;
  os << s.name << ": " << (s.passed() ? "PASS" : "FAIL") << " (" << s.cases << " cases, " << s.failures
     << " failures, max error " << num(s.max_error) << ", seed " << s.seed << ")\n";
  for (const std::string& m : s.messages) os << "  " << m << "\n";
  return os.str();
}

}  // namespace lrmoa
