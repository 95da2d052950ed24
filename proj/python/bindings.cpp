#include "lrmoa/problems.hpp"
#include "lrmoa/report.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lrmoa;

namespace {

// Reports cross the boundary as JSON text; the package decodes them.
std::string analyze(const ProblemInstance& inst, const Matrix& x, std::optional<double> alpha, int samples,
                    std::uint64_t seed, const std::string& sign, const std::string& label) {
  AnalysisOptions opts;
  opts.alpha = alpha;
  opts.second_order.samples = samples;
  opts.second_order.seed = seed;
  if (sign != "as_stated" && sign != "alternate") throw InputError("sign must be 'as_stated' or 'alternate'");
  opts.second_order.sign = sign == "alternate" ? CurvatureSign::alternate : CurvatureSign::as_stated;
  return to_json(analyze_point(inst.spec, x, opts, inst.name, label)).dump();
}

py::tuple solve_problem(const ProblemInstance& inst, const Matrix& x0, double alpha, int max_iters,
                        double stop_tol, const std::string& mode, double rho) {
  SolverConfig cfg;
  cfg.alpha = alpha;
  cfg.max_iters = max_iters;
  cfg.stop_tol = stop_tol;
  cfg.rho = rho;
  if (mode != "exact" && mode != "penalty") throw InputError("mode must be 'exact' or 'penalty'");
  cfg.affine_mode = mode == "penalty" ? AffineMode::quadratic_penalty : AffineMode::exact_projection;
  SolveResult res;
  {
    py::gil_scoped_release release;
    res = solve(inst.spec, x0, cfg);
  }
  return py::make_tuple(res.x, to_json(res, inst.name).dump());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimality checks for rank-constrained matrix problems with affine constraints";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::object value_base = py::reinterpret_borrow<py::object>(
      PyErr_NewException("lrmoa._core.InvalidInput", py::make_tuple(base, py::handle(PyExc_ValueError)).ptr(), nullptr));
  m.attr("InvalidInput") = value_base;
  py::register_exception<ShapeError>(m, "ShapeError", value_base.ptr());
  py::register_exception<SizeError>(m, "SizeError", value_base.ptr());
  py::register_exception<InputError>(m, "InputError", value_base.ptr());
  py::register_exception<ParseError>(m, "ParseError", value_base.ptr());

  py::class_<ProblemInstance>(m, "Problem")
      .def_readonly("name", &ProblemInstance::name)
      .def_property_readonly("shape", [](const ProblemInstance& p) { return py::make_tuple(p.spec.rows(), p.spec.cols()); })
      .def_property_readonly("rank_bound", [](const ProblemInstance& p) { return p.spec.rank_bound; })
      .def_property_readonly("num_constraints", [](const ProblemInstance& p) { return p.spec.affine.size(); })
      .def_property_readonly("labels", [](const ProblemInstance& p) {
        std::vector<std::string> out;
        for (const NamedPoint& pt : p.points) out.push_back(pt.label);
        return out;
      })
      .def("point", &ProblemInstance::point, py::arg("label"))
      .def("objective", [](const ProblemInstance& p, const Matrix& x) { return p.spec.objective.value(x); })
      .def("gradient", [](const ProblemInstance& p, const Matrix& x) { return p.spec.objective.gradient(x); })
      .def("residual", [](const ProblemInstance& p, const Matrix& x) { return feasibility_residual(p.spec.affine, x); })
      .def("to_json", &problem_to_json)
      .def("__repr__", [](const ProblemInstance& p) {
        return "<Problem " + p.name + " " + std::to_string(p.spec.rows()) + "x" + std::to_string(p.spec.cols()) +
               ", l=" + std::to_string(p.spec.affine.size()) + ", r=" + std::to_string(p.spec.rank_bound) + ">";
      });

  m.def("example", &example_by_name, py::arg("name"));
  m.def("example_names", &example_names);
  m.def("load_problem", [](const std::string& path) { return load_problem(path); }, py::arg("path"));
  m.def("problem_from_json", &problem_from_json, py::arg("text"));

  m.def("_analyze", &analyze, py::arg("problem"), py::arg("x"), py::arg("alpha") = py::none(),
        py::arg("samples") = 2000, py::arg("seed") = 0, py::arg("sign") = "as_stated", py::arg("label") = "");
  m.def("_solve", &solve_problem, py::arg("problem"), py::arg("x0"), py::arg("alpha") = 0.5,
        py::arg("max_iters") = 10000, py::arg("stop_tol") = 1e-9, py::arg("mode") = "exact", py::arg("rho") = 10.0);
  m.def(
      "_oracle",
      [](const std::string& name, std::uint64_t seed, int cases) {
        return to_json(oracle::run_suite(name, seed, cases)).dump();
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("cases") = 0);
  m.def("oracle_suites", &oracle::suite_names);

  m.def(
      "project_low_rank",
      [](const Matrix& z, Index r) {
        const LowRankProjection p = project_low_rank(z, r);
        return py::make_tuple(p.matrix, p.tie);
      },
      py::arg("z"), py::arg("r"));
  m.def("singular_values", &singular_values, py::arg("x"));
  m.def("rank_estimate", &rank_estimate, py::arg("x"), py::arg("rel_tol") = kDefaultRankTol);
}
