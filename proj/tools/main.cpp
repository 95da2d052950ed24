// lrmoa: analyze candidate points, run the solver and the oracle suites on
// problem documents.
//
// Exit codes: 0 success, 1 oracle violation, 2 parse or input error,
// 3 uncertified qualification under --strict, 4 solver divergence.

#include "lrmoa/problems.hpp"
#include "lrmoa/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace lrmoa;

namespace {

enum Exit { kOk = 0, kOracleFailure = 1, kParseError = 2, kUncertified = 3, kDivergence = 4 };

std::uint64_t default_seed() {
  if (const char* env = std::getenv("RANKMOA_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric RANKMOA_SEED\n";
    }
  }
  return 0;
}

// A label of a named point, or a path to a matrix document.
Matrix resolve_point(const ProblemInstance& inst, const std::string& ref) {
  if (inst.has_point(ref)) return inst.point(ref);
  if (fs::exists(ref)) return load_matrix(ref);
  throw InputError("'" + ref + "' is neither a named point of '" + inst.name + "' nor a readable file");
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

struct AnalyzeArgs {
  std::string file;
  std::string point;
  std::optional<double> alpha;
  std::optional<double> tol;
  std::optional<double> rank_tol;
  int samples = 2000;
  std::uint64_t seed = 0;
  std::string sign = "as_stated";
  bool strict = false;
  bool json = false;
};

int run_analyze(const AnalyzeArgs& args) {
  ProblemInstance inst = load_problem(args.file);
  if (args.tol) inst.spec.tol = *args.tol;
  if (args.rank_tol) inst.spec.rank_tol = *args.rank_tol;
  inst.spec.validate();
  const Matrix x = resolve_point(inst, args.point);

  AnalysisOptions opts;
  opts.alpha = args.alpha;
  opts.second_order.samples = args.samples;
  opts.second_order.seed = args.seed;
  opts.second_order.sign = args.sign == "alternate" ? CurvatureSign::alternate : CurvatureSign::as_stated;

  const Analysis a = analyze_point(inst.spec, x, opts, inst.name, args.point);
  if (args.json) {
    std::cout << to_json(a).dump(2) << "\n";
  } else {
    std::cout << render_text(a);
  }
  if (args.strict && (!a.certified() || !a.warnings.empty())) return kUncertified;
  return kOk;
}

struct SolveArgs {
  std::string file;
  std::string x0;
  double alpha = 0.5;
  int iters = 10000;
  double stop_tol = 1e-9;
  std::uint64_t seed = 0;
  std::string mode = "exact";
  double rho = 10.0;
  std::string out = "solve-output";
  bool json = false;
};

int run_solve(const SolveArgs& args) {
  const ProblemInstance inst = load_problem(args.file);
  Matrix x0;
  std::string start = args.x0;
  if (start.empty()) start = inst.has_point("X0") ? "X0" : "rand";
  if (start == "rand") {
    x0 = random_start(inst.spec.rows(), inst.spec.cols(), args.seed);
  } else {
    x0 = resolve_point(inst, start);
  }

  SolverConfig cfg;
  cfg.alpha = args.alpha;
  cfg.max_iters = args.iters;
  cfg.stop_tol = args.stop_tol;
  cfg.seed = args.seed;
  cfg.rho = args.rho;
  cfg.affine_mode = args.mode == "penalty" ? AffineMode::quadratic_penalty : AffineMode::exact_projection;

  SolveResult res;
  try {
    res = solve(inst.spec, x0, cfg);
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDivergence;
  }

  const fs::path out(args.out);
  fs::create_directories(out);
  write_text(out / "x_star.json", nlohmann::json{{"matrix", matrix_json(res.x)}}.dump(2) + "\n");
  write_text(out / "report.json", to_json(res, inst.name).dump(2) + "\n");
  write_text(out / "iterates.csv", iterate_log_csv(res.log));

  if (args.json) {
    std::cout << to_json(res, inst.name).dump(2) << "\n";
    return kOk;
  }
  std::cout << "problem " << inst.name << ", start " << start << "\n";
  std::cout << "iterations: " << res.iterations << (res.converged ? " (converged)" : " (not converged)") << "\n";
  std::cout << "f(X*) = " << inst.spec.objective.value(res.x) << "\n";
  std::cout << "feasibility residual: " << res.report.feasibility_residual << "\n";
  std::cout << "F-stationary: " << (res.report.is_F ? "yes" : "no")
            << ", alpha-stationary: " << (res.report.is_alpha.value_or(false) ? "yes" : "no") << "\n";
  for (const std::string& c : res.report.classification) std::cout << "  * " << c << "\n";
  for (const std::string& n : res.notes) std::cout << "note: " << n << "\n";
  std::cout << "wrote " << (out / "x_star.json").string() << ", report.json, iterates.csv\n";
  return kOk;
}

int run_oracle(const std::string& suite, std::uint64_t seed, int cases, bool json) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = oracle::suite_names();
  } else {
    names = {suite};
  }
  bool all_passed = true;
  nlohmann::json docs = nlohmann::json::array();
  for (const std::string& name : names) {
    const oracle::SuiteResult res = oracle::run_suite(name, seed, cases);
    all_passed = all_passed && res.passed();
    if (json) {
      docs.push_back(to_json(res));
    } else {
      std::cout << render_text(res);
    }
  }
  if (json) std::cout << docs.dump(2) << "\n";
  return all_passed ? kOk : kOracleFailure;
}

int run_export(const std::string& dir, const std::vector<std::string>& which) {
  fs::create_directories(dir);
  const std::vector<std::string> names = which.empty() ? example_names() : which;
  for (const std::string& name : names) {
    const fs::path path = fs::path(dir) / (name + ".prob");
    save_problem(example_by_name(name), path);
    std::cout << "wrote " << path.string() << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimality checks for rank-constrained matrix problems with affine constraints"};
  app.require_subcommand(1);
  const std::uint64_t seed0 = default_seed();

  AnalyzeArgs an;
  an.seed = seed0;
  auto* analyze = app.add_subcommand("analyze", "Stationarity, qualification and second-order report for a point");
  analyze->add_option("problem", an.file, "Problem document")->required();
  analyze->add_option("--point", an.point, "Named point label or matrix file")->required();
  analyze->add_option("--alpha", an.alpha, "Step for the alpha-stationarity test");
  analyze->add_option("--tol", an.tol, "Membership / residual tolerance");
  analyze->add_option("--rank-tol", an.rank_tol, "Relative numerical-rank threshold");
  analyze->add_option("--samples", an.samples, "Cone samples for the rank-deficient second-order test");
  analyze->add_option("--seed", an.seed, "Sampling seed (default from RANKMOA_SEED, else 0)");
  analyze->add_option("--sign", an.sign, "Curvature sign: as_stated or alternate")
      ->check(CLI::IsMember({"as_stated", "alternate"}));
  analyze->add_flag("--strict", an.strict, "Exit 3 when no qualification is certified or warnings are raised");
  analyze->add_flag("--json", an.json, "Machine-readable output");

  SolveArgs sv;
  sv.seed = seed0;
  auto* solve_cmd = app.add_subcommand("solve", "Projected-gradient search for an alpha-stationary point");
  solve_cmd->add_option("problem", sv.file, "Problem document")->required();
  solve_cmd->add_option("--x0", sv.x0, "Start: named point, matrix file or 'rand' (default X0 if present)");
  solve_cmd->add_option("--alpha", sv.alpha, "Step size");
  solve_cmd->add_option("--iters", sv.iters, "Iteration limit");
  solve_cmd->add_option("--stop-tol", sv.stop_tol, "Stopping tolerance");
  solve_cmd->add_option("--seed", sv.seed, "Seed for --x0 rand (default from RANKMOA_SEED, else 0)");
  solve_cmd->add_option("--mode", sv.mode, "Affine handling: exact or penalty")
      ->check(CLI::IsMember({"exact", "penalty"}));
  solve_cmd->add_option("--rho", sv.rho, "Penalty weight for --mode penalty");
  solve_cmd->add_option("--out", sv.out, "Output directory");
  solve_cmd->add_flag("--json", sv.json, "Machine-readable output");

  std::string suite;
  std::uint64_t oracle_seed = seed0;
  int cases = 0;
  bool oracle_json = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run an independent verification suite");
  oracle_cmd->add_option("suite", suite, "Suite name or 'all'")->required();
  oracle_cmd->add_option("--seed", oracle_seed, "Seed (default from RANKMOA_SEED, else 0)");
  oracle_cmd->add_option("--cases", cases, "Number of random cases (suite default when omitted)");
  oracle_cmd->add_flag("--json", oracle_json, "Machine-readable output");

  std::string export_dir = "data";
  std::vector<std::string> export_names;
  auto* export_cmd = app.add_subcommand("export", "Write the built-in example problems as documents");
  export_cmd->add_option("dir", export_dir, "Output directory");
  export_cmd->add_option("--name", export_names, "Examples to write (default all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*analyze) return run_analyze(an);
    if (*solve_cmd) return run_solve(sv);
    if (*oracle_cmd) {
      const auto names = oracle::suite_names();
      if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end()) {
        std::cerr << "error: unknown suite '" << suite << "'; choose from all";
        for (const auto& n : names) std::cerr << ", " << n;
        std::cerr << "\n";
        return kParseError;
      }
      return run_oracle(suite, oracle_seed, cases, oracle_json);
    }
    if (*export_cmd) return run_export(export_dir, export_names);
  } catch (const ParseError& e) {
    std::cerr << "parse error";
    if (e.line() > 0) std::cerr << " at line " << e.line();
    if (!e.field().empty()) std::cerr << " (field " << e.field() << ")";
    std::cerr << ": " << e.what() << "\n";
    return kParseError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  }
  return kOk;
}
