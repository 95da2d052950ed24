#include "lrmoa/problems.hpp"

#include "lrmoa/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace lrmoa {

using nlohmann::json;

namespace {

Matrix unit_outer(Index m, Index n, Index i, Index j) {
  Matrix e = Matrix::Zero(m, n);
  e(i, j) = 1.0;
  return e;
}

ProblemSpec make_spec(Objective f, AffineMap a, Index r) {
  ProblemSpec spec{std::move(f), std::move(a), r};
  spec.validate();
  return spec;
}

}  // namespace

bool ProblemInstance::has_point(const std::string& label) const {
  return std::any_of(points.begin(), points.end(),
                     [&](const NamedPoint& p) { return p.label == label; });
}

const Matrix& ProblemInstance::point(const std::string& label) const {
  for (const NamedPoint& p : points) {
    if (p.label == label) return p.matrix;
  }
  throw InputError("no named point '" + label + "' in problem '" + name + "'");
}

ProblemSpec build_hankel(Index m, Index n, const Matrix& h, Index r) {
  if (m < 2 || n < 2) throw InputError("build_hankel: need m, n >= 2");
  if (h.rows() != m || h.cols() != n) throw ShapeError("build_hankel: H must be m x n");
  AffineMap a(m, n);
  for (Index k = 1; k < m; ++k) {
    for (Index j = 0; j + 1 < n; ++j) {
      a.add(unit_outer(m, n, k, j) - unit_outer(m, n, k - 1, j + 1), 0.0);
    }
  }
  return make_spec(Objective::frobenius_distance(h), std::move(a), r);
}

ProblemSpec build_lrr(const std::vector<Matrix>& b_mats, Index r) {
  const Index n = static_cast<Index>(b_mats.size());
  if (n == 0) throw InputError("build_lrr: need at least one B matrix");
  AffineMap a(n, n);
  for (Index i = 0; i < n; ++i) {
    Matrix e = Matrix::Zero(n, n);
    e.row(i).setOnes();
    a.add(std::move(e), 1.0);
  }
  return make_spec(Objective::row_quadratic(b_mats), std::move(a), r);
}

ProblemInstance example_laf() {
  const Index n = 3;
  AffineMap a(n, n);
  a.add(unit_outer(n, n, 0, 0) - unit_outer(n, n, 1, 1), 0.0);
  a.add(unit_outer(n, n, 2, 2), 1.0);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j) a.add(unit_outer(n, n, i, j), 0.0);
    }
  }
  ProblemInstance inst{"laf", make_spec(Objective::linear_trace(unit_outer(n, n, 1, 1)), std::move(a), 2), {}};
  inst.points.push_back({"Xbar", unit_outer(n, n, 2, 2)});
  return inst;
}

ProblemInstance example_tr() {
  const Index n = 4;
  const Matrix h = -unit_outer(n, n, 2, 2);
  AffineMap a(n, n);
  a.add(Matrix::Identity(n, n), 2.0);
  ProblemInstance inst{"tr", make_spec(Objective::frobenius_distance(h), std::move(a), 3), {}};
  auto diag = [&](std::initializer_list<Index> idx, double v) {
    Matrix x = Matrix::Zero(n, n);
    for (Index i : idx) x(i, i) = v;
    return x;
  };
  inst.points.push_back({"X1", diag({0, 1}, 1.0)});
  inst.points.push_back({"X2", diag({1, 3}, 1.0)});
  inst.points.push_back({"X3", diag({0, 3}, 1.0)});
  inst.points.push_back({"X4", diag({0, 1, 3}, 2.0 / 3.0)});
  inst.points.push_back({"H", h});
  inst.points.push_back({"X0", h});
  return inst;
}

ProblemInstance example_hankel(Index r) {
  Matrix h(3, 3);
  h << 112.0, 7.5, 0.0, 7.5, 0.0, 0.0, 0.0, 0.0, 1e-6;
  Matrix xbar = h;
  xbar(2, 2) = 0.0;
  ProblemInstance inst{r == 2 ? "hankel" : "hankel-r" + std::to_string(r),
                       build_hankel(3, 3, h, r), {}};
  inst.points.push_back({"Xbar", xbar});
  inst.points.push_back({"Xtilde", 112.0 * unit_outer(3, 3, 0, 0)});
  inst.points.push_back({"X0", project_low_rank(h, r).matrix});
  return inst;
}

ProblemInstance example_lrr(Index n, Index r) {
  if (n < 1) throw InputError("example_lrr: N must be positive");
  std::vector<Matrix> b(static_cast<std::size_t>(n), Matrix::Identity(n, n));
  ProblemInstance inst{"lrr" + std::to_string(n), build_lrr(b, r), {}};
  inst.points.push_back({"Wbar", Matrix::Constant(n, n, 1.0 / static_cast<double>(n))});
  return inst;
}

std::vector<std::string> example_names() {
  return {"laf", "tr", "hankel", "hankel-r1", "lrr3", "lrr5"};
}

ProblemInstance example_by_name(const std::string& name) {
  if (name == "laf") return example_laf();
  if (name == "tr") return example_tr();
  if (name == "hankel") return example_hankel(2);
  if (name == "hankel-r1") return example_hankel(1);
  if (name == "lrr3") return example_lrr(3);
  if (name == "lrr5") return example_lrr(5);
  throw InputError("unknown example '" + name + "'");
}

// ---------------------------------------------------------------------------
// JSON documents

namespace {

constexpr const char* kFormat = "lrmoa-problem";
constexpr int kVersion = 1;

json matrix_to_json(const Matrix& x) {
  json rows = json::array();
  for (Index i = 0; i < x.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < x.cols(); ++j) row.push_back(x(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError(field + ": " + what, 0, field);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) fail(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

double number(const json& v, const std::string& field) {
  if (!v.is_number()) fail(field, "expected a number");
  return v.get<double>();
}

Index integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) fail(field, "expected an integer");
  return v.get<Index>();
}

Matrix matrix_from_json(const json& v, const std::string& field, Index m = -1, Index n = -1) {
  if (!v.is_array()) fail(field, "expected an array of rows");
  const Index rows = static_cast<Index>(v.size());
  if (rows == 0) fail(field, "empty matrix");
  if (!v[0].is_array()) fail(field, "expected an array of rows");
  const Index cols = static_cast<Index>(v[0].size());
  Matrix x(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) fail(row_field, "ragged row");
    for (Index j = 0; j < cols; ++j) {
      x(i, j) = number(row[static_cast<std::size_t>(j)], row_field + "[" + std::to_string(j) + "]");
    }
  }
  if ((m >= 0 && rows != m) || (n >= 0 && cols != n)) {
    fail(field, "is " + std::to_string(rows) + "x" + std::to_string(cols) + ", expected " +
                    std::to_string(m) + "x" + std::to_string(n));
  }
  return x;
}

json objective_to_json(const Objective& f) {
  json o;
  o["kind"] = f.kind_name();
  switch (f.kind()) {
    case Objective::Kind::frobenius_distance:
      o["H"] = matrix_to_json(f.target());
      break;
    case Objective::Kind::row_quadratic: {
      json list = json::array();
      for (const Matrix& b : f.b_mats()) list.push_back(matrix_to_json(b));
      o["B"] = std::move(list);
      break;
    }
    case Objective::Kind::linear_trace:
      o["C"] = matrix_to_json(f.c());
      break;
    case Objective::Kind::custom:
      o["id"] = f.custom_id();
      break;
  }
  return o;
}

Objective objective_from_json(const json& o, Index m, Index n) {
  const json& kind_v = require(o, "kind", "objective");
  if (!kind_v.is_string()) fail("objective.kind", "expected a string");
  const std::string kind = kind_v.get<std::string>();
  if (kind == "frobenius_distance") {
    return Objective::frobenius_distance(matrix_from_json(require(o, "H", "objective"), "objective.H", m, n));
  }
  if (kind == "linear_trace") {
    return Objective::linear_trace(matrix_from_json(require(o, "C", "objective"), "objective.C", m, n));
  }
  if (kind == "row_quadratic") {
    const json& list = require(o, "B", "objective");
    if (!list.is_array()) fail("objective.B", "expected a list of matrices");
    if (m != n || static_cast<Index>(list.size()) != m) {
      fail("objective.B", "row_quadratic needs m = n = number of B matrices");
    }
    std::vector<Matrix> b;
    for (std::size_t i = 0; i < list.size(); ++i) {
      b.push_back(matrix_from_json(list[i], "objective.B[" + std::to_string(i) + "]", n, n));
    }
    return Objective::row_quadratic(std::move(b));
  }
  if (kind == "custom") {
    const json& id = require(o, "id", "objective");
    if (!id.is_string()) fail("objective.id", "expected a string");
    try {
      Objective f = Objective::custom(id.get<std::string>());
      if (f.rows() != m || f.cols() != n) fail("objective.id", "registered objective has the wrong shape");
      return f;
    } catch (const InputError& e) {
      fail("objective.id", e.what());
    }
  }
  fail("objective.kind", "unknown kind '" + kind + "'");
}

std::size_t line_of(const std::string& text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::string problem_to_json(const ProblemInstance& inst) {
  const ProblemSpec& p = inst.spec;
  json doc;
  doc["format"] = kFormat;
  doc["version"] = kVersion;
  doc["name"] = inst.name;
  doc["m"] = p.rows();
  doc["n"] = p.cols();
  doc["l"] = p.affine.size();
  doc["r"] = p.rank_bound;
  doc["rank_tol"] = p.rank_tol;
  doc["tol"] = p.tol;
  doc["objective"] = objective_to_json(p.objective);
  json cons = json::array();
  for (Index i = 0; i < p.affine.size(); ++i) {
    cons.push_back({{"matrix", matrix_to_json(p.affine.matrix(i))}, {"rhs", p.affine.rhs()(i)}});
  }
  doc["constraints"] = std::move(cons);
  json pts = json::array();
  for (const NamedPoint& pt : inst.points) {
    pts.push_back({{"label", pt.label}, {"matrix", matrix_to_json(pt.matrix)}});
  }
  doc["named_points"] = std::move(pts);
  return doc.dump(2) + "\n";
}

namespace {

ProblemInstance parse_document(const std::string& text);

// Field errors carry the line of the top-level key they belong to.
std::size_t line_of_field(const std::string& text, const std::string& field) {
  const std::string key = field.substr(0, field.find_first_of(".["));
  const std::size_t pos = text.find("\"" + key + "\"");
  return pos == std::string::npos ? 0 : line_of(text, pos);
}

}  // namespace

ProblemInstance problem_from_json(const std::string& text) {
  try {
    return parse_document(text);
  } catch (const ParseError& e) {
    if (e.line() != 0 || e.field().empty()) throw;
    throw ParseError(e.what(), line_of_field(text, e.field()), e.field());
  }
}

namespace {

ProblemInstance parse_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed document: ") + e.what(), line_of(text, e.byte), "");
  }
  if (!doc.is_object()) fail("(root)", "expected an object");
  if (auto it = doc.find("format"); it != doc.end() && *it != kFormat) {
    fail("format", "unsupported format");
  }
  if (auto it = doc.find("version"); it != doc.end() && *it != kVersion) {
    fail("version", "unsupported version");
  }

  const Index m = integer(require(doc, "m", ""), "m");
  const Index n = integer(require(doc, "n", ""), "n");
  if (m < 1 || n < 1) fail("m", "dimensions must be positive");
  const Index r = integer(require(doc, "r", ""), "r");
  if (r < 0 || r >= std::min(m, n)) {
    fail("r", "rank bound " + std::to_string(r) + " must satisfy 0 <= r < min(m, n)");
  }

  const json& cons = require(doc, "constraints", "");
  if (!cons.is_array()) fail("constraints", "expected an array");
  AffineMap a(m, n);
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const std::string field = "constraints[" + std::to_string(i) + "]";
    a.add(matrix_from_json(require(cons[i], "matrix", field), field + ".matrix", m, n),
          number(require(cons[i], "rhs", field), field + ".rhs"));
  }
  if (auto it = doc.find("l"); it != doc.end() && integer(*it, "l") != a.size()) {
    fail("l", "declares " + std::to_string(it->get<Index>()) + " constraints, found " +
                  std::to_string(a.size()));
  }

  ProblemSpec spec{objective_from_json(require(doc, "objective", ""), m, n), std::move(a), r};
  if (auto it = doc.find("rank_tol"); it != doc.end()) spec.rank_tol = number(*it, "rank_tol");
  if (auto it = doc.find("tol"); it != doc.end()) spec.tol = number(*it, "tol");
  try {
    spec.validate();
  } catch (const Error& e) {
    fail("(problem)", e.what());
  }

  ProblemInstance inst{doc.value("name", std::string("problem")), std::move(spec), {}};
  if (auto it = doc.find("named_points"); it != doc.end()) {
    if (!it->is_array()) fail("named_points", "expected an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string field = "named_points[" + std::to_string(i) + "]";
      const json& lbl = require((*it)[i], "label", field);
      if (!lbl.is_string()) fail(field + ".label", "expected a string");
      inst.points.push_back({lbl.get<std::string>(),
                             matrix_from_json(require((*it)[i], "matrix", field), field + ".matrix", m, n)});
    }
  }
  return inst;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0, "");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void save_problem(const ProblemInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << problem_to_json(inst);
}

ProblemInstance load_problem(const std::filesystem::path& path) {
  return problem_from_json(read_file(path));
}

Matrix load_matrix(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what(), line_of(text, e.byte), "");
  }
  if (doc.is_object() && doc.contains("matrix")) return matrix_from_json(doc["matrix"], "matrix");
  return matrix_from_json(doc, "(root)");
}

}  // namespace lrmoa
