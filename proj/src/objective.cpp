#include "lrmoa/objective.hpp"

#include "lrmoa/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

namespace lrmoa {

namespace {

std::mutex& registry_mutex() {
  static std::mutex mu;
  return mu;
}

std::map<std::string, std::shared_ptr<const CustomObjective>>& registry() {
  static std::map<std::string, std::shared_ptr<const CustomObjective>> r;
  return r;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

void register_objective(const std::string& id, CustomObjective objective) {
  if (!objective.value || !objective.gradient || !objective.hessian_apply) {
    throw InputError("register_objective: all three callbacks are required");
  }
  std::lock_guard<std::mutex> lock(registry_mutex());
  registry()[id] = std::make_shared<const CustomObjective>(std::move(objective));
}

bool has_registered_objective(const std::string& id) {
  std::lock_guard<std::mutex> lock(registry_mutex());
  return registry().count(id) > 0;
}

Objective Objective::frobenius_distance(Matrix target) {
  require_finite(target, "frobenius_distance");
  Objective o;
  o.params_ = Frobenius{std::move(target)};
  o.convex_ = true;
  o.modulus_ = 1.0;
  return o;
}

Objective Objective::row_quadratic(std::vector<Matrix> b_mats) {
  if (b_mats.empty()) throw InputError("row_quadratic: need at least one B matrix");
  const Index n = static_cast<Index>(b_mats.size());
  RowQuadratic rq;
  double min_eig = std::numeric_limits<double>::infinity();
  double scale = 1.0;
  for (const Matrix& b : b_mats) {
    if (b.rows() != n || b.cols() != n) {
      throw ShapeError("row_quadratic: every B^i must be " + std::to_string(n) +
                       "x" + std::to_string(n));
    }
    require_finite(b, "row_quadratic");
    Matrix sym = 0.5 * (b + b.transpose());
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    scale = std::max(scale, eig.eigenvalues().cwiseAbs().maxCoeff());
    rq.sym.push_back(std::move(sym));
  }
  rq.b = std::move(b_mats);
  Objective o;
  o.params_ = std::move(rq);
  o.convex_ = min_eig >= -1e-12 * scale;
  if (min_eig > 1e-12 * scale) o.modulus_ = min_eig;
  return o;
}

Objective Objective::linear_trace(Matrix c) {
  require_finite(c, "linear_trace");
  Objective o;
  o.params_ = Linear{std::move(c)};
  o.convex_ = true;
  return o;
}

Objective Objective::custom(const std::string& id) {
  std::shared_ptr<const CustomObjective> impl;
  {
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto it = registry().find(id);
    if (it == registry().end()) {
      throw InputError("no objective registered under id '" + id + "'");
    }
    impl = it->second;
  }
  Objective o;
  o.convex_ = impl->convex;
  o.modulus_ = impl->strong_convexity_modulus;
  o.params_ = Custom{id, std::move(impl)};
  return o;
}

Objective::Kind Objective::kind() const {
  return std::visit(Overloaded{[](const Frobenius&) { return Kind::frobenius_distance; },
                               [](const RowQuadratic&) { return Kind::row_quadratic; },
                               [](const Linear&) { return Kind::linear_trace; },
                               [](const Custom&) { return Kind::custom; }},
                    params_);
}

std::string Objective::kind_name() const {
  switch (kind()) {
    case Kind::frobenius_distance:
      return "frobenius_distance";
    case Kind::row_quadratic:
      return "row_quadratic";
    case Kind::linear_trace:
      return "linear_trace";
    case Kind::custom:
      break;
  }
  return "custom";
}

Index Objective::rows() const {
  return std::visit(Overloaded{[](const Frobenius& p) { return p.target.rows(); },
                               [](const RowQuadratic& p) { return static_cast<Index>(p.b.size()); },
                               [](const Linear& p) { return p.c.rows(); },
                               [](const Custom& p) { return p.impl->rows; }},
                    params_);
}

Index Objective::cols() const {
  return std::visit(Overloaded{[](const Frobenius& p) { return p.target.cols(); },
                               [](const RowQuadratic& p) { return static_cast<Index>(p.b.size()); },
                               [](const Linear& p) { return p.c.cols(); },
                               [](const Custom& p) { return p.impl->cols; }},
                    params_);
}

void Objective::check_shape(const Matrix& x, const char* what) const {
  if (x.rows() != rows() || x.cols() != cols()) {
    throw ShapeError(std::string(what) + ": objective expects " +
                     std::to_string(rows()) + "x" + std::to_string(cols()));
  }
}

double Objective::value(const Matrix& x) const {
  check_shape(x, "value");
  return std::visit(
      Overloaded{[&](const Frobenius& p) { return 0.5 * (p.target - x).squaredNorm(); },
                 [&](const RowQuadratic& p) {
                   double total = 0.0;
                   for (Index i = 0; i < x.rows(); ++i) {
                     total += x.row(i) * p.sym[static_cast<std::size_t>(i)] * x.row(i).transpose();
                   }
                   return 0.5 * total;
                 },
                 [&](const Linear& p) { return p.c.cwiseProduct(x).sum(); },
                 [&](const Custom& p) { return p.impl->value(x); }},
      params_);
}

Matrix Objective::gradient(const Matrix& x) const {
  check_shape(x, "gradient");
  return std::visit(
      Overloaded{[&](const Frobenius& p) -> Matrix { return x - p.target; },
                 [&](const RowQuadratic& p) -> Matrix {
                   Matrix g(x.rows(), x.cols());
                   for (Index i = 0; i < x.rows(); ++i) {
                     g.row(i) = x.row(i) * p.sym[static_cast<std::size_t>(i)];
                   }
                   return g;
                 },
                 [&](const Linear& p) -> Matrix { return p.c; },
                 [&](const Custom& p) -> Matrix { return p.impl->gradient(x); }},
      params_);
}

Matrix Objective::hessian_apply(const Matrix& x, const Matrix& xi) const {
  check_shape(x, "hessian_apply");
  check_shape(xi, "hessian_apply");
  return std::visit(
      Overloaded{[&](const Frobenius&) -> Matrix { return xi; },
                 [&](const RowQuadratic& p) -> Matrix {
                   Matrix h(xi.rows(), xi.cols());
                   for (Index i = 0; i < xi.rows(); ++i) {
                     h.row(i) = xi.row(i) * p.sym[static_cast<std::size_t>(i)];
                   }
                   return h;
                 },
                 [&](const Linear&) -> Matrix { return Matrix::Zero(xi.rows(), xi.cols()); },
                 [&](const Custom& p) -> Matrix { return p.impl->hessian_apply(x, xi); }},
      params_);
}

double Objective::hessian_quad(const Matrix& x, const Matrix& xi) const {
  return hessian_apply(x, xi).cwiseProduct(xi).sum();
}

double Objective::hessian_bilinear(const Matrix& x, const Matrix& a,
                                   const Matrix& b) const {
  return 0.5 * (hessian_apply(x, a).cwiseProduct(b).sum() +
                hessian_apply(x, b).cwiseProduct(a).sum());
}

const Matrix& Objective::target() const {
  if (const auto* p = std::get_if<Frobenius>(&params_)) return p->target;
  throw InputError("objective is not frobenius_distance");
}

const std::vector<Matrix>& Objective::b_mats() const {
  if (const auto* p = std::get_if<RowQuadratic>(&params_)) return p->b;
  throw InputError("objective is not row_quadratic");
}

const Matrix& Objective::c() const {
  if (const auto* p = std::get_if<Linear>(&params_)) return p->c;
  throw InputError("objective is not linear_trace");
}

const std::string& Objective::custom_id() const {
  if (const auto* p = std::get_if<Custom>(&params_)) return p->id;
  throw InputError("objective is not custom");
}

}  // namespace lrmoa
