#pragma once

#include "lrmoa/types.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace lrmoa {

/// Callbacks for an objective registered by name.
struct CustomObjective {
  Index rows = 0;
  Index cols = 0;
  std::function<double(const Matrix&)> value;
  std::function<Matrix(const Matrix&)> gradient;
  // Hessian applied to a direction: nabla^2 f(X)[Xi].
  std::function<Matrix(const Matrix&, const Matrix&)> hessian_apply;
  bool convex = false;
  std::optional<double> strong_convexity_modulus;
};

void register_objective(const std::string& id, CustomObjective objective);
bool has_registered_objective(const std::string& id);

/**
 * Smooth objective f on m x n matrices.
 *
 * Built-in kinds:
 *  - frobenius_distance: f(X) = 1/2 |H - X|_F^2 (strongly convex, modulus 1).
 *  - row_quadratic: f(W) = 1/2 sum_i w_i B^i w_i^T over the rows w_i of a
 *    square W. The gradient uses the symmetric parts (B^i + B^iT)/2, so it is
 *    exact for nonsymmetric B^i as well.
 *  - linear_trace: f(X) = <C, X>.
 *  - custom: callbacks registered under an id.
 */
class Objective {
 public:
  enum class Kind { frobenius_distance, row_quadratic, linear_trace, custom };

  static Objective frobenius_distance(Matrix target);
  static Objective row_quadratic(std::vector<Matrix> b_mats);
  static Objective linear_trace(Matrix c);
  static Objective custom(const std::string& id);

  Kind kind() const;
  std::string kind_name() const;
  Index rows() const;
  Index cols() const;

  double value(const Matrix& x) const;
  Matrix gradient(const Matrix& x) const;
  Matrix hessian_apply(const Matrix& x, const Matrix& xi) const;
  /// nabla^2 f(X)[Xi, Xi].
  double hessian_quad(const Matrix& x, const Matrix& xi) const;
  /// nabla^2 f(X)[A, B], symmetrized.
  double hessian_bilinear(const Matrix& x, const Matrix& a, const Matrix& b) const;

  bool convex() const { return convex_; }
  std::optional<double> strong_convexity_modulus() const { return modulus_; }

  /// Parameters of the built-in kinds (throw for the wrong kind).
  const Matrix& target() const;
  const std::vector<Matrix>& b_mats() const;
  const Matrix& c() const;
  const std::string& custom_id() const;

 private:
  struct Frobenius {
    Matrix target;
  };
  struct RowQuadratic {
    std::vector<Matrix> b;
    std::vector<Matrix> sym;  // (B + B^T) / 2
  };
  struct Linear {
    Matrix c;
  };
  struct Custom {
    std::string id;
    std::shared_ptr<const CustomObjective> impl;
  };

  Objective() = default;
  void check_shape(const Matrix& x, const char* what) const;

  std::variant<Frobenius, RowQuadratic, Linear, Custom> params_;
  bool convex_ = false;
  std::optional<double> modulus_;
};

}  // namespace lrmoa
