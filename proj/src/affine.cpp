#include "lrmoa/affine.hpp"

#include "lrmoa/linalg.hpp"

#include <algorithm>
#include <string>

namespace lrmoa {

namespace {

void check_shape(const AffineMap& a, const Matrix& x, const char* what) {
  if (x.rows() != a.rows() || x.cols() != a.cols()) {
    throw ShapeError(std::string(what) + ": expected " +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " matrix, got " + std::to_string(x.rows()) + "x" +
                     std::to_string(x.cols()));
  }
}

}  // namespace

AffineMap::AffineMap(Index rows, Index cols)
    : rows_(rows), cols_(cols), rhs_(Vector()) {
  if (rows <= 0 || cols <= 0) throw ShapeError("AffineMap: empty matrix shape");
}

AffineMap::AffineMap(Index rows, Index cols, std::vector<Matrix> mats,
                     Vector rhs)
    : AffineMap(rows, cols) {
  if (static_cast<Index>(mats.size()) != rhs.size()) {
    throw ShapeError("AffineMap: " + std::to_string(mats.size()) +
                     " matrices but " + std::to_string(rhs.size()) +
                     " right-hand sides");
  }
  for (std::size_t i = 0; i < mats.size(); ++i) add(std::move(mats[i]), rhs(static_cast<Index>(i)));
}

void AffineMap::add(Matrix a, double b) {
  check_shape(*this, a, "AffineMap::add");
  require_finite(a, "AffineMap::add");
  mats_.push_back(std::move(a));
  rhs_.conservativeResize(rhs_.size() + 1);
  rhs_(rhs_.size() - 1) = b;
}

Matrix AffineMap::stack() const { return stack_rows(mats_, rows_, cols_); }

Index AffineMap::stack_rank(double rel_tol) const {
  if (mats_.empty()) return 0;
  return rank_estimate(stack(), rel_tol);
}

Vector apply(const AffineMap& a, const Matrix& x) {
  check_shape(a, x, "apply");
  Vector out(a.size());
  for (Index i = 0; i < a.size(); ++i) {
    out(i) = a.matrix(i).cwiseProduct(x).sum();
  }
  return out;
}

Matrix adjoint(const AffineMap& a, const Vector& y) {
  if (y.size() != a.size()) {
    throw ShapeError("adjoint: multiplier length " + std::to_string(y.size()) +
                     " != " + std::to_string(a.size()));
  }
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (Index i = 0; i < a.size(); ++i) out += y(i) * a.matrix(i);
  return out;
}

double feasibility_residual(const AffineMap& a, const Matrix& x) {
  if (a.empty()) {
    check_shape(a, x, "feasibility_residual");
    return 0.0;
  }
  return (apply(a, x) - a.rhs()).norm();
}

std::vector<Matrix> kernel_basis(const AffineMap& a, double rel_tol) {
  const Matrix basis = nullspace(a.stack(), rel_tol);
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(basis.cols()));
  for (Index k = 0; k < basis.cols(); ++k) {
    out.push_back(unvec(basis.col(k), a.rows(), a.cols()));
  }
  return out;
}

NormalSpaceFit normal_space_member(const AffineMap& a, const Matrix& w,
                                   double tol) {
  check_shape(a, w, "normal_space_member");
  NormalSpaceFit fit;
  if (a.empty()) {
    fit.residual = w.norm();
  } else {
    const LeastSquares ls = solve_min_norm(a.stack().transpose(), vec(w));
    fit.residual = ls.residual;
    fit.y = ls.x;
  }
  fit.member = fit.residual <= tol * std::max(1.0, w.norm());
  if (!fit.member) {
    fit.y.reset();
  } else if (!fit.y) {
    fit.y = Vector();
  }
  return fit;
}

}  // namespace lrmoa
