#include "lrmoa/problem.hpp"

#include <algorithm>
#include <string>

namespace lrmoa {

void ProblemSpec::validate() const {
  if (objective.rows() != affine.rows() || objective.cols() != affine.cols()) {
    throw ShapeError("problem: objective is " + std::to_string(objective.rows()) +
                     "x" + std::to_string(objective.cols()) +
                     " but constraints are " + std::to_string(affine.rows()) +
                     "x" + std::to_string(affine.cols()));
  }
  const Index k = std::min(rows(), cols());
  if (rank_bound < 0 || rank_bound >= k) {
    throw InputError("problem: rank bound " + std::to_string(rank_bound) +
                     " must satisfy 0 <= r < min(m, n) = " + std::to_string(k));
  }
  if (!(rank_tol > 0.0) || !(tol > 0.0)) {
    throw InputError("problem: tolerances must be positive");
  }
}

}  // namespace lrmoa
