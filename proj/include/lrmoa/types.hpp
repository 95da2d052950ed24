#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lrmoa {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Sorted, zero-based column index set (e.g. the J sets of the flat
/// subspaces through a base point).
using IndexSet = std::vector<Index>;

inline constexpr double kDefaultRankTol = 1e-8;
inline constexpr double kDefaultTol = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite data, out-of-range arguments.
class InputError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Combinatorial enumeration exceeded its cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Normal-cone formula requested at a point where no constraint
/// qualification certifies it.
class QualificationError : public Error {
 public:
  using Error::Error;
};

/// Operation called for the wrong rank case (s = r vs s < r).
class WrongCaseError : public Error {
 public:
  using Error::Error;
};

class NotStationaryError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::string field)
      : Error(what), line_(line), field_(std::move(field)) {}

  std::size_t line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace lrmoa
