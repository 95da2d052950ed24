#pragma once

#include "lrmoa/problem.hpp"

#include <filesystem>
#include <string>

namespace lrmoa {

struct NamedPoint {
  std::string label;
  Matrix matrix;
};

/// A problem together with labelled points of interest (candidate
/// stationary points, solver starts).
struct ProblemInstance {
  std::string name;
  ProblemSpec spec;
  std::vector<NamedPoint> points;

  bool has_point(const std::string& label) const;
  /// Throws InputError for an unknown label.
  const Matrix& point(const std::string& label) const;
};

/// Low-rank Hankel approximation: min 1/2 |H - X|_F^2 over m x n Hankel
/// matrices of rank <= r. Constraints e_k e_j^T - e_{k-1} e_{j+1}^T with
/// b = 0, ordered by k = 2..m (outer), j = 1..n-1 (inner), 1-based.
ProblemSpec build_hankel(Index m, Index n, const Matrix& h, Index r);

/// Low-rank representation: min 1/2 sum_i w_i B^i w_i^T s.t. every row of W
/// sums to 1, rank(W) <= r.
ProblemSpec build_lrr(const std::vector<Matrix>& b_mats, Index r);

/// 3x3 linear objective <e2 e2^T, X> with eight constraints and r = 2.
/// Point: Xbar = e3 e3^T.
ProblemInstance example_laf();

/// 4x4 nearest matrix with trace 2 and rank <= 3, target H = -e3 e3^T.
/// Points X1..X4, H and the solver start X0 = H.
ProblemInstance example_tr();

/// 3x3 Hankel instance with H = [112 7.5 0; 7.5 0 0; 0 0 1e-6]. Points Xbar
/// (H with the 1e-6 removed), Xtilde = 112 e1 e1^T and X0 = Pi_{M(r)}(H).
ProblemInstance example_hankel(Index r = 2);

/// LRR with B^i = I_N. Point Wbar = ee^T / N.
ProblemInstance example_lrr(Index n, Index r = 2);

/// Instance by name: laf, tr, hankel, hankel-r1, lrr3, lrr5.
ProblemInstance example_by_name(const std::string& name);
std::vector<std::string> example_names();

// Problem documents: JSON with row-major matrices.
std::string problem_to_json(const ProblemInstance& inst);
ProblemInstance problem_from_json(const std::string& text);

void save_problem(const ProblemInstance& inst, const std::filesystem::path& path);
/// Throws ParseError (with line and field) on malformed or inconsistent
/// documents, including a missing file.
ProblemInstance load_problem(const std::filesystem::path& path);

/// Plain matrix documents ([[...], ...]) for --point / --x0 files.
Matrix load_matrix(const std::filesystem::path& path);

}  // namespace lrmoa
