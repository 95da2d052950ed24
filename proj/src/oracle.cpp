#include "lrmoa/oracle.hpp"

#include "lrmoa/cones.hpp"
#include "lrmoa/linalg.hpp"
#include "lrmoa/qualification.hpp"
#include "lrmoa/stationarity.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace lrmoa::oracle {

namespace {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double gauss() { return normal_(gen_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  Index integer(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  Matrix matrix(Index m, Index n) {
    Matrix x(m, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < m; ++i) x(i, j) = gauss();
    return x;
  }

  Matrix orthogonal(Index n) {
    Eigen::HouseholderQR<Matrix> qr(matrix(n, n));
    return qr.householderQ() * Matrix::Identity(n, n);
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

// Rank-k matrix with prescribed factors.
struct Factored {
  Matrix u;
  Vector sigma;  // length k, positive, nonincreasing
  Matrix v;
  Index s = 0;

  Matrix assemble() const {
    return u.leftCols(s) * sigma.head(s).asDiagonal() * v.leftCols(s).transpose();
  }
};

Factored random_factored(Rng& rng, Index m, Index n, Index s) {
  Factored f;
  f.u = rng.orthogonal(m);
  f.v = rng.orthogonal(n);
  f.s = s;
  f.sigma = Vector::Zero(std::min(m, n));
  for (Index i = 0; i < s; ++i) f.sigma(i) = rng.uniform(0.5, 3.0);
  std::sort(f.sigma.data(), f.sigma.data() + s, std::greater<>());
  return f;
}

// Symmetric eigenpairs sorted by decreasing eigenvalue.
std::pair<Vector, Matrix> sorted_eig(const Matrix& sym) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym);
  const Index n = sym.rows();
  Vector vals(n);
  Matrix vecs(n, n);
  for (Index i = 0; i < n; ++i) {
    vals(i) = eig.eigenvalues()(n - 1 - i);
    vecs.col(i) = eig.eigenvectors().col(n - 1 - i);
  }
  return {vals, vecs};
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

Matrix fd_gradient(const Objective& f, const Matrix& x, double h) {
  if (!(h > 0.0)) throw InputError("fd_gradient: h must be positive");
  Matrix g(x.rows(), x.cols());
  Matrix probe = x;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) {
      const double keep = probe(i, j);
      probe(i, j) = keep + h;
      const double up = f.value(probe);
      probe(i, j) = keep - h;
      const double down = f.value(probe);
      probe(i, j) = keep;
      g(i, j) = (up - down) / (2.0 * h);
    }
  }
  return g;
}

double fd_quad(const Objective& f, const Matrix& x, const Matrix& xi, double h) {
  if (!(h > 0.0)) throw InputError("fd_quad: h must be positive");
  return (f.value(x + h * xi) - 2.0 * f.value(x) + f.value(x - h * xi)) / (h * h);
}

Matrix eig_low_rank(const Matrix& z, Index r) {
  if (r <= 0) return Matrix::Zero(z.rows(), z.cols());
  if (z.rows() >= z.cols()) {
    const auto [vals, vecs] = sorted_eig(z.transpose() * z);
    const Matrix vr = vecs.leftCols(std::min<Index>(r, z.cols()));
    return z * vr * vr.transpose();
  }
  const auto [vals, vecs] = sorted_eig(z * z.transpose());
  const Matrix ur = vecs.leftCols(std::min<Index>(r, z.rows()));
  return ur * ur.transpose() * z;
}

ProjectionCheck projection_cross_check(const Matrix& z, Index r) {
  ProjectionCheck out;
  const Matrix a = project_low_rank(z, r).matrix;
  const Matrix b = eig_low_rank(z, r);
  const Index k = std::min(z.rows(), z.cols());
  const auto [vals, vecs] = sorted_eig(z.rows() >= z.cols() ? Matrix(z.transpose() * z)
                                                             : Matrix(z * z.transpose()));
  if (r >= 1 && r < k) {
    const double gap = vals(r - 1) - vals(r);
    out.tie = gap <= 1e-6 * std::max(1.0, vals(0));
  }
  out.discrepancy = (a - b).norm() / std::max(1.0, z.norm());
  out.objective_gap = std::abs((z - a).norm() - (z - b).norm());
  return out;
}

Rank1HankelMin rank1_hankel_min(const Matrix& h, int grid, int refine_iters) {
  if (h.rows() != 3 || h.cols() != 3) throw ShapeError("rank1_hankel_min: H must be 3x3");
  if (grid < 2) throw InputError("rank1_hankel_min: grid too small");
  const double hh = h.squaredNorm();

  // Best scale for a fixed direction u has the closed form c = u^T H u / |u|^4.
  auto value_of = [&](const Vector& u) {
    const double n2 = u.squaredNorm();
    const double proj = u.dot(h * u) / n2;
    return 0.5 * (hh - proj * proj);
  };
  auto dir_q = [](double q) { return Vector((Vector(3) << 1.0, q, q * q).finished()); };
  auto dir_p = [](double p) { return Vector((Vector(3) << p * p, p, 1.0).finished()); };

  Rank1HankelMin best;
  best.value = std::numeric_limits<double>::infinity();
  auto consider = [&](const Vector& u, double q, const std::string& family) {
    const double v = value_of(u);
    if (v < best.value) {
      const double c = u.dot(h * u) / (u.squaredNorm() * u.squaredNorm());
      best.value = v;
      best.x = c * u * u.transpose();
      best.family = family;
      best.q = q;
      best.c = c;
    }
  };

  auto search = [&](const std::function<Vector(double)>& dir, double lo, double hi,
                    const std::string& family, bool reciprocal) {
    const double step = (hi - lo) / (grid - 1);
    double arg = lo;
    double val = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid; ++i) {
      const double t = lo + step * i;
      const double v = value_of(dir(t));
      if (v < val) {
        val = v;
        arg = t;
      }
    }
    double a = std::max(lo, arg - step);
    double b = std::min(hi, arg + step);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c1 = b - phi * (b - a);
    double c2 = a + phi * (b - a);
    double f1 = value_of(dir(c1));
    double f2 = value_of(dir(c2));
    for (int it = 0; it < refine_iters; ++it) {
      if (f1 < f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - phi * (b - a);
        f1 = value_of(dir(c1));
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + phi * (b - a);
        f2 = value_of(dir(c2));
      }
    }
    const double t = 0.5 * (a + b);
    const double q = reciprocal ? (t == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / t) : t;
    consider(dir(arg), reciprocal ? (arg == 0.0 ? q : 1.0 / arg) : arg, family);
    consider(dir(t), q, family);
  };

  const std::string geometric = "c*uu^T, u=(1,q,q^2)";
  search(dir_q, -10.0, 10.0, geometric, false);
  search(dir_p, -0.1, 0.1, geometric, true);

  // Degenerate families: t e1 e1^T (q = 0) and t e3 e3^T (q -> infinity).
  const Vector e1 = Vector::Unit(3, 0);
  const Vector e3 = Vector::Unit(3, 2);
  if (0.5 * (hh - h(0, 0) * h(0, 0)) <= best.value + 1e-12 * std::max(1.0, hh)) {
    best.value = 0.5 * (hh - h(0, 0) * h(0, 0));
    best.x = h(0, 0) * e1 * e1.transpose();
    best.family = "t*e1e1^T";
    best.q = 0.0;
    best.c = h(0, 0);
  }
  if (0.5 * (hh - h(2, 2) * h(2, 2)) <= best.value + 1e-12 * std::max(1.0, hh)) {
    best.value = 0.5 * (hh - h(2, 2) * h(2, 2));
    best.x = h(2, 2) * e3 * e3.transpose();
    best.family = "t*e3e3^T";
    best.q = std::numeric_limits<double>::infinity();
    best.c = h(2, 2);
  }
  // Report the exact objective of the returned matrix.
  best.value = 0.5 * (h - best.x).squaredNorm();
  return best;
}

DiagEmbeddingCheck diag_embedding_equivalence(const SparseInstance& inst) {
  const Index n = inst.x.size();
  for (const Vector& a : inst.a) {
    if (a.size() != n) throw ShapeError("diag_embedding_equivalence: vector length mismatch");
  }
  IndexSet support;
  for (Index i = 0; i < n; ++i) {
    if (inst.x(i) != 0.0) support.push_back(i);
  }
  const Index l = static_cast<Index>(inst.a.size());

  DiagEmbeddingCheck out;
  // Vector side: rank of the l x |support| restriction, by full-pivot LU.
  if (l == 0) {
    out.restricted_licq = true;
  } else {
    Matrix restricted(l, static_cast<Index>(support.size()));
    for (Index i = 0; i < l; ++i) {
      for (std::size_t j = 0; j < support.size(); ++j) {
        restricted(i, static_cast<Index>(j)) = inst.a[static_cast<std::size_t>(i)](support[j]);
      }
    }
    Eigen::FullPivLU<Matrix> lu(restricted);
    lu.setThreshold(1e-9);
    out.restricted_licq = support.empty() ? false : lu.rank() == l;
  }

  // Matrix side through the library.
  AffineMap a(n, n);
  for (const Vector& ai : inst.a) a.add(ai.asDiagonal().toDenseMatrix(), 0.0);
  const ThinSVD svd = orient_svd(inst.x.asDiagonal().toDenseMatrix());
  out.assumption1 = assumption1_holds(svd, a).holds;
  out.assumption2 = assumption2_holds(svd, a).holds;
  if (l == 0) {
    out.assumption1 = out.assumption2 = true;
  }
  return out;
}

double block_riemannian_quad(const ProblemSpec& prob, const Matrix& u, const Vector& sigma,
                             const Matrix& v, Index s, const Vector& y, const Matrix& xi,
                             double coef) {
  const Matrix x = u.leftCols(s) * sigma.head(s).asDiagonal() * v.leftCols(s).transpose();
  Matrix g = prob.objective.gradient(x);
  for (Index i = 0; i < prob.affine.size(); ++i) g += y(i) * prob.affine.matrix(i);
  const Matrix mblk = u.transpose() * xi * v;
  const Matrix left = mblk.leftCols(s);  // [M11; M21]
  const Matrix top = mblk.topRows(s);    // [M11 M12]
  const Matrix curv = left * sigma.head(s).cwiseInverse().asDiagonal() * top;
  return prob.objective.hessian_quad(x, xi) + coef * (u.transpose() * g * v).cwiseProduct(curv).sum();
}

double curve_second_derivative(const ProblemSpec& prob, const Matrix& x, const Vector& y,
                               const Matrix& xi, double h) {
  const Index r = prob.rank_bound;
  auto lag = [&](const Matrix& z) {
    double v = prob.objective.value(z);
    for (Index i = 0; i < prob.affine.size(); ++i) {
      v += y(i) * (prob.affine.matrix(i).cwiseProduct(z).sum() - prob.affine.rhs()(i));
    }
    return v;
  };
  const double up = lag(eig_low_rank(x + h * xi, r));
  const double mid = lag(eig_low_rank(x, r));
  const double down = lag(eig_low_rank(x - h * xi, r));
  return (up - 2.0 * mid + down) / (h * h);
}

// ---------------------------------------------------------------------------
// Suites

namespace {

void record(SuiteResult& res, bool ok, double err, const std::string& what) {
  ++res.cases;
  res.max_error = std::max(res.max_error, err);
  if (!ok) {
    ++res.failures;
    if (res.messages.size() < 20) res.messages.push_back(what);
  }
}

Objective random_objective(Rng& rng, Index m, Index n, int kind) {
  switch (kind) {
    case 0:
      return Objective::frobenius_distance(rng.matrix(m, n));
    case 1: {
      std::vector<Matrix> b;
      for (Index i = 0; i < m; ++i) b.push_back(rng.matrix(n, n));
      return Objective::row_quadratic(std::move(b));
    }
    default:
      return Objective::linear_trace(rng.matrix(m, n));
  }
}

SuiteResult suite_fd(std::uint64_t seed, int cases) {
  SuiteResult res{"fd", seed, 0, 0, 0.0, 1e-5, {}};
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const int kind = static_cast<int>(rng.integer(0, 2));
    const Index m = rng.integer(1, 5);
    const Index n = kind == 1 ? m : rng.integer(1, 5);
    const Objective f = random_objective(rng, m, n, kind);
    const Matrix x = rng.matrix(m, n);
    const Matrix xi = rng.matrix(m, n);
    const Matrix g = f.gradient(x);
    const double gerr = (g - fd_gradient(f, x)).norm() / std::max(1.0, g.norm());
    const double q = f.hessian_quad(x, xi);
    const double qerr = std::abs(q - fd_quad(f, x, xi)) / std::max(1.0, std::abs(q));
    const double err = std::max(gerr, qerr);
    record(res, err <= res.tolerance, err,
           "case " + std::to_string(t) + " (" + f.kind_name() + "): relative error " + fmt(err));
  }
  return res;
}

SuiteResult suite_projection(std::uint64_t seed, int cases) {
  SuiteResult res{"projection", seed, 0, 0, 0.0, 1e-8, {}};
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const Index m = rng.integer(1, 6);
    const Index n = rng.integer(1, 6);
    const Index r = rng.integer(0, std::min(m, n));
    const Matrix z = rng.matrix(m, n);
    const ProjectionCheck c = projection_cross_check(z, r);
    const double err = c.tie ? c.objective_gap / std::max(1.0, z.norm()) : c.discrepancy;
    record(res, err <= res.tolerance, err,
           "case " + std::to_string(t) + (c.tie ? " (tie)" : "") + ": discrepancy " + fmt(err));
  }
  // Tie case: Z = I, every rank-r coordinate projection is optimal.
  const Matrix eye = Matrix::Identity(3, 3);
  const ProjectionCheck c = projection_cross_check(eye, 2);
  record(res, c.tie && c.objective_gap <= res.tolerance, c.objective_gap, "identity tie not flagged");
  return res;
}

SuiteResult suite_eckart_young(std::uint64_t seed, int cases) {
  SuiteResult res{"eckart-young", seed, 0, 0, 0.0, 1e-9, {}};
  Rng rng(seed);
  const int competitors = 1000;
  for (int t = 0; t < cases; ++t) {
    const Index m = rng.integer(1, 6);
    const Index n = rng.integer(1, 6);
    const Index r = rng.integer(0, std::min(m, n));
    const Matrix z = rng.matrix(m, n);
    const double best = (z - project_low_rank(z, r).matrix).norm();
    // Competitors: random rank-r products and perturbed factors of the
    // eigen-route projection.
    Matrix left;
    Matrix right;
    if (r > 0) {
      const auto [vals, vecs] = sorted_eig(z.transpose() * z);
      right = vecs.leftCols(r);
      left = z * right;
    }
    double worst_violation = 0.0;
    for (int c = 0; c < competitors && r > 0; ++c) {
      Matrix y;
      if (c % 2 == 0) {
        y = rng.matrix(m, r) * rng.matrix(n, r).transpose();
      } else {
        const double eps = std::pow(10.0, -rng.uniform(1.0, 6.0));
        y = (left + eps * rng.matrix(m, left.cols())) *
            (right + eps * rng.matrix(n, right.cols())).transpose();
      }
      worst_violation = std::max(worst_violation, best - (z - y).norm());
    }
    if (r == 0) worst_violation = std::abs(best - z.norm());
    record(res, worst_violation <= res.tolerance, std::max(0.0, worst_violation),
           "case " + std::to_string(t) + ": competitor beats projection by " + fmt(worst_violation));
  }
  return res;
}

SuiteResult suite_polarity(std::uint64_t seed, int cases) {
  SuiteResult res{"polarity", seed, 0, 0, 0.0, 1e-8, {}};
  Rng rng(seed);
  for (int t = 0; t < cases; ++t) {
    const Index m = rng.integer(2, 6);
    const Index n = rng.integer(2, 6);
    const Index k = std::min(m, n);
    const Index r = rng.integer(1, k - 1);
    const Index s = rng.coin() ? r : rng.integer(0, r);
    const Factored fx = random_factored(rng, m, n, s);
    const Matrix x = fx.assemble();
    const ConeQuery q(orient_svd(x), r);
    bool ok = true;
    double err = 0.0;
    std::string why;

    // Tangent element: free blocks except the lower-right one, which gets
    // rank <= r - s.
    Matrix blk = rng.matrix(m, n);
    const Index pad = r - s;
    blk.bottomRightCorner(m - s, n - s) =
        rng.matrix(m - s, pad) * rng.matrix(n - s, pad).transpose();
    const Matrix h = fx.u * blk * fx.v.transpose();
    if (!in_tangent_bouligand_Mr(q, h)) {
      ok = false;
      why += " tangent element rejected;";
    }

    // Frechet normal element: lower-right block when s = r, else O.
    Matrix wblk = Matrix::Zero(m, n);
    if (s == r) wblk.bottomRightCorner(m - s, n - s) = rng.matrix(m - s, n - s);
    const Matrix w = fx.u * wblk * fx.v.transpose();
    if (!in_normal_frechet_Mr(q, w)) {
      ok = false;
      why += " normal element rejected;";
    }
    const double inner = w.cwiseProduct(h).sum() / std::max(1.0, w.norm() * h.norm());
    err = std::max(err, inner);
    if (inner > res.tolerance) {
      ok = false;
      why += " positive inner product " + fmt(inner) + ";";
    }

    // A matrix outside the normal cone and a tangent witness against it.
    Matrix bad = wblk;
    bad(0, 0) += 1.0;
    if (s < r) bad.bottomRightCorner(m - s, n - s) += rng.matrix(m - s, n - s);
    const Matrix wbad = fx.u * bad * fx.v.transpose();
    Matrix witness_blk = bad;
    witness_blk.bottomRightCorner(m - s, n - s).setZero();
    if (s < r) {
      // Largest r - s singular directions of the lower-right block of bad.
      Eigen::JacobiSVD<Matrix> svd(bad.bottomRightCorner(m - s, n - s),
                                   Eigen::ComputeFullU | Eigen::ComputeFullV);
      witness_blk.bottomRightCorner(m - s, n - s) =
          svd.matrixU().leftCols(pad) * svd.singularValues().head(pad).asDiagonal() *
          svd.matrixV().leftCols(pad).transpose();
    }
    const Matrix witness = fx.u * witness_blk * fx.v.transpose();
    if (in_normal_frechet_Mr(q, wbad)) {
      ok = false;
      why += " non-normal element accepted;";
    }
    if (!in_tangent_bouligand_Mr(q, witness) || wbad.cwiseProduct(witness).sum() <= 0.0) {
      ok = false;
      why += " witness failed;";
    }

    // Mordukhovich normal cone: rank <= k - r blocks belong, rank k - r + 1
    // blocks do not.
    const Index cap = k - r;
    Matrix mblk = Matrix::Zero(m, n);
    mblk.bottomRightCorner(m - s, n - s) =
        rng.matrix(m - s, cap) * rng.matrix(n - s, cap).transpose();
    if (!in_normal_mordukhovich_Mr(q, fx.u * mblk * fx.v.transpose())) {
      ok = false;
      why += " Mordukhovich element rejected;";
    }
    if (cap + 1 <= std::min(m - s, n - s)) {
      mblk.bottomRightCorner(m - s, n - s) =
          rng.matrix(m - s, cap + 1) * rng.matrix(n - s, cap + 1).transpose();
      if (in_normal_mordukhovich_Mr(q, fx.u * mblk * fx.v.transpose())) {
        ok = false;
        why += " over-rank Mordukhovich element accepted;";
      }
    }
    record(res, ok, err, "case " + std::to_string(t) + ":" + why);
  }
  return res;
}

SuiteResult suite_implication_chain(std::uint64_t seed, int cases) {
  SuiteResult res{"implication-chain", seed, 0, 0, 0.0, 0.0, {}};
  Rng rng(seed);
  int alpha_count = 0;
  int f_count = 0;
  int m_count = 0;
  int routes_compared = 0;
  for (int t = 0; t < cases; ++t) {
    const Index m = rng.integer(2, 5);
    const Index n = rng.integer(2, 5);
    const Index k = std::min(m, n);
    const Index r = rng.integer(1, k - 1);
    const Index s = rng.integer(0, 4) == 0 ? rng.integer(0, r - 1) : r;
    const Factored fx = random_factored(rng, m, n, s);
    const Matrix x = fx.assemble();
    const Index l = rng.integer(0, 3);
    AffineMap a(m, n);
    for (Index i = 0; i < l; ++i) {
      const Matrix ai = rng.matrix(m, n);
      a.add(ai, ai.cwiseProduct(x).sum());
    }
    Vector y(l);
    for (Index i = 0; i < l; ++i) y(i) = rng.gauss();

    // Planted gradient of the Lagrangian.
    Matrix gblk = Matrix::Zero(m, n);
    const int type = static_cast<int>(rng.integer(0, 4));
    const double sigma_s = s > 0 ? fx.sigma(s - 1) : 1.0;
    switch (type) {
      case 0:  // normal, spectral norm well below sigma_r / alpha
        if (s == r) {
          gblk.bottomRightCorner(m - s, n - s) = rng.matrix(m - s, n - s);
          gblk *= 0.2 * sigma_s / std::max(1e-12, spectral_norm(gblk));
        }
        break;
      case 1:  // normal, spectral norm well above sigma_r / alpha
        gblk.bottomRightCorner(m - s, n - s) = rng.matrix(m - s, n - s);
        gblk *= 5.0 * sigma_s / spectral_norm(gblk);
        break;
      case 2:  // tangent component present
        gblk = rng.matrix(m, n);
        break;
      case 3: {  // low-rank normal block (Mordukhovich candidate)
        const Index cap = k - r;
        gblk.bottomRightCorner(m - s, n - s) =
            rng.matrix(m - s, cap) * rng.matrix(n - s, cap).transpose();
        break;
      }
      default:
        break;
    }
    const Matrix grad_l = fx.u * gblk * fx.v.transpose();
    Matrix ay = Matrix::Zero(m, n);
    for (Index i = 0; i < l; ++i) ay += y(i) * a.matrix(i);
    const Matrix target = x + ay - grad_l;  // grad f = X - H, grad L = grad f + A* y
    ProblemSpec prob{Objective::frobenius_distance(target), std::move(a), r};
    const double alpha = 1.0;
    const StationarityReport rep = classify_first_order(prob, x, alpha);
    const bool is_alpha = rep.is_alpha.value_or(false);
    alpha_count += is_alpha;
    f_count += rep.is_F;
    m_count += rep.is_M;
    bool ok = rep.feasible && (!is_alpha || rep.is_F) && (!rep.is_F || rep.is_M);

    // The two alpha routes agree away from projection ties.
    const Matrix z = x - alpha * rep.grad_lagrangian;
    if (!project_low_rank(z, r).tie) {
      ++routes_compared;
      const bool proj = check_alpha_stationary(prob, x, rep.y, alpha, AlphaRoute::projection);
      if (proj != is_alpha) ok = false;
    }
    record(res, ok, 0.0,
           "case " + std::to_string(t) + " (type " + std::to_string(type) + ", s=" + std::to_string(s) +
               ", r=" + std::to_string(r) + "): alpha=" + std::to_string(is_alpha) +
               " F=" + std::to_string(rep.is_F) + " M=" + std::to_string(rep.is_M));
  }
  res.messages.insert(res.messages.begin(),
                      "verdict counts: alpha " + std::to_string(alpha_count) + ", F " +
                          std::to_string(f_count) + ", M " + std::to_string(m_count) +
                          "; alpha routes compared on " + std::to_string(routes_compared));
  return res;
}

SuiteResult suite_diag_embed(std::uint64_t seed, int cases) {
  SuiteResult res{"diag-embed", seed, 0, 0, 0.0, 0.0, {}};
  Rng rng(seed);
  // Empty constraint list.
  {
    SparseInstance inst{Vector::Unit(5, 1), {}, 2};
    record(res, diag_embedding_equivalence(inst).equivalent(), 0.0, "l = 0 case");
  }
  for (int t = 0; t < cases; ++t) {
    const Index n = rng.integer(3, 7);
    const Index r = rng.integer(1, n - 1);
    const Index s = rng.integer(1, r);
    const Index l = rng.integer(1, 3);
    std::vector<Index> perm(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (Index i = n - 1; i > 0; --i) std::swap(perm[static_cast<std::size_t>(i)],
                                                perm[static_cast<std::size_t>(rng.integer(0, i))]);
    Vector x = Vector::Zero(n);
    for (Index i = 0; i < s; ++i) {
      x(perm[static_cast<std::size_t>(i)]) = (rng.coin() ? 1.0 : -1.0) * rng.uniform(0.5, 2.0);
    }
    SparseInstance inst{x, {}, r};
    const int mode = static_cast<int>(rng.integer(0, 2));
    for (Index i = 0; i < l; ++i) {
      Vector a(n);
      for (Index j = 0; j < n; ++j) a(j) = rng.gauss();
      if (mode == 1 && i == 0) {
        // Supported off the active pattern.
        for (Index j = 0; j < s; ++j) a(perm[static_cast<std::size_t>(j)]) = 0.0;
      }
      if (mode == 2 && i > 0) a = inst.a[0] * rng.gauss() + Vector::Zero(n);
      inst.a.push_back(a);
    }
    const DiagEmbeddingCheck c = diag_embedding_equivalence(inst);
    record(res, c.equivalent(), 0.0,
           "case " + std::to_string(t) + ": LICQ=" + std::to_string(c.restricted_licq) +
               " A1=" + std::to_string(c.assumption1) + " A2=" + std::to_string(c.assumption2));
  }
  return res;
}

SuiteResult suite_hankel_rank1(std::uint64_t seed, int cases) {
  SuiteResult res{"hankel-rank1", seed, 0, 0, 0.0, 1e-8, {}};
  Rng rng(seed);

  Matrix h(3, 3);
  h << 112.0, 7.5, 0.0, 7.5, 0.0, 0.0, 0.0, 0.0, 1e-6;
  Matrix xbar = h;
  xbar(2, 2) = 0.0;
  const Rank1HankelMin paper = rank1_hankel_min(h);
  const double fbar = 0.5 * (h - xbar).squaredNorm();
  record(res, fbar < paper.value, 0.0,
         "f(Xbar) = " + fmt(fbar) + " is not below the rank-1 minimum " + fmt(paper.value));
  res.messages.push_back("rank-1 minimum " + fmt(paper.value) + " (" + paper.family +
                         ", q = " + fmt(paper.q) + ", c = " + fmt(paper.c) + "); f(112 e1e1^T) = " +
                         fmt(0.5 * (h - 112.0 * Matrix(Vector::Unit(3, 0) * Vector::Unit(3, 0).transpose())).squaredNorm()));

  const Matrix ones = Matrix::Ones(3, 3);
  const Rank1HankelMin all_ones = rank1_hankel_min(ones);
  record(res, all_ones.value <= res.tolerance, all_ones.value, "H = ee^T not recovered");
  const Matrix e33 = Vector::Unit(3, 2) * Vector::Unit(3, 2).transpose();
  const Rank1HankelMin corner = rank1_hankel_min(e33);
  record(res, corner.value <= res.tolerance && corner.family == "t*e3e3^T", corner.value,
         "H = e3e3^T not recovered by the degenerate family");

  // Planted rank-1 Hankel targets are recovered with value ~0.
  for (int t = 0; t < cases; ++t) {
    const double q = rng.uniform(-3.0, 3.0);
    const double c = rng.uniform(-5.0, 5.0);
    const Vector u = (Vector(3) << 1.0, q, q * q).finished();
    const Matrix target = c * u * u.transpose();
    const Rank1HankelMin found = rank1_hankel_min(target);
    const double err = found.value / std::max(1.0, target.squaredNorm());
    record(res, err <= 1e-8, err, "planted q = " + fmt(q) + " not recovered, value " + fmt(found.value));
  }
  return res;
}

using SuiteFn = SuiteResult (*)(std::uint64_t, int);

const std::map<std::string, std::pair<SuiteFn, int>>& registry() {
  static const std::map<std::string, std::pair<SuiteFn, int>> suites = {
      {"fd", {&suite_fd, 100}},
      {"projection", {&suite_projection, 200}},
      {"eckart-young", {&suite_eckart_young, 200}},
      {"polarity", {&suite_polarity, 100}},
      {"implication-chain", {&suite_implication_chain, 200}},
      {"diag-embed", {&suite_diag_embed, 100}},
      {"hankel-rank1", {&suite_hankel_rank1, 20}},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : registry()) names.push_back(name);
  return names;
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed, int cases) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InputError("unknown oracle suite '" + name + "'");
  return it->second.first(seed, cases > 0 ? cases : it->second.second);
}

}  // namespace lrmoa::oracle
