#include "bcs/convex.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/QR>

#include "bcs/errors.hpp"

namespace bcs {
namespace {

using Clock = std::chrono::steady_clock;

void check_system(const char* name, const DenseMatrix& phi, const DenseVector& y) {
  if (y.size() != phi.rows())
    throw DimensionMismatch(std::string(name) + ": y length " + std::to_string(y.size()) +
                            " != rows " + std::to_string(phi.rows()));
}

// Runs the LP and maps its point through `extract`. `offset` is a constant
// added to the LP objective to report the original objective.
template <typename Extract>
SolveResult finish(const LinearProgram& lp, const SimplexOptions& options, Clock::time_point start,
                   double offset, Extract&& extract) {
  const LpSolution sol = solve_lp(lp, options);
  SolveResult result;
  result.iterations_used = sol.pivots;
  if (sol.status == LpStatus::kOptimal) {
    result.solution = extract(sol.point);
    result.pre_round_solution = result.solution;
    result.objective = sol.objective + offset;
  } else {
    result.status =
        sol.status == LpStatus::kInfeasible ? SolveStatus::kInfeasible : SolveStatus::kUnbounded;
  }
  result.wall_time = Clock::now() - start;
  return result;
}

}  // namespace

SolveResult solve_bp(const DenseMatrix& phi, const DenseVector& y, const SimplexOptions& options) {
  check_system("bp", phi, y);
  const auto start = Clock::now();
  const Index m = phi.rows();
  const Index n = phi.cols();

  // Variables [u, v], z = u - v.
  LinearProgram lp;
  lp.costs = DenseVector::Ones(2 * n);
  lp.eq_matrix.resize(m, 2 * n);
  lp.eq_matrix << phi, -phi;
  lp.eq_rhs = y;
  lp.lower = DenseVector::Zero(2 * n);
  lp.upper = DenseVector::Constant(2 * n, kInfinity);
  return finish(lp, options, start, 0.0,
                [n](const DenseVector& w) -> DenseVector { return w.head(n) - w.tail(n); });
}

SolveResult solve_boxed_bp(const DenseMatrix& phi, const DenseVector& y,
                           const SimplexOptions& options) {
  check_system("boxed-bp", phi, y);
  const auto start = Clock::now();
  const Index n = phi.cols();

  LinearProgram lp;
  lp.costs = DenseVector::Ones(n);
  lp.eq_matrix = phi;
  lp.eq_rhs = y;
  lp.lower = DenseVector::Zero(n);
  lp.upper = DenseVector::Ones(n);
  return finish(lp, options, start, 0.0, [](const DenseVector& w) -> DenseVector { return w; });
}

SolveResult solve_sn(const DenseMatrix& phi, const DenseVector& y, double lambda,
                     const SimplexOptions& options) {
  check_system("sn", phi, y);
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw InvalidParameter("sn: lambda must be finite and non-negative");
  const auto start = Clock::now();
  const Index m = phi.rows();
  const Index n = phi.cols();

  // Variables [u (n), v (n), t, s_hi (n), s_lo (n)], z = u - v:
  //   Phi (u - v)            = y
  //   (u - v) - t + s_hi     = 1/2     i.e.  z_i - 1/2 <= t
  //  -(u - v) - t + s_lo     = -1/2    i.e.  1/2 - z_i <= t
  const Index vars = 4 * n + 1;
  const Index t_col = 2 * n;
  LinearProgram lp;
  lp.costs = DenseVector::Zero(vars);
  lp.costs.head(2 * n).setOnes();
  lp.costs(t_col) = lambda;
  lp.eq_matrix = DenseMatrix::Zero(m + 2 * n, vars);
  lp.eq_matrix.topLeftCorner(m, n) = phi;
  lp.eq_matrix.block(0, n, m, n) = -phi;
  lp.eq_rhs.resize(m + 2 * n);
  lp.eq_rhs.head(m) = y;
  for (Index i = 0; i < n; ++i) {
    const Index hi = m + i;
    const Index lo = m + n + i;
    lp.eq_matrix(hi, i) = 1.0;
    lp.eq_matrix(hi, n + i) = -1.0;
    lp.eq_matrix(hi, t_col) = -1.0;
    lp.eq_matrix(hi, t_col + 1 + i) = 1.0;
    lp.eq_rhs(hi) = 0.5;
    lp.eq_matrix(lo, i) = -1.0;
    lp.eq_matrix(lo, n + i) = 1.0;
    lp.eq_matrix(lo, t_col) = -1.0;
    lp.eq_matrix(lo, t_col + 1 + n + i) = 1.0;
    lp.eq_rhs(lo) = -0.5;
  }
  lp.lower = DenseVector::Zero(vars);
  lp.upper = DenseVector::Constant(vars, kInfinity);
  return finish(lp, options, start, 0.0,
                [n](const DenseVector& w) -> DenseVector { return w.head(n) - w.segment(n, n); });
}

SolveResult solve_sav(const DenseMatrix& phi, const DenseVector& y, const BinaryPrior& prior,
                      const SimplexOptions& options) {
  check_system("sav", phi, y);
  const auto start = Clock::now();
  const Index m = phi.rows();
  const Index n = phi.cols();
  const double p = prior.p();

  // f is convex piecewise linear with breakpoints 0 and 1, so each entry
  // splits as z = w - a + b with w in [0, 1], a, b >= 0 and
  //   f(z) = p + (1 - 2p) w + a + b
  // at the optimum. Variables [w (n), a (n), b (n)].
  LinearProgram lp;
  lp.costs.resize(3 * n);
  lp.costs.head(n).setConstant(1.0 - 2.0 * p);
  lp.costs.tail(2 * n).setOnes();
  lp.eq_matrix.resize(m, 3 * n);
  lp.eq_matrix << phi, -phi, phi;
  lp.eq_rhs = y;
  lp.lower = DenseVector::Zero(3 * n);
  lp.upper = DenseVector::Constant(3 * n, kInfinity);
  lp.upper.head(n).setOnes();
  return finish(lp, options, start, p * static_cast<double>(n),
                [n](const DenseVector& w) -> DenseVector {
                  return w.head(n) - w.segment(n, n) + w.tail(n);
                });
}

double sav_scalar_f(double t, const BinaryPrior& prior) {
  const double p = prior.p();
  if (t < 0.0) return -t + p;
  if (t < 1.0) return (1.0 - 2.0 * p) * t + p;
  return t - p;
}

SolveResult solve_omp(const DenseMatrix& phi, const DenseVector& y, Index max_sparsity,
                      double resid_tol) {
  check_system("omp", phi, y);
  const auto start = Clock::now();
  const Index n = phi.cols();
  const Index budget = std::min(max_sparsity, n);

  std::vector<Index> active;
  std::vector<char> in_active(static_cast<std::size_t>(n), 0);
  DenseVector coef;
  DenseVector residual = y;
  const DenseVector col_norms = phi.colwise().norm().transpose();
  while (residual.norm() >= resid_tol && static_cast<Index>(active.size()) < budget) {
    const DenseVector corr = phi.transpose() * residual;
    Index pick = -1;
    double best = 0.0;
    for (Index j = 0; j < n; ++j) {
      if (in_active[static_cast<std::size_t>(j)] || col_norms(j) == 0.0) continue;
      const double c = std::abs(corr(j)) / col_norms(j);
      if (c > best) {
        best = c;
        pick = j;
      }
    }
    if (pick < 0) break;  // residual orthogonal to every remaining atom
    active.push_back(pick);
    in_active[static_cast<std::size_t>(pick)] = 1;

    DenseMatrix sub(phi.rows(), static_cast<Index>(active.size()));
    for (std::size_t k = 0; k < active.size(); ++k) sub.col(static_cast<Index>(k)) = phi.col(active[k]);
    const Eigen::ColPivHouseholderQR<DenseMatrix> qr(sub);
    if (qr.rank() < sub.cols())
      throw SingularMatrix("omp: least-squares refit on " + std::to_string(sub.cols()) +
                           " atoms is rank deficient");
    coef = qr.solve(y);
    residual = y - sub * coef;
  }

  SolveResult result;
  result.solution = DenseVector::Zero(n);
  for (std::size_t k = 0; k < active.size(); ++k) result.solution(active[k]) = coef(static_cast<Index>(k));
  result.pre_round_solution = result.solution;
  result.iterations_used = static_cast<int>(active.size());
  result.wall_time = Clock::now() - start;
  return result;
}

BruteForceResult brute_force_boxed_l0(const DenseMatrix& phi, const DenseVector& y,
                                      const BinaryPrior& prior, double tol) {
  check_system("brute-force", phi, y);
  const Index n = phi.cols();
  if (n > kBruteForceMaxN)
    throw InvalidParameter("brute force limited to N <= " + std::to_string(kBruteForceMaxN) +
                           ", got " + std::to_string(n));
  const double p = prior.p();
  auto cost = [&](std::uint32_t mask) {
    const int ones = std::popcount(mask);
    return (1.0 - p) * ones + p * static_cast<double>(n - ones);
  };
  // True when a is lexicographically smaller than b as (z_1, ..., z_N).
  auto lex_less = [](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t diff = a ^ b;
    return diff != 0 && (a & (diff & -diff)) == 0;
  };
  auto exact_residual = [&](std::uint32_t mask) {
    DenseVector r = -y;
    for (Index j = 0; j < n; ++j)
      if (mask & (1u << j)) r += phi.col(j);
    return r;
  };

  BruteForceResult out;
  std::uint32_t best_mask = 0;
  bool have_best = false;
  // Screening slack for the running residual; candidates are re-checked exactly.
  const double slack = 1e-9 * (1.0 + phi.cwiseAbs().sum());
  DenseVector residual = -y;
  std::uint32_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t g = 0; g < count; ++g) {
    if (g > 0) {
      const int bit = std::countr_zero(g);
      gray ^= 1u << bit;
      if (gray & (1u << bit)) residual += phi.col(bit);
      else residual -= phi.col(bit);
      if ((g & 0xffff) == 0) residual = exact_residual(gray);
    }
    if (residual.norm() > tol + slack) continue;
    if (exact_residual(gray).norm() > tol) continue;
    ++out.feasible_count;
    if (!have_best || cost(gray) < cost(best_mask) ||
        (cost(gray) == cost(best_mask) && lex_less(gray, best_mask))) {
      best_mask = gray;
      have_best = true;
    }
  }
  if (have_best) {
    DenseVector z(n);
    for (Index j = 0; j < n; ++j) z(j) = (best_mask & (1u << j)) ? 1.0 : 0.0;
    out.solution = std::move(z);
  }
  return out;
}

}  // namespace bcs
