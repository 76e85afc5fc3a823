#include "bcs/sl0.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "bcs/errors.hpp"

namespace bcs {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOk: return "ok";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

BinaryPrior::BinaryPrior(double p) : p_(p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParameter("prior p must lie in [0, 1], got " + std::to_string(p));
}

void Bssl0Params::validate() const {
  if (!(sigma_min > 0.0)) throw InvalidParameter("sigma_min must be positive");
  if (!(d > 0.0 && d < 1.0)) throw InvalidParameter("d must lie in (0, 1)");
  if (!(mu > 0.0)) throw InvalidParameter("mu must be positive");
  if (inner_iters < 1) throw InvalidParameter("inner iteration count L must be >= 1");
  if (iters_override && *iters_override < 1)
    throw InvalidParameter("outer iteration count must be >= 1");
}

int outer_iteration_count(double sigma0, const Bssl0Params& params) {
  if (params.iters_override) return *params.iters_override;
  if (sigma0 <= params.sigma_min) return 1;
  return static_cast<int>(std::ceil(std::log(params.sigma_min / sigma0) / std::log(params.d)));
}

double sl0_cost(const DenseVector& z, double sigma) {
  const double two_s2 = 2.0 * sigma * sigma;
  double total = 0.0;
  for (Index i = 0; i < z.size(); ++i) total += 1.0 - std::exp(-z(i) * z(i) / two_s2);
  return total;
}

double bssl0_cost(const DenseVector& z, double sigma, double k, const BinaryPrior& prior) {
  const double p = prior.p();
  const double q = 1.0 - p;
  const double two_s2 = 2.0 * sigma * sigma;
  double total = 0.0;
  for (Index i = 0; i < z.size(); ++i) {
    const double t = z(i);
    const double near_zero = q * std::exp(-(t * t) / two_s2);
    const double near_one = p * std::exp(-((t - 1.0) * (t - 1.0)) / two_s2);
    // Summing the two kernels before subtracting keeps the value invariant
    // under (z, p) -> (1 - z, 1 - p).
    total += box_weight(t, k) * (1.0 - (near_zero + near_one));
  }
  return total;
}

DenseVector bssl0_grad(const DenseVector& z, double sigma, double k, const BinaryPrior& prior) {
  const double p = prior.p();
  const double q = 1.0 - p;
  const double s2 = sigma * sigma;
  const double two_s2 = 2.0 * s2;
  DenseVector g(z.size());
  for (Index i = 0; i < z.size(); ++i) {
    const double t = z(i);
    const double u = t - 1.0;
    g(i) = box_weight(t, k) / s2 *
           (q * t * std::exp(-(t * t) / two_s2) + p * u * std::exp(-(u * u) / two_s2));
  }
  return g;
}

DenseVector round_to_binary(const DenseVector& z) {
  return z.unaryExpr([](double v) { return v >= 0.5 ? 1.0 : 0.0; });
}

namespace {

constexpr double kDivergenceBound = 1e6;

// Shared skeleton of the three smoothed-l0 solvers: minimum-norm start,
// sigma0 = 2 max|x|, `outer` rounds of `inner_iters` (step, project) pairs
// with sigma shrinking by d after each round.
//
// `step(x, sigma, round, rounds)` performs the in-place descent step of one
// inner iteration; `rounds` is the total outer iteration count.
template <typename Step>
SolveResult run_graduated(const char* name, const DenseMatrix& phi, const DenseVector& y,
                          const Bssl0Params& params, Step&& step) {
  params.validate();
  if (y.size() != phi.rows())
    throw DimensionMismatch(std::string(name) + ": y length " + std::to_string(y.size()) +
                            " != rows " + std::to_string(phi.rows()));
  const auto start = std::chrono::steady_clock::now();

  const GramFactorization fac(phi);
  DenseVector x = min_norm_solution(fac, y);
  const double sigma0 = 2.0 * x.cwiseAbs().maxCoeff();
  const int outer = outer_iteration_count(sigma0, params);
  // A start at or below sigma_min (including x = 0) runs its single round at
  // sigma_min so that the kernels stay well defined.
  double sigma = sigma0 <= params.sigma_min ? params.sigma_min : sigma0;

  for (int round = 0; round < outer; ++round) {
    for (int l = 0; l < params.inner_iters; ++l) {
      step(x, sigma, round, outer);
      affine_project_inplace(fac, y, x);
      if (!x.allFinite() || x.cwiseAbs().maxCoeff() > kDivergenceBound)
        throw DivergenceError(name, round + 1);
    }
    sigma *= params.d;
  }

  SolveResult result;
  result.pre_round_solution = x;
  result.solution = std::move(x);
  result.iterations_used = outer;
  result.wall_time = std::chrono::steady_clock::now() - start;
  return result;
}

void sl0_step(DenseVector& x, double sigma, double mu) {
  const double two_s2 = 2.0 * sigma * sigma;
  for (Index i = 0; i < x.size(); ++i) {
    const double t = x(i);
    x(i) = t - mu * t * std::exp(-(t * t) / two_s2);
  }
}

}  // namespace

SolveResult solve_bssl0(const DenseMatrix& phi, const DenseVector& y, const BinaryPrior& prior,
                        const Bssl0Params& params) {
  const double p = prior.p();
  const double q = 1.0 - p;
  const double n = static_cast<double>(phi.cols());

  auto step = [&](DenseVector& x, double sigma, int round, int rounds) {
    // k = 1 + Np/Iters in the first round, growing by Np/Iters per round.
    const double k = 1.0 + n * p / static_cast<double>(rounds) * static_cast<double>(round + 1);
    const double two_s2 = 2.0 * sigma * sigma;
    // sigma^2 * mu * grad; the 1/sigma^2 inside the gradient cancels.
    for (Index i = 0; i < x.size(); ++i) {
      const double t = x(i);
      const double u = t - 1.0;
      const double g = q * t * std::exp(-(t * t) / two_s2) + p * u * std::exp(-(u * u) / two_s2);
      double next = t - params.mu * box_weight(t, k) * g;
      if (params.boundary_guard) {
        if (t < 0.0) next = std::min(next, 0.0);
        else if (t > 1.0) next = std::max(next, 1.0);
      }
      x(i) = next;
    }
  };
  SolveResult result = run_graduated("bssl0", phi, y, params, step);
  result.solution = round_to_binary(result.pre_round_solution);
  return result;
}

SolveResult solve_sl0(const DenseMatrix& phi, const DenseVector& y, const Bssl0Params& params) {
  return run_graduated("sl0", phi, y, params,
                       [&](DenseVector& x, double sigma, int, int) { sl0_step(x, sigma, params.mu); });
}

SolveResult solve_boxed_sl0(const DenseMatrix& phi, const DenseVector& y,
                            const Bssl0Params& params) {
  return run_graduated("boxed-sl0", phi, y, params, [&](DenseVector& x, double sigma, int, int) {
    sl0_step(x, sigma, params.mu);
    x = x.cwiseMax(0.0).cwiseMin(1.0);
  });
}

}  // namespace bcs
