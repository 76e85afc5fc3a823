#pragma once

#include <cstddef>
#include <optional>

#include "bcs/linalg.hpp"
#include "bcs/simplex.hpp"
#include "bcs/sl0.hpp"
#include "bcs/solve_result.hpp"

namespace bcs {

// LP-backed l1 baselines. Each builds a LinearProgram, runs solve_lp and maps
// the optimum back to z. Infeasible or unbounded programs are reported through
// SolveResult::status, with an empty solution.

// min ||z||_1 s.t. Phi z = y, with z = u - v, u, v >= 0.
SolveResult solve_bp(const DenseMatrix& phi, const DenseVector& y,
                     const SimplexOptions& options = {});

// min sum z s.t. Phi z = y, 0 <= z <= 1.
SolveResult solve_boxed_bp(const DenseMatrix& phi, const DenseVector& y,
                           const SimplexOptions& options = {});

inline constexpr double kDefaultSnLambda = 100.0;

// min ||z||_1 + lambda ||z - 1/2||_inf s.t. Phi z = y.
SolveResult solve_sn(const DenseMatrix& phi, const DenseVector& y, double lambda,
                     const SimplexOptions& options = {});

// min (1-p)||z||_1 + p||z - 1||_1 s.t. Phi z = y.
SolveResult solve_sav(const DenseMatrix& phi, const DenseVector& y, const BinaryPrior& prior,
                      const SimplexOptions& options = {});

// Per-entry SAV penalty: -t + p below 0, (1 - 2p) t + p on [0, 1), t - p from 1 on.
double sav_scalar_f(double t, const BinaryPrior& prior);

// Orthogonal matching pursuit. Greedy atom choice by max |Phi_j^T r| (lowest
// index on ties), least-squares refit on the active set, stop once
// ||r||_2 < resid_tol or max_sparsity atoms are active. Throws SingularMatrix
// if a refit is rank deficient.
SolveResult solve_omp(const DenseMatrix& phi, const DenseVector& y, Index max_sparsity,
                      double resid_tol = 1e-6);

struct BruteForceResult {
  // Minimizer of (1-p)||z||_0 + p||z - 1||_0 over feasible binary z; ties go
  // to the lexicographically smallest vector. Empty when nothing is feasible.
  std::optional<DenseVector> solution;
  // Number of z in {0,1}^N with ||Phi z - y||_2 <= tol.
  std::size_t feasible_count = 0;

  bool unique() const { return feasible_count == 1; }
};

inline constexpr Index kBruteForceMaxN = 24;

// Exhaustive search over {0,1}^N (Gray-code order, one column update per
// candidate). Throws InvalidParameter when N > kBruteForceMaxN.
BruteForceResult brute_force_boxed_l0(const DenseMatrix& phi, const DenseVector& y,
                                      const BinaryPrior& prior, double tol);

}  // namespace bcs
