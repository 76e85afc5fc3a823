#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bcs/convex.hpp"
#include "bcs/sl0.hpp"

namespace bcs {

enum class SolverId { kBp, kBoxedBp, kSn, kSav, kSl0, kBoxedSl0, kOmp, kBssl0 };

// Command-line / CSV name: "bp", "boxed-bp", "sn", "sav", "sl0", "boxed-sl0",
// "omp", "bssl0".
std::string_view solver_name(SolverId id);
// Throws InvalidParameter for unknown names.
SolverId parse_solver(std::string_view name);
// Parses a comma separated list; rejects duplicates.
std::vector<SolverId> parse_solver_list(std::string_view list);
std::vector<SolverId> all_solvers();
// Sorted by solver_name, the order used in reports.
std::vector<SolverId> sorted_by_name(std::vector<SolverId> ids);

// Parameters shared by all solvers of one run.
struct SolverSettings {
  Bssl0Params bssl0 = Bssl0Params::random_signal_defaults();
  // Schedule of SL0 and Boxed SL0.
  Bssl0Params sl0 = Bssl0Params::random_signal_defaults();
  double sn_lambda = kDefaultSnLambda;
  // OMP atom budget; 0 means m (the number of measurements).
  Index omp_max_sparsity = 0;
  double omp_resid_tol = 1e-6;
  SimplexOptions simplex;
};

// Dispatches to the named solver. `prior` feeds SAV and BSSL0.
SolveResult run_solver(SolverId id, const DenseMatrix& phi, const DenseVector& y,
                       const BinaryPrior& prior, const SolverSettings& settings);

}  // namespace bcs
