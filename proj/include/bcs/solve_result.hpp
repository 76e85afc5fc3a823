#pragma once

#include <chrono>
#include <limits>
#include <string_view>

#include "bcs/linalg.hpp"

namespace bcs {

enum class SolveStatus { kOk, kInfeasible, kUnbounded };

std::string_view to_string(SolveStatus status);

// Output of every reconstruction solver.
struct SolveResult {
  DenseVector solution;
  // Iterate before the final rounding step; equal to `solution` for solvers
  // that do not round.
  DenseVector pre_round_solution;
  int iterations_used = 0;
  std::chrono::duration<double> wall_time{0.0};
  SolveStatus status = SolveStatus::kOk;
  // Optimal objective for the LP-based solvers, NaN otherwise.
  double objective = std::numeric_limits<double>::quiet_NaN();

  bool ok() const { return status == SolveStatus::kOk; }
};

}  // namespace bcs
