#pragma once

#include <limits>
#include <string_view>

#include "bcs/linalg.hpp"

namespace bcs {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// min costs^T x  s.t.  eq_matrix x = eq_rhs,  lower <= x <= upper.
// Bounds may be -inf / +inf.
struct LinearProgram {
  DenseVector costs;
  DenseMatrix eq_matrix;
  DenseVector eq_rhs;
  DenseVector lower;
  DenseVector upper;

  Index num_vars() const { return costs.size(); }
  Index num_rows() const { return eq_matrix.rows(); }
  // Throws DimensionMismatch / InvalidParameter for inconsistent input.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

std::string_view to_string(LpStatus status);

struct LpSolution {
  DenseVector point;
  double objective = std::numeric_limits<double>::quiet_NaN();
  LpStatus status = LpStatus::kInfeasible;
  int pivots = 0;
};

enum class PricingRule {
  kBland,    // smallest eligible index; never cycles
  kDantzig,  // most negative reduced cost, Bland after a run of degenerate pivots
};

struct SimplexOptions {
  double pivot_tolerance = 1e-10;
  double feasibility_tolerance = 1e-9;
  double optimality_tolerance = 1e-9;
  PricingRule pricing = PricingRule::kDantzig;
};

// Two-phase primal simplex on a dense tableau with bounded variables:
// nonbasic variables rest at either bound and bound flips replace pivots when
// the entering variable reaches its own opposite bound first. The returned
// point has its basic part recomputed from the original data with an LU
// solve of the final basis.
LpSolution solve_lp(const LinearProgram& lp, const SimplexOptions& options = {});

}  // namespace bcs
