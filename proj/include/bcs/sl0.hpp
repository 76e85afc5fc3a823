#pragma once

#include <optional>

#include "bcs/linalg.hpp"
#include "bcs/solve_result.hpp"

namespace bcs {

// Bernoulli parameter p = P(x_j = 1) of a binary signal model.
class BinaryPrior {
 public:
  // Throws InvalidParameter unless 0 <= p <= 1.
  explicit BinaryPrior(double p);

  double p() const { return p_; }
  // Prior of the complementary signal 1 - x.
  BinaryPrior complement() const { return BinaryPrior(1.0 - p_); }

 private:
  double p_;
};

// Schedule of the smoothed-l0 solvers (SL0, Boxed SL0, BSSL0).
struct Bssl0Params {
  double sigma_min = 0.1;  // terminal smoothing width
  double d = 0.5;          // sigma decrease factor, 0 < d < 1
  double mu = 2.0;         // gradient step scale
  int inner_iters = 1000;  // L
  // Outer iteration count. Derived from sigma_min and d when absent.
  std::optional<int> iters_override;
  // BSSL0 only: an entry outside [0, 1] whose weighted step would carry it
  // past the nearest box edge stops at that edge. Off by default.
  bool boundary_guard = false;

  // Throws InvalidParameter when an invariant does not hold.
  void validate() const;

  static Bssl0Params random_signal_defaults() { return {0.1, 0.5, 2.0, 1000, std::nullopt}; }
  static Bssl0Params image_defaults() { return {0.01, 0.9, 2.0, 3, std::nullopt}; }
};

// Number of outer iterations for initial width sigma0:
// ceil(log(sigma_min / sigma0) / log(d)), or 1 when sigma0 <= sigma_min.
int outer_iteration_count(double sigma0, const Bssl0Params& params);

// sum_i (1 - exp(-z_i^2 / (2 sigma^2))).
double sl0_cost(const DenseVector& z, double sigma);

// Box weight: 1 on [0, 1], k elsewhere. k is real valued (k >= 1).
inline double box_weight(double t, double k) { return (t >= 0.0 && t <= 1.0) ? 1.0 : k; }

// Box-weighted sum of smoothed l0 terms centred at 0 and 1:
// sum_i w_k(z_i) (1 - ((1-p) e^{-z_i^2/2s^2} + p e^{-(z_i-1)^2/2s^2})).
// With k = 1 this is the unweighted binary cost.
double bssl0_cost(const DenseVector& z, double sigma, double k, const BinaryPrior& prior);

// Gradient of bssl0_cost almost everywhere; the weight is treated as locally
// constant (its derivative is taken to be zero, including at t = 0 and 1).
DenseVector bssl0_grad(const DenseVector& z, double sigma, double k, const BinaryPrior& prior);

// Entrywise rounding to {0, 1}; values >= 0.5 go to 1.
DenseVector round_to_binary(const DenseVector& z);

// Box-constrained sum of smoothed l0 (BSSL0): graduated gradient descent on
// bssl0_cost with an affine projection after every step and a growing box
// weight, followed by rounding. `solution` is binary.
SolveResult solve_bssl0(const DenseMatrix& phi, const DenseVector& y, const BinaryPrior& prior,
                        const Bssl0Params& params);

// Plain smoothed l0 with the same sigma schedule. No rounding.
SolveResult solve_sl0(const DenseMatrix& phi, const DenseVector& y, const Bssl0Params& params);

// SL0 with every gradient step clipped to [0, 1]^N before the projection.
SolveResult solve_boxed_sl0(const DenseMatrix& phi, const DenseVector& y,
                            const Bssl0Params& params);

}  // namespace bcs
