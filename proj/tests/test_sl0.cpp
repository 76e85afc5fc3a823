#include <gtest/gtest.h>

#include <cmath>

#include "bcs/convex.hpp"
#include "bcs/errors.hpp"
#include "bcs/linalg.hpp"
#include "bcs/rng.hpp"
#include "bcs/sl0.hpp"

namespace {

using namespace bcs;

double central_difference(const DenseVector& z, Index i, double sigma, double k,
                          const BinaryPrior& prior, double h) {
  DenseVector a = z, b = z;
  a(i) += h;
  b(i) -= h;
  return (bssl0_cost(a, sigma, k, prior) - bssl0_cost(b, sigma, k, prior)) / (2 * h);
}

TEST(Prior, Validation) {
  EXPECT_NO_THROW(BinaryPrior(0.0));
  EXPECT_NO_THROW(BinaryPrior(1.0));
  EXPECT_THROW(BinaryPrior(-0.01), InvalidParameter);
  EXPECT_THROW(BinaryPrior(1.01), InvalidParameter);
  EXPECT_THROW(BinaryPrior(std::nan("")), InvalidParameter);
  EXPECT_DOUBLE_EQ(BinaryPrior(0.3).complement().p(), 0.7);
}

TEST(Params, Validation) {
  Bssl0Params p;
  EXPECT_NO_THROW(p.validate());
  p.d = 1.5;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = {};
  p.sigma_min = 0;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = {};
  p.mu = -1;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = {};
  p.inner_iters = 0;
  EXPECT_THROW(p.validate(), InvalidParameter);
  p = {};
  p.iters_override = 0;
  EXPECT_THROW(p.validate(), InvalidParameter);
}

TEST(Schedule, OuterIterationCount) {
  Bssl0Params p = Bssl0Params::random_signal_defaults();
  // sigma0 = 2: 2 * 0.5^n <= 0.1 first at n = 5.
  EXPECT_EQ(outer_iteration_count(2.0, p), 5);
  EXPECT_EQ(outer_iteration_count(1.6, p), 4);
  EXPECT_EQ(outer_iteration_count(0.1, p), 1);
  EXPECT_EQ(outer_iteration_count(0.0, p), 1);
  p.iters_override = 9;
  EXPECT_EQ(outer_iteration_count(2.0, p), 9);
}

TEST(BoxWeight, Values) {
  EXPECT_EQ(box_weight(0.0, 5), 1.0);
  EXPECT_EQ(box_weight(1.0, 5), 1.0);
  EXPECT_EQ(box_weight(0.5, 5), 1.0);
  EXPECT_EQ(box_weight(-0.1, 5), 5.0);
  EXPECT_EQ(box_weight(1.1, 2.5), 2.5);
}

TEST(Sl0Cost, ApproachesL0) {
  DenseVector z(6);
  z << 0, 1, 0, 0, 1, 1;
  EXPECT_NEAR(sl0_cost(z, 1e-3), 3.0, 1e-6);
  EXPECT_EQ(sl0_cost(DenseVector::Zero(4), 0.5), 0.0);
}

TEST(Bssl0Cost, LimitAtZero) {
  for (double p : {0.0, 0.25, 0.5, 1.0}) {
    EXPECT_NEAR(bssl0_cost(DenseVector::Zero(10), 1e-3, 1, BinaryPrior(p)), p * 10, 1e-6);
  }
  EXPECT_NEAR(bssl0_cost(ones(10), 1e-3, 1, BinaryPrior(1.0)), 0.0, 1e-12);
}

TEST(Bssl0Cost, UnitWeightMatchesUnweightedFormula) {
  Rng r(4);
  DenseVector z(20);
  for (Index i = 0; i < z.size(); ++i) z(i) = r.uniform();
  const double sigma = 0.3, p = 0.35;
  double expected = 0;
  for (Index i = 0; i < z.size(); ++i)
    expected += 1 - (1 - p) * std::exp(-z(i) * z(i) / (2 * sigma * sigma)) -
                p * std::exp(-(z(i) - 1) * (z(i) - 1) / (2 * sigma * sigma));
  EXPECT_NEAR(bssl0_cost(z, sigma, 7.0, BinaryPrior(p)), expected, 1e-12);
}

TEST(Bssl0Cost, OutsideBoxScaledByK) {
  DenseVector z(1);
  z << -0.4;
  const BinaryPrior prior(0.3);
  EXPECT_NEAR(bssl0_cost(z, 0.5, 4.0, prior), 4.0 * bssl0_cost(z, 0.5, 1.0, prior), 1e-14);
}

// Dyadic inputs keep 1 - z exact, so the swapped evaluation is bit-identical.
TEST(Bssl0Cost, ComplementSymmetryExact) {
  Rng r(9);
  for (int trial = 0; trial < 200; ++trial) {
    DenseVector z(8);
    for (Index i = 0; i < z.size(); ++i)
      z(i) = static_cast<double>(static_cast<int>(r.below(97)) - 32) / 32.0;
    const double sigma = 0.05 + static_cast<double>(r.below(64)) / 16.0;
    const double k = 1.0 + static_cast<double>(r.below(40)) / 4.0;
    const double p = static_cast<double>(r.below(65)) / 64.0;
    const DenseVector zc = ones(8) - z;
    EXPECT_EQ(bssl0_cost(z, sigma, k, BinaryPrior(p)),
              bssl0_cost(zc, sigma, k, BinaryPrior(1.0 - p)));
  }
}

TEST(Bssl0Grad, TrivialCases) {
  EXPECT_EQ(bssl0_grad(DenseVector::Zero(5), 0.7, 1, BinaryPrior(0.0)), DenseVector::Zero(5));
  DenseVector half = DenseVector::Constant(3, 0.5);
  for (double sigma : {0.1, 1.0, 5.0}) {
    const DenseVector g = bssl0_grad(half, sigma, 3, BinaryPrior(0.5));
    EXPECT_LT(g.cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Bssl0Grad, MatchesFiniteDifferences) {
  Rng r(17);
  DenseVector z(30);
  for (Index i = 0; i < z.size(); ++i)
    z(i) = (i % 2 == 0) ? 0.01 + 0.98 * r.uniform() : 1.01 + 0.99 * r.uniform();
  const BinaryPrior prior(0.3);
  const double sigma = 0.7;
  for (double k : {1.0, 5.0}) {
    const DenseVector g = bssl0_grad(z, sigma, k, prior);
    for (Index i = 0; i < z.size(); ++i) {
      const double fd = central_difference(z, i, sigma, k, prior, 1e-6);
      EXPECT_LT(std::abs(fd - g(i)), 1e-4 * std::max(std::abs(g(i)), 1e-3)) << i;
    }
  }
}

TEST(RoundToBinary, TieGoesUp) {
  DenseVector z(5);
  z << -3, 0.49, 0.5, 0.51, 7;
  DenseVector expected(5);
  expected << 0, 0, 1, 1, 1;
  EXPECT_EQ(round_to_binary(z), expected);
}

TEST(Solvers, IdentityMeasurementRecovers) {
  const DenseVector x = sample_binary_signal(12, 0.4, 3);
  const DenseMatrix phi = DenseMatrix::Identity(12, 12);
  const Bssl0Params params = Bssl0Params::random_signal_defaults();
  EXPECT_EQ(solve_bssl0(phi, x, BinaryPrior(0.4), params).solution, x);
  EXPECT_LT((solve_sl0(phi, x, params).solution - x).norm(), 1e-12);
  EXPECT_LT((solve_boxed_sl0(phi, x, params).solution - x).norm(), 1e-12);
}

TEST(Solvers, Sl0OneSparse) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseMatrix phi = sample_gaussian_matrix(10, 20, seed);
    DenseVector x = DenseVector::Zero(20);
    x(static_cast<Index>(seed % 20)) = 1.0;
    Bssl0Params params = Bssl0Params::random_signal_defaults();
    params.sigma_min = 1e-3;
    params.inner_iters = 100;
    const SolveResult r = solve_sl0(phi, phi * x, params);
    EXPECT_LT((r.solution - x).norm(), 1e-3) << seed;
    EXPECT_LT((phi * r.solution - phi * x).norm(), 1e-6);
  }
}

TEST(Solvers, Bssl0OutputBinaryAndPreRoundFeasible) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DenseMatrix phi = sample_gaussian_matrix(8, 12, seed);
    const DenseVector x = sample_binary_signal(12, 0.25, seed + 50);
    const DenseVector y = phi * x;
    const SolveResult r = solve_bssl0(phi, y, BinaryPrior(0.25), Bssl0Params::random_signal_defaults());
    for (Index i = 0; i < r.solution.size(); ++i)
      ASSERT_TRUE(r.solution(i) == 0.0 || r.solution(i) == 1.0);
    EXPECT_LE((phi * r.pre_round_solution - y).norm(), 1e-6 * (1 + y.norm()));
    EXPECT_EQ(r.solution, round_to_binary(r.pre_round_solution));
    EXPECT_GE(r.iterations_used, 1);
  }
}

TEST(Solvers, Bssl0SmallScaleAgreesWithOracle) {
  int unique = 0, recovered = 0;
  for (std::uint64_t seed = 0; unique < 30; ++seed) {
    const DenseMatrix phi = sample_gaussian_matrix(8, 12, derive_seed(5, seed, 0));
    const DenseVector x = sample_binary_signal(12, 0.25, derive_seed(5, seed, 1));
    const DenseVector y = phi * x;
    const BruteForceResult oracle = brute_force_boxed_l0(phi, y, BinaryPrior(0.25), 1e-6);
    if (!oracle.unique()) continue;
    ++unique;
    const SolveResult r =
        solve_bssl0(phi, y, BinaryPrior(0.25), Bssl0Params::random_signal_defaults());
    recovered += r.solution == *oracle.solution;
  }
  EXPECT_GE(recovered, 25);
}

TEST(Solvers, BoxedSl0StaysNearBox) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const DenseMatrix phi = sample_gaussian_matrix(20, 50, seed);
    const DenseVector x = sample_binary_signal(50, 0.5, seed + 7);
    const SolveResult r = solve_boxed_sl0(phi, phi * x, Bssl0Params::random_signal_defaults());
    EXPECT_LE(r.solution.cwiseAbs().maxCoeff(), 10.0);
  }
}

TEST(Solvers, FeasibleAfterProjectionAllThree) {
  const DenseMatrix phi = sample_gaussian_matrix(15, 40, 8);
  const DenseVector x = sample_binary_signal(40, 0.3, 9);
  const DenseVector y = phi * x;
  Bssl0Params params = Bssl0Params::random_signal_defaults();
  params.inner_iters = 50;
  const double tol = 1e-6 * (1 + y.norm());
  EXPECT_LE((phi * solve_sl0(phi, y, params).solution - y).norm(), tol);
  EXPECT_LE((phi * solve_boxed_sl0(phi, y, params).solution - y).norm(), tol);
  EXPECT_LE((phi * solve_bssl0(phi, y, BinaryPrior(0.3), params).pre_round_solution - y).norm(),
            tol);
}

TEST(Solvers, BoundaryGuardKeepsIteratesBounded) {
  const DenseMatrix phi = sample_gaussian_matrix(40, 100, 1);
  const DenseVector x = ones(100);
  Bssl0Params params = Bssl0Params::random_signal_defaults();
  params.boundary_guard = true;
  const SolveResult r = solve_bssl0(phi, phi * x, BinaryPrior(1.0), params);
  EXPECT_EQ(r.solution, x);
}

TEST(Solvers, ZeroMeasurementGivesZero) {
  const DenseMatrix phi = sample_gaussian_matrix(5, 9, 2);
  const DenseVector y = DenseVector::Zero(5);
  const Bssl0Params params = Bssl0Params::random_signal_defaults();
  EXPECT_EQ(solve_bssl0(phi, y, BinaryPrior(0.5), params).solution, DenseVector::Zero(9));
  EXPECT_EQ(solve_sl0(phi, y, params).solution, DenseVector::Zero(9));
}

TEST(Solvers, Errors) {
  const DenseMatrix phi = sample_gaussian_matrix(5, 9, 2);
  Bssl0Params params;
  EXPECT_THROW(solve_sl0(phi, DenseVector::Zero(4), params), DimensionMismatch);
  params.d = 1.0;
  EXPECT_THROW(solve_sl0(phi, DenseVector::Zero(5), params), InvalidParameter);
  // A huge step drives the iterate past the guard band.
  Bssl0Params wild;
  wild.mu = 1e9;
  DenseVector y = phi * sample_binary_signal(9, 0.5, 1);
  EXPECT_THROW(solve_bssl0(phi, y, BinaryPrior(0.5), wild), DivergenceError);
}

}  // namespace
