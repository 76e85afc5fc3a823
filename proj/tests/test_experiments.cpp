#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <map>

#include "bcs/errors.hpp"
#include "bcs/experiments.hpp"
#include "bcs/image.hpp"
#include "bcs/report_io.hpp"
#include "bcs/solvers.hpp"

namespace {

using namespace bcs;

TEST(Metrics, Examples) {
  DenseVector x(4);
  x << 1, 0, 0, 0;
  const Metrics same = compute_metrics(x, x);
  EXPECT_EQ(same.fpr, 0);
  EXPECT_EQ(same.nsr, 0.0);

  const Metrics miss = compute_metrics(x, DenseVector::Zero(4));
  EXPECT_EQ(miss.fpr, 1);
  EXPECT_DOUBLE_EQ(miss.nsr, 1.0);

  DenseVector x2(2), z2(2);
  x2 << 1, 0;
  z2 << 0.9, 0.05;
  const Metrics close = compute_metrics(x2, z2);
  EXPECT_EQ(close.fpr, 0);
  EXPECT_NEAR(close.nsr, std::sqrt(0.0125), 1e-12);
}

TEST(Metrics, ZeroSignal) {
  EXPECT_EQ(compute_metrics(DenseVector::Zero(3), DenseVector::Zero(3)).nsr, 0.0);
  const Metrics m = compute_metrics(DenseVector::Zero(3), DenseVector::Constant(3, 0.1));
  EXPECT_EQ(m.fpr, 0);
  EXPECT_TRUE(is_nsr_sentinel(m.nsr));
  EXPECT_THROW(compute_metrics(DenseVector::Zero(3), DenseVector::Zero(2)), DimensionMismatch);
}

TEST(Metrics, RoundingAndTolerance) {
  DenseVector x(2), z(2);
  x << 1, 0;
  z << 0.5, 0.0;  // rounds to x but sits exactly 0.5 away
  EXPECT_EQ(compute_metrics(x, z).fpr, 1);
  z << 1.49, -0.49;
  EXPECT_EQ(compute_metrics(x, z).fpr, 0);
  z << 1.0, 0.6;
  EXPECT_EQ(compute_metrics(x, z).fpr, 1);
}

TEST(Grid, ProbabilityGrid) {
  const auto g = probability_grid(0.05);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_NEAR(g[7], 0.35, 1e-12);
  EXPECT_EQ(probability_grid(0.25).size(), 5u);
  EXPECT_THROW(probability_grid(0.0), InvalidParameter);
}

TEST(Solvers, NamesRoundTrip) {
  for (SolverId id : all_solvers()) EXPECT_EQ(parse_solver(solver_name(id)), id);
  EXPECT_THROW(parse_solver("lasso"), InvalidParameter);
  EXPECT_EQ(parse_solver_list("bp,bssl0").size(), 2u);
  EXPECT_THROW(parse_solver_list("bp,bp"), InvalidParameter);
  const auto sorted = sorted_by_name(all_solvers());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    EXPECT_LT(solver_name(sorted[i - 1]), solver_name(sorted[i]));
}

Exp1Config small_config() {
  Exp1Config cfg;
  cfg.m = 8;
  cfg.n = 16;
  cfg.p_grid = {0.0, 0.5, 1.0};
  cfg.trials = 4;
  cfg.settings.bssl0.inner_iters = 50;
  cfg.settings.sl0.inner_iters = 50;
  return cfg;
}

TEST(Experiment1, ZeroSignalAllSolversSucceed) {
  Exp1Config cfg = small_config();
  cfg.p_grid = {0.0};
  cfg.trials = 1;
  const ExperimentReport rep = run_experiment1(cfg);
  ASSERT_EQ(rep.summaries.size(), all_solvers().size());
  for (const auto& s : rep.summaries) EXPECT_EQ(s.mean_fpr, 0.0) << solver_name(s.solver);
}

TEST(Experiment1, AggregatesMatchRecords) {
  const ExperimentReport rep = run_experiment1(small_config());
  EXPECT_EQ(rep.records.size(), 3u * 4u * all_solvers().size());
  std::map<std::pair<double, SolverId>, std::pair<double, int>> sums;
  for (const auto& r : rep.records) {
    auto& acc = sums[{r.p, r.solver}];
    acc.first += r.fpr;
    acc.second += 1;
  }
  for (const auto& s : rep.summaries) {
    const auto& acc = sums.at({s.p, s.solver});
    EXPECT_EQ(s.trials, acc.second);
    EXPECT_EQ(s.mean_fpr, acc.first / acc.second);
    EXPECT_GE(s.mean_fpr, 0.0);
    EXPECT_LE(s.mean_fpr, 1.0);
  }
  EXPECT_EQ(aggregate(rep.records).size(), rep.summaries.size());
}

TEST(Experiment1, SummaryOrderAndLookup) {
  const ExperimentReport rep = run_experiment1(small_config());
  for (std::size_t i = 1; i < rep.summaries.size(); ++i) {
    const auto& a = rep.summaries[i - 1];
    const auto& b = rep.summaries[i];
    EXPECT_TRUE(a.p < b.p || (a.p == b.p && solver_name(a.solver) < solver_name(b.solver)));
  }
  EXPECT_NO_THROW(rep.summary(0.5, SolverId::kSav));
  EXPECT_THROW(rep.summary(0.3, SolverId::kSav), InvalidParameter);
}

TEST(Experiment1, DeterministicAcrossRunsAndThreads) {
  Exp1Config cfg = small_config();
  cfg.record_timing = false;
  const std::string a = format_csv(run_experiment1(cfg));
  const std::string b = format_csv(run_experiment1(cfg));
  cfg.threads = 3;
  const ExperimentReport par = run_experiment1(cfg);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, format_csv(par));
  cfg.threads = 1;
  EXPECT_EQ(format_raw_csv(run_experiment1(cfg)), format_raw_csv(par));
}

TEST(Experiment1, SeedsAreDistinctPerTrial) {
  EXPECT_NE(trial_seed(1, 0, 0), trial_seed(1, 0, 1));
  EXPECT_NE(trial_seed(1, 0, 0), trial_seed(1, 1, 0));
  EXPECT_NE(trial_seed(1, 0, 0), trial_seed(2, 0, 0));
}

TEST(Experiment1, InvalidConfig) {
  Exp1Config cfg = small_config();
  cfg.trials = 0;
  EXPECT_THROW(run_experiment1(cfg), InvalidParameter);
  cfg = small_config();
  cfg.p_grid = {1.2};
  EXPECT_THROW(run_experiment1(cfg), InvalidParameter);
  cfg = small_config();
  cfg.m = 20;
  EXPECT_THROW(run_experiment1(cfg), InvalidParameter);
}

TEST(Noise, Examples) {
  const DenseMatrix img = DenseMatrix::Constant(5, 5, 0.3);
  EXPECT_EQ(add_gaussian_noise(img, 0.0, 1), img);
  EXPECT_EQ(add_gaussian_noise(img, 0.2, 9), add_gaussian_noise(img, 0.2, 9));
}

// 1368 s^2 / 0.01 ~ chi^2_1368; the bounds [0.09, 0.11] are beyond 5 sd.
TEST(Noise, SampleStdWithinChiSquareBounds) {
  const DenseMatrix noisy = add_gaussian_noise(DenseMatrix::Zero(37, 37), 0.1, 5);
  const double mean = noisy.mean();
  const double sd = std::sqrt((noisy.array() - mean).square().sum() / 1368.0);
  EXPECT_GE(sd, 0.09);
  EXPECT_LE(sd, 0.11);
}

TEST(LambdaGrid, TwentyCandidates) {
  const auto g = default_lambda_grid();
  ASSERT_EQ(g.size(), 20u);
  EXPECT_EQ(g.front(), 50.0);
  EXPECT_EQ(g.back(), 1000.0);
}

TEST(Experiment2, FullNoiselessSamplingIsExact) {
  const BitonalImage img = make_glyph_image(6);
  Exp2Config cfg;
  cfg.noise_std = 0.0;
  cfg.sample_count = 36;
  cfg.solvers = all_solvers();
  const Exp2Report rep = run_experiment2(cfg, img);
  EXPECT_EQ(rep.measurement_rows, 36);
  for (const auto& r : rep.results) {
    EXPECT_EQ(r.pixel_errors, 0) << solver_name(r.solver);
    EXPECT_EQ(r.reconstruction, img);
  }
}

TEST(Experiment2, LambdaSearchTiesGoToSmallest) {
  const BitonalImage img = make_glyph_image(5);
  Exp2Config cfg;
  cfg.noise_std = 0.0;
  cfg.sample_count = 25;
  cfg.solvers = {SolverId::kSn};
  cfg.sn_lambda_grid = default_lambda_grid();
  const Exp2Report rep = run_experiment2(cfg, img);
  ASSERT_TRUE(rep.chosen_lambda);
  EXPECT_EQ(*rep.chosen_lambda, 50.0);
}

TEST(Experiment2, LambdaSearchSingleAndEmpty) {
  const DenseMatrix phi = DenseMatrix::Identity(4, 4);
  const BitonalImage ref(2, 2, {1, 0, 0, 1});
  const DenseVector y = vectorize(ref.to_matrix());
  EXPECT_EQ(sn_lambda_search(phi, y, {300.0}, ref), 300.0);
  EXPECT_THROW(sn_lambda_search(phi, y, {}, ref), InvalidParameter);
}

TEST(Experiment2, SmallNoisyRunProducesImages) {
  const BitonalImage img = make_glyph_image(16);
  Exp2Config cfg;
  cfg.sample_count = 128;
  cfg.solvers = {SolverId::kBp, SolverId::kBssl0};
  const Exp2Report rep = run_experiment2(cfg, img);
  EXPECT_EQ(rep.sampled_frequencies.size(), 128u);
  EXPECT_EQ(rep.noisy.rows(), 16);
  ASSERT_EQ(rep.results.size(), 2u);
  for (const auto& r : rep.results) {
    EXPECT_EQ(r.reconstruction.width(), 16);
    EXPECT_GE(r.pixel_errors, 0);
  }
  EXPECT_NO_THROW(rep.result(SolverId::kBp));
  EXPECT_THROW(rep.result(SolverId::kSav), InvalidParameter);
}

TEST(Experiment2, RejectsBadConfig) {
  const BitonalImage img = make_glyph_image(5);
  Exp2Config cfg;
  cfg.sample_count = 26;
  EXPECT_THROW(run_experiment2(cfg, img), InvalidParameter);
  cfg.sample_count = 10;
  cfg.noise_std = -1;
  EXPECT_THROW(run_experiment2(cfg, img), InvalidParameter);
  const BitonalImage wide(3, 2, {0, 1, 0, 1, 0, 1});
  EXPECT_THROW(run_experiment2(Exp2Config{}, wide), InvalidParameter);
}

}  // namespace
