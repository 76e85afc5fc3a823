#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bcs/image.hpp"
#include "bcs/linalg.hpp"
#include "bcs/solvers.hpp"

namespace bcs {

struct Metrics {
  int fpr = 1;     // 0 on perfect reconstruction
  double nsr = 0;  // ||x - z||_2 / ||x||_2, +inf sentinel when x = 0 != z
};

// FPR is 0 iff round(z) == x and ||z - x||_inf < 0.5. NSR is measured on the
// raw z; NSR = 0 for x = z = 0 and +inf when x = 0 but z != 0.
Metrics compute_metrics(const DenseVector& x, const DenseVector& z);

inline bool is_nsr_sentinel(double nsr) { return std::isinf(nsr); }

// 0, step, 2 step, ..., 1 (the endpoint is snapped to exactly 1).
std::vector<double> probability_grid(double step);

struct Exp1Config {
  Index m = 40;
  Index n = 100;
  std::vector<double> p_grid = probability_grid(0.05);
  int trials = 200;
  std::vector<SolverId> solvers = all_solvers();
  std::uint64_t master_seed = 1;
  SolverSettings settings;
  // Worker threads; every schedule produces the same report.
  int threads = 1;
  // When false every runtime is recorded as 0, which makes the whole report
  // (and its CSV) a pure function of the configuration.
  bool record_timing = true;

  void validate() const;
};

struct TrialRecord {
  double p = 0;
  SolverId solver = SolverId::kBssl0;
  int trial = 0;
  std::uint64_t seed = 0;
  int fpr = 1;
  double nsr = 0;
  double runtime_ms = 0;
  // Solver threw or reported infeasible/unbounded.
  bool failed = false;
};

struct SolverSummary {
  double p = 0;
  SolverId solver = SolverId::kBssl0;
  double mean_fpr = 0;
  // Mean over records without the NSR sentinel; NaN if none remain.
  double mean_nsr = 0;
  double mean_runtime_ms = 0;
  int trials = 0;
  int nsr_excluded = 0;
};

struct ExperimentReport {
  Exp1Config config;
  // Ordered by p ascending, then solver name ascending.
  std::vector<SolverSummary> summaries;
  // Ordered by p index, trial, then configured solver order.
  std::vector<TrialRecord> records;

  // Throws InvalidParameter if the pair is absent.
  const SolverSummary& summary(double p, SolverId solver) const;
};

// Groups records by (p, solver) and averages them in record order.
std::vector<SolverSummary> aggregate(const std::vector<TrialRecord>& records);

// Seed of trial `trial` at grid index `p_index`; Phi and x use streams
// derived from it.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t p_index, int trial);

ExperimentReport run_experiment1(const Exp1Config& config);

// Adds i.i.d. N(0, std^2) noise, drawn in column-major order from Rng(seed).
DenseMatrix add_gaussian_noise(const DenseMatrix& image, double std_dev, std::uint64_t seed);

// {50, 100, ..., 1000}.
std::vector<double> default_lambda_grid();

struct Exp2Config {
  double noise_std = 0.1;
  // Number of complex DFT coefficients kept.
  Index sample_count = 685;
  std::vector<SolverId> solvers = {SolverId::kBp, SolverId::kSn, SolverId::kSav,
                                   SolverId::kBssl0};
  std::uint64_t master_seed = 1;
  double prior_p = 0.5;
  Bssl0Params bssl0 = Bssl0Params::image_defaults();
  // SN weight, used as-is when the search grid is empty.
  double sn_lambda = 800.0;
  std::vector<double> sn_lambda_grid;
  SimplexOptions simplex;

  void validate(Index side) const;
};

struct Exp2SolverResult {
  SolverId solver = SolverId::kBssl0;
  SolveStatus status = SolveStatus::kOk;
  std::string error;  // non-empty if the solver threw
  BitonalImage reconstruction;
  // Differences against the clean image; -1 when there is no reconstruction.
  Index pixel_errors = -1;
  double runtime_ms = 0;
};

struct Exp2Report {
  Exp2Config config;
  BitonalImage original;
  DenseMatrix noisy;
  std::vector<Index> sampled_frequencies;
  // Real rows actually handed to the solvers after redundant-row removal.
  Index measurement_rows = 0;
  std::optional<double> chosen_lambda;
  std::vector<Exp2SolverResult> results;

  // Throws InvalidParameter if the solver was not run.
  const Exp2SolverResult& result(SolverId solver) const;
};

// Runs SN for each lambda and returns the one whose rounded reconstruction
// has the fewest pixel errors against `reference` (smallest lambda on ties).
// Throws InvalidParameter for an empty grid.
double sn_lambda_search(const DenseMatrix& phi, const DenseVector& y,
                        const std::vector<double>& grid, const BitonalImage& reference,
                        const SimplexOptions& options = {});

// Noisy, subsampled 2-D DFT reconstruction of a square bitonal image.
Exp2Report run_experiment2(const Exp2Config& config, const BitonalImage& image);

}  // namespace bcs
