#include "bcs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <string>
#include <thread>
#include <utility>

#include "bcs/errors.hpp"
#include "bcs/rng.hpp"

namespace bcs {

Metrics compute_metrics(const DenseVector& x, const DenseVector& z) {
  if (x.size() != z.size())
    throw DimensionMismatch("metrics: lengths " + std::to_string(x.size()) + " and " +
                            std::to_string(z.size()) + " differ");
  Metrics out;
  const double err = (x - z).norm();
  const double scale = x.norm();
  if (scale > 0.0) out.nsr = err / scale;
  else out.nsr = err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();

  const bool rounded_match = round_to_binary(z) == x;
  const bool close = x.size() == 0 || (z - x).lpNorm<Eigen::Infinity>() < 0.5;
  out.fpr = rounded_match && close ? 0 : 1;
  return out;
}

std::vector<double> probability_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw InvalidParameter("p step must lie in (0, 1]");
  const auto count = static_cast<int>(std::floor(1.0 / step + 1e-9));
  std::vector<double> grid;
  for (int i = 0; i <= count; ++i) grid.push_back(std::min(1.0, i * step));
  // Snap a near-1 tail (0.05 * 20 = 1.0000000000000002 and the like).
  if (std::abs(grid.back() - 1.0) < 1e-9) grid.back() = 1.0;
  return grid;
}

void Exp1Config::validate() const {
  if (m < 1 || n < 1) throw InvalidParameter("exp1: m and n must be >= 1");
  if (m > n) throw InvalidParameter("exp1: m must not exceed n");
  if (trials < 1) throw InvalidParameter("exp1: trials must be >= 1");
  if (p_grid.empty()) throw InvalidParameter("exp1: empty p grid");
  for (double p : p_grid)
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidParameter("exp1: p grid leaves [0, 1]");
  if (solvers.empty()) throw InvalidParameter("exp1: empty solver set");
  if (threads < 1) throw InvalidParameter("exp1: threads must be >= 1");
  settings.bssl0.validate();
  settings.sl0.validate();
}

const SolverSummary& ExperimentReport::summary(double p, SolverId solver) const {
  for (const auto& s : summaries)
    if (s.p == p && s.solver == solver) return s;
  throw InvalidParameter("no summary for p = " + std::to_string(p) + ", solver " +
                         std::string(solver_name(solver)));
}

std::vector<SolverSummary> aggregate(const std::vector<TrialRecord>& records) {
  struct Acc {
    double fpr = 0, nsr = 0, runtime = 0;
    int trials = 0, nsr_count = 0, excluded = 0;
  };
  // Key order gives p ascending, then solver name ascending.
  std::map<std::pair<double, std::string_view>, std::pair<SolverId, Acc>> groups;
  for (const auto& r : records) {
    auto& [id, acc] = groups[{r.p, solver_name(r.solver)}];
    id = r.solver;
    acc.fpr += r.fpr;
    acc.runtime += r.runtime_ms;
    ++acc.trials;
    if (is_nsr_sentinel(r.nsr) || std::isnan(r.nsr)) {
      ++acc.excluded;
    } else {
      acc.nsr += r.nsr;
      ++acc.nsr_count;
    }
  }
  std::vector<SolverSummary> out;
  out.reserve(groups.size());
  for (const auto& [key, value] : groups) {
    const auto& [id, acc] = value;
    SolverSummary s;
    s.p = key.first;
    s.solver = id;
    s.trials = acc.trials;
    s.mean_fpr = acc.fpr / acc.trials;
    s.mean_runtime_ms = acc.runtime / acc.trials;
    s.mean_nsr = acc.nsr_count > 0 ? acc.nsr / acc.nsr_count
                                   : std::numeric_limits<double>::quiet_NaN();
    s.nsr_excluded = acc.excluded;
    out.push_back(s);
  }
  return out;
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t p_index, int trial) {
  return derive_seed(master_seed, p_index, static_cast<std::uint64_t>(trial));
}

namespace {

void run_trial(const Exp1Config& config, std::size_t p_index, int trial, TrialRecord* out) {
  const double p = config.p_grid[p_index];
  const std::uint64_t seed = trial_seed(config.master_seed, p_index, trial);
  const DenseMatrix phi = sample_gaussian_matrix(config.m, config.n, derive_seed(seed, 1, 0));
  const DenseVector x = sample_binary_signal(config.n, p, derive_seed(seed, 2, 0));
  const DenseVector y = phi * x;
  const BinaryPrior prior(p);

  for (std::size_t s = 0; s < config.solvers.size(); ++s) {
    TrialRecord& rec = out[s];
    rec.p = p;
    rec.solver = config.solvers[s];
    rec.trial = trial;
    rec.seed = seed;
    try {
      const SolveResult result = run_solver(rec.solver, phi, y, prior, config.settings);
      if (config.record_timing) rec.runtime_ms = result.wall_time.count() * 1e3;
      if (result.ok()) {
        const Metrics metrics = compute_metrics(x, result.pre_round_solution);
        rec.fpr = metrics.fpr;
        rec.nsr = metrics.nsr;
        continue;
      }
    } catch (const std::exception&) {
    }
    rec.failed = true;
    rec.fpr = 1;
    rec.nsr = std::numeric_limits<double>::infinity();
  }
}

}  // namespace

ExperimentReport run_experiment1(const Exp1Config& config) {
  config.validate();
  const std::size_t per_trial = config.solvers.size();
  const std::size_t jobs = config.p_grid.size() * static_cast<std::size_t>(config.trials);
  std::vector<TrialRecord> records(jobs * per_trial);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t p_index = job / static_cast<std::size_t>(config.trials);
      const int trial = static_cast<int>(job % static_cast<std::size_t>(config.trials));
      run_trial(config, p_index, trial, &records[job * per_trial]);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), jobs);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }

  ExperimentReport report;
  report.config = config;
  report.summaries = aggregate(records);
  report.records = std::move(records);
  return report;
}

DenseMatrix add_gaussian_noise(const DenseMatrix& image, double std_dev, std::uint64_t seed) {
  if (!(std_dev >= 0.0)) throw InvalidParameter("noise std must be non-negative");
  DenseMatrix out = image;
  if (std_dev == 0.0) return out;
  Rng rng(seed);
  for (Index c = 0; c < out.cols(); ++c)
    for (Index r = 0; r < out.rows(); ++r) out(r, c) += std_dev * rng.normal();
  return out;
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  for (int v = 50; v <= 1000; v += 50) grid.push_back(v);
  return grid;
}

void Exp2Config::validate(Index side) const {
  if (!(noise_std >= 0.0)) throw InvalidParameter("exp2: noise std must be non-negative");
  if (sample_count < 1 || sample_count > side * side)
    throw InvalidParameter("exp2: sample count must lie in [1, " + std::to_string(side * side) +
                           "]");
  if (solvers.empty()) throw InvalidParameter("exp2: empty solver set");
  BinaryPrior{prior_p};
  bssl0.validate();
  if (!(sn_lambda >= 0.0)) throw InvalidParameter("exp2: lambda must be non-negative");
}

const Exp2SolverResult& Exp2Report::result(SolverId solver) const {
  for (const auto& r : results)
    if (r.solver == solver) return r;
  throw InvalidParameter("solver " + std::string(solver_name(solver)) + " was not run");
}

double sn_lambda_search(const DenseMatrix& phi, const DenseVector& y,
                        const std::vector<double>& grid, const BitonalImage& reference,
                        const SimplexOptions& options) {
  if (grid.empty()) throw InvalidParameter("lambda search: empty grid");
  double best_lambda = grid.front();
  Index best_errors = std::numeric_limits<Index>::max();
  for (double lambda : grid) {
    const SolveResult result = solve_sn(phi, y, lambda, options);
    Index errors = std::numeric_limits<Index>::max();
    if (result.ok()) {
      const BitonalImage image = BitonalImage::from_rounded(
          unvectorize(result.solution, reference.height(), reference.width()));
      errors = pixel_errors(image, reference);
    }
    if (errors < best_errors || (errors == best_errors && lambda < best_lambda)) {
      best_errors = errors;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

Exp2Report run_experiment2(const Exp2Config& config, const BitonalImage& image) {
  if (image.width() != image.height())
    throw InvalidParameter("exp2: image must be square, got " + std::to_string(image.width()) +
                           "x" + std::to_string(image.height()));
  const Index side = image.width();
  config.validate(side);

  Exp2Report report;
  report.config = config;
  report.original = image;
  report.noisy = add_gaussian_noise(image.to_matrix(), config.noise_std,
                                    derive_seed(config.master_seed, 1, 0));
  report.sampled_frequencies = sample_without_replacement(side * side, config.sample_count,
                                                          derive_seed(config.master_seed, 2, 0));
  const DftMeasurement measurement =
      drop_redundant_rows(build_dft_measurement(side, report.sampled_frequencies));
  report.measurement_rows = measurement.matrix.rows();
  const DenseMatrix& phi = measurement.matrix;
  const DenseVector y = phi * vectorize(report.noisy);

  SolverSettings settings;
  settings.bssl0 = config.bssl0;
  settings.sl0 = config.bssl0;
  settings.sn_lambda = config.sn_lambda;
  settings.simplex = config.simplex;
  const bool wants_sn =
      std::find(config.solvers.begin(), config.solvers.end(), SolverId::kSn) != config.solvers.end();
  if (wants_sn && !config.sn_lambda_grid.empty()) {
    settings.sn_lambda = sn_lambda_search(phi, y, config.sn_lambda_grid, image, config.simplex);
    report.chosen_lambda = settings.sn_lambda;
  } else if (wants_sn) {
    report.chosen_lambda = config.sn_lambda;
  }

  const BinaryPrior prior(config.prior_p);
  for (SolverId id : config.solvers) {
    Exp2SolverResult entry;
    entry.solver = id;
    try {
      const SolveResult result = run_solver(id, phi, y, prior, settings);
      entry.status = result.status;
      entry.runtime_ms = result.wall_time.count() * 1e3;
      if (result.ok()) {
        entry.reconstruction =
            BitonalImage::from_rounded(unvectorize(result.solution, side, side));
        entry.pixel_errors = pixel_errors(entry.reconstruction, image);
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    report.results.push_back(std::move(entry));
  }
  return report;
}

}  // namespace bcs
