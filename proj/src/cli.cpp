#include "bcs/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "bcs/errors.hpp"
#include "bcs/image_io.hpp"
#include "bcs/matrix_io.hpp"
#include "bcs/report_io.hpp"
#include "bcs/rng.hpp"

namespace bcs {
namespace {

struct HelpRequested {
  std::string text;
};

struct SolverFlags {
  std::optional<double> sigma_min;
  std::optional<double> d;
  std::optional<double> mu;
  std::optional<int> inner_l;
  std::optional<int> iters;
  bool boundary_guard = false;

  void attach(CLI::App* app) {
    app->add_option("--sigma-min", sigma_min, "terminal smoothing width");
    app->add_option("--d", d, "sigma decrease factor in (0,1)");
    app->add_option("--mu", mu, "gradient step scale");
    app->add_option("--inner-l", inner_l, "inner iterations per sigma");
    app->add_option("--iters", iters, "outer iterations (default: derived from sigma-min)");
    app->add_flag("--boundary-guard", boundary_guard,
                  "stop out-of-box BSSL0 entries at the nearest box edge");
  }

  Bssl0Params apply(Bssl0Params params) const {
    if (sigma_min) params.sigma_min = *sigma_min;
    if (d) params.d = *d;
    if (mu) params.mu = *mu;
    if (inner_l) params.inner_iters = *inner_l;
    if (iters) params.iters_override = *iters;
    params.boundary_guard = boundary_guard;
    params.validate();
    return params;
  }
};

std::string first_line(const std::string& text) {
  const auto nl = text.find('\n');
  return nl == std::string::npos ? text : text.substr(0, nl);
}

void check_probability(double p, const char* flag) {
  if (!(p >= 0.0 && p <= 1.0))
    throw InvalidParameter(std::string(flag) + " must lie in [0, 1]");
}

}  // namespace

CliCommand parse_cli(const std::vector<std::string>& args, std::optional<std::string> env_seed) {
  CliCommand cmd;
  CLI::App app{"Binary compressive sensing toolkit", "bcs"};
  app.require_subcommand(1, 1);

  std::optional<std::uint64_t> seed;
  std::string solvers;
  SolverFlags flags;
  std::optional<double> prior_p;
  std::optional<double> lambda;
  double p_step = 0.05;
  int trials = 200;
  int threads = 1;
  bool no_timing = false;
  bool lambda_search = false;
  double noise_std = 0.1;
  Index samples = 685;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed (default: $BCS_SEED or 1)");
  };

  auto* gen = app.add_subcommand("gen-matrix", "sample a Gaussian measurement matrix");
  common(gen);
  gen->add_option("--m", cmd.m, "rows")->required();
  gen->add_option("--n", cmd.n, "columns")->required();
  gen->add_option("--out", cmd.out, "matrix output file")->required();
  gen->add_option("--p", cmd.signal_p, "also plant a binary signal with this density");
  gen->add_option("--signal-out", cmd.signal_out, "planted signal output file");
  gen->add_option("--measurements-out", cmd.measurements_out, "y = Phi x output file");

  auto* solve = app.add_subcommand("solve", "reconstruct a signal from Phi and y");
  common(solve);
  solve->add_option("--matrix", cmd.matrix_path, "matrix file")->required();
  solve->add_option("--measurements", cmd.measurements_path, "measurement vector file")->required();
  solve->add_option("--solvers", solvers, "comma separated solver list (default bssl0)");
  solve->add_option("--p", prior_p, "prior P(x_j = 1)");
  solve->add_option("--lambda", lambda, "SN weight");
  solve->add_option("--out", cmd.out, "solution output file");
  flags.attach(solve);

  auto* oracle = app.add_subcommand("oracle", "exhaustive binary search (N <= 24)");
  common(oracle);
  oracle->add_option("--matrix", cmd.matrix_path, "matrix file")->required();
  oracle->add_option("--measurements", cmd.measurements_path, "measurement vector file")->required();
  oracle->add_option("--p", prior_p, "prior P(x_j = 1)");
  oracle->add_option("--tol", cmd.oracle_tol, "feasibility tolerance on ||Phi z - y||");
  oracle->add_option("--out", cmd.out, "solution output file");

  auto* exp1 = app.add_subcommand("exp1", "recovery rate over a p grid");
  common(exp1);
  exp1->add_option("--m", cmd.exp1.m, "measurements");
  exp1->add_option("--n", cmd.exp1.n, "signal length");
  exp1->add_option("--p-step", p_step, "grid step on [0, 1]");
  exp1->add_option("--trials", trials, "trials per grid point");
  exp1->add_option("--solvers", solvers, "comma separated solver list (default all)");
  exp1->add_option("--threads", threads, "worker threads");
  exp1->add_option("--lambda", lambda, "SN weight");
  exp1->add_option("--out", cmd.out, "summary CSV")->required();
  exp1->add_option("--raw", cmd.raw_out, "per-trial CSV");
  exp1->add_option("--plot-dir", cmd.plot_dir, "directory for series files and SVG");
  exp1->add_flag("--no-timing", no_timing, "record runtimes as 0 (byte-reproducible output)");
  flags.attach(exp1);

  auto* exp2 = app.add_subcommand("exp2", "bitonal image from subsampled DFT");
  common(exp2);
  exp2->add_option("--image", cmd.image_path, "square P1 image")->required();
  exp2->add_option("--noise-std", noise_std, "pixel noise standard deviation");
  exp2->add_option("--samples", samples, "complex DFT coefficients kept");
  exp2->add_option("--solvers", solvers, "comma separated solver list");
  exp2->add_option("--p", prior_p, "prior P(x_j = 1)");
  exp2->add_option("--lambda", lambda, "SN weight (default 800)");
  exp2->add_flag("--lambda-search", lambda_search, "pick SN lambda from {50, ..., 1000}");
  exp2->add_option("--out", cmd.out, "output directory")->required();
  flags.attach(exp2);

  std::vector<std::string> argv{"bcs"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::vector<const char*> raw;
  for (const auto& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    throw UsageError(first_line(e.what()));
  }

  cmd.subcommand = app.get_subcommands().front()->get_name();
  try {
    if (seed) {
      cmd.seed = *seed;
    } else if (env_seed) {
      try {
        cmd.seed = std::stoull(*env_seed);
      } catch (const std::exception&) {
        throw InvalidParameter(std::string(kSeedEnvVar) + " is not an unsigned integer");
      }
    }
    if (prior_p) check_probability(*prior_p, "--p");

    if (cmd.subcommand == "gen-matrix") {
      if (cmd.m < 1 || cmd.n < 1) throw InvalidParameter("--m and --n must be >= 1");
      if (cmd.signal_p) {
        check_probability(*cmd.signal_p, "--p");
        if (cmd.signal_out.empty() || cmd.measurements_out.empty())
          throw InvalidParameter("--p needs --signal-out and --measurements-out");
      }
    } else if (cmd.subcommand == "solve" || cmd.subcommand == "oracle") {
      cmd.solvers = parse_solver_list(solvers.empty() ? "bssl0" : solvers);
      cmd.prior_p = prior_p.value_or(0.5);
      cmd.settings.bssl0 = flags.apply(cmd.settings.bssl0);
      cmd.settings.sl0 = cmd.settings.bssl0;
      if (lambda) cmd.settings.sn_lambda = *lambda;
      if (!(cmd.oracle_tol > 0.0)) throw InvalidParameter("--tol must be positive");
    } else if (cmd.subcommand == "exp1") {
      cmd.exp1.p_grid = probability_grid(p_step);
      cmd.exp1.trials = trials;
      cmd.exp1.master_seed = cmd.seed;
      cmd.exp1.threads = threads;
      cmd.exp1.record_timing = !no_timing;
      if (!solvers.empty()) cmd.exp1.solvers = parse_solver_list(solvers);
      cmd.exp1.settings.bssl0 = flags.apply(cmd.exp1.settings.bssl0);
      cmd.exp1.settings.sl0 = cmd.exp1.settings.bssl0;
      if (lambda) cmd.exp1.settings.sn_lambda = *lambda;
      cmd.exp1.validate();
    } else if (cmd.subcommand == "exp2") {
      cmd.exp2.noise_std = noise_std;
      cmd.exp2.sample_count = samples;
      cmd.exp2.master_seed = cmd.seed;
      if (!solvers.empty()) cmd.exp2.solvers = parse_solver_list(solvers);
      if (prior_p) cmd.exp2.prior_p = *prior_p;
      if (lambda) cmd.exp2.sn_lambda = *lambda;
      if (lambda_search) cmd.exp2.sn_lambda_grid = default_lambda_grid();
      cmd.exp2.bssl0 = flags.apply(cmd.exp2.bssl0);
      if (!(noise_std >= 0.0)) throw InvalidParameter("--noise-std must be non-negative");
      if (samples < 1) throw InvalidParameter("--samples must be >= 1");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cmd;
}

namespace {

void run_gen_matrix(const CliCommand& cmd, std::ostream& log) {
  const DenseMatrix phi = sample_gaussian_matrix(cmd.m, cmd.n, cmd.seed);
  write_text_file(cmd.out, format_matrix(phi));
  log << "wrote " << cmd.m << "x" << cmd.n << " matrix to " << cmd.out << '\n';
  if (cmd.signal_p) {
    const DenseVector x = sample_binary_signal(cmd.n, *cmd.signal_p, derive_seed(cmd.seed, 1, 0));
    write_text_file(cmd.signal_out, format_vector(x));
    write_text_file(cmd.measurements_out, format_vector(phi * x));
    log << "wrote signal (" << x.sum() << " ones) and measurements\n";
  }
}

void run_solve(const CliCommand& cmd, std::ostream& log) {
  const DenseMatrix phi = parse_matrix(read_text_file(cmd.matrix_path));
  const DenseVector y = parse_vector(read_text_file(cmd.measurements_path));
  const BinaryPrior prior(cmd.prior_p);
  std::ostringstream out;
  for (SolverId id : cmd.solvers) {
    const SolveResult result = run_solver(id, phi, y, prior, cmd.settings);
    log << solver_name(id) << ": " << to_string(result.status) << ", "
        << format_number(result.wall_time.count() * 1e3) << " ms\n";
    out << solver_name(id) << ' ' << to_string(result.status);
    for (Index i = 0; i < result.solution.size(); ++i) out << ' ' << result.solution(i);
    out << '\n';
  }
  if (!cmd.out.empty()) write_text_file(cmd.out, out.str());
  else log << out.str();
}

void run_oracle(const CliCommand& cmd, std::ostream& log) {
  const DenseMatrix phi = parse_matrix(read_text_file(cmd.matrix_path));
  const DenseVector y = parse_vector(read_text_file(cmd.measurements_path));
  const BruteForceResult result =
      brute_force_boxed_l0(phi, y, BinaryPrior(cmd.prior_p), cmd.oracle_tol);
  log << "feasible binary vectors: " << result.feasible_count << '\n';
  if (!result.solution) {
    log << "not-found\n";
    return;
  }
  if (!cmd.out.empty()) write_text_file(cmd.out, format_vector(*result.solution));
  else log << format_vector(*result.solution);
}

void run_exp1(const CliCommand& cmd, std::ostream& log) {
  const ExperimentReport report = run_experiment1(cmd.exp1);
  write_csv(report, cmd.out);
  if (!cmd.raw_out.empty()) write_raw_csv(report, cmd.raw_out);
  if (!cmd.plot_dir.empty()) write_plotdata(report, cmd.plot_dir);
  log << format_csv(report);
}

void run_exp2(const CliCommand& cmd, std::ostream& log) {
  const BitonalImage image = read_pbm(cmd.image_path);
  const Exp2Report report = run_experiment2(cmd.exp2, image);
  const std::filesystem::path dir(cmd.out);
  std::filesystem::create_directories(dir);
  write_pbm((dir / "original.pbm").string(), report.original);
  write_pgm((dir / "noisy.pgm").string(), report.noisy);
  for (const auto& r : report.results)
    if (r.pixel_errors >= 0)
      write_pbm((dir / (std::string(solver_name(r.solver)) + ".pbm")).string(), r.reconstruction);
  write_text_file((dir / "exp2.csv").string(), format_exp2_csv(report));
  log << "real measurement rows: " << report.measurement_rows << '\n';
  if (report.chosen_lambda) log << "sn lambda: " << format_number(*report.chosen_lambda) << '\n';
  log << format_exp2_csv(report);
}

}  // namespace

void run_command(const CliCommand& cmd, std::ostream& log) {
  if (cmd.subcommand == "gen-matrix") run_gen_matrix(cmd, log);
  else if (cmd.subcommand == "solve") run_solve(cmd, log);
  else if (cmd.subcommand == "oracle") run_oracle(cmd, log);
  else if (cmd.subcommand == "exp1") run_exp1(cmd, log);
  else if (cmd.subcommand == "exp2") run_exp2(cmd, log);
  else throw UsageError("unknown subcommand '" + cmd.subcommand + "'");
}

int cli_main(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const char* env = std::getenv(kSeedEnvVar);
  CliCommand cmd;
  try {
    cmd = parse_cli(args, env ? std::optional<std::string>(env) : std::nullopt);
  } catch (const HelpRequested& help) {
    log << help.text;
    return kExitOk;
  } catch (const UsageError& e) {
    err << "bcs: usage error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    run_command(cmd, log);
  } catch (const std::exception& e) {
    err << "bcs: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace bcs
