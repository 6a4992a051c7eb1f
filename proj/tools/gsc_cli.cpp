// Command-line front end: evaluate, optimize, sample, calibrate.
//
// Exit codes: 0 ok, 2 malformed input, 3 singular design, 4 optimiser
// failure, 1 anything else.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "csv.hpp"
#include "gsc/linear_model.hpp"
#include "gsc/montecarlo.hpp"
#include "gsc/optimizer.hpp"
#include "gsc/settings_io.hpp"
#include "gsc/statistics.hpp"

namespace {

using namespace gsc;
using cli::CsvWriter;
using cli::format_number;

constexpr int kExitParse = 2;
constexpr int kExitSingular = 3;
constexpr int kExitOptimizer = 4;

// A failure that maps to a specific exit code after its message is printed.
struct ExitRequest {
  int code;
  std::string message;
};

struct CommonOptions {
  std::string settings;
  std::string angles;
  double f_plus = 1.0;
  double f_minus = 1.0;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_channel) {
  cmd->add_option("--settings", o.settings, "settings document")->required()->check(CLI::ExistingFile);
  cmd->add_option("--angles", o.angles, "angle file overriding declared values")->check(CLI::ExistingFile);
  if (with_channel) {
    cmd->add_option("--fplus", o.f_plus, "readout fidelity of the +1 outcome")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--fminus", o.f_minus, "readout fidelity of the -1 outcome")->check(CLI::Range(0.0, 1.0));
  }
}

std::optional<ReadoutChannel> channel_of(const CommonOptions& o) {
  const ReadoutChannel ch(o.f_plus, o.f_minus);
  if (ch.is_perfect()) return std::nullopt;
  return ch;
}

struct Loaded {
  Design design;
  AngleTable angles;
};

// Evaluation needs every referenced angle; the optimiser only needs the
// fixed ones.
Loaded load(const CommonOptions& o, bool require_all = true) {
  Loaded l;
  l.design = parse_settings(read_file(o.settings));
  l.angles = l.design.declared_angles();
  if (!o.angles.empty()) l.angles = apply_angles(l.design, l.angles, read_file(o.angles));
  if (!require_all) return l;
  for (const auto& s : l.design.settings())
    for (const auto& g : s.gates)
      if (g.parameter) l.angles.at(*g.parameter);  // every reference must now have a value
  return l;
}

// Responses and slopes are O(1); anything this small is rounding residue.
constexpr double kPrintZero = 1e-13;

std::string response_cell(double r) { return format_number(std::abs(r) <= kPrintZero ? 0.0 : r); }

std::string coefficient_cell(const Eigen::RowVectorXd& row) {
  std::string cell;
  for (int u = 0; u < row.size(); ++u) {
    if (std::abs(row[u]) <= kPrintZero) continue;
    if (!cell.empty()) cell += ';';
    cell += std::to_string(u + 1) + ':' + format_number(row[u]);
  }
  return cell;
}

int run_evaluate(const CommonOptions& o, long long shots_raw) {
  const Loaded l = load(o);
  const ShotCount shots(shots_raw);
  const auto ch = channel_of(o);
  ResponseModel model = build_model(l.design, l.angles);
  if (ch) model = apply_channel_model(model, *ch);
  const double per_shot = msd_times_n(model);

  CsvWriter csv(std::cout);
  csv.row({"setting_id", "r0", "coefficients"});
  for (int s = 0; s < model.rows(); ++s)
    csv.row({std::to_string(s + 1), response_cell(model.r0[s]), coefficient_cell(model.L.row(s))});
  csv.row({"msd_times_n", "msd", "shots", "condition_number", "singular"});
  csv.row({format_number(per_shot), format_number(per_shot / shots.as_double()), std::to_string(shots.value()),
           format_number(model.condition_number), model.singular ? "true" : "false"});
  if (model.singular) throw ExitRequest{kExitSingular, "response model is singular"};
  return 0;
}

struct OptimizeOptions {
  int starts = 200;
  std::uint64_t seed = 1;
  double tol = 1e-10;
  long max_evals = 200000;
  bool fold = false;
  std::string out;
};

int run_optimize(const CommonOptions& o, const OptimizeOptions& opt) {
  const Loaded l = load(o, false);
  if (l.design.free_count() == 0) throw ConfigurationError("settings declare no free parameters to optimise");
  OptimizeConfig cfg;
  cfg.multistart_count = opt.starts;
  cfg.rng_seed = opt.seed;
  cfg.stop_tolerance = opt.tol;
  cfg.max_evaluations = opt.max_evals;
  cfg.channel = channel_of(o);

  OptimizeResult res;
  try {
    res = minimize(l.design, cfg);
  } catch (const NoFiniteMinimumError& e) {
    throw ExitRequest{kExitOptimizer, e.what()};
  }
  const AngleTable reported = opt.fold ? fold(res.best_angles) : res.best_angles;
  const double reported_value = objective(l.design, reported, cfg.channel);

  CsvWriter csv(std::cout);
  csv.row({"best_value", "reported_value", "folded", "starts", "finite_starts", "starts_within_factor",
           "best_start", "evaluations"});
  csv.row({format_number(res.best_value), format_number(reported_value), opt.fold ? "true" : "false",
           std::to_string(opt.starts), std::to_string(res.finite_starts), std::to_string(res.starts_within_factor),
           std::to_string(res.best_start), std::to_string(res.evaluation_count)});
  csv.row({"parameter", "value_over_pi", "fixed"});
  std::vector<int> ids;
  for (const auto& p : l.design.parameters()) {
    ids.push_back(p.id);
    csv.row({"theta" + std::to_string(p.id), format_number(reported.at(p.id) / std::numbers::pi),
             p.fixed ? "true" : "false"});
  }

  if (!opt.out.empty()) {
    std::ofstream f(opt.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + opt.out);
    f << "# optimised angles, objective " << format_number(reported_value) << '\n'
      << serialize_angles(reported, ids);
  }
  return 0;
}

struct SampleOptions {
  long long shots = 10000;
  int trials = 10000;
  std::uint64_t seed = 1;
  std::string ptrue;
};

int run_sample(const CommonOptions& o, const SampleOptions& so) {
  const Loaded l = load(o);
  const ErrorVector p = so.ptrue.empty() ? ErrorVector::Zero() : parse_error_vector(read_file(so.ptrue));
  SampleConfig cfg;
  cfg.shots = ShotCount(so.shots);
  cfg.trials = so.trials;
  cfg.rng_seed = so.seed;
  cfg.channel = channel_of(o);

  ResponseModel model = build_model(l.design, l.angles);
  Eigen::VectorXd r = exact_responses(l.design, l.angles, p);
  if (cfg.channel) {
    model = apply_channel_model(model, *cfg.channel);
    r = apply_channel_response(r, *cfg.channel);
  }
  if (model.singular) throw ExitRequest{kExitSingular, "response model is singular"};

  const Eigen::MatrixXd samples = sample_estimates(r, so.shots, so.trials, so.seed);
  const SampleMoments mo = sample_moments(samples);
  const EmpiricalMsd msd = empirical_msd(model, r, p, samples, cfg.shots);
  const double n = cfg.shots.as_double();

  CsvWriter csv(std::cout);
  csv.row({"setting_id", "r_exact", "mean", "variance", "variance_times_n", "predicted_variance_times_n"});
  for (int s = 0; s < r.size(); ++s)
    csv.row({std::to_string(s + 1), response_cell(r[s]), format_number(mo.mean[s]), format_number(mo.variance[s]),
             format_number(mo.variance[s] * n), format_number(std::max(0.0, 1.0 - r[s] * r[s]))});
  csv.row({"empirical_msd", "predicted_msd", "ratio", "shots", "trials"});
  csv.row({format_number(msd.empirical), format_number(msd.predicted), format_number(msd.ratio),
           std::to_string(so.shots), std::to_string(so.trials)});
  return 0;
}

struct CalibrateOptions {
  double pnorm = 0.05;
  long long shots = 0;
  int iters = 10;
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string ptrue;
};

int run_calibrate(const CommonOptions& o, const CalibrateOptions& co) {
  const Loaded l = load(o);
  CalibrationLoopConfig cfg;
  cfg.p_true = co.ptrue.empty() ? random_error_vector(co.pnorm, co.seed) : parse_error_vector(read_file(co.ptrue));
  cfg.max_iterations = co.iters;
  cfg.convergence_norm = co.tol;
  cfg.shots_per_setting = co.shots;
  cfg.rng_seed = co.seed;

  const ResponseModel model = build_model(l.design, l.angles);
  if (model.singular) throw ExitRequest{kExitSingular, "response model is singular"};
  const CalibrationTrace trace = calibration_loop(l.design, l.angles, cfg);
  // Shot-noise floor sqrt(<D^2>) at the requested N; zero in exact mode.
  const double floor = co.shots > 0 ? std::sqrt(msd_times_n(model) / static_cast<double>(co.shots)) : 0.0;

  CsvWriter csv(std::cout);
  csv.row({"iteration", "residual_norm", "infidelity"});
  for (const auto& s : trace.steps)
    csv.row({std::to_string(s.iteration), format_number(s.residual_norm), format_number(s.infidelity)});
  csv.row({"status", "iterations", "predicted_floor"});
  csv.row({to_string(trace.status), std::to_string(trace.steps.back().iteration), format_number(floor)});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Calibration experiment design: evaluation, optimisation and Monte Carlo checks"};
  app.require_subcommand(1);

  CommonOptions eval_o, opt_o, sample_o, cal_o;
  long long eval_shots = 1;
  OptimizeOptions opt;
  SampleOptions so;
  CalibrateOptions co;

  auto* eval_cmd = app.add_subcommand("evaluate", "responses, linear coefficients and <D^2> of a design");
  add_common(eval_cmd, eval_o, true);
  eval_cmd->add_option("--shots", eval_shots, "repetitions per setting")->check(CLI::PositiveNumber);

  auto* opt_cmd = app.add_subcommand("optimize", "multistart minimisation of <D^2> N over the free angles");
  add_common(opt_cmd, opt_o, true);
  opt_cmd->add_option("--starts", opt.starts, "random starts")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--seed", opt.seed, "start-point seed");
  opt_cmd->add_option("--tol", opt.tol, "stopping tolerance on the angle step")->check(CLI::PositiveNumber);
  opt_cmd->add_option("--max-evals", opt.max_evals, "objective evaluations per start")->check(CLI::PositiveNumber);
  opt_cmd->add_flag("--fold", opt.fold, "report the folded optimum (every angle in [0, pi])");
  opt_cmd->add_option("--out", opt.out, "write the optimum as an angle file");

  auto* sample_cmd = app.add_subcommand("sample", "finite-shot sampling against the covariance model");
  add_common(sample_cmd, sample_o, true);
  sample_cmd->add_option("--shots", so.shots, "shots per setting")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--trials", so.trials, "independent repetitions")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", so.seed, "sampling seed");
  sample_cmd->add_option("--ptrue", so.ptrue, "file of p<k> = value lines (default p = 0)")
      ->check(CLI::ExistingFile);

  auto* cal_cmd = app.add_subcommand("calibrate", "closed estimate-and-correct loop on an injected error");
  add_common(cal_cmd, cal_o, false);
  cal_cmd->add_option("--pnorm", co.pnorm, "norm of the random injected error")->check(CLI::NonNegativeNumber);
  cal_cmd->add_option("--shots", co.shots, "shots per setting, 0 for exact responses")
      ->check(CLI::NonNegativeNumber);
  cal_cmd->add_option("--iters", co.iters, "maximum iterations")->check(CLI::NonNegativeNumber);
  cal_cmd->add_option("--seed", co.seed, "seed for the injected error and sampling");
  cal_cmd->add_option("--tol", co.tol, "convergence threshold on the residual norm")->check(CLI::PositiveNumber);
  cal_cmd->add_option("--ptrue", co.ptrue, "explicit injected error instead of --pnorm")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitParse;
  }

  try {
    if (*eval_cmd) return run_evaluate(eval_o, eval_shots);
    if (*opt_cmd) return run_optimize(opt_o, opt);
    if (*sample_cmd) return run_sample(sample_o, so);
    if (*cal_cmd) return run_calibrate(cal_o, co);
  } catch (const ExitRequest& e) {
    std::cout.flush();
    std::cerr << "error: " << e.message << '\n';
    return e.code;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SingularModelError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSingular;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
