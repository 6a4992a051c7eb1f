#pragma once

// Finite-shot sampling of responses and Monte Carlo checks of the
// statistical model, plus an abstract closed calibration loop.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gsc/linear_model.hpp"
#include "gsc/setting.hpp"
#include "gsc/statistics.hpp"

namespace gsc {

struct SampleConfig {
  ShotCount shots{1000};
  int trials = 1000;
  std::uint64_t rng_seed = 1;
  std::optional<ReadoutChannel> channel;
};

/// Estimate (N+ - N-)/N per setting when the +1 outcome has probability
/// (1 + r_s)/2. Stream for (trial, setting) is keyed on (seed, stream_key,
/// trial, setting).
Eigen::MatrixXd sample_estimates(const Eigen::VectorXd& responses, long long shots, int trials,
                                 std::uint64_t seed, std::uint64_t stream_key = 0);

/// trials x m matrix of estimated responses R*_s for the design at error p.
/// With a channel, the channel-transformed responses are sampled.
Eigen::MatrixXd sample_responses(const Design& design, const AngleTable& angles, const ErrorVector& p,
                                 const SampleConfig& cfg);

struct SampleMoments {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;  // unbiased
  Eigen::MatrixXd covariance;
};
SampleMoments sample_moments(const Eigen::MatrixXd& samples);

struct EmpiricalMsd {
  double empirical = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
  ErrorVector mean_estimate = ErrorVector::Zero();
};

/// Mean over trials of ||p_hat - p||^2 against the predicted <D^2>.
/// Throws SingularModelError for a singular design.
EmpiricalMsd empirical_msd(const Design& design, const AngleTable& angles, const ErrorVector& p,
                           const SampleConfig& cfg);
/// Same statistic from samples already drawn. `model` and `r_at_p` must be
/// the ones the samples were drawn through (channel applied if any).
EmpiricalMsd empirical_msd(const ResponseModel& model, const Eigen::VectorXd& r_at_p, const ErrorVector& p,
                           const Eigen::MatrixXd& samples, ShotCount shots);

struct CalibrationLoopConfig {
  ErrorVector p_true = ErrorVector::Zero();
  int max_iterations = 10;
  double convergence_norm = 1e-8;
  long long shots_per_setting = 0;  // 0: exact responses
  std::uint64_t rng_seed = 1;
};

struct CalibrationStep {
  int iteration = 0;
  double residual_norm = 0.0;
  double infidelity = 0.0;
};

enum class LoopStatus { Converged, Diverged, MaxedOut };
std::string to_string(LoopStatus s);

struct CalibrationTrace {
  std::vector<CalibrationStep> steps;
  LoopStatus status = LoopStatus::MaxedOut;
  ErrorVector final_residual = ErrorVector::Zero();
};

/// Estimate-and-correct iterations: the corrected gate is the current gate
/// times E(p_hat)^-1, so the residual error operator becomes
/// E_res E(p_hat)^-1. Divergence (norm rising three iterations in a row
/// while above the initial norm) stops the loop and is reported.
CalibrationTrace calibration_loop(const Design& design, const AngleTable& angles,
                                  const CalibrationLoopConfig& cfg);

/// Direction drawn uniformly on the unit sphere, scaled to `norm`.
ErrorVector random_error_vector(double norm, std::uint64_t seed);

}  // namespace gsc
