#include "gsc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gsc/quantum.hpp"
#include "gsc/rng.hpp"

namespace gsc {

Eigen::MatrixXd sample_estimates(const Eigen::VectorXd& responses, long long shots, int trials,
                                 std::uint64_t seed, std::uint64_t stream_key) {
  if (shots < 1) throw std::domain_error("shot count must be >= 1");
  if (trials < 1) throw std::domain_error("trial count must be >= 1");
  const int m = static_cast<int>(responses.size());
  Eigen::MatrixXd out(trials, m);
  for (int s = 0; s < m; ++s) {
    const double q = std::clamp((1.0 + responses[s]) / 2.0, 0.0, 1.0);
    for (int t = 0; t < trials; ++t) {
      auto g = make_stream(seed, {stream_key, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(s)});
      std::binomial_distribution<long long> dist(shots, q);
      const long long plus = dist(g);
      out(t, s) = static_cast<double>(2 * plus - shots) / static_cast<double>(shots);
    }
  }
  return out;
}

Eigen::MatrixXd sample_responses(const Design& design, const AngleTable& angles, const ErrorVector& p,
                                 const SampleConfig& cfg) {
  Eigen::VectorXd r = exact_responses(design, angles, p);
  if (cfg.channel) r = apply_channel_response(r, *cfg.channel);
  return sample_estimates(r, cfg.shots.value(), cfg.trials, cfg.rng_seed);
}

SampleMoments sample_moments(const Eigen::MatrixXd& samples) {
  SampleMoments mo;
  const double t = static_cast<double>(samples.rows());
  mo.mean = samples.colwise().mean().transpose();
  const Eigen::MatrixXd centred = samples.rowwise() - mo.mean.transpose();
  mo.covariance = (centred.transpose() * centred) / std::max(1.0, t - 1.0);
  mo.variance = mo.covariance.diagonal();
  return mo;
}

EmpiricalMsd empirical_msd(const Design& design, const AngleTable& angles, const ErrorVector& p,
                           const SampleConfig& cfg) {
  ResponseModel model = build_model(design, angles);
  Eigen::VectorXd r_at_p = exact_responses(design, angles, p);
  if (cfg.channel) {
    model = apply_channel_model(model, *cfg.channel);
    r_at_p = apply_channel_response(r_at_p, *cfg.channel);
  }
  if (model.singular) throw SingularModelError("cannot estimate errors with a singular design");
  return empirical_msd(model, r_at_p, p, sample_responses(design, angles, p, cfg), cfg.shots);
}

EmpiricalMsd empirical_msd(const ResponseModel& model, const Eigen::VectorXd& r_at_p, const ErrorVector& p,
                           const Eigen::MatrixXd& samples, ShotCount shots) {
  if (model.singular || model.rows() != kNumPaulis)
    throw SingularModelError("cannot estimate errors with a singular design");
  if (samples.cols() != model.rows() || samples.rows() == 0)
    throw DimensionError("sample matrix does not match the model");
  const auto lu = model.L.partialPivLu();
  const auto trials = samples.rows();
  EmpiricalMsd out;
  double sum = 0.0;
  for (Eigen::Index t = 0; t < trials; ++t) {
    const ErrorVector p_hat = lu.solve(samples.row(t).transpose() - model.r0);
    sum += (p_hat - p).squaredNorm();
    out.mean_estimate += p_hat;
  }
  out.mean_estimate /= static_cast<double>(trials);
  out.empirical = sum / static_cast<double>(trials);
  out.predicted = mean_squared_distance(model, r_at_p, shots);
  out.ratio = out.empirical / out.predicted;
  return out;
}

std::string to_string(LoopStatus s) {
  switch (s) {
    case LoopStatus::Converged: return "converged";
    case LoopStatus::Diverged: return "diverged";
    case LoopStatus::MaxedOut: return "maxed";
  }
  return "unknown";
}

CalibrationTrace calibration_loop(const Design& design, const AngleTable& angles,
                                  const CalibrationLoopConfig& cfg) {
  if (!(cfg.convergence_norm > 0.0)) throw std::domain_error("convergence_norm must be positive");
  if (cfg.max_iterations < 0) throw std::domain_error("max_iterations must be >= 0");
  if (cfg.shots_per_setting < 0) throw std::domain_error("shots must be >= 0");

  const ResponseModel model = build_model(design, angles);
  if (model.singular) throw SingularModelError("cannot calibrate with a singular design");
  const auto lu = model.L.partialPivLu();
  const Matrix4cd ideal = cnot<double>();

  CalibrationTrace trace;
  Matrix4cd residual = error_operator_exact(cfg.p_true);
  const double initial_norm = error_vector_of(residual).norm();
  int rising = 0;
  for (int it = 0;; ++it) {
    const ErrorVector p_res = error_vector_of(residual);
    const double norm = p_res.norm();
    trace.steps.push_back({it, norm, 1.0 - average_gate_fidelity(residual)});
    trace.final_residual = p_res;
    if (norm <= cfg.convergence_norm) {
      trace.status = LoopStatus::Converged;
      break;
    }
    if (it > 0) {
      rising = norm > trace.steps[it - 1].residual_norm ? rising + 1 : 0;
      if (rising >= 3 && norm > initial_norm) {
        trace.status = LoopStatus::Diverged;
        break;
      }
    }
    if (it >= cfg.max_iterations) {
      trace.status = LoopStatus::MaxedOut;
      break;
    }

    Eigen::VectorXd r = exact_responses_with_gate(design, angles, ideal * residual);
    if (cfg.shots_per_setting > 0)
      r = sample_estimates(r, cfg.shots_per_setting, 1, cfg.rng_seed, static_cast<std::uint64_t>(it) + 1)
              .row(0)
              .transpose();
    const ErrorVector p_hat = lu.solve(r - model.r0);
    residual = residual * error_operator_exact(-p_hat);
  }
  return trace;
}

ErrorVector random_error_vector(double norm, std::uint64_t seed) {
  auto g = make_stream(seed, {0x5054525545ull});
  // Box-Muller on the portable uniform, so directions match across toolchains.
  ErrorVector v;
  for (int k = 0; k < kNumPaulis; ++k) {
    const double u1 = 1.0 - uniform01(g);
    const double u2 = uniform01(g);
    v[k] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  if (norm == 0.0) return ErrorVector::Zero();
  return norm * v / v.norm();
}

}  // namespace gsc
