#pragma once

// Shot-noise covariance, mean squared distance and the binary readout channel.

#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "gsc/linear_model.hpp"

namespace gsc {

/// Repetitions per setting, N >= 1.
class ShotCount {
 public:
  explicit ShotCount(long long n) : n_(n) {
    if (n < 1) throw std::domain_error("shot count must be >= 1");
  }
  long long value() const { return n_; }
  double as_double() const { return static_cast<double>(n_); }

 private:
  long long n_;
};

/// Asymmetric binary readout: a perfect +1 outcome reads +1 with probability
/// f_plus, a perfect -1 reads -1 with probability f_minus.
struct ReadoutChannel {
  double f_plus = 1.0;
  double f_minus = 1.0;

  ReadoutChannel() = default;
  ReadoutChannel(double fp, double fm);

  static ReadoutChannel perfect() { return {}; }
  /// F+ + F- - 1; multiplies every slope.
  double contrast() const { return f_plus + f_minus - 1.0; }
  bool is_perfect() const { return f_plus == 1.0 && f_minus == 1.0; }
  /// Probability of reading +1 given perfect-outcome probability q of +1.
  double prob_plus(double q) const { return f_plus * q + (1.0 - f_minus) * (1.0 - q); }
  double prob_minus(double q) const { return f_minus * (1.0 - q) + (1.0 - f_plus) * q; }
};

/// Value used for <D^2> when L is singular; compares above every finite value.
inline constexpr double kSingularSentinel = std::numeric_limits<double>::infinity();

/// Diagonal covariance of estimated responses, (1 - r_s^2) / N.
Eigen::MatrixXd covariance(const Eigen::VectorXd& r, ShotCount n);
Eigen::VectorXd covariance_diagonal(const Eigen::VectorXd& r, ShotCount n);

/// Tr(L^{-1} Sigma L^{-T}) with Sigma = covariance(r_at_p, N), or the
/// sentinel for a singular model.
double mean_squared_distance(const ResponseModel& model, const Eigen::VectorXd& r_at_p, ShotCount n);

/// Same at p = 0, with the variance taken from the model's outcome
/// probabilities rather than from r0.
double mean_squared_distance(const ResponseModel& model, ShotCount n);

/// <D^2> * N: the shot-count-free design figure of merit.
inline double msd_times_n(const ResponseModel& model, const Eigen::VectorXd& r_at_p) {
  return mean_squared_distance(model, r_at_p, ShotCount(1));
}

inline double msd_times_n(const ResponseModel& model) { return mean_squared_distance(model, ShotCount(1)); }

/// F+ - F- + r (F+ + F- - 1).
double apply_channel_response(double r, const ReadoutChannel& ch);
Eigen::VectorXd apply_channel_response(const Eigen::VectorXd& r, const ReadoutChannel& ch);

/// Response model seen through the channel: r0 and the outcome
/// probabilities mapped, L scaled by the contrast, conditioning recomputed.
ResponseModel apply_channel_model(const ResponseModel& model, const ReadoutChannel& ch);

/// Imperfect-readout <D^2>: the channel is applied to both the model and the
/// responses at the evaluation point.
double mean_squared_distance_imperfect(const ResponseModel& model, const Eigen::VectorXd& r_at_p,
                                       ShotCount n, const ReadoutChannel& ch);

}  // namespace gsc
