#include "gsc/statistics.hpp"

#include <cmath>
#include <string>

namespace gsc {

namespace {
constexpr double kResponseSlack = 1e-9;
}

ReadoutChannel::ReadoutChannel(double fp, double fm) : f_plus(fp), f_minus(fm) {
  if (!(fp >= 0.0 && fp <= 1.0) || !(fm >= 0.0 && fm <= 1.0))
    throw std::domain_error("readout fidelities must lie in [0, 1]");
}

namespace {
double weighted_trace(const Eigen::MatrixXd& L, const Eigen::VectorXd& sigma) {
  // Tr(L^-1 S L^-T) = || L^-1 S^{1/2} ||_F^2 for diagonal S.
  const Eigen::MatrixXd x = L.partialPivLu().solve(Eigen::MatrixXd(sigma.cwiseSqrt().asDiagonal()));
  const double value = x.squaredNorm();
  return std::isfinite(value) ? value : kSingularSentinel;
}
}  // namespace

Eigen::VectorXd covariance_diagonal(const Eigen::VectorXd& r, ShotCount n) {
  Eigen::VectorXd d(r.size());
  for (Eigen::Index s = 0; s < r.size(); ++s) {
    if (!(std::abs(r[s]) <= 1.0 + kResponseSlack))
      throw std::domain_error("response " + std::to_string(r[s]) + " outside [-1, 1]");
    d[s] = std::max(0.0, 1.0 - r[s] * r[s]) / n.as_double();
  }
  return d;
}

Eigen::MatrixXd covariance(const Eigen::VectorXd& r, ShotCount n) {
  return covariance_diagonal(r, n).asDiagonal();
}

double mean_squared_distance(const ResponseModel& model, const Eigen::VectorXd& r_at_p, ShotCount n) {
  if (model.singular || model.rows() != kNumPaulis) return kSingularSentinel;
  return weighted_trace(model.L, covariance_diagonal(r_at_p, n));
}


double mean_squared_distance(const ResponseModel& model, ShotCount n) {
  if (model.singular || model.rows() != kNumPaulis) return kSingularSentinel;
  return weighted_trace(model.L, model.shot_variance() / n.as_double());
}

double apply_channel_response(double r, const ReadoutChannel& ch) {
  return ch.f_plus - ch.f_minus + r * ch.contrast();
}

Eigen::VectorXd apply_channel_response(const Eigen::VectorXd& r, const ReadoutChannel& ch) {
  Eigen::VectorXd out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = apply_channel_response(r[i], ch);
  return out;
}

ResponseModel apply_channel_model(const ResponseModel& model, const ReadoutChannel& ch) {
  if (ch.is_perfect()) return model;
  ResponseModel out;
  out.r0 = apply_channel_response(model.r0, ch);
  out.L = ch.contrast() * model.L;
  out.prob_plus.resize(model.rows());
  out.prob_minus.resize(model.rows());
  for (int s = 0; s < model.rows(); ++s) {
    const double p = model.prob_plus[s], q = model.prob_minus[s];
    out.prob_plus[s] = ch.f_plus * p + (1.0 - ch.f_minus) * q;
    out.prob_minus[s] = ch.f_minus * q + (1.0 - ch.f_plus) * p;
  }
  refresh_conditioning(out);
  return out;
}

double mean_squared_distance_imperfect(const ResponseModel& model, const Eigen::VectorXd& r_at_p,
                                       ShotCount n, const ReadoutChannel& ch) {
  if (ch.is_perfect()) return mean_squared_distance(model, r_at_p, n);
  return mean_squared_distance(apply_channel_model(model, ch), apply_channel_response(r_at_p, ch), n);
}

}  // namespace gsc
