#pragma once

// Linearised response model R(p) = R(0) + L p and its inversion.

#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

#include "gsc/quantum.hpp"
#include "gsc/setting.hpp"

namespace gsc {

/// Relative singular-value threshold: L is treated as singular when
/// sigma_min < kSingularityThreshold * sigma_max.
inline constexpr double kSingularityThreshold = 1e-8;

class SingularModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SingularityReport {
  double condition_number = 0.0;  // +inf when singular
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
  bool singular = true;
};

struct ResponseModel {
  Eigen::VectorXd r0;  // baseline responses, one per setting
  Eigen::MatrixXd L;   // m x 15, L(s, u-1) = dR_s/dp_u at p = 0
  // Outcome probabilities at p = 0. Kept next to r0 because 1 - r0^2
  // formed from r0 loses all precision as |r0| -> 1.
  Eigen::VectorXd prob_plus;
  Eigen::VectorXd prob_minus;
  double condition_number = std::numeric_limits<double>::infinity();
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
  bool singular = true;

  int rows() const { return static_cast<int>(r0.size()); }
  /// Single-shot variance 1 - r0^2 per setting, as 4 P+ P-.
  Eigen::VectorXd shot_variance() const { return 4.0 * prob_plus.cwiseProduct(prob_minus); }
};

/// Analytic R(0) and L for the design at the given angles.
ResponseModel build_model(const Design& design, const AngleTable& angles);
inline ResponseModel build_model(const Design& design) {
  return build_model(design, design.declared_angles());
}

/// Singular-value summary of a raw matrix; m < 15 rows counts as singular.
SingularityReport analyse_singularity(const Eigen::MatrixXd& L);
SingularityReport singularity_report(const ResponseModel& model);

/// Recomputes the conditioning fields of `model` from its L.
void refresh_conditioning(ResponseModel& model);

/// p = L^{-1} (r_measured - r0). Square models only.
ErrorVector solve_inverse(const ResponseModel& model, const Eigen::VectorXd& r_measured);

/// Exact responses R_s(p) of every setting.
Eigen::VectorXd exact_responses(const Design& design, const AngleTable& angles, const ErrorVector& p);
Eigen::VectorXd exact_responses_with_gate(const Design& design, const AngleTable& angles,
                                          const Matrix4cd& cnot_gate);

}  // namespace gsc
