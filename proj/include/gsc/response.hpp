#pragma once

// Measurement responses Tr[U rho U^dagger M] for rho = |00><00|.

#include "gsc/quantum.hpp"
#include "gsc/setting.hpp"

namespace gsc {

/// Response of `setting` when every CNOT token is realised by `cnot_gate`.
double response_with_gate(const Setting& setting, const Matrix4cd& cnot_gate,
                          const AngleTable& angles);

/// Response with each CNOT replaced by perturbed_cnot(p); all CNOT tokens
/// share the same error.
double response(const Setting& setting, const ErrorVector& p, const AngleTable& angles);

/// Response at p = 0 together with its gradient d R / d p at p = 0.
/// The gradient sums the first-order contribution of every CNOT occurrence.
struct LinearResponse {
  double value = 0.0;
  // Outcome probabilities; 4 prob_plus prob_minus = 1 - value^2 without the
  // cancellation of forming it from value near +-1.
  double prob_plus = 0.5;
  double prob_minus = 0.5;
  ErrorVector gradient = ErrorVector::Zero();
};
LinearResponse linear_response(const Setting& setting, const AngleTable& angles);

/// Output state U|00> for the given CNOT realisation.
Vector4cd output_state(const Setting& setting, const Matrix4cd& cnot_gate,
                       const AngleTable& angles);

}  // namespace gsc
