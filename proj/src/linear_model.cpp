#include "gsc/linear_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gsc/response.hpp"

namespace gsc {

SingularityReport analyse_singularity(const Eigen::MatrixXd& L) {
  SingularityReport rep;
  if (L.size() == 0 || !L.allFinite()) return rep;
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(L).singularValues();
  rep.max_singular_value = sv[0];
  rep.min_singular_value = L.rows() < L.cols() ? 0.0 : sv[sv.size() - 1];
  rep.singular = L.rows() < kNumPaulis || L.cols() != kNumPaulis ||
                 !(rep.min_singular_value >= kSingularityThreshold * rep.max_singular_value) ||
                 rep.max_singular_value == 0.0;
  rep.condition_number = rep.singular ? std::numeric_limits<double>::infinity()
                                      : rep.max_singular_value / rep.min_singular_value;
  return rep;
}

void refresh_conditioning(ResponseModel& model) {
  const SingularityReport rep = analyse_singularity(model.L);
  model.condition_number = rep.condition_number;
  model.min_singular_value = rep.min_singular_value;
  model.max_singular_value = rep.max_singular_value;
  model.singular = rep.singular;
}

SingularityReport singularity_report(const ResponseModel& model) {
  return {model.condition_number, model.min_singular_value, model.max_singular_value, model.singular};
}

ResponseModel build_model(const Design& design, const AngleTable& angles) {
  ResponseModel model;
  const int m = design.size();
  model.r0.resize(m);
  model.L.resize(m, kNumPaulis);
  model.prob_plus.resize(m);
  model.prob_minus.resize(m);
  for (int s = 0; s < m; ++s) {
    const LinearResponse lr = linear_response(design.settings()[s], angles);
    model.r0[s] = lr.value;
    model.prob_plus[s] = lr.prob_plus;
    model.prob_minus[s] = lr.prob_minus;
    model.L.row(s) = lr.gradient.transpose();
  }
  refresh_conditioning(model);
  return model;
}

ErrorVector solve_inverse(const ResponseModel& model, const Eigen::VectorXd& r_measured) {
  if (model.rows() != kNumPaulis || model.L.cols() != kNumPaulis)
    throw DimensionError("inverse requires exactly 15 settings, model has " + std::to_string(model.rows()));
  if (r_measured.size() != model.rows())
    throw DimensionError("measured response vector has wrong length");
  if (model.singular) throw SingularModelError("response model is singular");
  return model.L.partialPivLu().solve(r_measured - model.r0);
}

Eigen::VectorXd exact_responses_with_gate(const Design& design, const AngleTable& angles,
                                          const Matrix4cd& cnot_gate) {
  Eigen::VectorXd r(design.size());
  for (int s = 0; s < design.size(); ++s) r[s] = response_with_gate(design.settings()[s], cnot_gate, angles);
  return r;
}

Eigen::VectorXd exact_responses(const Design& design, const AngleTable& angles, const ErrorVector& p) {
  return exact_responses_with_gate(design, angles, perturbed_cnot(p));
}

}  // namespace gsc
