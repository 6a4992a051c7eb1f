#pragma once

// Derivative-free local minimisation inside a box.
//
// Adaptive Nelder-Mead (dimension-dependent coefficients) with every trial
// point projected onto the box. Terminates when the simplex fits inside a
// cube of side x_tolerance around its best vertex, then restarts from the
// best vertex with a fresh simplex until a restart no longer moves it.
// Objective values may be +inf (treated as worse than any finite value).

#include <functional>

#include <Eigen/Dense>

namespace gsc {

struct BoxBounds {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;

  static BoxBounds uniform(int n, double lo, double hi) {
    return {Eigen::VectorXd::Constant(n, lo), Eigen::VectorXd::Constant(n, hi)};
  }
  Eigen::VectorXd clamp(const Eigen::VectorXd& x) const { return x.cwiseMax(lower).cwiseMin(upper); }
  bool contains(const Eigen::VectorXd& x) const {
    return (x.array() >= lower.array()).all() && (x.array() <= upper.array()).all();
  }
};

struct LocalSearchOptions {
  double initial_step = 0.5;     // absolute edge length of the starting simplex
  double x_tolerance = 1e-10;    // simplex extent (max-norm) at termination
  long max_evaluations = 200000;
  int max_restarts = 4;
};

struct LocalSearchResult {
  Eigen::VectorXd x;
  double value = 0.0;
  long evaluations = 0;
  bool converged = false;  // false: evaluation budget exhausted
};

using ObjectiveFn = std::function<double(const Eigen::VectorXd&)>;

LocalSearchResult minimize_in_box(const ObjectiveFn& f, const Eigen::VectorXd& x0, const BoxBounds& box,
                                  const LocalSearchOptions& opts);

}  // namespace gsc
