#pragma once

// Independent reference values for the test suites. Nothing here calls the
// analytic derivative code: Jacobians come from finite differences of exact
// responses, and the closed forms below were derived symbolically.

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "gsc/linear_model.hpp"
#include "gsc/setting.hpp"
#include "gsc/settings_io.hpp"

namespace oracle {

inline constexpr double kPi = std::numbers::pi;

inline std::string data_path(const std::string& name) { return std::string(GSC_DATA_DIR) + "/" + name; }

inline gsc::Design load_design(const std::string& name) {
  return gsc::parse_settings(gsc::read_file(data_path(name)));
}

inline gsc::AngleTable load_angles(const gsc::Design& d, const std::string& name) {
  return gsc::apply_angles(d, d.declared_angles(), gsc::read_file(data_path(name)));
}

/// Central-difference Jacobian of the exact responses at p = 0.
inline Eigen::MatrixXd fd_jacobian(const gsc::Design& d, const gsc::AngleTable& a, double h) {
  Eigen::MatrixXd J(d.size(), gsc::kNumPaulis);
  for (int u = 0; u < gsc::kNumPaulis; ++u) {
    gsc::ErrorVector e = gsc::ErrorVector::Zero();
    e[u] = h;
    J.col(u) = (gsc::exact_responses(d, a, e) - gsc::exact_responses(d, a, -e)) / (2.0 * h);
  }
  return J;
}

/// Richardson combination of two central differences, O(h^4).
inline Eigen::MatrixXd fd_jacobian_richardson(const gsc::Design& d, const gsc::AngleTable& a, double h) {
  return (4.0 * fd_jacobian(d, a, h / 2) - fd_jacobian(d, a, h)) / 3.0;
}

using Row = std::vector<std::pair<int, double>>;

inline Eigen::MatrixXd from_rows(const std::vector<Row>& rows) {
  Eigen::MatrixXd L = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), gsc::kNumPaulis);
  for (size_t s = 0; s < rows.size(); ++s)
    for (const auto& [k, v] : rows[s]) L(static_cast<Eigen::Index>(s), k - 1) = v;
  return L;
}

/// Linear responses of the quarter-turn reference design, reference values.
inline Eigen::MatrixXd reference_coefficients() {
  return from_rows({
      {{5, -2}, {10, 2}},
      {{4, -2}, {7, -2}},
      {{6, -2}, {9, -2}},
      {{8, -2}, {11, -2}},
      {{1, -2}, {13, -2}},
      {{2, -2}, {14, -2}},
      {{2, -2}, {10, 2}},
      {{6, -2}, {13, -2}},
      {{10, 2}, {13, 2}},
      {{7, -2}, {13, -2}},
      {{2, -2}, {6, -2}},
      {{11, -2}, {14, -2}},
      {{3, 2}, {15, 2}},
      {{3, -2}, {12, -4}, {15, -2}},
      {{6, -2}, {15, 2}},
  });
}

/// Linear responses of the single-extra-angle design, reference values.
inline Eigen::MatrixXd reduced_coefficients(double theta) {
  const double s = std::sin(theta), c = std::cos(theta);
  return from_rows({
      {{5, -2}, {10, 2}},
      {{4, -2}, {7, -2}},
      {{6, -2}, {9, -2}},
      {{8, -2}, {11, -2}},
      {{1, -2}, {13, -2}},
      {{2, -2}, {14, -2}},
      {{2, -2 * s}, {5, -2 * c}, {10, 2}},
      {{6, -2}, {9, -2 * c}, {13, -2 * s}},
      {{5, -2 * c}, {10, 2}, {13, 2 * s}},
      {{4, 2}, {7, -2}},
      {{2, -2 * s}, {6, -2}, {9, -2 * c}},
      {{8, 2}, {11, -2}},
      {{3, 2}, {15, 2}},
      {{3, -2}, {12, -4}, {15, -2}},
      {{3, -2}, {15, 2}},
  });
}

struct ClosedForm {
  Eigen::VectorXd r0;
  Eigen::MatrixXd L;
};

/// First-order responses of the 25-angle design, t[i] = theta_i (t[0]
/// unused). Baselines are products of cosines; the slopes carry sines of
/// the angles that multiply them (symbolic derivation).
inline ClosedForm closed_form_25(const std::array<double, 26>& t) {
  auto S = [&](int i) { return std::sin(t[i]); };
  auto C = [&](int i) { return std::cos(t[i]); };
  ClosedForm f;
  f.r0.resize(15);
  f.r0 << C(15), C(1), C(16), C(2), C(17), C(18), C(3) * C(19), C(4) * C(20), C(5) * C(21), C(6) * C(7),
      C(8) * C(22), C(9) * C(10), C(11) * C(23), C(12) * C(24), C(13) * C(14) * C(25);

  std::vector<Row> rows(15);
  rows[0] = {{5, -2 * S(15)}, {10, 2 * S(15)}};
  rows[1] = {{4, -2 * S(1)}, {7, -2 * S(1)}};
  rows[2] = {{6, -2 * S(16)}, {9, -2 * S(16)}};
  rows[3] = {{8, -2 * S(2)}, {11, -2 * S(2)}};
  rows[4] = {{1, -2 * S(17)}, {13, -2 * S(17)}};
  rows[5] = {{2, -2 * S(18)}, {14, -2 * S(18)}};
  {
    const double sa = S(3), ca = C(3), sb = S(19), cb = C(19);
    rows[6] = {{2, -2 * sb * sa}, {4, -2 * sa * cb}, {5, -2 * sb * ca}, {7, -2 * sa * cb}, {10, 2 * sb}};
  }
  {
    const double sa = S(4), ca = C(4), sb = S(20), cb = C(20);
    rows[7] = {{4, -2 * sa * cb}, {6, -2 * sb}, {7, -2 * sa * cb}, {9, -2 * sb * ca}, {13, -2 * sb * sa}};
  }
  {
    const double sa = S(5), ca = C(5), sb = S(21), cb = C(21);
    rows[8] = {{5, -2 * sb * ca}, {8, -2 * sa * cb}, {10, 2 * sb}, {11, -2 * sa * cb}, {13, 2 * sb * sa}};
  }
  {
    const double sa = S(6), ca = C(6), sb = S(7), cb = C(7);
    rows[9] = {{1, -2 * sb * ca}, {4, -2 * sa * cb}, {7, -2 * sa}, {13, -2 * sb}};
  }
  {
    const double sa = S(8), ca = C(8), sb = S(22), cb = C(22);
    rows[10] = {{2, -2 * sb * sa}, {6, -2 * sb}, {8, -2 * sa * cb}, {9, -2 * sb * ca}, {11, -2 * sa * cb}};
  }
  {
    const double sa = S(9), ca = C(9), sb = S(10), cb = C(10);
    rows[11] = {{2, -2 * sb * ca}, {8, -2 * sa * cb}, {11, -2 * sa}, {14, -2 * sb}};
  }
  {
    const double sa = S(11), ca = C(11), sb = S(23), cb = C(23);
    rows[12] = {{1, -2 * sb * ca}, {2, -2 * sa * cb}, {3, 2 * sa * sb},
                {13, -2 * sb * ca}, {14, -2 * sa * cb}, {15, 2 * sa * sb}};
  }
  {
    const double sa = S(12), ca = C(12), sb = S(24), cb = C(24);
    rows[13] = {{3, -2 * sa * sb},  {4, -2 * sa * cb},  {5, -2 * sa * cb},  {6, -2 * sb * ca},
                {7, -2 * sa * cb},  {8, -2 * sb * ca},  {9, -2 * sb * ca},  {10, 2 * sa * cb},
                {11, -2 * sb * ca}, {12, -4 * sa * sb}, {15, -2 * sa * sb}};
  }
  {
    const double sa = S(13), ca = C(13), sb = S(14), cb = C(14), sc = S(25), cc = C(25);
    rows[14] = {{1, -2 * sc * ca * cb}, {2, -2 * sb * ca * cc}, {3, 2 * sb * sc * ca},
                {4, -2 * sa * cb * cc}, {6, -2 * sa * sc},      {7, -2 * sa * cc},
                {13, -2 * sc * cb},     {14, -2 * sb * cc},     {15, 2 * sb * sc}};
  }
  f.L = from_rows(rows);
  return f;
}

}  // namespace oracle
