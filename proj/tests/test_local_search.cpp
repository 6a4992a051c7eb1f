#include <doctest.h>

#include <cmath>
#include <limits>

#include "gsc/local_search.hpp"

using namespace gsc;

TEST_CASE("quadratic bowl inside the box") {
  const Eigen::VectorXd centre = (Eigen::VectorXd(4) << 0.3, -1.2, 2.0, 0.7).finished();
  auto f = [&](const Eigen::VectorXd& x) { return (x - centre).squaredNorm(); };
  const BoxBounds box = BoxBounds::uniform(4, -3.0, 3.0);
  LocalSearchOptions opts;
  opts.x_tolerance = 1e-10;
  const auto r = minimize_in_box(f, Eigen::VectorXd::Zero(4), box, opts);
  CHECK(r.converged);
  CHECK((r.x - centre).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(r.value < 1e-16);
  CHECK(r.evaluations > 0);
}

TEST_CASE("minimum on the boundary is reached without leaving the box") {
  // Unconstrained minimum at (-2, 5); the box clips it to (-1, 1).
  long outside = 0;
  const BoxBounds box = BoxBounds::uniform(2, -1.0, 1.0);
  auto f = [&](const Eigen::VectorXd& x) {
    if (!box.contains(x)) ++outside;
    return (x[0] + 2) * (x[0] + 2) + (x[1] - 5) * (x[1] - 5);
  };
  const auto r = minimize_in_box(f, Eigen::VectorXd::Zero(2), box, {});
  CHECK(outside == 0);
  CHECK(r.x[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Rosenbrock valley") {
  auto f = [](const Eigen::VectorXd& x) {
    return 100 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1 - x[0], 2);
  };
  const auto r = minimize_in_box(f, (Eigen::VectorXd(2) << -1.2, 1.0).finished(), BoxBounds::uniform(2, -5, 5), {});
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-7));
  CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("infinite and NaN regions are avoided") {
  auto f = [](const Eigen::VectorXd& x) {
    if (x[0] < 0.5) return std::numeric_limits<double>::infinity();
    if (x[0] > 2.5) return std::nan("");
    return (x[0] - 1.0) * (x[0] - 1.0) + x[1] * x[1];
  };
  const auto r = minimize_in_box(f, (Eigen::VectorXd(2) << 2.0, 1.0).finished(), BoxBounds::uniform(2, 0, 3), {});
  CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(r.x[1]) < 1e-8);
}

TEST_CASE("evaluation budget is honoured") {
  long calls = 0;
  auto f = [&](const Eigen::VectorXd& x) {
    ++calls;
    return x.squaredNorm();
  };
  LocalSearchOptions opts;
  opts.max_evaluations = 50;
  const auto r = minimize_in_box(f, Eigen::VectorXd::Constant(6, 1.0), BoxBounds::uniform(6, -2, 2), opts);
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations == calls);
  // The budget check happens per iteration; a shrink may add n evaluations.
  CHECK(calls <= 50 + 6 + 1);
}

TEST_CASE("deterministic") {
  auto f = [](const Eigen::VectorXd& x) { return std::sin(3 * x[0]) + std::cos(2 * x[1]) + 0.1 * x.squaredNorm(); };
  const BoxBounds box = BoxBounds::uniform(2, 0, 6);
  const Eigen::VectorXd x0 = (Eigen::VectorXd(2) << 4.0, 1.0).finished();
  const auto a = minimize_in_box(f, x0, box, {});
  const auto b = minimize_in_box(f, x0, box, {});
  CHECK((a.x.array() == b.x.array()).all());
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("argument validation") {
  auto f = [](const Eigen::VectorXd& x) { return x.squaredNorm(); };
  CHECK_THROWS_AS(minimize_in_box(f, Eigen::VectorXd(), BoxBounds::uniform(0, 0, 1), {}), std::invalid_argument);
  CHECK_THROWS_AS(minimize_in_box(f, Eigen::VectorXd::Zero(2), BoxBounds::uniform(3, 0, 1), {}),
                  std::invalid_argument);
  LocalSearchOptions bad;
  bad.x_tolerance = 0.0;
  CHECK_THROWS_AS(minimize_in_box(f, Eigen::VectorXd::Zero(2), BoxBounds::uniform(2, 0, 1), bad),
                  std::invalid_argument);
}
