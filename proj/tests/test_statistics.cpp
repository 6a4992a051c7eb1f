#include <doctest.h>

#include <random>

#include "gsc/response.hpp"
#include "gsc/statistics.hpp"
#include "oracles.hpp"

using namespace gsc;

namespace {

ResponseModel diagonal_model(double slope) {
  ResponseModel m;
  m.r0 = Eigen::VectorXd::Zero(15);
  m.prob_plus = m.prob_minus = Eigen::VectorXd::Constant(15, 0.5);
  m.L = slope * Eigen::MatrixXd::Identity(15, 15);
  refresh_conditioning(m);
  return m;
}

}  // namespace

TEST_CASE("covariance") {
  const Eigen::MatrixXd s0 = covariance(Eigen::VectorXd::Zero(15), ShotCount(50));
  CHECK((s0 - Eigen::MatrixXd::Identity(15, 15) / 50.0).cwiseAbs().maxCoeff() == 0.0);

  Eigen::VectorXd r(3);
  r << 1.0, -1.0, 0.6;
  const Eigen::VectorXd d = covariance_diagonal(r, ShotCount(100));
  CHECK(d[0] == 0.0);
  CHECK(d[1] == 0.0);
  CHECK(d[2] == doctest::Approx(0.0064));

  Eigen::VectorXd bad(1);
  bad << 1.01;
  CHECK_THROWS_AS(covariance(bad, ShotCount(1)), std::domain_error);
  bad << 1.0 + 1e-10;  // rounding slack
  CHECK(covariance_diagonal(bad, ShotCount(1))[0] == 0.0);
  CHECK_THROWS_AS(ShotCount(0), std::domain_error);
}

TEST_CASE("covariance entries lie in [0, 1/N] and peak at r = 0") {
  for (double r : {-1.0, -0.9, -0.5, 0.0, 0.3, 0.9, 1.0}) {
    Eigen::VectorXd v(1);
    v << r;
    const double s = covariance_diagonal(v, ShotCount(8))[0];
    CHECK(s >= 0.0);
    CHECK(s <= 1.0 / 8);
    CHECK((s == 1.0 / 8) == (r == 0.0));
  }
}

TEST_CASE("mean squared distance of a diagonal design") {
  const ResponseModel m = diagonal_model(2.0);
  CHECK(mean_squared_distance(m, m.r0, ShotCount(1)) == doctest::Approx(15.0 / 4.0));
  CHECK(mean_squared_distance(m, m.r0, ShotCount(10)) == doctest::Approx(15.0 / 40.0));
  CHECK(msd_times_n(m) == doctest::Approx(15.0 / 4.0));
}

TEST_CASE("reference design gives about 7.4 / N") {
  const Design d = oracle::load_design("reference.gsc");
  const ResponseModel m = build_model(d);
  const double v = mean_squared_distance(m, m.r0, ShotCount(1));
  CHECK(v == doctest::Approx(7.4).epsilon(0.05 / 7.4));
  CHECK(v == doctest::Approx(7.375).epsilon(1e-12));
  CHECK(msd_times_n(m) == doctest::Approx(v).epsilon(1e-14));
}

TEST_CASE("optimal 25-angle design gives about 3.4 / N") {
  const Design d = oracle::load_design("free_angles.gsc");
  const ResponseModel m = build_model(d, oracle::load_angles(d, "optimal_perfect.angles"));
  CHECK(std::abs(msd_times_n(m) - 3.4) <= 0.05);
}

TEST_CASE("<D^2> is exactly homogeneous in 1/N") {
  const Design d = oracle::load_design("free_angles.gsc");
  const ResponseModel m = build_model(d, oracle::load_angles(d, "optimal_perfect.angles"));
  const double one = mean_squared_distance(m, m.r0, ShotCount(3));
  for (long long k : {2LL, 7LL, 1000LL})
    CHECK(mean_squared_distance(m, m.r0, ShotCount(3 * k)) == doctest::Approx(one / k).epsilon(1e-13));
}

TEST_CASE("singular and non-square models return the sentinel") {
  ResponseModel m = diagonal_model(2.0);
  m.L(3, 3) = 0.0;
  refresh_conditioning(m);
  CHECK(std::isinf(mean_squared_distance(m, m.r0, ShotCount(1))));
  CHECK(std::isinf(msd_times_n(m)));
  CHECK(kSingularSentinel > 1e300);

  const Design d = oracle::load_design("reference.gsc").truncated(14);
  const ResponseModel small = build_model(d);
  CHECK(std::isinf(mean_squared_distance(small, small.r0, ShotCount(1))));
}

TEST_CASE("readout channel on responses") {
  const ReadoutChannel perfect;
  for (double r : {-1.0, -0.3, 0.0, 0.8}) CHECK(apply_channel_response(r, perfect) == r);
  CHECK(apply_channel_response(0.0, ReadoutChannel(0.99, 0.98)) == doctest::Approx(0.01));
  for (double r : {-1.0, 0.2, 1.0}) CHECK(apply_channel_response(r, ReadoutChannel(0.5, 0.5)) == 0.0);
  CHECK_THROWS_AS(ReadoutChannel(1.2, 0.9), std::domain_error);
  CHECK_THROWS_AS(ReadoutChannel(0.9, -0.1), std::domain_error);

  const ReadoutChannel ch(0.93, 0.81);
  for (double q : {0.0, 0.25, 1.0}) {
    CHECK(ch.prob_plus(q) + ch.prob_minus(q) == doctest::Approx(1.0).epsilon(1e-15));
    const double r = 2 * q - 1;
    CHECK(ch.prob_plus(q) - ch.prob_minus(q) == doctest::Approx(apply_channel_response(r, ch)));
    CHECK(std::abs(apply_channel_response(r, ch)) <= 1.0);
  }
}

TEST_CASE("two channels compose into one affine map") {
  const ReadoutChannel f(0.97, 0.9), g(0.88, 0.95);
  const double slope = f.contrast() * g.contrast();
  const double offset = apply_channel_response(apply_channel_response(0.0, f), g);
  for (double r : {-1.0, -0.4, 0.0, 0.7, 1.0})
    CHECK(apply_channel_response(apply_channel_response(r, f), g) == doctest::Approx(offset + slope * r));
}

TEST_CASE("channel applied to a model") {
  const Design d = oracle::load_design("reference.gsc");
  const ResponseModel m = build_model(d);

  const ResponseModel same = apply_channel_model(m, ReadoutChannel::perfect());
  CHECK((same.L.array() == m.L.array()).all());
  CHECK((same.r0.array() == m.r0.array()).all());

  const ResponseModel scaled = apply_channel_model(m, ReadoutChannel(0.99, 0.98));
  CHECK((scaled.L - 0.97 * m.L).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((scaled.r0 - apply_channel_response(m.r0, ReadoutChannel(0.99, 0.98))).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((scaled.prob_plus - scaled.prob_minus - scaled.r0).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_FALSE(scaled.singular);

  CHECK(apply_channel_model(m, ReadoutChannel(0.6, 0.4)).singular);
}

TEST_CASE("imperfect readout on the reference design gives about 7.8 / N") {
  const Design d = oracle::load_design("reference.gsc");
  const ResponseModel m = build_model(d);
  const ReadoutChannel ch(0.99, 0.98);
  const double v = mean_squared_distance_imperfect(m, m.r0, ShotCount(1), ch);
  CHECK(std::abs(v - 7.8) <= 0.05);
  CHECK(msd_times_n(apply_channel_model(m, ch)) == doctest::Approx(v).epsilon(1e-13));
  CHECK(mean_squared_distance_imperfect(m, m.r0, ShotCount(4), ReadoutChannel::perfect()) ==
        mean_squared_distance(m, m.r0, ShotCount(4)));
}

TEST_CASE("symmetric channel on balanced responses divides by (2F - 1)^2") {
  const Design d = oracle::load_design("reference.gsc");
  const ResponseModel m = build_model(d);
  for (double F : {0.99, 0.9, 0.75}) {
    const ReadoutChannel ch(F, F);
    const ResponseModel mc = apply_channel_model(m, ch);
    CHECK(mc.r0.cwiseAbs().maxCoeff() <= 1e-15);
    const double expect = msd_times_n(m) / ((2 * F - 1) * (2 * F - 1));
    CHECK(msd_times_n(mc) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(msd_times_n(mc) > msd_times_n(m));
  }
}

TEST_CASE("probability-based variance stays accurate next to |r| = 1") {
  // Setting 5 of the 25-angle design: R = cos t, slope -2 sin t on p1, p13,
  // so slope^2 / variance = 4 for every t. Forming 1 - r^2 from r loses
  // that ratio as t -> pi; the outcome probabilities keep it.
  const Design d = oracle::load_design("free_angles.gsc");
  AngleTable a;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-7}) {
    a.set(17, oracle::kPi - eps);
    const LinearResponse lr = linear_response(d.settings()[4], a);
    const double var = 4 * lr.prob_plus * lr.prob_minus;
    CHECK(lr.gradient[0] * lr.gradient[0] / var == doctest::Approx(4.0).epsilon(1e-6));
  }
}
