#include <doctest.h>

#include <cmath>

#include "robotsp/kinematics.hpp"
#include "test_support.hpp"

using namespace robotsp;
using namespace robotsp::kinematics;
using robotsp::testing::kPi;

namespace {

const RobotModel kArm = RobotModel::planar_arm({1.0, 1.0, 1.0});

double max_abs(const Configuration& a, const Configuration& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

double angle_error(double a, double b) { return std::abs(wrap_angle(a - b)); }

}  // namespace

TEST_CASE("wrap_angle maps into (-pi, pi]") {
  CHECK(wrap_angle(-kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(kPi) == doctest::Approx(kPi));
  CHECK(wrap_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(wrap_angle(0.25) == 0.25);
}

TEST_CASE("forward kinematics") {
  SUBCASE("stretched") {
    const auto p = forward_kinematics(kArm, {0.0, 0.0, 0.0});
    CHECK(p.x == 3.0);
    CHECK(p.y == 0.0);
    CHECK(p.theta == 0.0);
  }
  SUBCASE("rotated") {
    const auto p = forward_kinematics(kArm, {kPi / 2, 0.0, 0.0});
    CHECK(p.x == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(p.y == doctest::Approx(3.0));
    CHECK(p.theta == doctest::Approx(kPi / 2));
  }
  SUBCASE("folded, checked against a complex-product oracle") {
    const std::vector<double> q{kPi / 2, -kPi / 2, -kPi / 2};
    const auto tip = testing::fk_complex({1, 1, 1}, q);
    // Link vectors (0,1) + (1,0) + (0,-1).
    CHECK(tip.real() == doctest::Approx(1.0));
    CHECK(std::abs(tip.imag()) < 1e-15);
    const auto p = forward_kinematics(kArm, Configuration(q));
    CHECK(std::abs(p.x - 1.0) < 1e-15);
    CHECK(std::abs(p.y - 0.0) < 1e-15);
    CHECK(p.theta == doctest::Approx(-kPi / 2));
  }
  SUBCASE("agrees with the complex oracle on random configurations") {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
      const auto q = testing::random_configuration(rng, 3, 4.0);
      const auto p = forward_kinematics(kArm, q);
      const auto tip = testing::fk_complex({1, 1, 1}, q.q);
      CHECK(std::abs(p.x - tip.real()) < 1e-12);
      CHECK(std::abs(p.y - tip.imag()) < 1e-12);
    }
  }
}

TEST_CASE("ik_3r") {
  SUBCASE("boundary pose has one solution") {
    const auto sols = ik_3r(kArm, {3.0, 0.0, 0.0});
    REQUIRE(sols.size() == 1);
    CHECK(max_abs(sols[0], {0.0, 0.0, 0.0}) == 0.0);
  }
  SUBCASE("interior pose: elbow up then elbow down") {
    // Wrist at (1,0): cos q2 = (1 - 2) / 2, so q2 = -+2pi/3.
    const auto sols = ik_3r(kArm, {2.0, 0.0, 0.0});
    REQUIRE(sols.size() == 2);
    CHECK(sols[0][1] == doctest::Approx(-2 * kPi / 3));
    CHECK(sols[1][1] == doctest::Approx(2 * kPi / 3));
    for (const auto& q : sols) {
      const auto p = forward_kinematics(kArm, q);
      CHECK(std::abs(p.x - 2.0) < 1e-12);
      CHECK(std::abs(p.y) < 1e-12);
      CHECK(angle_error(p.theta, 0.0) < 1e-12);
    }
  }
  SUBCASE("unreachable") { CHECK(ik_3r(kArm, {4.0, 0.0, 0.0}).empty()); }
  SUBCASE("needs exactly three links") {
    CHECK_THROWS_AS(ik_3r(RobotModel::planar_arm({1.0, 1.0}), {1.0, 0.0, 0.0}), std::invalid_argument);
  }
}

TEST_CASE("ik_3r branch count follows the wrist annulus") {
  const RobotModel arm = RobotModel::planar_arm({1.0, 0.6, 0.4});
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    const Pose2D pose{rng.uniform(-2.5, 2.5), rng.uniform(-2.5, 2.5), rng.uniform(-kPi, kPi)};
    const double wr = std::hypot(pose.x - 0.4 * std::cos(pose.theta), pose.y - 0.4 * std::sin(pose.theta));
    const auto sols = ik_3r(arm, pose);
    if (wr > 0.4 + 1e-9 && wr < 1.6 - 1e-9) {
      CHECK(sols.size() == 2);
    } else if (wr < 0.4 - 1e-9 || wr > 1.6 + 1e-9) {
      CHECK(sols.empty());
    }
  }
  // On the outer and inner circles.
  CHECK(ik_3r(arm, {2.0, 0.0, 0.0}).size() == 1);
  CHECK(ik_3r(arm, {0.8, 0.0, 0.0}).size() == 1);
}

TEST_CASE("IK round trip on 1000 random reachable poses") {
  const RobotModel arm = RobotModel::planar_arm({0.9, 0.7, 0.3});
  Rng rng(5);
  int checked = 0;
  while (checked < 1000) {
    const auto q = testing::random_configuration(rng, 3);
    const Pose2D pose = forward_kinematics(arm, q);
    const auto sols = ik_3r(arm, pose);
    REQUIRE_FALSE(sols.empty());
    for (const auto& s : sols) {
      const auto p = forward_kinematics(arm, s);
      CHECK(std::hypot(p.x - pose.x, p.y - pose.y) <= 1e-9);
      CHECK(angle_error(p.theta, pose.theta) <= 1e-9);
      for (double a : s.q) {
        CHECK(a > -kPi);
        CHECK(a <= kPi);
      }
    }
    ++checked;
  }
}

TEST_CASE("ik_targets") {
  SUBCASE("near the base every orientation has two branches") {
    // Enumerate the pi/2 grid by hand: wrist radii 0.9, ~1.005, 1.1, ~1.005 all in (0, 2).
    int expected = 0;
    for (int k = 0; k < 4; ++k) {
      const double th = k * kPi / 2;
      const double wr = std::hypot(0.1 - std::cos(th), -std::sin(th));
      expected += (wr > 0.0 && wr < 2.0) ? 2 : 0;
    }
    REQUIRE(expected == 8);
    const auto set = ik_targets(kArm, {0.1, 0.0}, kPi / 2, 4);
    CHECK(set.target_id == 4);
    CHECK(set.size() == 8);
    for (const auto& q : set.solutions) {
      const auto p = forward_kinematics(kArm, q);
      CHECK(std::hypot(p.x - 0.1, p.y) <= 1e-9);
    }
  }
  SUBCASE("workspace boundary is reachable at theta = 0 only") {
    CHECK(ik_targets(kArm, {3.0, 0.0}, kPi / 2).size() == 1);
  }
  SUBCASE("step must divide 2 pi") {
    CHECK_THROWS_AS(ik_targets(kArm, {0.1, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ik_targets(kArm, {0.1, 0.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ik_targets(kArm, {0.1, 0.0}, -kPi), std::invalid_argument);
    CHECK(orientation_samples(kPi / 12) == 24);
    CHECK(orientation_samples(2 * kPi) == 1);
    CHECK(orientation_samples(2 * kPi / 5) == 5);
  }
  SUBCASE("solutions are distinct and bounded") {
    Rng rng(23);
    for (int i = 0; i < 50; ++i) {
      const Point2 p{rng.uniform(-2.9, 2.9), rng.uniform(-2.9, 2.9)};
      const auto set = ik_targets(kArm, p, kPi / 6);
      CHECK(set.size() <= 2u * 12u);
      for (std::size_t a = 0; a < set.size(); ++a) {
        for (std::size_t b = a + 1; b < set.size(); ++b) {
          CHECK(max_abs(set.solutions[a], set.solutions[b]) > 1e-9);
        }
      }
    }
  }
}

TEST_CASE("halving the step never loses IK solutions") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const Point2 p{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    for (double step : {kPi, kPi / 2, kPi / 3, kPi / 6}) {
      CHECK(ik_targets(kArm, p, step / 2).size() >= ik_targets(kArm, p, step).size());
    }
  }
}

TEST_CASE("jacobian") {
  SUBCASE("stretched arm") {
    const auto j = jacobian(kArm, {0.0, 0.0, 0.0});
    const double expected[3][2] = {{0, 3}, {0, 2}, {0, 1}};
    for (int c = 0; c < 3; ++c) {
      CHECK(j.columns[c][0] == doctest::Approx(expected[c][0]));
      CHECK(j.columns[c][1] == doctest::Approx(expected[c][1]));
    }
  }
  SUBCASE("rotated stretched arm") {
    const auto j = jacobian(kArm, {kPi / 2, 0.0, 0.0});
    const double expected[3][2] = {{-3, 0}, {-2, 0}, {-1, 0}};
    for (int c = 0; c < 3; ++c) {
      CHECK(j.columns[c][0] == doctest::Approx(expected[c][0]));
      CHECK(std::abs(j.columns[c][1] - expected[c][1]) < 1e-15);
    }
  }
  SUBCASE("matches central differences on 100 random configurations") {
    const RobotModel arm = RobotModel::planar_arm({0.8, 1.3, 0.5});
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
      const auto q = testing::random_configuration(rng, 3);
      const auto j = jacobian(arm, q);
      const auto fd = testing::fd_jacobian(arm, q);
      for (std::size_t c = 0; c < 3; ++c) {
        CHECK(std::abs(j.columns[c][0] - fd[c][0]) <= 1e-6);
        CHECK(std::abs(j.columns[c][1] - fd[c][1]) <= 1e-6);
      }
    }
  }
}

TEST_CASE("manipulability") {
  CHECK(manipulability(kArm, {0.0, 0.0, 0.0}) == 0.0);

  // Oracle: determinant of J J^T from the finite-difference Jacobian.
  const Configuration q{0.0, kPi / 2, 0.0};
  const auto fd = testing::fd_jacobian(kArm, q);
  double a = 0, b = 0, d = 0;
  for (const auto& c : fd) {
    a += c[0] * c[0];
    b += c[0] * c[1];
    d += c[1] * c[1];
  }
  const double oracle = std::sqrt(a * d - b * b);
  CHECK(oracle == doctest::Approx(std::sqrt(5.0)).epsilon(1e-8));
  CHECK(manipulability(kArm, q) == doctest::Approx(oracle).epsilon(1e-8));

  Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    const auto q0 = testing::random_configuration(rng, 3);
    Configuration shifted = q0;
    shifted[0] += rng.uniform(-3.0, 3.0);
    const double w = manipulability(kArm, q0);
    CHECK(w >= 0.0);
    CHECK(manipulability(kArm, shifted) == doctest::Approx(w).epsilon(1e-12));
  }
}
