#include "robotsp/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace robotsp::kinematics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// How far outside the 2R workspace a wrist may sit and still be snapped onto
// the boundary.
constexpr double kBoundaryTolerance = 1e-12;
constexpr double kDuplicateTolerance = 1e-9;

const std::vector<double>& links_of(const RobotModel& arm) {
  if (!arm.planar_links) throw std::invalid_argument("robot has no planar_links");
  return *arm.planar_links;
}

double max_abs_difference(const Configuration& a, const Configuration& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

Pose2D forward_kinematics(const RobotModel& arm, const Configuration& q) {
  const auto& links = links_of(arm);
  if (q.size() != links.size()) throw std::invalid_argument("forward_kinematics: length mismatch");
  Pose2D pose;
  double phi = 0.0;
  for (std::size_t j = 0; j < links.size(); ++j) {
    phi += q[j];
    pose.x += links[j] * std::cos(phi);
    pose.y += links[j] * std::sin(phi);
  }
  pose.theta = wrap_angle(phi);
  return pose;
}

std::vector<Configuration> ik_3r(const RobotModel& arm, const Pose2D& pose) {
  const auto& links = links_of(arm);
  if (links.size() != 3) throw std::invalid_argument("ik_3r: arm must have exactly 3 links");
  const double l1 = links[0], l2 = links[1], l3 = links[2];

  const double wx = pose.x - l3 * std::cos(pose.theta);
  const double wy = pose.y - l3 * std::sin(pose.theta);
  const double c2 = (wx * wx + wy * wy - l1 * l1 - l2 * l2) / (2.0 * l1 * l2);
  if (c2 > 1.0 + kBoundaryTolerance || c2 < -1.0 - kBoundaryTolerance) return {};

  auto make = [&](double s2, double c) {
    const double q2 = std::atan2(s2, c);
    const double q1 = std::atan2(wy, wx) - std::atan2(l2 * std::sin(q2), l1 + l2 * std::cos(q2));
    const double wq1 = wrap_angle(q1);
    const double wq2 = wrap_angle(q2);
    return Configuration{wq1, wq2, wrap_angle(pose.theta - wq1 - wq2)};
  };

  if (c2 >= 1.0) return {make(0.0, 1.0)};
  if (c2 <= -1.0) return {make(0.0, -1.0)};
  const double s2 = std::sqrt(1.0 - c2 * c2);
  return {make(-s2, c2), make(s2, c2)};
}

int orientation_samples(double step_size) {
  if (!std::isfinite(step_size) || step_size <= 0.0) return 0;
  const double ratio = kTwoPi / step_size;
  if (ratio > static_cast<double>(1 << 20)) return 0;
  const double k = std::round(ratio);
  if (k < 1.0 || std::abs(k * step_size - kTwoPi) > 1e-12) return 0;
  return static_cast<int>(k);
}

IkSolutionSet ik_targets(const RobotModel& arm, Point2 target, double step_size, int target_id) {
  const int samples = orientation_samples(step_size);
  if (samples == 0) throw std::invalid_argument("ik_targets: step size must divide 2*pi");

  IkSolutionSet set;
  set.target_id = target_id;
  for (int k = 0; k < samples; ++k) {
    const Pose2D pose{target.x, target.y, k * step_size};
    for (Configuration& q : ik_3r(arm, pose)) {
      const bool dup = std::any_of(set.solutions.begin(), set.solutions.end(), [&](const Configuration& s) {
        return max_abs_difference(s, q) <= kDuplicateTolerance;
      });
      if (!dup) set.solutions.push_back(std::move(q));
    }
  }
  return set;
}

Jacobian2 jacobian(const RobotModel& arm, const Configuration& q) {
  const auto& links = links_of(arm);
  const std::size_t dof = links.size();
  if (q.size() != dof) throw std::invalid_argument("jacobian: length mismatch");

  std::vector<double> lx(dof), ly(dof);
  double phi = 0.0;
  for (std::size_t i = 0; i < dof; ++i) {
    phi += q[i];
    lx[i] = links[i] * std::cos(phi);
    ly[i] = links[i] * std::sin(phi);
  }
  Jacobian2 jac;
  jac.columns.resize(dof);
  double sx = 0.0, sy = 0.0;
  for (std::size_t j = dof; j-- > 0;) {
    sx += lx[j];
    sy += ly[j];
    jac.columns[j] = {-sy, sx};
  }
  return jac;
}

double manipulability(const RobotModel& arm, const Configuration& q) {
  const Jacobian2 jac = jacobian(arm, q);
  double a = 0.0, b = 0.0, d = 0.0;
  for (const auto& c : jac.columns) {
    a += c[0] * c[0];
    b += c[0] * c[1];
    d += c[1] * c[1];
  }
  return std::sqrt(std::max(0.0, a * d - b * b));
}

std::array<double, 2> guaranteed_reach_annulus(const RobotModel& arm) {
  const auto& links = links_of(arm);
  if (links.size() != 3) throw std::invalid_argument("guaranteed_reach_annulus: 3 links required");
  // Wrist distance ranges over [| |p| - L3 |, |p| + L3] as the tool turns; it
  // must stay inside the 2R annulus [|L1 - L2|, L1 + L2].
  const double gap = std::abs(links[0] - links[1]);
  const double outer = links[0] + links[1] - links[2];
  const double inner = gap > 0.0 ? links[2] + gap : 0.0;
  if (outer <= inner) throw std::invalid_argument("arm has no orientation-independent workspace");
  return {inner, outer};
}

}  // namespace robotsp::kinematics
