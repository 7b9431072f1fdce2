#pragma once

#include <array>
#include <vector>

#include "robotsp/model.hpp"

namespace robotsp::kinematics {

struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // tool orientation, (-pi, pi]
};

struct IkSolutionSet {
  int target_id = 0;
  std::vector<Configuration> solutions;

  std::size_t size() const { return solutions.size(); }
};

/// 2 x dof position Jacobian stored column-major: column j is (dx/dq_j, dy/dq_j).
struct Jacobian2 {
  std::vector<std::array<double, 2>> columns;
};

/// Wraps an angle into (-pi, pi].
double wrap_angle(double a);

Pose2D forward_kinematics(const RobotModel& arm, const Configuration& q);

/// Closed-form IK for a planar 3R arm. Returns elbow-up (q2 < 0) before
/// elbow-down; a straight or folded elbow yields a single solution; an
/// unreachable wrist yields none.
std::vector<Configuration> ik_3r(const RobotModel& arm, const Pose2D& pose);

/// All IK solutions for a point target, sweeping tool orientation over
/// {k * step_size}. Throws std::invalid_argument if step_size does not divide 2*pi.
IkSolutionSet ik_targets(const RobotModel& arm, Point2 target, double step_size, int target_id = 0);

Jacobian2 jacobian(const RobotModel& arm, const Configuration& q);

/// Yoshikawa index sqrt(det(J J^T)).
double manipulability(const RobotModel& arm, const Configuration& q);

/// Number of grid orientations for `step_size`, or 0 if it does not divide 2*pi.
int orientation_samples(double step_size);

/// Reach annulus [inner, outer] in which every tool orientation admits an IK
/// solution for a 3R arm.
std::array<double, 2> guaranteed_reach_annulus(const RobotModel& arm);

}  // namespace robotsp::kinematics
