#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace robotsp {

/// Kernel execution policy. `serial` is the reference path used by the tests
/// to check the OpenMP kernels bit-for-bit.
enum class Execution { serial, parallel };

/// A guard refused to run an exponential solver or oracle on an instance
/// that is too large.
class GuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The task cannot be solved as given (unreachable target, empty IK set,
/// malformed data).
class TaskError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Joint-angle vector in radians. Angles are not identified modulo 2*pi.
struct Configuration {
  std::vector<double> q;

  Configuration() = default;
  explicit Configuration(std::vector<double> values) : q(std::move(values)) {}
  Configuration(std::initializer_list<double> values) : q(values) {}

  std::size_t size() const { return q.size(); }
  double operator[](std::size_t k) const { return q[k]; }
  double& operator[](std::size_t k) { return q[k]; }
  std::span<const double> values() const { return q; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct RobotModel {
  int dof = 0;
  std::vector<double> vel_max;   // rad/s
  std::vector<double> acc_max;   // rad/s^2
  std::optional<std::vector<double>> weights;
  std::optional<std::vector<double>> planar_links;  // meters, built-in planar arm only

  bool is_planar() const { return planar_links.has_value(); }

  /// Unit velocity and acceleration limits for a robot of the given size.
  static RobotModel with_default_limits(int dof);
  /// Planar arm with the given link lengths and unit limits.
  static RobotModel planar_arm(std::vector<double> links);
};

struct TaskTarget {
  int id = 0;
  std::optional<Point2> position;
  std::optional<std::vector<Configuration>> ik_solutions;
};

enum class TaskMode { explicit_ik, planar };

struct Task {
  RobotModel robot;
  Configuration home;
  std::vector<TaskTarget> targets;

  std::size_t size() const { return targets.size(); }
  /// Planar when no target carries explicit IK solutions.
  TaskMode mode() const;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  bool contains(std::string_view needle) const;
};

/// Default discretization of the free orientation DOF.
inline constexpr double kDefaultStepSize = 3.14159265358979323846 / 4.0;

/// Collects every invariant violation of `task`. Planar targets are resolved
/// with `step_size` and reported unreachable when no IK solution exists.
ValidationReport validate_task(const Task& task, double step_size = kDefaultStepSize);

/// validate_task without the IK reachability check.
ValidationReport validate_structure(const Task& task);

/// Seeded instance generator. Explicit mode uses a 6-DOF robot with random
/// IK sets and task-space positions in [-1, 1]^2; planar mode uses the unit
/// 3R arm and samples the region reachable at every tool orientation.
Task generate_random_task(int n, int m_max, std::uint64_t seed, TaskMode mode);

std::string to_string(TaskMode mode);
std::optional<TaskMode> parse_task_mode(std::string_view text);

}  // namespace robotsp
