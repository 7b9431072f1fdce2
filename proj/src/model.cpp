#include "robotsp/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "robotsp/kinematics.hpp"
#include "robotsp/random.hpp"

namespace robotsp {

namespace {

constexpr int kExplicitDof = 6;

bool all_positive_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x) && x > 0.0; });
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void check_limit_vector(const std::vector<double>& v, int dof, const char* name,
                        std::vector<std::string>& out) {
  if (static_cast<int>(v.size()) != dof) {
    out.push_back(std::string(name) + " length mismatch");
  } else if (!all_positive_finite(v)) {
    out.push_back(std::string(name) + " must be positive and finite");
  }
}

}  // namespace

RobotModel RobotModel::with_default_limits(int dof) {
  RobotModel robot;
  robot.dof = dof;
  robot.vel_max.assign(static_cast<std::size_t>(dof), 1.0);
  robot.acc_max.assign(static_cast<std::size_t>(dof), 1.0);
  return robot;
}

RobotModel RobotModel::planar_arm(std::vector<double> links) {
  RobotModel robot = with_default_limits(static_cast<int>(links.size()));
  robot.planar_links = std::move(links);
  return robot;
}

TaskMode Task::mode() const {
  const bool any_explicit = std::any_of(targets.begin(), targets.end(),
                                        [](const TaskTarget& t) { return t.ik_solutions.has_value(); });
  return any_explicit ? TaskMode::explicit_ik : TaskMode::planar;
}

bool ValidationReport::contains(std::string_view needle) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

namespace {

ValidationReport validate_impl(const Task& task, std::optional<double> step_size) {
  ValidationReport report;
  auto& out = report.violations;
  const RobotModel& robot = task.robot;

  if (robot.dof < 1) out.push_back("robot dof must be positive");
  check_limit_vector(robot.vel_max, robot.dof, "vel_max", out);
  check_limit_vector(robot.acc_max, robot.dof, "acc_max", out);
  if (robot.weights) check_limit_vector(*robot.weights, robot.dof, "weights", out);
  if (robot.planar_links) check_limit_vector(*robot.planar_links, robot.dof, "planar_links", out);

  if (static_cast<int>(task.home.size()) != robot.dof) {
    out.push_back("home length mismatch");
  } else if (!all_finite(task.home.q)) {
    out.push_back("home has non-finite entries");
  }

  const std::size_t n = task.targets.size();
  if (n == 0) {
    out.push_back("task has no targets");
    return report;
  }

  std::vector<bool> seen(n, false);
  std::size_t explicit_count = 0;
  for (const TaskTarget& t : task.targets) {
    if (t.id < 0 || static_cast<std::size_t>(t.id) >= n) {
      out.push_back("target id " + std::to_string(t.id) + " out of range");
    } else if (seen[static_cast<std::size_t>(t.id)]) {
      out.push_back("duplicate target id " + std::to_string(t.id));
    } else {
      seen[static_cast<std::size_t>(t.id)] = true;
    }
    if (t.position && !(std::isfinite(t.position->x) && std::isfinite(t.position->y))) {
      out.push_back("target " + std::to_string(t.id) + " has a non-finite position");
    }
    if (t.ik_solutions) {
      ++explicit_count;
      if (t.ik_solutions->empty()) {
        out.push_back("target " + std::to_string(t.id) + " has an empty IK set");
      }
      for (const Configuration& q : *t.ik_solutions) {
        if (static_cast<int>(q.size()) != robot.dof) {
          out.push_back("target " + std::to_string(t.id) + " IK solution length mismatch");
          break;
        }
        if (!all_finite(q.q)) {
          out.push_back("target " + std::to_string(t.id) + " IK solution has non-finite entries");
          break;
        }
      }
    } else if (!t.position) {
      out.push_back("target " + std::to_string(t.id) + " has neither position nor IK solutions");
    }
  }

  if (explicit_count != 0 && explicit_count != n) {
    out.push_back("mixed target kinds: explicit IK and planar targets in one task");
    return report;
  }
  if (explicit_count == n) return report;

  // Planar mode: IK is resolved here.
  if (!robot.planar_links || robot.dof != 3) {
    out.push_back("planar targets require a 3-link planar_links robot");
    return report;
  }
  if (!step_size) return report;
  if (kinematics::orientation_samples(*step_size) == 0) {
    out.push_back("step size does not divide 2*pi");
    return report;
  }
  for (const TaskTarget& t : task.targets) {
    if (!t.position) continue;
    const auto set = kinematics::ik_targets(robot, *t.position, *step_size, t.id);
    if (set.solutions.empty()) {
      out.push_back("target " + std::to_string(t.id) + " unreachable");
    }
  }
  return report;
}

}  // namespace

ValidationReport validate_task(const Task& task, double step_size) {
  return validate_impl(task, step_size);
}

ValidationReport validate_structure(const Task& task) { return validate_impl(task, std::nullopt); }

Task generate_random_task(int n, int m_max, std::uint64_t seed, TaskMode mode) {
  if (n < 1) throw std::invalid_argument("generate_random_task: n must be >= 1");
  if (m_max < 1) throw std::invalid_argument("generate_random_task: m_max must be >= 1");

  constexpr double pi = std::numbers::pi;
  Rng rng(seed);
  Task task;
  task.targets.reserve(static_cast<std::size_t>(n));

  if (mode == TaskMode::planar) {
    task.robot = RobotModel::planar_arm({1.0, 1.0, 1.0});
    task.home = Configuration{0.0, 0.0, 0.0};
    const auto [inner, outer] = kinematics::guaranteed_reach_annulus(task.robot);
    for (int i = 0; i < n; ++i) {
      // Uniform by area inside the annulus.
      const double r = std::sqrt(rng.uniform() * (outer * outer - inner * inner) + inner * inner);
      const double phi = rng.uniform(-pi, pi);
      TaskTarget t;
      t.id = i;
      t.position = Point2{r * std::cos(phi), r * std::sin(phi)};
      task.targets.push_back(std::move(t));
    }
    return task;
  }

  task.robot = RobotModel::with_default_limits(kExplicitDof);
  task.home = Configuration(std::vector<double>(kExplicitDof, 0.0));
  for (int i = 0; i < n; ++i) {
    TaskTarget t;
    t.id = i;
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    t.position = Point2{x, y};
    const auto m = rng.uniform_int(1, m_max);
    std::vector<Configuration> sols;
    sols.reserve(static_cast<std::size_t>(m));
    for (std::int64_t k = 0; k < m; ++k) {
      std::vector<double> q(kExplicitDof);
      for (double& a : q) a = kinematics::wrap_angle(rng.uniform(-pi, pi));
      sols.emplace_back(std::move(q));
    }
    t.ik_solutions = std::move(sols);
    task.targets.push_back(std::move(t));
  }
  return task;
}

std::string to_string(TaskMode mode) {
  return mode == TaskMode::planar ? "planar" : "explicit_ik";
}

std::optional<TaskMode> parse_task_mode(std::string_view text) {
  if (text == "planar") return TaskMode::planar;
  if (text == "explicit_ik" || text == "explicit") return TaskMode::explicit_ik;
  return std::nullopt;
}

}  // namespace robotsp
