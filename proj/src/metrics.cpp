#include "robotsp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace robotsp::metrics {

namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

}  // namespace

MetricParams MetricParams::from_robot(const RobotModel& robot) {
  MetricParams p;
  if (robot.weights) {
    p.weights = *robot.weights;
  } else if (robot.planar_links) {
    p.weights = default_weights(robot);
  } else {
    p.weights.assign(static_cast<std::size_t>(robot.dof), 1.0);
  }
  p.vel_max = robot.vel_max;
  p.acc_max = robot.acc_max;
  return p;
}

double weighted_euclidean(std::span<const double> q, std::span<const double> qp,
                          std::span<const double> w) {
  require_same_length(q.size(), qp.size(), "weighted_euclidean");
  require_same_length(q.size(), w.size(), "weighted_euclidean");
  double sum = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    const double d = qp[k] - q[k];
    sum += w[k] * d * d;
  }
  return std::sqrt(sum);
}

double max_joint_difference(std::span<const double> q, std::span<const double> qp,
                            std::span<const double> vel_max) {
  require_same_length(q.size(), qp.size(), "max_joint_difference");
  require_same_length(q.size(), vel_max.size(), "max_joint_difference");
  double worst = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    worst = std::max(worst, std::abs(qp[k] - q[k]) / vel_max[k]);
  }
  return worst;
}

double trapezoid_duration_1d(double delta, double vmax, double amax) {
  if (!(vmax > 0.0) || !(amax > 0.0)) {
    throw std::invalid_argument("trapezoid_duration_1d: limits must be positive");
  }
  const double d = std::abs(delta);
  if (d == 0.0) return 0.0;
  if (d >= vmax * vmax / amax) return d / vmax + vmax / amax;
  return 2.0 * std::sqrt(d / amax);
}

double linear_interp_duration(std::span<const double> q, std::span<const double> qp,
                              std::span<const double> vel_max,
                              std::span<const double> acc_max) {
  require_same_length(q.size(), qp.size(), "linear_interp_duration");
  require_same_length(q.size(), vel_max.size(), "linear_interp_duration");
  require_same_length(q.size(), acc_max.size(), "linear_interp_duration");
  double worst = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    worst = std::max(worst, trapezoid_duration_1d(qp[k] - q[k], vel_max[k], acc_max[k]));
  }
  return worst;
}

std::vector<double> default_weights(const RobotModel& arm) {
  if (!arm.planar_links) throw std::invalid_argument("default_weights: robot has no planar_links");
  const auto& links = *arm.planar_links;
  std::vector<double> w(links.size());
  double reach = 0.0;
  for (std::size_t k = links.size(); k-- > 0;) {
    reach += links[k];
    w[k] = reach;
  }
  return w;
}

double edge_cost(MetricKind kind, const MetricParams& params, std::span<const double> q,
                 std::span<const double> qp) {
  switch (kind) {
    case MetricKind::weighted_euclidean:
      return weighted_euclidean(q, qp, params.weights);
    case MetricKind::max_joint_difference:
      return max_joint_difference(q, qp, params.vel_max);
    case MetricKind::linear_interp_duration:
      return linear_interp_duration(q, qp, params.vel_max, params.acc_max);
  }
  throw std::invalid_argument("edge_cost: unknown metric");
}

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::weighted_euclidean: return "weighted_euclidean";
    case MetricKind::max_joint_difference: return "max_joint_difference";
    case MetricKind::linear_interp_duration: return "linear_interp";
  }
  return "unknown";
}

std::optional<MetricKind> parse_metric(std::string_view text) {
  if (text == "weighted_euclidean" || text == "euclidean") return MetricKind::weighted_euclidean;
  if (text == "max_joint_difference" || text == "max_joint_diff") return MetricKind::max_joint_difference;
  if (text == "linear_interp" || text == "linear_interp_duration") return MetricKind::linear_interp_duration;
  return std::nullopt;
}

}  // namespace robotsp::metrics
