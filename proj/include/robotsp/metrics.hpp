#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "robotsp/model.hpp"

namespace robotsp::metrics {

enum class MetricKind { weighted_euclidean, max_joint_difference, linear_interp_duration };

inline constexpr MetricKind kAllMetrics[] = {MetricKind::weighted_euclidean,
                                            MetricKind::max_joint_difference,
                                            MetricKind::linear_interp_duration};

struct MetricParams {
  std::vector<double> weights;
  std::vector<double> vel_max;
  std::vector<double> acc_max;

  /// Weights come from the robot if given, else from the planar link reaches,
  /// else all ones.
  static MetricParams from_robot(const RobotModel& robot);
};

/// sqrt(sum_k w_k (q'_k - q_k)^2)
double weighted_euclidean(std::span<const double> q, std::span<const double> qp,
                          std::span<const double> w);

/// max_k |q'_k - q_k| / vel_max_k, in seconds.
double max_joint_difference(std::span<const double> q, std::span<const double> qp,
                            std::span<const double> vel_max);

/// Time-optimal rest-to-rest duration of a single joint moving |delta| under
/// velocity and acceleration caps (trapezoidal, or triangular when the peak
/// velocity is never reached).
double trapezoid_duration_1d(double delta, double vmax, double amax);

/// Duration of a synchronized straight joint-space move; the slowest joint
/// sets the pace.
double linear_interp_duration(std::span<const double> q, std::span<const double> qp,
                              std::span<const double> vel_max,
                              std::span<const double> acc_max);

/// w_k = sum_{j >= k} L_j.
std::vector<double> default_weights(const RobotModel& arm);

double edge_cost(MetricKind kind, const MetricParams& params, std::span<const double> q,
                 std::span<const double> qp);

inline double edge_cost(MetricKind kind, const MetricParams& params, const Configuration& q,
                        const Configuration& qp) {
  return edge_cost(kind, params, q.values(), qp.values());
}

std::string to_string(MetricKind kind);
std::optional<MetricKind> parse_metric(std::string_view text);

}  // namespace robotsp::metrics
