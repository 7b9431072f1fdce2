#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robotsp/cgraph.hpp"
#include "robotsp/kinematics.hpp"
#include "robotsp/metrics.hpp"
#include "robotsp/model.hpp"
#include "robotsp/tsp.hpp"

namespace robotsp {

struct PipelineConfig {
  tsp::SolverKind tsp_solver = tsp::SolverKind::two_opt;
  metrics::MetricKind metric = metrics::MetricKind::max_joint_difference;
  double step_size = kDefaultStepSize;
  int rnn_restarts = 5;  // clamped to the matrix size
  bool include_home_depot = true;
  std::uint64_t seed = 0;
  Execution execution = Execution::parallel;
  /// Per-target IK index for the C-space TSP baseline on explicit tasks.
  std::optional<std::vector<int>> fixed_choice;
};

struct StepTimings {
  double step1_ms = 0.0;
  double ik_ms = 0.0;
  double step2_ms = 0.0;
  double step3_ms = 0.0;
};

struct PipelineCounts {
  std::size_t n = 0;
  std::size_t total_ik = 0;
  std::size_t edges = 0;
};

struct PipelineResult {
  tsp::TourOrder order;  // open path over target indices
  cgraph::SelectionResult selection;
  double step1_cost = 0.0;
  double schedule_duration = 0.0;
  StepTimings timings;
  PipelineCounts counts;
};

/// Label attached to every schedule: Step 3 is timed along straight
/// joint-space segments with no obstacle model.
inline constexpr const char* kScheduleModel = "straight_line_obstacle_free";

/// IK sets per target in target-id order. Planar targets are solved with
/// `step_size`; explicit ones are copied. Throws TaskError on any empty set.
std::vector<kinematics::IkSolutionSet> resolve_ik(const Task& task, double step_size,
                                                  Execution exec = Execution::parallel);

/// Task-space tour, optimal IK selection along it, then the straight-line
/// schedule home -> q_1 -> ... -> q_n -> home.
PipelineResult solve_robotsp(const Task& task, const PipelineConfig& config);

/// Sum of linear_interp_duration over consecutive configurations.
double execute_trajectory_schedule(std::span<const Configuration> sequence,
                                   std::span<const double> vel_max,
                                   std::span<const double> acc_max);

/// One fixed configuration per target (best manipulability, or
/// config.fixed_choice), then a plain TSP among those configurations.
PipelineResult baseline_tsp_cspace(const Task& task, const PipelineConfig& config);

inline constexpr std::size_t kGtspMaxTargets = 7;
inline constexpr double kGtspCandidateLimit = 1e7;

/// Exhaustive GTSP: every visiting order with its optimal IK selection.
/// Throws GuardError outside n <= 7 and prod(m_i) * (n-1)! <= 1e7.
PipelineResult baseline_gtsp_exhaustive(const Task& task, const PipelineConfig& config);

/// Same optimum as baseline_gtsp_exhaustive, by enumerating every order and
/// every IK combination without the layered graph. Oracle for the former.
PipelineResult gtsp_full_enumeration(const Task& task, const PipelineConfig& config);

/// Step-2 search over a given order of target indices.
cgraph::SelectionResult select_along_order(const Task& task,
                                           std::span<const kinematics::IkSolutionSet> ik,
                                           std::span<const int> order,
                                           const PipelineConfig& config);

// ---------------------------------------------------------------------------
// Benchmark harness

enum class BenchmarkAxis { tsp_solver, metric, step_size, method };

struct BenchmarkRow {
  std::string axis;
  std::string variant;
  std::size_t n = 0;
  int repeat = 0;
  std::uint64_t seed = 0;  // instance seed
  bool skipped = false;    // guard refused this variant
  StepTimings timings;
  double step1_cost = 0.0;
  double step2_cost = 0.0;
  double schedule_s = 0.0;
  std::size_t total_ik = 0;
  std::size_t edges = 0;
};

struct BenchmarkOptions {
  PipelineConfig base;  // fixed axes
  /// Evaluate (instance, variant) cells concurrently. Kernels inside a cell
  /// then run serially.
  bool parallel_cells = false;
};

/// Seed of the planar instance used for (size, repeat).
std::uint64_t benchmark_instance_seed(std::uint64_t seed, std::size_t n, int repeat);

std::vector<std::string> benchmark_variants(BenchmarkAxis axis);

/// One row per (n, variant, repeat), sorted by (variant, n, repeat).
std::vector<BenchmarkRow> benchmark_run(BenchmarkAxis axis, std::span<const std::size_t> sizes,
                                        int repeats, std::uint64_t seed,
                                        const BenchmarkOptions& options = {});

std::string to_string(BenchmarkAxis axis);
std::optional<BenchmarkAxis> parse_axis(std::string_view text);

/// Step sizes swept on the step_size axis, coarse to fine.
inline constexpr int kStepDivisors[] = {1, 2, 3, 4, 6, 12};

}  // namespace robotsp
