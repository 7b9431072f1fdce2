#include "robotsp/pipeline.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numbers>
#include <chrono>
#include <cmath>
#include <exception>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "robotsp/random.hpp"

namespace robotsp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Structural checks only; reachability is reported by resolve_ik.
void require_valid(const Task& task) {
  const ValidationReport report = validate_structure(task);
  if (!report.ok()) {
    std::string msg = "invalid task:";
    for (const auto& v : report.violations) msg += " " + v + ";";
    throw TaskError(msg);
  }
}

std::vector<kinematics::IkSolutionSet> ordered_sets(std::span<const kinematics::IkSolutionSet> ik,
                                                    std::span<const int> order) {
  std::vector<kinematics::IkSolutionSet> out;
  out.reserve(order.size());
  for (int idx : order) out.push_back(ik[static_cast<std::size_t>(idx)]);
  return out;
}

std::vector<Configuration> schedule_sequence(const Configuration& home,
                                             std::span<const kinematics::IkSolutionSet> ordered,
                                             std::span<const int> chosen) {
  std::vector<Configuration> seq;
  seq.reserve(ordered.size() + 2);
  seq.push_back(home);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    seq.push_back(ordered[i].solutions[static_cast<std::size_t>(chosen[i])]);
  }
  seq.push_back(home);
  return seq;
}

std::size_t total_ik(std::span<const kinematics::IkSolutionSet> ik) {
  std::size_t s = 0;
  for (const auto& set : ik) s += set.size();
  return s;
}

tsp::TourOrder open_order(const tsp::DistanceMatrix& dm, const tsp::TourOrder& cycle,
                          bool depot, std::size_t n) {
  return depot ? tsp::open_order_from_cycle(cycle, static_cast<int>(n))
               : tsp::open_at_longest_edge(dm, cycle);
}

void finish_schedule(const Task& task, std::span<const kinematics::IkSolutionSet> ordered,
                     PipelineResult& result) {
  const auto t3 = Clock::now();
  const auto seq = schedule_sequence(task.home, ordered, result.selection.chosen);
  result.schedule_duration = execute_trajectory_schedule(seq, task.robot.vel_max, task.robot.acc_max);
  result.timings.step3_ms = elapsed_ms(t3);
}

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

void require_gtsp_guard(std::span<const kinematics::IkSolutionSet> ik) {
  const std::size_t n = ik.size();
  if (n > kGtspMaxTargets) {
    throw GuardError("GTSP enumeration refuses " + std::to_string(n) + " targets (limit " +
                     std::to_string(kGtspMaxTargets) + ")");
  }
  double candidates = factorial(n - 1);
  for (const auto& set : ik) candidates *= static_cast<double>(set.size());
  if (candidates > kGtspCandidateLimit) {
    throw GuardError("GTSP enumeration refuses prod(m_i)*(n-1)! = " +
                     std::to_string(static_cast<long long>(candidates)) + " candidates (limit 1e7)");
  }
}

template <typename SelectFn>
PipelineResult enumerate_orders(const Task& task, const PipelineConfig& config, SelectFn&& select) {
  require_valid(task);
  PipelineResult result;
  const auto t_ik = Clock::now();
  const auto ik = resolve_ik(task, config.step_size, config.execution);
  result.timings.ik_ms = elapsed_ms(t_ik);
  require_gtsp_guard(ik);

  const auto t1 = Clock::now();
  std::vector<int> perm(task.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_order;
  cgraph::SelectionResult best;
  best.total_cost = std::numeric_limits<double>::infinity();
  do {
    const auto ordered = ordered_sets(ik, perm);
    auto sel = select(ordered);
    if (sel.total_cost < best.total_cost) {
      best = std::move(sel);
      best_order = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  result.timings.step1_ms = elapsed_ms(t1);

  result.order = {best_order, tsp::TourKind::open_path};
  result.selection = std::move(best);
  result.step1_cost = result.selection.total_cost;
  const auto ordered = ordered_sets(ik, best_order);
  finish_schedule(task, ordered, result);

  std::vector<std::size_t> sizes;
  for (const auto& s : ordered) sizes.push_back(s.size());
  result.counts = {task.size(), total_ik(ik), cgraph::expected_edge_count(sizes)};
  return result;
}

}  // namespace

std::vector<kinematics::IkSolutionSet> resolve_ik(const Task& task, double step_size, Execution exec) {
  const std::size_t n = task.size();
  std::vector<kinematics::IkSolutionSet> sets(n);
  const bool planar = task.mode() == TaskMode::planar;
  if (planar) {
    if (!task.robot.planar_links || task.robot.dof != 3) {
      throw TaskError("planar targets require a 3-link planar_links robot");
    }
    if (kinematics::orientation_samples(step_size) == 0) {
      throw std::invalid_argument("step size must divide 2*pi");
    }
    for (const auto& t : task.targets) {
      if (!t.position) throw TaskError("target " + std::to_string(t.id) + " has no position");
    }
  }

  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4) if (planar && exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const TaskTarget& t = task.targets[static_cast<std::size_t>(i)];
    auto& set = sets[static_cast<std::size_t>(i)];
    if (planar) {
      set = kinematics::ik_targets(task.robot, *t.position, step_size, t.id);
    } else {
      set.target_id = t.id;
      set.solutions = *t.ik_solutions;
    }
  }

  for (const auto& set : sets) {
    if (set.solutions.empty()) {
      throw TaskError("target " + std::to_string(set.target_id) +
                      (planar ? " unreachable" : " has an empty IK set"));
    }
  }
  return sets;
}

double execute_trajectory_schedule(std::span<const Configuration> sequence,
                                   std::span<const double> vel_max,
                                   std::span<const double> acc_max) {
  if (sequence.size() < 2) {
    throw std::invalid_argument("execute_trajectory_schedule: need at least two configurations");
  }
  // Accumulated from the last segment backwards, like selection totals.
  double total = 0.0;
  for (std::size_t k = sequence.size() - 1; k-- > 0;) {
    const double seg = metrics::linear_interp_duration(sequence[k].values(), sequence[k + 1].values(),
                                                       vel_max, acc_max);
    total = k + 2 == sequence.size() ? seg : seg + total;
  }
  return total;
}

cgraph::SelectionResult select_along_order(const Task& task,
                                           std::span<const kinematics::IkSolutionSet> ik,
                                           std::span<const int> order,
                                           const PipelineConfig& config) {
  const auto params = metrics::MetricParams::from_robot(task.robot);
  const auto ordered = ordered_sets(ik, order);
  const auto graph = cgraph::build_layered_graph(task.home, ordered, config.metric, params, config.execution);
  return cgraph::shortest_selection(graph);
}

PipelineResult solve_robotsp(const Task& task, const PipelineConfig& config) {
  require_valid(task);
  PipelineResult result;
  const std::size_t n = task.size();

  const auto t_ik = Clock::now();
  const auto ik = resolve_ik(task, config.step_size, config.execution);
  result.timings.ik_ms = elapsed_ms(t_ik);

  const auto t1 = Clock::now();
  const auto dm = tsp::build_task_distance_matrix(task, config.include_home_depot, config.execution);
  const auto cycle = tsp::solve(config.tsp_solver, dm, config.rnn_restarts, config.execution);
  result.step1_cost = tsp::tour_cost(dm, cycle);
  result.order = open_order(dm, cycle, config.include_home_depot, n);
  result.timings.step1_ms = elapsed_ms(t1);

  const auto t2 = Clock::now();
  const auto params = metrics::MetricParams::from_robot(task.robot);
  const auto ordered = ordered_sets(ik, result.order.order);
  const auto graph = cgraph::build_layered_graph(task.home, ordered, config.metric, params, config.execution);
  result.selection = cgraph::shortest_selection(graph);
  result.timings.step2_ms = elapsed_ms(t2);

  finish_schedule(task, ordered, result);
  result.counts = {n, total_ik(ik), graph.edge_count()};
  return result;
}

PipelineResult baseline_tsp_cspace(const Task& task, const PipelineConfig& config) {
  require_valid(task);
  PipelineResult result;
  const std::size_t n = task.size();

  const auto t_ik = Clock::now();
  const auto ik = resolve_ik(task, config.step_size, config.execution);
  std::vector<int> choice(n, 0);
  if (config.fixed_choice) {
    if (config.fixed_choice->size() != n) throw TaskError("fixed_choice needs one index per target");
    for (std::size_t i = 0; i < n; ++i) {
      const int c = (*config.fixed_choice)[i];
      if (c < 0 || static_cast<std::size_t>(c) >= ik[i].size()) {
        throw TaskError("fixed_choice index out of range for target " + std::to_string(ik[i].target_id));
      }
      choice[i] = c;
    }
  } else if (task.mode() == TaskMode::planar) {
    for (std::size_t i = 0; i < n; ++i) {
      double best = -1.0;
      for (std::size_t j = 0; j < ik[i].size(); ++j) {
        const double w = kinematics::manipulability(task.robot, ik[i].solutions[j]);
        if (w > best) {
          best = w;
          choice[i] = static_cast<int>(j);
        }
      }
    }
  } else {
    throw TaskError("C-space TSP baseline needs planar targets or a fixed per-target choice");
  }
  result.timings.ik_ms = elapsed_ms(t_ik);

  // Nodes 0..n-1 are the chosen configurations, node n is home.
  const auto t1 = Clock::now();
  const auto params = metrics::MetricParams::from_robot(task.robot);
  std::vector<const Configuration*> nodes(n + 1);
  for (std::size_t i = 0; i < n; ++i) nodes[i] = &ik[i].solutions[static_cast<std::size_t>(choice[i])];
  nodes[n] = &task.home;
  tsp::DistanceMatrix dm(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      dm.set(i, j, metrics::edge_cost(config.metric, params, *nodes[i], *nodes[j]));
    }
  }
  const auto cycle = tsp::solve(config.tsp_solver, dm, config.rnn_restarts, config.execution);
  result.step1_cost = tsp::tour_cost(dm, cycle);
  result.order = tsp::open_order_from_cycle(cycle, static_cast<int>(n));
  result.timings.step1_ms = elapsed_ms(t1);

  const auto t2 = Clock::now();
  const auto ordered = ordered_sets(ik, result.order.order);
  std::vector<int> chosen(n);
  for (std::size_t k = 0; k < n; ++k) chosen[k] = choice[static_cast<std::size_t>(result.order.order[k])];
  result.selection = cgraph::evaluate_selection(task.home, ordered, chosen, config.metric, params);
  result.timings.step2_ms = elapsed_ms(t2);

  finish_schedule(task, ordered, result);
  result.counts = {n, total_ik(ik), n * (n + 1) / 2};
  return result;
}

PipelineResult baseline_gtsp_exhaustive(const Task& task, const PipelineConfig& config) {
  const auto params = metrics::MetricParams::from_robot(task.robot);
  return enumerate_orders(task, config, [&](std::span<const kinematics::IkSolutionSet> ordered) {
    const auto graph = cgraph::build_layered_graph(task.home, ordered, config.metric, params, Execution::serial);
    return cgraph::shortest_selection(graph);
  });
}

PipelineResult gtsp_full_enumeration(const Task& task, const PipelineConfig& config) {
  const auto params = metrics::MetricParams::from_robot(task.robot);
  return enumerate_orders(task, config, [&](std::span<const kinematics::IkSolutionSet> ordered) {
    return cgraph::brute_force_selection(task.home, ordered, config.metric, params);
  });
}

// ---------------------------------------------------------------------------

std::uint64_t benchmark_instance_seed(std::uint64_t seed, std::size_t n, int repeat) {
  return mix_seed(seed, n, static_cast<std::uint64_t>(repeat));
}

std::vector<std::string> benchmark_variants(BenchmarkAxis axis) {
  switch (axis) {
    case BenchmarkAxis::tsp_solver: return {"exact", "rnn", "two_opt"};
    case BenchmarkAxis::metric: return {"linear_interp", "max_joint_difference", "weighted_euclidean"};
    case BenchmarkAxis::step_size: {
      std::vector<std::string> v;
      for (int d : kStepDivisors) v.push_back((d < 10 ? "step_pi_over_0" : "step_pi_over_") + std::to_string(d));
      return v;
    }
    case BenchmarkAxis::method: return {"gtsp_exhaustive", "robotsp", "tsp_cspace"};
  }
  return {};
}

namespace {

PipelineResult run_variant(BenchmarkAxis axis, std::size_t variant, const Task& task, PipelineConfig config) {
  switch (axis) {
    case BenchmarkAxis::tsp_solver:
      config.tsp_solver = std::array{tsp::SolverKind::exact, tsp::SolverKind::rnn, tsp::SolverKind::two_opt}[variant];
      return solve_robotsp(task, config);
    case BenchmarkAxis::metric:
      config.metric = std::array{metrics::MetricKind::linear_interp_duration, metrics::MetricKind::max_joint_difference,
                                 metrics::MetricKind::weighted_euclidean}[variant];
      return solve_robotsp(task, config);
    case BenchmarkAxis::step_size:
      config.step_size = std::numbers::pi / kStepDivisors[variant];
      return solve_robotsp(task, config);
    case BenchmarkAxis::method:
      if (variant == 0) return baseline_gtsp_exhaustive(task, config);
      if (variant == 1) return solve_robotsp(task, config);
      return baseline_tsp_cspace(task, config);
  }
  throw std::invalid_argument("unknown benchmark axis");
}

}  // namespace

std::vector<BenchmarkRow> benchmark_run(BenchmarkAxis axis, std::span<const std::size_t> sizes,
                                        int repeats, std::uint64_t seed,
                                        const BenchmarkOptions& options) {
  if (repeats < 1) throw std::invalid_argument("benchmark_run: repeats must be >= 1");
  const auto variants = benchmark_variants(axis);
  const std::size_t nv = variants.size();
  const std::size_t nr = static_cast<std::size_t>(repeats);

  std::vector<Task> tasks;
  tasks.reserve(sizes.size() * nr);
  for (std::size_t n : sizes) {
    if (n < 1) throw std::invalid_argument("benchmark_run: sizes must be >= 1");
    for (int r = 0; r < repeats; ++r) {
      tasks.push_back(generate_random_task(static_cast<int>(n), 1, benchmark_instance_seed(seed, n, r), TaskMode::planar));
    }
  }

  PipelineConfig config = options.base;
  if (options.parallel_cells) config.execution = Execution::serial;

  const std::size_t cells = tasks.size() * nv;
  std::vector<BenchmarkRow> rows(cells);
  std::vector<std::exception_ptr> errors(cells);
  const auto count = static_cast<std::ptrdiff_t>(cells);
#pragma omp parallel for schedule(dynamic) if (options.parallel_cells)
  for (std::ptrdiff_t c = 0; c < count; ++c) {
    const std::size_t cell = static_cast<std::size_t>(c);
    const std::size_t ti = cell / nv, v = cell % nv;
    const std::size_t si = ti / nr;
    const int r = static_cast<int>(ti % nr);
    BenchmarkRow& row = rows[cell];
    row.axis = to_string(axis);
    row.variant = variants[v];
    row.n = sizes[si];
    row.repeat = r;
    row.seed = benchmark_instance_seed(seed, sizes[si], r);
    try {
      const auto res = run_variant(axis, v, tasks[ti], config);
      row.timings = res.timings;
      row.step1_cost = res.step1_cost;
      row.step2_cost = res.selection.total_cost;
      row.schedule_s = res.schedule_duration;
      row.total_ik = res.counts.total_ik;
      row.edges = res.counts.edges;
    } catch (const GuardError&) {
      row.skipped = true;
    } catch (...) {
      errors[cell] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const BenchmarkRow& a, const BenchmarkRow& b) {
    return std::tie(a.variant, a.n, a.repeat) < std::tie(b.variant, b.n, b.repeat);
  });
  return rows;
}

std::string to_string(BenchmarkAxis axis) {
  switch (axis) {
    case BenchmarkAxis::tsp_solver: return "tsp_solver";
    case BenchmarkAxis::metric: return "metric";
    case BenchmarkAxis::step_size: return "step_size";
    case BenchmarkAxis::method: return "method";
  }
  return "unknown";
}

std::optional<BenchmarkAxis> parse_axis(std::string_view text) {
  if (text == "tsp_solver" || text == "solver") return BenchmarkAxis::tsp_solver;
  if (text == "metric") return BenchmarkAxis::metric;
  if (text == "step_size" || text == "step") return BenchmarkAxis::step_size;
  if (text == "method") return BenchmarkAxis::method;
  return std::nullopt;
}

}  // namespace robotsp
