#include "robotsp/cli.hpp"

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "robotsp/io.hpp"
#include "robotsp/pipeline.hpp"

namespace robotsp::cli {

namespace {

struct SolveFlags {
  std::string solver = "two_opt";
  std::string metric = "max_joint_difference";
  std::string step = "pi/4";
  int restarts = 5;
  bool depot = true;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
  cmd->add_option("--solver", f.solver, "Task-space TSP solver")
      ->check(CLI::IsMember({"exact", "two_opt", "2opt", "rnn"}))
      ->capture_default_str();
  cmd->add_option("--metric", f.metric, "Configuration-space metric")
      ->check(CLI::IsMember({"weighted_euclidean", "max_joint_difference", "linear_interp",
                             "linear_interp_duration"}))
      ->capture_default_str();
  cmd->add_option("--step-size", f.step, "Tool-orientation step for planar targets (e.g. pi/4)")
      ->capture_default_str();
  cmd->add_option("--restarts", f.restarts, "Nearest-neighbour restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--depot,!--no-depot", f.depot, "Anchor the task-space tour at the home position");
}

PipelineConfig to_config(const SolveFlags& f) {
  PipelineConfig c;
  c.tsp_solver = *tsp::parse_solver(f.solver);
  c.metric = *metrics::parse_metric(f.metric);
  c.step_size = io::parse_step_size(f.step);
  c.rnn_restarts = f.restarts;
  c.include_home_depot = f.depot;
  return c;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int cmd_generate(int n, int m_max, std::uint64_t seed, const std::string& mode, const std::string& path,
                 std::ostream& out) {
  const Task task = generate_random_task(n, m_max, seed, *parse_task_mode(mode));
  io::write_task(path, task);
  out << path << '\n';
  return kOk;
}

int cmd_solve(const std::string& task_path, const SolveFlags& flags, const std::string& method,
              const std::string& out_path, std::ostream& out) {
  const Task task = io::read_task(task_path);
  const PipelineConfig config = to_config(flags);
  PipelineResult result;
  if (method == "robotsp") {
    result = solve_robotsp(task, config);
  } else if (method == "tsp_cspace") {
    result = baseline_tsp_cspace(task, config);
  } else {
    result = baseline_gtsp_exhaustive(task, config);
  }
  const auto doc = io::result_to_json(result, {method, config});
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    io::write_file_atomic(out_path, text);
    out << "n=" << result.counts.n << " total_ik=" << result.counts.total_ik
        << " step2_cost=" << num(result.selection.total_cost)
        << " schedule_s=" << num(result.schedule_duration) << " -> " << out_path << '\n';
  }
  return kOk;
}

int verdict(std::ostream& out, const std::string& what, bool match, double fast, double oracle) {
  out << (match ? "MATCH" : "MISMATCH") << " what=" << what << " fast=" << num(fast)
      << " oracle=" << num(oracle) << '\n';
  return match ? kOk : kFailure;
}

int cmd_oracle(const std::string& task_path, const SolveFlags& flags, const std::string& what,
               std::ostream& out) {
  const Task task = io::read_task(task_path);
  const PipelineConfig config = to_config(flags);

  if (what == "tsp") {
    const auto dm = tsp::build_task_distance_matrix(task, config.include_home_depot);
    const auto fast = tsp::solve_exact(dm);
    const auto oracle = tsp::solve_brute_force(dm);
    const double a = tsp::tour_cost(dm, fast), b = tsp::tour_cost(dm, oracle);
    return verdict(out, what, a == b, a, b);
  }
  if (what == "gtsp") {
    const auto fast = baseline_gtsp_exhaustive(task, config);
    const auto oracle = gtsp_full_enumeration(task, config);
    const bool same = fast.selection.total_cost == oracle.selection.total_cost &&
                      fast.order == oracle.order && fast.selection.chosen == oracle.selection.chosen;
    return verdict(out, what, same, fast.selection.total_cost, oracle.selection.total_cost);
  }

  // step2: layered-graph search against full enumeration along the Step-1 order.
  const auto ik = resolve_ik(task, config.step_size);
  std::uint64_t combos = 1;
  for (const auto& s : ik) {
    combos *= s.size();
    if (combos > cgraph::kBruteForceCombinationLimit) {
      throw GuardError("step2 oracle refuses more than 1e6 IK combinations");
    }
  }
  const auto fast = solve_robotsp(task, config);
  std::vector<kinematics::IkSolutionSet> ordered;
  for (int idx : fast.order.order) ordered.push_back(ik[static_cast<std::size_t>(idx)]);
  const auto oracle = cgraph::brute_force_selection(task.home, ordered, config.metric,
                                                    metrics::MetricParams::from_robot(task.robot));
  const bool same = fast.selection.total_cost == oracle.total_cost && fast.selection.chosen == oracle.chosen;
  return verdict(out, what, same, fast.selection.total_cost, oracle.total_cost);
}

int cmd_benchmark(const std::string& axis_name, const std::vector<std::size_t>& sizes, int repeats,
                  std::uint64_t seed, const SolveFlags& flags, bool parallel_cells,
                  const std::string& csv_path, std::ostream& out) {
  BenchmarkOptions options;
  options.base = to_config(flags);
  options.parallel_cells = parallel_cells;
  const auto rows = benchmark_run(*parse_axis(axis_name), sizes, repeats, seed, options);
  io::write_file_atomic(csv_path, io::benchmark_csv(rows));
  out << rows.size() << " rows -> " << csv_path << '\n';
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Robotic task sequencing: task-space tour, optimal IK selection, straight-line schedule"};
  app.require_subcommand(1);

  int n = 0, m_max = 3;
  std::uint64_t seed = 0;
  std::string mode = "explicit_ik", gen_out;
  auto* gen = app.add_subcommand("generate", "Write a seeded random task file");
  gen->add_option("--n", n, "Number of targets")->required()->check(CLI::PositiveNumber);
  gen->add_option("--m-max", m_max, "Maximum IK solutions per explicit target")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen->add_option("--mode", mode, "explicit_ik or planar")
      ->check(CLI::IsMember({"explicit_ik", "planar"}))
      ->capture_default_str();
  gen->add_option("--out", gen_out, "Output task file")->required();

  std::string task_path, method = "robotsp", solve_out;
  SolveFlags flags;
  auto* solve = app.add_subcommand("solve", "Solve a task file and write a result file");
  solve->add_option("--task", task_path, "Task file")->required();
  add_solve_flags(solve, flags);
  solve->add_option("--method", method, "robotsp, tsp_cspace or gtsp")
      ->check(CLI::IsMember({"robotsp", "tsp_cspace", "gtsp"}))
      ->capture_default_str();
  solve->add_option("--out", solve_out, "Result file (stdout if omitted)");

  std::string what;
  auto* oracle = app.add_subcommand("oracle", "Check a fast solver against its exhaustive oracle");
  oracle->add_option("--task", task_path, "Task file")->required();
  add_solve_flags(oracle, flags);
  oracle->add_option("--what", what, "step2, tsp or gtsp")
      ->required()
      ->check(CLI::IsMember({"step2", "tsp", "gtsp"}));

  std::string axis, csv;
  std::vector<std::size_t> sizes;
  int repeats = 1;
  bool parallel_cells = false;
  auto* bench = app.add_subcommand("benchmark", "Run a benchmark sweep and write CSV");
  bench->add_option("--axis", axis, "tsp_solver, metric, step_size or method")
      ->required()
      ->check(CLI::IsMember({"tsp_solver", "metric", "step_size", "method"}));
  bench->add_option("--sizes", sizes, "Comma-separated target counts")
      ->required()
      ->delimiter(',')
      ->check(CLI::PositiveNumber);
  bench->add_option("--repeats", repeats, "Instances per size")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--seed", seed, "Instance stream seed")->capture_default_str();
  add_solve_flags(bench, flags);
  bench->add_flag("--parallel-cells", parallel_cells, "Evaluate benchmark cells concurrently");
  bench->add_option("--csv", csv, "Output CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(n, m_max, seed, mode, gen_out, out);
    if (solve->parsed()) return cmd_solve(task_path, flags, method, solve_out, out);
    if (bench->parsed()) return cmd_benchmark(axis, sizes, repeats, seed, flags, parallel_cells, csv, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }

  try {
    return cmd_oracle(task_path, flags, what, out);
  } catch (const GuardError& e) {
    err << "guard: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace robotsp::cli
