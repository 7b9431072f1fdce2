#include "robotsp/cgraph.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace robotsp::cgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// c_0 + (c_1 + (... + c_n)), the order in which the backward sweep adds legs.
double right_nested_sum(std::span<const double> legs) {
  if (legs.empty()) return 0.0;
  double s = legs.back();
  for (std::size_t k = legs.size() - 1; k-- > 0;) s = legs[k] + s;
  return s;
}

void require_nonempty(std::span<const kinematics::IkSolutionSet> ordered_ik) {
  if (ordered_ik.empty()) throw TaskError("no targets to select IK solutions for");
  for (const auto& set : ordered_ik) {
    if (set.solutions.empty()) {
      throw TaskError("target " + std::to_string(set.target_id) + " has no IK solutions");
    }
  }
}

std::vector<double> legs_for(const Configuration& home,
                             std::span<const kinematics::IkSolutionSet> ordered_ik,
                             std::span<const int> chosen, metrics::MetricKind metric,
                             const metrics::MetricParams& params) {
  const std::size_t n = ordered_ik.size();
  std::vector<double> legs(n + 1);
  const Configuration* prev = &home;
  for (std::size_t i = 0; i < n; ++i) {
    const Configuration& q = ordered_ik[i].solutions[static_cast<std::size_t>(chosen[i])];
    legs[i] = metrics::edge_cost(metric, params, *prev, q);
    prev = &q;
  }
  legs[n] = metrics::edge_cost(metric, params, *prev, home);
  return legs;
}

}  // namespace

std::size_t LayeredGraph::vertex_count() const {
  std::size_t v = 2;
  for (const auto& layer : layers) v += layer.size();
  return v;
}

std::size_t LayeredGraph::edge_count() const {
  std::size_t e = start_costs.size() + goal_costs.size();
  for (const auto& block : between) e += block.cost.size();
  return e;
}

std::size_t expected_vertex_count(std::span<const std::size_t> layer_sizes) {
  std::size_t v = 2;
  for (std::size_t m : layer_sizes) v += m;
  return v;
}

std::size_t expected_edge_count(std::span<const std::size_t> layer_sizes) {
  if (layer_sizes.empty()) return 0;
  std::size_t e = layer_sizes.front() + layer_sizes.back();
  for (std::size_t i = 0; i + 1 < layer_sizes.size(); ++i) e += layer_sizes[i] * layer_sizes[i + 1];
  return e;
}

LayeredGraph build_layered_graph(const Configuration& home,
                                 std::span<const kinematics::IkSolutionSet> ordered_ik,
                                 metrics::MetricKind metric, const metrics::MetricParams& params,
                                 Execution exec) {
  require_nonempty(ordered_ik);
  const std::size_t n = ordered_ik.size();

  LayeredGraph g;
  g.home = home;
  g.layers.reserve(n);
  for (const auto& set : ordered_ik) g.layers.push_back(set.solutions);

  const auto& first = g.layers.front();
  const auto& last = g.layers.back();
  g.start_costs.resize(first.size());
  for (std::size_t j = 0; j < first.size(); ++j) {
    g.start_costs[j] = metrics::edge_cost(metric, params, home, first[j]);
  }
  g.goal_costs.resize(last.size());
  for (std::size_t j = 0; j < last.size(); ++j) {
    g.goal_costs[j] = metrics::edge_cost(metric, params, last[j], home);
  }

  g.between.resize(n - 1);
  const auto pairs = static_cast<std::ptrdiff_t>(n - 1);
#pragma omp parallel for schedule(dynamic) if (exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < pairs; ++i) {
    const auto& from = g.layers[static_cast<std::size_t>(i)];
    const auto& to = g.layers[static_cast<std::size_t>(i) + 1];
    CostBlock& block = g.between[static_cast<std::size_t>(i)];
    block.rows = from.size();
    block.cols = to.size();
    block.cost.resize(block.rows * block.cols);
    for (std::size_t r = 0; r < block.rows; ++r) {
      for (std::size_t c = 0; c < block.cols; ++c) {
        block.cost[r * block.cols + c] = metrics::edge_cost(metric, params, from[r], to[c]);
      }
    }
  }
  return g;
}

SelectionResult shortest_selection(const LayeredGraph& graph) {
  const std::size_t n = graph.layers.size();
  if (n == 0) throw std::invalid_argument("shortest_selection: empty graph");

  // to_go[i][r]: cheapest cost from vertex r of layer i to Goal.
  std::vector<std::vector<double>> to_go(n);
  to_go[n - 1] = graph.goal_costs;
  for (std::size_t i = n - 1; i-- > 0;) {
    const CostBlock& block = graph.between[i];
    const auto& next = to_go[i + 1];
    auto& cur = to_go[i];
    cur.assign(block.rows, kInf);
    for (std::size_t r = 0; r < block.rows; ++r) {
      for (std::size_t c = 0; c < block.cols; ++c) {
        const double v = block(r, c) + next[c];
        if (v < cur[r]) cur[r] = v;
      }
    }
  }

  SelectionResult result;
  result.total_cost = kInf;
  for (std::size_t j = 0; j < graph.start_costs.size(); ++j) {
    const double v = graph.start_costs[j] + to_go[0][j];
    if (v < result.total_cost) result.total_cost = v;
  }

  // Forward walk taking the smallest index that stays on an optimal path.
  result.chosen.resize(n);
  result.per_edge_costs.resize(n + 1);
  for (std::size_t j = 0; j < graph.start_costs.size(); ++j) {
    if (graph.start_costs[j] + to_go[0][j] == result.total_cost) {
      result.chosen[0] = static_cast<int>(j);
      result.per_edge_costs[0] = graph.start_costs[j];
      break;
    }
  }
  // A tail that is a few ulps above the cost-to-go can still round to the
  // same total once the prefix is added, so near-ties are re-evaluated with
  // the whole prefix. The cheapest tail always qualifies.
  const double near = 1e-9 * (1.0 + std::abs(result.total_cost));
  auto total_with_tail = [&](std::size_t last_leg, double tail) {
    double v = tail;
    for (std::size_t k = last_leg + 1; k-- > 0;) v = result.per_edge_costs[k] + v;
    return v;
  };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const CostBlock& block = graph.between[i];
    const auto r = static_cast<std::size_t>(result.chosen[i]);
    for (std::size_t c = 0; c < block.cols; ++c) {
      const double tail = block(r, c) + to_go[i + 1][c];
      const bool on_path = tail == to_go[i][r] ||
                           (tail <= to_go[i][r] + near && total_with_tail(i, tail) == result.total_cost);
      if (on_path) {
        result.chosen[i + 1] = static_cast<int>(c);
        result.per_edge_costs[i + 1] = block(r, c);
        break;
      }
    }
  }
  result.per_edge_costs[n] = graph.goal_costs[static_cast<std::size_t>(result.chosen[n - 1])];
  return result;
}

SelectionResult brute_force_selection(const Configuration& home,
                                      std::span<const kinematics::IkSolutionSet> ordered_ik,
                                      metrics::MetricKind metric,
                                      const metrics::MetricParams& params) {
  require_nonempty(ordered_ik);
  const std::size_t n = ordered_ik.size();
  std::uint64_t combos = 1;
  for (const auto& set : ordered_ik) {
    combos *= set.solutions.size();
    if (combos > kBruteForceCombinationLimit) {
      throw GuardError("brute-force selection refuses more than " +
                       std::to_string(kBruteForceCombinationLimit) + " IK combinations");
    }
  }

  // Odometer in lexicographic order; strict improvement keeps the first
  // (lexicographically smallest) optimum.
  std::vector<int> idx(n, 0);
  SelectionResult best;
  best.total_cost = kInf;
  while (true) {
    auto legs = legs_for(home, ordered_ik, idx, metric, params);
    const double cost = right_nested_sum(legs);
    if (cost < best.total_cost) {
      best.total_cost = cost;
      best.chosen = idx;
      best.per_edge_costs = std::move(legs);
    }
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (static_cast<std::size_t>(++idx[k]) < ordered_ik[k].solutions.size()) break;
      idx[k] = 0;
      if (k == 0) return best;
    }
  }
}

SelectionResult evaluate_selection(const Configuration& home,
                                   std::span<const kinematics::IkSolutionSet> ordered_ik,
                                   std::span<const int> chosen, metrics::MetricKind metric,
                                   const metrics::MetricParams& params) {
  require_nonempty(ordered_ik);
  if (chosen.size() != ordered_ik.size()) {
    throw std::invalid_argument("evaluate_selection: one index per target required");
  }
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i] < 0 || static_cast<std::size_t>(chosen[i]) >= ordered_ik[i].solutions.size()) {
      throw std::invalid_argument("evaluate_selection: IK index out of range");
    }
  }
  SelectionResult result;
  result.chosen.assign(chosen.begin(), chosen.end());
  result.per_edge_costs = legs_for(home, ordered_ik, chosen, metric, params);
  result.total_cost = right_nested_sum(result.per_edge_costs);
  return result;
}

}  // namespace robotsp::cgraph
