#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "robotsp/kinematics.hpp"
#include "robotsp/metrics.hpp"
#include "robotsp/model.hpp"

namespace robotsp::cgraph {

/// Dense row-major cost block between two consecutive layers.
struct CostBlock {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;

  double operator()(std::size_t r, std::size_t c) const { return cost[r * cols + c]; }
  friend bool operator==(const CostBlock&, const CostBlock&) = default;
};

/// Start -> layer 0 -> ... -> layer n-1 -> Goal. Start and Goal both stand
/// for the home configuration. Every layer pair is fully connected.
struct LayeredGraph {
  Configuration home;
  std::vector<std::vector<Configuration>> layers;
  std::vector<double> start_costs;   // Start -> layer 0, size m_0
  std::vector<CostBlock> between;    // layer i -> layer i+1, size n-1
  std::vector<double> goal_costs;    // layer n-1 -> Goal, size m_{n-1}

  std::size_t layer_count() const { return layers.size(); }
  std::size_t vertex_count() const;
  std::size_t edge_count() const;

  friend bool operator==(const LayeredGraph&, const LayeredGraph&) = default;
};

struct SelectionResult {
  std::vector<int> chosen;            // IK index per layer
  double total_cost = 0.0;
  std::vector<double> per_edge_costs; // n + 1 legs, home to home

  friend bool operator==(const SelectionResult&, const SelectionResult&) = default;
};

/// Vertex and edge totals of the layered graph for the given layer sizes.
std::size_t expected_vertex_count(std::span<const std::size_t> layer_sizes);
std::size_t expected_edge_count(std::span<const std::size_t> layer_sizes);

/// Throws TaskError naming the target if any IK set is empty.
LayeredGraph build_layered_graph(const Configuration& home,
                                 std::span<const kinematics::IkSolutionSet> ordered_ik,
                                 metrics::MetricKind metric, const metrics::MetricParams& params,
                                 Execution exec = Execution::parallel);

/// Minimal Start -> Goal path. Among equal-cost paths the lexicographically
/// smallest index sequence wins.
///
/// Cost-to-go is accumulated from Goal back to Start, so the returned total
/// is the right-nested sum c_0 + (c_1 + (... + c_n)) of its legs. Floating
/// point addition is monotone, which makes this the exact minimum of that
/// same expression over all paths.
SelectionResult shortest_selection(const LayeredGraph& graph);

inline constexpr std::uint64_t kBruteForceCombinationLimit = 1'000'000;

/// Enumerates every IK combination. Throws GuardError when the product of
/// layer sizes exceeds kBruteForceCombinationLimit.
SelectionResult brute_force_selection(const Configuration& home,
                                      std::span<const kinematics::IkSolutionSet> ordered_ik,
                                      metrics::MetricKind metric,
                                      const metrics::MetricParams& params);

/// Cost of a fixed IK assignment, summed the same way as shortest_selection.
SelectionResult evaluate_selection(const Configuration& home,
                                   std::span<const kinematics::IkSolutionSet> ordered_ik,
                                   std::span<const int> chosen, metrics::MetricKind metric,
                                   const metrics::MetricParams& params);

}  // namespace robotsp::cgraph
