#include <doctest.h>

#include "robotsp/cgraph.hpp"
#include "test_support.hpp"

using namespace robotsp;
using namespace robotsp::cgraph;
using kinematics::IkSolutionSet;
using metrics::MetricKind;

namespace {

metrics::MetricParams unit_params(std::size_t dof) {
  return {std::vector<double>(dof, 1.0), std::vector<double>(dof, 1.0), std::vector<double>(dof, 1.0)};
}

std::vector<IkSolutionSet> random_sets(Rng& rng, std::size_t n, int m_max, std::size_t dof) {
  std::vector<IkSolutionSet> sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    sets[i].target_id = static_cast<int>(i);
    const auto m = rng.uniform_int(1, m_max);
    for (int k = 0; k < m; ++k) sets[i].solutions.push_back(testing::random_configuration(rng, dof));
  }
  return sets;
}

}  // namespace

TEST_CASE("vertex and edge counts") {
  const std::vector<std::size_t> a{2, 3, 2};
  CHECK(expected_vertex_count(a) == 9);
  CHECK(expected_edge_count(a) == 16);
  const std::vector<std::size_t> b{1};
  CHECK(expected_vertex_count(b) == 3);
  CHECK(expected_edge_count(b) == 2);

  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(1, 9));
    const auto sets = random_sets(rng, n, 6, 2);
    const auto g = build_layered_graph(Configuration{0, 0}, sets, MetricKind::max_joint_difference,
                                       unit_params(2));
    std::size_t verts = 2, edges = sets.front().size() + sets.back().size();
    std::vector<std::size_t> sizes;
    for (std::size_t l = 0; l < n; ++l) {
      verts += sets[l].size();
      sizes.push_back(sets[l].size());
      if (l + 1 < n) edges += sets[l].size() * sets[l + 1].size();
    }
    CHECK(g.vertex_count() == verts);
    CHECK(g.edge_count() == edges);
    CHECK(expected_vertex_count(sizes) == verts);
    CHECK(expected_edge_count(sizes) == edges);
  }
}

TEST_CASE("two layers of two") {
  // Home 0, layer 1 {1, 3}, layer 2 {2, -1}; one joint, unit speed.
  const std::vector<IkSolutionSet> sets{{0, {{1.0}, {3.0}}}, {1, {{2.0}, {-1.0}}}};
  const auto g = build_layered_graph(Configuration{0.0}, sets, MetricKind::max_joint_difference,
                                     unit_params(1));
  const auto r = shortest_selection(g);
  CHECK(r.total_cost == 4.0);
  CHECK(r.chosen == std::vector<int>{0, 0});
  CHECK(r.per_edge_costs == std::vector<double>{1.0, 1.0, 2.0});
}

TEST_CASE("single target is forced") {
  const std::vector<IkSolutionSet> sets{{5, {{0.5, -0.5}}}};
  const auto g = build_layered_graph(Configuration{0.0, 0.0}, sets, MetricKind::max_joint_difference,
                                     unit_params(2));
  const auto r = shortest_selection(g);
  CHECK(r.chosen == std::vector<int>{0});
  CHECK(r.total_cost == 1.0);
}

TEST_CASE("ties go to the lexicographically smallest sequence") {
  const std::vector<IkSolutionSet> sets{{0, {{1.0}, {-1.0}}}, {1, {{0.0}, {0.0}}}};
  const auto g = build_layered_graph(Configuration{0.0}, sets, MetricKind::max_joint_difference,
                                     unit_params(1));
  CHECK(shortest_selection(g).chosen == std::vector<int>{0, 0});
}

TEST_CASE("shortest_selection equals brute force") {
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 7));
    const auto sets = random_sets(rng, n, 4, 3);
    const Configuration home = testing::random_configuration(rng, 3);
    metrics::MetricParams p{{3, 2, 1}, {1, 0.5, 2}, {1, 1, 3}};
    for (MetricKind k : metrics::kAllMetrics) {
      const auto fast = shortest_selection(build_layered_graph(home, sets, k, p));
      const auto slow = brute_force_selection(home, sets, k, p);
      CHECK(fast.total_cost == slow.total_cost);
      CHECK(fast.chosen == slow.chosen);
      CHECK(evaluate_selection(home, sets, fast.chosen, k, p) == fast);
    }
  }
}

TEST_CASE("monotonicity and fixed-choice dominance") {
  Rng rng(17);
  const auto p = unit_params(2);
  for (int i = 0; i < 50; ++i) {
    auto sets = random_sets(rng, 5, 3, 2);
    const Configuration home{0.0, 0.0};
    const double before = shortest_selection(build_layered_graph(home, sets, MetricKind::weighted_euclidean, p)).total_cost;

    std::vector<int> fixed(sets.size());
    for (std::size_t l = 0; l < sets.size(); ++l) {
      fixed[l] = static_cast<int>(rng.uniform_int(0, static_cast<std::int64_t>(sets[l].size()) - 1));
    }
    CHECK(before <= evaluate_selection(home, sets, fixed, MetricKind::weighted_euclidean, p).total_cost);

    sets[2].solutions.push_back(testing::random_configuration(rng, 2));
    const double after = shortest_selection(build_layered_graph(home, sets, MetricKind::weighted_euclidean, p)).total_cost;
    CHECK(after <= before);
  }
}

TEST_CASE("serial and parallel construction agree") {
  Rng rng(19);
  const auto sets = random_sets(rng, 40, 8, 6);
  const Configuration home = testing::random_configuration(rng, 6);
  const auto p = unit_params(6);
  for (MetricKind k : metrics::kAllMetrics) {
    CHECK(build_layered_graph(home, sets, k, p, Execution::serial) ==
          build_layered_graph(home, sets, k, p, Execution::parallel));
  }
}

TEST_CASE("errors and guards") {
  const auto p = unit_params(1);
  const std::vector<IkSolutionSet> empty_layer{{0, {{1.0}}}, {3, {}}};
  CHECK_THROWS_WITH_AS(build_layered_graph(Configuration{0.0}, empty_layer, MetricKind::max_joint_difference, p),
                       "target 3 has no IK solutions", TaskError);
  CHECK_THROWS_AS(build_layered_graph(Configuration{0.0}, {}, MetricKind::max_joint_difference, p), TaskError);

  std::vector<IkSolutionSet> big(7);
  for (auto& s : big) s.solutions.assign(8, Configuration{0.0});
  CHECK_THROWS_AS(brute_force_selection(Configuration{0.0}, big, MetricKind::max_joint_difference, p), GuardError);

  const std::vector<IkSolutionSet> ok{{0, {{1.0}}}};
  CHECK_THROWS_AS(evaluate_selection(Configuration{0.0}, ok, std::vector<int>{1}, MetricKind::max_joint_difference, p),
                  std::invalid_argument);
}

TEST_CASE("rounding ties still pick the lexicographically smallest optimum") {
  // Tails that differ by an ulp can give the same total once the prefix is
  // added; enough random cases hit that.
  Rng rng(101);
  const metrics::MetricParams p{{3, 2, 1, 1}, {1, 0.5, 2, 1}, {1, 2, 3, 0.5}};
  int mismatches = 0;
  for (int i = 0; i < 2000; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 7));
    const auto sets = random_sets(rng, n, 4, 4);
    const Configuration home = testing::random_configuration(rng, 4);
    for (MetricKind k : metrics::kAllMetrics) {
      const auto fast = shortest_selection(build_layered_graph(home, sets, k, p));
      const auto slow = brute_force_selection(home, sets, k, p);
      if (fast.total_cost != slow.total_cost || fast.chosen != slow.chosen) ++mismatches;
    }
  }
  CHECK(mismatches == 0);
}
