#include <doctest.h>

#include <cmath>

#include "robotsp/tsp.hpp"
#include "test_support.hpp"

using namespace robotsp;
using namespace robotsp::tsp;

namespace {

DistanceMatrix square() {
  const std::vector<Point2> pts{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  return euclidean_matrix(pts);
}

DistanceMatrix line(std::vector<double> xs) {
  std::vector<Point2> pts;
  for (double x : xs) pts.push_back({x, 0.0});
  return euclidean_matrix(pts);
}

double oracle_cost(const DistanceMatrix& dm) {
  const auto t = testing::permutation_oracle(dm);
  double c = 0.0;
  for (std::size_t k = 0; k < t.size(); ++k) c += dm(t.order[k], t.order[(k + 1) % t.size()]);
  return c;
}

}  // namespace

TEST_CASE("distance matrices") {
  const std::vector<Point2> pts{{0, 0}, {3, 4}};
  CHECK(euclidean_matrix(pts)(0, 1) == 5.0);

  const auto sq = square();
  CHECK(sq(0, 1) == 1.0);
  CHECK(sq(1, 2) == 1.0);
  CHECK(sq(0, 2) == doctest::Approx(std::sqrt(2.0)));
  CHECK_NOTHROW(sq.check());

  Rng rng(1);
  const auto pts40 = testing::random_points(rng, 40);
  const auto serial = euclidean_matrix(pts40, Execution::serial);
  const auto parallel = euclidean_matrix(pts40, Execution::parallel);
  CHECK(serial == parallel);
  CHECK_NOTHROW(serial.check());

  DistanceMatrix bad(2);
  bad.set(0, 1, -1.0);
  CHECK_THROWS_AS(bad.check(), std::invalid_argument);
}

TEST_CASE("task distance matrix") {
  Task task;
  task.robot = RobotModel::planar_arm({1, 1, 1});
  task.home = Configuration{0, 0, 0};
  task.targets = {{0, Point2{0, 0}, {}}, {1, Point2{3, 4}, {}}};
  const auto plain = build_task_distance_matrix(task, false);
  CHECK(plain.size() == 2);
  CHECK(plain(0, 1) == 5.0);
  const auto depot = build_task_distance_matrix(task, true);
  REQUIRE(depot.size() == 3);
  // Home tool position of the stretched arm is (3, 0).
  CHECK(depot(0, 2) == 3.0);
  CHECK(depot(1, 2) == 4.0);

  Task explicit_task;
  explicit_task.robot = RobotModel::with_default_limits(1);
  explicit_task.home = Configuration{0};
  explicit_task.targets = {{0, Point2{0, 0}, std::vector<Configuration>{{0.0}}},
                           {1, Point2{2, 0}, std::vector<Configuration>{{1.0}}}};
  const auto centroid = build_task_distance_matrix(explicit_task, true);
  CHECK(centroid(0, 2) == 1.0);
  CHECK(centroid(1, 2) == 1.0);

  explicit_task.targets[1].position.reset();
  CHECK_THROWS_AS(build_task_distance_matrix(explicit_task, false), TaskError);
}

TEST_CASE("tour_cost") {
  const auto sq = square();
  CHECK(tour_cost(sq, {{0, 1, 2, 3}, TourKind::closed_cycle}) == 4.0);
  CHECK(tour_cost(DistanceMatrix(1), {{0}, TourKind::closed_cycle}) == 0.0);
  const auto l = line({0, 1, 2});
  CHECK(tour_cost(l, {{0, 1, 2}, TourKind::open_path}) == 2.0);
  CHECK(tour_cost(l, {{0, 1, 2}, TourKind::closed_cycle}) == 4.0);

  SUBCASE("rotations and reversals cost the same bits") {
    Rng rng(2);
    const auto dm = euclidean_matrix(testing::random_points(rng, 9));
    std::vector<int> base{0, 4, 2, 7, 1, 8, 3, 6, 5};
    const double ref = tour_cost(dm, {base, TourKind::closed_cycle});
    for (int r = 0; r < 9; ++r) {
      std::rotate(base.begin(), base.begin() + 1, base.end());
      CHECK(tour_cost(dm, {base, TourKind::closed_cycle}) == ref);
      std::vector<int> rev(base.rbegin(), base.rend());
      CHECK(tour_cost(dm, {rev, TourKind::closed_cycle}) == ref);
    }
  }
}

TEST_CASE("canonical_cycle") {
  CHECK(canonical_cycle({{2, 3, 0, 1}, TourKind::closed_cycle}).order == std::vector<int>{0, 1, 2, 3});
  CHECK(canonical_cycle({{2, 1, 0, 3}, TourKind::closed_cycle}).order == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("solve_exact") {
  SUBCASE("examples") {
    const auto sq = square();
    const auto t = solve_exact(sq);
    CHECK(tour_cost(sq, t) == 4.0);
    CHECK(t.order == std::vector<int>{0, 1, 2, 3});
    CHECK(tour_cost(line({0, 1, 2}), solve_exact(line({0, 1, 2}))) == 4.0);
    CHECK(solve_exact(DistanceMatrix(1)).order == std::vector<int>{0});
  }
  SUBCASE("matches the permutation oracle on random n=8") {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      const auto dm = euclidean_matrix(testing::random_points(rng, 8));
      const auto t = solve_exact(dm);
      CHECK(tour_cost(dm, t) == doctest::Approx(oracle_cost(dm)).epsilon(1e-12));
      CHECK(tour_cost(dm, t) == tour_cost(dm, solve_brute_force(dm)));
      CHECK(t.order.front() == 0);
      CHECK(t.order[1] < t.order.back());
    }
  }
  SUBCASE("serial and parallel agree") {
    Rng rng(4);
    const auto dm = euclidean_matrix(testing::random_points(rng, 13));
    CHECK(solve_exact(dm, Execution::serial) == solve_exact(dm, Execution::parallel));
  }
  SUBCASE("label equivariance of the cost") {
    Rng rng(5);
    const auto pts = testing::random_points(rng, 9);
    std::vector<Point2> shuffled(pts.rbegin(), pts.rend());
    std::swap(shuffled[2], shuffled[6]);
    CHECK(tour_cost(euclidean_matrix(pts), solve_exact(euclidean_matrix(pts))) ==
          doctest::Approx(tour_cost(euclidean_matrix(shuffled), solve_exact(euclidean_matrix(shuffled))))
              .epsilon(1e-12));
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(solve_exact(DistanceMatrix(21)), GuardError);
    CHECK_THROWS_AS(solve_brute_force(DistanceMatrix(12)), GuardError);
  }
}

TEST_CASE("solve_rnn") {
  const auto l = line({0, 1, 3, 7});
  const auto t = solve_rnn(l, 1);
  CHECK(t.order == std::vector<int>{0, 1, 2, 3});
  CHECK(tour_cost(l, t) == 14.0);
  CHECK_THROWS(solve_rnn(l, 0));
  CHECK_THROWS(solve_rnn(l, 5));

  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const auto dm = euclidean_matrix(testing::random_points(rng, 10));
    CHECK(tour_cost(dm, solve_rnn(dm, 10)) <= tour_cost(dm, solve_rnn(dm, 1)));
  }
}

TEST_CASE("nearest neighbour can corner itself") {
  Rng rng(7);
  bool found = false;
  for (int i = 0; i < 200 && !found; ++i) {
    const auto dm = euclidean_matrix(testing::random_points(rng, 8));
    found = tour_cost(dm, solve_rnn(dm, 1)) > tour_cost(dm, solve_exact(dm)) * (1 + 1e-9);
  }
  CHECK(found);
}

TEST_CASE("solve_2opt") {
  const auto sq = square();
  const TourOrder crossing{{0, 2, 1, 3}, TourKind::closed_cycle};
  CHECK(tour_cost(sq, crossing) == doctest::Approx(2 + 2 * std::sqrt(2.0)));
  const auto fixed = solve_2opt(sq, crossing);
  CHECK(tour_cost(sq, fixed) == 4.0);
  CHECK(tour_cost(sq, solve_2opt(sq, solve_exact(sq))) == 4.0);
  CHECK_FALSE(is_two_opt_optimal(sq, crossing));

  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto dm = euclidean_matrix(testing::random_points(rng, 12));
    const auto init = solve_rnn(dm, 3);
    const auto t = solve_2opt(dm, init);
    CHECK(is_two_opt_optimal(dm, t));
    CHECK(tour_cost(dm, t) <= tour_cost(dm, init));
    CHECK(tour_cost(dm, solve_exact(dm)) <= tour_cost(dm, t));
    CHECK(solve_2opt(dm, init) == t);
  }
}

TEST_CASE("open_order_from_cycle") {
  CHECK(open_order_from_cycle({{3, 2, 0, 1}, TourKind::closed_cycle}, 3).order == std::vector<int>{1, 0, 2});
  const auto one = open_order_from_cycle({{1, 0}, TourKind::closed_cycle}, 1);
  CHECK(one.order == std::vector<int>{0});
  CHECK(one.kind == TourKind::open_path);
  CHECK_THROWS(open_order_from_cycle({{0, 1}, TourKind::closed_cycle}, 5));

  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const auto dm = euclidean_matrix(testing::random_points(rng, 7));
    const auto cyc = solve_exact(dm);
    CHECK(tour_cost(dm, open_order_from_cycle(cyc, 6)) <= tour_cost(dm, cyc));
  }
}

TEST_CASE("open_at_longest_edge") {
  const auto l = line({0, 1, 2, 10});
  const auto open = open_at_longest_edge(l, {{0, 1, 2, 3}, TourKind::closed_cycle});
  CHECK(open.kind == TourKind::open_path);
  CHECK(tour_cost(l, open) == 10.0);
}

TEST_CASE("solver dispatch") {
  for (SolverKind k : {SolverKind::exact, SolverKind::two_opt, SolverKind::rnn}) {
    CHECK(parse_solver(to_string(k)) == k);
  }
  CHECK(parse_solver("2opt") == SolverKind::two_opt);
  const auto sq = square();
  CHECK(tour_cost(sq, solve(SolverKind::rnn, sq, 99)) == 4.0);
}
