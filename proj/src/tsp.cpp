#include "robotsp/tsp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "robotsp/kinematics.hpp"

namespace robotsp::tsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Sum of edges in the given node order, closing edge included.
double cycle_sum(const DistanceMatrix& dm, std::span<const int> order) {
  double sum = 0.0;
  const std::size_t n = order.size();
  for (std::size_t k = 0; k + 1 < n; ++k) sum += dm(order[k], order[k + 1]);
  if (n > 1) sum += dm(order[n - 1], order[0]);
  return sum;
}

std::size_t position_of(std::span<const int> order, int node) {
  const auto it = std::find(order.begin(), order.end(), node);
  return it == order.end() ? order.size() : static_cast<std::size_t>(it - order.begin());
}

// Held-Karp state. Node 0 is the fixed start; node v >= 1 is bit v-1.
struct HeldKarpTable {
  std::size_t others = 0;
  std::vector<double> cost;      // [mask * others + last]
  std::vector<std::uint8_t> parent;

  explicit HeldKarpTable(std::size_t k)
      : others(k), cost((std::size_t{1} << k) * k, kInf), parent((std::size_t{1} << k) * k, 0) {}

  double& at(std::uint32_t mask, std::size_t j) { return cost[mask * others + j]; }
};

// Relaxes every end node of one subset. Identical arithmetic in both the
// serial and parallel schedules.
void relax_subset(const DistanceMatrix& dm, HeldKarpTable& t, std::uint32_t mask) {
  const std::size_t k = t.others;
  for (std::size_t j = 0; j < k; ++j) {
    if (!(mask & (1u << j))) continue;
    const std::uint32_t prev = mask ^ (1u << j);
    double best = kInf;
    std::uint8_t arg = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(prev & (1u << i))) continue;
      const double c = t.cost[prev * k + i] + dm(i + 1, j + 1);
      if (c < best) {
        best = c;
        arg = static_cast<std::uint8_t>(i);
      }
    }
    t.cost[mask * k + j] = best;
    t.parent[mask * k + j] = arg;
  }
}

TourOrder held_karp_extract(const DistanceMatrix& dm, const HeldKarpTable& t) {
  const std::size_t k = t.others;
  const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << k) - 1);
  double best = kInf;
  std::size_t last = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const double c = t.cost[full * k + j] + dm(j + 1, 0);
    if (c < best) {
      best = c;
      last = j;
    }
  }
  std::vector<int> rev;
  rev.reserve(k);
  std::uint32_t mask = full;
  std::size_t j = last;
  while (mask != 0) {
    rev.push_back(static_cast<int>(j + 1));
    const std::uint32_t prev = mask ^ (1u << j);
    const std::size_t i = t.parent[mask * k + j];
    mask = prev;
    j = i;
  }
  TourOrder tour;
  tour.kind = TourKind::closed_cycle;
  tour.order.push_back(0);
  tour.order.insert(tour.order.end(), rev.rbegin(), rev.rend());
  return canonical_cycle(tour);
}

}  // namespace

void DistanceMatrix::check() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)(i, i) != 0.0) throw std::invalid_argument("distance matrix: non-zero diagonal");
    for (std::size_t j = 0; j < size_; ++j) {
      const double v = (*this)(i, j);
      if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("distance matrix: bad entry");
      if (v != (*this)(j, i)) throw std::invalid_argument("distance matrix: not symmetric");
    }
  }
}

DistanceMatrix euclidean_matrix(std::span<const Point2> points, Execution exec) {
  const auto n = static_cast<std::ptrdiff_t>(points.size());
  DistanceMatrix dm(points.size());
#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::parallel)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    for (std::ptrdiff_t j = i + 1; j < n; ++j) {
      dm.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j),
             std::hypot(points[j].x - points[i].x, points[j].y - points[i].y));
    }
  }
  return dm;
}

DistanceMatrix build_task_distance_matrix(const Task& task, bool include_home_depot, Execution exec) {
  std::vector<Point2> points;
  points.reserve(task.size() + 1);
  for (const TaskTarget& t : task.targets) {
    if (!t.position) {
      throw TaskError("target " + std::to_string(t.id) + " has no task-space position");
    }
    points.push_back(*t.position);
  }
  if (include_home_depot) {
    if (task.mode() == TaskMode::planar && task.robot.is_planar()) {
      const auto pose = kinematics::forward_kinematics(task.robot, task.home);
      points.push_back({pose.x, pose.y});
    } else {
      Point2 c;
      for (const Point2& p : points) {
        c.x += p.x;
        c.y += p.y;
      }
      const double inv = 1.0 / static_cast<double>(points.size());
      points.push_back({c.x * inv, c.y * inv});
    }
  }
  return euclidean_matrix(points, exec);
}

TourOrder canonical_cycle(const TourOrder& cycle) {
  const std::size_t n = cycle.order.size();
  if (n == 0) return cycle;
  const std::size_t p = static_cast<std::size_t>(
      std::min_element(cycle.order.begin(), cycle.order.end()) - cycle.order.begin());
  const int next = cycle.order[(p + 1) % n];
  const int prev = cycle.order[(p + n - 1) % n];
  TourOrder out;
  out.kind = TourKind::closed_cycle;
  out.order.reserve(n);
  const bool backwards = n > 2 && prev < next;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t idx = backwards ? (p + n - k) % n : (p + k) % n;
    out.order.push_back(cycle.order[idx]);
  }
  return out;
}

double tour_cost(const DistanceMatrix& dm, const TourOrder& tour) {
  if (tour.kind == TourKind::closed_cycle) return cycle_sum(dm, canonical_cycle(tour).order);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < tour.order.size(); ++k) sum += dm(tour.order[k], tour.order[k + 1]);
  return sum;
}

TourOrder solve_exact(const DistanceMatrix& dm, Execution exec) {
  const std::size_t n = dm.size();
  if (n > kExactSizeLimit) {
    throw GuardError("exact solver refuses " + std::to_string(n) + " nodes (limit " +
                     std::to_string(kExactSizeLimit) + ")");
  }
  TourOrder tour;
  tour.kind = TourKind::closed_cycle;
  if (n <= 2) {
    tour.order.resize(n);
    std::iota(tour.order.begin(), tour.order.end(), 0);
    return tour;
  }

  const std::size_t k = n - 1;
  HeldKarpTable table(k);
  for (std::size_t j = 0; j < k; ++j) table.at(1u << j, j) = dm(0, j + 1);

  const std::uint32_t full = static_cast<std::uint32_t>((std::size_t{1} << k) - 1);
  if (exec == Execution::serial) {
    // Reference schedule: every proper subset of a mask is numerically smaller.
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) < 2) continue;
      relax_subset(dm, table, mask);
    }
  } else {
    // Subsets of equal size are independent.
    std::vector<std::vector<std::uint32_t>> by_size(k + 1);
    for (std::uint32_t mask = 1; mask <= full; ++mask) by_size[std::popcount(mask)].push_back(mask);
    for (std::size_t s = 2; s <= k; ++s) {
      const auto& masks = by_size[s];
      const auto count = static_cast<std::ptrdiff_t>(masks.size());
#pragma omp parallel for schedule(static)
      for (std::ptrdiff_t m = 0; m < count; ++m) relax_subset(dm, table, masks[m]);
    }
  }
  return held_karp_extract(dm, table);
}

TourOrder solve_brute_force(const DistanceMatrix& dm) {
  const std::size_t n = dm.size();
  if (n > kBruteForceSizeLimit) {
    throw GuardError("permutation brute force refuses " + std::to_string(n) + " nodes (limit " +
                     std::to_string(kBruteForceSizeLimit) + ")");
  }
  TourOrder best;
  best.kind = TourKind::closed_cycle;
  best.order.resize(n);
  std::iota(best.order.begin(), best.order.end(), 0);
  if (n <= 2) return best;

  std::vector<int> perm = best.order;
  double best_cost = kInf;
  do {
    // One orientation per cycle: the canonical one.
    if (perm[1] > perm[n - 1]) continue;
    const double c = cycle_sum(dm, perm);
    if (c < best_cost) {
      best_cost = c;
      best.order = perm;
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

TourOrder solve_rnn(const DistanceMatrix& dm, int restarts) {
  const std::size_t n = dm.size();
  if (restarts < 1 || static_cast<std::size_t>(restarts) > std::max<std::size_t>(n, 1)) {
    throw std::invalid_argument("solve_rnn: restarts must be in [1, n]");
  }
  TourOrder best;
  best.kind = TourKind::closed_cycle;
  if (n == 0) return best;

  double best_cost = kInf;
  std::vector<char> visited(n);
  for (int start = 0; start < restarts; ++start) {
    std::fill(visited.begin(), visited.end(), 0);
    TourOrder tour;
    tour.kind = TourKind::closed_cycle;
    tour.order.reserve(n);
    std::size_t cur = static_cast<std::size_t>(start);
    visited[cur] = 1;
    tour.order.push_back(start);
    for (std::size_t step = 1; step < n; ++step) {
      std::size_t next = n;
      double nearest = kInf;
      for (std::size_t v = 0; v < n; ++v) {
        if (!visited[v] && dm(cur, v) < nearest) {
          nearest = dm(cur, v);
          next = v;
        }
      }
      visited[next] = 1;
      tour.order.push_back(static_cast<int>(next));
      cur = next;
    }
    const double c = tour_cost(dm, tour);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(tour);
    }
  }
  return best;
}

double two_opt_delta(const DistanceMatrix& dm, std::span<const int> order, std::size_t i,
                     std::size_t j) {
  const std::size_t n = order.size();
  const int a = order[i], b = order[i + 1];
  const int c = order[j], d = order[(j + 1) % n];
  return dm(a, c) + dm(b, d) - dm(a, b) - dm(c, d);
}

TourOrder solve_2opt(const DistanceMatrix& dm, const std::optional<TourOrder>& initial) {
  const std::size_t n = dm.size();
  TourOrder tour = initial ? *initial : solve_rnn(dm, static_cast<int>(std::max<std::size_t>(n, 1)));
  if (tour.order.size() != n) throw std::invalid_argument("solve_2opt: initial tour has wrong size");
  tour.kind = TourKind::closed_cycle;
  if (n < 4) return tour;

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i + 2 < n; ++i) {
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // shares node order[0]
        if (two_opt_delta(dm, tour.order, i, j) < -kTwoOptEpsilon) {
          std::reverse(tour.order.begin() + static_cast<std::ptrdiff_t>(i + 1),
                       tour.order.begin() + static_cast<std::ptrdiff_t>(j + 1));
          improved = true;
        }
      }
    }
  }
  return tour;
}

bool is_two_opt_optimal(const DistanceMatrix& dm, const TourOrder& tour) {
  const std::size_t n = tour.order.size();
  for (std::size_t i = 0; i + 2 < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (two_opt_delta(dm, tour.order, i, j) < -kTwoOptEpsilon) return false;
    }
  }
  return true;
}

TourOrder open_order_from_cycle(const TourOrder& cycle, int depot) {
  if (cycle.kind != TourKind::closed_cycle) {
    throw std::invalid_argument("open_order_from_cycle: tour is not a closed cycle");
  }
  const std::size_t n = cycle.order.size();
  const std::size_t p = position_of(cycle.order, depot);
  if (p == n) throw std::invalid_argument("open_order_from_cycle: depot not in cycle");

  TourOrder forward, backward;
  forward.kind = backward.kind = TourKind::open_path;
  for (std::size_t k = 1; k < n; ++k) {
    forward.order.push_back(cycle.order[(p + k) % n]);
    backward.order.push_back(cycle.order[(p + n - k) % n]);
  }
  if (n <= 2 || forward.order.front() <= backward.order.front()) return forward;
  return backward;
}

TourOrder open_at_longest_edge(const DistanceMatrix& dm, const TourOrder& cycle) {
  const std::size_t n = cycle.order.size();
  TourOrder out;
  out.kind = TourKind::open_path;
  if (n <= 1) {
    out.order = cycle.order;
    return out;
  }
  std::size_t cut = 0;
  double longest = -1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = dm(cycle.order[k], cycle.order[(k + 1) % n]);
    if (e > longest) {
      longest = e;
      cut = k;
    }
  }
  for (std::size_t k = 1; k <= n; ++k) out.order.push_back(cycle.order[(cut + k) % n]);
  return out;
}

TourOrder solve(SolverKind kind, const DistanceMatrix& dm, int rnn_restarts, Execution exec) {
  const int n = static_cast<int>(std::max<std::size_t>(dm.size(), 1));
  const int restarts = std::clamp(rnn_restarts, 1, n);
  switch (kind) {
    case SolverKind::exact: return solve_exact(dm, exec);
    case SolverKind::rnn: return solve_rnn(dm, restarts);
    case SolverKind::two_opt: return solve_2opt(dm, solve_rnn(dm, restarts));
  }
  throw std::invalid_argument("unknown TSP solver");
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::exact: return "exact";
    case SolverKind::two_opt: return "two_opt";
    case SolverKind::rnn: return "rnn";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver(std::string_view text) {
  if (text == "exact") return SolverKind::exact;
  if (text == "two_opt" || text == "2opt" || text == "2-opt") return SolverKind::two_opt;
  if (text == "rnn") return SolverKind::rnn;
  return std::nullopt;
}

}  // namespace robotsp::tsp
