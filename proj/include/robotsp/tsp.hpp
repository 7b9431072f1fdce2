#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "robotsp/model.hpp"

namespace robotsp::tsp {

/// Symmetric, non-negative, zero-diagonal matrix stored row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : size_(size), d_(size * size, 0.0) {}

  std::size_t size() const { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return d_[i * size_ + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    d_[i * size_ + j] = value;
    d_[j * size_ + i] = value;
  }
  std::span<const double> data() const { return d_; }

  /// Throws std::invalid_argument on asymmetry, negative or non-finite
  /// entries, or a non-zero diagonal.
  void check() const;

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<double> d_;
};

enum class TourKind { closed_cycle, open_path };

struct TourOrder {
  std::vector<int> order;
  TourKind kind = TourKind::closed_cycle;

  std::size_t size() const { return order.size(); }
  friend bool operator==(const TourOrder&, const TourOrder&) = default;
};

enum class SolverKind { exact, two_opt, rnn };

inline constexpr std::size_t kExactSizeLimit = 20;
inline constexpr std::size_t kBruteForceSizeLimit = 11;

/// Pairwise Euclidean distances between points.
DistanceMatrix euclidean_matrix(std::span<const Point2> points,
                                Execution exec = Execution::parallel);

/// Task-space matrix over target positions. With `include_home_depot` an
/// extra node n is appended: the home tool position for planar tasks, the
/// target centroid otherwise. Throws TaskError if a position is missing.
DistanceMatrix build_task_distance_matrix(const Task& task, bool include_home_depot,
                                          Execution exec = Execution::parallel);

/// Sum of consecutive edges, plus the closing edge for a cycle. Cycles are
/// summed in canonical orientation so that every rotation or reversal of
/// the same cycle has a bit-identical cost.
double tour_cost(const DistanceMatrix& dm, const TourOrder& tour);

/// Rotates a cycle to start at node 0 and orients it towards the
/// smaller-indexed neighbour of 0.
TourOrder canonical_cycle(const TourOrder& cycle);

/// Held-Karp dynamic program. Throws GuardError above kExactSizeLimit nodes.
TourOrder solve_exact(const DistanceMatrix& dm, Execution exec = Execution::parallel);

/// Enumerates all (n-1)! cycles through node 0. Throws GuardError above
/// kBruteForceSizeLimit nodes.
TourOrder solve_brute_force(const DistanceMatrix& dm);

/// Repeated nearest neighbour from start nodes 0..restarts-1.
TourOrder solve_rnn(const DistanceMatrix& dm, int restarts);

/// First-improvement 2-Opt. Without an initial tour, starts from the best
/// nearest-neighbour tour over all start nodes.
TourOrder solve_2opt(const DistanceMatrix& dm, const std::optional<TourOrder>& initial = {});

/// Improvement threshold shared by 2-Opt and its local-optimality check.
inline constexpr double kTwoOptEpsilon = 1e-12;

/// Cost change of the 2-exchange that reverses positions i+1..j of `order`.
double two_opt_delta(const DistanceMatrix& dm, std::span<const int> order, std::size_t i,
                     std::size_t j);

/// True if no 2-exchange lowers the cycle cost by more than kTwoOptEpsilon.
bool is_two_opt_optimal(const DistanceMatrix& dm, const TourOrder& tour);

/// Drops `depot` from a closed cycle and returns the remaining nodes as an
/// open path, in whichever direction starts with the smaller index.
TourOrder open_order_from_cycle(const TourOrder& cycle, int depot);

/// Opens a cycle by removing its longest edge (first one on ties).
TourOrder open_at_longest_edge(const DistanceMatrix& dm, const TourOrder& cycle);

TourOrder solve(SolverKind kind, const DistanceMatrix& dm, int rnn_restarts,
                Execution exec = Execution::parallel);

std::string to_string(SolverKind kind);
std::optional<SolverKind> parse_solver(std::string_view text);

}  // namespace robotsp::tsp
