#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "swaploc/swap.hpp"

namespace swaploc {

struct PmpResult {
  std::vector<NodeId> facilities;
  double objective = 0.0;
  /// (objective - optimum) / optimum when the optimum is known.
  std::optional<double> gap;
  double runtime_seconds = 0.0;
  std::string method;
  int trials = 1;
};

/// Draws p distinct nodes for a starting facility set.
using Initializer = std::function<std::vector<NodeId>(const Instance&, int, std::uint64_t)>;

/// Weight given to zero-demand nodes so they remain sampleable.
inline constexpr double kDensityFloor = 1e-9;

/// Selection weights demand^(2/3) (floored at kDensityFloor).
std::vector<double> density_weights(const Instance& instance);

/// p nodes sampled without replacement with probability proportional to
/// density_weights. Throws InvalidArgument for p outside 1..n.
std::vector<NodeId> density_init(const Instance& instance, int p, std::uint64_t seed);

/// p nodes sampled uniformly without replacement.
std::vector<NodeId> random_init(const Instance& instance, int p, std::uint64_t seed);

/// Best of `trials` uniformly random facility sets.
PmpResult random_baseline(const Instance& instance, int p, int trials, std::uint64_t seed);

/// Demand-weighted Lloyd iterations in coordinate space (k-means++ seeding,
/// at most 100 rounds or until every centroid moves less than 1e-6). Each
/// centroid is snapped to its nearest free node. Best of `trials` seeds.
PmpResult kmeans_baseline(const Instance& instance, int p, std::uint64_t seed, int trials = 1);

struct MaranzanaTrace {
  /// Objective after each full assign/recentre round, starting with the
  /// initial set.
  std::vector<double> objectives;
};

/// Alternates nearest-facility assignment with moving each facility to its
/// cell's 1-median (members only, ties to the lower id) until a round stops
/// strictly improving the objective.
PmpResult maranzana(const Instance& instance, std::span<const NodeId> initial,
                    MaranzanaTrace* trace = nullptr);

/// Maranzana from `trials` density-initialised starts; best result wins.
PmpResult maranzana_baseline(const Instance& instance, int p, int trials, std::uint64_t seed);

/// Adds, p times, the node that lowers the objective most (ties to the lower
/// id).
PmpResult greedy_addition(const Instance& instance, int p);

struct PmpOptions {
  int trials = 5;
  /// Swap budget per trial; 0 means p.
  int swaps = 0;
  Initializer init = density_init;
  std::uint64_t seed = 0;
};

/// Swap-based p-median solver: each trial draws a start with `init` and runs
/// the swap loop with one restart and the given budget; the best trial wins.
/// With the greedy agent this is the Teitz-Bart interchange heuristic.
PmpResult solve_pmp(const Instance& instance, int p, SwapAgent& agent,
                    const PmpOptions& options = {});

/// (objective - optimum) / optimum; 0 when both are 0.
double optimality_gap(double objective, double optimum);

}  // namespace swaploc
