#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swaploc/solution.hpp"

namespace swaploc {

struct SwapMove {
  NodeId remove = kNoNode;
  NodeId insert = kNoNode;

  bool operator==(const SwapMove&) const = default;
};

/// What an agent may know about the run it is part of.
struct SwapContext {
  std::span<const NodeId> base;  // F0, sorted
  double base_objective = 0.0;
  int restart = 0;
  int step = 0;
  int budget = 0;
};

/// A swap policy plugged into the relocation loop.
class SwapAgent {
 public:
  virtual ~SwapAgent() = default;

  virtual std::string_view name() const = 0;

  /// Proposes a move with remove open and insert closed, or nothing when the
  /// agent has no move to offer.
  virtual std::optional<SwapMove> act(const Instance& instance, const Solution& solution,
                                      const SwapContext& context) = 0;

  /// Update criterion for a proposal whose objective change is `delta`.
  virtual bool accepts(double delta, const Solution& solution) const = 0;

  /// Deterministic agents cannot propose anything better after a rejection,
  /// so the restart ends there.
  virtual bool stops_on_rejection() const { return false; }

  /// Called before every restart; stochastic agents reseed from it.
  virtual void reseed(std::uint64_t /*seed*/) {}
};

/// Uniform (remove, insert) over F x (V \ F); always accepted.
std::unique_ptr<SwapAgent> random_swap_agent(std::uint64_t seed);

/// Best pair over all of F x (V \ F); ties go to the lower remove id, then the
/// lower insert id. Accepts strict improvements only.
std::unique_ptr<SwapAgent> greedy_swap_agent();

/// Removes the facility of the cheapest Voronoi cell and inserts the best
/// node of the costliest cell. Accepts strict improvements only.
std::unique_ptr<SwapAgent> vsca_agent();

/// The best move among all pairs (the greedy agent's proposal), or nothing
/// when F = V.
std::optional<std::pair<SwapMove, double>> best_swap(const Instance& instance,
                                                     const Solution& solution);

struct StepRecord {
  int restart = 0;
  int step = 0;
  NodeId remove = kNoNode;
  NodeId insert = kNoNode;
  double delta = 0.0;
  bool accepted = false;
};

/// Outcome of a relocation run. removed/inserted are net sets against the
/// base: removed = F0 \ F, inserted = F \ F0 for the best F found.
struct RelocationPlan {
  std::vector<NodeId> base_facilities;
  std::vector<NodeId> removed;
  std::vector<NodeId> inserted;
  std::vector<NodeId> final_facilities;
  int budget = 0;
  int restarts = 0;
  double base_objective = 0.0;
  double final_objective = 0.0;
  double improvement_ratio = 0.0;
  std::vector<StepRecord> steps;
};

/// General swap framework. Runs `restarts` passes from F0, each allowing at
/// most `budget` proposals (rejected proposals also consume the budget), and
/// keeps the best facility set reached after any accepted swap. With no
/// improvement the plan is empty and Q = 0.
///
/// Throws InvalidArgument when budget is outside 1..|F0| or restarts < 1.
RelocationPlan swap_relocate(const Instance& instance, std::span<const NodeId> base,
                             int budget, SwapAgent& agent, int restarts, std::uint64_t seed);

/// Same loop without the budget <= |F0| restriction; the p-median driver uses
/// it with an arbitrary swap count.
RelocationPlan run_swaps(const Instance& instance, std::span<const NodeId> base, int budget,
                         SwapAgent& agent, int restarts, std::uint64_t seed);

/// Net-set difference helpers.
std::vector<NodeId> set_difference(std::span<const NodeId> a, std::span<const NodeId> b);

}  // namespace swaploc
