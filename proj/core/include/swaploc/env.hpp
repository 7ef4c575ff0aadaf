#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "swaploc/solution.hpp"

namespace swaploc {

inline constexpr int kFeatureCount = 10;

/// Column layout of Observation::features.
enum Feature : int {
  kFeatX = 0,          // min-max normalised x
  kFeatY = 1,          // min-max normalised y
  kFeatDemand = 2,     // min-max normalised demand
  kFeatIsFacility = 3,
  kFeatNodeIndex = 4,  // id / (n - 1)
  kFeatCellIndex = 5,  // rank of the assigned facility / (p - 1)
  kFeatDistance = 6,   // graph distance to the assigned facility
  kFeatCellDemand = 7, // facility rows only
  kFeatCellCost = 8,   // facility rows only
  kFeatCellArea = 9,   // facility rows only
};

using FeatureRow = std::array<double, kFeatureCount>;

/// Snapshot of an episode state as seen by a policy.
struct Observation {
  std::vector<FeatureRow> features;
  std::vector<Edge> edges;             // edge feature = length
  std::vector<char> remove_mask;       // node is an open facility
  std::vector<char> insert_mask;       // node is a closed candidate
  std::vector<int> cell_index;         // raw rank of the assigned facility
  int step_index = 0;
  int budget = 0;
  double current_q = 0.0;
  bool done = false;

  bool operator==(const Observation&) const = default;
};

/// Builds the feature matrix and masks for `solution`.
Observation observe(const Instance& instance, const Solution& solution, int step_index,
                    int budget, double current_q);

nlohmann::json observation_to_json(const Observation& observation);
Observation observation_from_json(const nlohmann::json& doc);

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
};

struct EpisodeStep {
  NodeId remove = kNoNode;
  NodeId insert = kNoNode;
  double reward = 0.0;
};

/// Facility relocation as a sequential decision process. Every step applies
/// its swap unconditionally and earns the change in improvement ratio, so
/// the rewards of an episode telescope to its final Q. The episode ends
/// after `budget` steps.
class Environment {
 public:
  /// Throws InvalidArgument for an invalid F0 or budget outside 1..|F0|.
  const Observation& reset(std::shared_ptr<const Instance> instance,
                           std::span<const NodeId> base, int budget);

  /// Throws InvalidArgument naming the node when a mask is violated, and
  /// Error when the episode is over or was never started.
  StepResult step(NodeId remove, NodeId insert);

  bool active() const { return instance_ != nullptr; }
  bool done() const { return step_index_ >= budget_; }
  const Observation& observation() const { return observation_; }
  const Instance& instance() const { return *instance_; }
  const Solution& solution() const { return *solution_; }
  std::span<const NodeId> base() const { return base_; }
  double base_objective() const { return base_objective_; }
  double current_q() const;
  int step_index() const { return step_index_; }
  int budget() const { return budget_; }
  std::span<const EpisodeStep> history() const { return history_; }
  /// Net sets F0 \ F and F \ F0.
  std::vector<NodeId> removed() const;
  std::vector<NodeId> inserted() const;

 private:
  std::shared_ptr<const Instance> instance_;
  std::vector<NodeId> base_;
  std::optional<Solution> solution_;
  double base_objective_ = 0.0;
  int budget_ = 0;
  int step_index_ = 0;
  std::vector<EpisodeStep> history_;
  Observation observation_;
};

}  // namespace swaploc
