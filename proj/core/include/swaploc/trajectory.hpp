#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swaploc/env.hpp"

namespace swaploc {

inline constexpr std::string_view kTrajectoryFormat = "swaploc-trajectory";
inline constexpr int kTrajectoryFormatVersion = 1;

struct TrajectoryStep {
  Observation observation;  // state the action was taken in
  NodeId u1 = kNoNode;
  NodeId u2 = kNoNode;
  double reward = 0.0;
};

/// One expert rollout. An instance already at a local optimum yields no steps.
struct Trajectory {
  std::shared_ptr<const Instance> instance;
  std::vector<NodeId> base;
  int budget = 0;
  std::uint64_t seed = 0;
  std::vector<TrajectoryStep> steps;
  double final_q = 0.0;
};

/// Rolls the greedy swap agent through a fresh episode from `base`, stopping
/// after `budget` steps or at the first non-improving proposal.
Trajectory greedy_rollout(std::shared_ptr<const Instance> instance, std::span<const NodeId> base,
                          int budget, std::uint64_t seed = 0);

/// Streams trajectories as JSON lines: a header line, then per trajectory a
/// begin record, one record per step and an end record (see FORMATS.md).
class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(std::ostream& out);
  void write(const Trajectory& trajectory);

 private:
  std::ostream& out_;
};

/// Records greedy rollouts for every instance of the corpus. F0 for instance
/// i comes from density_init with derive_seed(seed, i); k = 0 selects
/// floor(p / 2) (at least 1). Returns the recorded trajectories.
std::vector<Trajectory> record_expert(std::span<const std::shared_ptr<const Instance>> corpus,
                                      int p, int k, const std::filesystem::path& out_path,
                                      std::uint64_t seed);

std::vector<Trajectory> read_trajectories(std::istream& in);
std::vector<Trajectory> read_trajectories(const std::filesystem::path& path);

}  // namespace swaploc
