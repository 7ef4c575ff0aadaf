#pragma once

#include <span>
#include <vector>

#include "swaploc/instance.hpp"

namespace swaploc {

struct Assignment {
  NodeId facility = kNoNode;
  double distance = kInfinity;

  bool operator==(const Assignment&) const = default;
};

/// A facility set together with each node's nearest and second-nearest open
/// facility. Ties are broken towards the lower facility id. With a single
/// facility the second-nearest entry is {kNoNode, +inf}.
///
/// The cached objective is summed in node order exactly like objective(), so
/// the two agree bit for bit.
class Solution {
 public:
  /// Throws InvalidArgument on empty, duplicate or out-of-range ids.
  Solution(const Instance& instance, std::span<const NodeId> facilities);

  int p() const { return static_cast<int>(facilities_.size()); }
  int node_count() const { return static_cast<int>(nearest_.size()); }
  /// Sorted ascending.
  std::span<const NodeId> facilities() const { return facilities_; }
  bool is_facility(NodeId v) const { return open_[v] != 0; }
  const Assignment& nearest(NodeId v) const { return nearest_[v]; }
  const Assignment& second_nearest(NodeId v) const { return second_[v]; }
  double objective() const { return objective_; }

  /// Replaces `remove` by `insert` and repairs the assignment arrays in place.
  void swap(const Instance& instance, NodeId remove, NodeId insert);

  bool operator==(const Solution&) const = default;

 private:
  void check_swap(NodeId remove, NodeId insert) const;
  void rescan(const Instance& instance, NodeId v);
  void resum(const Instance& instance);

  std::vector<NodeId> facilities_;
  std::vector<char> open_;
  std::vector<Assignment> nearest_;
  std::vector<Assignment> second_;
  double objective_ = 0.0;

  friend double swap_delta(const Instance&, const Solution&, NodeId, NodeId);
};

inline Solution build_solution(const Instance& instance, std::span<const NodeId> facilities) {
  return Solution(instance, facilities);
}

/// O(F \ {remove} U {insert}) - O(F) in one pass over the nodes.
/// Throws InvalidArgument unless remove is open and insert is closed.
double swap_delta(const Instance& instance, const Solution& solution, NodeId remove,
                  NodeId insert);

/// Copying form of Solution::swap.
inline Solution apply_swap(const Instance& instance, Solution solution, NodeId remove,
                           NodeId insert) {
  solution.swap(instance, remove, insert);
  return solution;
}

}  // namespace swaploc
