#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "swaploc/graph.hpp"

namespace swaploc {

/// Provenance of an instance: which generator produced it and how.
struct InstanceMeta {
  std::string generator = "manual";
  std::uint64_t seed = 0;
  std::map<std::string, std::string> params;

  bool operator==(const InstanceMeta&) const = default;
};

/// A p-median problem instance: a connected graph, per-node demand and the
/// all-pairs shortest-path matrix. Immutable after construction.
class Instance {
 public:
  /// Validates demand (one entry per node, non-negative, not all zero) and
  /// computes the distance matrix. Throws DisconnectedGraph or InvalidArgument.
  Instance(Graph graph, std::vector<double> demand, InstanceMeta meta = {});

  int size() const { return graph_.size(); }
  const Graph& graph() const { return graph_; }
  std::span<const double> demand() const { return demand_; }
  double demand(NodeId v) const { return demand_[v]; }
  const DistanceMatrix& dist() const { return dist_; }
  double distance(NodeId i, NodeId j) const { return dist_(i, j); }
  const InstanceMeta& meta() const { return meta_; }

 private:
  Graph graph_;
  std::vector<double> demand_;
  DistanceMatrix dist_;
  InstanceMeta meta_;
};

/// Demand-weighted sum of each node's distance to its nearest facility.
/// Throws InvalidArgument on an empty set or out-of-range ids.
double objective(const Instance& instance, std::span<const NodeId> facilities);

/// Improvement ratio of moving from `base` to `relocated`:
/// (O(base) - O(relocated)) / O(base), or 0 when O(base) is 0.
double improvement_ratio(const Instance& instance, std::span<const NodeId> base,
                         std::span<const NodeId> relocated);

/// Checks that ids are in range and distinct; returns them sorted ascending.
std::vector<NodeId> normalize_facilities(const Instance& instance,
                                         std::span<const NodeId> facilities);

}  // namespace swaploc
