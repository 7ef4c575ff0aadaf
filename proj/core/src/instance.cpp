#include "swaploc/instance.hpp"

#include <algorithm>

namespace swaploc {

Instance::Instance(Graph graph, std::vector<double> demand, InstanceMeta meta)
    : graph_(std::move(graph)), demand_(std::move(demand)), meta_(std::move(meta)) {
  if (graph_.size() == 0) throw InvalidArgument("instance needs at least one node");
  if (static_cast<int>(demand_.size()) != graph_.size()) {
    throw InvalidArgument("demand has " + std::to_string(demand_.size()) +
                          " entries for " + std::to_string(graph_.size()) + " nodes");
  }
  bool any_positive = false;
  for (size_t i = 0; i < demand_.size(); ++i) {
    if (!(demand_[i] >= 0.0) || !std::isfinite(demand_[i])) {
      throw InvalidArgument("demand of node " + std::to_string(i) +
                            " must be finite and non-negative");
    }
    any_positive = any_positive || demand_[i] > 0.0;
  }
  if (!any_positive) throw InvalidArgument("at least one node must have positive demand");
  dist_ = build_distance_matrix(graph_);
}

std::vector<NodeId> normalize_facilities(const Instance& instance,
                                         std::span<const NodeId> facilities) {
  std::vector<NodeId> sorted(facilities.begin(), facilities.end());
  std::sort(sorted.begin(), sorted.end());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (sorted[i] < 0 || sorted[i] >= instance.size()) {
      throw InvalidArgument("facility id " + std::to_string(sorted[i]) + " out of range");
    }
    if (i > 0 && sorted[i] == sorted[i - 1]) {
      throw InvalidArgument("duplicate facility id " + std::to_string(sorted[i]));
    }
  }
  return sorted;
}

double objective(const Instance& instance, std::span<const NodeId> facilities) {
  if (facilities.empty()) throw InvalidArgument("facility set is empty");
  for (NodeId f : facilities) {
    if (f < 0 || f >= instance.size()) {
      throw InvalidArgument("facility id " + std::to_string(f) + " out of range");
    }
  }
  double total = 0.0;
  for (NodeId i = 0; i < instance.size(); ++i) {
    const auto row = instance.dist().row(i);
    double nearest = kInfinity;
    for (NodeId f : facilities) nearest = std::min(nearest, row[f]);
    total += instance.demand(i) * nearest;
  }
  return total;
}

double improvement_ratio(const Instance& instance, std::span<const NodeId> base,
                         std::span<const NodeId> relocated) {
  const double before = objective(instance, base);
  if (before == 0.0) return 0.0;
  return (before - objective(instance, relocated)) / before;
}

}  // namespace swaploc
