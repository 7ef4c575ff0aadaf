#include "swaploc/solution.hpp"

#include <algorithm>
#include <string>

namespace swaploc {
namespace {

bool precedes(double d, NodeId f, const Assignment& a) {
  return d < a.distance || (d == a.distance && f < a.facility);
}

}  // namespace

Solution::Solution(const Instance& instance, std::span<const NodeId> facilities)
    : facilities_(normalize_facilities(instance, facilities)),
      open_(instance.size(), 0),
      nearest_(instance.size()),
      second_(instance.size()) {
  if (facilities_.empty()) throw InvalidArgument("facility set is empty");
  for (NodeId f : facilities_) open_[f] = 1;
  for (NodeId v = 0; v < instance.size(); ++v) rescan(instance, v);
  resum(instance);
}

void Solution::rescan(const Instance& instance, NodeId v) {
  const auto row = instance.dist().row(v);
  Assignment best;
  Assignment second;
  // Ascending ids with strict comparisons keep the lowest id on ties.
  for (NodeId f : facilities_) {
    const double d = row[f];
    if (d < best.distance) {
      second = best;
      best = {f, d};
    } else if (d < second.distance) {
      second = {f, d};
    }
  }
  nearest_[v] = best;
  second_[v] = second;
}

void Solution::resum(const Instance& instance) {
  double total = 0.0;
  for (NodeId v = 0; v < node_count(); ++v) total += instance.demand(v) * nearest_[v].distance;
  objective_ = total;
}

void Solution::check_swap(NodeId remove, NodeId insert) const {
  const int n = node_count();
  if (remove < 0 || remove >= n || !open_[remove]) {
    throw InvalidArgument("swap: node " + std::to_string(remove) + " is not an open facility");
  }
  if (insert < 0 || insert >= n || open_[insert]) {
    throw InvalidArgument("swap: node " + std::to_string(insert) +
                          " is not a closed candidate");
  }
}

void Solution::swap(const Instance& instance, NodeId remove, NodeId insert) {
  check_swap(remove, insert);
  facilities_.erase(std::find(facilities_.begin(), facilities_.end(), remove));
  facilities_.insert(std::upper_bound(facilities_.begin(), facilities_.end(), insert), insert);
  open_[remove] = 0;
  open_[insert] = 1;

  for (NodeId v = 0; v < node_count(); ++v) {
    if (nearest_[v].facility == remove || second_[v].facility == remove) {
      rescan(instance, v);
      continue;
    }
    const double d = instance.distance(v, insert);
    if (precedes(d, insert, nearest_[v])) {
      second_[v] = nearest_[v];
      nearest_[v] = {insert, d};
    } else if (precedes(d, insert, second_[v])) {
      second_[v] = {insert, d};
    }
  }
  resum(instance);
}

double swap_delta(const Instance& instance, const Solution& solution, NodeId remove,
                  NodeId insert) {
  solution.check_swap(remove, insert);
  const auto to_insert = instance.dist().row(insert);
  double delta = 0.0;
  for (NodeId v = 0; v < solution.node_count(); ++v) {
    const Assignment& a = solution.nearest_[v];
    const double kept = a.facility == remove ? solution.second_[v].distance : a.distance;
    const double now = std::min(kept, to_insert[v]);
    delta += instance.demand(v) * (now - a.distance);
  }
  return delta;
}

}  // namespace swaploc
