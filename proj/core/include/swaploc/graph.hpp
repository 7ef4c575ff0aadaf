#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "swaploc/common.hpp"

namespace swaploc {

struct Node {
  NodeId id = 0;
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Node&) const = default;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double length = 0.0;

  bool operator==(const Edge&) const = default;
};

struct Neighbor {
  NodeId node;
  double length;
};

/// Undirected simple graph with planar coordinates and positive edge lengths.
///
/// The constructor checks structural invariants (sequential ids, no self
/// loops, no duplicate pairs, finite positive lengths). Connectivity is not
/// required here; Instance enforces it.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<Node> nodes, std::vector<Edge> edges);

  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const Neighbor> neighbors(NodeId v) const { return adjacency_[v]; }
  int degree(NodeId v) const { return static_cast<int>(adjacency_[v].size()); }

  /// Returns (from, to) for some node `to` unreachable from `from`, or
  /// nothing when the graph is connected.
  std::optional<std::pair<NodeId, NodeId>> find_unreachable() const;
  bool connected() const { return !find_unreachable().has_value(); }

 private:
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Neighbor>> adjacency_;
};

/// Dense symmetric n x n matrix of shortest-path distances.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * n, 0.0) {}

  int size() const { return n_; }
  double operator()(NodeId i, NodeId j) const { return data_[index(i, j)]; }
  double& operator()(NodeId i, NodeId j) { return data_[index(i, j)]; }
  std::span<const double> row(NodeId i) const {
    return {data_.data() + static_cast<size_t>(i) * n_, static_cast<size_t>(n_)};
  }

 private:
  size_t index(NodeId i, NodeId j) const { return static_cast<size_t>(i) * n_ + j; }

  int n_ = 0;
  std::vector<double> data_;
};

/// All-pairs shortest paths by one Dijkstra run per source.
/// Throws DisconnectedGraph naming an unreachable pair.
DistanceMatrix build_distance_matrix(const Graph& graph);

}  // namespace swaploc
