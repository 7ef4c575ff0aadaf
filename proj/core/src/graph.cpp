#include "swaploc/graph.hpp"

#include <functional>
#include <queue>
#include <set>
#include <string>

namespace swaploc {

Graph::Graph(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const int n = size();
  for (int i = 0; i < n; ++i) {
    if (nodes_[i].id != i) {
      throw InvalidArgument("node ids must be sequential: position " + std::to_string(i) +
                            " holds id " + std::to_string(nodes_[i].id));
    }
    if (!std::isfinite(nodes_[i].x) || !std::isfinite(nodes_[i].y)) {
      throw InvalidArgument("node " + std::to_string(i) + " has non-finite coordinates");
    }
  }
  adjacency_.assign(n, {});
  std::set<std::pair<NodeId, NodeId>> seen;
  for (const Edge& e : edges_) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") references a missing node");
    }
    if (e.u == e.v) {
      throw InvalidArgument("self-loop at node " + std::to_string(e.u));
    }
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      throw InvalidArgument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                            ") must have a positive finite length");
    }
    if (!seen.emplace(std::min(e.u, e.v), std::max(e.u, e.v)).second) {
      throw InvalidArgument("duplicate edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")");
    }
    adjacency_[e.u].push_back({e.v, e.length});
    adjacency_[e.v].push_back({e.u, e.length});
  }
}

std::optional<std::pair<NodeId, NodeId>> Graph::find_unreachable() const {
  const int n = size();
  if (n == 0) return std::nullopt;
  std::vector<char> visited(n, 0);
  std::vector<NodeId> stack{0};
  visited[0] = 1;
  while (!stack.empty()) {
    const NodeId v = stack.back();
    stack.pop_back();
    for (const Neighbor& nb : adjacency_[v]) {
      if (!visited[nb.node]) {
        visited[nb.node] = 1;
        stack.push_back(nb.node);
      }
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!visited[v]) return std::make_pair(NodeId{0}, v);
  }
  return std::nullopt;
}

DistanceMatrix build_distance_matrix(const Graph& graph) {
  const int n = graph.size();
  DistanceMatrix dist(n);
  using Item = std::pair<double, NodeId>;
  std::vector<double> best(n);
  for (NodeId source = 0; source < n; ++source) {
    std::fill(best.begin(), best.end(), kInfinity);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    best[source] = 0.0;
    queue.emplace(0.0, source);
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d > best[v]) continue;
      for (const Neighbor& nb : graph.neighbors(v)) {
        const double candidate = d + nb.length;
        if (candidate < best[nb.node]) {
          best[nb.node] = candidate;
          queue.emplace(candidate, nb.node);
        }
      }
    }
    for (NodeId target = 0; target < n; ++target) {
      if (best[target] == kInfinity) throw DisconnectedGraph(source, target);
      dist(source, target) = best[target];
    }
  }
  // Dijkstra from either endpoint can differ in the last ulp; keep the
  // matrix exactly symmetric.
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const double d = std::min(dist(i, j), dist(j, i));
      dist(i, j) = d;
      dist(j, i) = d;
    }
  }
  return dist;
}

}  // namespace swaploc
