#pragma once

// Small instances and independent reference computations shared by tests.
// The references deliberately avoid library code paths: Floyd-Warshall
// instead of Dijkstra, plain minimum scans instead of the solution arrays,
// unpruned enumeration instead of the branch-and-bound oracle.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "swaploc/common.hpp"
#include "swaploc/instance.hpp"
#include "swaploc/solution.hpp"

namespace swaploc::testing {

inline Instance path_instance(int n, std::vector<double> demand = {}) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) nodes.push_back({i, static_cast<double>(i), 0.0});
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  if (demand.empty()) demand.assign(n, 1.0);
  return Instance(Graph(nodes, edges), demand);
}

inline Instance cycle_instance(int n) {
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * M_PI * i / n;
    nodes.push_back({i, std::cos(a), std::sin(a)});
    edges.push_back({i, (i + 1) % n, 1.0});
  }
  return Instance(Graph(nodes, edges), std::vector<double>(n, 1.0));
}

/// Random connected geometric graph: a random spanning tree plus extra
/// edges, Euclidean lengths, demand with some zeros.
inline Instance random_instance(int n, std::uint64_t seed, int extra_edges = -1,
                                double zero_share = 0.2) {
  Rng rng(seed);
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back({i, uniform01(rng) * 10.0, uniform01(rng) * 10.0});
  auto length = [&](int u, int v) {
    return std::hypot(nodes[u].x - nodes[v].x, nodes[u].y - nodes[v].y) + 0.01;
  };
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) {
    const int u = static_cast<int>(uniform_index(rng, v));
    used[u][v] = used[v][u] = 1;
    edges.push_back({u, v, length(u, v)});
  }
  if (extra_edges < 0) extra_edges = n;
  for (int e = 0; e < extra_edges; ++e) {
    const int u = static_cast<int>(uniform_index(rng, n));
    const int v = static_cast<int>(uniform_index(rng, n));
    if (u == v || used[u][v]) continue;
    used[u][v] = used[v][u] = 1;
    edges.push_back({u, v, length(u, v)});
  }
  std::vector<double> demand(n);
  for (double& d : demand) d = uniform01(rng) < zero_share ? 0.0 : 1.0 + std::floor(uniform01(rng) * 100.0);
  if (std::all_of(demand.begin(), demand.end(), [](double d) { return d == 0.0; })) demand[0] = 1.0;
  return Instance(Graph(nodes, edges), demand);
}

/// All-pairs shortest paths by Floyd-Warshall.
inline std::vector<std::vector<double>> floyd_warshall(const Graph& graph) {
  const int n = graph.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, inf));
  for (int i = 0; i < n; ++i) d[i][i] = 0.0;
  for (const Edge& e : graph.edges()) {
    d[e.u][e.v] = std::min(d[e.u][e.v], e.length);
    d[e.v][e.u] = std::min(d[e.v][e.u], e.length);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Objective from first principles over a given distance table.
inline double reference_objective(const std::vector<std::vector<double>>& dist,
                                  std::span<const double> demand, std::span<const NodeId> facilities) {
  double total = 0.0;
  for (size_t i = 0; i < demand.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (NodeId f : facilities) best = std::min(best, dist[i][f]);
    total += demand[i] * best;
  }
  return total;
}

struct ReferenceOptimum {
  std::vector<NodeId> facilities;  // lexicographically smallest optimum
  double objective = 0.0;
};

/// Enumerates every p-subset without pruning.
inline ReferenceOptimum reference_optimum(const Instance& instance, int p) {
  const int n = instance.size();
  const auto dist = floyd_warshall(instance.graph());
  ReferenceOptimum best;
  best.objective = std::numeric_limits<double>::infinity();
  std::vector<NodeId> current;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(current.size()) == p) {
      const double value = reference_objective(dist, instance.demand(), current);
      if (value < best.objective - 1e-9 * std::max(1.0, std::abs(value))) {
        best.objective = value;
        best.facilities = current;
      }
      return;
    }
    for (int v = start; v <= n - (p - static_cast<int>(current.size())); ++v) {
      current.push_back(v);
      rec(v + 1);
      current.pop_back();
    }
  };
  rec(0);
  return best;
}

/// Nearest and second-nearest by a direct scan with the lowest-id tie rule.
inline std::pair<Assignment, Assignment> reference_assignment(const Instance& instance,
                                                              std::span<const NodeId> facilities,
                                                              NodeId v) {
  std::vector<std::pair<double, NodeId>> ranked;
  for (NodeId f : facilities) ranked.push_back({instance.distance(v, f), f});
  std::sort(ranked.begin(), ranked.end());
  Assignment first{ranked[0].second, ranked[0].first};
  Assignment second{kNoNode, std::numeric_limits<double>::infinity()};
  if (ranked.size() > 1) second = {ranked[1].second, ranked[1].first};
  return {first, second};
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace swaploc::testing
