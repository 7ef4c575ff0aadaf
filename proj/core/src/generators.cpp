#include "swaploc/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "swaploc/instance_io.hpp"

namespace swaploc {
namespace {

double normal(Rng& rng, double mean, double stddev) {
  // Box-Muller on the engine's raw output; 1 - u keeps the log argument > 0.
  const double u1 = 1.0 - uniform01(rng);
  const double u2 = uniform01(rng);
  return mean + stddev * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double exponential(Rng& rng, double mean) { return -mean * std::log(1.0 - uniform01(rng)); }

double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

double euclid(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

double dist2(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

Instance generate_grid_city(const GridCityParams& params) {
  if (params.width < 2) throw InvalidArgument("grid width must be at least 2");
  if (params.n_cbds < 0 || params.n_cbds > 3) {
    throw InvalidArgument("number of CBDs must be 1..3 (or 0 for random)");
  }
  if (!(params.total_population > 0.0)) throw InvalidArgument("total population must be positive");
  if (!(params.noise_fraction >= 0.0 && params.noise_fraction < 1.0)) {
    throw InvalidArgument("noise fraction must lie in [0, 1)");
  }
  const int w = params.width;
  const int n = w * w;
  Rng rng(params.seed);

  std::vector<Node> nodes;
  nodes.reserve(n);
  for (int row = 0; row < w; ++row) {
    for (int col = 0; col < w; ++col) {
      nodes.push_back({row * w + col, static_cast<double>(col), static_cast<double>(row)});
    }
  }
  std::vector<Edge> edges;
  const double diagonal = std::sqrt(2.0);
  for (int row = 0; row < w; ++row) {
    for (int col = 0; col < w; ++col) {
      const NodeId v = row * w + col;
      if (col + 1 < w) edges.push_back({v, v + 1, 1.0});
      if (row + 1 < w) edges.push_back({v, v + w, 1.0});
      if (row + 1 < w && col + 1 < w) edges.push_back({v, v + w + 1, diagonal});
      if (row + 1 < w && col > 0) edges.push_back({v, v + w - 1, diagonal});
    }
  }

  const int cbds = params.n_cbds > 0 ? params.n_cbds : 1 + static_cast<int>(uniform_index(rng, 3));
  struct Cbd {
    double cx, cy, sx, sy, share;
  };
  std::vector<Cbd> centres;
  double share_total = 0.0;
  for (int c = 0; c < cbds; ++c) {
    Cbd cbd{};
    cbd.cx = uniform(rng, 0.2 * w, 0.8 * w);
    cbd.cy = uniform(rng, 0.2 * w, 0.8 * w);
    cbd.sx = uniform(rng, 0.1 * w, 0.3 * w);
    cbd.sy = uniform(rng, 0.1 * w, 0.3 * w);
    // Normalised Exp(1) draws are a Dirichlet(1, ..., 1) sample.
    cbd.share = exponential(rng, 1.0);
    share_total += cbd.share;
    centres.push_back(cbd);
  }

  const double floor = params.noise_fraction * params.total_population / n;
  const double concentrated = (1.0 - params.noise_fraction) * params.total_population;
  std::vector<double> demand(n, floor);
  std::vector<double> mass(n);
  for (const Cbd& cbd : centres) {
    double mass_total = 0.0;
    for (const Node& node : nodes) {
      const double zx = (node.x - cbd.cx) / cbd.sx;
      const double zy = (node.y - cbd.cy) / cbd.sy;
      mass[node.id] = std::exp(-0.5 * (zx * zx + zy * zy));
      mass_total += mass[node.id];
    }
    const double scale = concentrated * (cbd.share / share_total) / mass_total;
    for (int i = 0; i < n; ++i) demand[i] += scale * mass[i];
  }

  InstanceMeta meta;
  meta.generator = "grid";
  meta.seed = params.seed;
  meta.params = {{"width", std::to_string(w)},
                 {"n_cbds", std::to_string(cbds)},
                 {"total_population", format_double(params.total_population)},
                 {"noise_fraction", format_double(params.noise_fraction)}};
  return Instance(Graph(std::move(nodes), std::move(edges)), std::move(demand), std::move(meta));
}

std::vector<Edge> gabriel_edges(std::span<const Point> points) {
  const int n = static_cast<int>(points.size());
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      const double duv = dist2(points[u], points[v]);
      bool blocked = false;
      for (int w = 0; w < n && !blocked; ++w) {
        if (w == u || w == v) continue;
        blocked = dist2(points[u], points[w]) + dist2(points[w], points[v]) <= duv;
      }
      if (!blocked) edges.push_back({u, v, euclid(points[u], points[v])});
    }
  }
  return edges;
}

GabrielLayout gabriel_layout(const GabrielParams& params) {
  const int n = params.n;
  if (n < 3) throw InvalidArgument("Gabriel graphs need at least 3 nodes");
  if (params.knn < 0) throw InvalidArgument("knn must be non-negative");
  if (params.min_degree_cap < 1 || params.min_degree_cap > params.max_degree_cap ||
      params.max_degree_cap > n - 1) {
    throw InvalidArgument("degree cap range must satisfy 1 <= min <= max <= n - 1");
  }
  Rng rng(params.seed);
  GabrielLayout layout;
  layout.points.reserve(n);
  while (static_cast<int>(layout.points.size()) < n) {
    const Point p{normal(rng, 0.5, 0.2), normal(rng, 0.5, 0.2)};
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0) continue;
    const bool duplicate = std::any_of(layout.points.begin(), layout.points.end(),
                                       [&](const Point& q) { return q.x == p.x && q.y == p.y; });
    if (!duplicate) layout.points.push_back(p);
  }
  layout.degree_caps.resize(n);
  const auto span = static_cast<std::uint64_t>(params.max_degree_cap - params.min_degree_cap + 1);
  for (int& cap : layout.degree_caps) {
    cap = params.min_degree_cap + static_cast<int>(uniform_index(rng, span));
  }

  const auto& points = layout.points;
  layout.gabriel_edges = gabriel_edges(points);
  std::vector<std::vector<char>> adjacent(n, std::vector<char>(n, 0));
  std::vector<int> degree(n, 0);
  DisjointSets components(n);
  auto link = [&](int u, int v) {
    adjacent[u][v] = adjacent[v][u] = 1;
    ++degree[u];
    ++degree[v];
    components.unite(u, v);
    return Edge{std::min(u, v), std::max(u, v), euclid(points[u], points[v])};
  };
  for (const Edge& e : layout.gabriel_edges) link(e.u, e.v);

  std::vector<int> order(n);
  for (int u = 0; u < n; ++u) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const double da = dist2(points[u], points[a]);
      const double db = dist2(points[u], points[b]);
      return da != db ? da < db : a < b;
    });
    int considered = 0;
    for (int v : order) {
      if (v == u) continue;
      if (considered++ >= params.knn) break;
      if (adjacent[u][v] || degree[u] >= layout.degree_caps[u] ||
          degree[v] >= layout.degree_caps[v]) {
        continue;
      }
      layout.knn_edges.push_back(link(u, v));
    }
  }

  for (;;) {
    int best_u = -1;
    int best_v = -1;
    double best_d = kInfinity;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (components.find(u) == components.find(v)) continue;
        const double d = dist2(points[u], points[v]);
        if (d < best_d) {
          best_d = d;
          best_u = u;
          best_v = v;
        }
      }
    }
    if (best_u < 0) break;
    layout.repair_edges.push_back(link(best_u, best_v));
  }
  return layout;
}

Instance generate_gabriel(const GabrielParams& params) {
  GabrielLayout layout = gabriel_layout(params);
  const int n = params.n;
  std::vector<Node> nodes;
  nodes.reserve(n);
  for (int i = 0; i < n; ++i) nodes.push_back({i, layout.points[i].x, layout.points[i].y});
  std::vector<Edge> edges = layout.gabriel_edges;
  edges.insert(edges.end(), layout.knn_edges.begin(), layout.knn_edges.end());
  edges.insert(edges.end(), layout.repair_edges.begin(), layout.repair_edges.end());
  Graph graph(std::move(nodes), std::move(edges));

  const std::vector<double> centrality = eigenvector_centrality(graph);
  // Demand draws use a stream separate from the layout so that changing the
  // demand model never moves the nodes.
  Rng rng(derive_seed(params.seed, 1));
  std::vector<double> demand(n);
  for (int i = 0; i < n; ++i) {
    demand[i] = std::max(1.0, std::ceil(exponential(rng, 1000.0 * centrality[i])));
  }

  InstanceMeta meta;
  meta.generator = "gabriel";
  meta.seed = params.seed;
  meta.params = {{"n", std::to_string(n)},
                 {"knn", std::to_string(params.knn)},
                 {"degree_cap_min", std::to_string(params.min_degree_cap)},
                 {"degree_cap_max", std::to_string(params.max_degree_cap)}};
  return Instance(std::move(graph), std::move(demand), std::move(meta));
}

std::vector<double> eigenvector_centrality(const Graph& graph, double tolerance,
                                           int max_iterations) {
  const int n = graph.size();
  std::vector<double> x(n, 1.0);
  std::vector<double> next(n);
  for (int iteration = 1; iteration <= max_iterations; ++iteration) {
    double peak = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      double sum = x[v];
      for (const Neighbor& nb : graph.neighbors(v)) sum += x[nb.node];
      next[v] = sum;
      peak = std::max(peak, sum);
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) {
      next[v] /= peak;
      change = std::max(change, std::abs(next[v] - x[v]));
    }
    x.swap(next);
    if (change < tolerance) return x;
  }
  throw Error("eigenvector centrality did not converge within " +
              std::to_string(max_iterations) + " iterations");
}

}  // namespace swaploc
