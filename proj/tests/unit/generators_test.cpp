#include <gtest/gtest.h>

#include <set>

#include "fixtures.hpp"
#include "swaploc/generators.hpp"
#include "swaploc/instance_io.hpp"

#ifdef SWAPLOC_HAVE_EIGEN
#include <Eigen/Dense>
#endif

namespace swaploc {
namespace {

double dist2(const Point& a, const Point& b) {
  return (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
}

TEST(GridCity, TwoByTwoHasSixEdges) {
  GridCityParams params;
  params.width = 2;
  const Instance grid = generate_grid_city(params);
  EXPECT_EQ(grid.size(), 4);
  EXPECT_EQ(grid.graph().edges().size(), 6u);
  int diagonals = 0;
  for (const Edge& e : grid.graph().edges()) diagonals += e.length > 1.0;
  EXPECT_EQ(diagonals, 2);
}

TEST(GridCity, LatticeAndEightAdjacency) {
  GridCityParams params;
  params.width = 8;
  params.seed = 3;
  const Instance grid = generate_grid_city(params);
  ASSERT_EQ(grid.size(), 64);
  // 2 w (w - 1) orthogonal + 2 (w - 1)^2 diagonal streets.
  EXPECT_EQ(grid.graph().edges().size(), 2u * 8 * 7 + 2u * 7 * 7);
  for (const Edge& e : grid.graph().edges()) {
    const Node& a = grid.graph().nodes()[e.u];
    const Node& b = grid.graph().nodes()[e.v];
    EXPECT_LE(std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)), 1.0);
    EXPECT_DOUBLE_EQ(e.length, std::hypot(a.x - b.x, a.y - b.y));
  }
}

TEST(GridCity, PopulationTotalAndNoiseFloor) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GridCityParams params;
    params.width = 8;
    params.seed = seed;
    const Instance grid = generate_grid_city(params);
    double total = 0.0;
    for (double d : grid.demand()) {
      total += d;
      EXPECT_GE(d, 0.1 * 500000.0 / 64.0);
    }
    EXPECT_NEAR(total, 500000.0, 1e-6 * 500000.0);
    const int cbds = std::stoi(grid.meta().params.at("n_cbds"));
    EXPECT_GE(cbds, 1);
    EXPECT_LE(cbds, 3);
  }
}

TEST(GridCity, DeterministicBytes) {
  GridCityParams params;
  params.width = 6;
  params.seed = 42;
  EXPECT_EQ(serialize_instance(generate_grid_city(params)), serialize_instance(generate_grid_city(params)));
  params.seed = 43;
  GridCityParams other = params;
  other.seed = 44;
  EXPECT_NE(serialize_instance(generate_grid_city(params)), serialize_instance(generate_grid_city(other)));
}

TEST(GridCity, InvalidParams) {
  GridCityParams params;
  params.width = 1;
  EXPECT_THROW(generate_grid_city(params), InvalidArgument);
  params = {};
  params.n_cbds = 4;
  EXPECT_THROW(generate_grid_city(params), InvalidArgument);
  params = {};
  params.noise_fraction = 1.0;
  EXPECT_THROW(generate_grid_city(params), InvalidArgument);
  params = {};
  params.total_population = 0.0;
  EXPECT_THROW(generate_grid_city(params), InvalidArgument);
}

TEST(Gabriel, TwoPointsAlwaysLinked) {
  const std::vector<Point> pts = {{0.1, 0.2}, {0.9, 0.4}};
  EXPECT_EQ(gabriel_edges(pts).size(), 1u);
}

TEST(Gabriel, UnitSquareHasNoDiagonals) {
  const std::vector<Point> square = {{0, 0}, {1, 0}, {0, 1}, {1, 1}};
  const auto edges = gabriel_edges(square);
  std::set<std::pair<int, int>> got;
  for (const Edge& e : edges) got.insert({e.u, e.v});
  const std::set<std::pair<int, int>> sides = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  EXPECT_EQ(got, sides);
}

TEST(Gabriel, PredicateHoldsForEveryEdge) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GabrielParams params;
    params.n = 100;
    params.seed = seed;
    const GabrielLayout layout = gabriel_layout(params);
    const auto& pts = layout.points;
    std::set<std::pair<int, int>> emitted;
    for (const Edge& e : layout.gabriel_edges) {
      emitted.insert({e.u, e.v});
      for (int w = 0; w < params.n; ++w) {
        if (w == e.u || w == e.v) continue;
        EXPECT_GT(dist2(pts[e.u], pts[w]) + dist2(pts[w], pts[e.v]), dist2(pts[e.u], pts[e.v]));
      }
    }
    // And every pair with an empty closed disk was emitted.
    for (int u = 0; u < params.n; ++u) {
      for (int v = u + 1; v < params.n; ++v) {
        bool empty = true;
        for (int w = 0; w < params.n && empty; ++w) {
          if (w != u && w != v) empty = dist2(pts[u], pts[w]) + dist2(pts[w], pts[v]) > dist2(pts[u], pts[v]);
        }
        EXPECT_EQ(empty, emitted.count({u, v}) == 1) << u << "," << v;
      }
    }
  }
}

TEST(Gabriel, DegreeCapsAndConnectivity) {
  double mean_degree_sum = 0.0;
  const int samples = 10;
  for (std::uint64_t seed = 0; seed < samples; ++seed) {
    GabrielParams params;
    params.n = 200;
    params.seed = seed;
    const GabrielLayout layout = gabriel_layout(params);
    std::vector<int> gabriel_degree(params.n, 0);
    std::vector<int> degree(params.n, 0);
    for (const Edge& e : layout.gabriel_edges) {
      ++gabriel_degree[e.u];
      ++gabriel_degree[e.v];
    }
    degree = gabriel_degree;
    for (const Edge& e : layout.knn_edges) {
      ++degree[e.u];
      ++degree[e.v];
    }
    for (int v = 0; v < params.n; ++v) {
      EXPECT_GE(layout.degree_caps[v], 3);
      EXPECT_LE(layout.degree_caps[v], 6);
      EXPECT_LE(degree[v], std::max(layout.degree_caps[v], gabriel_degree[v]));
      EXPECT_GE(layout.points[v].x, 0.0);
      EXPECT_LE(layout.points[v].x, 1.0);
      EXPECT_GE(layout.points[v].y, 0.0);
      EXPECT_LE(layout.points[v].y, 1.0);
    }
    const Instance instance = generate_gabriel(params);
    EXPECT_TRUE(instance.graph().connected());
    const double mean_degree = 2.0 * instance.graph().edges().size() / params.n;
    EXPECT_GE(mean_degree, 3.0);
    EXPECT_LE(mean_degree, 6.0);
    mean_degree_sum += mean_degree;
    for (double d : instance.demand()) {
      EXPECT_GE(d, 1.0);
      EXPECT_EQ(d, std::floor(d));
    }
  }
  EXPECT_GT(mean_degree_sum / samples, 3.0);
}

TEST(Gabriel, RepairJoinsComponents) {
  // Without augmentation the proximity graph can still be disconnected only
  // through repair; with knn = 0 the result must stay connected.
  GabrielParams params;
  params.n = 150;
  params.knn = 0;
  params.seed = 11;
  EXPECT_TRUE(generate_gabriel(params).graph().connected());
}

TEST(Gabriel, DeterministicAndValidated) {
  GabrielParams params;
  params.n = 50;
  params.seed = 5;
  EXPECT_EQ(serialize_instance(generate_gabriel(params)), serialize_instance(generate_gabriel(params)));
  params.n = 2;
  EXPECT_THROW(generate_gabriel(params), InvalidArgument);
  params.n = 10;
  params.min_degree_cap = 5;
  params.max_degree_cap = 4;
  EXPECT_THROW(generate_gabriel(params), InvalidArgument);
  params.min_degree_cap = 3;
  params.max_degree_cap = 10;
  EXPECT_THROW(generate_gabriel(params), InvalidArgument);
}

TEST(Gabriel, DemandMeanFollowsCentrality) {
  // Average over many instances: nodes in the top centrality decile carry
  // more demand than nodes in the bottom decile.
  double top = 0.0, bottom = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GabrielParams params;
    params.n = 100;
    params.seed = seed;
    const Instance instance = generate_gabriel(params);
    const auto c = eigenvector_centrality(instance.graph());
    std::vector<int> order(100);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return c[a] < c[b]; });
    for (int i = 0; i < 10; ++i) {
      bottom += instance.demand(order[i]);
      top += instance.demand(order[99 - i]);
    }
  }
  EXPECT_GT(top, 2.0 * bottom);
}

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Node> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back({i, static_cast<double>(i), 0.0});
  std::vector<Edge> edges;
  for (auto [u, v] : pairs) edges.push_back({u, v, 1.0});
  return Graph(nodes, edges);
}

TEST(Centrality, CompleteGraphIsUniform) {
  const auto c = eigenvector_centrality(graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}));
  for (double v : c) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Centrality, StarCentreDominates) {
  const auto c = eigenvector_centrality(graph_from_edges(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  for (int leaf = 1; leaf < 5; ++leaf) EXPECT_LT(c[leaf], c[0]);
  // Star K_{1,4}: leaf / centre = 1 / sqrt(4).
  EXPECT_NEAR(c[1], 0.5, 1e-9);
}

TEST(Centrality, PathOfThreeHasSqrtTwoRatio) {
  const auto c = eigenvector_centrality(graph_from_edges(3, {{0, 1}, {1, 2}}));
  EXPECT_NEAR(c[1] / c[0], std::sqrt(2.0), 1e-9);
  EXPECT_NEAR(c[1] / c[2], std::sqrt(2.0), 1e-9);
}

TEST(Centrality, ReportsNonConvergence) {
  const Graph g = graph_from_edges(30, [] {
    std::vector<std::pair<int, int>> p;
    for (int i = 0; i + 1 < 30; ++i) p.push_back({i, i + 1});
    return p;
  }());
  try {
    eigenvector_centrality(g, 1e-15, 3);
    FAIL() << "expected non-convergence";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("3 iterations"), std::string::npos);
  }
}

#ifdef SWAPLOC_HAVE_EIGEN
TEST(Centrality, MatchesDenseEigensolver) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    GabrielParams params;
    params.n = 120;
    params.seed = seed;
    const Instance instance = generate_gabriel(params);
    const int n = instance.size();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : instance.graph().edges()) a(e.u, e.v) = a(e.v, e.u) = 1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
    Eigen::VectorXd principal = solver.eigenvectors().col(n - 1).cwiseAbs();
    principal /= principal.maxCoeff();
    const auto c = eigenvector_centrality(instance.graph());
    for (int v = 0; v < n; ++v) EXPECT_NEAR(c[v], principal(v), 1e-6) << "node " << v;
  }
}
#endif

}  // namespace
}  // namespace swaploc
