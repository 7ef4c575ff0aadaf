#pragma once

#include <cstdint>
#include <vector>

#include "swaploc/geometry.hpp"
#include "swaploc/instance.hpp"

namespace swaploc {

/// w x w lattice city with 8-neighbour streets and 1-3 population centres.
struct GridCityParams {
  int width = 8;
  /// Number of central business districts, 1..3; 0 draws it uniformly.
  int n_cbds = 0;
  double total_population = 500000.0;
  /// Share of the population spread uniformly over all nodes.
  double noise_fraction = 0.10;
  std::uint64_t seed = 0;
};

struct GabrielParams {
  int n = 100;
  /// Nearest neighbours considered when augmenting the Gabriel graph.
  int knn = 3;
  int min_degree_cap = 3;
  int max_degree_cap = 6;
  std::uint64_t seed = 0;
};

/// Demand is a mixture of axis-aligned Gaussian bumps (centres uniform in
/// [0.2w, 0.8w]^2, deviations uniform in [0.1w, 0.3w], Dirichlet(1) shares)
/// plus a uniform floor, summing to total_population.
Instance generate_grid_city(const GridCityParams& params);

/// Intermediate products of the Gabriel generator, exposed for inspection.
struct GabrielLayout {
  std::vector<Point> points;
  std::vector<int> degree_caps;
  std::vector<Edge> gabriel_edges;    // proximity phase
  std::vector<Edge> knn_edges;        // degree-capped k-NN augmentation
  std::vector<Edge> repair_edges;     // shortest links joining components
};

/// Points from a N((0.5, 0.5), 0.2^2 I) distribution restricted to the unit
/// square, Gabriel edges, capped k-NN augmentation and connectivity repair.
GabrielLayout gabriel_layout(const GabrielParams& params);

/// Gabriel graph of `points` with the closed-disk convention: (u, v) is an
/// edge iff no third point w has d2(u,w) + d2(w,v) <= d2(u,v).
std::vector<Edge> gabriel_edges(std::span<const Point> points);

/// Gabriel layout plus demand drawn from an exponential distribution whose
/// mean is 1000 x eigenvector centrality (max-normalised), rounded up and
/// floored at 1.
Instance generate_gabriel(const GabrielParams& params);

/// Principal eigenvector of the adjacency matrix, scaled to max entry 1.
/// Power iteration on (A + I), which shares A's eigenvectors but has a unique
/// dominant eigenvalue on bipartite graphs. Throws Error when the max-norm
/// change stays above `tolerance` after `max_iterations`.
std::vector<double> eigenvector_centrality(const Graph& graph, double tolerance = 1e-10,
                                           int max_iterations = 10000);

}  // namespace swaploc
