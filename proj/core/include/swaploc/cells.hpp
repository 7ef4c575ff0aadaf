#pragma once

#include <vector>

#include "swaploc/geometry.hpp"
#include "swaploc/solution.hpp"

namespace swaploc {

/// Aggregates of one facility's Voronoi cell. Membership uses the graph
/// metric (the solution's nearest assignment); the area is the planar
/// Voronoi polygon of the facility coordinates.
struct Cell {
  NodeId facility = kNoNode;
  std::vector<NodeId> members;
  double demand_sum = 0.0;        // total demand of the members
  double cost = 0.0;              // sum of demand * distance to the facility
  double area = 0.0;              // squared coordinate units, always > 0
  double rho = 0.0;               // demand_sum / area
  double facility_density = 0.0;  // 1 / area
};

struct CellStats {
  /// One entry per facility, in the order of Solution::facilities().
  std::vector<Cell> cells;

  double total_cost() const;
};

/// Margin applied to the node bounding box before clipping cells.
inline constexpr double kCellBoxMargin = 0.05;

/// Box used for cell areas: the node bounding box grown by 5% per side.
BoundingBox instance_box(const Instance& instance);

/// Planar cell areas for `facilities`. Collinear or coincident facility
/// coordinates fall back to box area / p for every cell.
std::vector<double> cell_areas(const Instance& instance, std::span<const NodeId> facilities);

/// Per-cell costs only, summed in node order (cheap; no geometry).
std::vector<double> cell_costs(const Instance& instance, const Solution& solution);

CellStats cell_stats(const Instance& instance, const Solution& solution);

}  // namespace swaploc
