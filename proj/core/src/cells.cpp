#include "swaploc/cells.hpp"

#include <algorithm>

namespace swaploc {
namespace {

size_t cell_index(std::span<const NodeId> facilities, NodeId facility) {
  return static_cast<size_t>(std::lower_bound(facilities.begin(), facilities.end(), facility) -
                             facilities.begin());
}

}  // namespace

double CellStats::total_cost() const {
  double total = 0.0;
  for (const Cell& c : cells) total += c.cost;
  return total;
}

BoundingBox instance_box(const Instance& instance) {
  std::vector<Point> points;
  points.reserve(instance.size());
  for (const Node& node : instance.graph().nodes()) points.push_back({node.x, node.y});
  return bounding_box(points, kCellBoxMargin);
}

std::vector<double> cell_areas(const Instance& instance, std::span<const NodeId> facilities) {
  const BoundingBox box = instance_box(instance);
  std::vector<Point> sites;
  sites.reserve(facilities.size());
  for (NodeId f : facilities) {
    const Node& node = instance.graph().nodes()[f];
    sites.push_back({node.x, node.y});
  }
  bool degenerate = collinear(sites);
  for (size_t i = 0; i < sites.size() && !degenerate; ++i) {
    for (size_t j = i + 1; j < sites.size(); ++j) {
      if (sites[i].x == sites[j].x && sites[i].y == sites[j].y) {
        degenerate = true;
        break;
      }
    }
  }
  if (degenerate) {
    return std::vector<double>(facilities.size(),
                               box.area() / static_cast<double>(facilities.size()));
  }
  return voronoi_areas(sites, box);
}

std::vector<double> cell_costs(const Instance& instance, const Solution& solution) {
  const auto facilities = solution.facilities();
  std::vector<double> costs(facilities.size(), 0.0);
  for (NodeId v = 0; v < instance.size(); ++v) {
    const Assignment& a = solution.nearest(v);
    costs[cell_index(facilities, a.facility)] += instance.demand(v) * a.distance;
  }
  return costs;
}

CellStats cell_stats(const Instance& instance, const Solution& solution) {
  const auto facilities = solution.facilities();
  CellStats stats;
  stats.cells.resize(facilities.size());
  for (size_t r = 0; r < facilities.size(); ++r) stats.cells[r].facility = facilities[r];
  for (NodeId v = 0; v < instance.size(); ++v) {
    const Assignment& a = solution.nearest(v);
    Cell& cell = stats.cells[cell_index(facilities, a.facility)];
    cell.members.push_back(v);
    cell.demand_sum += instance.demand(v);
    cell.cost += instance.demand(v) * a.distance;
  }
  const std::vector<double> areas = cell_areas(instance, facilities);
  for (size_t r = 0; r < facilities.size(); ++r) {
    Cell& cell = stats.cells[r];
    cell.area = areas[r];
    cell.rho = cell.demand_sum / cell.area;
    cell.facility_density = 1.0 / cell.area;
  }
  return stats;
}

}  // namespace swaploc
