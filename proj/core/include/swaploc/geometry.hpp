#pragma once

#include <span>
#include <vector>

namespace swaploc {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double area() const { return (max_x - min_x) * (max_y - min_y); }
};

/// Tight box around `points`, grown by `margin` times its extent on every
/// side. A zero extent along an axis is widened to one unit first.
BoundingBox bounding_box(std::span<const Point> points, double margin);

/// Shoelace area of a simple polygon (absolute value).
double polygon_area(std::span<const Point> polygon);

/// True when every site lies on one line (including fewer than three sites).
bool collinear(std::span<const Point> sites, double eps = 1e-12);

/// Area of each site's planar Voronoi region clipped to `box`.
/// Regions are built by clipping the box with the perpendicular bisector
/// half-plane towards every other site. Coincident sites split nothing, so
/// each of them gets the full shared region.
std::vector<double> voronoi_areas(std::span<const Point> sites, const BoundingBox& box);

}  // namespace swaploc
