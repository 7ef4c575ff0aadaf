#include "swaploc/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace swaploc {

BoundingBox bounding_box(std::span<const Point> points, double margin) {
  BoundingBox box{points.front().x, points.front().y, points.front().x, points.front().y};
  for (const Point& p : points) {
    box.min_x = std::min(box.min_x, p.x);
    box.max_x = std::max(box.max_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_y = std::max(box.max_y, p.y);
  }
  auto widen = [margin](double& lo, double& hi) {
    if (hi - lo <= 0.0) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = margin * (hi - lo);
    lo -= pad;
    hi += pad;
  };
  widen(box.min_x, box.max_x);
  widen(box.min_y, box.max_y);
  return box;
}

double polygon_area(std::span<const Point> polygon) {
  double twice = 0.0;
  for (size_t i = 0; i < polygon.size(); ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % polygon.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) * 0.5;
}

bool collinear(std::span<const Point> sites, double eps) {
  if (sites.size() < 3) return true;
  const Point& a = sites[0];
  // Pick the site farthest from a as the direction reference.
  size_t far = 1;
  double far_d = 0.0;
  for (size_t i = 1; i < sites.size(); ++i) {
    const double d = std::hypot(sites[i].x - a.x, sites[i].y - a.y);
    if (d > far_d) {
      far_d = d;
      far = i;
    }
  }
  if (far_d == 0.0) return true;
  const double dx = sites[far].x - a.x;
  const double dy = sites[far].y - a.y;
  for (const Point& s : sites) {
    const double cross = dx * (s.y - a.y) - dy * (s.x - a.x);
    if (std::abs(cross) > eps * far_d * far_d) return false;
  }
  return true;
}

namespace {

// Keeps the part of `poly` where n.p <= c.
std::vector<Point> clip(const std::vector<Point>& poly, double nx, double ny, double c) {
  std::vector<Point> out;
  out.reserve(poly.size() + 1);
  for (size_t i = 0; i < poly.size(); ++i) {
    const Point& cur = poly[i];
    const Point& next = poly[(i + 1) % poly.size()];
    const double fc = nx * cur.x + ny * cur.y - c;
    const double fn = nx * next.x + ny * next.y - c;
    if (fc <= 0.0) out.push_back(cur);
    if ((fc < 0.0 && fn > 0.0) || (fc > 0.0 && fn < 0.0)) {
      const double t = fc / (fc - fn);
      out.push_back({cur.x + t * (next.x - cur.x), cur.y + t * (next.y - cur.y)});
    }
  }
  return out;
}

}  // namespace

std::vector<double> voronoi_areas(std::span<const Point> sites, const BoundingBox& box) {
  std::vector<double> areas(sites.size(), 0.0);
  for (size_t i = 0; i < sites.size(); ++i) {
    std::vector<Point> cell{{box.min_x, box.min_y},
                            {box.max_x, box.min_y},
                            {box.max_x, box.max_y},
                            {box.min_x, box.max_y}};
    const Point& s = sites[i];
    for (size_t j = 0; j < sites.size() && !cell.empty(); ++j) {
      if (j == i) continue;
      const Point& o = sites[j];
      const double nx = o.x - s.x;
      const double ny = o.y - s.y;
      if (nx == 0.0 && ny == 0.0) continue;
      // Points closer to s than to o: n.p <= n.(s+o)/2.
      const double c = 0.5 * (nx * (s.x + o.x) + ny * (s.y + o.y));
      cell = clip(cell, nx, ny, c);
    }
    areas[i] = cell.size() < 3 ? 0.0 : polygon_area(cell);
  }
  return areas;
}

}  // namespace swaploc
