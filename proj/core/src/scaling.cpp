#include "swaploc/scaling.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "swaploc/cells.hpp"

namespace swaploc {

ScalingFit fit_log_log(std::span<const double> rho, std::span<const double> density) {
  if (rho.size() != density.size()) throw InvalidArgument("rho and density sizes differ");
  std::vector<double> xs;
  std::vector<double> ys;
  for (size_t i = 0; i < rho.size(); ++i) {
    if (!(rho[i] > 0.0) || !(density[i] > 0.0)) continue;
    xs.push_back(std::log(rho[i]));
    ys.push_back(std::log(density[i]));
  }
  const auto m = static_cast<double>(xs.size());
  if (xs.size() < 3) {
    throw InvalidArgument("scaling fit needs at least 3 cells with positive demand, got " +
                          std::to_string(xs.size()));
  }
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  mean_x /= m;
  mean_y /= m;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mean_x;
    const double dy = ys[i] - mean_y;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx <= 1e-24 * std::max(1.0, mean_x * mean_x)) {
    throw InvalidArgument("scaling fit is degenerate: all cells have the same density");
  }
  ScalingFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  fit.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  fit.cells = static_cast<int>(xs.size());
  return fit;
}

ScalingFit verify_scaling_law(const Instance& instance, std::span<const NodeId> facilities) {
  if (facilities.size() < 5) {
    throw InvalidArgument("scaling check needs at least 5 facilities, got " +
                          std::to_string(facilities.size()));
  }
  const Solution solution(instance, facilities);
  const CellStats stats = cell_stats(instance, solution);
  std::vector<double> rho;
  std::vector<double> density;
  for (const Cell& cell : stats.cells) {
    if (cell.demand_sum <= 0.0) continue;
    rho.push_back(cell.rho);
    density.push_back(cell.facility_density);
  }
  return fit_log_log(rho, density);
}

}  // namespace swaploc
