#pragma once

#include <span>

#include "swaploc/instance.hpp"

namespace swaploc {

/// Least-squares line through (log rho, log D).
struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int cells = 0;
};

/// Exponent the facility density should follow under near-optimal placement.
inline constexpr double kScalingExponent = 2.0 / 3.0;

/// Fits log(density) = slope * log(rho) + intercept over the pairs with
/// rho > 0. Throws InvalidArgument with fewer than 3 usable pairs or when
/// every log(rho) is identical.
ScalingFit fit_log_log(std::span<const double> rho, std::span<const double> density);

/// Cell statistics for `facilities` followed by fit_log_log over cells with
/// positive demand. Needs at least 5 facilities.
ScalingFit verify_scaling_law(const Instance& instance, std::span<const NodeId> facilities);

}  // namespace swaploc
