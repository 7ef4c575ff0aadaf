#pragma once

#include <filesystem>
#include <iosfwd>

#include "swaploc/instance.hpp"

namespace swaploc {

/// Writes the p-median integer program in CPLEX LP format.
///
/// Variables: y_j (facility j open) and x_i_j (node i served by j), all
/// binary. Rows: assign_i (sum_j x_i_j = 1), link_i_j (x_i_j - y_j <= 0) and
/// one cardinality row (sum_j y_j = p). The objective coefficient of x_i_j is
/// demand_i * dist_ij, so the model optimum equals objective().
void write_ilp(const Instance& instance, int p, std::ostream& out);

/// File form of write_ilp. Throws InvalidArgument for p outside 1..n and
/// Error when the file cannot be written.
void export_ilp(const Instance& instance, int p, const std::filesystem::path& path);

}  // namespace swaploc
