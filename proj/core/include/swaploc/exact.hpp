#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "swaploc/instance.hpp"

namespace swaploc {

struct ExactOptions {
  /// Refuse instances with more than this many candidate sets C(n, p).
  std::uint64_t max_candidates = 2'000'000;
  /// Known objective of some feasible set; tightens pruning from the start.
  std::optional<double> upper_bound;
};

struct ExactResult {
  std::vector<NodeId> facilities;
  double objective = 0.0;
  /// Search-tree nodes expanded (for diagnostics and benchmarks).
  std::uint64_t expanded = 0;
};

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Global p-median optimum by exhaustive enumeration in lexicographic order
/// with a suffix-minimum lower bound for pruning. Among optimal sets (to
/// kRelTol) the lexicographically smallest is returned.
///
/// Throws OracleCapExceeded when C(n, p) exceeds options.max_candidates and
/// InvalidArgument for p outside 1..n.
ExactResult exact_solve(const Instance& instance, int p, const ExactOptions& options = {});

}  // namespace swaploc
