#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swaploc/exact.hpp"
#include "swaploc/pmp.hpp"
#include "swaploc/swap.hpp"

namespace swaploc {

enum class BenchTask { Frp, Pmp };

/// Canonical method name for an alias ("greedy-swap" -> "greedy", ...).
/// Throws InvalidArgument for unknown methods.
std::string canonical_method(BenchTask task, const std::string& method);
std::vector<std::string> known_methods(BenchTask task);

/// Swap agent for "random", "greedy", "vsca" or "policy".
std::unique_ptr<SwapAgent> make_agent(const std::string& method, std::uint64_t seed,
                                      const std::string& endpoint);

/// Relocation with a named agent: T restarts of at most k swaps from F0.
RelocationPlan relocate_with(const Instance& instance, std::span<const NodeId> base, int budget,
                             const std::string& method, int trials, std::uint64_t seed,
                             const std::string& endpoint = {});

/// p-median with a named method. Swap methods go through solve_pmp with
/// `swaps` interchange steps per trial (0 = p); "exact" uses exact_solve.
PmpResult solve_with(const Instance& instance, int p, const std::string& method, int trials,
                     int swaps, std::uint64_t seed, const std::string& endpoint = {},
                     const ExactOptions& exact = {});

struct BenchConfig {
  BenchTask task = BenchTask::Frp;
  std::vector<std::string> methods;
  int p = 0;
  int k = 0;       // 0 selects floor(p / 2), at least 1
  int trials = 5;
  int swaps = 0;   // 0 selects p
  std::uint64_t seed = 0;
  int workers = 0;  // 0 uses the hardware concurrency
  std::string dataset;  // empty derives a name from the corpus
  std::string endpoint;
  ExactOptions exact;
};

/// One aggregated table row. `value` is mean Q (%) for relocation and mean
/// gap (%) for p-median; it is empty ("n/a") when the oracle was unavailable
/// for some instance.
struct BenchRow {
  std::string dataset;
  int n = 0;
  int p = 0;
  std::string method;
  std::string metric;  // "Q" or "gap"
  std::optional<double> value;
  double mean_objective = 0.0;
  double mean_runtime = 0.0;  // seconds, solver only
  int instances = 0;
  std::uint64_t seed = 0;

  bool operator==(const BenchRow&) const = default;
};

/// Per instance, per method outcome before aggregation.
struct BenchSample {
  int instance = 0;
  std::string method;
  double objective = 0.0;
  std::optional<double> value;
  double runtime = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::vector<BenchSample> samples;
};

/// Runs every method on every instance (instance x method jobs on a worker
/// pool) and aggregates one row per method in the requested order. Throws
/// InvalidArgument on an empty corpus or unknown method.
BenchReport run_bench(std::span<const std::shared_ptr<const Instance>> corpus,
                      const BenchConfig& config);

/// Corpus name such as "Grid_64" or "Gabriel_100".
std::string dataset_name(std::span<const std::shared_ptr<const Instance>> corpus);

/// Aligned text table.
std::string format_table(std::span<const BenchRow> rows);
/// Machine-readable rows, one JSON object per line.
void write_rows(std::ostream& out, std::span<const BenchRow> rows);
std::vector<BenchRow> read_rows(std::istream& in);

}  // namespace swaploc
