#include "swaploc/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace swaploc {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step.
    const std::uint64_t factor = static_cast<std::uint64_t>(n - k + i);
    const std::uint64_t g = std::gcd(result, static_cast<std::uint64_t>(i));
    const std::uint64_t reduced = result / g;
    const std::uint64_t divisor = static_cast<std::uint64_t>(i) / g;
    const std::uint64_t f = factor / divisor;
    if (reduced > kMax / f) return kMax;
    result = reduced * f;
  }
  return result;
}

namespace {

// Greedy addition, used only to seed the pruning bound.
double greedy_bound(const Instance& instance, int p) {
  const int n = instance.size();
  std::vector<double> current(n, kInfinity);
  std::vector<char> chosen(n, 0);
  double value = kInfinity;
  for (int round = 0; round < p; ++round) {
    NodeId best = kNoNode;
    double best_value = kInfinity;
    for (NodeId c = 0; c < n; ++c) {
      if (chosen[c]) continue;
      const auto row = instance.dist().row(c);
      double total = 0.0;
      for (NodeId i = 0; i < n; ++i) total += instance.demand(i) * std::min(current[i], row[i]);
      if (total < best_value) {
        best_value = total;
        best = c;
      }
    }
    chosen[best] = 1;
    const auto row = instance.dist().row(best);
    for (NodeId i = 0; i < n; ++i) current[i] = std::min(current[i], row[i]);
    value = best_value;
  }
  return value;
}

class Search {
 public:
  Search(const Instance& instance, int p, double cutoff)
      : instance_(instance), n_(instance.size()), p_(p), cutoff_(cutoff) {
    // suffix_[j * n + i] = min over candidates j' >= j of dist(i, j').
    suffix_.assign(static_cast<size_t>(n_ + 1) * n_, kInfinity);
    for (NodeId j = n_ - 1; j >= 0; --j) {
      const auto row = instance.dist().row(j);
      for (NodeId i = 0; i < n_; ++i) {
        suffix_[static_cast<size_t>(j) * n_ + i] =
            std::min(suffix_[static_cast<size_t>(j + 1) * n_ + i], row[i]);
      }
    }
    levels_.assign(static_cast<size_t>(p_ + 1) * n_, kInfinity);
    chosen_.resize(p_);
  }

  void run() { descend(0, 0); }

  bool found() const { return !best_set_.empty(); }
  const std::vector<NodeId>& best_set() const { return best_set_; }
  std::uint64_t expanded() const { return expanded_; }

 private:
  double* level(int depth) { return levels_.data() + static_cast<size_t>(depth) * n_; }

  // Subtrees that cannot beat the incumbent by more than the tolerance are
  // skipped, which keeps the first (lexicographically smallest) optimum.
  bool prune(double bound) const {
    if (best_set_.empty()) return bound > cutoff_;
    return bound >= best_value_ - improvement_epsilon(best_value_);
  }

  void descend(int depth, NodeId first) {
    const double* parent = level(depth);
    double* child = level(depth + 1);
    const int remaining = p_ - depth - 1;
    for (NodeId j = first; j <= n_ - (p_ - depth); ++j) {
      ++expanded_;
      const auto row = instance_.dist().row(j);
      const double* rest = suffix_.data() + static_cast<size_t>(j + 1) * n_;
      double bound = 0.0;
      for (NodeId i = 0; i < n_; ++i) {
        const double d = std::min(parent[i], row[i]);
        child[i] = d;
        bound += instance_.demand(i) * (remaining > 0 ? std::min(d, rest[i]) : d);
      }
      if (prune(bound)) continue;
      chosen_[depth] = j;
      if (remaining == 0) {
        best_value_ = bound;
        best_set_.assign(chosen_.begin(), chosen_.end());
      } else {
        descend(depth + 1, j + 1);
      }
    }
  }

  const Instance& instance_;
  int n_;
  int p_;
  double cutoff_;
  std::vector<double> suffix_;
  std::vector<double> levels_;
  std::vector<NodeId> chosen_;
  std::vector<NodeId> best_set_;
  double best_value_ = kInfinity;
  std::uint64_t expanded_ = 0;
};

}  // namespace

ExactResult exact_solve(const Instance& instance, int p, const ExactOptions& options) {
  const int n = instance.size();
  if (p < 1 || p > n) {
    throw InvalidArgument("p must lie in 1.." + std::to_string(n) + ", got " + std::to_string(p));
  }
  const std::uint64_t candidates = binomial(n, p);
  if (candidates > options.max_candidates) {
    throw OracleCapExceeded("exact search over C(" + std::to_string(n) + ", " +
                            std::to_string(p) + ") = " + std::to_string(candidates) +
                            " candidate sets exceeds the cap of " +
                            std::to_string(options.max_candidates) +
                            "; export the integer program (export-ilp) for an external solver");
  }
  double bound = greedy_bound(instance, p);
  if (options.upper_bound) bound = std::min(bound, *options.upper_bound);
  const double cutoff = bound + improvement_epsilon(bound);

  Search search(instance, p, cutoff);
  search.run();
  if (!search.found()) {
    // Only reachable if rounding pushed every leaf above the cutoff.
    Search exhaustive(instance, p, kInfinity);
    exhaustive.run();
    return {exhaustive.best_set(), objective(instance, exhaustive.best_set()),
            search.expanded() + exhaustive.expanded()};
  }
  return {search.best_set(), objective(instance, search.best_set()), search.expanded()};
}

}  // namespace swaploc
