#include "swaploc/pmp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include "swaploc/geometry.hpp"

namespace swaploc {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void check_p(const Instance& instance, int p) {
  if (p < 1 || p > instance.size()) {
    throw InvalidArgument("p must lie in 1.." + std::to_string(instance.size()) + ", got " +
                          std::to_string(p));
  }
}

void check_trials(int trials) {
  if (trials < 1) throw InvalidArgument("trial count must be at least 1");
}

std::vector<NodeId> all_nodes(const Instance& instance) {
  std::vector<NodeId> nodes(instance.size());
  std::iota(nodes.begin(), nodes.end(), 0);
  return nodes;
}

// Index drawn with probability proportional to weights[i]; entries with zero
// weight are never returned while any weight is positive.
size_t weighted_draw(Rng& rng, std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double target = uniform01(rng) * total;
  double running = 0.0;
  size_t last_positive = weights.size();
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    running += weights[i];
    last_positive = i;
    if (target < running) return i;
  }
  return last_positive;
}

double squared(double v) { return v * v; }

}  // namespace

double optimality_gap(double objective, double optimum) {
  if (optimum == 0.0) return objective == 0.0 ? 0.0 : kInfinity;
  return (objective - optimum) / optimum;
}

std::vector<double> density_weights(const Instance& instance) {
  std::vector<double> weights(instance.size());
  for (NodeId v = 0; v < instance.size(); ++v) {
    weights[v] = std::max(std::cbrt(squared(instance.demand(v))), kDensityFloor);
  }
  return weights;
}

std::vector<NodeId> density_init(const Instance& instance, int p, std::uint64_t seed) {
  check_p(instance, p);
  if (p == instance.size()) return all_nodes(instance);
  Rng rng(seed);
  std::vector<double> weights = density_weights(instance);
  std::vector<NodeId> chosen;
  chosen.reserve(p);
  for (int k = 0; k < p; ++k) {
    const size_t pick = weighted_draw(rng, weights);
    chosen.push_back(static_cast<NodeId>(pick));
    weights[pick] = 0.0;
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

std::vector<NodeId> random_init(const Instance& instance, int p, std::uint64_t seed) {
  check_p(instance, p);
  std::vector<NodeId> nodes = all_nodes(instance);
  Rng rng(seed);
  for (int k = 0; k < p; ++k) {
    const auto pick = k + uniform_index(rng, static_cast<std::uint64_t>(instance.size() - k));
    std::swap(nodes[k], nodes[pick]);
  }
  nodes.resize(p);
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

PmpResult random_baseline(const Instance& instance, int p, int trials, std::uint64_t seed) {
  check_trials(trials);
  const auto start = Clock::now();
  PmpResult result;
  result.method = "random";
  result.trials = trials;
  result.objective = kInfinity;
  for (int t = 0; t < trials; ++t) {
    std::vector<NodeId> facilities = random_init(instance, p, derive_seed(seed, t));
    const double value = objective(instance, facilities);
    if (value < result.objective) {
      result.objective = value;
      result.facilities = std::move(facilities);
    }
  }
  result.runtime_seconds = seconds_since(start);
  return result;
}

PmpResult kmeans_baseline(const Instance& instance, int p, std::uint64_t seed, int trials) {
  check_p(instance, p);
  check_trials(trials);
  const auto start = Clock::now();
  const int n = instance.size();
  const auto nodes = instance.graph().nodes();
  const auto demand = instance.demand();

  PmpResult result;
  result.method = "kmeans";
  result.trials = trials;
  result.objective = kInfinity;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    std::vector<Point> centres;
    centres.reserve(p);
    std::vector<double> nearest2(n, kInfinity);
    std::vector<char> used(n, 0);
    std::vector<double> weights(n);
    for (int c = 0; c < p; ++c) {
      for (int i = 0; i < n; ++i) {
        weights[i] = used[i] ? 0.0 : demand[i] * (c == 0 ? 1.0 : nearest2[i]);
      }
      if (std::accumulate(weights.begin(), weights.end(), 0.0) <= 0.0) {
        for (int i = 0; i < n; ++i) weights[i] = used[i] ? 0.0 : 1.0;
      }
      const size_t pick = weighted_draw(rng, weights);
      used[pick] = 1;
      const Point centre{nodes[pick].x, nodes[pick].y};
      centres.push_back(centre);
      for (int i = 0; i < n; ++i) {
        nearest2[i] = std::min(nearest2[i], squared(nodes[i].x - centre.x) +
                                                squared(nodes[i].y - centre.y));
      }
    }

    std::vector<int> label(n, 0);
    for (int iteration = 0; iteration < 100; ++iteration) {
      for (int i = 0; i < n; ++i) {
        double best = kInfinity;
        for (int c = 0; c < p; ++c) {
          const double d = squared(nodes[i].x - centres[c].x) + squared(nodes[i].y - centres[c].y);
          if (d < best) {
            best = d;
            label[i] = c;
          }
        }
      }
      std::vector<double> sx(p, 0.0), sy(p, 0.0), sw(p, 0.0);
      for (int i = 0; i < n; ++i) {
        sx[label[i]] += demand[i] * nodes[i].x;
        sy[label[i]] += demand[i] * nodes[i].y;
        sw[label[i]] += demand[i];
      }
      double shift = 0.0;
      for (int c = 0; c < p; ++c) {
        if (sw[c] <= 0.0) continue;
        const Point moved{sx[c] / sw[c], sy[c] / sw[c]};
        shift = std::max(shift, std::hypot(moved.x - centres[c].x, moved.y - centres[c].y));
        centres[c] = moved;
      }
      if (shift < 1e-6) break;
    }

    std::vector<char> taken(n, 0);
    std::vector<NodeId> facilities;
    facilities.reserve(p);
    for (const Point& centre : centres) {
      NodeId best = kNoNode;
      double best_d = kInfinity;
      for (NodeId v = 0; v < n; ++v) {
        if (taken[v]) continue;
        const double d = squared(nodes[v].x - centre.x) + squared(nodes[v].y - centre.y);
        if (d < best_d) {
          best_d = d;
          best = v;
        }
      }
      taken[best] = 1;
      facilities.push_back(best);
    }
    std::sort(facilities.begin(), facilities.end());
    const double value = objective(instance, facilities);
    if (value < result.objective) {
      result.objective = value;
      result.facilities = std::move(facilities);
    }
  }
  result.runtime_seconds = seconds_since(start);
  return result;
}

PmpResult maranzana(const Instance& instance, std::span<const NodeId> initial,
                    MaranzanaTrace* trace) {
  const auto start = Clock::now();
  std::vector<NodeId> facilities = normalize_facilities(instance, initial);
  if (facilities.empty()) throw InvalidArgument("facility set is empty");
  double value = objective(instance, facilities);
  if (trace) trace->objectives.assign(1, value);

  const int n = instance.size();
  const long max_rounds = static_cast<long>(n) * static_cast<long>(facilities.size());
  for (long round = 0; round < max_rounds; ++round) {
    const Solution solution(instance, facilities);
    std::vector<std::vector<NodeId>> members(facilities.size());
    for (NodeId v = 0; v < n; ++v) {
      const auto r = std::lower_bound(facilities.begin(), facilities.end(),
                                      solution.nearest(v).facility) -
                     facilities.begin();
      members[r].push_back(v);
    }
    std::vector<NodeId> next;
    next.reserve(facilities.size());
    for (const auto& cell : members) {
      NodeId median = kNoNode;
      double median_cost = kInfinity;
      for (NodeId candidate : cell) {
        double cost = 0.0;
        for (NodeId u : cell) cost += instance.demand(u) * instance.distance(u, candidate);
        if (median == kNoNode || cost < median_cost - improvement_epsilon(median_cost)) {
          median = candidate;
          median_cost = cost;
        }
      }
      next.push_back(median);
    }
    std::sort(next.begin(), next.end());
    const double next_value = objective(instance, next);
    if (!(next_value < value - improvement_epsilon(value))) break;
    facilities = std::move(next);
    value = next_value;
    if (trace) trace->objectives.push_back(value);
  }

  PmpResult result;
  result.method = "maranzana";
  result.facilities = std::move(facilities);
  result.objective = value;
  result.runtime_seconds = seconds_since(start);
  return result;
}

PmpResult maranzana_baseline(const Instance& instance, int p, int trials, std::uint64_t seed) {
  check_trials(trials);
  const auto start = Clock::now();
  PmpResult best;
  best.objective = kInfinity;
  for (int t = 0; t < trials; ++t) {
    PmpResult trial = maranzana(instance, density_init(instance, p, derive_seed(seed, t)));
    if (trial.objective < best.objective) best = std::move(trial);
  }
  best.trials = trials;
  best.runtime_seconds = seconds_since(start);
  return best;
}

PmpResult greedy_addition(const Instance& instance, int p) {
  check_p(instance, p);
  const auto start = Clock::now();
  const int n = instance.size();
  std::vector<double> current(n, kInfinity);
  std::vector<char> chosen(n, 0);
  PmpResult result;
  result.method = "greedy-addition";
  for (int round = 0; round < p; ++round) {
    NodeId best = kNoNode;
    double best_value = kInfinity;
    for (NodeId c = 0; c < n; ++c) {
      if (chosen[c]) continue;
      const auto row = instance.dist().row(c);
      double total = 0.0;
      for (NodeId i = 0; i < n; ++i) total += instance.demand(i) * std::min(current[i], row[i]);
      if (best == kNoNode || total < best_value - improvement_epsilon(best_value)) {
        best = c;
        best_value = total;
      }
    }
    chosen[best] = 1;
    result.facilities.push_back(best);
    const auto row = instance.dist().row(best);
    for (NodeId i = 0; i < n; ++i) current[i] = std::min(current[i], row[i]);
  }
  std::sort(result.facilities.begin(), result.facilities.end());
  result.objective = objective(instance, result.facilities);
  result.runtime_seconds = seconds_since(start);
  return result;
}

PmpResult solve_pmp(const Instance& instance, int p, SwapAgent& agent, const PmpOptions& options) {
  check_p(instance, p);
  check_trials(options.trials);
  if (options.swaps < 0) throw InvalidArgument("swap count must be positive (0 selects p)");
  const int swaps = options.swaps > 0 ? options.swaps : p;
  const auto start = Clock::now();

  PmpResult result;
  result.method = std::string(agent.name());
  result.trials = options.trials;
  result.objective = kInfinity;
  for (int t = 0; t < options.trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    const std::vector<NodeId> initial = options.init(instance, p, derive_seed(options.seed, trial));
    const RelocationPlan plan =
        run_swaps(instance, initial, swaps, agent, 1, derive_seed(options.seed ^ 0x5a5a5a5aULL, trial));
    if (result.facilities.empty() ||
        plan.final_objective < result.objective - improvement_epsilon(result.objective)) {
      result.objective = plan.final_objective;
      result.facilities = plan.final_facilities;
    }
  }
  result.runtime_seconds = seconds_since(start);
  return result;
}

}  // namespace swaploc
