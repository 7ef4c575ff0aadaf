#include "swaploc/swap.hpp"

#include <algorithm>
#include <iterator>

#include "swaploc/cells.hpp"

namespace swaploc {
namespace {

bool improves(double delta, const Solution& solution) {
  return delta < -improvement_epsilon(solution.objective());
}

class RandomSwapAgent final : public SwapAgent {
 public:
  explicit RandomSwapAgent(std::uint64_t seed) : rng_(seed) {}

  std::string_view name() const override { return "random-swap"; }

  std::optional<SwapMove> act(const Instance& instance, const Solution& solution,
                              const SwapContext&) override {
    const int n = instance.size();
    const int p = solution.p();
    if (p == n) return std::nullopt;
    const NodeId remove = solution.facilities()[uniform_index(rng_, p)];
    auto skip = static_cast<int>(uniform_index(rng_, static_cast<std::uint64_t>(n - p)));
    for (NodeId v = 0; v < n; ++v) {
      if (solution.is_facility(v)) continue;
      if (skip-- == 0) return SwapMove{remove, v};
    }
    return std::nullopt;
  }

  bool accepts(double, const Solution&) const override { return true; }

  void reseed(std::uint64_t seed) override { rng_.seed(seed); }

 private:
  Rng rng_;
};

class GreedySwapAgent final : public SwapAgent {
 public:
  std::string_view name() const override { return "greedy-swap"; }

  std::optional<SwapMove> act(const Instance& instance, const Solution& solution,
                              const SwapContext&) override {
    auto best = best_swap(instance, solution);
    if (!best) return std::nullopt;
    return best->first;
  }

  bool accepts(double delta, const Solution& solution) const override {
    return improves(delta, solution);
  }

  bool stops_on_rejection() const override { return true; }
};

class VscaAgent final : public SwapAgent {
 public:
  std::string_view name() const override { return "vsca"; }

  std::optional<SwapMove> act(const Instance& instance, const Solution& solution,
                              const SwapContext&) override {
    if (solution.p() < 2) return std::nullopt;
    const std::vector<double> costs = cell_costs(instance, solution);
    // First index wins ties, i.e. the lower facility id.
    const auto high = static_cast<size_t>(
        std::max_element(costs.begin(), costs.end()) - costs.begin());
    const auto low = static_cast<size_t>(
        std::min_element(costs.begin(), costs.end()) - costs.begin());
    const NodeId high_facility = solution.facilities()[high];
    const NodeId remove = solution.facilities()[low];

    const double tie = improvement_epsilon(solution.objective());
    NodeId insert = kNoNode;
    double best_delta = kInfinity;
    for (NodeId v = 0; v < instance.size(); ++v) {
      if (solution.is_facility(v) || solution.nearest(v).facility != high_facility) continue;
      const double delta = swap_delta(instance, solution, remove, v);
      if (insert == kNoNode || delta < best_delta - tie) {
        best_delta = delta;
        insert = v;
      }
    }
    if (insert == kNoNode) return std::nullopt;
    return SwapMove{remove, insert};
  }

  bool accepts(double delta, const Solution& solution) const override {
    return improves(delta, solution);
  }

  bool stops_on_rejection() const override { return true; }
};

}  // namespace

std::unique_ptr<SwapAgent> random_swap_agent(std::uint64_t seed) {
  return std::make_unique<RandomSwapAgent>(seed);
}

std::unique_ptr<SwapAgent> greedy_swap_agent() { return std::make_unique<GreedySwapAgent>(); }

std::unique_ptr<SwapAgent> vsca_agent() { return std::make_unique<VscaAgent>(); }

std::optional<std::pair<SwapMove, double>> best_swap(const Instance& instance,
                                                     const Solution& solution) {
  const double tie = improvement_epsilon(solution.objective());
  std::optional<std::pair<SwapMove, double>> best;
  for (NodeId remove : solution.facilities()) {
    for (NodeId insert = 0; insert < instance.size(); ++insert) {
      if (solution.is_facility(insert)) continue;
      const double delta = swap_delta(instance, solution, remove, insert);
      if (!best || delta < best->second - tie) best = {{remove, insert}, delta};
    }
  }
  return best;
}

std::vector<NodeId> set_difference(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::vector<NodeId> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RelocationPlan run_swaps(const Instance& instance, std::span<const NodeId> base, int budget,
                         SwapAgent& agent, int restarts, std::uint64_t seed) {
  if (budget < 1) throw InvalidArgument("swap budget must be at least 1");
  if (restarts < 1) throw InvalidArgument("restart count must be at least 1");
  const std::vector<NodeId> base_sorted = normalize_facilities(instance, base);
  const Solution start(instance, base_sorted);

  RelocationPlan plan;
  plan.base_facilities = base_sorted;
  plan.final_facilities = base_sorted;
  plan.budget = budget;
  plan.restarts = restarts;
  plan.base_objective = start.objective();
  plan.final_objective = start.objective();

  SwapContext context{plan.base_facilities, plan.base_objective, 0, 0, budget};
  for (int restart = 0; restart < restarts; ++restart) {
    agent.reseed(derive_seed(seed, static_cast<std::uint64_t>(restart)));
    Solution current = start;
    context.restart = restart;
    for (int step = 0; step < budget; ++step) {
      context.step = step;
      const std::optional<SwapMove> move = agent.act(instance, current, context);
      if (!move) break;
      if (move->remove < 0 || move->remove >= instance.size() ||
          !current.is_facility(move->remove) || move->insert < 0 ||
          move->insert >= instance.size() || current.is_facility(move->insert)) {
        throw InvalidArgument(std::string(agent.name()) + " proposed an illegal move (" +
                              std::to_string(move->remove) + " -> " +
                              std::to_string(move->insert) + ")");
      }
      const double delta = swap_delta(instance, current, move->remove, move->insert);
      const bool accepted = agent.accepts(delta, current);
      plan.steps.push_back({restart, step, move->remove, move->insert, delta, accepted});
      if (!accepted) {
        if (agent.stops_on_rejection()) break;
        continue;
      }
      current.swap(instance, move->remove, move->insert);
      if (current.objective() < plan.final_objective - improvement_epsilon(plan.final_objective)) {
        const auto facilities = current.facilities();
        plan.final_facilities.assign(facilities.begin(), facilities.end());
        plan.final_objective = current.objective();
      }
    }
  }

  plan.removed = set_difference(plan.base_facilities, plan.final_facilities);
  plan.inserted = set_difference(plan.final_facilities, plan.base_facilities);
  plan.final_objective = objective(instance, plan.final_facilities);
  plan.improvement_ratio = plan.base_objective > 0.0
                               ? (plan.base_objective - plan.final_objective) / plan.base_objective
                               : 0.0;
  return plan;
}

RelocationPlan swap_relocate(const Instance& instance, std::span<const NodeId> base,
                             int budget, SwapAgent& agent, int restarts, std::uint64_t seed) {
  if (budget < 1 || budget > static_cast<int>(base.size())) {
    throw InvalidArgument("relocation budget must lie in 1..|F0| = 1.." +
                          std::to_string(base.size()) + ", got " + std::to_string(budget));
  }
  return run_swaps(instance, base, budget, agent, restarts, seed);
}

}  // namespace swaploc
