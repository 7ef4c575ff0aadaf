#include "swaploc/env.hpp"

#include <algorithm>

#include "swaploc/cells.hpp"
#include "swaploc/swap.hpp"

namespace swaploc {
namespace {

double scaled(double value, double lo, double hi) {
  return hi > lo ? (value - lo) / (hi - lo) : 0.0;
}

}  // namespace

Observation observe(const Instance& instance, const Solution& solution, int step_index,
                    int budget, double current_q) {
  const int n = instance.size();
  const int p = solution.p();
  const auto nodes = instance.graph().nodes();
  const auto demand = instance.demand();
  const auto [min_x, max_x] = std::minmax_element(
      nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.x < b.x; });
  const auto [min_y, max_y] = std::minmax_element(
      nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.y < b.y; });
  const auto [min_d, max_d] = std::minmax_element(demand.begin(), demand.end());

  const CellStats stats = cell_stats(instance, solution);
  const auto facilities = solution.facilities();

  Observation obs;
  obs.features.assign(n, FeatureRow{});
  obs.remove_mask.assign(n, 0);
  obs.insert_mask.assign(n, 0);
  obs.cell_index.assign(n, 0);
  obs.edges.assign(instance.graph().edges().begin(), instance.graph().edges().end());
  obs.step_index = step_index;
  obs.budget = budget;
  obs.current_q = current_q;
  obs.done = step_index >= budget;

  for (NodeId v = 0; v < n; ++v) {
    FeatureRow& row = obs.features[v];
    const Assignment& a = solution.nearest(v);
    const int rank = static_cast<int>(
        std::lower_bound(facilities.begin(), facilities.end(), a.facility) - facilities.begin());
    row[kFeatX] = scaled(nodes[v].x, min_x->x, max_x->x);
    row[kFeatY] = scaled(nodes[v].y, min_y->y, max_y->y);
    row[kFeatDemand] = scaled(demand[v], *min_d, *max_d);
    row[kFeatIsFacility] = solution.is_facility(v) ? 1.0 : 0.0;
    row[kFeatNodeIndex] = n > 1 ? static_cast<double>(v) / (n - 1) : 0.0;
    row[kFeatCellIndex] = p > 1 ? static_cast<double>(rank) / (p - 1) : 0.0;
    row[kFeatDistance] = a.distance;
    obs.cell_index[v] = rank;
    if (solution.is_facility(v)) {
      const Cell& cell = stats.cells[rank];
      row[kFeatCellDemand] = cell.demand_sum;
      row[kFeatCellCost] = cell.cost;
      row[kFeatCellArea] = cell.area;
      obs.remove_mask[v] = 1;
    } else {
      obs.insert_mask[v] = 1;
    }
  }
  return obs;
}

nlohmann::json observation_to_json(const Observation& obs) {
  nlohmann::json features = nlohmann::json::array();
  for (const FeatureRow& row : obs.features) features.push_back(row);
  nlohmann::json edges = nlohmann::json::array();
  for (const Edge& e : obs.edges) edges.push_back({e.u, e.v, e.length});
  nlohmann::json remove = nlohmann::json::array();
  nlohmann::json insert = nlohmann::json::array();
  nlohmann::json node_index = nlohmann::json::array();
  for (size_t v = 0; v < obs.remove_mask.size(); ++v) {
    remove.push_back(obs.remove_mask[v] != 0);
    insert.push_back(obs.insert_mask[v] != 0);
    node_index.push_back(v);
  }
  return {{"n", obs.features.size()},
          {"features", std::move(features)},
          {"edges", std::move(edges)},
          {"remove_mask", std::move(remove)},
          {"insert_mask", std::move(insert)},
          {"step_index", obs.step_index},
          {"budget", obs.budget},
          {"current_q", obs.current_q},
          {"done", obs.done},
          {"meta", {{"node_index", std::move(node_index)}, {"cell_index", obs.cell_index}}}};
}

Observation observation_from_json(const nlohmann::json& doc) {
  Observation obs;
  try {
    for (const auto& row : doc.at("features")) {
      if (!row.is_array() || row.size() != kFeatureCount) {
        throw InvalidArgument("observation feature rows need 10 columns");
      }
      obs.features.push_back(row.get<FeatureRow>());
    }
    for (const auto& e : doc.at("edges")) {
      obs.edges.push_back({e.at(0).get<NodeId>(), e.at(1).get<NodeId>(), e.at(2).get<double>()});
    }
    for (const auto& m : doc.at("remove_mask")) obs.remove_mask.push_back(m.get<bool>() ? 1 : 0);
    for (const auto& m : doc.at("insert_mask")) obs.insert_mask.push_back(m.get<bool>() ? 1 : 0);
    obs.cell_index = doc.at("meta").at("cell_index").get<std::vector<int>>();
    obs.step_index = doc.at("step_index").get<int>();
    obs.budget = doc.at("budget").get<int>();
    obs.current_q = doc.at("current_q").get<double>();
    obs.done = doc.at("done").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed observation: ") + e.what());
  }
  const size_t n = obs.features.size();
  if (obs.remove_mask.size() != n || obs.insert_mask.size() != n || obs.cell_index.size() != n) {
    throw InvalidArgument("observation arrays disagree on the node count");
  }
  return obs;
}

const Observation& Environment::reset(std::shared_ptr<const Instance> instance,
                                      std::span<const NodeId> base, int budget) {
  if (!instance) throw InvalidArgument("reset needs an instance");
  std::vector<NodeId> sorted = normalize_facilities(*instance, base);
  if (sorted.empty()) throw InvalidArgument("initial facility set is empty");
  if (budget < 1 || budget > static_cast<int>(sorted.size())) {
    throw InvalidArgument("budget must lie in 1..|F0| = 1.." + std::to_string(sorted.size()) +
                          ", got " + std::to_string(budget));
  }
  Solution solution(*instance, sorted);
  instance_ = std::move(instance);
  base_ = std::move(sorted);
  base_objective_ = solution.objective();
  solution_ = std::move(solution);
  budget_ = budget;
  step_index_ = 0;
  history_.clear();
  observation_ = observe(*instance_, *solution_, 0, budget_, 0.0);
  return observation_;
}

double Environment::current_q() const {
  if (!solution_ || base_objective_ == 0.0) return 0.0;
  return (base_objective_ - solution_->objective()) / base_objective_;
}

StepResult Environment::step(NodeId remove, NodeId insert) {
  if (!active()) throw Error("no active episode; send reset first");
  if (done()) throw Error("episode is done after " + std::to_string(budget_) + " steps");
  const int n = instance_->size();
  if (remove < 0 || remove >= n || !solution_->is_facility(remove)) {
    throw InvalidArgument("remove mask violated by node " + std::to_string(remove));
  }
  if (insert < 0 || insert >= n || solution_->is_facility(insert)) {
    throw InvalidArgument("insert mask violated by node " + std::to_string(insert));
  }
  const double before = current_q();
  solution_->swap(*instance_, remove, insert);
  ++step_index_;
  const double after = current_q();
  const double reward = after - before;
  history_.push_back({remove, insert, reward});
  observation_ = observe(*instance_, *solution_, step_index_, budget_, after);
  return {observation_, reward, done()};
}

std::vector<NodeId> Environment::removed() const {
  return set_difference(base_, solution_->facilities());
}

std::vector<NodeId> Environment::inserted() const {
  return set_difference(solution_->facilities(), base_);
}

}  // namespace swaploc
