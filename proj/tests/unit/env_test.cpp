#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "swaploc/cells.hpp"
#include "swaploc/env.hpp"
#include "swaploc/pmp.hpp"

namespace swaploc {
namespace {

using testing::path_instance;
using testing::random_instance;

std::shared_ptr<const Instance> shared(Instance instance) {
  return std::make_shared<const Instance>(std::move(instance));
}

TEST(Environment, PathRewardIsOneThird) {
  Environment env;
  const Observation& obs = env.reset(shared(path_instance(4)), std::vector<NodeId>{0}, 1);
  EXPECT_EQ(obs.step_index, 0);
  EXPECT_FALSE(obs.done);
  EXPECT_EQ(obs.remove_mask, (std::vector<char>{1, 0, 0, 0}));
  EXPECT_EQ(obs.insert_mask, (std::vector<char>{0, 1, 1, 1}));
  const StepResult r = env.step(0, 1);
  EXPECT_DOUBLE_EQ(r.reward, 1.0 / 3.0);
  EXPECT_TRUE(r.done);
  EXPECT_TRUE(r.observation.done);
  EXPECT_EQ(env.removed(), std::vector<NodeId>{0});
  EXPECT_EQ(env.inserted(), std::vector<NodeId>{1});
}

TEST(Environment, RewardsTelescopeToFinalQ) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto instance = shared(random_instance(30, seed));
    const std::vector<NodeId> f0 = density_init(*instance, 6, seed);
    Environment env;
    env.reset(instance, f0, 6);
    Rng rng(seed);
    double total = 0.0;
    while (!env.done()) {
      const auto f = env.solution().facilities();
      const NodeId remove = f[uniform_index(rng, f.size())];
      NodeId insert;
      do {
        insert = static_cast<NodeId>(uniform_index(rng, instance->size()));
      } while (env.solution().is_facility(insert));
      total += env.step(remove, insert).reward;
    }
    const std::vector<NodeId> final_set(env.solution().facilities().begin(),
                                        env.solution().facilities().end());
    const double q = improvement_ratio(*instance, f0, final_set);
    EXPECT_NEAR(total, q, 1e-9);
    EXPECT_NEAR(env.current_q(), q, 1e-12);
    EXPECT_EQ(env.history().size(), 6u);
  }
}

TEST(Environment, MaskViolationsNameTheNode) {
  Environment env;
  env.reset(shared(path_instance(5)), std::vector<NodeId>{0, 3}, 2);
  try {
    env.step(1, 2);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("node 1"), std::string::npos);
  }
  try {
    env.step(0, 3);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("node 3"), std::string::npos);
  }
  EXPECT_THROW(env.step(0, 7), InvalidArgument);
  EXPECT_THROW(env.step(-1, 2), InvalidArgument);
  EXPECT_EQ(env.step_index(), 0);
}

TEST(Environment, StepAfterDoneOrBeforeReset) {
  Environment fresh;
  EXPECT_THROW(fresh.step(0, 1), Error);
  Environment env;
  env.reset(shared(path_instance(4)), std::vector<NodeId>{0}, 1);
  env.step(0, 1);
  EXPECT_THROW(env.step(1, 2), Error);
}

TEST(Environment, ResetValidates) {
  Environment env;
  const auto path = shared(path_instance(4));
  EXPECT_THROW(env.reset(path, std::vector<NodeId>{0, 1}, 3), InvalidArgument);
  EXPECT_THROW(env.reset(path, std::vector<NodeId>{0, 1}, 0), InvalidArgument);
  EXPECT_THROW(env.reset(path, std::vector<NodeId>{}, 1), InvalidArgument);
  EXPECT_THROW(env.reset(path, std::vector<NodeId>{1, 1}, 1), InvalidArgument);
  EXPECT_THROW(env.reset(nullptr, std::vector<NodeId>{0}, 1), InvalidArgument);
}

TEST(Environment, ResetIsDeterministicAndClearsHistory) {
  const auto instance = shared(random_instance(25, 9));
  Environment a;
  const Observation first = a.reset(instance, std::vector<NodeId>{3, 9, 14}, 2);
  a.step(3, 4);
  const Observation second = a.reset(instance, std::vector<NodeId>{14, 3, 9}, 2);
  EXPECT_EQ(first, second);
  EXPECT_TRUE(a.history().empty());
  EXPECT_EQ(a.current_q(), 0.0);
}

TEST(Observation, FeaturesMatchIndependentComputation) {
  const Instance instance = random_instance(30, 4);
  const std::vector<NodeId> f = {2, 11, 17, 25};
  const Solution s = build_solution(instance, f);
  const Observation obs = observe(instance, s, 1, 3, 0.25);
  const CellStats stats = cell_stats(instance, s);
  const auto dist = testing::floyd_warshall(instance.graph());
  const auto nodes = instance.graph().nodes();
  double min_x = kInfinity, max_x = -kInfinity, min_d = kInfinity, max_d = -kInfinity;
  for (const Node& v : nodes) {
    min_x = std::min(min_x, v.x);
    max_x = std::max(max_x, v.x);
  }
  for (double d : instance.demand()) {
    min_d = std::min(min_d, d);
    max_d = std::max(max_d, d);
  }
  ASSERT_EQ(obs.features.size(), 30u);
  for (NodeId v = 0; v < 30; ++v) {
    const FeatureRow& row = obs.features[v];
    EXPECT_NEAR(row[kFeatX], (nodes[v].x - min_x) / (max_x - min_x), 1e-12);
    EXPECT_GE(row[kFeatY], 0.0);
    EXPECT_LE(row[kFeatY], 1.0);
    EXPECT_NEAR(row[kFeatDemand], (instance.demand(v) - min_d) / (max_d - min_d), 1e-12);
    EXPECT_NEAR(row[kFeatNodeIndex], v / 29.0, 1e-12);
    double nearest = kInfinity;
    int rank = 0;
    for (int r = 0; r < 4; ++r) {
      if (dist[v][f[r]] < nearest - 1e-12) {
        nearest = dist[v][f[r]];
        rank = r;
      }
    }
    EXPECT_NEAR(row[kFeatDistance], nearest, 1e-9);
    EXPECT_EQ(obs.cell_index[v], rank);
    EXPECT_NEAR(row[kFeatCellIndex], rank / 3.0, 1e-12);
    const bool open = std::find(f.begin(), f.end(), v) != f.end();
    EXPECT_EQ(row[kFeatIsFacility], open ? 1.0 : 0.0);
    EXPECT_EQ(obs.remove_mask[v], open ? 1 : 0);
    EXPECT_EQ(obs.insert_mask[v], open ? 0 : 1);
    if (open) {
      const Cell& cell = stats.cells[rank];
      EXPECT_EQ(row[kFeatCellDemand], cell.demand_sum);
      EXPECT_EQ(row[kFeatCellCost], cell.cost);
      EXPECT_EQ(row[kFeatCellArea], cell.area);
    } else {
      EXPECT_EQ(row[kFeatCellDemand], 0.0);
      EXPECT_EQ(row[kFeatCellCost], 0.0);
      EXPECT_EQ(row[kFeatCellArea], 0.0);
    }
  }
  EXPECT_EQ(obs.edges.size(), instance.graph().edges().size());
  EXPECT_EQ(obs.step_index, 1);
  EXPECT_EQ(obs.budget, 3);
  EXPECT_EQ(obs.current_q, 0.25);
}

TEST(Observation, DegenerateScalesAreZero) {
  // Equal demand everywhere and a single facility: scaled columns are 0.
  const Instance path = path_instance(3);
  const Observation obs = observe(path, build_solution(path, std::vector<NodeId>{1}), 0, 1, 0.0);
  for (const FeatureRow& row : obs.features) {
    EXPECT_EQ(row[kFeatDemand], 0.0);
    EXPECT_EQ(row[kFeatY], 0.0);
    EXPECT_EQ(row[kFeatCellIndex], 0.0);
  }
}

TEST(Observation, JsonRoundTrip) {
  const Instance instance = random_instance(15, 6);
  const Observation obs = observe(instance, build_solution(instance, std::vector<NodeId>{1, 7}), 0, 2, 0.0);
  const nlohmann::json doc = observation_to_json(obs);
  EXPECT_EQ(doc.at("n"), 15);
  EXPECT_EQ(doc.at("features").size(), 15u);
  EXPECT_EQ(doc.at("features")[0].size(), 10u);
  EXPECT_EQ(doc.at("meta").at("node_index")[14], 14);
  const Observation back = observation_from_json(nlohmann::json::parse(doc.dump()));
  EXPECT_EQ(back, obs);
}

TEST(Observation, MalformedJsonIsRejected) {
  const Instance instance = random_instance(6, 6);
  nlohmann::json doc = observation_to_json(observe(instance, build_solution(instance, std::vector<NodeId>{1}), 0, 1, 0.0));
  nlohmann::json short_row = doc;
  short_row["features"][0].erase(0);
  EXPECT_THROW(observation_from_json(short_row), InvalidArgument);
  nlohmann::json short_mask = doc;
  short_mask["remove_mask"].erase(0);
  EXPECT_THROW(observation_from_json(short_mask), InvalidArgument);
  nlohmann::json missing = doc;
  missing.erase("budget");
  EXPECT_THROW(observation_from_json(missing), InvalidArgument);
}

}  // namespace
}  // namespace swaploc
