#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "swaploc/bench.hpp"
#include "swaploc/generators.hpp"

namespace swaploc {
namespace {

std::vector<std::shared_ptr<const Instance>> grid_corpus(int count, int width) {
  std::vector<std::shared_ptr<const Instance>> corpus;
  for (int s = 0; s < count; ++s) {
    GridCityParams params;
    params.width = width;
    params.seed = static_cast<std::uint64_t>(s);
    corpus.push_back(std::make_shared<const Instance>(generate_grid_city(params)));
  }
  return corpus;
}

TEST(CanonicalMethod, AliasesAndErrors) {
  EXPECT_EQ(canonical_method(BenchTask::Frp, "Greedy-Swap"), "greedy");
  EXPECT_EQ(canonical_method(BenchTask::Frp, "random-swap"), "random");
  EXPECT_EQ(canonical_method(BenchTask::Pmp, "k-means"), "kmeans");
  EXPECT_EQ(canonical_method(BenchTask::Pmp, "random-swap"), "random-swap");
  EXPECT_THROW(canonical_method(BenchTask::Frp, "kmeans"), InvalidArgument);
  try {
    canonical_method(BenchTask::Pmp, "magic");
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("maranzana"), std::string::npos);
  }
}

TEST(DatasetName, FromGeneratorAndSize) {
  EXPECT_EQ(dataset_name(grid_corpus(2, 4)), "Grid_16");
  auto mixed = grid_corpus(1, 4);
  mixed.push_back(grid_corpus(1, 5).front());
  EXPECT_EQ(dataset_name(mixed), "Mixed");
}

TEST(RunBench, FrpIsDeterministicAcrossWorkerCounts) {
  const auto corpus = grid_corpus(4, 6);
  BenchConfig config;
  config.task = BenchTask::Frp;
  config.methods = {"random", "greedy", "vsca"};
  config.p = 6;
  config.trials = 2;
  config.seed = 99;
  config.workers = 1;
  const BenchReport one = run_bench(corpus, config);
  config.workers = 4;
  const BenchReport four = run_bench(corpus, config);
  ASSERT_EQ(one.rows.size(), 3u);
  for (size_t m = 0; m < 3; ++m) {
    EXPECT_EQ(one.rows[m].value, four.rows[m].value);
    EXPECT_EQ(one.rows[m].mean_objective, four.rows[m].mean_objective);
    EXPECT_EQ(one.rows[m].metric, "Q");
    EXPECT_EQ(one.rows[m].dataset, "Grid_36");
    EXPECT_EQ(one.rows[m].instances, 4);
    ASSERT_TRUE(one.rows[m].value);
    EXPECT_GE(*one.rows[m].value, 0.0);
  }
  EXPECT_EQ(one.rows[1].method, "greedy");
  // Each sample equals a direct relocation from the same base and seed.
  for (const BenchSample& s : one.samples) {
    const std::uint64_t seed = derive_seed(99, s.instance);
    const auto base = density_init(*corpus[s.instance], 6, seed);
    const RelocationPlan plan = relocate_with(*corpus[s.instance], base, 3, s.method, 2, derive_seed(seed, 1));
    EXPECT_DOUBLE_EQ(*s.value, 100.0 * plan.improvement_ratio) << s.method;
  }
}

TEST(RunBench, Grid64RelocationBands) {
  BenchConfig config;
  config.task = BenchTask::Frp;
  config.methods = {"random", "vsca"};
  config.p = 6;
  config.trials = 5;
  const BenchReport report = run_bench(grid_corpus(10, 8), config);
  ASSERT_TRUE(report.rows[0].value && report.rows[1].value);
  EXPECT_GE(*report.rows[0].value, 0.0);
  EXPECT_LE(*report.rows[0].value, 15.0);
  EXPECT_GE(*report.rows[1].value, 8.0);
}

TEST(RunBench, PmpGapAgainstOracleAndNotAvailable) {
  const auto corpus = grid_corpus(2, 4);
  BenchConfig config;
  config.task = BenchTask::Pmp;
  config.methods = {"greedy", "exact", "random"};
  config.p = 3;
  config.seed = 1;
  const BenchReport report = run_bench(corpus, config);
  ASSERT_EQ(report.rows.size(), 3u);
  ASSERT_TRUE(report.rows[1].value);
  EXPECT_EQ(*report.rows[1].value, 0.0);
  EXPECT_EQ(report.rows[1].metric, "gap");
  for (const BenchRow& row : report.rows) {
    ASSERT_TRUE(row.value);
    EXPECT_GE(*row.value, 0.0);
  }

  // With a cap below C(16, 3) the oracle is unavailable and gaps are n/a.
  config.methods = {"greedy"};
  config.exact.max_candidates = 10;
  const BenchReport capped = run_bench(corpus, config);
  EXPECT_FALSE(capped.rows[0].value);
  EXPECT_NE(format_table(capped.rows).find("n/a"), std::string::npos);
}

TEST(RunBench, RejectsBadConfigs) {
  const auto corpus = grid_corpus(1, 4);
  BenchConfig config;
  config.methods = {"greedy"};
  config.p = 3;
  EXPECT_THROW(run_bench({}, config), InvalidArgument);
  config.p = 17;
  EXPECT_THROW(run_bench(corpus, config), InvalidArgument);
  config.p = 3;
  config.methods = {"kmeans"};
  EXPECT_THROW(run_bench(corpus, config), InvalidArgument);
  config.methods = {};
  EXPECT_THROW(run_bench(corpus, config), InvalidArgument);
}

TEST(Rows, RoundTripIncludingMissingValue) {
  std::vector<BenchRow> rows(2);
  rows[0] = {"Grid_64", 64, 6, "greedy", "Q", 12.345678901234567, 1234.5, 0.01, 10, 7};
  rows[1] = {"Gabriel_100", 100, 10, "exact", "gap", std::nullopt, 99.0, 2.5, 5, 18446744073709551615ull};
  std::stringstream buffer;
  write_rows(buffer, rows);
  EXPECT_NE(buffer.str().find("\"value\":null"), std::string::npos);
  EXPECT_EQ(read_rows(buffer), rows);
  std::istringstream bad(R"({"dataset":"x"})");
  EXPECT_THROW(read_rows(bad), InvalidArgument);
}

TEST(FormatTable, AlignedColumns) {
  std::vector<BenchRow> rows(2);
  rows[0] = {"Grid_64", 64, 6, "greedy", "Q", 12.3, 1234.5, 0.01, 10, 7};
  rows[1] = {"Grid_64", 64, 6, "random", "Q", 1.0, 99999.25, 0.5, 10, 7};
  const std::string table = format_table(rows);
  std::istringstream lines(table);
  std::vector<std::string> all;
  for (std::string line; std::getline(lines, line);) all.push_back(line);
  ASSERT_EQ(all.size(), 4u);
  EXPECT_EQ(all[2].size(), all[3].size());
  EXPECT_NE(all[2].find("12.30"), std::string::npos);
}

}  // namespace
}  // namespace swaploc
