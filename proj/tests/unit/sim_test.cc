/*
 * Copyright 2026 The Catalyst Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "catalyst/sim/metrics.h"
#include "catalyst/sim/run_config.h"
#include "catalyst/sim/simulator.h"
#include "catalyst/sim/sweep.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace catalyst {
namespace {

using ::testing::ElementsAre;

RunConfig SmallConfig() {
  RunConfig config;
  config.num_clients = 6;
  config.dataset.num_classes = 4;
  config.dataset.dim = 8;
  config.dataset.num_examples = 600;
  config.dataset.partition = IidMode{};
  config.training.lr = 0.1;
  config.duration = 1000.0;
  config.eval_period = 100.0;
  config.server_params.f = 1;
  config.server_params.window = 3;
  return config;
}

std::vector<double> TriggerTimes(const EventLog& log) {
  std::vector<double> times;
  for (const EventRecord& r : log.records()) {
    if (r.kind == UpdateKind::kTrigger) times.push_back(r.t_virtual);
  }
  return times;
}

TEST(SimulatorTest, SyncFedAvgWithFixedComputeTime) {
  RunConfig config = SmallConfig();
  config.server = ServerKind::kFedAvgSync;
  config.num_clients = 4;
  config.server_params.f = 0;
  config.profile = {100.0, 0.0};
  config.duration = 300.0;
  auto result = catalyst::Run(config);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_THAT(TriggerTimes(result->events), ElementsAre(100.0, 200.0, 300.0));
  EXPECT_EQ(result->events.records().size(), 12u);
  EXPECT_EQ(result->metrics.rows.back().age, 3);
  EXPECT_EQ(result->metrics.rows.back().aggregations, 3u);
}

TEST(SimulatorTest, EvaluationGrid) {
  RunConfig config = SmallConfig();
  config.duration = 250.0;
  auto result = catalyst::Run(config);
  ASSERT_TRUE(result.ok()) << result.status();
  std::vector<double> times;
  for (const MetricsRow& row : result->metrics.rows) times.push_back(row.time);
  EXPECT_THAT(times, ElementsAre(0.0, 100.0, 200.0, 250.0));
  EXPECT_EQ(result->metrics.rows[0].age, 0);
}

TEST(SimulatorTest, ZeroDurationGivesOneRow) {
  RunConfig config = SmallConfig();
  config.duration = 0.0;
  auto result = catalyst::Run(config);
  ASSERT_TRUE(result.ok()) << result.status();
  ASSERT_EQ(result->metrics.rows.size(), 1u);
  EXPECT_EQ(result->metrics.rows[0].time, 0.0);
  EXPECT_TRUE(result->events.records().empty());
}

TEST(SimulatorTest, Deterministic) {
  RunConfig config = SmallConfig();
  config.attack.kind = AttackKind::kRandomPerturbation;
  config.attack.byzantine_ids = {0};
  auto a = catalyst::Run(config);
  auto b = catalyst::Run(config);
  ASSERT_TRUE(a.ok() && b.ok());
  EXPECT_EQ(MetricsToCsv(a->metrics), MetricsToCsv(b->metrics));
  EXPECT_EQ(a->events.ToJsonLines(), b->events.ToJsonLines());
  config.seeds.timing = 99;
  auto c = catalyst::Run(config);
  ASSERT_TRUE(c.ok());
  EXPECT_NE(a->events.ToJsonLines(), c->events.ToJsonLines());
}

TEST(SimulatorTest, RobustServerLearnsUnderGradientInversion) {
  RunConfig config = SmallConfig();
  config.attack.kind = AttackKind::kGradientInversion;
  config.attack.byzantine_ids = {0};
  auto result = catalyst::Run(config);
  ASSERT_TRUE(result.ok()) << result.status();
  EXPECT_GT(result->metrics.rows.back().accuracy, 0.8);
  EXPECT_GT(result->metrics.rows.back().filtered, 0u);
}

TEST(SimulatorTest, EveryServerKindRuns) {
  for (ServerKind kind :
       {ServerKind::kCatalyst, ServerKind::kFedAsync, ServerKind::kFedAvgSync,
        ServerKind::kKardam, ServerKind::kBasgd, ServerKind::kFlameAsync}) {
    RunConfig config = SmallConfig();
    config.server = kind;
    auto result = catalyst::Run(config);
    ASSERT_TRUE(result.ok()) << ServerKindName(kind) << ": " << result.status();
    EXPECT_GT(result->metrics.rows.back().age, 0) << ServerKindName(kind);
    EXPECT_EQ(*ParseServerKind(ServerKindName(kind)), kind);
  }
  EXPECT_FALSE(ParseServerKind("fedprox").ok());
}

TEST(SimulatorTest, InvalidConfigRejected) {
  RunConfig config = SmallConfig();
  config.server_params.f = 3;
  EXPECT_EQ(ValidateRunConfig(config).code(),
            absl::StatusCode::kInvalidArgument);
  config = SmallConfig();
  config.eval_period = 0.0;
  EXPECT_FALSE(ValidateRunConfig(config).ok());
}

TEST(MetricsTest, CsvAndTimeToAccuracy) {
  RunMetrics m;
  m.rows.push_back({0.0, 0, 0.1, std::nullopt, 0, 0});
  m.rows.push_back({100.0, 2, 0.85, 0.25, 2, 1});
  EXPECT_EQ(MetricsToCsv(m), std::string(kMetricsCsvHeader) +
                                 "\n0.000,0,0.100000,,0,0\n"
                                 "100.000,2,0.850000,0.250000,2,1\n");
  EXPECT_EQ(TimeToAccuracy(m, 0.8), 100.0);
  EXPECT_FALSE(TimeToAccuracy(m, 0.9).has_value());
}

TEST(SweepTest, SinglePointEqualsPlainRun) {
  const RunConfig config = SmallConfig();
  const std::vector<double> points{6.0};
  auto sweep = Sweep(config, SweepAxis::kNumClients, points, 1,
                     SeedMode::kIndependent);
  auto plain = catalyst::Run(config);
  ASSERT_TRUE(sweep.ok() && plain.ok());
  ASSERT_EQ(sweep->size(), 1u);
  EXPECT_EQ((*sweep)[0].result.metrics, plain->metrics);
}

TEST(SweepTest, FixedSeedsWithZeroStdRepeatExactly) {
  RunConfig config = SmallConfig();
  config.profile = {100.0, 0.0};
  config.duration = 400.0;
  const std::vector<double> points{1.0, 2.0};
  auto sweep = Sweep(config, SweepAxis::kStdMultiplier, points, 2,
                     SeedMode::kFixed);
  ASSERT_TRUE(sweep.ok()) << sweep.status();
  ASSERT_EQ(sweep->size(), 4u);
  for (const SweepRun& run : *sweep) {
    EXPECT_EQ(run.result.metrics, (*sweep)[0].result.metrics);
  }
  const std::string summary = SweepSummaryCsv(SweepAxis::kStdMultiplier, *sweep);
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 3);
}

TEST(SweepTest, SeedModes) {
  const Seeds base;
  EXPECT_EQ(SweepSeeds(base, SeedMode::kIndependent, 0, 0).timing, base.timing);
  EXPECT_NE(SweepSeeds(base, SeedMode::kIndependent, 1, 0).timing, base.timing);
  EXPECT_NE(SweepSeeds(base, SeedMode::kIndependent, 1, 0).timing,
            SweepSeeds(base, SeedMode::kIndependent, 0, 1).timing);
  EXPECT_EQ(SweepSeeds(base, SeedMode::kSharedPoints, 3, 1).timing,
            SweepSeeds(base, SeedMode::kSharedPoints, 0, 1).timing);
  EXPECT_EQ(SweepSeeds(base, SeedMode::kFixed, 3, 2).data, base.data);
  for (SeedMode m :
       {SeedMode::kIndependent, SeedMode::kSharedPoints, SeedMode::kFixed}) {
    EXPECT_EQ(*ParseSeedMode(SeedModeName(m)), m);
  }
}

TEST(SweepTest, ByzantineFractionSetsFAndTrigger) {
  RunConfig config = SmallConfig();
  config.num_clients = 60;
  config.attack.kind = AttackKind::kGradientInversion;
  auto point = ApplySweepPoint(config, SweepAxis::kByzFraction, 0.45);
  ASSERT_TRUE(point.ok()) << point.status();
  EXPECT_EQ(point->server_params.f, 27);
  EXPECT_EQ(MakeServerConfig(*point).trigger(), 55);
  ASSERT_EQ(point->attack.byzantine_ids.size(), 27u);
  EXPECT_EQ(point->attack.byzantine_ids.front(), 0);
  EXPECT_EQ(point->attack.byzantine_ids.back(), 26);
  EXPECT_FALSE(ApplySweepPoint(config, SweepAxis::kByzFraction, 0.5).ok());
}

TEST(SweepTest, StdMultiplierScalesBaseStd) {
  RunConfig config = SmallConfig();
  config.profile = {100.0, 20.0};
  auto point = ApplySweepPoint(config, SweepAxis::kStdMultiplier, 4.0);
  ASSERT_TRUE(point.ok());
  EXPECT_DOUBLE_EQ(point->profile.compute_std, 80.0);
  EXPECT_DOUBLE_EQ(point->profile.compute_mean, 100.0);
}

TEST(MnistDataTest, PreparesShards) {
  const std::string dir = CATALYST_MNIST_DIR;
  if (!std::filesystem::exists(dir + "/train-images-idx3-ubyte")) {
    GTEST_SKIP() << "MNIST not present in " << dir;
  }
  RunConfig config;
  config.dataset.source = DataSource::kMnist;
  config.dataset.mnist_dir = dir;
  config.dataset.train_limit = 1000;
  config.dataset.test_limit = 200;
  config.dataset.partition = IidMode{};
  auto data = PrepareData(config);
  ASSERT_TRUE(data.ok()) << data.status();
  EXPECT_EQ(data->train.size(), 1000u);
  EXPECT_EQ(data->test.size(), 200u);
  EXPECT_EQ(data->train.feature_dim(), 784u);
  ASSERT_EQ(data->shards.size(), 10u);
  size_t total = 0;
  for (const ClientShard& s : data->shards) total += s.data.size();
  EXPECT_EQ(total, 1000u);
}

}  // namespace
}  // namespace catalyst
