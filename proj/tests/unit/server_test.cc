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

#include "catalyst/server/async_robust_server.h"

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "golden_script.h"
#include "gtest/gtest.h"

namespace catalyst {
namespace {

using ::testing::ElementsAre;

ServerConfig Config(int f, int window, int num_clients) {
  ServerConfig config;
  config.f = f;
  config.window = window;
  config.num_clients = num_clients;
  return config;
}

ServerState Init(const ServerConfig& config, const ModelVector& g0) {
  auto init = InitServer(config, g0);
  EXPECT_TRUE(init.ok()) << init.status();
  return std::move(init->state);
}

ServerOutput Send(ServerState& s, const ServerConfig& config, int client,
                  ModelVector w) {
  auto out = HandleUpdate(s, config, ClientUpdate{client, 0, std::move(w)}, 7);
  EXPECT_TRUE(out.ok()) << out.status();
  return out.ok() ? *out : ServerOutput{};
}

TEST(ServerInitTest, BroadcastsG0ToEveryClient) {
  const ServerConfig config = Config(1, 3, 4);
  auto init = InitServer(config, ModelVector{1.0, 2.0});
  ASSERT_TRUE(init.ok());
  EXPECT_EQ(init->state.age, 0);
  EXPECT_THAT(init->state.age_client_models, ElementsAre(0, 0, 0, 0));
  ASSERT_EQ(init->output.sends.size(), 4u);
  for (int c = 0; c < 4; ++c) {
    EXPECT_EQ(init->output.sends[c].client_id, c);
    EXPECT_EQ(init->output.sends[c].model, (ModelVector{1.0, 2.0}));
  }
}

TEST(ServerInitTest, RejectsTooManyByzantine) {
  auto init = InitServer(Config(2, 3, 4), ModelVector{0.0});
  EXPECT_EQ(init.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(std::string(init.status().message()),
              ::testing::HasSubstr("2f+1"));
  EXPECT_FALSE(InitServer(Config(0, 0, 3), ModelVector{0.0}).ok());
  EXPECT_FALSE(InitServer(Config(0, 3, 3), ModelVector{}).ok());
}

TEST(ServerTriggerTest, DefaultTrigger) {
  EXPECT_EQ(DefaultTrigger(0), 2);
  EXPECT_EQ(DefaultTrigger(1), 3);
  EXPECT_EQ(DefaultTrigger(27), 55);
}

TEST(ServerTriggerTest, ThirdFreshUpdateTriggersForOneByzantine) {
  const ServerConfig config = Config(1, 3, 5);
  ServerState s = Init(config, ModelVector{0.0, 0.0});
  EXPECT_EQ(Send(s, config, 0, {1.0, 0.0}).kind, UpdateKind::kFresh);
  EXPECT_EQ(Send(s, config, 1, {1.0, 0.0}).kind, UpdateKind::kFresh);
  EXPECT_EQ(s.age, 0);
  const ServerOutput out = Send(s, config, 2, {1.0, 0.0});
  EXPECT_EQ(out.kind, UpdateKind::kTrigger);
  EXPECT_EQ(s.age, 1);
  ASSERT_TRUE(out.new_age.has_value());
  EXPECT_EQ(*out.new_age, 1);
  // The three contributors get G_1; clients 3 and 4 keep G_0.
  ASSERT_EQ(out.sends.size(), 3u);
  EXPECT_THAT(s.age_client_models, ElementsAre(1, 1, 1, 0, 0));
  EXPECT_EQ(s.global(), (ModelVector{1.0, 0.0}));
}

TEST(ServerTriggerTest, DuplicateIsIgnored) {
  const ServerConfig config = Config(1, 3, 5);
  ServerState s = Init(config, ModelVector{0.0, 0.0});
  Send(s, config, 0, {1.0, 0.0});
  const ServerState before = s;
  const ServerOutput out = Send(s, config, 0, {9.0, 9.0});
  EXPECT_EQ(out.kind, UpdateKind::kDuplicate);
  EXPECT_TRUE(out.sends.empty());
  EXPECT_TRUE(s == before);
}

TEST(ServerTriggerTest, RejectsMalformedUpdates) {
  const ServerConfig config = Config(1, 3, 5);
  ServerState s = Init(config, ModelVector{0.0, 0.0});
  EXPECT_FALSE(HandleUpdate(s, config, {7, 0, {1.0, 0.0}}, 0).ok());
  EXPECT_FALSE(HandleUpdate(s, config, {0, 0, {1.0}}, 0).ok());
  EXPECT_FALSE(HandleUpdate(s, config, {0, 0, {NAN, 0.0}}, 0).ok());
}

// Clients 0..2 drive ages forward; client 3 trained on G_3 and reports at
// age 6 with K = 5.
TEST(ServerLateTest, LateUpdateStoredAndCurrentModelSent) {
  const ServerConfig config = Config(1, 5, 4);
  ServerState s = Init(config, ModelVector{0.0});
  for (int round = 0; round < 6; ++round) {
    const double w = round + 1.0;
    Send(s, config, 0, {w});
    Send(s, config, 1, {w});
    if (round < 3) Send(s, config, 3, {w});
    else Send(s, config, 2, {w});
    if (round == 2) Send(s, config, 2, {w});  // late for age 2, stored
  }
  ASSERT_EQ(s.age, 6);
  ASSERT_EQ(s.age_client_models[3], 3);
  const ServerOutput out = Send(s, config, 3, {4.5});
  EXPECT_EQ(out.kind, UpdateKind::kLate);
  EXPECT_EQ(out.model_age, 3);
  ASSERT_EQ(out.sends.size(), 1u);
  EXPECT_EQ(out.sends[0].client_id, 3);
  EXPECT_EQ(out.sends[0].age, 6);
  EXPECT_EQ(out.sends[0].model, s.global_history.at(6));
  ASSERT_EQ(s.pending.count(3), 1u);
  EXPECT_EQ(s.pending.at(3).size(), 1u);
  EXPECT_EQ(s.age_client_models[3], 6);
}

TEST(ServerLateTest, OutsideWindowIsStale) {
  const ServerConfig config = Config(0, 2, 3);
  ServerState s = Init(config, ModelVector{0.0});
  for (int round = 0; round < 3; ++round) {
    Send(s, config, 0, {round + 1.0});
    Send(s, config, 1, {round + 1.0});
  }
  ASSERT_EQ(s.age, 3);
  const ServerOutput out = Send(s, config, 2, {5.0});
  EXPECT_EQ(out.kind, UpdateKind::kStale);
  EXPECT_TRUE(s.pending.empty());
  ASSERT_EQ(out.sends.size(), 1u);
  EXPECT_EQ(out.sends[0].age, 3);
}

// A window of one is the synchronous-style variant: anything not computed
// on the current model is dropped.
TEST(ServerLateTest, WindowOneDropsEveryLateUpdate) {
  const ServerConfig config = Config(1, 1, 4);
  ServerState s = Init(config, ModelVector{0.0});
  Send(s, config, 0, {1.0});
  Send(s, config, 1, {1.0});
  Send(s, config, 2, {1.0});
  ASSERT_EQ(s.age, 1);
  EXPECT_EQ(Send(s, config, 3, {1.0}).kind, UpdateKind::kStale);
  EXPECT_TRUE(s.pending.empty());
  EXPECT_THAT(s.global_history, ::testing::SizeIs(1));
}

TEST(StalenessTest, Examples) {
  EXPECT_DOUBLE_EQ(*Staleness(1.0, 5, 4), 1.0);
  EXPECT_DOUBLE_EQ(*Staleness(1.0, 5, 1), 0.25);
  EXPECT_DOUBLE_EQ(*Staleness(2.0, 7, 3), 0.5);
  EXPECT_EQ(Staleness(1.0, 5, 5).status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(Staleness(1.0, 4, 5).ok());
  EXPECT_FALSE(Staleness(0.0, 5, 4).ok());
}

TEST(ComputeNewGlobalTest, NoLateUpdatesGivesClippedMean) {
  const ServerConfig config = Config(1, 3, 3);
  ServerState s = Init(config, ModelVector{1.0, 1.0});
  // Deltas (1,0), (2,0), (4,0) share a direction. Median distance 2 clips
  // the last one to (2,0): mean delta (5/3, 0).
  Send(s, config, 0, {2.0, 1.0});
  Send(s, config, 1, {3.0, 1.0});
  Send(s, config, 2, {5.0, 1.0});
  ASSERT_EQ(s.age, 1);
  EXPECT_NEAR(s.global()[0], 1.0 + 5.0 / 3.0, 1e-12);
  EXPECT_NEAR(s.global()[1], 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(s.clip_bounds.at(0), 2.0);
}

TEST(ComputeNewGlobalTest, IdenticalUpdatesAreExact) {
  const ServerConfig config = Config(1, 3, 3);
  ServerState s = Init(config, ModelVector{0.3, -0.7});
  for (int c = 0; c < 3; ++c) Send(s, config, c, {0.1, 0.2});
  // Exact up to the rounding of G + (W - G).
  EXPECT_NEAR(s.global()[0], 0.1, 1e-15);
  EXPECT_NEAR(s.global()[1], 0.2, 1e-15);
}

TEST(ComputeNewGlobalTest, NeedsFreshUpdates) {
  const ServerConfig config = Config(1, 3, 3);
  ServerState s = Init(config, ModelVector{0.0});
  EXPECT_FALSE(ComputeNewGlobal(s, config, 0).ok());
}

// Fresh deltas (1,0) x3 at age 0 give S[0] = 1; a late (0.5,0) from client
// 3 then joins the age-1 aggregation with weight alpha/(1-0) * 1/4 * eta.
double LateCorrectionResult(LateCorrection sign) {
  ServerConfig config = Config(1, 3, 4);
  config.late_correction = sign;
  ServerState s = Init(config, ModelVector{0.0, 0.0});
  for (int c = 0; c < 3; ++c) Send(s, config, c, {1.0, 0.0});
  EXPECT_EQ(Send(s, config, 3, {0.5, 0.0}).kind, UpdateKind::kLate);
  for (int c = 0; c < 3; ++c) Send(s, config, c, {2.0, 0.0});
  EXPECT_EQ(s.age, 2);
  EXPECT_DOUBLE_EQ(s.global()[1], 0.0);
  // pending[0] is consumed and recorded as accepted.
  EXPECT_EQ(s.pending.count(0), 0u);
  EXPECT_EQ(s.processed.at(0).size(), 4u);
  EXPECT_TRUE(s.processed.at(0).back().accepted);
  return s.global()[0];
}

TEST(ComputeNewGlobalTest, LateCorrectionSubtractedByDefault) {
  EXPECT_EQ(ServerConfig{}.late_correction, LateCorrection::kSubtract);
  EXPECT_NEAR(LateCorrectionResult(LateCorrection::kSubtract), 2.0 - 0.125,
              1e-12);
  EXPECT_NEAR(LateCorrectionResult(LateCorrection::kDescent), 2.0 + 0.125,
              1e-12);
}

TEST(ComputeNewGlobalTest, RejectedLateUpdateIsNotReclustered) {
  const ServerConfig config = Config(1, 4, 4);
  ServerState s = Init(config, ModelVector{0.0, 0.0});
  for (int c = 0; c < 3; ++c) Send(s, config, c, {1.0, 0.0});
  Send(s, config, 3, {-3.0, 0.0});  // opposite direction: noise
  for (int c = 0; c < 3; ++c) Send(s, config, c, {2.0, 0.0});
  EXPECT_EQ(s.global(), (ModelVector{2.0, 0.0}));
  EXPECT_EQ(s.pending.count(0), 0u);
  EXPECT_FALSE(s.processed.at(0).back().accepted);
}

// Random schedules: each step a random client reports (sometimes a repeat).
class ServerPropertyTest : public ::testing::TestWithParam<int> {};

TEST_P(ServerPropertyTest, WindowTriggerAndLiveness) {
  std::mt19937_64 rng(GetParam());
  const int n = std::uniform_int_distribution<int>(3, 9)(rng);
  const int f = std::uniform_int_distribution<int>(0, (n - 1) / 2)(rng);
  const int window = std::uniform_int_distribution<int>(1, 5)(rng);
  const ServerConfig config = Config(f, window, n);
  std::normal_distribution<double> noise(0.0, 1.0);
  ServerState s = Init(config, ModelVector{0.0, 0.0, 0.0});
  ServerState twin = s;

  for (int step = 0; step < 200; ++step) {
    const int c = std::uniform_int_distribution<int>(0, n - 1)(rng);
    ModelVector w = s.global();
    for (size_t j = 0; j < w.size(); ++j) w[j] += noise(rng);
    const int64_t age_before = s.age;
    const size_t fresh_before =
        s.pending.count(s.age) ? s.pending.at(s.age).size() : 0;
    auto out = HandleUpdate(s, config, {c, 0, w}, step);
    ASSERT_TRUE(out.ok()) << out.status();
    ASSERT_TRUE(HandleUpdate(twin, config, {c, 0, w}, step).ok());

    if (out->kind == UpdateKind::kTrigger) {
      EXPECT_EQ(s.age, age_before + 1);
      EXPECT_EQ(fresh_before + 1, static_cast<size_t>(config.trigger()));
    } else {
      EXPECT_EQ(s.age, age_before);
    }
    const int64_t oldest = s.age - window + 1;
    for (const auto& [age, unused] : s.pending) EXPECT_GE(age, oldest);
    for (const auto& [age, unused] : s.processed) EXPECT_GE(age, oldest);
    for (const auto& [age, unused] : s.clip_bounds) EXPECT_GE(age, oldest);
    EXPECT_LE(s.global_history.size(), static_cast<size_t>(window));
    EXPECT_TRUE(s.global().IsFinite());
    // The sender either waits for the next trigger or holds G_age, and the
    // waiting clients are exactly the contributors to the current age.
    if (out->kind != UpdateKind::kDuplicate) {
      EXPECT_TRUE(s.idle_clients.count(c) || s.age_client_models[c] == s.age);
    }
    std::set<int> contributors;
    if (s.pending.count(s.age)) {
      for (const ClientUpdate& u : s.pending.at(s.age)) {
        contributors.insert(u.client_id);
      }
    }
    EXPECT_EQ(s.idle_clients, contributors);
    if (out->kind == UpdateKind::kLate || out->kind == UpdateKind::kStale) {
      ASSERT_EQ(out->sends.size(), 1u);
      EXPECT_EQ(out->sends[0].age, s.age);
    }
  }
  EXPECT_TRUE(s == twin);
}

INSTANTIATE_TEST_SUITE_P(Seeds, ServerPropertyTest, ::testing::Range(0, 40));

TEST(GoldenTraceTest, MatchesCommittedLog) {
  auto trace = golden::RunGoldenScript();
  ASSERT_TRUE(trace.ok()) << trace.status();
  std::ifstream in(std::string(CATALYST_TEST_DATA_DIR) + "/" +
                   golden::kGoldenTraceFile, std::ios::binary);
  ASSERT_TRUE(in.good());
  std::stringstream expected;
  expected << in.rdbuf();
  EXPECT_EQ(*trace, expected.str());
}

TEST(AsyncRobustServerTest, WrapsStateMachine) {
  auto server = AsyncRobustServer::Create(Config(0, 2, 2), ModelVector{0.0},
                                          "flame-async");
  ASSERT_TRUE(server.ok());
  EXPECT_EQ(server->name(), "flame-async");
  EXPECT_EQ(server->Start().sends.size(), 2u);
  ASSERT_TRUE(server->OnUpdate({0, 0, {1.0}}, 0).ok());
  EXPECT_EQ(server->PendingSizes(), (std::map<int64_t, size_t>{{0, 1}}));
  auto out = server->OnUpdate({1, 0, {1.0}}, 0);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->kind, UpdateKind::kTrigger);
  EXPECT_EQ(server->age(), 1);
  EXPECT_TRUE(server->PendingSizes().empty());
}

}  // namespace
}  // namespace catalyst
