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

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "catalyst/cli/commands.h"
#include "catalyst/cli/config_file.h"
#include "catalyst/cli/mnist_fetch.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "nlohmann/json.hpp"

namespace catalyst {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

struct CliResult {
  int exit_code = -1;
  std::string output;
};

CliResult RunCli(const std::string& args, const std::string& env = "") {
  const std::string command =
      env + " " + std::string(CATALYST_CLI_PATH) + " " + args + " 2>&1";
  CliResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.output.append(buf.data(), n);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ("cli_" + std::string(::testing::UnitTest::GetInstance()
                                     ->current_test_info()
                                     ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  std::string WriteConfig(const std::string& text) {
    const fs::path path = dir_ / "config.json";
    std::ofstream(path) << text;
    return path.string();
  }

  fs::path dir_;
};

constexpr char kSmallConfig[] = R"({
  "server": "catalyst-alg3",
  "num_clients": 6,
  "duration": 500,
  "eval_period": 100,
  "dataset": {"num_classes": 3, "dim": 6, "num_examples": 300,
              "partition": {"mode": "iid"}},
  "server_params": {"f": 1},
  "attack": {"kind": "random_perturbation", "num_byzantine": 1}
})";

TEST(ConfigFileTest, ParsesAndRoundTrips) {
  auto config = ParseRunConfigText(kSmallConfig);
  ASSERT_TRUE(config.ok()) << config.status();
  EXPECT_EQ(config->num_clients, 6);
  EXPECT_EQ(config->server_params.f, 1);
  EXPECT_THAT(config->attack.byzantine_ids, ::testing::ElementsAre(0));
  EXPECT_EQ(config->server_params.late_correction, LateCorrection::kSubtract);
  auto again = ParseRunConfig(RunConfigToJson(*config));
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(RunConfigToJson(*again).dump(), RunConfigToJson(*config).dump());
}

TEST(ConfigFileTest, UnknownKeyNamesTheField) {
  auto config = ParseRunConfigText(R"({"dataset": {"num_clases": 3}})");
  EXPECT_EQ(config.status().code(), absl::StatusCode::kInvalidArgument);
  EXPECT_THAT(std::string(config.status().message()), HasSubstr("num_clases"));
}

TEST(ConfigFileTest, BadValues) {
  EXPECT_FALSE(ParseRunConfigText(R"({"server": "fedprox"})").ok());
  EXPECT_FALSE(ParseRunConfigText(R"({"num_clients": "ten"})").ok());
  EXPECT_FALSE(ParseRunConfigText("{").ok());
  EXPECT_FALSE(
      ParseRunConfigText(R"({"server_params": {"late_correction": "add"}})")
          .ok());
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCodeFor(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCodeFor(absl::InvalidArgumentError("x")), 2);
  EXPECT_EQ(ExitCodeFor(absl::DataLossError("x")), 1);
}

TEST_F(CliTest, TooManyByzantineIsAConfigError) {
  const std::string path = WriteConfig(
      R"({"num_clients": 4, "server_params": {"f": 2}})");
  const CliResult r = RunCli("run --config " + path + " --out " +
                             (dir_ / "out").string());
  EXPECT_EQ(r.exit_code, 2) << r.output;
  EXPECT_THAT(r.output, HasSubstr("2f+1"));
}

TEST_F(CliTest, UnknownKeyExitsTwo) {
  const std::string path = WriteConfig(R"({"bogus": 1})");
  const CliResult r = RunCli("run --config " + path + " --out " +
                             (dir_ / "out").string());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_THAT(r.output, HasSubstr("bogus"));
}

TEST_F(CliTest, RunWritesOutputsReproducibly) {
  const std::string path = WriteConfig(kSmallConfig);
  const fs::path a = dir_ / "a", b = dir_ / "b";
  ASSERT_EQ(RunCli("run --config " + path + " --out " + a.string()).exit_code, 0);
  ASSERT_EQ(RunCli("run --config " + path + " --out " + b.string()).exit_code, 0);
  for (const char* name :
       {"metrics.csv", "metrics.jsonl", "events.jsonl", "summary.json"}) {
    EXPECT_TRUE(fs::exists(a / name)) << name;
  }
  const std::string csv = ReadFile(a / "metrics.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kMetricsCsvHeader);
  EXPECT_EQ(csv, ReadFile(b / "metrics.csv"));
  EXPECT_EQ(ReadFile(a / "events.jsonl"), ReadFile(b / "events.jsonl"));

  const auto summary = nlohmann::json::parse(ReadFile(a / "summary.json"));
  EXPECT_TRUE(summary.is_object());
  EXPECT_NE(summary.dump().find("catalyst-alg3"), std::string::npos);
}

TEST_F(CliTest, SweepWritesEveryRunAndASummary) {
  const std::string path = WriteConfig(kSmallConfig);
  const fs::path out = dir_ / "sweep";
  const CliResult r = RunCli("sweep --config " + path +
                             " --axis num_clients --points 5,6,8 --repeats 2"
                             " --out " + out.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  int runs = 0;
  for (const auto& entry : fs::recursive_directory_iterator(out)) {
    if (entry.path().filename() == "metrics.csv") ++runs;
  }
  EXPECT_EQ(runs, 6);
  const std::string summary = ReadFile(out / "sweep_summary.csv");
  EXPECT_EQ(std::count(summary.begin(), summary.end(), '\n'), 4);  // + header
}

TEST_F(CliTest, SweepRejectsBadPoints) {
  const std::string path = WriteConfig(kSmallConfig);
  const CliResult r = RunCli("sweep --config " + path +
                             " --axis byz_fraction --points 0.1,x --out " +
                             (dir_ / "s").string());
  EXPECT_EQ(r.exit_code, 2);
}

TEST(MnistFetchTest, Sha256) {
  const std::string abc = "abc";
  EXPECT_EQ(Sha256Hex({reinterpret_cast<const uint8_t*>(abc.data()), 3}),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(MnistFiles().size(), 4u);
}

TEST(MnistFetchTest, GunzipRejectsGarbage) {
  const std::vector<uint8_t> junk{1, 2, 3, 4};
  EXPECT_FALSE(Gunzip(junk).ok());
}

TEST_F(CliTest, OfflineFetchWithoutFilesFails) {
  const CliResult r = RunCli("fetch-mnist --out " + (dir_ / "m").string(),
                             "CATALYST_OFFLINE=1");
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

class MnistFilesTest : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    const fs::path source = CATALYST_MNIST_DIR;
    for (const MnistFile& f : MnistFiles()) {
      if (!fs::exists(source / f.name)) {
        GTEST_SKIP() << "MNIST not present in " << source;
      }
      fs::copy_file(source / f.name, dir_ / f.name);
    }
  }
};

TEST_F(MnistFilesTest, PresentFilesVerifyOffline) {
  const CliResult r =
      RunCli("fetch-mnist --out " + dir_.string(), "CATALYST_OFFLINE=1");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  EXPECT_THAT(r.output, HasSubstr("present"));
}

TEST_F(MnistFilesTest, CorruptedMagicNamesTheFile) {
  {
    std::fstream f(dir_ / "train-labels-idx1-ubyte",
                   std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(3);
    f.put('\x7f');
  }
  const CliResult r =
      RunCli("fetch-mnist --out " + dir_.string(), "CATALYST_OFFLINE=1");
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_THAT(r.output, HasSubstr("train-labels-idx1-ubyte"));
}

}  // namespace
}  // namespace catalyst
