// Copyright 2026 The softlayer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Drives the command-line tool end to end.

#include <cstdlib>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"
#include "softlayer/bundle.h"
#include "softlayer/image_io.h"
#include "test_support.h"

namespace softlayer {
namespace {

using nlohmann::json;
using testing::TempDir;

int RunCli(const std::string& args, const std::filesystem::path& log) {
  const std::string cmd = std::string(SOFTLAYER_CLI_PATH) + " " + args + " > " +
                          log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string Slurp(const std::filesystem::path& p) {
  const std::vector<char> bytes = testing::ReadBytes(p);
  return {bytes.begin(), bytes.end()};
}

class CliTest : public ::testing::Test {
 protected:
  TempDir dir_{"cli"};
  std::string image_ = (testing::DataDir() / "coffee.png").string();
  std::string disp_ = (testing::DataDir() / "coffee_disp.pfm").string();
  std::filesystem::path log_ = dir_ / "log.txt";
};

TEST_F(CliTest, ProcessRenderInspectMetrics) {
  const std::string bundle = (dir_ / "bundle").string();
  ASSERT_EQ(RunCli("process --image " + image_ + " --disparity " + disp_ + " -o " +
                    bundle + " --dump-intermediates " + (dir_ / "dbg").string(),
                log_),
            0)
      << Slurp(log_);
  const json summary = json::parse(Slurp(log_));
  EXPECT_TRUE(summary["inpaint_converged"].get<bool>());
  EXPECT_TRUE(std::filesystem::exists(dir_ / "dbg" / "inpaint_mask.png"));
  EXPECT_NO_THROW(LoadBundle(bundle));

  const std::string frames = (dir_ / "frames").string();
  ASSERT_EQ(RunCli("render --bundle " + bundle + " --frames 3 -o " + frames, log_), 0)
      << Slurp(log_);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "frames" / "frame_0002.png"));
  EXPECT_FALSE(std::filesystem::exists(dir_ / "frames" / "frame_0003.png"));
  const json timing = json::parse(Slurp(dir_ / "frames" / "timing.json"));
  EXPECT_EQ(timing["frame_count"], 3);

  ASSERT_EQ(RunCli("inspect --bundle " + bundle, log_), 0) << Slurp(log_);
  const json info = json::parse(Slurp(log_));
  EXPECT_EQ(info["version"], 1);
  EXPECT_GT(info["inpainted_pixels"].get<int>(), 0);

  ASSERT_EQ(RunCli("metrics --pred " + frames + " --gt " + frames + " -o " +
                    (dir_ / "m.json").string(),
                log_),
            0)
      << Slurp(log_);
  const json m = json::parse(Slurp(dir_ / "m.json"));
  EXPECT_DOUBLE_EQ(m["mean"]["psnr"].get<double>(), 99.0);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  std::ofstream(dir_ / "cfg.json")
      << json{{"image", image_},
              {"disparity", disp_},
              {"disocclusion", {{"neighborhood", 16}}}}
             .dump();
  ASSERT_EQ(RunCli("process --config " + (dir_ / "cfg.json").string() +
                    " --neighborhood 24 --print-config",
                log_),
            0);
  const json cfg = json::parse(Slurp(log_));
  EXPECT_EQ(cfg["disocclusion"]["neighborhood"], 24);
  EXPECT_EQ(cfg["image"], image_);

  std::ofstream(dir_ / "bad.json") << R"({"nonsense": true})";
  EXPECT_EQ(RunCli("process --config " + (dir_ / "bad.json").string(), log_), 1);
  EXPECT_NE(Slurp(log_).find("nonsense"), std::string::npos);
}

TEST_F(CliTest, MasksDataset) {
  const std::string out = (dir_ / "masks").string();
  ASSERT_EQ(RunCli("masks --image " + image_ + " --disparity " + disp_ +
                    " --count 5 --seed 100 -o " + out,
                log_),
            0)
      << Slurp(log_);
  std::ifstream index(dir_ / "masks" / "masks.jsonl");
  std::string line;
  int rows = 0;
  while (std::getline(index, line)) {
    const json j = json::parse(line);
    EXPECT_EQ(j["seed"], 100 + rows);
    const std::string kind = j["mask_kind"];
    EXPECT_TRUE(kind == "occlusion" || kind == "stroke" || kind == "stroke_fallback");
    const std::string id = j["id"];
    EXPECT_TRUE(std::filesystem::exists(dir_ / "masks" / (id + "_mask.png")));
    EXPECT_TRUE(std::filesystem::exists(dir_ / "masks" / (id + "_image.png")));
    EXPECT_TRUE(std::filesystem::exists(dir_ / "masks" / (id + "_disparity.pfm")));
    ++rows;
  }
  EXPECT_EQ(rows, 5);
}

TEST_F(CliTest, InpaintAndExport) {
  const std::string out = (dir_ / "inp").string();
  ASSERT_EQ(RunCli("inpaint --image " + image_ + " --disparity " + disp_ + " -o " + out,
                log_),
            0)
      << Slurp(log_);
  EXPECT_TRUE(std::filesystem::exists(dir_ / "inp" / "bg_rgb.png"));
  EXPECT_TRUE(std::filesystem::exists(dir_ / "inp" / "bg_disp.pfm"));

  const std::string bundle = (dir_ / "b").string();
  ASSERT_EQ(RunCli("process --image " + image_ + " --disparity " + disp_ + " -o " + bundle,
                log_),
            0);
  ASSERT_EQ(RunCli("export --bundle " + bundle + " -o " + (dir_ / "small").string() +
                    " --width 128",
                log_),
            0)
      << Slurp(log_);
  const LayerBundle small = LoadBundle(dir_ / "small");
  EXPECT_EQ(small.intrinsics.width, 128);
  EXPECT_EQ(small.fg_rgb.width(), 128);
}

TEST_F(CliTest, ErrorsExitNonZero) {
  EXPECT_EQ(RunCli("process --image /nope.png --disparity /nope.pfm", log_), 1);
  EXPECT_NE(Slurp(log_).find("error [io]"), std::string::npos);
  EXPECT_NE(RunCli("", log_), 0);
  EXPECT_EQ(RunCli("render --bundle " + (dir_ / "missing").string(), log_), 1);
}

}  // namespace
}  // namespace softlayer
