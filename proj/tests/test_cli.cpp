// Copyright 2026 The vrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "vrs/wav.hpp"

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(VRSRENDER_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("vrsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  std::string path(const std::string& name) const { return (dir / name).string(); }

  std::string write_scenario(const std::string& name, const std::string& extra = "") const {
    std::ofstream(dir / name) << "[room]\ndims = 6 5 3\nalpha = 0.3\n"
                                 "[source]\nposition = 1.5 1.5 1.5\n"
                                 "[receiver]\nposition = 4 3.5 1.6\n"
                              << extra;
    return path(name);
  }

  fs::path dir;
};

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run(""), 1);
  EXPECT_EQ(run("bogus"), 1);
  EXPECT_EQ(run("render --out x.wav"), 1);
  EXPECT_EQ(run("render --scenario /nonexistent.ini --out x.wav"), 1);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, BadScenarioExitsOne) {
  const auto s = write_scenario("bad.ini", "[render]\ncolour = red\n");
  EXPECT_EQ(run("render --scenario " + s + " --out " + path("o.wav")), 1);
  const auto ok = write_scenario("ok.ini");
  EXPECT_EQ(run("render --scenario " + ok + " --k 10 --out " + path("o.wav")), 1);
  EXPECT_EQ(run("analyze --scenario " + ok + " --duration -1 --out " + path("o.csv")), 1);
}

TEST_F(Cli, RuntimeFailureExitsTwo) {
  // The mean free path of this hall needs FDN delays longer than the 1 s buffer.
  std::ofstream(dir / "hall.ini") << "[room]\ndims = 900 900 900\nalpha = 0.01\n"
                                     "[source]\nposition = 450 450 450\n"
                                     "[receiver]\nposition = 451 450 450\n";
  EXPECT_EQ(run("render --scenario " + path("hall.ini") + " --duration 0.05 --out " + path("o.wav")), 2);
}

TEST_F(Cli, RenderWritesWavAndSidecar) {
  const auto s = write_scenario("room.ini", "[render]\nk = 6\nduration_s = 0.4\n");
  ASSERT_EQ(run("render --scenario " + s + " --out " + path("m.wav")), 0);
  const vrs::AudioData a = vrs::read_wav(path("m.wav"));
  EXPECT_EQ(a.channels.size(), 86u);
  EXPECT_EQ(a.frames(), static_cast<std::size_t>(0.4 * 44100));
  const std::string meta = slurp(path("m.wav.json"));
  EXPECT_NE(meta.find("\"k\": 6"), std::string::npos);
  EXPECT_NE(meta.find("\"direct_sample\""), std::string::npos);
  ASSERT_EQ(run("render --scenario " + s + " --out " + path("m2.wav")), 0);
  EXPECT_EQ(slurp(path("m.wav")), slurp(path("m2.wav")));
  ASSERT_EQ(run("render --scenario " + s + " --seed 9 --out " + path("m3.wav")), 0);
  EXPECT_NE(slurp(path("m.wav")), slurp(path("m3.wav")));
}

TEST_F(Cli, AnalyzeWritesCsv) {
  // One strongly absorbing wall so the isotropic reference differs.
  const auto s = write_scenario("room.ini", "[render]\nk = 12\n");
  {
    std::string text = slurp(s);
    text.replace(text.find("alpha = 0.3"), 11, "alpha = 0.3\nalpha_neg_x = 0.95");
    std::ofstream(s) << text;
  }
  ASSERT_EQ(run("analyze --scenario " + s + " --duration 1 --out " + path("a.csv")), 0);
  const std::string csv = slurp(path("a.csv"));
  EXPECT_EQ(csv.rfind("freq_hz,ic,ild_db\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 258);
  ASSERT_EQ(run("analyze --scenario " + s + " --duration 1 --isotropic --out " + path("b.csv")), 0);
  EXPECT_NE(csv, slurp(path("b.csv")));
}

TEST_F(Cli, StimulusAndConvolve) {
  ASSERT_EQ(run("stimulus --out " + path("pulse.wav")), 0);
  const vrs::AudioData p = vrs::read_wav(path("pulse.wav"));
  ASSERT_EQ(p.channels.size(), 1u);
  EXPECT_EQ(p.channels[0][0], 1.0);

  const auto s = write_scenario("room.ini", "[render]\nk = 6\nduration_s = 0.3\n");
  ASSERT_EQ(run("render --scenario " + s + " --out " + path("m.wav")), 0);
  vrs::write_wav(path("delta.wav"), {44100, {{1.0}}});
  ASSERT_EQ(run("convolve --stimulus " + path("delta.wav") + " --mrir " + path("m.wav") + " --out " +
                path("c.wav")),
            0);
  EXPECT_EQ(vrs::read_wav(path("c.wav")).channels, vrs::read_wav(path("m.wav")).channels);

  vrs::write_wav(path("zero.wav"), {44100, {vrs::Signal(100, 0.0)}});
  ASSERT_EQ(run("convolve --stimulus " + path("zero.wav") + " --mrir " + path("m.wav") + " --out " +
                path("z.wav")),
            0);
  for (const auto& ch : vrs::read_wav(path("z.wav")).channels) {
    for (double v : ch) ASSERT_EQ(v, 0.0);
  }

  vrs::write_wav(path("d48.wav"), {48000, {{1.0}}});
  EXPECT_EQ(run("convolve --stimulus " + path("d48.wav") + " --mrir " + path("m.wav") + " --out " +
                path("x.wav")),
            1);
}

TEST_F(Cli, PositionsWriteScenarios) {
  ASSERT_EQ(run("positions --scenarios " + path("scn")), 0);
  for (char c : {'A', 'B', 'C', 'D'}) {
    const auto p = dir / "scn" / (std::string("corridor_") + c + ".ini");
    EXPECT_TRUE(fs::exists(p)) << p;
  }
}

}  // namespace
