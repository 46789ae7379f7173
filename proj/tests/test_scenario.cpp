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

#include <cmath>
#include <filesystem>
#include <fstream>

#include "vrs/errors.hpp"
#include "vrs/fft.hpp"
#include "vrs/scenario.hpp"
#include "vrs/stimulus.hpp"

namespace vrs {
namespace {

const char* kCorridorText = R"(# corridor, position A
[room]
dims = 24 8 6
alpha = 0.01 0.02667 0.04333 0.06 0.07667 0.09333 0.11
alpha_neg_x = 0.99   ; absorbing end wall

[source]
position = 0.2 1.335 1.8

[receiver]
position = 0.2 6.665 1.8
yaw_deg = -90

[render]
k = 24
seed = 7
duration_s = 1.5

[analysis]
duration_s = 10
isotropic = true
)";

std::string error_of(const std::string& text) {
  try {
    parse_scenario_text(text, "s.ini");
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

TEST(Scenario, ParsesCorridor) {
  const Scenario sc = parse_scenario_text(kCorridorText, "s.ini");
  EXPECT_EQ(sc.room.dims(), (Vec3{24, 8, 6}));
  EXPECT_EQ(sc.room.absorption(Wall::NegX)[3], 0.99);
  EXPECT_EQ(sc.room.absorption(Wall::PosX)[0], 0.01);
  EXPECT_EQ(sc.room.absorption(Wall::PosZ)[6], 0.11);
  EXPECT_EQ(sc.source, (Vec3{0.2, 1.335, 1.8}));
  EXPECT_EQ(sc.receiver.yaw_deg, -90.0);
  EXPECT_EQ(sc.k, 24u);
  EXPECT_EQ(sc.seed, 7u);
  EXPECT_EQ(sc.fs, 44100.0);
  EXPECT_EQ(sc.layout, "builtin-86");
  EXPECT_EQ(sc.hrir, "sphere");
  ASSERT_TRUE(sc.render_duration_s.has_value());
  EXPECT_EQ(*sc.render_duration_s, 1.5);
  EXPECT_EQ(sc.analysis_duration_s, 10.0);
  EXPECT_TRUE(sc.isotropic);
}

TEST(Scenario, ErrorsNameTheLine) {
  std::string t = kCorridorText;
  EXPECT_NE(error_of(t + "colour = red\n").find("s.ini:22:"), std::string::npos) << error_of(t + "colour = red\n");
  EXPECT_NE(error_of(t + "[extras]\n").find("s.ini:22:"), std::string::npos);
  EXPECT_NE(error_of(t + "garbage line\n").find("s.ini:22:"), std::string::npos);
  EXPECT_THROW(parse_scenario_text(t + "colour = red\n"), FormatError);

  std::string bad = t;
  bad.replace(bad.find("k = 24"), 6, "k = 10");
  EXPECT_THROW(parse_scenario_text(bad), InvalidArgument);
  EXPECT_NE(error_of(bad).find(":15:"), std::string::npos) << error_of(bad);

  bad = t;
  bad.replace(bad.find("0.2 6.665 1.8"), 13, "0.2 8.5 1.8");
  EXPECT_THROW(parse_scenario_text(bad), InvalidArgument);
  bad = t;
  bad.replace(bad.find("dims = 24 8 6"), 13, "dims = 24 8");
  EXPECT_THROW(parse_scenario_text(bad), FormatError);
  bad = t;
  bad.replace(bad.find("alpha_neg_x = 0.99"), 18, "alpha_neg_x = 1.5");
  EXPECT_THROW(parse_scenario_text(bad), InvalidArgument);
  EXPECT_THROW(parse_scenario_text("[room]\ndims = 1 1 1\n"), FormatError);
  EXPECT_THROW(parse_scenario("/nonexistent/scenario.ini"), FormatError);
}

TEST(Scenario, FormatRoundTrips) {
  for (char label : {'A', 'C'}) {
    Scenario sc = corridor_scenario(label, 12, 99);
    sc.render_duration_s = 2.25;
    sc.isotropic = label == 'C';
    const std::string text = format_scenario(sc);
    const Scenario back = parse_scenario_text(text);
    EXPECT_EQ(back.room.dims(), sc.room.dims());
    EXPECT_EQ(back.room.absorption(), sc.room.absorption());
    EXPECT_EQ(back.source, sc.source);
    EXPECT_EQ(back.receiver.position, sc.receiver.position);
    EXPECT_EQ(back.receiver.yaw_deg, sc.receiver.yaw_deg);
    EXPECT_EQ(back.k, 12u);
    EXPECT_EQ(back.seed, 99u);
    EXPECT_EQ(back.render_duration_s, sc.render_duration_s);
    EXPECT_EQ(back.isotropic, sc.isotropic);
    EXPECT_EQ(format_scenario(back), text);
  }
}

TEST(Scenario, RelativePathsResolveAgainstFile) {
  const auto dir = std::filesystem::temp_directory_path() / "vrsim_scn";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "s.ini") << kCorridorText << "[render]\n";
  EXPECT_THROW(parse_scenario(dir / "s.ini"), FormatError);  // repeated section
  std::string t = kCorridorText;
  t.replace(t.find("seed = 7"), 8, "layout = rig.txt");
  std::ofstream(dir / "s.ini") << t;
  EXPECT_EQ(parse_scenario(dir / "s.ini").layout, (dir / "rig.txt").string());
  std::filesystem::remove_all(dir);
}

TEST(Corridor, Positions) {
  const auto room = corridor_room();
  const auto positions = corridor_positions();
  double prev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& p = positions[i];
    EXPECT_EQ(p.label, 'A' + static_cast<int>(i));
    EXPECT_NEAR(norm(p.receiver.position - p.source), 5.33, 1e-12);
    EXPECT_EQ(p.source.z, 1.8);
    EXPECT_EQ(p.receiver.position.z, 1.8);
    EXPECT_EQ(p.source.x, p.wall_distance);
    EXPECT_NEAR(p.source.y + p.receiver.position.y, 8.0, 1e-12);
    EXPECT_NEAR(wall_fov(room, Wall::NegX, p.receiver.position), kCorridorFovDeg[i], 1e-6);
    EXPECT_GT(p.wall_distance, prev);
    prev = p.wall_distance;
    // Facing the source: it appears straight ahead in the listener frame.
    const Vec3 ahead = to_listener_frame(normalized(p.source - p.receiver.position), p.receiver.yaw_deg);
    EXPECT_NEAR(norm(ahead - Vec3{1, 0, 0}), 0.0, 1e-12);
  }
  EXPECT_LT(positions[0].wall_distance, 0.5);
  EXPECT_GT(positions[3].wall_distance, 10.0);
  EXPECT_THROW(corridor_scenario('E'), InvalidArgument);
  EXPECT_THROW(corridor_scenario('A', 7), InvalidArgument);
}

TEST(PinkPulse, EnvelopeReachesMinus60AtDecayTime) {
  const double fs = 44100.0;
  const Signal p = pink_pulse(fs);
  EXPECT_EQ(p[0], 1.0);
  for (double v : p) EXPECT_LE(std::abs(v), 1.0);
  EXPECT_EQ(p.size(), 2 * static_cast<std::size_t>(std::llround(0.036 * fs)) + 1);
  std::size_t cross = 0;
  while (cross < p.size() && std::abs(p[cross]) > 1e-3) ++cross;
  EXPECT_NEAR(static_cast<double>(cross) / fs, 0.036, 0.0036);
  EXPECT_THROW(pink_pulse(0.0), InvalidArgument);
}

TEST(PinkPulse, SpectrumFallsThreeDbPerOctave) {
  const double fs = 44100.0;
  const Signal p = pink_pulse(fs);
  const std::size_t n = 1 << 16;
  RealFft fft(n);
  std::vector<cplx> spec(fft.bins());
  fft.forward(p, spec);
  // Least-squares slope of 10 log10 |X|^2 against log2 f.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
  for (std::size_t k = 1; k < spec.size(); ++k) {
    const double f = static_cast<double>(k) * fs / n;
    if (f < 100.0 || f > 10000.0) continue;
    const double x = std::log2(f), y = 10.0 * std::log10(std::norm(spec[k]));
    sx += x, sy += y, sxx += x * x, sxy += x * y, ++count;
  }
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  EXPECT_NEAR(slope, -3.0, 1.0);
}

}  // namespace
}  // namespace vrs
