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

#include "vrs/absorption.hpp"
#include "vrs/band_filter.hpp"
#include "vrs/binaural.hpp"
#include "vrs/convolve.hpp"
#include "vrs/errors.hpp"
#include "vrs/fdn.hpp"
#include "vrs/noise.hpp"
#include "vrs/scenario.hpp"
#include "vrs/spatial.hpp"
#include "vrs/wav.hpp"

namespace vrs {
namespace {

constexpr double kFs = 44100.0;

Signal noise(std::size_t n, std::uint64_t seed, std::uint64_t stream = 0) {
  Signal s(n);
  GaussianNoise(seed, stream).fill(s);
  return s;
}

double response_db(const Signal& h, double hz) { return 20.0 * std::log10(fir_magnitude(h, hz, kFs)); }

std::size_t peak_index(const Signal& h) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < h.size(); ++i) {
    if (std::abs(h[i]) > std::abs(h[best])) best = i;
  }
  return best;
}

TEST(Sphere, FrontalEarsMatch) {
  for (double el : {-45.0, 0.0, 30.0, 90.0}) {
    const auto s = sphere_hrir(direction_from_degrees(0.0, el), kFs);
    EXPECT_EQ(s.left, s.right);
  }
  const auto back = sphere_hrir(direction_from_degrees(180.0, 0.0), kFs);
  for (std::size_t i = 0; i < back.left.size(); ++i) EXPECT_NEAR(back.left[i], back.right[i], 1e-9);
}

TEST(Sphere, MirrorSwapsEars) {
  for (double az : {10.0, 60.0, 135.0}) {
    const Vec3 d = direction_from_degrees(az, 20.0);
    const auto a = sphere_hrir(d, kFs), b = sphere_hrir(Vec3{d.x, -d.y, d.z}, kFs);
    const auto c = sphere_hrir(-d, kFs);
    for (std::size_t i = 0; i < a.left.size(); ++i) {
      EXPECT_NEAR(a.left[i], b.right[i], 1e-12);
      EXPECT_NEAR(a.right[i], b.left[i], 1e-12);
      EXPECT_NEAR(a.left[i], c.right[i], 1e-12);
    }
  }
}

TEST(Sphere, LateralTimeAndLevelDifferences) {
  const Vec3 left{0, 1, 0};
  // Woodworth: (a / c) (pi/2 + 1) between the ears at 90 deg.
  const double itd = woodworth_delay(left, {0, -1, 0}) - woodworth_delay(left, {0, 1, 0});
  EXPECT_NEAR(itd, 0.0875 / 343.0 * (std::acos(-1.0) / 2.0 + 1.0), 1e-15);
  EXPECT_NEAR(itd * 1e3, 0.656, 0.01);
  const auto s = sphere_hrir(left, kFs);
  const double measured = (static_cast<double>(peak_index(s.right)) - static_cast<double>(peak_index(s.left))) / kFs;
  EXPECT_NEAR(measured, itd, 1.5 / kFs);
  for (double hz : {3000.0, 6000.0, 12000.0}) EXPECT_GE(response_db(s.left, hz) - response_db(s.right, hz), 6.0) << hz;
  EXPECT_LT(std::abs(response_db(s.left, 100.0) - response_db(s.right, 100.0)), 1.0);
}

TEST(HrirFiles, LoadAndLookup) {
  const auto dir = std::filesystem::temp_directory_path() / "vrsim_hrirs";
  std::filesystem::create_directories(dir);
  const auto front = sphere_hrir(Vec3{1, 0, 0}, 48000), side = sphere_hrir(Vec3{0, 1, 0}, 48000);
  write_wav(dir / "f_l.wav", {48000, {front.left}});
  write_wav(dir / "f_r.wav", {48000, {front.right}});
  write_wav(dir / "s_l.wav", {48000, {side.left}});
  write_wav(dir / "s_r.wav", {48000, {side.right}});
  write_wav(dir / "bad_rate.wav", {44100, {side.right}});
  write_wav(dir / "stereo.wav", {48000, {side.left, side.right}});
  auto manifest = [&](const std::string& text) { std::ofstream(dir / "manifest.txt") << text; };

  manifest("fs_hz 48000\n0 0 f_l.wav f_r.wav\n90 0 s_l.wav s_r.wav # left\n");
  const HrirSet set = load_hrir_set(dir);
  ASSERT_EQ(set.entries.size(), 2u);
  EXPECT_EQ(set.fs, 48000);
  EXPECT_EQ(set.nearest({0, 1, 0}), 1u);
  EXPECT_EQ(set.nearest({1, 0.2, 0}), 0u);
  for (std::size_t i = 0; i < set.entries.size(); ++i) EXPECT_EQ(set.nearest(set.entries[i].direction), i);
  EXPECT_EQ(set.entries[1].left.size(), side.left.size());
  EXPECT_NEAR(set.entries[1].left[peak_index(side.left)], side.left[peak_index(side.left)], 1e-6);

  manifest("fs_hz 48000\n0 0 f_l.wav bad_rate.wav\n");
  EXPECT_THROW(load_hrir_set(dir), FormatError);
  manifest("fs_hz 48000\n0 0 f_l.wav stereo.wav\n");
  EXPECT_THROW(load_hrir_set(dir), FormatError);
  manifest("fs_hz 48000\n0 0 f_l.wav missing.wav\n");
  EXPECT_THROW(load_hrir_set(dir), FormatError);
  manifest("0 0 f_l.wav f_r.wav\n");
  EXPECT_THROW(load_hrir_set(dir), FormatError);
  std::filesystem::remove_all(dir);
  EXPECT_THROW(load_hrir_set(dir), FormatError);
  EXPECT_THROW(HrirSet{}.nearest({1, 0, 0}), InvalidArgument);
}

TEST(Binauralize, SilenceAndSingleSpeaker) {
  const auto layout = builtin_layout_86();
  const HrirSet set = sphere_hrir_set(layout.directions, kFs);
  const std::size_t hl = set.entries[0].left.size();
  MultiSignal speakers(86, Signal(1000, 0.0));
  auto out = binauralize(speakers, layout, set);
  EXPECT_EQ(out.left.size(), 1000 + hl - 1);
  for (double v : out.left) EXPECT_EQ(v, 0.0);

  speakers[0] = noise(1000, 3);  // speaker 0 is straight ahead
  out = binauralize(speakers, layout, set);
  EXPECT_EQ(out.left, out.right);
  EXPECT_THROW(binauralize(MultiSignal(85, Signal(10)), layout, set), InvalidArgument);
}

TEST(Binauralize, MatchesBruteForceSum) {
  const auto layout = make_layout("ring", 1.0, direction_set(6).directions);
  const HrirSet set = sphere_hrir_set(layout.directions, kFs);
  MultiSignal speakers(6);
  for (std::size_t c = 0; c < 6; ++c) speakers[c] = noise(700, 10, c);
  const auto out = binauralize(speakers, layout, set);
  Signal l(700 + set.entries[0].left.size() - 1, 0.0), r = l;
  for (std::size_t c = 0; c < 6; ++c) {
    const auto& e = set.entries[set.nearest(layout.directions[c])];
    for (std::size_t i = 0; i < 700; ++i) {
      for (std::size_t j = 0; j < e.left.size(); ++j) {
        l[i + j] += speakers[c][i] * e.left[j];
        r[i + j] += speakers[c][i] * e.right[j];
      }
    }
  }
  for (std::size_t i = 0; i < l.size(); ++i) {
    EXPECT_NEAR(out.left[i], l[i], 1e-10);
    EXPECT_NEAR(out.right[i], r[i], 1e-10);
  }
}

TEST(Welch, IdenticalSignalsAreFullyCoherent) {
  const Signal x = noise(44100, 1);
  const Curve ic = coherence(x, x, kFs);
  EXPECT_EQ(ic.freqs.size(), kWelchWindow / 2 + 1);
  for (std::size_t b = 1; b + 1 < ic.values.size(); ++b) EXPECT_NEAR(ic.values[b], 1.0, 1e-9);
  const Curve l = ild(x, x, kFs);
  for (double v : l.values) EXPECT_NEAR(v, 0.0, 1e-9);
}

TEST(Welch, PureDelayFirstZeroCrossing) {
  for (std::size_t d : {8u, 20u, 40u}) {
    const Signal x = noise(44100 * 4 + d, 2);
    const Signal l(x.begin() + static_cast<std::ptrdiff_t>(d), x.end());
    const Signal r(x.begin(), x.end() - static_cast<std::ptrdiff_t>(d));
    const Curve ic = coherence(l, r, kFs);
    double cross = 0.0;
    for (std::size_t b = 1; b < ic.values.size(); ++b) {
      if (ic.values[b] <= 0.0) {
        cross = ic.freqs[b];
        break;
      }
    }
    const double want = kFs / (4.0 * static_cast<double>(d));
    EXPECT_NEAR(cross, want, kFs / kWelchWindow) << d;
  }
}

TEST(Welch, IndependentNoiseIsIncoherent) {
  const Signal a = noise(60 * 44100, 3, 0), b = noise(60 * 44100, 3, 1);
  const Curve ic = coherence(a, b, kFs);
  for (std::size_t i = 0; i < ic.values.size(); ++i) {
    if (ic.freqs[i] < 100.0) continue;
    EXPECT_LT(std::abs(ic.values[i]), 0.05) << ic.freqs[i];
  }
}

TEST(Welch, LevelDifferences) {
  const Signal a = noise(44100, 4, 0), b = noise(44100, 4, 1);
  Signal a3 = a, b3 = b, a2 = a;
  for (auto& v : a3) v *= 3.0;
  for (auto& v : b3) v *= 3.0;
  for (auto& v : a2) v *= 2.0;
  const Curve base = ild(a, b, kFs), scaled = ild(a3, b3, kFs);
  const Curve ic_base = coherence(a, b, kFs), ic_scaled = coherence(a3, b3, kFs);
  for (std::size_t i = 0; i < base.values.size(); ++i) {
    EXPECT_NEAR(scaled.values[i], base.values[i], 1e-9);
    EXPECT_NEAR(ic_scaled.values[i], ic_base.values[i], 1e-12);
    EXPECT_LE(std::abs(ic_base.values[i]), 1.0 + 1e-12);
  }
  for (double v : ild(a2, a, kFs).values) EXPECT_NEAR(v, 20.0 * std::log10(2.0), 1e-9);
  for (double v : ild(a2, a, kFs).values) EXPECT_NEAR(v, 6.02, 0.01);
}

TEST(Welch, Errors) {
  EXPECT_THROW(welch_spectra(Signal(600), Signal(601), kFs), InvalidArgument);
  EXPECT_THROW(welch_spectra(Signal(100), Signal(100), kFs), InvalidArgument);
  EXPECT_THROW(coherence(Signal(1000, 0.0), noise(1000, 1), kFs), NumericError);
  EXPECT_THROW(ild(noise(1000, 1), Signal(1000, 0.0), kFs), NumericError);
}

TEST(Smoothing, OctaveMeanAndDivergence) {
  Curve c;
  for (int i = 0; i <= 256; ++i) {
    c.freqs.push_back(i * 100.0);
    c.values.push_back(i % 2 == 0 ? 1.0 : 0.0);
  }
  const Curve s = octave_smooth(c);
  EXPECT_EQ(s.values[0], 1.0);
  // Bin 100 (10 kHz) averages bins 71..141 inclusive: 35 even of 71.
  EXPECT_NEAR(s.values[100], 35.0 / 71.0, 1e-12);

  Curve a = c, b = c;
  std::fill(a.values.begin(), a.values.end(), 0.5);
  std::fill(b.values.begin(), b.values.end(), 0.5);
  EXPECT_TRUE(std::isinf(divergence_frequency(a, b)));
  for (std::size_t i = 60; i < b.values.size(); ++i) b.values[i] = 0.0;
  const double f = divergence_frequency(a, b);
  EXPECT_GT(f, 100.0);
  EXPECT_LE(f, 6000.0);
  EXPECT_NEAR(max_smoothed_difference(a, b, 100.0, 25600.0), 0.5, 1e-12);
  b.freqs[3] += 1.0;
  EXPECT_THROW(divergence_frequency(a, b), InvalidArgument);
}

class DiffuseField : public ::testing::Test {
 protected:
  ShoeboxRoom room = corridor_room();
  LoudspeakerLayout layout = builtin_layout_86();
  HrirSet hrirs = sphere_hrir_set(builtin_layout_86().directions, kFs);
  std::array<CorridorPosition, 4> positions = corridor_positions();

  DiffuseFieldRequest request(char label, std::size_t k, double seconds) const {
    DiffuseFieldRequest r;
    r.room = &room;
    r.receiver = positions[static_cast<std::size_t>(label - 'A')].receiver;
    r.k = k;
    r.layout = &layout;
    r.hrirs = &hrirs;
    r.duration_seconds = seconds;
    return r;
  }
};

TEST_F(DiffuseField, MatchesExplicitOracle) {
  const auto req = request('A', 6, 0.5);
  const StereoSignal fast = diffuse_field_signals(req);
  const std::size_t frames = static_cast<std::size_t>(0.5 * kFs);
  ASSERT_EQ(fast.left.size(), frames);
  const auto set = direction_set(6);
  const auto sampled = sample_absorption(room, req.receiver.position, set);
  const VbapPanner panner(layout);
  MultiSignal speakers(layout.size(), Signal(frames, 0.0));
  for (std::size_t k = 0; k < 6; ++k) {
    const Signal x = noise(frames, req.seed, k);
    const Signal y = fir_filter(x, design_band_filter(reflection_gains(sampled[k]), kFs));
    pan_add(panner.gains(to_listener_frame(set[k], req.receiver.yaw_deg)), y, 0, speakers);
  }
  const StereoSignal slow = binauralize(speakers, layout, hrirs);
  for (std::size_t i = 0; i < frames; ++i) {
    ASSERT_NEAR(fast.left[i], slow.left[i], 1e-9) << i;
    ASSERT_NEAR(fast.right[i], slow.right[i], 1e-9) << i;
  }
}

TEST_F(DiffuseField, SixVrsIgnoresCorridorPosition) {
  const auto a = diffuse_field_eval(request('A', 6, 2.0));
  const auto d = diffuse_field_eval(request('D', 6, 2.0));
  EXPECT_EQ(curves_to_csv(a), curves_to_csv(d));
}

TEST_F(DiffuseField, HomogeneousRoomIndependentOfPosition) {
  const ShoeboxRoom uniform = ShoeboxRoom::uniform({10, 7, 4}, 0.3);
  auto r1 = request('A', 24, 1.0), r2 = r1;
  r1.room = &uniform;
  r2.room = &uniform;
  r1.receiver = {{2, 2, 1.5}, 30.0};
  r2.receiver = {{8, 5, 2.5}, 30.0};
  const auto a = diffuse_field_signals(r1), b = diffuse_field_signals(r2);
  for (std::size_t i = 0; i < a.left.size(); ++i) ASSERT_NEAR(a.left[i], b.left[i], 1e-12);
}

TEST_F(DiffuseField, IsotropicFieldIsBalancedAtLowFrequencies) {
  auto req = request('A', 96, 20.0);
  req.isotropic = true;
  const auto res = diffuse_field_eval(req);
  const Curve s = octave_smooth(res.ild);
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.freqs[i] < 100.0 || s.freqs[i] > 1000.0) continue;
    EXPECT_LT(std::abs(s.values[i]), 2.0) << s.freqs[i];
  }
}

TEST_F(DiffuseField, DeterministicAndSeeded) {
  const auto a = diffuse_field_signals(request('B', 12, 0.3));
  const auto b = diffuse_field_signals(request('B', 12, 0.3));
  EXPECT_EQ(a.left, b.left);
  EXPECT_EQ(a.right, b.right);
  auto other = request('B', 12, 0.3);
  other.seed = 2;
  EXPECT_NE(diffuse_field_signals(other).left, a.left);
  auto bad = request('B', 12, 0.3);
  bad.hrirs = nullptr;
  EXPECT_THROW(diffuse_field_signals(bad), InvalidArgument);
}

TEST(Csv, Format) {
  DiffuseFieldResult r{{{0.0, 86.1328125}, {1.0, 0.5}}, {{0.0, 86.1328125}, {0.0, -1.25}}};
  EXPECT_EQ(curves_to_csv(r), "freq_hz,ic,ild_db\n0,1,0\n86.1328125,0.5,-1.25\n");
}

}  // namespace
}  // namespace vrs
