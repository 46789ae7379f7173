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


#pragma once

// Binaural rendering and interaural analysis.
//
// Loudspeaker feeds are turned into ear signals by convolving each channel
// with the HRIR pair measured nearest to that speaker's direction. Ear signals
// are compared through Welch cross-spectra (512-sample Hann windows, 75 %
// overlap): interaural coherence IC(f) = Re G_lr / sqrt(G_ll G_rr) and level
// difference ILD(f) = 10 log10 G_ll / G_rr.

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vrs/convolve.hpp"
#include "vrs/fft.hpp"
#include "vrs/geometry.hpp"
#include "vrs/spatial.hpp"

namespace vrs {

struct HrirEntry {
  Vec3 direction;  // unit, listener frame
  Signal left;
  Signal right;
};

struct HrirSet {
  double fs = 0.0;
  std::string provenance;  // "file:<dir>" or "analytic-sphere"
  std::vector<HrirEntry> entries;

  /// Entry with the largest dot product with `direction`; lowest index on ties.
  /// Throws InvalidArgument when empty.
  std::size_t nearest(const Vec3& direction) const;
};

/// Directory with `manifest.txt` (header `fs_hz <value>`, then lines
/// `azimuth_deg elevation_deg left.wav right.wav`) and mono WAV files. Throws
/// FormatError on missing files, non-mono files, rate or length mismatch.
HrirSet load_hrir_set(const std::filesystem::path& directory);

inline constexpr double kHeadRadius = 0.0875;

struct StereoSignal {
  Signal left;
  Signal right;
};

/// Rigid-sphere HRIR: per-ear Woodworth delay (ears on the +-y axis) and a
/// one-pole head-shadow shelf whose high-frequency gain depends on the angle
/// between the source and the ear axis. Frontal directions give identical
/// ears; mirroring the direction through the origin swaps the ears.
StereoSignal sphere_hrir(const Vec3& direction, double fs);

/// Woodworth arrival time (seconds) at the ear on axis `ear_axis`, relative to
/// the head centre.
double woodworth_delay(const Vec3& direction, const Vec3& ear_axis);

HrirSet sphere_hrir_set(std::span<const Vec3> directions, double fs);

/// Sum over speakers of channel (*) HRIR(nearest to speaker). Output length
/// is frames + HRIR length - 1. Throws InvalidArgument on a channel-count
/// mismatch or empty set.
StereoSignal binauralize(const MultiSignal& speakers, const LoudspeakerLayout& layout,
                         const HrirSet& hrirs);

// --- Spectral analysis -------------------------------------------------------

inline constexpr std::size_t kWelchWindow = 512;
inline constexpr std::size_t kWelchHop = 128;

struct WelchSpectra {
  double fs = 0.0;
  std::size_t segments = 0;
  std::vector<double> freqs;
  std::vector<double> gll;
  std::vector<double> grr;
  std::vector<cplx> glr;
};

/// Averaged one-sided (cross-)periodograms. Window length scales with fs
/// (512 samples at 44.1 kHz). Throws InvalidArgument for unequal lengths or
/// signals shorter than one window.
WelchSpectra welch_spectra(std::span<const double> left, std::span<const double> right, double fs);

struct Curve {
  std::vector<double> freqs;
  std::vector<double> values;
};

/// Throws NumericError if either channel has no energy. Bins where one
/// channel is empty get coherence 0.
Curve coherence(const WelchSpectra& spectra);
Curve coherence(std::span<const double> left, std::span<const double> right, double fs);

/// Throws NumericError if either channel has no energy.
Curve ild(const WelchSpectra& spectra);
Curve ild(std::span<const double> left, std::span<const double> right, double fs);

/// Mean over [f / sqrt(2), f * sqrt(2)] at every bin (DC is left unchanged).
Curve octave_smooth(const Curve& curve);

/// Lowest frequency >= min_hz at which the octave-smoothed |a - b| exceeds
/// `threshold`; +infinity if it never does.
double divergence_frequency(const Curve& a, const Curve& b, double threshold = 0.1,
                            double min_hz = 100.0);

/// max over bins in [lo_hz, hi_hz] of the octave-smoothed |a - b|.
double max_smoothed_difference(const Curve& a, const Curve& b, double lo_hz, double hi_hz);

// --- Diffuse-field evaluation --------------------------------------------------

struct DiffuseFieldRequest {
  const ShoeboxRoom* room = nullptr;
  Pose receiver;
  std::size_t k = 96;
  const LoudspeakerLayout* layout = nullptr;
  const HrirSet* hrirs = nullptr;
  double duration_seconds = 60.0;
  std::uint64_t seed = 1;
  bool isotropic = false;  // equal power on every VRS
};

/// Ear signals for K independent Gaussian noises (stream k of the seed), each
/// filtered by its VRS output filter and panned at its direction in the
/// listener frame. Length is duration * fs.
StereoSignal diffuse_field_signals(const DiffuseFieldRequest& request);

struct DiffuseFieldResult {
  Curve ic;
  Curve ild;
};

DiffuseFieldResult diffuse_field_eval(const DiffuseFieldRequest& request);

/// freq_hz,ic,ild_db with one row per bin, 10 significant digits.
std::string curves_to_csv(const DiffuseFieldResult& result);

}  // namespace vrs
