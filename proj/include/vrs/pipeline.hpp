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

// Multichannel room impulse response (MRIR) assembly.
//
//  1. Direct sound and ISM reflections up to order 3, each band-filtered and
//     panned at its arrival direction.
//  2. The order-3 images feed the 96-channel FDN (nearest channel direction).
//  3. FDN outputs are downmixed to K channels, matched to the K-direction
//     VRS set, filtered with sqrt(1 - a_k) and panned at the VRS directions.
//
// All directions are rotated into the listener frame (yaw only) before
// panning. Every virtual source is rendered at the array radius; only the
// simulated relative delays and 1/d gains are kept.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vrs/convolve.hpp"
#include "vrs/geometry.hpp"
#include "vrs/spatial.hpp"

namespace vrs {

inline constexpr int kIsmOrder = 3;
inline constexpr double kTailMargin = 0.5;  // seconds after the longest RT60

struct RenderOptions {
  bool direct = true;
  bool early = true;       // orders 1..kIsmOrder
  bool tail = true;
  bool isotropic = false;  // a_k = 0 for every VRS
};

struct MrirMetadata {
  std::string layout;
  std::size_t channels = 0;
  std::size_t frames = 0;
  double fs = 0.0;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  bool isotropic = false;
  Vec3 room_dims;
  Vec3 source;
  Pose receiver;
  BandArray rt60{};
  std::size_t direct_sample = 0;     // onset of the direct sound
  std::size_t early_end_sample = 0;  // end of the last discrete reflection
  std::size_t tail_start_sample = 0; // first sample the FDN can produce
  std::string note;
};

struct Mrir {
  double fs = 0.0;
  MultiSignal channels;  // one per loudspeaker
  MrirMetadata meta;
};

/// A source to be panned: direction in room axes, signal starting at `offset`.
struct VirtualSource {
  Vec3 direction;
  std::size_t offset = 0;
  Signal signal;
};

/// Pans every source at to_listener_frame(direction, yaw) into `frames`
/// samples per speaker. Sources are accumulated in order.
MultiSignal pan_sources(std::span<const VirtualSource> sources, const VbapPanner& panner,
                        double yaw_deg, std::size_t frames);

/// One-to-one assignment of `from` onto `to` (equal sizes) by greedy
/// minimum-angle matching, ties by (from, to) index. Returns to-index per from.
std::vector<std::size_t> match_directions(std::span<const Vec3> from, std::span<const Vec3> to);

/// Longest band RT60 of the room plus kTailMargin.
double default_render_duration(const ShoeboxRoom& room);

/// Throws InvalidArgument for an unsupported K, a non-positive duration or a
/// direct sound that falls outside the render; other errors propagate.
Mrir render_mrir(const ShoeboxRoom& room, const Vec3& source, const Pose& receiver, std::size_t k,
                 double fs, double duration_seconds, std::uint64_t seed,
                 const LoudspeakerLayout& layout, const RenderOptions& options = {});

/// Direct sound and ISM reflections as virtual sources (room axes).
std::vector<VirtualSource> early_sources(const ShoeboxRoom& room, const Vec3& source,
                                         const Vec3& receiver, double fs, bool direct, bool early);

/// Late tail as K virtual sources at the VRS directions, `frames` long.
std::vector<VirtualSource> tail_sources(const ShoeboxRoom& room, const Vec3& source,
                                        const Vec3& receiver, std::size_t k, double fs,
                                        std::size_t frames, std::uint64_t seed, bool isotropic);

}  // namespace vrs
