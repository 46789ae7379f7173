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

#include <array>
#include <span>
#include <vector>

#include "vrs/convolve.hpp"
#include "vrs/geometry.hpp"

namespace vrs {

inline constexpr double kSpeedOfSound = 343.0;

/// One specular image of the source. Order 0 is the direct sound.
struct ImageSource {
  int order = 0;
  std::array<int, 3> lattice{};  // mirror index per axis; |x|+|y|+|z| == order
  Vec3 position;
  BandArray band_gain{};         // product of sqrt(1 - alpha) over reflecting walls
  double distance = 0.0;         // metres, image to receiver
  double delay = 0.0;            // seconds
  Vec3 arrival_dir;              // unit, receiver -> image, room axes

  double amplitude() const { return 1.0 / distance; }
};

/// Direct sound plus every image of order 1..max_order from the shoebox mirror
/// lattice, sorted by (order, lattice index). Throws GeometryError when
/// source == receiver and InvalidArgument for positions outside the room.
std::vector<ImageSource> compute_image_sources(const ShoeboxRoom& room, const Vec3& source,
                                               const Vec3& receiver, int max_order);

/// Band-filtered, distance-attenuated pulse of one image (no delay).
Signal image_pulse(const ImageSource& image, double fs);

/// Index of the angularly nearest direction; ties go to the lower index.
std::size_t nearest_direction(const Vec3& dir, std::span<const Vec3> candidates);

/// Highest-order images routed to FDN input channels.
struct Injection {
  struct Tap {
    std::size_t image = 0;  // index into the `images` argument
    double delay = 0.0;     // seconds
    Signal pulse;           // image_pulse()
  };
  std::vector<std::vector<Tap>> channels;

  double energy() const;
};

/// Every image with the maximum order present in `images` is assigned to the
/// channel whose direction is nearest its arrival direction. Throws
/// InvalidArgument if `images` is empty or `channel_dirs` is empty.
Injection last_order_injection(std::span<const ImageSource> images,
                               std::span<const Vec3> channel_dirs, double fs);

/// Sums each channel's taps at round(fs * delay) into `frames` samples.
MultiSignal render_injection(const Injection& injection, double fs, std::size_t frames);

}  // namespace vrs
