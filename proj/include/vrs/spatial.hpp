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

// Loudspeaker layouts and 3-D vector-base amplitude panning.

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "vrs/convolve.hpp"
#include "vrs/geometry.hpp"
#include "vrs/hull.hpp"

namespace vrs {

/// Speaker directions in the listener frame (x front, y left, z up).
struct LoudspeakerLayout {
  std::string name;
  double radius_m = 1.0;
  std::vector<Vec3> directions;  // unit length

  std::size_t size() const { return directions.size(); }
};

/// Normalises the directions and checks that their hull is not flat.
/// Throws InvalidArgument for fewer than 4 or zero-length directions,
/// GeometryError for a flat set.
LoudspeakerLayout make_layout(std::string name, double radius_m, std::vector<Vec3> directions);

/// 48 speakers at 0 deg elevation (7.5 deg steps), 12 at +-30 (30 deg steps),
/// 6 at +-60 (60 deg steps) and the two poles; every ring starts at azimuth 0.
/// Radius 2.5 m.
LoudspeakerLayout builtin_layout_86();

/// Text layout: header `radius_m <value>`, then `azimuth_deg elevation_deg`
/// per line. `#` starts a comment. Throws FormatError with the line number.
LoudspeakerLayout load_layout(const std::filesystem::path& path);

/// Convex-hull triangles of the layout directions.
std::vector<Triangle> triangulate(const LoudspeakerLayout& layout);

struct PanningGains {
  Vec3 direction;
  std::array<std::size_t, 3> speakers{};
  std::array<double, 3> gains{};  // >= 0, L2 norm 1
};

class VbapPanner {
 public:
  explicit VbapPanner(const LoudspeakerLayout& layout);

  std::size_t channels() const { return directions_.size(); }
  const std::vector<Triangle>& triangles() const { return triangles_; }

  /// Uses the triangle whose smallest gain is largest (lowest index on ties),
  /// clamps negative gains to 0 and normalises to unit L2 norm.
  PanningGains gains(const Vec3& direction) const;

 private:
  std::vector<Vec3> directions_;
  std::vector<Triangle> triangles_;
  std::vector<std::array<double, 9>> inverses_;  // row-major inverse of [l0 l1 l2]
};

PanningGains vbap_gains(const Vec3& direction, const LoudspeakerLayout& layout);

/// out[speaker][offset + t] += gain * signal[t] for each active speaker,
/// truncated at the channel length.
void pan_add(const PanningGains& gains, std::span<const double> signal, std::size_t offset,
             MultiSignal& out);

}  // namespace vrs
