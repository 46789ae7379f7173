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

// Scenario files.
//
// Plain text, one `key = value` per line under bracketed section headers;
// `#` or `;` start a comment. Sections and keys:
//
//   [room]      dims = <x> <y> <z>                      metres, required
//               alpha = <a> | <a125> ... <a8000>        default for all walls
//               alpha_neg_x, alpha_pos_x, alpha_neg_y,  per-wall override
//               alpha_pos_y, alpha_neg_z, alpha_pos_z
//   [source]    position = <x> <y> <z>                  required
//   [receiver]  position = <x> <y> <z>                  required
//               yaw_deg = <deg>                         look azimuth, default 0
//   [render]    k = 6|12|24|48|96                       default 96
//               fs = <Hz>                               default 44100
//               seed = <u64>                            default 1
//               layout = builtin-86 | <path>            default builtin-86
//               duration_s = <s>                        default max RT60 + 0.5 s
//   [analysis]  hrir = sphere | <directory>             default sphere
//               duration_s = <s>                        default 60
//               isotropic = true|false                  default false
//
// Relative paths are resolved against the scenario file's directory.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "vrs/geometry.hpp"

namespace vrs {

struct Scenario {
  ShoeboxRoom room = ShoeboxRoom::uniform({1.0, 1.0, 1.0}, 0.0);
  Vec3 source;
  Pose receiver;
  std::size_t k = 96;
  double fs = 44100.0;
  std::uint64_t seed = 1;
  std::string layout = "builtin-86";
  std::string hrir = "sphere";
  std::optional<double> render_duration_s;
  double analysis_duration_s = 60.0;
  bool isotropic = false;
};

/// Throws FormatError (syntax, unknown or missing keys) or InvalidArgument
/// (out-of-range values, positions outside the room, unsupported K), both
/// prefixed with `<name>:<line>:`.
Scenario parse_scenario_text(const std::string& text, const std::string& name = "<scenario>",
                             const std::filesystem::path& base_dir = {});
Scenario parse_scenario(const std::filesystem::path& path);

/// Round-trips through parse_scenario_text.
std::string format_scenario(const Scenario& scenario);

// --- Corridor ----------------------------------------------------------------

inline constexpr Vec3 kCorridorDims{24.0, 8.0, 6.0};
inline constexpr double kCorridorHeight = 1.8;
inline constexpr double kCorridorSeparation = 5.33;
inline constexpr double kCorridorSideOffset = (8.0 - kCorridorSeparation) / 2.0;
inline constexpr std::array<double, 4> kCorridorFovDeg = {170.0, 110.0, 70.0, 30.0};

/// 24 x 8 x 6 m; the wall at x = 0 absorbs 0.99 in every band, the others
/// rise linearly over the bands from 0.01 (125 Hz) to 0.11 (8 kHz).
ShoeboxRoom corridor_room();

struct CorridorPosition {
  char label = 'A';
  double fov_deg = 0.0;
  double wall_distance = 0.0;  // receiver distance to the x = 0 wall
  Vec3 source;
  Pose receiver;               // facing the source
};

/// Positions A..D: source and receiver 5.33 m apart across the corridor at
/// 1.8 m height, at the wall distance where the absorbing wall subtends
/// 170, 110, 70 and 30 degrees.
std::array<CorridorPosition, 4> corridor_positions();

/// label in A..D; throws InvalidArgument otherwise.
Scenario corridor_scenario(char label, std::size_t k = 96, std::uint64_t seed = 1);

}  // namespace vrs
