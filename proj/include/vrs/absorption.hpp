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

// Spatial subsampling of per-wall absorption onto virtual reverb source (VRS)
// directions.
//
// Around the receiver, space splits into octants. Each octant contains one
// room vertex and is bounded by three walls. A VRS direction is warped by
// dividing it elementwise by the absolute receiver-to-vertex vector of its
// octant and renormalising, which maps the room's vertex directions onto the
// diagonals of a receiver-centred cube. The warped direction is then panned
// (VBAP) onto the three outward wall normals of the octant, and the resulting
// gains blend the three walls' absorption coefficients per band.

#include <array>
#include <cstddef>
#include <vector>

#include "vrs/geometry.hpp"

namespace vrs {

/// Lower bound on each receiver-to-vertex component, metres.
inline constexpr double kMinVertexDistance = 1e-3;

struct OctantFrame {
  std::size_t index = 0;         // bit i set <=> negative along axis i
  Vec3 vertex_abs;               // |vertex - receiver|, componentwise, clamped
  std::array<Wall, 3> walls{};   // bounding walls, ordered x, y, z
};

struct WarpedDirection {
  std::size_t vrs_index = 0;
  Vec3 vector;
};

struct GainTriple {
  std::array<double, 3> g{};  // paired with OctantFrame::walls, sums to 1
};

/// Per-VRS, per-band blended absorption a_k(b).
struct SampledAbsorption {
  std::vector<BandArray> coefficients;
  std::size_t size() const { return coefficients.size(); }
  const BandArray& operator[](std::size_t k) const { return coefficients[k]; }
};

/// Octant holding `direction` relative to `receiver`. A zero component counts
/// as positive.
OctantFrame octant_frame(const ShoeboxRoom& room, const Vec3& receiver, const Vec3& direction);

/// normalize(direction ./ vertex_abs) using the octant of `direction`.
WarpedDirection warp_direction(const Vec3& direction, const Vec3& receiver, const ShoeboxRoom& room,
                               std::size_t vrs_index = 0);

/// Solves g * N = w with the rows of N the octant's outward wall normals, then
/// normalises g to unit sum. Throws GeometryError for a singular basis.
GainTriple blend_gains(const WarpedDirection& warped, const OctantFrame& octant);

/// General form of blend_gains for an arbitrary (non-orthogonal) wall basis.
std::array<double, 3> solve_wall_gains(const Vec3& warped, const std::array<Vec3, 3>& normals);

SampledAbsorption sample_absorption(const ShoeboxRoom& room, const Vec3& receiver,
                                    const DirectionSet& directions);

/// Every VRS gets absorption 0 in every band (equal output power).
SampledAbsorption isotropic_absorption(std::size_t k);

}  // namespace vrs
