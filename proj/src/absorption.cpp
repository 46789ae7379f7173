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

#include "vrs/absorption.hpp"

#include <algorithm>
#include <cmath>

#include "vrs/errors.hpp"

namespace vrs {

OctantFrame octant_frame(const ShoeboxRoom& room, const Vec3& receiver, const Vec3& direction) {
  OctantFrame f;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const bool positive = !(direction[axis] < 0.0);
    if (!positive) f.index |= std::size_t{1} << axis;
    const double span = positive ? room.dims()[axis] - receiver[axis] : receiver[axis];
    f.vertex_abs[axis] = std::max(std::fabs(span), kMinVertexDistance);
    f.walls[axis] = wall_of(axis, positive);
  }
  return f;
}

WarpedDirection warp_direction(const Vec3& direction, const Vec3& receiver, const ShoeboxRoom& room,
                               std::size_t vrs_index) {
  const OctantFrame f = octant_frame(room, receiver, direction);
  const Vec3 q{direction.x / f.vertex_abs.x, direction.y / f.vertex_abs.y,
               direction.z / f.vertex_abs.z};
  return {vrs_index, normalized(q)};
}

std::array<double, 3> solve_wall_gains(const Vec3& w, const std::array<Vec3, 3>& n) {
  // g N = w  <=>  N^T g^T = w^T; Cramer's rule on the columns of N^T.
  const double det = dot(n[0], cross(n[1], n[2]));
  if (std::fabs(det) < 1e-12) throw GeometryError("wall normals do not span 3-D");
  return {dot(w, cross(n[1], n[2])) / det, dot(n[0], cross(w, n[2])) / det,
          dot(n[0], cross(n[1], w)) / det};
}

GainTriple blend_gains(const WarpedDirection& warped, const OctantFrame& octant) {
  std::array<double, 3> g;
  bool axis_aligned = true;
  for (std::size_t i = 0; i < 3; ++i) axis_aligned &= wall_axis(octant.walls[i]) == i;
  if (axis_aligned) {
    // Orthogonal walls: the VBAP solve reduces to absolute components.
    g = {std::fabs(warped.vector.x), std::fabs(warped.vector.y), std::fabs(warped.vector.z)};
  } else {
    g = solve_wall_gains(warped.vector, {outward_normal(octant.walls[0]),
                                         outward_normal(octant.walls[1]),
                                         outward_normal(octant.walls[2])});
    for (auto& v : g) v = std::max(v, 0.0);
  }
  const double sum = g[0] + g[1] + g[2];
  if (!(sum > 0.0)) throw GeometryError("warped direction has no component on the wall basis");
  return {{g[0] / sum, g[1] / sum, g[2] / sum}};
}

SampledAbsorption sample_absorption(const ShoeboxRoom& room, const Vec3& receiver,
                                    const DirectionSet& directions) {
  SampledAbsorption out;
  out.coefficients.resize(directions.size());
  for (std::size_t k = 0; k < directions.size(); ++k) {
    const Vec3& dir = directions[k];
    const OctantFrame f = octant_frame(room, receiver, dir);
    const GainTriple g = blend_gains(warp_direction(dir, receiver, room, k), f);
    // Written as an offset from the dominant wall so that equal coefficients
    // reproduce themselves bit-exactly.
    const std::size_t ref = static_cast<std::size_t>(
        std::max_element(g.g.begin(), g.g.end()) - g.g.begin());
    for (std::size_t b = 0; b < kNumBands; ++b) {
      const double base = room.absorption(f.walls[ref])[b];
      double a = base;
      for (std::size_t i = 0; i < 3; ++i) {
        if (i != ref) a += g.g[i] * (room.absorption(f.walls[i])[b] - base);
      }
      out.coefficients[k][b] = std::clamp(a, 0.0, 1.0);
    }
  }
  return out;
}

SampledAbsorption isotropic_absorption(std::size_t k) {
  SampledAbsorption out;
  out.coefficients.assign(k, BandArray{});
  return out;
}

}  // namespace vrs
