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

#include "vrs/geometry.hpp"

namespace vrs {

/// Triangle of point indices, counterclockwise seen from outside the hull.
using Triangle = std::array<std::size_t, 3>;

/// Incremental 3-D convex hull. Coplanar facets (e.g. four cocircular points
/// on a sphere) come out triangulated; points are inserted in index order, so
/// the result is deterministic. Throws GeometryError when the input is flat.
std::vector<Triangle> convex_hull(std::span<const Vec3> points);

struct HullMeasure {
  double volume = 0.0;
  double area = 0.0;
};

HullMeasure measure_hull(std::span<const Vec3> points, std::span<const Triangle> faces);

}  // namespace vrs
