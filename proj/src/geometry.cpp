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

#include "vrs/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "vrs/errors.hpp"
#include "vrs/hull.hpp"

namespace vrs {

Vec3 direction_from_degrees(double azimuth_deg, double elevation_deg) {
  const double az = azimuth_deg * std::numbers::pi / 180.0;
  const double el = elevation_deg * std::numbers::pi / 180.0;
  return {std::cos(el) * std::cos(az), std::cos(el) * std::sin(az), std::sin(el)};
}

std::size_t nearest_band(double hz) {
  if (!(hz > kOctaveCenters.front())) return 0;
  if (hz >= kOctaveCenters.back()) return kNumBands - 1;
  const double pos = std::log2(hz / kOctaveCenters.front());
  return static_cast<std::size_t>(std::lround(pos));
}

Vec3 outward_normal(Wall w) {
  Vec3 n;
  n[wall_axis(w)] = wall_is_positive(w) ? 1.0 : -1.0;
  return n;
}

ShoeboxRoom::ShoeboxRoom(Vec3 dims, const WallAbsorption& absorption)
    : dims_(dims), absorption_(absorption) {
  if (!(dims.x > 0.0 && dims.y > 0.0 && dims.z > 0.0) || !std::isfinite(dims.x) ||
      !std::isfinite(dims.y) || !std::isfinite(dims.z)) {
    throw InvalidArgument("room dimensions must be finite and strictly positive");
  }
  for (std::size_t w = 0; w < kNumWalls; ++w) {
    for (std::size_t b = 0; b < kNumBands; ++b) {
      const double a = absorption[w][b];
      if (!(a >= 0.0 && a <= 1.0)) {
        throw InvalidArgument("absorption coefficient out of [0, 1] at wall " + std::to_string(w) +
                              ", band " + std::to_string(b));
      }
    }
  }
}

ShoeboxRoom ShoeboxRoom::uniform(Vec3 dims, double alpha) {
  WallAbsorption abs{};
  for (auto& wall : abs) wall.fill(alpha);
  return ShoeboxRoom(dims, abs);
}

double ShoeboxRoom::wall_area(Wall w) const {
  switch (wall_axis(w)) {
    case 0: return dims_.y * dims_.z;
    case 1: return dims_.x * dims_.z;
    default: return dims_.x * dims_.y;
  }
}

double ShoeboxRoom::surface_area() const {
  return 2.0 * (dims_.x * dims_.y + dims_.x * dims_.z + dims_.y * dims_.z);
}

bool ShoeboxRoom::contains(const Vec3& p) const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(p[i] > 0.0 && p[i] < dims_[i])) return false;
  }
  return true;
}

bool is_supported_vrs_count(std::size_t k) {
  return std::find(kSupportedVrsCounts.begin(), kSupportedVrsCounts.end(), k) !=
         kSupportedVrsCounts.end();
}

double sphericity(std::span<const Vec3> points) {
  const auto faces = convex_hull(points);
  const auto m = measure_hull(points, faces);
  if (!(m.volume > 0.0)) throw GeometryError("degenerate hull");
  return std::cbrt(std::numbers::pi) * std::pow(6.0 * m.volume, 2.0 / 3.0) / m.area;
}

namespace {

std::vector<Vec3> axis_directions() {
  return {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
}

// Two points per cube face on the face diagonal through (+,+), offset t from
// the face centre; the opposite face carries the antipodes.
std::vector<Vec3> face_diagonal_points(double t) {
  std::vector<Vec3> out;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const std::size_t u = (axis + 1) % 3, v = (axis + 2) % 3;
    for (double side : {1.0, -1.0}) {
      for (double s : {t, -t}) {
        Vec3 p;
        p[axis] = side;
        p[u] = side * s;
        p[v] = side * s;
        out.push_back(normalized(p));
      }
    }
  }
  return out;
}

double best_face_diagonal_offset() {
  auto score = [](double t) { return sphericity(face_diagonal_points(t)); };
  double best_t = 0.5, best = -1.0;
  for (int i = 2; i <= 98; ++i) {
    const double t = i / 100.0;
    const double s = score(t);
    if (s > best) best = s, best_t = t;
  }
  // Golden-section refinement around the grid maximum.
  double lo = best_t - 0.01, hi = best_t + 0.01;
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - r * (hi - lo), b = lo + r * (hi - lo);
  double fa = score(a), fb = score(b);
  for (int it = 0; it < 60; ++it) {
    if (fa > fb) {
      hi = b, b = a, fb = fa;
      a = hi - r * (hi - lo), fa = score(a);
    } else {
      lo = a, a = b, fa = fb;
      b = lo + r * (hi - lo), fb = score(b);
    }
  }
  return 0.5 * (lo + hi);
}

bool is_even_permutation(const std::array<int, 3>& p) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0;
}

// Snub cube: even permutations of (+-1, +-1/t, +-t) with an even number of
// plus signs and odd permutations with an odd number, t the tribonacci
// constant. `mirror` selects the other enantiomorph.
std::vector<Vec3> snub_cube(bool mirror) {
  const double t = 1.839286755214161132551852564653286600424178746097592246778758639;
  const std::array<double, 3> base = {1.0, 1.0 / t, t};
  std::array<int, 3> perm = {0, 1, 2};
  std::vector<Vec3> out;
  do {
    const bool even = is_even_permutation(perm);
    for (int signs = 0; signs < 8; ++signs) {
      int plus = 0;
      Vec3 p;
      for (int i = 0; i < 3; ++i) {
        const bool positive = (signs >> i & 1) == 0;
        plus += positive ? 1 : 0;
        p[i] = (positive ? 1.0 : -1.0) * base[perm[i]];
      }
      const bool chiral_match = even == (plus % 2 == 0);
      if (chiral_match != mirror) out.push_back(normalized(p));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Vec3> rotated_z(std::vector<Vec3> pts, double degrees) {
  for (auto& p : pts) p = rotate_z(p, degrees * std::numbers::pi / 180.0);
  return pts;
}

std::vector<Vec3> concat(std::vector<Vec3> a, const std::vector<Vec3>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

DirectionSet direction_set(std::size_t k) {
  switch (k) {
    case 6: return {axis_directions()};
    case 12: {
      static const double t = best_face_diagonal_offset();
      return {face_diagonal_points(t)};
    }
    case 24: return {snub_cube(false)};
    case 48: return {concat(snub_cube(false), rotated_z(snub_cube(true), 45.0))};
    case 96: {
      const auto pair = concat(snub_cube(false), snub_cube(true));
      return {concat(pair, rotated_z(pair, 45.0))};
    }
    default: throw InvalidArgument("unsupported VRS count " + std::to_string(k));
  }
}

double wall_fov(const ShoeboxRoom& room, Wall wall, const Vec3& receiver) {
  const std::size_t axis = wall_axis(wall);
  if (axis == 2) throw InvalidArgument("horizontal FOV is only defined for side walls");
  const double d = wall_is_positive(wall) ? room.dims()[axis] - receiver[axis] : receiver[axis];
  if (!(d > 0.0)) throw GeometryError("receiver lies on or behind the wall plane");
  const std::size_t along = axis == 0 ? 1 : 0;
  const double e0 = receiver[along];
  const double e1 = room.dims()[along] - receiver[along];
  return (std::atan2(e0, d) + std::atan2(e1, d)) * 180.0 / std::numbers::pi;
}

}  // namespace vrs
