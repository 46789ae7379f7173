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
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vrs {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](std::size_t i) const { return i == 0 ? x : (i == 1 ? y : z); }
  constexpr double& operator[](std::size_t i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }
inline Vec3 normalized(const Vec3& v) { return v / norm(v); }

/// Angle between two unit vectors in radians, clamped against rounding.
inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::acos(std::fmax(-1.0, std::fmin(1.0, dot(a, b))));
}

/// Rotation about +z by `radians` (counterclockwise seen from above).
inline Vec3 rotate_z(const Vec3& v, double radians) {
  const double c = std::cos(radians), s = std::sin(radians);
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

/// Unit vector from azimuth (counterclockwise from +x) and elevation (up-positive), degrees.
Vec3 direction_from_degrees(double azimuth_deg, double elevation_deg);

// --- Octave bands ----------------------------------------------------------

inline constexpr std::size_t kNumBands = 7;
inline constexpr std::array<double, kNumBands> kOctaveCenters = {125.0,  250.0,  500.0, 1000.0,
                                                                 2000.0, 4000.0, 8000.0};
using BandArray = std::array<double, kNumBands>;

/// Band index whose center is nearest to `hz` on a log axis; outside the grid
/// clamps to the first/last band.
std::size_t nearest_band(double hz);

// --- Room ------------------------------------------------------------------

inline constexpr std::size_t kNumWalls = 6;

/// Walls are indexed -x, +x, -y, +y, -z, +z.
enum class Wall : std::size_t { NegX = 0, PosX = 1, NegY = 2, PosY = 3, NegZ = 4, PosZ = 5 };

constexpr std::size_t wall_axis(Wall w) { return static_cast<std::size_t>(w) / 2; }
constexpr bool wall_is_positive(Wall w) { return static_cast<std::size_t>(w) % 2 == 1; }
constexpr Wall wall_of(std::size_t axis, bool positive) {
  return static_cast<Wall>(axis * 2 + (positive ? 1 : 0));
}
/// Normal pointing out of the room through wall `w`.
Vec3 outward_normal(Wall w);

using WallAbsorption = std::array<BandArray, kNumWalls>;

class ShoeboxRoom {
 public:
  /// Throws InvalidArgument unless all dims > 0 and all coefficients lie in [0, 1].
  ShoeboxRoom(Vec3 dims, const WallAbsorption& absorption);

  /// Same coefficient on every wall and band.
  static ShoeboxRoom uniform(Vec3 dims, double alpha);

  const Vec3& dims() const { return dims_; }
  const WallAbsorption& absorption() const { return absorption_; }
  const BandArray& absorption(Wall w) const { return absorption_[static_cast<std::size_t>(w)]; }

  double volume() const { return dims_.x * dims_.y * dims_.z; }
  double wall_area(Wall w) const;
  double surface_area() const;
  /// Strictly inside (0, dims) on every axis.
  bool contains(const Vec3& p) const;

 private:
  Vec3 dims_;
  WallAbsorption absorption_{};
};

/// Receiver position and look direction. `yaw_deg` is the azimuth of the
/// listener's front in room axes, counterclockwise from +x.
struct Pose {
  Vec3 position;
  double yaw_deg = 0.0;
};

/// Room direction expressed in the listener frame (x front, y left, z up).
inline Vec3 to_listener_frame(const Vec3& room_dir, double yaw_deg) {
  return rotate_z(room_dir, -yaw_deg * std::acos(-1.0) / 180.0);
}

// --- Virtual reverb source directions ----------------------------------------

inline constexpr std::array<std::size_t, 5> kSupportedVrsCounts = {6, 12, 24, 48, 96};
bool is_supported_vrs_count(std::size_t k);

struct DirectionSet {
  std::vector<Vec3> directions;
  std::size_t size() const { return directions.size(); }
  const Vec3& operator[](std::size_t i) const { return directions[i]; }
};

/// Room-aligned polyhedral VRS directions for K in {6, 12, 24, 48, 96}.
///   6: the six wall normals.
///  12: two points per cube face on a face diagonal, placed antipodally, offset
///      chosen to maximise hull sphericity.
///  24: snub cube.
///  48: snub cube plus its mirror image turned 45 degrees about z.
///  96: both snub cube chiralities, plus the same pair turned 45 degrees about z.
/// Throws InvalidArgument for any other K.
DirectionSet direction_set(std::size_t k);

/// Wadell sphericity pi^(1/3) (6V)^(2/3) / A of the convex hull of `points`.
/// Throws GeometryError for fewer than 4 points or a flat hull.
double sphericity(std::span<const Vec3> points);
inline double sphericity(const DirectionSet& set) { return sphericity(set.directions); }

/// Horizontal angle (degrees) subtended at `receiver` by the two vertical
/// edges of a side wall. Floor/ceiling throw InvalidArgument; a receiver on
/// the wall plane throws GeometryError.
double wall_fov(const ShoeboxRoom& room, Wall wall, const Vec3& receiver);

}  // namespace vrs
