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


#include "vrs/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "vrs/errors.hpp"
#include "vrs/simd/kernels.hpp"

namespace vrs {
namespace {

constexpr double kSingularDet = 1e-12;
// Gains below this are rounding residue on a triangle edge or vertex.
constexpr double kGainEpsilon = 1e-12;

// Inverse of the matrix whose columns are a, b, c.
bool invert_columns(const Vec3& a, const Vec3& b, const Vec3& c, std::array<double, 9>& inv) {
  const double det = dot(a, cross(b, c));
  if (std::abs(det) < kSingularDet) return false;
  // Rows of the inverse are the reciprocal basis.
  const Vec3 r0 = cross(b, c) / det, r1 = cross(c, a) / det, r2 = cross(a, b) / det;
  inv = {r0.x, r0.y, r0.z, r1.x, r1.y, r1.z, r2.x, r2.y, r2.z};
  return true;
}

}  // namespace

LoudspeakerLayout make_layout(std::string name, double radius_m, std::vector<Vec3> directions) {
  if (directions.size() < 4) throw InvalidArgument("a 3-D layout needs at least 4 speakers");
  if (!(radius_m > 0.0) || !std::isfinite(radius_m)) throw InvalidArgument("layout radius must be > 0");
  for (auto& d : directions) {
    const double n = norm(d);
    if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("zero-length speaker direction");
    d = d / n;
  }
  LoudspeakerLayout layout{std::move(name), radius_m, std::move(directions)};
  (void)convex_hull(layout.directions);  // throws GeometryError when flat
  return layout;
}

LoudspeakerLayout builtin_layout_86() {
  std::vector<Vec3> dirs;
  auto ring = [&](int count, double elevation) {
    for (int i = 0; i < count; ++i) dirs.push_back(direction_from_degrees(360.0 * i / count, elevation));
  };
  ring(48, 0.0);
  ring(12, 30.0);
  ring(12, -30.0);
  ring(6, 60.0);
  ring(6, -60.0);
  dirs.push_back({0.0, 0.0, 1.0});
  dirs.push_back({0.0, 0.0, -1.0});
  return make_layout("builtin-86", 2.5, std::move(dirs));
}

LoudspeakerLayout load_layout(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open layout file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  double radius = std::numeric_limits<double>::quiet_NaN();
  std::vector<Vec3> dirs;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    auto fail = [&](const std::string& what) {
      return FormatError(path.string() + ":" + std::to_string(lineno) + ": " + what);
    };
    std::string extra;
    if (std::isnan(radius)) {
      if (first != "radius_m" || !(ss >> radius) || (ss >> extra)) {
        throw fail("expected header 'radius_m <value>'");
      }
      if (!(radius > 0.0)) throw fail("radius must be > 0");
      continue;
    }
    double az = 0.0, el = 0.0;
    try {
      std::size_t used = 0;
      az = std::stod(first, &used);
      if (used != first.size()) throw std::invalid_argument(first);
    } catch (const std::exception&) {
      throw fail("bad azimuth '" + first + "'");
    }
    if (!(ss >> el) || (ss >> extra)) throw fail("expected 'azimuth_deg elevation_deg'");
    if (el < -90.0 || el > 90.0) throw fail("elevation out of [-90, 90]");
    dirs.push_back(direction_from_degrees(az, el));
  }
  if (std::isnan(radius)) throw FormatError(path.string() + ": missing 'radius_m' header");
  try {
    return make_layout(path.stem().string(), radius, std::move(dirs));
  } catch (const InvalidArgument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

std::vector<Triangle> triangulate(const LoudspeakerLayout& layout) {
  return convex_hull(layout.directions);
}

VbapPanner::VbapPanner(const LoudspeakerLayout& layout)
    : directions_(layout.directions), triangles_(triangulate(layout)) {
  inverses_.resize(triangles_.size());
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& tri = triangles_[t];
    if (!invert_columns(directions_[tri[0]], directions_[tri[1]], directions_[tri[2]], inverses_[t])) {
      throw GeometryError("degenerate loudspeaker triangle");
    }
  }
}

PanningGains VbapPanner::gains(const Vec3& direction) const {
  const Vec3 p = normalized(direction);
  std::size_t best = 0;
  double best_min = -std::numeric_limits<double>::infinity();
  std::array<double, 3> best_g{};
  for (std::size_t t = 0; t < triangles_.size(); ++t) {
    const auto& m = inverses_[t];
    const std::array<double, 3> g = {m[0] * p.x + m[1] * p.y + m[2] * p.z,
                                     m[3] * p.x + m[4] * p.y + m[5] * p.z,
                                     m[6] * p.x + m[7] * p.y + m[8] * p.z};
    const double lo = std::min({g[0], g[1], g[2]});
    if (lo > best_min) best_min = lo, best = t, best_g = g;
  }
  PanningGains out;
  out.direction = p;
  out.speakers = triangles_[best];
  double sq = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    out.gains[i] = best_g[i] > kGainEpsilon ? best_g[i] : 0.0;
    sq += out.gains[i] * out.gains[i];
  }
  const double n = std::sqrt(sq);
  for (auto& g : out.gains) g /= n;
  return out;
}

PanningGains vbap_gains(const Vec3& direction, const LoudspeakerLayout& layout) {
  return VbapPanner(layout).gains(direction);
}

void pan_add(const PanningGains& gains, std::span<const double> signal, std::size_t offset,
             MultiSignal& out) {
  const auto& k = simd::kernels();
  for (std::size_t i = 0; i < 3; ++i) {
    if (gains.gains[i] == 0.0) continue;
    Signal& ch = out.at(gains.speakers[i]);
    if (offset >= ch.size()) continue;
    const std::size_t n = std::min(signal.size(), ch.size() - offset);
    k.axpy(gains.gains[i], signal.data(), ch.data() + offset, n);
  }
}

}  // namespace vrs
