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

#include "vrs/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "vrs/errors.hpp"

namespace vrs {
namespace {

struct Face {
  Triangle v;
  Vec3 normal;  // unnormalised, outward
  double offset;
  bool alive = true;
};

Face make_face(std::span<const Vec3> p, std::size_t a, std::size_t b, std::size_t c,
               const Vec3& interior) {
  Face f{{a, b, c}, cross(p[b] - p[a], p[c] - p[a]), 0.0};
  if (dot(f.normal, interior - p[a]) > 0.0) {
    std::swap(f.v[1], f.v[2]);
    f.normal = -f.normal;
  }
  f.offset = dot(f.normal, p[a]);
  return f;
}

}  // namespace

std::vector<Triangle> convex_hull(std::span<const Vec3> points) {
  const std::size_t n = points.size();
  if (n < 4) throw GeometryError("convex hull needs at least 4 points");

  double scale = 0.0;
  for (const auto& q : points) scale = std::max(scale, norm(q - points[0]));
  if (scale == 0.0) throw GeometryError("convex hull of coincident points");
  const double eps = 1e-10 * scale;

  // Initial tetrahedron: farthest point, farthest from the line, farthest
  // from the plane.
  std::size_t i0 = 0, i1 = 0, i2 = 0, i3 = 0;
  double best = -1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double d = norm(points[i] - points[i0]);
    if (d > best) best = d, i1 = i;
  }
  best = -1.0;
  const Vec3 axis = points[i1] - points[i0];
  for (std::size_t i = 0; i < n; ++i) {
    const double d = norm(cross(axis, points[i] - points[i0]));
    if (d > best) best = d, i2 = i;
  }
  if (best <= eps * norm(axis)) throw GeometryError("convex hull of collinear points");
  best = -1.0;
  const Vec3 pn = cross(axis, points[i2] - points[i0]);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::fabs(dot(pn, points[i] - points[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (best <= eps * norm(pn)) throw GeometryError("convex hull of coplanar points");

  const Vec3 interior = (points[i0] + points[i1] + points[i2] + points[i3]) * 0.25;
  std::vector<Face> faces;
  faces.push_back(make_face(points, i0, i1, i2, interior));
  faces.push_back(make_face(points, i0, i1, i3, interior));
  faces.push_back(make_face(points, i0, i2, i3, interior));
  faces.push_back(make_face(points, i1, i2, i3, interior));

  for (std::size_t p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;

    std::vector<std::size_t> visible;
    for (std::size_t f = 0; f < faces.size(); ++f) {
      if (!faces[f].alive) continue;
      const double d = dot(faces[f].normal, points[p]) - faces[f].offset;
      if (d > eps * norm(faces[f].normal)) visible.push_back(f);
    }
    if (visible.empty()) continue;  // inside or on the hull

    // Horizon: directed edges of visible faces whose reverse edge is not
    // also on a visible face.
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (std::size_t f : visible) {
      const auto& v = faces[f].v;
      for (int e = 0; e < 3; ++e) edges[{v[e], v[(e + 1) % 3]}] += 1;
    }
    for (std::size_t f : visible) faces[f].alive = false;
    for (const auto& [edge, count] : edges) {
      (void)count;
      if (edges.count({edge.second, edge.first}) != 0) continue;
      faces.push_back(make_face(points, edge.first, edge.second, p, interior));
    }
  }

  std::vector<Triangle> out;
  for (const auto& f : faces) {
    if (f.alive) out.push_back(f.v);
  }
  return out;
}

HullMeasure measure_hull(std::span<const Vec3> points, std::span<const Triangle> faces) {
  Vec3 c{};
  for (const auto& p : points) c = c + p;
  c = c / static_cast<double>(points.size());
  HullMeasure m;
  for (const auto& t : faces) {
    const Vec3 a = points[t[0]], b = points[t[1]], d = points[t[2]];
    const Vec3 n = cross(b - a, d - a);
    m.area += 0.5 * norm(n);
    m.volume += std::fabs(dot(a - c, cross(b - c, d - c))) / 6.0;
  }
  return m;
}

}  // namespace vrs
