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

#include "vrs/ism.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "vrs/band_filter.hpp"
#include "vrs/errors.hpp"
#include "vrs/simd/kernels.hpp"

namespace vrs {
namespace {

// Coordinate of mirror image `i` along one axis of length L.
double mirror_coordinate(int i, double s, double L) {
  return (i % 2 == 0) ? s + i * L : (i + 1) * L - s;
}

// Reflections on the (negative, positive) wall of one axis for mirror index i.
std::pair<int, int> reflection_counts(int i) {
  const int a = std::abs(i);
  const int more = (a + 1) / 2, fewer = a / 2;
  return i >= 0 ? std::pair{fewer, more} : std::pair{more, fewer};
}

}  // namespace

std::vector<ImageSource> compute_image_sources(const ShoeboxRoom& room, const Vec3& source,
                                               const Vec3& receiver, int max_order) {
  if (max_order < 0) throw InvalidArgument("max_order must be >= 0");
  if (!room.contains(source)) throw InvalidArgument("source outside the room");
  if (!room.contains(receiver)) throw InvalidArgument("receiver outside the room");
  if (source == receiver) throw GeometryError("source and receiver coincide");

  std::array<BandArray, kNumWalls> reflect{};
  for (std::size_t w = 0; w < kNumWalls; ++w) {
    for (std::size_t b = 0; b < kNumBands; ++b) {
      reflect[w][b] = std::sqrt(1.0 - room.absorption()[w][b]);
    }
  }

  std::vector<ImageSource> out;
  for (int ix = -max_order; ix <= max_order; ++ix) {
    for (int iy = -max_order; iy <= max_order; ++iy) {
      for (int iz = -max_order; iz <= max_order; ++iz) {
        const int order = std::abs(ix) + std::abs(iy) + std::abs(iz);
        if (order > max_order) continue;
        ImageSource img;
        img.order = order;
        img.lattice = {ix, iy, iz};
        for (std::size_t axis = 0; axis < 3; ++axis) {
          img.position[axis] = mirror_coordinate(img.lattice[axis], source[axis], room.dims()[axis]);
        }
        img.band_gain.fill(1.0);
        for (std::size_t axis = 0; axis < 3; ++axis) {
          const auto [neg, pos] = reflection_counts(img.lattice[axis]);
          const auto& rn = reflect[static_cast<std::size_t>(wall_of(axis, false))];
          const auto& rp = reflect[static_cast<std::size_t>(wall_of(axis, true))];
          for (std::size_t b = 0; b < kNumBands; ++b) {
            for (int r = 0; r < neg; ++r) img.band_gain[b] *= rn[b];
            for (int r = 0; r < pos; ++r) img.band_gain[b] *= rp[b];
          }
        }
        const Vec3 d = img.position - receiver;
        img.distance = norm(d);
        img.delay = img.distance / kSpeedOfSound;
        img.arrival_dir = d / img.distance;
        out.push_back(img);
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const ImageSource& a, const ImageSource& b) {
    return a.order < b.order;
  });
  return out;
}

Signal image_pulse(const ImageSource& image, double fs) {
  Signal h = design_band_filter(image.band_gain, fs);
  const double a = image.amplitude();
  for (auto& v : h) v *= a;
  return h;
}

std::size_t nearest_direction(const Vec3& dir, std::span<const Vec3> candidates) {
  std::size_t best = 0;
  double best_dot = -2.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const double d = dot(dir, candidates[i]);
    if (d > best_dot) best_dot = d, best = i;
  }
  return best;
}

double Injection::energy() const {
  const auto& k = simd::kernels();
  double e = 0.0;
  for (const auto& ch : channels) {
    for (const auto& tap : ch) e += k.sum_squares(tap.pulse.data(), tap.pulse.size());
  }
  return e;
}

Injection last_order_injection(std::span<const ImageSource> images,
                               std::span<const Vec3> channel_dirs, double fs) {
  if (images.empty()) throw InvalidArgument("no image sources to inject");
  if (channel_dirs.empty()) throw InvalidArgument("no FDN channels");
  int top = 0;
  for (const auto& img : images) top = std::max(top, img.order);

  Injection inj;
  inj.channels.resize(channel_dirs.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].order != top) continue;
    const std::size_t ch = nearest_direction(images[i].arrival_dir, channel_dirs);
    inj.channels[ch].push_back({i, images[i].delay, image_pulse(images[i], fs)});
  }
  return inj;
}

MultiSignal render_injection(const Injection& injection, double fs, std::size_t frames) {
  MultiSignal out(injection.channels.size(), Signal(frames, 0.0));
  for (std::size_t c = 0; c < injection.channels.size(); ++c) {
    for (const auto& tap : injection.channels[c]) {
      const auto start = static_cast<std::size_t>(std::llround(tap.delay * fs));
      if (start >= frames) continue;
      const std::size_t n = std::min(tap.pulse.size(), frames - start);
      for (std::size_t i = 0; i < n; ++i) out[c][start + i] += tap.pulse[i];
    }
  }
  return out;
}

}  // namespace vrs
