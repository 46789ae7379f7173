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


#include "vrs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "vrs/absorption.hpp"
#include "vrs/band_filter.hpp"
#include "vrs/errors.hpp"
#include "vrs/fdn.hpp"
#include "vrs/ism.hpp"

namespace vrs {
namespace {

// FDN and downmix are streamed in blocks of this many seconds.
constexpr double kBlockSeconds = 1.0;

std::size_t to_samples(double seconds, double fs) {
  return static_cast<std::size_t>(std::llround(seconds * fs));
}

}  // namespace

MultiSignal pan_sources(std::span<const VirtualSource> sources, const VbapPanner& panner,
                        double yaw_deg, std::size_t frames) {
  MultiSignal out(panner.channels(), Signal(frames, 0.0));
  for (const auto& s : sources) {
    pan_add(panner.gains(to_listener_frame(s.direction, yaw_deg)), s.signal, s.offset, out);
  }
  return out;
}

std::vector<std::size_t> match_directions(std::span<const Vec3> from, std::span<const Vec3> to) {
  if (from.size() != to.size()) throw InvalidArgument("direction sets differ in size");
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  pairs.reserve(from.size() * to.size());
  for (std::size_t i = 0; i < from.size(); ++i) {
    for (std::size_t j = 0; j < to.size(); ++j) pairs.emplace_back(angle_between(from[i], to[j]), i, j);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::size_t> map(from.size(), from.size());
  std::vector<bool> used(to.size(), false);
  for (const auto& [angle, i, j] : pairs) {
    if (map[i] != from.size() || used[j]) continue;
    map[i] = j;
    used[j] = true;
  }
  return map;
}

double default_render_duration(const ShoeboxRoom& room) {
  const BandArray rt = rt60_target(room);
  return *std::max_element(rt.begin(), rt.end()) + kTailMargin;
}

std::vector<VirtualSource> early_sources(const ShoeboxRoom& room, const Vec3& source,
                                         const Vec3& receiver, double fs, bool direct, bool early) {
  std::vector<VirtualSource> out;
  for (const auto& img : compute_image_sources(room, source, receiver, kIsmOrder)) {
    if (img.order == 0 ? !direct : !early) continue;
    out.push_back({img.arrival_dir, to_samples(img.delay, fs), image_pulse(img, fs)});
  }
  return out;
}

std::vector<VirtualSource> tail_sources(const ShoeboxRoom& room, const Vec3& source,
                                        const Vec3& receiver, std::size_t k, double fs,
                                        std::size_t frames, std::uint64_t seed, bool isotropic) {
  const DirectionSet fdn_dirs = direction_set(kFdnChannels);
  const DirectionSet vrs_dirs = direction_set(k);
  const auto images = compute_image_sources(room, source, receiver, kIsmOrder);
  const Injection injection = last_order_injection(images, fdn_dirs.directions, fs);

  FdnDesignOptions design;
  design.jitter_seed = seed;
  FeedbackDelayNetwork fdn(design_fdn(room, fs, design));
  const DownmixPlan plan = make_downmix_plan(fdn_dirs.directions);
  const std::vector<std::size_t> slot = match_directions(plan.directions(k), vrs_dirs.directions);

  const SampledAbsorption sampled =
      isotropic ? isotropic_absorption(k) : sample_absorption(room, receiver, vrs_dirs);
  std::vector<Signal> filters(k);
  for (std::size_t i = 0; i < k; ++i) filters[i] = design_band_filter(reflection_gains(sampled[i]), fs);

  std::vector<VirtualSource> out(k);
  std::vector<Signal> history(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i].direction = vrs_dirs[i];
    out[i].signal.assign(frames, 0.0);
    history[i].assign(filters[i].size() - 1, 0.0);
  }

  const std::size_t block = std::max<std::size_t>(1, to_samples(kBlockSeconds, fs));
  MultiSignal in(kFdnChannels), fdn_out;
  for (std::size_t start = 0; start < frames; start += block) {
    const std::size_t len = std::min(block, frames - start);
    for (std::size_t c = 0; c < kFdnChannels; ++c) {
      in[c].assign(len, 0.0);
      for (const auto& tap : injection.channels[c]) {
        const std::size_t at = to_samples(tap.delay, fs);
        for (std::size_t i = 0; i < tap.pulse.size(); ++i) {
          if (at + i >= start && at + i < start + len) in[c][at + i - start] += tap.pulse[i];
        }
      }
    }
    fdn.run(in, fdn_out, len);
    const MultiSignal mixed = downmix_channels(fdn_out, plan, k);
    for (std::size_t m = 0; m < k; ++m) {
      const std::size_t v = slot[m];
      Signal& hist = history[v];
      Signal x(hist);
      x.insert(x.end(), mixed[m].begin(), mixed[m].end());
      const Signal y = fir_filter(x, filters[v]);
      std::copy(y.end() - static_cast<std::ptrdiff_t>(len), y.end(),
                out[v].signal.begin() + static_cast<std::ptrdiff_t>(start));
      std::copy(x.end() - static_cast<std::ptrdiff_t>(hist.size()), x.end(), hist.begin());
    }
  }
  return out;
}

Mrir render_mrir(const ShoeboxRoom& room, const Vec3& source, const Pose& receiver, std::size_t k,
                 double fs, double duration_seconds, std::uint64_t seed,
                 const LoudspeakerLayout& layout, const RenderOptions& options) {
  if (!is_supported_vrs_count(k)) throw InvalidArgument("unsupported K " + std::to_string(k));
  if (!(duration_seconds > 0.0)) throw InvalidArgument("render duration must be > 0");
  if (!(fs >= 8000.0)) throw InvalidArgument("fs must be >= 8 kHz");
  const std::size_t frames = to_samples(duration_seconds, fs);
  const double direct_delay = norm(source - receiver.position) / kSpeedOfSound;
  const std::size_t direct_sample = to_samples(direct_delay, fs);
  if (direct_sample >= frames) throw InvalidArgument("render is shorter than the direct-sound delay");

  const VbapPanner panner(layout);
  std::vector<VirtualSource> sources =
      early_sources(room, source, receiver.position, fs, options.direct, options.early);

  Mrir mrir;
  mrir.fs = fs;
  MrirMetadata& meta = mrir.meta;
  meta.direct_sample = direct_sample;
  for (const auto& s : sources) {
    meta.early_end_sample = std::max(meta.early_end_sample, s.offset + s.signal.size());
  }
  if (options.tail) {
    auto tail = tail_sources(room, source, receiver.position, k, fs, frames, seed, options.isotropic);
    meta.tail_start_sample = frames;
    for (const auto& t : tail) {
      const auto nz = std::find_if(t.signal.begin(), t.signal.end(), [](double v) { return v != 0.0; });
      meta.tail_start_sample =
          std::min(meta.tail_start_sample, static_cast<std::size_t>(nz - t.signal.begin()));
    }
    std::move(tail.begin(), tail.end(), std::back_inserter(sources));
  }
  mrir.channels = pan_sources(sources, panner, receiver.yaw_deg, frames);

  meta.layout = layout.name;
  meta.channels = layout.size();
  meta.frames = frames;
  meta.fs = fs;
  meta.k = k;
  meta.seed = seed;
  meta.isotropic = options.isotropic;
  meta.room_dims = room.dims();
  meta.source = source;
  meta.receiver = receiver;
  meta.rt60 = rt60_target(room);
  meta.note =
      "VBAP coloration compensation is not applied; all virtual sources are rendered at the array "
      "radius.";
  return mrir;
}

}  // namespace vrs
