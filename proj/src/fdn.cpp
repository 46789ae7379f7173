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

#include "vrs/fdn.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "vrs/band_filter.hpp"
#include "vrs/errors.hpp"
#include "vrs/ism.hpp"
#include "vrs/simd/kernels.hpp"

namespace vrs {
namespace {

constexpr std::size_t kMaxChunk = 1024;

bool is_prime(std::size_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::size_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

// Nearest prime not in `used`, searching outward (lower candidate first).
std::size_t nearest_free_prime(std::size_t n, const std::set<std::size_t>& used) {
  for (std::size_t step = 0;; ++step) {
    if (step <= n && n - step >= 2 && is_prime(n - step) && !used.contains(n - step)) {
      return n - step;
    }
    if (is_prime(n + step) && !used.contains(n + step)) return n + step;
  }
}

// Edges, face diagonals and the space diagonal of the box.
std::array<double, 7> path_lengths(const Vec3& d) {
  return {d.x,
          d.y,
          d.z,
          std::hypot(d.x, d.y),
          std::hypot(d.x, d.z),
          std::hypot(d.y, d.z),
          std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z)};
}

// Paley type I Hadamard matrix of order 12 (q = 11), row-major.
std::array<double, 144> paley12() {
  constexpr int q = 11;
  auto chi = [](int a) {
    a = ((a % q) + q) % q;
    if (a == 0) return 0;
    for (int x = 1; x < q; ++x) {
      if ((x * x) % q == a) return 1;
    }
    return -1;
  };
  std::array<double, 144> h{};
  for (int i = 0; i < 12; ++i) {
    for (int j = 0; j < 12; ++j) {
      double s = 0.0;
      if (i == 0 && j > 0) s = 1.0;
      else if (j == 0 && i > 0) s = -1.0;
      else if (i > 0 && j > 0) s = chi(j - i);
      h[static_cast<std::size_t>(i * 12 + j)] = s + (i == j ? 1.0 : 0.0);
    }
  }
  return h;
}

}  // namespace

void apply_feedback(FeedbackMatrix kind, std::span<double> v, std::span<double> scratch) {
  const std::size_t n = v.size();
  switch (kind) {
    case FeedbackMatrix::Identity:
      return;
    case FeedbackMatrix::Householder:
      simd::kernels().householder(v.data(), n);
      return;
    case FeedbackMatrix::Hadamard: {
      if (n != kFdnChannels) throw ConfigError("Hadamard feedback needs 96 channels");
      static const std::array<double, 144> h12 = paley12();
      // v viewed as 12 x 8 (row-major): H12 across rows, fast Walsh-Hadamard along columns.
      const auto& k = simd::kernels();
      for (std::size_t r = 0; r < 12; ++r) {
        double* row = v.data() + 8 * r;
        for (std::size_t len = 1; len < 8; len <<= 1) {
          for (std::size_t i = 0; i < 8; i += 2 * len) {
            for (std::size_t j = i; j < i + len; ++j) {
              const double a = row[j], b = row[j + len];
              row[j] = a + b;
              row[j + len] = a - b;
            }
          }
        }
      }
      std::fill(scratch.begin(), scratch.begin() + 96, 0.0);
      for (std::size_t r = 0; r < 12; ++r) {
        for (std::size_t c = 0; c < 12; ++c) {
          const double g = h12[r * 12 + c];
          k.axpy(g, v.data() + 8 * c, scratch.data() + 8 * r, 8);
        }
      }
      const double scale = 1.0 / std::sqrt(96.0);
      for (std::size_t i = 0; i < 96; ++i) v[i] = scratch[i] * scale;
      return;
    }
  }
}

void validate(const FdnConfig& config) {
  const std::size_t n = config.channels();
  if (n == 0) throw ConfigError("FDN has no channels");
  if (config.feedback == FeedbackMatrix::Hadamard && n != kFdnChannels) {
    throw ConfigError("Hadamard feedback needs 96 channels");
  }
  if (config.loop_gains.size() != n || config.loop_filters.size() != n) {
    throw ConfigError("FDN loop gain/filter count does not match channel count");
  }
  std::set<std::size_t> seen;
  for (std::size_t m : config.delays) {
    if (m == 0) throw ConfigError("FDN delay must be >= 1 sample");
    if (m > config.max_delay) {
      throw ConfigError("FDN delay " + std::to_string(m) + " exceeds buffer of " +
                        std::to_string(config.max_delay) + " samples");
    }
    if (!seen.insert(m).second) throw ConfigError("FDN delays must be pairwise distinct");
  }
  for (const auto& h : config.loop_filters) {
    if (h.empty()) throw ConfigError("empty FDN loop filter");
  }
}

BandArray rt60_target(const ShoeboxRoom& room) {
  const double s = room.surface_area();
  BandArray rt{};
  for (std::size_t b = 0; b < kNumBands; ++b) {
    double weighted = 0.0;
    for (std::size_t w = 0; w < kNumWalls; ++w) {
      weighted += room.wall_area(static_cast<Wall>(w)) * room.absorption()[w][b];
    }
    const double mean_alpha = weighted / s;
    rt[b] = mean_alpha >= 1.0 ? 0.0 : 0.161 * room.volume() / (-s * std::log1p(-mean_alpha));
  }
  return rt;
}

FdnConfig design_fdn(const ShoeboxRoom& room, double fs, const FdnDesignOptions& options) {
  if (!(fs >= 8000.0)) throw InvalidArgument("FDN sample rate must be >= 8 kHz");
  if (options.channels == 0) throw InvalidArgument("FDN needs at least one channel");

  const auto base = path_lengths(room.dims());
  double base_mean = 0.0;
  for (double l : base) base_mean += l;
  base_mean /= static_cast<double>(base.size());
  const double mean_free_path = 4.0 * room.volume() / room.surface_area();
  const double scale = mean_free_path / base_mean;

  FdnConfig cfg;
  cfg.fs = fs;
  cfg.max_delay = static_cast<std::size_t>(std::ceil(options.max_delay_seconds * fs));
  std::mt19937_64 rng(options.jitter_seed);
  std::set<std::size_t> used;
  for (std::size_t i = 0; i < options.channels; ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double length = base[i % base.size()] * scale * (1.0 + 0.2 * (u - 0.5));
    const auto samples =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(length / kSpeedOfSound * fs)));
    const std::size_t m = nearest_free_prime(samples, used);
    used.insert(m);
    cfg.delays.push_back(m);
  }

  const BandArray rt = rt60_target(room);
  for (std::size_t m : cfg.delays) {
    BandArray g{};
    for (std::size_t b = 0; b < kNumBands; ++b) {
      if (options.lossless) {
        g[b] = 1.0;
      } else if (rt[b] > 0.0) {
        g[b] = std::pow(10.0, -3.0 * (static_cast<double>(m) / fs) / rt[b]);
      } else {
        g[b] = 0.0;
      }
    }
    cfg.loop_gains.push_back(g);
    cfg.loop_filters.push_back(design_band_filter(g, fs));
  }
  validate(cfg);
  return cfg;
}

FeedbackDelayNetwork::FeedbackDelayNetwork(FdnConfig config) : config_(std::move(config)) {
  validate(config_);
  const std::size_t n = config_.channels();
  chunk_ = std::min(kMaxChunk, *std::min_element(config_.delays.begin(), config_.delays.end()));
  lines_.resize(n);
  pos_.assign(n, 0);
  reversed_taps_.resize(n);
  filter_in_.resize(n);
  for (std::size_t c = 0; c < n; ++c) {
    lines_[c].assign(config_.delays[c], 0.0);
    reversed_taps_[c].assign(config_.loop_filters[c].rbegin(), config_.loop_filters[c].rend());
    filter_in_[c].assign(reversed_taps_[c].size() - 1 + chunk_, 0.0);
  }
  mix_.assign(n, 0.0);
  scratch_.assign(n, 0.0);
}

void FeedbackDelayNetwork::reset() {
  for (auto& l : lines_) std::fill(l.begin(), l.end(), 0.0);
  for (auto& f : filter_in_) std::fill(f.begin(), f.end(), 0.0);
  std::fill(pos_.begin(), pos_.end(), 0);
}

double FeedbackDelayNetwork::stored_energy() const {
  const auto& k = simd::kernels();
  double e = 0.0;
  for (const auto& l : lines_) e += k.sum_squares(l.data(), l.size());
  return e;
}

void FeedbackDelayNetwork::run(const MultiSignal& in, MultiSignal& out, std::size_t frames) {
  const std::size_t n = config_.channels();
  if (in.size() != n) {
    throw InvalidArgument("FDN input has " + std::to_string(in.size()) + " channels, expected " +
                          std::to_string(n));
  }
  out.resize(n);
  for (auto& o : out) o.assign(frames, 0.0);
  for (std::size_t done = 0; done < frames;) {
    const std::size_t len = std::min(chunk_, frames - done);
    run_chunk(in, done, out, done, len);
    done += len;
  }
}

void FeedbackDelayNetwork::run_chunk(const MultiSignal& in, std::size_t in_offset, MultiSignal& out,
                                     std::size_t out_offset, std::size_t n) {
  const auto& k = simd::kernels();
  const std::size_t channels = config_.channels();

  // Every read in this chunk was written at least one full delay ago.
  for (std::size_t c = 0; c < channels; ++c) {
    const std::size_t taps = reversed_taps_[c].size();
    Signal& hist = filter_in_[c];
    const Signal& line = lines_[c];
    const std::size_t m = line.size();
    for (std::size_t t = 0; t < n; ++t) hist[taps - 1 + t] = line[(pos_[c] + t) % m];
    double* y = out[c].data() + out_offset;
    if (taps == 1) {
      const double g = reversed_taps_[c][0];
      for (std::size_t t = 0; t < n; ++t) y[t] = g * hist[t];
    } else {
      for (std::size_t t = 0; t < n; ++t) y[t] = k.dot(hist.data() + t, reversed_taps_[c].data(), taps);
    }
    std::copy(hist.begin() + static_cast<std::ptrdiff_t>(n),
              hist.begin() + static_cast<std::ptrdiff_t>(n + taps - 1), hist.begin());
  }

  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t c = 0; c < channels; ++c) mix_[c] = out[c][out_offset + t];
    apply_feedback(config_.feedback, mix_, scratch_);
    const std::size_t at = in_offset + t;
    for (std::size_t c = 0; c < channels; ++c) {
      if (at < in[c].size()) mix_[c] += in[c][at];
      Signal& line = lines_[c];
      line[(pos_[c] + t) % line.size()] = mix_[c];
    }
  }
  for (std::size_t c = 0; c < channels; ++c) pos_[c] = (pos_[c] + n) % lines_[c].size();
}

MultiSignal process(const FdnConfig& config, const MultiSignal& inputs, std::size_t frames) {
  FeedbackDelayNetwork net(config);
  MultiSignal out;
  net.run(inputs, out, frames);
  return out;
}

// --- Downmix ---------------------------------------------------------------

const std::vector<Vec3>& DownmixPlan::directions(std::size_t k) const {
  if (k == base_directions.size()) return base_directions;
  for (const auto& level : levels) {
    if (level.directions.size() == k) return level.directions;
  }
  throw InvalidArgument("channel count " + std::to_string(k) + " is not reachable by halving " +
                        std::to_string(base_directions.size()));
}

DownmixPlan make_downmix_plan(std::span<const Vec3> directions, std::size_t min_channels) {
  if (directions.empty()) throw InvalidArgument("downmix needs at least one direction");
  DownmixPlan plan;
  plan.base_directions.assign(directions.begin(), directions.end());
  std::vector<Vec3> current = plan.base_directions;

  while (current.size() % 2 == 0 && current.size() / 2 >= min_channels) {
    const std::size_t n = current.size();
    std::vector<std::tuple<double, std::size_t, std::size_t>> candidates;
    candidates.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        candidates.emplace_back(angle_between(current[i], current[j]), i, j);
      }
    }
    std::sort(candidates.begin(), candidates.end());

    std::vector<bool> taken(n, false);
    DownmixPlan::Level level;
    for (const auto& [angle, i, j] : candidates) {
      if (taken[i] || taken[j]) continue;
      taken[i] = taken[j] = true;
      level.pairs.emplace_back(i, j);
    }
    std::sort(level.pairs.begin(), level.pairs.end());
    for (const auto& [i, j] : level.pairs) {
      const Vec3 sum = current[i] + current[j];
      level.directions.push_back(norm(sum) > 1e-12 ? normalized(sum) : current[i]);
    }
    current = level.directions;
    plan.levels.push_back(std::move(level));
  }
  return plan;
}

MultiSignal downmix_channels(const MultiSignal& signals, const DownmixPlan& plan, std::size_t k) {
  if (signals.size() != plan.base_directions.size()) {
    throw InvalidArgument("downmix input has " + std::to_string(signals.size()) +
                          " channels, plan expects " + std::to_string(plan.base_directions.size()));
  }
  (void)plan.directions(k);  // throws if unreachable
  MultiSignal current = signals;
  for (const auto& level : plan.levels) {
    if (current.size() == k) break;
    MultiSignal next;
    next.reserve(level.pairs.size());
    for (const auto& [i, j] : level.pairs) {
      if (current[i].size() != current[j].size()) throw InvalidArgument("ragged downmix input");
      Signal sum = current[i];
      for (std::size_t t = 0; t < sum.size(); ++t) sum[t] += current[j][t];
      next.push_back(std::move(sum));
    }
    current = std::move(next);
  }
  return current;
}

VrsSignals downmix(const MultiSignal& signals, const DownmixPlan& plan, std::size_t k, double fs) {
  VrsSignals out;
  out.fs = fs;
  out.channels = downmix_channels(signals, plan, k);
  out.directions = plan.directions(k);
  return out;
}

BandArray reflection_gains(const BandArray& absorption) {
  BandArray g{};
  for (std::size_t b = 0; b < kNumBands; ++b) g[b] = std::sqrt(std::max(0.0, 1.0 - absorption[b]));
  return g;
}

VrsSignals apply_output_filters(const VrsSignals& signals, const SampledAbsorption& sampled) {
  if (sampled.size() != signals.channels.size()) {
    throw InvalidArgument("sampled absorption has " + std::to_string(sampled.size()) +
                          " entries for " + std::to_string(signals.channels.size()) + " VRS");
  }
  VrsSignals out = signals;
  for (std::size_t k = 0; k < out.channels.size(); ++k) {
    const Signal h = design_band_filter(reflection_gains(sampled[k]), signals.fs);
    out.channels[k] = fir_filter(signals.channels[k], h);
  }
  return out;
}

}  // namespace vrs
