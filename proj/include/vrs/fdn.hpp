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

// Feedback delay network for the late tail.
//
// The network always runs with 96 channels. Delays are derived from the room:
// wall-to-wall path lengths (edges and diagonals of the box), rescaled so
// their mean equals the mean free path 4V/S, jittered, then snapped to
// distinct primes. Each channel's loop filter attenuates by 60 dB per RT60 of
// its band. The default feedback matrix is a normalised 96 x 96 Hadamard
// matrix, which spreads every channel into all others on each pass; the
// Householder reflection I - 2/N 1 1^T is available but mixes weakly at this
// size (its off-diagonal entries are 2/96). Fewer virtual reverb sources are obtained by summing pairs
// of output channels, level by level, 96 -> 48 -> 24 -> 12 -> 6.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vrs/absorption.hpp"
#include "vrs/convolve.hpp"
#include "vrs/geometry.hpp"

namespace vrs {

inline constexpr std::size_t kFdnChannels = 96;

enum class FeedbackMatrix { Hadamard, Householder, Identity };

/// v <- Q v in place. Hadamard is the 96 x 96 Paley(12) x Sylvester(8)
/// matrix scaled by 1/sqrt(96); `scratch` must hold v.size() values.
void apply_feedback(FeedbackMatrix kind, std::span<double> v, std::span<double> scratch);

struct FdnConfig {
  double fs = 44100.0;
  std::vector<std::size_t> delays;   // samples, pairwise distinct, >= 1
  std::vector<BandArray> loop_gains; // per channel, per band, per pass
  std::vector<Signal> loop_filters;  // per channel FIR realising loop_gains
  FeedbackMatrix feedback = FeedbackMatrix::Hadamard;
  std::size_t max_delay = 0;         // buffer bound, samples

  std::size_t channels() const { return delays.size(); }
};

/// Throws ConfigError on inconsistent sizes, repeated or zero delays, or a
/// delay above max_delay.
void validate(const FdnConfig& config);

/// Eyring: 0.161 V / (-S ln(1 - mean alpha)) per band; 0 where mean alpha is 1.
BandArray rt60_target(const ShoeboxRoom& room);

struct FdnDesignOptions {
  std::size_t channels = kFdnChannels;
  double max_delay_seconds = 1.0;
  std::uint64_t jitter_seed = 0x9E3779B97F4A7C15ull;
  bool lossless = false;  // unity loop gains
};

/// Throws InvalidArgument for fs < 8 kHz, ConfigError if a delay exceeds the buffer.
FdnConfig design_fdn(const ShoeboxRoom& room, double fs, const FdnDesignOptions& options = {});

/// Stateful network; one instance per thread. Successive run() calls continue
/// the recursion, so long renders can be streamed in blocks.
class FeedbackDelayNetwork {
 public:
  explicit FeedbackDelayNetwork(FdnConfig config);

  const FdnConfig& config() const { return config_; }

  /// Advances `frames` samples. Each channel of `in` is added after the
  /// feedback mix and may be shorter than `frames` (zeros beyond its end) or
  /// empty. `out` is resized to channels x frames and receives the filtered
  /// delay-line outputs.
  void run(const MultiSignal& in, MultiSignal& out, std::size_t frames);

  /// Sum of squares of everything held in the delay lines.
  double stored_energy() const;

  void reset();

 private:
  void run_chunk(const MultiSignal& in, std::size_t in_offset, MultiSignal& out,
                 std::size_t out_offset, std::size_t n);

  FdnConfig config_;
  std::size_t chunk_ = 1;              // <= shortest delay
  std::vector<Signal> lines_;
  std::vector<std::size_t> pos_;
  std::vector<Signal> reversed_taps_;
  std::vector<Signal> filter_in_;      // taps-1 samples of history + one chunk
  Signal mix_;
  Signal scratch_;
};

/// Runs a fresh network for `frames` samples. Inputs shorter than `frames`
/// are zero-extended; `inputs.size()` must equal the channel count.
MultiSignal process(const FdnConfig& config, const MultiSignal& inputs, std::size_t frames);

// --- Downmix ---------------------------------------------------------------

struct DownmixPlan {
  struct Level {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;  // into previous level
    std::vector<Vec3> directions;                            // normalised pair sums
  };
  std::vector<Vec3> base_directions;
  std::vector<Level> levels;  // levels[i] has base/2^(i+1) channels

  /// Directions at channel count k (k = base count gives base_directions).
  const std::vector<Vec3>& directions(std::size_t k) const;
};

/// Greedy minimum-angle pairing per level (ties by index) down to `min_channels`.
DownmixPlan make_downmix_plan(std::span<const Vec3> directions, std::size_t min_channels = 6);

/// Sample-wise pair sums, level by level, without scaling. Works on any block
/// length. Throws InvalidArgument if k is not reachable by halving.
MultiSignal downmix_channels(const MultiSignal& signals, const DownmixPlan& plan, std::size_t k);

struct VrsSignals {
  double fs = 0.0;
  MultiSignal channels;
  std::vector<Vec3> directions;
};

VrsSignals downmix(const MultiSignal& signals, const DownmixPlan& plan, std::size_t k, double fs);

/// Filters VRS k with band amplitudes sqrt(1 - a_k(b)).
VrsSignals apply_output_filters(const VrsSignals& signals, const SampledAbsorption& sampled);

/// sqrt(1 - a) per band.
BandArray reflection_gains(const BandArray& absorption);

}  // namespace vrs
