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

#include <span>

#include "vrs/convolve.hpp"
#include "vrs/geometry.hpp"

namespace vrs {

/// 256 taps at 44.1 kHz, scaled with the sample rate.
std::size_t band_filter_length(double fs);

/// Target magnitude at `hz`: band gains interpolated linearly in dB over
/// log-frequency, held constant outside 125 Hz..8 kHz.
double band_target_gain(const BandArray& gains, double hz);

/// Minimum-phase FIR (real-cepstrum folding) whose magnitude follows
/// band_target_gain. Flat gains short-circuit to a single exact tap; all-zero
/// gains give a single zero tap.
Signal design_band_filter(const BandArray& gains, double fs);

/// |H(f)| of an FIR, by direct DTFT evaluation.
double fir_magnitude(std::span<const double> h, double hz, double fs);

}  // namespace vrs
