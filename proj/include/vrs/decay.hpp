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

namespace vrs {

/// Zero-phase octave band-pass around `center_hz` (FFT domain, sixth-order
/// Butterworth-shaped magnitude). Output has the input length.
Signal octave_band_filter(std::span<const double> x, double center_hz, double fs);

/// Schroeder backward-integrated energy decay curve in dB, 0 dB at t = 0.
Signal schroeder_edc_db(std::span<const double> ir);

/// RT60 of the band around `center_hz`: band-pass, backward-integrate, fit a
/// line to the EDC between -5 and -35 dB, extrapolate to 60 dB. Throws
/// NumericError when the short-time envelope does not fall by at least 35 dB
/// or the EDC never reaches -35 dB.
double measure_rt60(std::span<const double> ir, double center_hz, double fs);

}  // namespace vrs
