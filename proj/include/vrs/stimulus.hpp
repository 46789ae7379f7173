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

#include "vrs/convolve.hpp"

namespace vrs {

/// Decaying pink pulse: a delta through a 1/sqrt(f) fractional integrator,
/// shaped by an exponential window so the envelope falls from 0 dB FS (peak
/// 1.0 at sample 0) to -60 dB FS at `decay_seconds`. Truncated at twice that.
Signal pink_pulse(double fs = 44100.0, double decay_seconds = 0.036);

}  // namespace vrs
