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
#include <vector>

namespace vrs {

using Signal = std::vector<double>;
using MultiSignal = std::vector<Signal>;

/// Causal FIR filter; output has the length of `x`.
Signal fir_filter(std::span<const double> x, std::span<const double> h);

/// Full linear convolution, length a + b - 1 (empty if either is empty).
/// Direct summation when one operand is short, FFT overlap-add otherwise.
Signal convolve(std::span<const double> a, std::span<const double> b);

/// Direct-form full convolution; reference for tests and short kernels.
Signal convolve_direct(std::span<const double> a, std::span<const double> b);

Signal convolve_fft(std::span<const double> a, std::span<const double> b);

}  // namespace vrs
