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


#include "vrs/stimulus.hpp"

#include <cmath>

#include "vrs/errors.hpp"

namespace vrs {

Signal pink_pulse(double fs, double decay_seconds) {
  if (!(fs > 0.0) || !(decay_seconds > 0.0)) throw InvalidArgument("fs and decay time must be > 0");
  const auto n60 = static_cast<std::size_t>(std::llround(decay_seconds * fs));
  if (n60 < 2) throw InvalidArgument("decay time shorter than two samples");

  // Taylor coefficients of (1 - z^-1)^(-1/2): c_0 = 1, c_n = c_{n-1} (n - 1/2) / n.
  Signal c(2 * n60 + 1);
  c[0] = 1.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double n = static_cast<double>(i);
    c[i] = c[i - 1] * (n - 0.5) / n;
  }
  // Window 10^(-lambda n) chosen so that c[n60] * window = 10^-3.
  const double lambda = (3.0 + std::log10(c[n60])) / static_cast<double>(n60);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= std::pow(10.0, -lambda * static_cast<double>(i));
  return c;
}

}  // namespace vrs
