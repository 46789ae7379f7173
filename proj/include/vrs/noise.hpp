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

#include <cstdint>
#include <random>
#include <span>

namespace vrs {

/// Unit-variance Gaussian noise. The engine is std::mt19937_64 seeded with
/// splitmix64(seed, stream); normals come from the Box-Muller transform on
/// 53-bit uniforms, so sequences are identical on every conforming platform
/// (std::normal_distribution is not).
class GaussianNoise {
 public:
  GaussianNoise(std::uint64_t seed, std::uint64_t stream = 0);

  double next();
  void fill(std::span<double> out);

 private:
  double uniform();  // (0, 1]

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vrs
