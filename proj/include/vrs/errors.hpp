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

#include <stdexcept>
#include <string>

namespace vrs {

// Bad caller input: unsupported K, out-of-range coefficient, position outside
// the room, unknown scenario key.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Degenerate geometry: coplanar hulls, receiver on a wall plane, singular bases.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed files (WAV, layout, HRIR manifest, scenario).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inconsistent processing configuration (e.g. delay longer than its buffer).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical estimation failures (insufficient decay, zero-energy spectra).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vrs
