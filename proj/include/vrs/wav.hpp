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

#include <filesystem>

#include "vrs/convolve.hpp"

namespace vrs {

struct AudioData {
  double fs = 0.0;
  MultiSignal channels;  // channel-major; all the same length
  std::size_t frames() const { return channels.empty() ? 0 : channels.front().size(); }
};

/// Writes 32-bit IEEE float RIFF/WAVE (WAVE_FORMAT_EXTENSIBLE above two
/// channels). Throws FormatError on I/O failure or ragged channels.
void write_wav(const std::filesystem::path& path, const AudioData& audio);

/// Reads 16/24/32-bit PCM and 32/64-bit float WAVE files, plain or extensible.
AudioData read_wav(const std::filesystem::path& path);

}  // namespace vrs
