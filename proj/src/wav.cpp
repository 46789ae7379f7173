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

#include "vrs/wav.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "vrs/errors.hpp"

namespace vrs {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

// KSDATAFORMAT_SUBTYPE_IEEE_FLOAT without the leading format tag.
constexpr std::array<std::uint8_t, 14> kGuidTail = {0x00, 0x00, 0x00, 0x00, 0x10, 0x00, 0x80,
                                                    0x00, 0x00, 0xAA, 0x00, 0x38, 0x9B, 0x71};

void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>(v >> 8));
}
void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
std::uint16_t get_u16(const unsigned char* p) { return static_cast<std::uint16_t>(p[0] | p[1] << 8); }
std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | static_cast<std::uint32_t>(p[1]) << 8 |
         static_cast<std::uint32_t>(p[2]) << 16 | static_cast<std::uint32_t>(p[3]) << 24;
}

}  // namespace

void write_wav(const std::filesystem::path& path, const AudioData& audio) {
  const std::size_t nch = audio.channels.size();
  if (nch == 0 || nch > 65535) throw FormatError("WAV needs 1..65535 channels");
  const std::size_t frames = audio.frames();
  for (const auto& ch : audio.channels) {
    if (ch.size() != frames) throw FormatError("ragged channel lengths");
  }
  const std::uint64_t data_bytes = static_cast<std::uint64_t>(frames) * nch * 4;
  if (data_bytes > 0xFFFFFFF0ull - 80) throw FormatError("WAV data exceeds 4 GiB");

  const bool extensible = nch > 2;
  const std::uint32_t fmt_size = extensible ? 40 : 18;
  const auto rate = static_cast<std::uint32_t>(std::lround(audio.fs));

  std::string hdr;
  hdr += "RIFF";
  put_u32(hdr, static_cast<std::uint32_t>(4 + 8 + fmt_size + 8 + data_bytes));
  hdr += "WAVEfmt ";
  put_u32(hdr, fmt_size);
  put_u16(hdr, extensible ? kFormatExtensible : kFormatFloat);
  put_u16(hdr, static_cast<std::uint16_t>(nch));
  put_u32(hdr, rate);
  put_u32(hdr, static_cast<std::uint32_t>(rate * nch * 4));
  put_u16(hdr, static_cast<std::uint16_t>(nch * 4));
  put_u16(hdr, 32);
  if (extensible) {
    put_u16(hdr, 22);
    put_u16(hdr, 32);   // valid bits
    put_u32(hdr, 0);    // no speaker-position mask
    put_u16(hdr, kFormatFloat);
    hdr.append(reinterpret_cast<const char*>(kGuidTail.data()), kGuidTail.size());
  } else {
    put_u16(hdr, 0);
  }
  hdr += "data";
  put_u32(hdr, static_cast<std::uint32_t>(data_bytes));

  std::string body;
  body.resize(static_cast<std::size_t>(data_bytes));
  char* out = body.data();
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < nch; ++c) {
      const float v = static_cast<float>(audio.channels[c][f]);
      std::uint32_t bits;
      std::memcpy(&bits, &v, 4);
      for (int i = 0; i < 4; ++i) *out++ = static_cast<char>((bits >> (8 * i)) & 0xFF);
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FormatError("cannot open " + path.string() + " for writing");
  os.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
  os.write(body.data(), static_cast<std::streamsize>(body.size()));
  if (!os) throw FormatError("write failed: " + path.string());
}

AudioData read_wav(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw FormatError("cannot open " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t size = bytes.size();
  if (size < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0) {
    throw FormatError(path.string() + ": not a RIFF/WAVE file");
  }

  std::uint16_t format = 0, nch = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= size) {
    const std::uint32_t len = get_u32(p + pos + 4);
    const unsigned char* body = p + pos + 8;
    if (pos + 8 + len > size) throw FormatError(path.string() + ": truncated chunk");
    if (std::memcmp(p + pos, "fmt ", 4) == 0) {
      if (len < 16) throw FormatError(path.string() + ": short fmt chunk");
      format = get_u16(body);
      nch = get_u16(body + 2);
      rate = get_u32(body + 4);
      bits = get_u16(body + 14);
      if (format == kFormatExtensible) {
        if (len < 40) throw FormatError(path.string() + ": short extensible fmt chunk");
        format = get_u16(body + 24);
      }
    } else if (std::memcmp(p + pos, "data", 4) == 0) {
      data = body;
      data_size = len;
    }
    pos += 8 + len + (len & 1);
  }
  if (nch == 0 || rate == 0) throw FormatError(path.string() + ": missing fmt chunk");
  if (data == nullptr) throw FormatError(path.string() + ": missing data chunk");

  const bool is_float = format == kFormatFloat && (bits == 32 || bits == 64);
  const bool is_pcm = format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32);
  if (!is_float && !is_pcm) {
    throw FormatError(path.string() + ": unsupported sample format " + std::to_string(format) +
                      "/" + std::to_string(bits) + " bit");
  }
  const std::size_t bps = bits / 8;
  const std::size_t frames = data_size / (bps * nch);

  AudioData out;
  out.fs = rate;
  out.channels.assign(nch, Signal(frames));
  const unsigned char* s = data;
  for (std::size_t f = 0; f < frames; ++f) {
    for (std::size_t c = 0; c < nch; ++c, s += bps) {
      double v = 0.0;
      if (is_float && bits == 32) {
        float x;
        std::memcpy(&x, s, 4);
        v = x;
      } else if (is_float) {
        std::memcpy(&v, s, 8);
      } else if (bits == 16) {
        v = static_cast<std::int16_t>(get_u16(s)) / 32768.0;
      } else if (bits == 24) {
        std::int32_t x = s[0] | s[1] << 8 | s[2] << 16;
        if (x & 0x800000) x -= 0x1000000;
        v = x / 8388608.0;
      } else {
        v = static_cast<std::int32_t>(get_u32(s)) / 2147483648.0;
      }
      out.channels[c][f] = v;
    }
  }
  return out;
}

}  // namespace vrs
