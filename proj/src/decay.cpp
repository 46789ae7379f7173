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


#include "vrs/decay.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vrs/errors.hpp"
#include "vrs/fft.hpp"

namespace vrs {
namespace {

constexpr double kEnvelopeWindowSeconds = 0.010;
constexpr double kFitStartDb = -5.0;
constexpr double kFitEndDb = -35.0;

// Throws unless the 10 ms energy envelope falls by 35 dB after its peak.
void check_envelope_span(std::span<const double> x, std::size_t win) {
  std::vector<double> env;
  for (std::size_t i = 0; i + win <= x.size(); i += win) {
    double e = 0.0;
    for (std::size_t j = i; j < i + win; ++j) e += x[j] * x[j];
    env.push_back(e);
  }
  if (env.empty()) throw NumericError("insufficient decay: signal shorter than one window");
  const auto peak = std::max_element(env.begin(), env.end());
  const double floor_e = *std::min_element(peak, env.end());
  if (!(*peak > 0.0) || (floor_e > 0.0 && 10.0 * std::log10(*peak / floor_e) < -kFitEndDb)) {
    throw NumericError("insufficient decay: envelope spans less than 35 dB");
  }
}

}  // namespace

Signal octave_band_filter(std::span<const double> x, double center_hz, double fs) {
  if (!(center_hz > 0.0) || !(center_hz < fs / 2.0)) {
    throw InvalidArgument("band center must lie in (0, fs/2)");
  }
  if (x.empty()) return {};
  const std::size_t n = next_pow2(2 * x.size());
  RealFft fft(n);
  std::vector<cplx> spec(fft.bins());
  fft.forward(x, spec);
  // Band edges at center / sqrt(2) and center * sqrt(2): |H|^2 = 1 / (1 + Q^6).
  const double bw = 1.0 / std::sqrt(2.0);
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double f = static_cast<double>(k) * fs / static_cast<double>(n);
    if (f <= 0.0) {
      spec[k] = 0.0;
      continue;
    }
    const double q = (f / center_hz - center_hz / f) / bw;
    spec[k] *= 1.0 / std::sqrt(1.0 + std::pow(q * q, 3));
  }
  Signal y(x.size());
  fft.inverse(spec, y);
  return y;
}

Signal schroeder_edc_db(std::span<const double> ir) {
  Signal edc(ir.size());
  double acc = 0.0;
  for (std::size_t i = ir.size(); i-- > 0;) {
    acc += ir[i] * ir[i];
    edc[i] = acc;
  }
  const double total = ir.empty() ? 0.0 : edc[0];
  for (auto& e : edc) {
    e = (total > 0.0 && e > 0.0) ? 10.0 * std::log10(e / total)
                                 : -std::numeric_limits<double>::infinity();
  }
  return edc;
}

double measure_rt60(std::span<const double> ir, double center_hz, double fs) {
  const Signal y = octave_band_filter(ir, center_hz, fs);

  const auto win = std::max<std::size_t>(1, static_cast<std::size_t>(kEnvelopeWindowSeconds * fs));
  check_envelope_span(ir, win);
  check_envelope_span(y, win);

  const Signal edc = schroeder_edc_db(y);
  std::size_t start = edc.size(), end = edc.size();
  for (std::size_t i = 0; i < edc.size(); ++i) {
    if (start == edc.size() && edc[i] <= kFitStartDb) start = i;
    if (edc[i] <= kFitEndDb) {
      end = i;
      break;
    }
  }
  if (end == edc.size() || end <= start + 1) {
    throw NumericError("insufficient decay: energy decay curve does not reach -35 dB");
  }

  // Least-squares line through (t, EDC dB) on [start, end].
  double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
  const double count = static_cast<double>(end - start + 1);
  for (std::size_t i = start; i <= end; ++i) {
    const double t = static_cast<double>(i - start) / fs;
    st += t;
    sy += edc[i];
    stt += t * t;
    sty += t * edc[i];
  }
  const double slope = (count * sty - st * sy) / (count * stt - st * st);
  if (!(slope < 0.0)) throw NumericError("insufficient decay: non-negative decay slope");
  return -60.0 / slope;
}

}  // namespace vrs
