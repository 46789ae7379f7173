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


#include "vrs/binaural.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "vrs/absorption.hpp"
#include "vrs/band_filter.hpp"
#include "vrs/errors.hpp"
#include "vrs/fdn.hpp"
#include "vrs/ism.hpp"
#include "vrs/noise.hpp"
#include "vrs/simd/kernels.hpp"
#include "vrs/wav.hpp"

namespace vrs {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kSincHalfWidth = 16;

const Vec3 kLeftEar{0.0, 1.0, 0.0};
const Vec3 kRightEar{0.0, -1.0, 0.0};

std::size_t scaled(std::size_t samples_at_44k1, double fs) {
  return std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(static_cast<double>(samples_at_44k1) * fs / 44100.0)));
}

// Blackman-windowed sinc impulse delayed by `delay` samples.
Signal fractional_delay(double delay, std::size_t length) {
  Signal h(length, 0.0);
  const double w = static_cast<double>(kSincHalfWidth);
  const auto first = static_cast<std::ptrdiff_t>(std::floor(delay - w));
  const auto last = static_cast<std::ptrdiff_t>(std::ceil(delay + w));
  for (std::ptrdiff_t n = std::max<std::ptrdiff_t>(0, first);
       n <= last && n < static_cast<std::ptrdiff_t>(length); ++n) {
    const double x = static_cast<double>(n) - delay;
    if (std::abs(x) >= w) continue;
    const double sinc = x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x);
    const double u = (x + w) / (2.0 * w);
    const double win = 0.42 - 0.5 * std::cos(2.0 * kPi * u) + 0.08 * std::cos(4.0 * kPi * u);
    h[static_cast<std::size_t>(n)] = sinc * win;
  }
  return h;
}

// One-pole/one-zero shelf (2 w0 + alpha s) / (2 w0 + s), w0 = c / a,
// through the bilinear transform. alpha = 2 boosts, alpha < 1 shadows.
void head_shadow(Signal& x, double incidence_rad, double fs) {
  const double alpha = 1.05 + 0.95 * std::cos(incidence_rad * (180.0 / 150.0));
  const double w0 = kSpeedOfSound / kHeadRadius;
  const double k = 2.0 * fs;
  const double a0 = 2.0 * w0 + k, a1 = 2.0 * w0 - k;
  const double b0 = (2.0 * w0 + alpha * k) / a0, b1 = (2.0 * w0 - alpha * k) / a0;
  const double p = a1 / a0;
  double x1 = 0.0, y1 = 0.0;
  for (auto& v : x) {
    const double y = b0 * v + b1 * x1 - p * y1;
    x1 = v;
    y1 = y;
    v = y;
  }
}

Signal sphere_ear(const Vec3& direction, const Vec3& ear_axis, double fs) {
  const std::size_t length = scaled(256, fs);
  const double bulk = static_cast<double>(scaled(48, fs));
  const double incidence = angle_between(direction, ear_axis);
  Signal h = fractional_delay(bulk + woodworth_delay(direction, ear_axis) * fs, length);
  head_shadow(h, incidence, fs);
  return h;
}

std::vector<double> hann(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * static_cast<double>(i) / static_cast<double>(n));
  }
  return w;
}

void require_energy(const WelchSpectra& s) {
  double el = 0.0, er = 0.0;
  for (std::size_t i = 0; i < s.gll.size(); ++i) el += s.gll[i], er += s.grr[i];
  if (!(el > 0.0)) throw NumericError("left channel has no energy");
  if (!(er > 0.0)) throw NumericError("right channel has no energy");
}

}  // namespace

std::size_t HrirSet::nearest(const Vec3& direction) const {
  if (entries.empty()) throw InvalidArgument("empty HRIR set");
  std::size_t best = 0;
  double best_dot = -2.0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const double d = dot(direction, entries[i].direction);
    if (d > best_dot) best_dot = d, best = i;
  }
  return best;
}

HrirSet load_hrir_set(const std::filesystem::path& directory) {
  const auto manifest = directory / "manifest.txt";
  std::ifstream in(manifest);
  if (!in) throw FormatError("cannot open " + manifest.string());
  HrirSet set;
  set.provenance = "file:" + directory.string();
  std::string line;
  std::size_t lineno = 0;
  bool have_fs = false;
  std::size_t length = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string first, extra;
    if (!(ss >> first)) continue;
    auto fail = [&](const std::string& what) {
      return FormatError(manifest.string() + ":" + std::to_string(lineno) + ": " + what);
    };
    if (!have_fs) {
      if (first != "fs_hz" || !(ss >> set.fs) || (ss >> extra) || !(set.fs > 0.0)) {
        throw fail("expected header 'fs_hz <value>'");
      }
      have_fs = true;
      continue;
    }
    double az = 0.0, el = 0.0;
    std::string left, right;
    std::istringstream row(line);
    if (!(row >> az >> el >> left >> right) || (row >> extra)) {
      throw fail("expected 'azimuth_deg elevation_deg left_file right_file'");
    }
    HrirEntry entry;
    entry.direction = direction_from_degrees(az, el);
    for (auto [file, dest] : {std::pair{&left, &entry.left}, std::pair{&right, &entry.right}}) {
      const auto path = directory / *file;
      if (!std::filesystem::exists(path)) throw fail("missing file " + path.string());
      AudioData audio = read_wav(path);
      if (audio.channels.size() != 1) throw fail(path.string() + " is not mono");
      if (audio.fs != set.fs) throw fail(path.string() + " sample rate does not match fs_hz");
      *dest = std::move(audio.channels[0]);
    }
    if (length == 0) length = entry.left.size();
    if (entry.left.size() != length || entry.right.size() != length || length == 0) {
      throw fail("HRIR lengths differ");
    }
    set.entries.push_back(std::move(entry));
  }
  if (!have_fs) throw FormatError(manifest.string() + ": missing 'fs_hz' header");
  if (set.entries.empty()) throw FormatError(manifest.string() + ": no HRIR entries");
  return set;
}

double woodworth_delay(const Vec3& direction, const Vec3& ear_axis) {
  const double gamma = angle_between(normalized(direction), ear_axis);
  const double t = kHeadRadius / kSpeedOfSound;
  return gamma <= kPi / 2.0 ? -t * std::cos(gamma) : t * (gamma - kPi / 2.0);
}

StereoSignal sphere_hrir(const Vec3& direction, double fs) {
  if (!(fs > 0.0)) throw InvalidArgument("fs must be > 0");
  const Vec3 d = normalized(direction);
  return {sphere_ear(d, kLeftEar, fs), sphere_ear(d, kRightEar, fs)};
}

HrirSet sphere_hrir_set(std::span<const Vec3> directions, double fs) {
  HrirSet set;
  set.fs = fs;
  set.provenance = "analytic-sphere";
  for (const auto& d : directions) {
    StereoSignal s = sphere_hrir(d, fs);
    set.entries.push_back({normalized(d), std::move(s.left), std::move(s.right)});
  }
  return set;
}

StereoSignal binauralize(const MultiSignal& speakers, const LoudspeakerLayout& layout,
                         const HrirSet& hrirs) {
  if (hrirs.entries.empty()) throw InvalidArgument("empty HRIR set");
  if (speakers.size() != layout.size()) {
    throw InvalidArgument("binauralize: " + std::to_string(speakers.size()) + " channels for a " +
                          std::to_string(layout.size()) + "-speaker layout");
  }
  const std::size_t frames = speakers.empty() ? 0 : speakers[0].size();
  const std::size_t hl = hrirs.entries[0].left.size();
  StereoSignal out{Signal(frames + hl - 1, 0.0), Signal(frames + hl - 1, 0.0)};
  for (std::size_t c = 0; c < speakers.size(); ++c) {
    if (speakers[c].size() != frames) throw InvalidArgument("ragged speaker channels");
    const auto& entry = hrirs.entries[hrirs.nearest(layout.directions[c])];
    const Signal l = convolve(speakers[c], entry.left);
    const Signal r = convolve(speakers[c], entry.right);
    for (std::size_t i = 0; i < l.size() && i < out.left.size(); ++i) out.left[i] += l[i];
    for (std::size_t i = 0; i < r.size() && i < out.right.size(); ++i) out.right[i] += r[i];
  }
  return out;
}

WelchSpectra welch_spectra(std::span<const double> left, std::span<const double> right, double fs) {
  if (left.size() != right.size()) throw InvalidArgument("Welch inputs differ in length");
  const std::size_t win = scaled(kWelchWindow, fs);
  const std::size_t hop = std::max<std::size_t>(1, win / 4);
  if (left.size() < win) throw InvalidArgument("Welch input shorter than one window");

  const std::vector<double> w = hann(win);
  double wss = 0.0;
  for (double v : w) wss += v * v;

  RealFft fft(win);
  const std::size_t bins = fft.bins();
  WelchSpectra s;
  s.fs = fs;
  s.gll.assign(bins, 0.0);
  s.grr.assign(bins, 0.0);
  s.glr.assign(bins, cplx{});
  std::vector<double> xl(win), xr(win);
  std::vector<cplx> fl(bins), fr(bins);
  const auto& k = simd::kernels();
  for (std::size_t start = 0; start + win <= left.size(); start += hop) {
    for (std::size_t i = 0; i < win; ++i) {
      xl[i] = left[start + i] * w[i];
      xr[i] = right[start + i] * w[i];
    }
    fft.forward(xl, fl);
    fft.forward(xr, fr);
    k.cross_spectra(fl.data(), fr.data(), s.gll.data(), s.grr.data(), s.glr.data(), bins);
    ++s.segments;
  }
  // One-sided power spectral density.
  const double norm_factor = 1.0 / (fs * wss * static_cast<double>(s.segments));
  s.freqs.resize(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    const double scale = (b == 0 || b == bins - 1) ? norm_factor : 2.0 * norm_factor;
    s.gll[b] *= scale;
    s.grr[b] *= scale;
    s.glr[b] *= scale;
    s.freqs[b] = static_cast<double>(b) * fs / static_cast<double>(win);
  }
  return s;
}

Curve coherence(const WelchSpectra& s) {
  require_energy(s);
  Curve c{s.freqs, std::vector<double>(s.freqs.size(), 0.0)};
  for (std::size_t b = 0; b < s.freqs.size(); ++b) {
    const double den = std::sqrt(s.gll[b] * s.grr[b]);
    c.values[b] = den > 0.0 ? s.glr[b].real() / den : 0.0;
  }
  return c;
}

Curve coherence(std::span<const double> left, std::span<const double> right, double fs) {
  return coherence(welch_spectra(left, right, fs));
}

Curve ild(const WelchSpectra& s) {
  require_energy(s);
  Curve c{s.freqs, std::vector<double>(s.freqs.size(), 0.0)};
  constexpr double tiny = 1e-300;
  for (std::size_t b = 0; b < s.freqs.size(); ++b) {
    c.values[b] = 10.0 * std::log10((s.gll[b] + tiny) / (s.grr[b] + tiny));
  }
  return c;
}

Curve ild(std::span<const double> left, std::span<const double> right, double fs) {
  return ild(welch_spectra(left, right, fs));
}

Curve octave_smooth(const Curve& curve) {
  const std::size_t n = curve.values.size();
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + curve.values[i];
  Curve out = curve;
  std::size_t lo = 0, hi = 0;  // window [lo, hi)
  for (std::size_t i = 0; i < n; ++i) {
    const double f = curve.freqs[i];
    if (!(f > 0.0)) continue;
    const double f_lo = f / std::numbers::sqrt2, f_hi = f * std::numbers::sqrt2;
    while (lo < n && curve.freqs[lo] < f_lo) ++lo;
    if (hi < i + 1) hi = i + 1;
    while (hi < n && curve.freqs[hi] <= f_hi) ++hi;
    out.values[i] = (prefix[hi] - prefix[lo]) / static_cast<double>(hi - lo);
  }
  return out;
}

namespace {

Curve smoothed_abs_difference(const Curve& a, const Curve& b) {
  if (a.freqs != b.freqs) throw InvalidArgument("curves use different frequency grids");
  Curve d{a.freqs, std::vector<double>(a.values.size())};
  for (std::size_t i = 0; i < d.values.size(); ++i) d.values[i] = std::abs(a.values[i] - b.values[i]);
  return octave_smooth(d);
}

}  // namespace

double divergence_frequency(const Curve& a, const Curve& b, double threshold, double min_hz) {
  const Curve d = smoothed_abs_difference(a, b);
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.freqs[i] >= min_hz && d.values[i] > threshold) return d.freqs[i];
  }
  return std::numeric_limits<double>::infinity();
}

double max_smoothed_difference(const Curve& a, const Curve& b, double lo_hz, double hi_hz) {
  const Curve d = smoothed_abs_difference(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < d.values.size(); ++i) {
    if (d.freqs[i] >= lo_hz && d.freqs[i] <= hi_hz) m = std::max(m, d.values[i]);
  }
  return m;
}

StereoSignal diffuse_field_signals(const DiffuseFieldRequest& req) {
  if (req.room == nullptr || req.layout == nullptr || req.hrirs == nullptr) {
    throw InvalidArgument("diffuse-field request is missing the room, layout or HRIR set");
  }
  if (req.hrirs->entries.empty()) throw InvalidArgument("empty HRIR set");
  if (!(req.duration_seconds > 0.0)) throw InvalidArgument("duration must be > 0");
  const double fs = req.hrirs->fs;
  const DirectionSet set = direction_set(req.k);
  const SampledAbsorption sampled = req.isotropic
                                        ? isotropic_absorption(req.k)
                                        : sample_absorption(*req.room, req.receiver.position, set);
  const VbapPanner panner(*req.layout);

  // Combined per-VRS ear filters: output filter (*) panned HRIR mix.
  std::vector<std::size_t> nearest(req.layout->size());
  for (std::size_t s = 0; s < nearest.size(); ++s) nearest[s] = req.hrirs->nearest(req.layout->directions[s]);
  const std::size_t hl = req.hrirs->entries[0].left.size();
  std::vector<StereoSignal> filters(req.k);
  std::size_t flen = 0;
  for (std::size_t k = 0; k < req.k; ++k) {
    const PanningGains pg = panner.gains(to_listener_frame(set[k], req.receiver.yaw_deg));
    Signal ml(hl, 0.0), mr(hl, 0.0);
    for (std::size_t i = 0; i < 3; ++i) {
      if (pg.gains[i] == 0.0) continue;
      const auto& e = req.hrirs->entries[nearest[pg.speakers[i]]];
      for (std::size_t t = 0; t < hl; ++t) {
        ml[t] += pg.gains[i] * e.left[t];
        mr[t] += pg.gains[i] * e.right[t];
      }
    }
    const Signal h = design_band_filter(reflection_gains(sampled[k]), fs);
    filters[k] = {convolve(h, ml), convolve(h, mr)};
    flen = std::max(flen, filters[k].left.size());
  }

  const auto frames = static_cast<std::size_t>(std::llround(req.duration_seconds * fs));
  const std::size_t nfft = std::max<std::size_t>(8192, next_pow2(4 * flen));
  const std::size_t block = nfft - flen + 1;
  RealFft fft(nfft);
  const std::size_t bins = fft.bins();
  std::vector<std::vector<cplx>> fl(req.k, std::vector<cplx>(bins)), fr = fl;
  for (std::size_t k = 0; k < req.k; ++k) {
    fft.forward(filters[k].left, fl[k]);
    fft.forward(filters[k].right, fr[k]);
  }

  std::vector<GaussianNoise> noise;
  noise.reserve(req.k);
  for (std::size_t k = 0; k < req.k; ++k) noise.emplace_back(req.seed, k);

  const auto& kern = simd::kernels();
  StereoSignal out{Signal(frames, 0.0), Signal(frames, 0.0)};
  Signal buf(block), seg(nfft);
  std::vector<cplx> x(bins), accl(bins), accr(bins);
  for (std::size_t start = 0; start < frames; start += block) {
    const std::size_t len = std::min(block, frames - start);
    std::fill(accl.begin(), accl.end(), cplx{});
    std::fill(accr.begin(), accr.end(), cplx{});
    for (std::size_t k = 0; k < req.k; ++k) {
      noise[k].fill(std::span(buf).first(len));
      fft.forward(std::span<const double>(buf).first(len), x);
      kern.complex_mac(x.data(), fl[k].data(), accl.data(), bins);
      kern.complex_mac(x.data(), fr[k].data(), accr.data(), bins);
    }
    const std::size_t n = std::min(nfft, frames - start);
    fft.inverse(accl, seg);
    for (std::size_t i = 0; i < n; ++i) out.left[start + i] += seg[i];
    fft.inverse(accr, seg);
    for (std::size_t i = 0; i < n; ++i) out.right[start + i] += seg[i];
  }
  return out;
}

DiffuseFieldResult diffuse_field_eval(const DiffuseFieldRequest& request) {
  const StereoSignal ears = diffuse_field_signals(request);
  const WelchSpectra s = welch_spectra(ears.left, ears.right, request.hrirs->fs);
  return {coherence(s), ild(s)};
}

std::string curves_to_csv(const DiffuseFieldResult& result) {
  std::string out = "freq_hz,ic,ild_db\n";
  char line[128];
  for (std::size_t i = 0; i < result.ic.freqs.size(); ++i) {
    std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g\n", result.ic.freqs[i], result.ic.values[i],
                  result.ild.values[i]);
    out += line;
  }
  return out;
}

}  // namespace vrs
