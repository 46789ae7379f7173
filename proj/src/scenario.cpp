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


#include "vrs/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "vrs/errors.hpp"

namespace vrs {
namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s = {
      {"room",
       {"dims", "alpha", "alpha_neg_x", "alpha_pos_x", "alpha_neg_y", "alpha_pos_y", "alpha_neg_z",
        "alpha_pos_z"}},
      {"source", {"position"}},
      {"receiver", {"position", "yaw_deg"}},
      {"render", {"k", "fs", "seed", "layout", "duration_s"}},
      {"analysis", {"hrir", "duration_s", "isotropic"}},
  };
  return s;
}

constexpr std::array<const char*, kNumWalls> kWallKeys = {"alpha_neg_x", "alpha_pos_x", "alpha_neg_y",
                                                          "alpha_pos_y", "alpha_neg_z", "alpha_pos_z"};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  Reader(std::string name, std::map<std::string, Section> sections)
      : name_(std::move(name)), sections_(std::move(sections)) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  const Entry& require(const std::string& section, const std::string& key) const {
    if (const Entry* e = find(section, key)) return *e;
    throw FormatError(name_ + ": missing required key '" + key + "' in [" + section + "]");
  }

  std::string where(const Entry& e) const { return name_ + ":" + std::to_string(e.line) + ": "; }

  std::vector<double> numbers(const Entry& e, std::size_t min_count, std::size_t max_count) const {
    std::istringstream ss(e.value);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) throw FormatError(where(e) + "not a number: '" + tok + "'");
      out.push_back(v);
    }
    if (out.size() < min_count || out.size() > max_count) {
      throw FormatError(where(e) + "expected " +
                        (min_count == max_count ? std::to_string(min_count)
                                                : std::to_string(min_count) + " or " +
                                                      std::to_string(max_count)) +
                        " numbers, got " + std::to_string(out.size()));
    }
    return out;
  }

  double number(const Entry& e) const { return numbers(e, 1, 1)[0]; }

  Vec3 vec3(const Entry& e) const {
    const auto v = numbers(e, 3, 3);
    return {v[0], v[1], v[2]};
  }

  BandArray bands(const Entry& e) const {
    const auto v = numbers(e, 1, kNumBands);
    if (v.size() != 1 && v.size() != kNumBands) {
      throw FormatError(where(e) + "expected 1 or 7 absorption values");
    }
    BandArray out{};
    for (std::size_t b = 0; b < kNumBands; ++b) {
      out[b] = v.size() == 1 ? v[0] : v[b];
      if (!(out[b] >= 0.0 && out[b] <= 1.0)) throw InvalidArgument(where(e) + "absorption must lie in [0, 1]");
    }
    return out;
  }

 private:
  std::string name_;
  std::map<std::string, Section> sections_;
};

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Scenario parse_scenario_text(const std::string& text, const std::string& name,
                             const std::filesystem::path& base_dir) {
  std::map<std::string, Section> sections;
  std::istringstream in(text);
  std::string raw, current;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto where = name + ":" + std::to_string(lineno) + ": ";
    std::string line = raw;
    if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw FormatError(where + "malformed section header");
      current = trim(line.substr(1, line.size() - 2));
      if (!schema().contains(current)) throw FormatError(where + "unknown section [" + current + "]");
      if (sections.contains(current)) throw FormatError(where + "duplicate section [" + current + "]");
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError(where + "expected 'key = value'");
    if (current.empty()) throw FormatError(where + "key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!schema().at(current).contains(key)) {
      throw FormatError(where + "unknown key '" + key + "' in [" + current + "]");
    }
    if (value.empty()) throw FormatError(where + "empty value for '" + key + "'");
    if (!sections[current].emplace(key, Entry{value, lineno}).second) {
      throw FormatError(where + "duplicate key '" + key + "'");
    }
  }

  const Reader r(name, std::move(sections));
  Scenario sc;

  const Entry& dims_e = r.require("room", "dims");
  const Vec3 dims = r.vec3(dims_e);
  if (!(dims.x > 0.0 && dims.y > 0.0 && dims.z > 0.0)) {
    throw InvalidArgument(r.where(dims_e) + "room dimensions must be > 0");
  }
  WallAbsorption absorption{};
  const Entry* def = r.find("room", "alpha");
  for (std::size_t w = 0; w < kNumWalls; ++w) {
    const Entry* e = r.find("room", kWallKeys[w]);
    if (e == nullptr) e = def;
    if (e == nullptr) {
      throw FormatError(name + ": [room] needs 'alpha' or '" + std::string(kWallKeys[w]) + "'");
    }
    absorption[w] = r.bands(*e);
  }
  sc.room = ShoeboxRoom(dims, absorption);

  const Entry& src_e = r.require("source", "position");
  sc.source = r.vec3(src_e);
  if (!sc.room.contains(sc.source)) throw InvalidArgument(r.where(src_e) + "source outside the room");

  const Entry& rcv_e = r.require("receiver", "position");
  sc.receiver.position = r.vec3(rcv_e);
  if (!sc.room.contains(sc.receiver.position)) {
    throw InvalidArgument(r.where(rcv_e) + "receiver outside the room");
  }
  if (sc.receiver.position == sc.source) {
    throw InvalidArgument(r.where(rcv_e) + "receiver coincides with the source");
  }
  if (const Entry* e = r.find("receiver", "yaw_deg")) sc.receiver.yaw_deg = r.number(*e);

  if (const Entry* e = r.find("render", "k")) {
    const double k = r.number(*e);
    if (k != std::floor(k) || k < 0 || !is_supported_vrs_count(static_cast<std::size_t>(k))) {
      throw InvalidArgument(r.where(*e) + "unsupported K '" + e->value + "' (use 6, 12, 24, 48 or 96)");
    }
    sc.k = static_cast<std::size_t>(k);
  }
  if (const Entry* e = r.find("render", "fs")) {
    sc.fs = r.number(*e);
    if (!(sc.fs >= 8000.0 && sc.fs <= 384000.0)) throw InvalidArgument(r.where(*e) + "fs must lie in [8000, 384000]");
  }
  if (const Entry* e = r.find("render", "seed")) {
    std::size_t used = 0;
    try {
      sc.seed = std::stoull(e->value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != e->value.size() || e->value.front() == '-') {
      throw FormatError(r.where(*e) + "seed must be an unsigned 64-bit integer");
    }
  }
  auto resolve = [&](const std::string& v) {
    const std::filesystem::path p(v);
    return (p.is_relative() && !base_dir.empty()) ? (base_dir / p).string() : v;
  };
  if (const Entry* e = r.find("render", "layout")) {
    sc.layout = e->value == "builtin-86" ? e->value : resolve(e->value);
  }
  if (const Entry* e = r.find("render", "duration_s")) {
    const double d = r.number(*e);
    if (!(d > 0.0)) throw InvalidArgument(r.where(*e) + "duration must be > 0");
    sc.render_duration_s = d;
  }
  if (const Entry* e = r.find("analysis", "hrir")) sc.hrir = e->value == "sphere" ? e->value : resolve(e->value);
  if (const Entry* e = r.find("analysis", "duration_s")) {
    sc.analysis_duration_s = r.number(*e);
    if (!(sc.analysis_duration_s > 0.0)) throw InvalidArgument(r.where(*e) + "duration must be > 0");
  }
  if (const Entry* e = r.find("analysis", "isotropic")) {
    if (e->value == "true") {
      sc.isotropic = true;
    } else if (e->value == "false") {
      sc.isotropic = false;
    } else {
      throw FormatError(r.where(*e) + "isotropic must be 'true' or 'false'");
    }
  }
  return sc;
}

Scenario parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open scenario " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), path.string(), path.parent_path());
}

std::string format_scenario(const Scenario& sc) {
  std::ostringstream o;
  auto vec = [](const Vec3& v) {
    return format_number(v.x) + " " + format_number(v.y) + " " + format_number(v.z);
  };
  o << "[room]\n";
  o << "dims = " << vec(sc.room.dims()) << "\n";
  for (std::size_t w = 0; w < kNumWalls; ++w) {
    o << kWallKeys[w] << " =";
    for (double a : sc.room.absorption()[w]) o << " " << format_number(a);
    o << "\n";
  }
  o << "\n[source]\nposition = " << vec(sc.source) << "\n";
  o << "\n[receiver]\nposition = " << vec(sc.receiver.position) << "\n";
  o << "yaw_deg = " << format_number(sc.receiver.yaw_deg) << "\n";
  o << "\n[render]\nk = " << sc.k << "\nfs = " << format_number(sc.fs) << "\nseed = " << sc.seed
    << "\nlayout = " << sc.layout << "\n";
  if (sc.render_duration_s) o << "duration_s = " << format_number(*sc.render_duration_s) << "\n";
  o << "\n[analysis]\nhrir = " << sc.hrir << "\nduration_s = " << format_number(sc.analysis_duration_s)
    << "\nisotropic = " << (sc.isotropic ? "true" : "false") << "\n";
  return o.str();
}

ShoeboxRoom corridor_room() {
  WallAbsorption a{};
  for (std::size_t w = 0; w < kNumWalls; ++w) {
    for (std::size_t b = 0; b < kNumBands; ++b) {
      a[w][b] = 0.01 + 0.10 * static_cast<double>(b) / static_cast<double>(kNumBands - 1);
    }
  }
  a[static_cast<std::size_t>(Wall::NegX)].fill(0.99);
  return ShoeboxRoom(kCorridorDims, a);
}

std::array<CorridorPosition, 4> corridor_positions() {
  const ShoeboxRoom room = corridor_room();
  const double ry = kCorridorDims.y - kCorridorSideOffset;
  auto fov_at = [&](double d) { return wall_fov(room, Wall::NegX, {d, ry, kCorridorHeight}); };

  std::array<CorridorPosition, 4> out;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double target = kCorridorFovDeg[i];
    double lo = 1e-9, hi = kCorridorDims.x;  // FOV falls monotonically with distance
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fov_at(mid) > target ? lo : hi) = mid;
    }
    const double d = 0.5 * (lo + hi);
    CorridorPosition& p = out[i];
    p.label = static_cast<char>('A' + i);
    p.fov_deg = target;
    p.wall_distance = d;
    p.source = {d, kCorridorSideOffset, kCorridorHeight};
    p.receiver.position = {d, ry, kCorridorHeight};
    p.receiver.yaw_deg = -90.0;
  }
  return out;
}

Scenario corridor_scenario(char label, std::size_t k, std::uint64_t seed) {
  if (label < 'A' || label > 'D') throw InvalidArgument("corridor position must be A, B, C or D");
  if (!is_supported_vrs_count(k)) throw InvalidArgument("unsupported K");
  const auto positions = corridor_positions();
  const auto& p = positions[static_cast<std::size_t>(label - 'A')];
  Scenario sc;
  sc.room = corridor_room();
  sc.source = p.source;
  sc.receiver = p.receiver;
  sc.k = k;
  sc.seed = seed;
  return sc;
}

}  // namespace vrs
