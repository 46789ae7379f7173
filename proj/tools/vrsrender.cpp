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


// vrsrender: scenario-driven front end for the room renderer.
//
// Exit status: 0 success, 1 invalid input (arguments, scenario, files),
// 2 runtime or numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "vrs/binaural.hpp"
#include "vrs/convolve.hpp"
#include "vrs/errors.hpp"
#include "vrs/pipeline.hpp"
#include "vrs/scenario.hpp"
#include "vrs/spatial.hpp"
#include "vrs/stimulus.hpp"
#include "vrs/wav.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Overrides {
  std::string scenario;
  std::string out;
  std::optional<std::size_t> k;
  std::optional<std::uint64_t> seed;
  std::optional<double> yaw;
  std::optional<double> duration;
  bool isotropic = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--scenario", o.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "Output path")->required();
  cmd->add_option("--k", o.k, "Number of virtual reverb sources (6, 12, 24, 48, 96)");
  cmd->add_option("--seed", o.seed, "Random seed");
  cmd->add_option("--yaw", o.yaw, "Receiver yaw offset in degrees, counterclockwise");
  cmd->add_option("--duration", o.duration, "Duration in seconds");
  cmd->add_flag("--isotropic", o.isotropic, "Equal output power on every virtual reverb source");
}

vrs::Scenario load(const Overrides& o) {
  vrs::Scenario sc = vrs::parse_scenario(o.scenario);
  if (o.k) {
    if (!vrs::is_supported_vrs_count(*o.k)) {
      throw vrs::InvalidArgument("unsupported --k " + std::to_string(*o.k) + " (use 6, 12, 24, 48 or 96)");
    }
    sc.k = *o.k;
  }
  if (o.seed) sc.seed = *o.seed;
  if (o.yaw) sc.receiver.yaw_deg += *o.yaw;
  if (o.isotropic) sc.isotropic = true;
  if (o.duration && !(*o.duration > 0.0)) throw vrs::InvalidArgument("--duration must be > 0");
  return sc;
}

vrs::LoudspeakerLayout layout_of(const vrs::Scenario& sc) {
  return sc.layout == "builtin-86" ? vrs::builtin_layout_86() : vrs::load_layout(sc.layout);
}

json vec_json(const vrs::Vec3& v) { return json::array({v.x, v.y, v.z}); }

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw vrs::FormatError("cannot write " + path.string());
}

int cmd_render(const Overrides& o) {
  const vrs::Scenario sc = load(o);
  const auto layout = layout_of(sc);
  const double duration = o.duration ? *o.duration
                                     : sc.render_duration_s.value_or(vrs::default_render_duration(sc.room));
  vrs::RenderOptions opts;
  opts.isotropic = sc.isotropic;
  const vrs::Mrir mrir =
      vrs::render_mrir(sc.room, sc.source, sc.receiver, sc.k, sc.fs, duration, sc.seed, layout, opts);
  vrs::write_wav(o.out, {mrir.fs, mrir.channels});

  const auto& m = mrir.meta;
  json meta = {
      {"format", "float32 wav"},
      {"channels", m.channels},
      {"frames", m.frames},
      {"fs_hz", m.fs},
      {"layout", m.layout},
      {"k", m.k},
      {"seed", m.seed},
      {"isotropic", m.isotropic},
      {"room_dims_m", vec_json(m.room_dims)},
      {"source_m", vec_json(m.source)},
      {"receiver_m", vec_json(m.receiver.position)},
      {"receiver_yaw_deg", m.receiver.yaw_deg},
      {"rt60_target_s", m.rt60},
      {"direct_sample", m.direct_sample},
      {"early_end_sample", m.early_end_sample},
      {"tail_start_sample", m.tail_start_sample},
      {"note", m.note},
  };
  write_text(o.out + ".json", meta.dump(2) + "\n");
  std::cout << "wrote " << o.out << " (" << m.channels << " channels, " << m.frames << " frames)\n";
  return 0;
}

int cmd_analyze(const Overrides& o) {
  const vrs::Scenario sc = load(o);
  const auto layout = layout_of(sc);
  const vrs::HrirSet hrirs = sc.hrir == "sphere" ? vrs::sphere_hrir_set(layout.directions, sc.fs)
                                                 : vrs::load_hrir_set(sc.hrir);
  vrs::DiffuseFieldRequest req;
  req.room = &sc.room;
  req.receiver = sc.receiver;
  req.k = sc.k;
  req.layout = &layout;
  req.hrirs = &hrirs;
  req.duration_seconds = o.duration.value_or(sc.analysis_duration_s);
  req.seed = sc.seed;
  req.isotropic = sc.isotropic;
  write_text(o.out, vrs::curves_to_csv(vrs::diffuse_field_eval(req)));
  std::cout << "wrote " << o.out << "\n";
  return 0;
}

int cmd_stimulus(const std::string& out, double rate) {
  vrs::write_wav(out, {rate, {vrs::pink_pulse(rate)}});
  std::cout << "wrote " << out << "\n";
  return 0;
}

int cmd_convolve(const std::string& stimulus, const std::string& mrir_path, const std::string& out) {
  const vrs::AudioData stim = vrs::read_wav(stimulus);
  const vrs::AudioData mrir = vrs::read_wav(mrir_path);
  if (stim.fs != mrir.fs) throw vrs::FormatError("sample rates differ: stimulus " + std::to_string(stim.fs) +
                                                 " Hz, MRIR " + std::to_string(mrir.fs) + " Hz");
  if (stim.channels.size() != 1) throw vrs::FormatError("stimulus must be mono");
  vrs::AudioData result{mrir.fs, {}};
  for (const auto& ch : mrir.channels) result.channels.push_back(vrs::convolve(stim.channels[0], ch));
  vrs::write_wav(out, result);
  std::cout << "wrote " << out << " (" << result.channels.size() << " channels)\n";
  return 0;
}

int cmd_positions(const std::string& scenario_dir) {
  std::printf("label,fov_deg,wall_distance_m,source_x,source_y,source_z,receiver_x,receiver_y,receiver_z,yaw_deg\n");
  for (const auto& p : vrs::corridor_positions()) {
    std::printf("%c,%.1f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.4f,%.1f\n", p.label, p.fov_deg, p.wall_distance,
                p.source.x, p.source.y, p.source.z, p.receiver.position.x, p.receiver.position.y,
                p.receiver.position.z, p.receiver.yaw_deg);
  }
  if (!scenario_dir.empty()) {
    fs::create_directories(scenario_dir);
    for (char label : {'A', 'B', 'C', 'D'}) {
      const fs::path path = fs::path(scenario_dir) / (std::string("corridor_") + label + ".ini");
      write_text(path, "# Corridor position " + std::string(1, label) + "\n" +
                           vrs::format_scenario(vrs::corridor_scenario(label)));
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Room impulse response renderer with spatially subsampled late reverberation"};
  app.require_subcommand(1);

  Overrides render_opts, analyze_opts;
  auto* render = app.add_subcommand("render", "Render a multichannel room impulse response (WAV + JSON)");
  add_common(render, render_opts);
  auto* analyze = app.add_subcommand("analyze", "Diffuse-field interaural coherence and ILD (CSV)");
  add_common(analyze, analyze_opts);

  std::string stim_out;
  double stim_fs = 44100.0;
  auto* stimulus = app.add_subcommand("stimulus", "Write the decaying pink pulse");
  stimulus->add_option("--out", stim_out, "Output WAV")->required();
  stimulus->add_option("--fs", stim_fs, "Sample rate in Hz")->check(CLI::Range(8000.0, 384000.0));

  std::string conv_stim, conv_mrir, conv_out;
  auto* convolve = app.add_subcommand("convolve", "Convolve a mono stimulus with every MRIR channel");
  convolve->add_option("--stimulus", conv_stim, "Mono WAV")->required()->check(CLI::ExistingFile);
  convolve->add_option("--mrir", conv_mrir, "Multichannel WAV")->required()->check(CLI::ExistingFile);
  convolve->add_option("--out", conv_out, "Output WAV")->required();

  std::string scenario_dir;
  auto* positions = app.add_subcommand("positions", "Print the corridor positions A-D");
  positions->add_option("--scenarios", scenario_dir, "Also write corridor_{A,B,C,D}.ini here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*render) return cmd_render(render_opts);
    if (*analyze) return cmd_analyze(analyze_opts);
    if (*stimulus) return cmd_stimulus(stim_out, stim_fs);
    if (*convolve) return cmd_convolve(conv_stim, conv_mrir, conv_out);
    if (*positions) return cmd_positions(scenario_dir);
  } catch (const vrs::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const vrs::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const vrs::GeometryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
