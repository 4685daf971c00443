/*
 * Copyright 2026 The BACS Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// bacs: encode, decode and evaluate block-adaptive compressive sensing video.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bacs/bitstream.hpp"
#include "bacs/config.hpp"
#include "bacs/error.hpp"
#include "bacs/frame_io.hpp"
#include "bacs/metrics.hpp"
#include "bacs/pipeline.hpp"
#include "bacs/synthetic.hpp"

namespace {

namespace fs = std::filesystem;
using namespace bacs;

constexpr int kUsageExit = 2;

struct InputOptions {
  std::string pgm_dir;
  std::string planar;
  int width = 0;
  int height = 0;
  int count = 0;
  bool synthetic = false;
  SyntheticOptions synth;

  void Add(CLI::App* app) {
    auto* group = app->add_option_group("input");
    group->add_option("--input", pgm_dir, "directory of binary PGM frames");
    group->add_option("--planar", planar, "raw 8-bit planar luma file");
    group->add_flag("--synthetic", synthetic, "use the built-in synthetic sequence");
    group->require_option(1);
    app->add_option("--width", width, "frame width (planar input, synthetic)");
    app->add_option("--height", height, "frame height (planar input, synthetic)");
    app->add_option("--count", count, "number of frames to read or generate");
    app->add_option("--synthetic-seed", synth.seed, "synthetic sequence seed");
    app->add_option("--noise", synth.noise_sigma, "synthetic noise sigma");
  }

  std::vector<Image> Load() const {
    if (!pgm_dir.empty()) {
      auto frames = ReadPgmDirectory(pgm_dir);
      if (count > 0 && static_cast<int>(frames.size()) > count) frames.resize(count);
      return frames;
    }
    if (!planar.empty()) {
      if (width <= 0 || height <= 0) {
        throw ConfigError("--planar needs --width and --height");
      }
      return ReadPlanar(planar, width, height, count);
    }
    SyntheticOptions s = synth;
    if (width > 0) s.width = width;
    if (height > 0) s.height = height;
    if (count > 0) s.frames = count;
    return GenerateSequence(s);
  }
};

// Config file plus one flag per config key; flags win over the file.
struct ConfigOptions {
  std::string file;
  std::map<std::string, std::string> values;
  bool no_bss = false;
  bool no_dt = false;

  void Add(CLI::App* app) {
    app->add_option("--config", file, "key = value config file");
    for (const std::string& key : ConfigKeys()) {
      if (key == "block_storage" || key == "dynamic_threshold") continue;
      std::string flag = key;
      for (char& c : flag) c = c == '_' ? '-' : c;
      app->add_option_function<std::string>(
          "--" + flag, [this, key](const std::string& v) { values[key] = v; },
          "config " + key);
    }
    app->add_flag("--no-bss", no_bss, "disable block storage (every moving block at SR_h)");
    app->add_flag("--no-dt", no_dt, "freeze the detection threshold");
  }

  CodecConfig Build() const {
    CodecConfig cfg = file.empty() ? CodecConfig{} : LoadConfig(file);
    for (const auto& [key, value] : values) SetConfigValue(cfg, key, value);
    if (no_bss) cfg.block_storage = false;
    if (no_dt) cfg.dynamic_threshold = false;
    cfg.Validate();
    return cfg;
  }
};

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<std::uint8_t> ReadBytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void WriteBytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Image> Cropped(const std::vector<Frame>& frames) {
  std::vector<Image> out;
  out.reserve(frames.size());
  for (const Frame& f : frames) out.push_back(Crop(f));
  return out;
}

std::vector<double> ParseTargets(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("bad target rate '" + item + "'");
    }
    pos = comma + 1;
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-adaptive compressive sensing video codec"};
  app.require_subcommand(1);

  InputOptions enc_in, run_in, sweep_in;
  ConfigOptions enc_cfg, dec_cfg, run_cfg, sweep_cfg;
  std::string enc_out, enc_trace;
  std::string dec_stream, dec_out;
  std::string run_trace, run_out, run_stream;
  std::string sweep_targets = "0.04,0.05,0.10,0.20,0.25,0.30", sweep_csv;
  bool sweep_double = false, sweep_rate_only = false;

  auto* encode = app.add_subcommand("encode", "encode frames into a bitstream");
  enc_in.Add(encode);
  enc_cfg.Add(encode);
  encode->add_option("-o,--output", enc_out, "bitstream file")->required();
  encode->add_option("--trace", enc_trace, "controller trace CSV");

  auto* decode = app.add_subcommand("decode", "reconstruct frames from a bitstream");
  decode->add_option("stream", dec_stream, "bitstream file")->required();
  decode->add_option("-o,--output", dec_out, "output directory for PGM frames")
      ->required();
  dec_cfg.Add(decode);

  auto* run = app.add_subcommand("run", "encode, decode and report quality");
  run_in.Add(run);
  run_cfg.Add(run);
  run->add_option("--trace", run_trace, "per-frame CSV with metrics");
  run->add_option("--output", run_out, "output directory for reconstructed PGM frames");
  run->add_option("--stream", run_stream, "also write the bitstream here");

  auto* sweep = app.add_subcommand("sweep", "achieved rate and quality over target rates");
  sweep_in.Add(sweep);
  sweep_cfg.Add(sweep);
  sweep->add_option("--targets", sweep_targets, "comma-separated target rates");
  sweep->add_flag("--double-high-sr", sweep_double, "use SR_h = max(0.2, 2 SR_t)");
  sweep->add_flag("--rate-only", sweep_rate_only, "skip reconstruction");
  sweep->add_option("-o,--output", sweep_csv, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageExit;
  }

  try {
    if (*encode) {
      const CodecConfig cfg = enc_cfg.Build();
      const auto frames = enc_in.Load();
      const EncodeResult result = Encode(frames, cfg);
      WriteBytes(enc_out, result.bytes);
      if (!enc_trace.empty()) WriteText(enc_trace, TraceCsv(result.trace));
      std::printf("frames %zu  bytes %zu  average SR %.6f\n", result.frames.size(),
                  result.bytes.size(),
                  AuditedSamplingRate(result.header, result.frames));
    } else if (*decode) {
      const CodecConfig cfg = dec_cfg.Build();
      const auto frames = Decode(ReadBytes(dec_stream), cfg);
      WritePgmSequence(dec_out, Cropped(frames));
      std::printf("decoded %zu frames into %s\n", frames.size(), dec_out.c_str());
    } else if (*run) {
      const CodecConfig cfg = run_cfg.Build();
      const auto frames = run_in.Load();
      EncodeResult encoded = Encode(frames, cfg);
      if (!run_stream.empty()) WriteBytes(run_stream, encoded.bytes);
      const DecodedStream stream = ReadStream(encoded.bytes);
      const auto decoded = Decode(stream, cfg);
      const RunReport report =
          ComputeMetrics(frames, decoded, std::move(encoded.trace),
                         AuditedSamplingRate(stream.header, stream.frames));
      if (!run_trace.empty()) WriteText(run_trace, TraceCsv(report.rows));
      if (!run_out.empty()) WritePgmSequence(run_out, Cropped(decoded));
      std::printf("frames %zu  average SR %.6f  PSNR %s dB  SSIM %.4f\n",
                  report.rows.size(), report.average_sr,
                  FormatDb(report.mean_psnr).c_str(), report.mean_ssim);
    } else if (*sweep) {
      const CodecConfig cfg = sweep_cfg.Build();
      const auto frames = sweep_in.Load();
      SweepOptions options;
      options.targets = ParseTargets(sweep_targets);
      if (sweep_double) options.high_sr_for = [](double t) { return DoubledHighSr(t); };
      options.rate_only = sweep_rate_only;
      const std::string csv = SweepCsv(Sweep(frames, cfg, options));
      if (sweep_csv.empty()) {
        std::fputs(csv.c_str(), stdout);
      } else {
        WriteText(sweep_csv, csv);
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "bacs: %s\n", e.what());
    return static_cast<int>(e.category());
  }
  return 0;
}
