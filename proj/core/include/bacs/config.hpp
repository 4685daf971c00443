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

#ifndef BACS_CONFIG_HPP_
#define BACS_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace bacs {

// All tunables of the codec. Field names double as the keys of the
// key=value config file and as the long CLI flags.
struct CodecConfig {
  int block_size = 32;
  // SR used for the single sensor-side measurement of every frame.
  double high_sr = 0.20;
  // Long-run average SR the encoder must not exceed.
  double target_sr = 0.01;
  // Number of frames in the stream; 0 means "take it from the input".
  int frame_count = 0;

  double threshold_init = 0.04;
  double threshold_gamma = 0.1;
  double threshold_min = 0.002;
  double threshold_max = 0.2;
  // Fraction of each block's measurements kept for motion detection.
  double cut_fraction = 0.25;
  // Initial block storage as a fraction of the block count.
  double initial_storage_fraction = 0.5;

  int solver_iterations = 60;
  double step_size = 1.0;
  double shrink_init = 20.0;
  double shrink_decay = 0.9;

  std::uint64_t seed = 0;

  // Ablation switches. block_storage=false transmits every moving block at
  // high_sr; dynamic_threshold=false freezes the threshold at threshold_init.
  bool block_storage = true;
  bool dynamic_threshold = true;

  // Rows of the full-rate operator, floor(high_sr * B^2).
  int HighRows() const;
  int BlockPixels() const { return block_size * block_size; }

  // Throws ConfigError when a field is out of range or the fields are
  // mutually inconsistent. frame_count is only checked when non-zero.
  void Validate() const;
};

// Sets one field from its textual value. Throws ConfigError on an unknown key
// or a malformed value.
void SetConfigValue(CodecConfig& cfg, std::string_view key,
                    std::string_view value);

std::vector<std::string> ConfigKeys();

// Parses "key = value" lines. Blank lines and lines starting with '#' are
// ignored; unknown keys and duplicate keys are rejected. The result is
// validated.
CodecConfig ParseConfig(std::string_view text, CodecConfig base = {});
CodecConfig LoadConfig(const std::filesystem::path& path,
                       CodecConfig base = {});

std::string FormatConfig(const CodecConfig& cfg);

}  // namespace bacs

#endif  // BACS_CONFIG_HPP_
