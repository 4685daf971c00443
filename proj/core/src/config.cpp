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

#include "bacs/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "bacs/error.hpp"

namespace bacs {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("malformed value '" + std::string(text) + "' for key '" +
                      std::string(key) + "'");
  }
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(value)) {
      throw ConfigError("non-finite value for key '" + std::string(key) + "'");
    }
  }
  return value;
}

bool ParseBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "on") return true;
  if (text == "false" || text == "0" || text == "off") return false;
  throw ConfigError("malformed boolean '" + std::string(text) + "' for key '" +
                    std::string(key) + "'");
}

struct Field {
  const char* key;
  std::function<void(CodecConfig&, std::string_view)> set;
  std::function<std::string(const CodecConfig&)> get;
};

template <typename T>
Field NumberField(const char* key, T CodecConfig::*member) {
  return Field{key,
               [key, member](CodecConfig& c, std::string_view v) {
                 c.*member = ParseNumber<T>(key, v);
               },
               [member](const CodecConfig& c) {
                 std::ostringstream os;
                 os.precision(17);
                 os << c.*member;
                 return os.str();
               }};
}

Field BoolField(const char* key, bool CodecConfig::*member) {
  return Field{key,
               [key, member](CodecConfig& c, std::string_view v) {
                 c.*member = ParseBool(key, v);
               },
               [member](const CodecConfig& c) {
                 return std::string(c.*member ? "true" : "false");
               }};
}

const std::vector<Field>& Fields() {
  static const std::vector<Field> fields = {
      NumberField("block_size", &CodecConfig::block_size),
      NumberField("high_sr", &CodecConfig::high_sr),
      NumberField("target_sr", &CodecConfig::target_sr),
      NumberField("frame_count", &CodecConfig::frame_count),
      NumberField("threshold_init", &CodecConfig::threshold_init),
      NumberField("threshold_gamma", &CodecConfig::threshold_gamma),
      NumberField("threshold_min", &CodecConfig::threshold_min),
      NumberField("threshold_max", &CodecConfig::threshold_max),
      NumberField("cut_fraction", &CodecConfig::cut_fraction),
      NumberField("initial_storage_fraction",
                  &CodecConfig::initial_storage_fraction),
      NumberField("solver_iterations", &CodecConfig::solver_iterations),
      NumberField("step_size", &CodecConfig::step_size),
      NumberField("shrink_init", &CodecConfig::shrink_init),
      NumberField("shrink_decay", &CodecConfig::shrink_decay),
      NumberField("seed", &CodecConfig::seed),
      BoolField("block_storage", &CodecConfig::block_storage),
      BoolField("dynamic_threshold", &CodecConfig::dynamic_threshold),
  };
  return fields;
}

}  // namespace

int CodecConfig::HighRows() const {
  return static_cast<int>(std::floor(high_sr * BlockPixels()));
}

void CodecConfig::Validate() const {
  if (block_size < 8) throw ConfigError("block_size must be >= 8");
  if (block_size > 4096) throw ConfigError("block_size too large");
  if (!(high_sr > 0.0 && high_sr <= 1.0)) {
    throw ConfigError("high_sr must lie in (0, 1]");
  }
  if (!(target_sr > 0.0 && target_sr < 1.0)) {
    throw ConfigError("target_sr must lie in (0, 1)");
  }
  if (!(high_sr > target_sr)) {
    throw ConfigError("high_sr must exceed target_sr");
  }
  if (HighRows() < 2) {
    throw ConfigError("high_sr * block_size^2 must be >= 2");
  }
  if (frame_count < 0) throw ConfigError("frame_count must be >= 0");
  if (!(threshold_min > 0.0 && threshold_min <= threshold_init &&
        threshold_init <= threshold_max)) {
    throw ConfigError(
        "thresholds must satisfy 0 < threshold_min <= threshold_init <= "
        "threshold_max");
  }
  if (!(threshold_gamma > 0.0 && threshold_gamma < 1.0)) {
    throw ConfigError("threshold_gamma must lie in (0, 1)");
  }
  if (!(cut_fraction > 0.0 && cut_fraction <= 1.0)) {
    throw ConfigError("cut_fraction must lie in (0, 1]");
  }
  if (!(initial_storage_fraction >= 0.0)) {
    throw ConfigError("initial_storage_fraction must be >= 0");
  }
  if (solver_iterations < 0) {
    throw ConfigError("solver_iterations must be >= 0");
  }
  if (!(step_size > 0.0 && step_size <= 2.0)) {
    throw ConfigError("step_size must lie in (0, 2]");
  }
  if (!(shrink_init >= 0.0)) throw ConfigError("shrink_init must be >= 0");
  if (!(shrink_decay > 0.0 && shrink_decay <= 1.0)) {
    throw ConfigError("shrink_decay must lie in (0, 1]");
  }
}

void SetConfigValue(CodecConfig& cfg, std::string_view key,
                    std::string_view value) {
  for (const Field& f : Fields()) {
    if (key == f.key) {
      f.set(cfg, Trim(value));
      return;
    }
  }
  throw ConfigError("unknown key '" + std::string(key) + "'");
}

std::vector<std::string> ConfigKeys() {
  std::vector<std::string> keys;
  for (const Field& f : Fields()) keys.emplace_back(f.key);
  return keys;
}

CodecConfig ParseConfig(std::string_view text, CodecConfig base) {
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{}
                                        : text.substr(nl + 1);
    ++line_no;
    line = Trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) +
                        ": expected key=value");
    }
    const std::string_view key = Trim(line.substr(0, eq));
    if (!seen.emplace(key).second) {
      throw ConfigError("duplicate key '" + std::string(key) + "'");
    }
    SetConfigValue(base, key, line.substr(eq + 1));
  }
  base.Validate();
  return base;
}

CodecConfig LoadConfig(const std::filesystem::path& path, CodecConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str(), base);
}

std::string FormatConfig(const CodecConfig& cfg) {
  std::string out;
  for (const Field& f : Fields()) {
    out += f.key;
    out += " = ";
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

}  // namespace bacs
