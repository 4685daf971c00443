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

#include "bacs/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bacs/error.hpp"

namespace bacs {
namespace {

std::string Slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Whitespace and '#' comments between header tokens.
void SkipSpace(const std::string& s, std::size_t& pos) {
  while (pos < s.size()) {
    if (std::isspace(static_cast<unsigned char>(s[pos]))) {
      ++pos;
    } else if (s[pos] == '#') {
      while (pos < s.size() && s[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
}

int ReadHeaderInt(const std::string& s, std::size_t& pos,
                  const std::string& name) {
  SkipSpace(s, pos);
  if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
    throw IoError("malformed PGM header in " + name);
  }
  long v = 0;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
    v = v * 10 + (s[pos] - '0');
    if (v > 1'000'000) throw IoError("malformed PGM header in " + name);
    ++pos;
  }
  return static_cast<int>(v);
}

}  // namespace

Image ParsePgm(const std::string& bytes, const std::string& name) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw IoError("malformed PGM header in " + name + ": expected P5");
  }
  std::size_t pos = 2;
  const int width = ReadHeaderInt(bytes, pos, name);
  const int height = ReadHeaderInt(bytes, pos, name);
  const int maxval = ReadHeaderInt(bytes, pos, name);
  if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255) {
    throw IoError("malformed PGM header in " + name);
  }
  if (pos >= bytes.size() ||
      !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw IoError("malformed PGM header in " + name);
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(width) * height;
  if (bytes.size() - pos < n) {
    throw IoError("truncated PGM data in " + name);
  }
  Image img(width, height);
  const double scale = 255.0 / maxval;
  for (std::size_t i = 0; i < n; ++i) {
    img.pixels[i] = static_cast<unsigned char>(bytes[pos + i]) * scale;
  }
  return img;
}

Image ReadPgm(const std::filesystem::path& path) {
  return ParsePgm(Slurp(path), path.string());
}

std::string EncodePgm(const Image& image) {
  std::string out = "P5\n" + std::to_string(image.width) + " " +
                    std::to_string(image.height) + "\n255\n";
  out.reserve(out.size() + image.pixels.size());
  for (double v : image.pixels) {
    out.push_back(static_cast<char>(
        static_cast<unsigned char>(std::clamp(std::lround(v), 0L, 255L))));
  }
  return out;
}

void WritePgm(const std::filesystem::path& path, const Image& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  const std::string bytes = EncodePgm(image);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Image> ReadPgmDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir, ec)) {
    throw IoError(dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no .pgm files in " + dir.string());

  std::vector<Image> frames;
  frames.reserve(files.size());
  for (const auto& f : files) {
    Image img = ReadPgm(f);
    if (!frames.empty() && (img.width != frames.front().width ||
                            img.height != frames.front().height)) {
      throw IoError("dimension mismatch: " + f.filename().string() + " is " +
                    std::to_string(img.width) + "x" +
                    std::to_string(img.height) + ", expected " +
                    std::to_string(frames.front().width) + "x" +
                    std::to_string(frames.front().height));
    }
    frames.push_back(std::move(img));
  }
  return frames;
}

std::vector<Image> ReadPlanar(const std::filesystem::path& path, int width,
                              int height, int count) {
  if (width <= 0 || height <= 0 || count < 0) {
    throw IoError("planar input needs positive width and height");
  }
  const std::string bytes = Slurp(path);
  const std::size_t frame_bytes = static_cast<std::size_t>(width) * height;
  const std::size_t available = bytes.size() / frame_bytes;
  if (count == 0) {
    if (bytes.size() % frame_bytes != 0) {
      throw IoError(path.string() + " is not a whole number of frames");
    }
    count = static_cast<int>(available);
  } else if (available < static_cast<std::size_t>(count)) {
    throw IoError(path.string() + " holds " + std::to_string(available) +
                  " frames, " + std::to_string(count) + " requested");
  }
  std::vector<Image> frames;
  frames.reserve(count);
  for (int k = 0; k < count; ++k) {
    Image img(width, height);
    for (std::size_t i = 0; i < frame_bytes; ++i) {
      img.pixels[i] = static_cast<unsigned char>(bytes[k * frame_bytes + i]);
    }
    frames.push_back(std::move(img));
  }
  return frames;
}

void WritePgmSequence(const std::filesystem::path& dir,
                      const std::vector<Image>& frames) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%05zu.pgm", k);
    WritePgm(dir / name, frames[k]);
  }
}

}  // namespace bacs
