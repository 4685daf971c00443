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

#ifndef BACS_FRAME_IO_HPP_
#define BACS_FRAME_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "bacs/frame.hpp"

namespace bacs {

// Binary 8-bit grayscale PGM (P5). Comments in the header are accepted;
// maxval must be in [1, 255] and samples are rescaled to [0, 255].
Image ParsePgm(const std::string& bytes, const std::string& name = "<memory>");
Image ReadPgm(const std::filesystem::path& path);

// Samples are rounded and clamped to [0, 255].
std::string EncodePgm(const Image& image);
void WritePgm(const std::filesystem::path& path, const Image& image);

// Every *.pgm file in `dir`, in lexicographic order. Throws IoError naming
// the first file whose dimensions differ from the first frame.
std::vector<Image> ReadPgmDirectory(const std::filesystem::path& dir);

// A single file of `count` planar 8-bit luma frames of width x height.
// count == 0 reads as many whole frames as the file holds.
std::vector<Image> ReadPlanar(const std::filesystem::path& path, int width,
                              int height, int count = 0);

// Writes frame_00000.pgm, frame_00001.pgm, ... into `dir` (created if
// missing).
void WritePgmSequence(const std::filesystem::path& dir,
                      const std::vector<Image>& frames);

}  // namespace bacs

#endif  // BACS_FRAME_IO_HPP_
