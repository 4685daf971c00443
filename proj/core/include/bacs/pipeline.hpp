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

#ifndef BACS_PIPELINE_HPP_
#define BACS_PIPELINE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bacs/bitstream.hpp"
#include "bacs/config.hpp"
#include "bacs/frame.hpp"

namespace bacs {

// One row of the per-frame controller trace. `moving` is the detector's
// count; `storage` is the block storage after this frame's allocation;
// `threshold` is the threshold this frame was classified with; `sr` is the
// frame's transmitted measurement scalars / (l * B^2).
struct TraceRow {
  int frame = 0;
  int moving = 0;
  double storage = 0.0;
  double threshold = 0.0;
  double sr = 0.0;
  std::optional<double> psnr;
  std::optional<double> ssim;
};

struct EncodeResult {
  StreamHeader header;
  std::vector<MeasurementSet> frames;
  std::vector<std::uint8_t> bytes;
  std::vector<TraceRow> trace;
};

// Frame 0 goes out whole at the high rate. Every later frame is measured at
// the high rate, compared against its predecessor's cut measurements, and
// only its moving blocks are sent, truncated to the rate the block storage
// allows. Uses cfg.seed for the operator. Throws ConfigError for fewer than
// two frames or an infeasible budget, InvalidArgument for mixed frame sizes.
EncodeResult Encode(std::span<const Image> frames, const CodecConfig& cfg);

// Sequential decode: borrow reference measurements for the blocks a frame
// did not send, then run the proximal-gradient solver. Block size, rate and
// seed come from the stream header; solver settings come from `cfg`.
std::vector<Frame> Decode(const DecodedStream& stream, const CodecConfig& cfg);
std::vector<Frame> Decode(std::span<const std::uint8_t> bytes,
                          const CodecConfig& cfg);

struct RunReport {
  std::vector<TraceRow> rows;
  double average_sr = 0.0;
  double mean_psnr = 0.0;
  double mean_ssim = 0.0;
};

// Fills PSNR/SSIM into `trace` (one row per frame) and summarizes.
// `average_sr` is taken as given; callers pass the bitstream audit.
RunReport ComputeMetrics(std::span<const Image> original,
                         std::span<const Frame> reconstructed,
                         std::vector<TraceRow> trace, double average_sr);

// encode -> serialize -> parse -> decode -> metrics.
RunReport RunSequence(std::span<const Image> frames, const CodecConfig& cfg);

struct SweepRow {
  double target_sr = 0.0;
  double high_sr = 0.0;
  double achieved_sr = 0.0;
  std::optional<double> mean_psnr;
  std::optional<double> mean_ssim;
};

struct SweepOptions {
  std::vector<double> targets;
  // high_sr for a given target; defaults to cfg.high_sr.
  std::function<double(double)> high_sr_for;
  // Skip reconstruction and report the audited rate only.
  bool rate_only = false;
};

// Rows are ordered by target_sr.
std::vector<SweepRow> Sweep(std::span<const Image> frames,
                            const CodecConfig& cfg,
                            const SweepOptions& options);

// max(floor, 2 * target): the high rate used by the rate sweeps.
double DoubledHighSr(double target, double floor = 0.20);

inline constexpr const char* kTraceCsvHeader =
    "frame,m,storage,threshold,sr,psnr,ssim";
std::string TraceCsv(std::span<const TraceRow> rows);
std::string SweepCsv(std::span<const SweepRow> rows);

}  // namespace bacs

#endif  // BACS_PIPELINE_HPP_
