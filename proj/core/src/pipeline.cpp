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

#include "bacs/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>

#include "bacs/error.hpp"
#include "bacs/metrics.hpp"
#include "bacs/motion.hpp"
#include "bacs/rate_control.hpp"
#include "bacs/reconstruction.hpp"
#include "bacs/sensing.hpp"

namespace bacs {
namespace {

std::vector<float> Narrow(const std::vector<double>& y, int rows) {
  return std::vector<float>(y.begin(), y.begin() + rows);
}

double FrameSr(const MeasurementSet& mset, int block_pixels) {
  return static_cast<double>(mset.scalar_count()) /
         (static_cast<double>(mset.block_count()) * block_pixels);
}

std::string FormatOptional(const std::optional<double>& v) {
  if (!v) return "";
  if (std::isinf(*v)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

std::string FormatReal(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

}  // namespace

EncodeResult Encode(std::span<const Image> input, const CodecConfig& cfg) {
  cfg.Validate();
  std::span<const Image> frames = input;
  if (cfg.frame_count > 0) {
    if (static_cast<int>(input.size()) < cfg.frame_count) {
      throw ConfigError("frame_count " + std::to_string(cfg.frame_count) +
                        " exceeds the " + std::to_string(input.size()) +
                        " input frames");
    }
    frames = input.first(cfg.frame_count);
  }
  const int n = static_cast<int>(frames.size());
  if (n < 2) throw ConfigError("encoding needs at least 2 frames");
  const int width = frames[0].width;
  const int height = frames[0].height;
  for (int i = 1; i < n; ++i) {
    if (frames[i].width != width || frames[i].height != height) {
      throw InvalidArgument("frame " + std::to_string(i) +
                            " differs in size from frame 0");
    }
  }

  const int block_size = cfg.block_size;
  const int block_pixels = cfg.BlockPixels();
  const int high_rows = cfg.HighRows();
  const int l = BlockCount(width, height, block_size);
  const SamplingOperator op = BuildOperator(cfg, cfg.seed);
  ControllerState state = InitialControllerState(cfg, l, n);

  EncodeResult out;
  out.header = MakeStreamHeader(cfg, width, height, static_cast<std::uint32_t>(n));
  out.frames.reserve(n);
  out.trace.reserve(n);

  // Key frame.
  std::vector<std::vector<double>> full =
      MeasureFrame(op, PadFrame(frames[0], block_size), high_rows);
  {
    MeasurementSet key;
    key.frame_index = 0;
    key.block_map = BlockMap::AllMoving(l);
    key.sr_m = out.header.high_sr;
    key.threshold_used = static_cast<float>(state.threshold);
    for (const auto& y : full) key.per_block.push_back(Narrow(y, high_rows));
    out.trace.push_back(TraceRow{0, l, state.storage, state.threshold,
                                 FrameSr(key, block_pixels), {}, {}});
    out.frames.push_back(std::move(key));
  }
  std::vector<std::vector<double>> prev_cut =
      CutMeasurements(full, cfg.cut_fraction);

  for (int i = 1; i < n; ++i) {
    full = MeasureFrame(op, PadFrame(frames[i], block_size), high_rows);
    std::vector<std::vector<double>> cut =
        CutMeasurements(full, cfg.cut_fraction);
    const double theta = state.threshold;
    const BlockMap detected = DetectMovingBlocks(
        DetectionInput{prev_cut, cut, block_size, theta});
    const int moving = detected.moving_count();

    Allocation alloc = Allocate(state, moving);
    const double sr_m = cfg.block_storage ? alloc.sr_m : cfg.high_sr;
    const int rows = std::min(QuantizeRows(sr_m, block_size), high_rows);

    MeasurementSet mset;
    mset.frame_index = static_cast<std::uint32_t>(i);
    mset.threshold_used = static_cast<float>(theta);
    // A rate too small for a single row sends nothing; the blocks fall back
    // to their references.
    mset.block_map = rows > 0 ? detected : BlockMap::NoneMoving(l);
    mset.sr_m = WireSamplingRate(sr_m, rows, block_size);
    mset.per_block.resize(l);
    for (int b = 0; b < l; ++b) {
      if (mset.block_map.moving(b)) mset.per_block[b] = Narrow(full[b], rows);
    }

    if (cfg.dynamic_threshold) {
      alloc.next.threshold =
          UpdateThreshold(alloc.next, moving, alloc.next.storage);
    }
    state = alloc.next;
    out.trace.push_back(TraceRow{i, moving, state.storage, theta,
                                 FrameSr(mset, block_pixels), {}, {}});
    out.frames.push_back(std::move(mset));
    prev_cut = std::move(cut);
  }

  out.bytes = WriteStream(out.header, out.frames);
  return out;
}

std::vector<Frame> Decode(const DecodedStream& stream, const CodecConfig& cfg) {
  const StreamHeader& h = stream.header;
  std::vector<Frame> out;
  if (stream.frames.empty()) return out;
  const SamplingOperator op =
      BuildOperator(h.block_size, h.high_rows(), h.seed);
  Reconstructor solver(op, h.width, h.height, SolverOptions::FromConfig(cfg));
  ReferenceBuffer ref(h.block_count());
  out.reserve(stream.frames.size());
  for (const MeasurementSet& mset : stream.frames) {
    AssembleResult assembled = Assemble(ref, mset);
    // Nothing new arrived: y' is unchanged and the solver is deterministic.
    if (!out.empty() && mset.block_map.moving_count() == 0) {
      out.push_back(out.back());
    } else {
      out.push_back(solver.Reconstruct(assembled.measurements));
    }
    ref = std::move(assembled.updated);
  }
  return out;
}

std::vector<Frame> Decode(std::span<const std::uint8_t> bytes,
                          const CodecConfig& cfg) {
  return Decode(ReadStream(bytes), cfg);
}

RunReport ComputeMetrics(std::span<const Image> original,
                         std::span<const Frame> reconstructed,
                         std::vector<TraceRow> trace, double average_sr) {
  if (original.size() < reconstructed.size()) {
    throw InvalidArgument("fewer original frames than reconstructions");
  }
  if (trace.size() != reconstructed.size()) {
    throw InvalidArgument("trace length does not match frame count");
  }
  RunReport report;
  report.average_sr = average_sr;
  double psnr_sum = 0.0;
  double ssim_sum = 0.0;
  for (std::size_t i = 0; i < reconstructed.size(); ++i) {
    const Image decoded = Crop(reconstructed[i]);
    if (decoded.width != original[i].width ||
        decoded.height != original[i].height) {
      throw InvalidArgument("dimension mismatch at frame " +
                            std::to_string(i));
    }
    trace[i].psnr = Psnr(original[i], decoded);
    trace[i].ssim = Ssim(original[i], decoded);
    psnr_sum += *trace[i].psnr;
    ssim_sum += *trace[i].ssim;
  }
  if (!reconstructed.empty()) {
    report.mean_psnr = psnr_sum / static_cast<double>(reconstructed.size());
    report.mean_ssim = ssim_sum / static_cast<double>(reconstructed.size());
  }
  report.rows = std::move(trace);
  return report;
}

RunReport RunSequence(std::span<const Image> frames, const CodecConfig& cfg) {
  EncodeResult encoded = Encode(frames, cfg);
  const DecodedStream stream = ReadStream(encoded.bytes);
  const std::vector<Frame> decoded = Decode(stream, cfg);
  return ComputeMetrics(frames, decoded, std::move(encoded.trace),
                        AuditedSamplingRate(stream.header, stream.frames));
}

double DoubledHighSr(double target, double floor) {
  return std::min(1.0, std::max(floor, 2.0 * target));
}

std::vector<SweepRow> Sweep(std::span<const Image> frames,
                            const CodecConfig& cfg,
                            const SweepOptions& options) {
  std::vector<double> targets = options.targets;
  std::sort(targets.begin(), targets.end());
  std::vector<SweepRow> rows;
  rows.reserve(targets.size());
  for (double target : targets) {
    CodecConfig c = cfg;
    c.target_sr = target;
    if (options.high_sr_for) c.high_sr = options.high_sr_for(target);
    c.Validate();
    SweepRow row;
    row.target_sr = target;
    row.high_sr = c.high_sr;
    if (options.rate_only) {
      const EncodeResult encoded = Encode(frames, c);
      row.achieved_sr = AuditedSamplingRate(encoded.header, encoded.frames);
    } else {
      const RunReport report = RunSequence(frames, c);
      row.achieved_sr = report.average_sr;
      row.mean_psnr = report.mean_psnr;
      row.mean_ssim = report.mean_ssim;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string TraceCsv(std::span<const TraceRow> rows) {
  std::string out = kTraceCsvHeader;
  out += '\n';
  for (const TraceRow& r : rows) {
    out += std::to_string(r.frame) + ',' + std::to_string(r.moving) + ',' +
           FormatReal(r.storage) + ',' + FormatReal(r.threshold) + ',' +
           FormatReal(r.sr) + ',' + FormatOptional(r.psnr) + ',' +
           FormatOptional(r.ssim) + '\n';
  }
  return out;
}

std::string SweepCsv(std::span<const SweepRow> rows) {
  std::string out = "target_sr,high_sr,achieved_sr,psnr,ssim\n";
  for (const SweepRow& r : rows) {
    out += FormatReal(r.target_sr) + ',' + FormatReal(r.high_sr) + ',' +
           FormatReal(r.achieved_sr) + ',' + FormatOptional(r.mean_psnr) +
           ',' + FormatOptional(r.mean_ssim) + '\n';
  }
  return out;
}

}  // namespace bacs
