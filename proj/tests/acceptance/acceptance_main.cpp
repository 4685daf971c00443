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

// Acceptance suite. Prints one PASS/FAIL line per criterion; the exit status
// is non-zero if any selected criterion fails. `--only N` runs one criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bacs/bitstream.hpp"
#include "bacs/config.hpp"
#include "bacs/dct.hpp"
#include "bacs/error.hpp"
#include "bacs/frame_io.hpp"
#include "bacs/metrics.hpp"
#include "bacs/pipeline.hpp"
#include "bacs/rate_control.hpp"
#include "bacs/reconstruction.hpp"
#include "bacs/sensing.hpp"
#include "bacs/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/streams.hpp"

namespace bacs {
namespace {

// Tolerances and limits.
constexpr double kBudgetSlack = 1e-9;
constexpr double kStorageMatch = 1e-9;
constexpr int kBudgetTraces = 1000;
constexpr double kBudgetSeconds = 10.0;
constexpr double kSweepLowerFraction = 0.8;
constexpr double kSweepSeconds = 120.0;
constexpr double kDtSpreadMax = 0.2;
constexpr double kNoDtSpreadMin = 1.0;
constexpr double kDtSeconds = 300.0;
constexpr double kOrthoTol = 1e-6;
constexpr double kLinearityTol = 1e-5;
constexpr double kGradientTol = 1e-4;
constexpr double kDctTol = 1e-6;
constexpr double kFloorPsnr = 25.0;
constexpr double kFloorSr = 0.25;
constexpr int kRoundTrips = 200;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

std::vector<Image> SyntheticSequence() { return GenerateSequence(SyntheticOptions{}); }

// 1. Budget theorem over random motion traces, audited from the bitstream and
// replayed through an independent storage simulator.
Outcome BudgetTheorem() {
  const auto start = Clock::now();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kBlock = 8;
  double worst_excess = -1.0;
  int row_mismatches = 0;
  double worst_storage = 0.0;
  for (int t = 0; t < kBudgetTraces; ++t) {
    const int l = std::uniform_int_distribution<int>(16, 1024)(rng);
    const int n = std::uniform_int_distribution<int>(10, 500)(rng);
    CodecConfig cfg;
    cfg.block_size = kBlock;
    cfg.high_sr = 0.05 + 0.45 * u(rng);
    const double lo = cfg.high_sr / n;
    // Log-uniform target between the feasibility edge and the high rate.
    const double hi = std::min(cfg.high_sr, 0.25);
    cfg.target_sr = lo * std::pow(hi / lo, 0.001 + 0.998 * u(rng));
    cfg.seed = rng();
    if (!(cfg.target_sr < cfg.high_sr) || cfg.HighRows() < 2) {
      --t;
      continue;
    }
    const int pixels = cfg.BlockPixels();
    const int high_rows = cfg.HighRows();

    // Motion trace: quiet, busy and bursty stretches.
    std::vector<int> moving(n - 1);
    double level = u(rng);
    for (int& m : moving) {
      if (u(rng) < 0.1) level = u(rng);
      m = std::binomial_distribution<int>(l, level * level)(rng);
    }

    StreamHeader header = MakeStreamHeader(cfg, kBlock, kBlock * l,
                                           static_cast<std::uint32_t>(n));
    ControllerState state = InitialControllerState(cfg, l, n);
    std::vector<MeasurementSet> frames;
    frames.reserve(n);
    MeasurementSet key;
    key.block_map = BlockMap::AllMoving(l);
    key.sr_m = header.high_sr;
    key.per_block.assign(l, std::vector<float>(high_rows, 1.0f));
    frames.push_back(std::move(key));
    std::vector<double> storage;
    for (int i = 1; i < n; ++i) {
      const int m = moving[i - 1];
      const Allocation a = Allocate(state, m);
      const int rows = std::min(QuantizeRows(a.sr_m, kBlock), high_rows);
      std::vector<bool> flags(l, false);
      if (rows > 0) {
        // Positions do not affect the budget; a random cyclic run suffices.
        const int first = std::uniform_int_distribution<int>(0, l - 1)(rng);
        for (int k = 0; k < m; ++k) flags[(first + k) % l] = true;
      }
      MeasurementSet f;
      f.frame_index = static_cast<std::uint32_t>(i);
      f.block_map = BlockMap(std::move(flags));
      f.sr_m = WireSamplingRate(a.sr_m, rows, kBlock);
      f.per_block.resize(l);
      for (int b = 0; b < l; ++b) {
        if (f.block_map.moving(b)) f.per_block[b].assign(rows, 0.5f);
      }
      frames.push_back(std::move(f));
      storage.push_back(a.next.storage);
      state = a.next;
    }

    const DecodedStream decoded = ReadStream(WriteStream(header, frames));
    const double achieved = AuditedSamplingRate(decoded.header, decoded.frames);
    worst_excess = std::max(worst_excess, achieved - cfg.target_sr);

    const auto sim = testing::SimulateStorage(state.budget.b_ini, state.budget.b_add,
                                              cfg.high_sr, moving);
    for (int i = 1; i < n; ++i) {
      const MeasurementSet& f = decoded.frames[i];
      const long double want_sr = sim.sr_m[i - 1];
      const int want_rows = std::min<int>(
          static_cast<int>(std::floor(want_sr * pixels)), high_rows);
      const int got_rows = f.block_map.moving_count() > 0 ? f.rows_per_block()
                                                          : (moving[i - 1] > 0 ? 0 : want_rows);
      if (got_rows != want_rows) ++row_mismatches;
      // Relative to the total budget in blocks; double vs long double.
      const long double scale = state.budget.b_ini + state.budget.b_add * (n - 1) + 1.0L;
      worst_storage = std::max(
          worst_storage,
          static_cast<double>(std::abs(static_cast<long double>(storage[i - 1]) -
                                       sim.storage[i - 1]) / scale));
    }
  }
  const double secs = Seconds(start);
  Outcome o;
  o.pass = worst_excess <= kBudgetSlack && row_mismatches == 0 &&
           worst_storage <= kStorageMatch && secs < kBudgetSeconds;
  o.detail = Fmt("%d traces, max(achieved - target) = %.3g, row mismatches vs "
                 "simulator = %d, max relative storage diff = %.3g, %.1f s",
                 kBudgetTraces, worst_excess, row_mismatches, worst_storage, secs);
  return o;
}

// 2. Rate sweep on the synthetic sequence.
Outcome RateSweep() {
  const auto start = Clock::now();
  const auto frames = SyntheticSequence();
  SweepOptions options;
  options.targets = {0.04, 0.05, 0.10, 0.20, 0.25, 0.30};
  options.high_sr_for = [](double t) { return DoubledHighSr(t); };
  options.rate_only = true;
  const auto rows = Sweep(frames, CodecConfig{}, options);
  bool ok = true;
  std::string list;
  for (const SweepRow& r : rows) {
    ok = ok && r.achieved_sr <= r.target_sr + kBudgetSlack;
    ok = ok && r.achieved_sr >= kSweepLowerFraction * r.target_sr;
    list += Fmt(" %.2f->%.4f", r.target_sr, r.achieved_sr);
  }
  const double secs = Seconds(start);
  Outcome o;
  o.pass = ok && secs < kSweepSeconds;
  o.detail = Fmt("target->achieved:%s (need target >= achieved >= %.1f x target); %.1f s",
                 list.c_str(), kSweepLowerFraction, secs);
  return o;
}

// 3. Robustness of the full method to the initial threshold.
Outcome ThresholdRobustness() {
  const auto start = Clock::now();
  const auto frames = SyntheticSequence();
  std::vector<double> with_dt, without_dt;
  for (double theta : {0.02, 0.03, 0.04, 0.05}) {
    CodecConfig cfg;
    cfg.threshold_init = theta;
    with_dt.push_back(RunSequence(frames, cfg).mean_psnr);
    cfg.dynamic_threshold = false;
    without_dt.push_back(RunSequence(frames, cfg).mean_psnr);
  }
  auto spread = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
  };
  const double secs = Seconds(start);
  Outcome o;
  o.pass = spread(with_dt) <= kDtSpreadMax && spread(without_dt) > kNoDtSpreadMin &&
           secs < kDtSeconds;
  o.detail = Fmt("theta0 0.02/0.03/0.04/0.05: DT on %.2f/%.2f/%.2f/%.2f dB (spread "
                 "%.2f, need <= %.1f); DT off %.2f/%.2f/%.2f/%.2f dB (spread %.2f, "
                 "need > %.1f); %.0f s",
                 with_dt[0], with_dt[1], with_dt[2], with_dt[3], spread(with_dt),
                 kDtSpreadMax, without_dt[0], without_dt[1], without_dt[2],
                 without_dt[3], spread(without_dt), kNoDtSpreadMin, secs);
  return o;
}

Image Cameraman() { return ReadPgm(std::string(BACS_TEST_DATA_DIR) + "/cameraman256.pgm"); }

// 4. Static scene.
Outcome StaticScene() {
  constexpr int kFrames = 30;
  const std::vector<Image> frames(kFrames, Cameraman());
  const CodecConfig cfg;
  const EncodeResult enc = Encode(frames, cfg);
  const DecodedStream stream = ReadStream(enc.bytes);
  int moving = 0;
  for (std::size_t i = 1; i < stream.frames.size(); ++i) {
    moving += stream.frames[i].block_map.moving_count();
  }
  const auto decoded = Decode(stream, cfg);
  int differing = 0;
  for (const Frame& f : decoded) differing += !(f == decoded[0]);
  const double achieved = AuditedSamplingRate(stream.header, stream.frames);
  // The key frame carries floor(SR_h B^2) rows per block.
  const double want = static_cast<double>(cfg.HighRows()) / cfg.BlockPixels() / kFrames;
  Outcome o;
  o.pass = moving == 0 && differing == 0 && achieved == want;
  o.detail = Fmt("moving blocks after frame 0: %d, frames differing from frame 0: %d, "
                 "achieved SR %.9g vs SR_h/n %.9g",
                 moving, differing, achieved, want);
  return o;
}

// 5. Numerical kernels.
Outcome NumericalKernels() {
  std::mt19937_64 rng(5);
  const SamplingOperator op = BuildOperator(CodecConfig{}, 77);
  const Eigen::MatrixXd gram = op.rows() * op.rows().transpose();
  const double ortho =
      (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();

  double linearity = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto x1 = testing::RandomVector(rng, 1024);
    const auto x2 = testing::RandomVector(rng, 1024);
    const double a = std::uniform_real_distribution<double>(-2, 2)(rng);
    std::vector<double> mix(1024);
    for (int i = 0; i < 1024; ++i) mix[i] = a * x1[i] + x2[i];
    const auto y1 = MeasureBlock(op, x1, op.max_rows());
    const auto y2 = MeasureBlock(op, x2, op.max_rows());
    const auto ym = MeasureBlock(op, mix, op.max_rows());
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < ym.size(); ++i) {
      const double want = a * y1[i] + y2[i];
      num += (ym[i] - want) * (ym[i] - want);
      den += want * want;
    }
    linearity = std::max(linearity, std::sqrt(num / den));
  }

  const SamplingOperator small = BuildOperator(8, 16, 3);
  std::vector<std::vector<double>> blocks, ys;
  for (int rows : {16, 9, 2, 12}) {
    blocks.push_back(testing::RandomVector(rng, 64));
    ys.push_back(testing::RandomVector(rng, rows, -100.0, 100.0));
  }
  const auto grad = DataFidelityGradient(small, blocks, ys);
  double gnum = 0.0, gden = 0.0;
  const double h = 1e-3;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (int i = 0; i < 64; ++i) {
      auto p = blocks, m = blocks;
      p[b][i] += h;
      m[b][i] -= h;
      const double fd = (DataFidelity(small, p, ys) - DataFidelity(small, m, ys)) / (2 * h);
      gnum += (fd - grad[b][i]) * (fd - grad[b][i]);
      gden += grad[b][i] * grad[b][i];
    }
  }
  const double gradient = std::sqrt(gnum / gden);

  Dct2d dct(256, 256);
  const auto img = testing::RandomVector(rng, 256 * 256);
  std::vector<double> coeffs(img.size()), back(img.size());
  dct.Forward(img, coeffs);
  dct.Inverse(coeffs, back);
  double round_trip = 0.0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    round_trip = std::max(round_trip, std::abs(back[i] - img[i]));
  }
  Dct2d dct8(8, 8);
  const auto tiny = testing::RandomVector(rng, 64);
  std::vector<double> tiny_c(64);
  dct8.Forward(tiny, tiny_c);
  const auto brute = testing::BruteDct2d(tiny, 8, 8);
  for (int i = 0; i < 64; ++i) round_trip = std::max(round_trip, std::abs(tiny_c[i] - brute[i]));

  auto shrink = testing::RandomVector(rng, 10000, -50.0, 50.0);
  const auto before = shrink;
  SoftThreshold(shrink, 12.5);
  int shrink_errors = 0;
  for (std::size_t i = 0; i < shrink.size(); ++i) {
    const double mag = std::abs(before[i]) - 12.5;
    const double want = mag > 0 ? std::copysign(mag, before[i]) : 0.0;
    shrink_errors += shrink[i] != want;
  }

  Outcome o;
  o.pass = ortho <= kOrthoTol && linearity <= kLinearityTol && gradient <= kGradientTol &&
           round_trip <= kDctTol && shrink_errors == 0;
  o.detail = Fmt("orthonormality %.2g, linearity %.2g, gradient vs finite differences "
                 "%.2g, DCT %.2g, soft-threshold mismatches %d",
                 ortho, linearity, gradient, round_trip, shrink_errors);
  return o;
}

// 6. Single key frame reconstruction at a flat 25% rate.
Outcome ReconstructionFloor() {
  const Image img = Cameraman();
  CodecConfig cfg;
  cfg.high_sr = kFloorSr;
  const SamplingOperator op = BuildOperator(cfg, cfg.seed);
  const auto full = MeasureFrame(op, PadFrame(img, cfg.block_size), cfg.HighRows());
  std::vector<std::vector<float>> ys;
  for (const auto& y : full) ys.emplace_back(y.begin(), y.end());
  const Frame out = Reconstruct(op, ys, img.width, img.height, cfg);
  const double psnr = Psnr(img, Crop(out));
  Outcome o;
  o.pass = psnr >= kFloorPsnr;
  o.detail = Fmt("cameraman 256x256 at SR %.2f: PSNR %.2f dB (need >= %.1f), SSIM %.3f",
                 kFloorSr, psnr, kFloorPsnr, Ssim(img, Crop(out)));
  return o;
}

StreamErrorCode CodeOf(const std::vector<std::uint8_t>& bytes, bool& raised) {
  raised = false;
  try {
    ReadStream(bytes);
  } catch (const StreamError& e) {
    raised = true;
    return e.code();
  }
  return StreamErrorCode::kBadMagic;
}

// 7. Bitstream round trip and corruption classes.
Outcome BitstreamRoundTrip() {
  std::mt19937_64 rng(77);
  int failures = 0;
  for (int t = 0; t < kRoundTrips; ++t) {
    const auto s = testing::MakeRandomStream(rng);
    const auto bytes = WriteStream(s.header, s.frames);
    const DecodedStream d = ReadStream(bytes);
    if (!(d.header == s.header) || d.frames != s.frames ||
        WriteStream(d.header, d.frames) != bytes) {
      ++failures;
    }
  }
  // A real encoder stream as well.
  SyntheticOptions so;
  so.width = 96;
  so.height = 64;
  so.frames = 20;
  CodecConfig cfg;
  cfg.target_sr = 0.05;
  const EncodeResult enc = Encode(GenerateSequence(so), cfg);
  const DecodedStream d = ReadStream(enc.bytes);
  if (d.frames != enc.frames || WriteStream(d.header, d.frames) != enc.bytes) ++failures;

  const auto& good = enc.bytes;
  const std::size_t frame0 = kStreamHeaderSize;
  struct Case {
    const char* name;
    std::vector<std::uint8_t> bytes;
    StreamErrorCode want;
  };
  std::vector<Case> cases;
  auto mutate = [&](const char* name, std::function<void(std::vector<std::uint8_t>&)> f,
                    StreamErrorCode want) {
    auto b = good;
    f(b);
    cases.push_back({name, std::move(b), want});
  };
  mutate("magic", [](auto& b) { b[1] = 'x'; }, StreamErrorCode::kBadMagic);
  mutate("version", [](auto& b) { b[4] = 9; }, StreamErrorCode::kVersionMismatch);
  mutate("short header", [](auto& b) { b.resize(17); }, StreamErrorCode::kTruncatedHeader);
  mutate("short frame", [](auto& b) { b.resize(b.size() - 3); },
         StreamErrorCode::kTruncatedFrame);
  mutate("trailing", [](auto& b) { b.push_back(1); }, StreamErrorCode::kTrailingData);
  mutate("frame index", [&](auto& b) { b[frame0] = 5; },
         StreamErrorCode::kInconsistentFrame);
  mutate("moving count", [&](auto& b) { b[frame0 + 12 + 1] ^= 1; },
         StreamErrorCode::kInconsistentFrame);
  mutate("block size", [](auto& b) { b[9] = 0; }, StreamErrorCode::kBadHeader);
  int wrong_codes = 0;
  std::string misses;
  for (const Case& c : cases) {
    bool raised = false;
    const StreamErrorCode got = CodeOf(c.bytes, raised);
    if (!raised || got != c.want) {
      ++wrong_codes;
      misses += std::string(" ") + c.name;
    }
  }
  Outcome o;
  o.pass = failures == 0 && wrong_codes == 0;
  o.detail = Fmt("%d random streams + 1 encoder stream, %d round-trip failures; %zu "
                 "corruption classes, %d wrong codes%s",
                 kRoundTrips, failures, cases.size(), wrong_codes, misses.c_str());
  return o;
}

struct CsvRow {
  int frame = 0;
  int moving = 0;
  double storage = 0.0;
  double threshold = 0.0;
};

std::vector<CsvRow> ParseTrace(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    CsvRow r;
    std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &r.frame, &r.moving, &r.storage,
                &r.threshold);
    rows.push_back(r);
  }
  return rows;
}

// 8. Controller trace behaviour.
Outcome ControllerTrace() {
  const SyntheticOptions so;
  const auto frames = GenerateSequence(so);
  const CodecConfig cfg;
  const EncodeResult enc = Encode(frames, cfg);
  const auto rows = ParseTrace(TraceCsv(enc.trace));
  const int l = BlockCount(so.width, so.height, cfg.block_size);
  const BudgetConstants budget = ComputeBudgetConstants(cfg, l, so.frames);

  int storage_violations = 0, theta_violations = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double db = rows[i].storage - rows[i - 1].storage;
    const int m = rows[i].moving;
    if (m < budget.b_add && !(db > 0)) ++storage_violations;
    if (m > budget.b_add && !(db < 0 || (db == 0 && rows[i].storage == 0))) {
      ++storage_violations;
    }
    if (i + 1 < rows.size()) {
      const double pressure = m - (rows[i].storage + 1.0);
      const double dtheta = rows[i + 1].threshold - rows[i].threshold;
      const double t = rows[i].threshold;
      if (pressure > 0 && !(dtheta > 0 || t >= cfg.threshold_max)) ++theta_violations;
      if (pressure < 0 && !(dtheta < 0 || t <= cfg.threshold_min)) ++theta_violations;
      if (pressure == 0 && dtheta != 0) ++theta_violations;
    }
  }

  // Net storage change over each idle and each busy span of the sequence.
  int idle_spans = 0, idle_rising = 0, busy_spans = 0, busy_falling = 0;
  std::size_t i = 1;
  while (i < rows.size()) {
    const bool active = IsActiveFrame(so, static_cast<int>(i));
    std::size_t j = i;
    while (j < rows.size() && IsActiveFrame(so, static_cast<int>(j)) == active) ++j;
    const double before = rows[i - 1].storage;
    const double after = rows[j - 1].storage;
    if (active) {
      ++busy_spans;
      busy_falling += after < before;
    } else {
      ++idle_spans;
      idle_rising += after > before;
    }
    i = j;
  }
  Outcome o;
  o.pass = storage_violations == 0 && theta_violations == 0 &&
           idle_rising == idle_spans && busy_falling == busy_spans && idle_spans > 0 &&
           busy_spans > 0;
  o.detail = Fmt("b_add %.3f; per-frame storage sign violations %d, threshold sign "
                 "violations %d; storage rose over %d/%d idle spans and fell over "
                 "%d/%d busy spans",
                 budget.b_add, storage_violations, theta_violations, idle_rising,
                 idle_spans, busy_falling, busy_spans);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

}  // namespace
}  // namespace bacs

int main(int argc, char** argv) {
  using namespace bacs;
  const Criterion criteria[] = {
      {1, "budget theorem", BudgetTheorem},
      {2, "rate sweep", RateSweep},
      {3, "threshold robustness", ThresholdRobustness},
      {4, "static scene", StaticScene},
      {5, "numerical kernels", NumericalKernels},
      {6, "reconstruction floor", ReconstructionFloor},
      {7, "bitstream round trip", BitstreamRoundTrip},
      {8, "controller trace", ControllerTrace},
  };
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--only N]\n", argv[0]);
      return 2;
    }
  }
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (only != 0 && c.id != only) continue;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
