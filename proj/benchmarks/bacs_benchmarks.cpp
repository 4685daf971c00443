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

#include <benchmark/benchmark.h>

#include <random>

#include "bacs/bitstream.hpp"
#include "bacs/config.hpp"
#include "bacs/motion.hpp"
#include "bacs/pipeline.hpp"
#include "bacs/rate_control.hpp"
#include "bacs/reconstruction.hpp"
#include "bacs/sensing.hpp"
#include "bacs/synthetic.hpp"

namespace bacs {
namespace {

Image TestImage(int size) {
  SyntheticOptions so;
  so.width = size;
  so.height = size;
  so.frames = 1;
  return GenerateSequence(so)[0];
}

void BM_BuildOperator(benchmark::State& state) {
  const int rows = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(BuildOperator(32, rows, 1));
}
BENCHMARK(BM_BuildOperator)->Arg(51)->Arg(204)->Unit(benchmark::kMillisecond);

void BM_MeasureFrame(benchmark::State& state) {
  const SamplingOperator op = BuildOperator(CodecConfig{}, 1);
  const Frame frame = PadFrame(TestImage(static_cast<int>(state.range(0))), 32);
  for (auto _ : state) benchmark::DoNotOptimize(MeasureFrame(op, frame, op.max_rows()));
}
BENCHMARK(BM_MeasureFrame)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Detect(benchmark::State& state) {
  const SamplingOperator op = BuildOperator(CodecConfig{}, 1);
  const auto a = CutMeasurements(MeasureFrame(op, PadFrame(TestImage(512), 32), 204), 0.25);
  auto b = a;
  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 2.0);
  for (auto& y : b) {
    for (double& v : y) v += noise(rng);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectMovingBlocks({a, b, 32, 0.04}));
  }
}
BENCHMARK(BM_Detect);

void BM_Allocate(benchmark::State& state) {
  CodecConfig cfg;
  ControllerState s = InitialControllerState(cfg, 256, 1000);
  int m = 0;
  for (auto _ : state) {
    Allocation a = Allocate(s, m);
    a.next.threshold = UpdateThreshold(a.next, m, a.next.storage);
    s = a.next;
    s.frame = 1;
    m = (m + 7) % 64;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_Allocate);

void BM_Reconstruct(benchmark::State& state) {
  CodecConfig cfg;
  cfg.solver_iterations = static_cast<int>(state.range(0));
  const SamplingOperator op = BuildOperator(cfg, 1);
  const Image img = TestImage(256);
  std::vector<std::vector<float>> ys;
  for (const auto& y : MeasureFrame(op, PadFrame(img, 32), op.max_rows())) {
    ys.emplace_back(y.begin(), y.end());
  }
  Reconstructor solver(op, 256, 256, SolverOptions::FromConfig(cfg));
  for (auto _ : state) benchmark::DoNotOptimize(solver.Reconstruct(ys));
}
BENCHMARK(BM_Reconstruct)->Arg(10)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_StreamRoundTrip(benchmark::State& state) {
  SyntheticOptions so;
  so.frames = 30;
  CodecConfig cfg;
  cfg.target_sr = 0.05;
  const EncodeResult enc = Encode(GenerateSequence(so), cfg);
  for (auto _ : state) {
    const DecodedStream d = ReadStream(enc.bytes);
    benchmark::DoNotOptimize(WriteStream(d.header, d.frames));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(enc.bytes.size()));
}
BENCHMARK(BM_StreamRoundTrip);

}  // namespace
}  // namespace bacs

BENCHMARK_MAIN();
