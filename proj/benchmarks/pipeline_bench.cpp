// Copyright 2026 The hwforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <cmath>
#include <string>
#include <vector>

#include "hwforge/color_model.hpp"
#include "hwforge/metrics.hpp"
#include "hwforge/raster.hpp"
#include "hwforge/transfer.hpp"

using namespace hwforge;

namespace {

// A deterministic cursive-looking word: a few sine-wave strokes across a
// 384x104 box.
ink::InkSample word_sample() {
  ink::InkSample s;
  s.id = "bench";
  s.transcript = "chữ";
  for (int k = 0; k < 4; ++k) {
    ink::Stroke stroke;
    for (int i = 0; i <= 60; ++i) {
      const double x = k * 96.0 + i * 1.5;
      const double y = 52.0 + 45.0 * std::sin(0.21 * i + k);
      stroke.points.push_back({x, y});
    }
    s.strokes.push_back(std::move(stroke));
  }
  return s;
}

const color::ColorModel kModel{{"a", "b"}, {{2, 5}, {3, 9}}, {{9, 1.5}, {20, 2}}};

void BM_RenderBinary(benchmark::State& state) {
  const auto sample = ink::normalize_geometry(word_sample(), {});
  raster::WidthModel model;
  model.mode = static_cast<raster::WidthMode>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(raster::render_binary(sample.strokes, 401, 121, 4, model));
  }
}
BENCHMARK(BM_RenderBinary)->Arg(0)->Arg(1);

void BM_RenderColor(benchmark::State& state) {
  const auto sample = ink::normalize_geometry(word_sample(), {});
  const auto binary = raster::render_binary(sample.strokes, 401, 121, 4, {});
  Rng rng(1);
  const auto mode = static_cast<transfer::ColorMode>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(transfer::render_color(binary, kModel, rng, mode));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(binary.size()));
}
BENCHMARK(BM_RenderColor)->Arg(0)->Arg(1);

void BM_Transfer(benchmark::State& state) {
  const auto sample = word_sample();
  transfer::TransferConfig config;
  config.width_model.mode = raster::WidthMode::variable;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(transfer::transfer(sample, kModel, config, ++seed));
  }
}
BENCHMARK(BM_Transfer);

void BM_DamerauLevenshtein(benchmark::State& state) {
  const std::u32string a(static_cast<std::size_t>(state.range(0)), U'a');
  std::u32string b = a;
  for (std::size_t i = 0; i < b.size(); i += 3) b[i] = U'b';
  for (auto _ : state) benchmark::DoNotOptimize(metrics::damerau_levenshtein(a, b));
}
BENCHMARK(BM_DamerauLevenshtein)->Arg(16)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
