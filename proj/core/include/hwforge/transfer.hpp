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

#pragma once

// The full transfer pipeline: normalize an online sample, rasterize it,
// recolor ink and paper pixels from a fitted color model, and batch the
// result into an image tree with a provenance manifest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hwforge/color_model.hpp"
#include "hwforge/image.hpp"
#include "hwforge/ink.hpp"
#include "hwforge/random.hpp"
#include "hwforge/raster.hpp"

namespace hwforge::transfer {

// per_pixel: every pixel is an independent draw from the selected pair.
// flat: one stroke value and one background value per image.
enum class ColorMode { per_pixel, flat };

struct PadSize {
  int width = 0;
  int height = 0;
  friend bool operator==(const PadSize&, const PadSize&) = default;
};

struct TransferConfig {
  raster::WidthModel width_model;
  ink::NormalizationConfig normalization;
  std::uint64_t master_seed = 0;
  std::optional<PadSize> pad_to;
  ColorMode color_mode = ColorMode::per_pixel;
};

struct ManifestRecord {
  std::string id;
  std::string image_path;
  std::string transcript;
  ink::Level level = ink::Level::word;
  std::uint64_t seed = 0;
  double m_value = 0.0;
  std::size_t dist_index = 0;
  raster::WidthMode width_mode = raster::WidthMode::constant;
  std::optional<std::string> split;

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

struct ColoredImage {
  GrayImage image;
  std::size_t dist_index;
};

// Replaces ink pixels (0) with stroke draws and paper pixels (255) with
// background draws, both from one uniformly chosen distribution index.
// Values are round-half-up of draw * 255. Throws ContractError if the input
// holds any other value.
ColoredImage render_color(const GrayImage& binary, const color::ColorModel& model, Rng& rng,
                          ColorMode mode = ColorMode::per_pixel);

// Places `image` at the top-left of a target_width x target_height canvas
// filled with `fill`. Throws SizeError if the target is smaller.
GrayImage pad_image(const GrayImage& image, int target_width, int target_height,
                    std::uint8_t fill);

struct TransferResult {
  GrayImage image;
  ManifestRecord record;  // image_path left empty
};

// normalize -> draw m ~ U{m_min..m_max} -> render_binary -> (pad) ->
// render_color. Padding is applied to the binary raster as paper pixels, so
// padded regions receive background draws like the rest of the page.
// Everything random comes from Rng(record_seed).
TransferResult transfer(const ink::InkSample& sample, const color::ColorModel& model,
                        const TransferConfig& config, std::uint64_t record_seed);

// Canvas size that render_binary uses for an already-normalized sample.
PadSize canvas_size(const ink::InkSample& normalized, const ink::NormalizationConfig& config);

struct RecordFailure {
  std::string id;
  std::string message;
};

struct GenerationReport {
  std::vector<ManifestRecord> manifest;  // input order
  std::vector<RecordFailure> failures;
  bool ok() const { return failures.empty(); }
};

// File name used for a record id under <output_dir>/images/.
std::string image_file_name(std::string_view id);

// Renders every sample with seed derive_seed(master_seed, id), writes
// <output_dir>/images/<id>.pgm and <output_dir>/manifest.jsonl. Failed
// records are reported and skipped. Duplicate ids are rejected with a
// StructuralError before anything is rendered. `jobs` == 0 uses the
// hardware concurrency; output does not depend on it.
GenerationReport generate_dataset(std::span<const ink::InkSample> samples,
                                  const color::ColorModel& model, const TransferConfig& config,
                                  const std::filesystem::path& output_dir, unsigned jobs = 1);

std::string serialize_manifest_record(const ManifestRecord& record);
ManifestRecord parse_manifest_record(std::string_view line);
std::vector<ManifestRecord> parse_manifest(std::string_view contents);

// JSON object mirroring TransferConfig; absent keys keep `base` values,
// unknown keys are rejected.
TransferConfig parse_transfer_config(std::string_view json_text, TransferConfig base = {});

}  // namespace hwforge::transfer
