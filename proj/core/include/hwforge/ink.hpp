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

// Online-handwriting ingestion: trajectory records in the native
// line-delimited JSON format or a small InkML subset, plus geometry
// normalization onto a raster canvas.
//
// Native record (one per line):
//   {"id": "w1", "transcript": "à", "level": "word",
//    "strokes": [[[0, 0], [5, 3]], [[7, 1]]]}
// An optional "split" string is carried through to the manifest.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hwforge::ink {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Stroke {
  std::vector<Point> points;
  friend bool operator==(const Stroke&, const Stroke&) = default;
};

enum class Level { word, line };

std::string_view to_string(Level level);
Level level_from_string(std::string_view name);

struct InkSample {
  std::string id;
  std::vector<Stroke> strokes;
  std::string transcript;  // NFC
  Level level = Level::word;
  std::optional<std::string> split;

  std::size_t point_count() const;
  friend bool operator==(const InkSample&, const InkSample&) = default;
};

struct NormalizationConfig {
  int margin = 8;
  std::optional<int> target_height;
};

struct BoundingBox {
  double min_x;
  double min_y;
  double max_x;
  double max_y;
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

// Enforces the InkSample invariants; throws StructuralError or ValueError.
void validate(const InkSample& sample);

// Parses one native record. Errors: ParseError (with byte offset) on bad
// JSON or wrongly typed fields, StructuralError on missing fields or empty
// strokes, ValueError on non-finite coordinates.
InkSample parse_ink_record(std::string_view bytes);

// Canonical single-line serialization with keys id, transcript, level,
// strokes[, split].
std::string serialize_ink_record(const InkSample& sample);

// Reads a line-delimited file of native records. Blank lines are skipped.
// Each entry holds either a sample or the parse error for that line.
struct RecordResult {
  std::size_t line_number = 0;
  std::optional<InkSample> sample;
  std::string error;
};
std::vector<RecordResult> read_ink_records(std::string_view contents);

// InkML subset: every <trace> in document order becomes one stroke; the
// transcript comes from <annotation type="transcription">. Channels beyond
// x and y are ignored. The id is taken from the <ink> element's xml:id or
// an <annotation type="id">, falling back to `fallback_id`.
InkSample parse_inkml_subset(std::string_view bytes, std::string_view fallback_id = "");

// Writes the sample in the InkML subset accepted by parse_inkml_subset.
std::string write_inkml_subset(const InkSample& sample);

BoundingBox bounding_box(std::span<const Stroke> strokes);

// Translates the sample so its bounding box starts at (margin, margin) and,
// when target_height is set, scales it uniformly so the box height equals
// target_height - 2 * margin.
InkSample normalize_geometry(const InkSample& sample, const NormalizationConfig& config);

}  // namespace hwforge::ink
