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

#include "hwforge/ink.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hwforge/error.hpp"
#include "hwforge/text.hpp"
#include "json.hpp"

namespace hwforge::ink {

using nlohmann::json;

std::string_view to_string(Level level) {
  return level == Level::word ? "word" : "line";
}

Level level_from_string(std::string_view name) {
  if (name == "word") return Level::word;
  if (name == "line") return Level::line;
  throw StructuralError("level must be \"word\" or \"line\", got \"" + std::string(name) + "\"");
}

std::size_t InkSample::point_count() const {
  std::size_t n = 0;
  for (const auto& s : strokes) n += s.points.size();
  return n;
}

void validate(const InkSample& sample) {
  if (sample.id.empty()) throw StructuralError("sample id is empty");
  if (sample.strokes.empty()) throw StructuralError("sample " + sample.id + " has no strokes");
  if (text::is_blank(sample.transcript)) {
    throw StructuralError("sample " + sample.id + " has a blank transcript");
  }
  for (std::size_t s = 0; s < sample.strokes.size(); ++s) {
    const auto& points = sample.strokes[s].points;
    if (points.empty()) {
      throw StructuralError("sample " + sample.id + ": stroke " + std::to_string(s) +
                            " has no points");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y)) {
        throw ValueError("sample " + sample.id + ": non-finite coordinate at stroke " +
                         std::to_string(s) + " point " + std::to_string(i));
      }
    }
  }
}

namespace {

const json& require(const json& object, const char* key) {
  const auto it = object.find(key);
  if (it == object.end()) throw StructuralError(std::string("missing field \"") + key + "\"");
  return *it;
}

std::string require_string(const json& object, const char* key) {
  const json& value = require(object, key);
  if (!value.is_string()) {
    throw StructuralError(std::string("field \"") + key + "\" must be a string");
  }
  return value.get<std::string>();
}

double coordinate(const json& value, std::size_t stroke, std::size_t point) {
  if (!value.is_number()) {
    throw StructuralError("coordinate at stroke " + std::to_string(stroke) + " point " +
                          std::to_string(point) + " is not a number");
  }
  return value.get<double>();
}

}  // namespace

InkSample parse_ink_record(std::string_view bytes) {
  json root;
  try {
    root = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed ink record: ") + e.what(), e.byte);
  } catch (const json::out_of_range& e) {
    // number literals beyond double range
    throw ValueError(std::string("ink record value out of range: ") + e.what());
  }
  if (!root.is_object()) throw StructuralError("ink record must be a JSON object");

  InkSample sample;
  sample.id = require_string(root, "id");
  sample.transcript = text::nfc(require_string(root, "transcript"));
  if (const auto it = root.find("level"); it != root.end()) {
    if (!it->is_string()) throw StructuralError("field \"level\" must be a string");
    sample.level = level_from_string(it->get<std::string>());
  }
  if (const auto it = root.find("split"); it != root.end() && !it->is_null()) {
    if (!it->is_string()) throw StructuralError("field \"split\" must be a string");
    sample.split = it->get<std::string>();
  }

  const json& strokes = require(root, "strokes");
  if (!strokes.is_array()) throw StructuralError("field \"strokes\" must be an array");
  if (strokes.empty()) throw StructuralError("sample " + sample.id + " has an empty strokes array");
  sample.strokes.reserve(strokes.size());
  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const json& points = strokes[s];
    if (!points.is_array()) {
      throw StructuralError("stroke " + std::to_string(s) + " must be an array of points");
    }
    Stroke stroke;
    stroke.points.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      const json& pair = points[i];
      if (!pair.is_array() || pair.size() < 2) {
        throw StructuralError("stroke " + std::to_string(s) + " point " + std::to_string(i) +
                              " must be an [x, y] pair");
      }
      stroke.points.push_back({coordinate(pair[0], s, i), coordinate(pair[1], s, i)});
    }
    sample.strokes.push_back(std::move(stroke));
  }
  validate(sample);
  return sample;
}

std::string serialize_ink_record(const InkSample& sample) {
  nlohmann::ordered_json out;
  out["id"] = sample.id;
  out["transcript"] = sample.transcript;
  out["level"] = to_string(sample.level);
  auto strokes = nlohmann::ordered_json::array();
  for (const auto& stroke : sample.strokes) {
    auto points = nlohmann::ordered_json::array();
    for (const auto& p : stroke.points) points.push_back({p.x, p.y});
    strokes.push_back(std::move(points));
  }
  out["strokes"] = std::move(strokes);
  if (sample.split) out["split"] = *sample.split;
  return out.dump();
}

std::vector<RecordResult> read_ink_records(std::string_view contents) {
  std::vector<RecordResult> results;
  std::size_t line_number = 0;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    ++line_number;
    std::string_view line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = end + 1;
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    RecordResult result;
    result.line_number = line_number;
    try {
      result.sample = parse_ink_record(line);
    } catch (const Error& e) {
      result.error = e.what();
    }
    results.push_back(std::move(result));
  }
  return results;
}

BoundingBox bounding_box(std::span<const Stroke> strokes) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  BoundingBox box{inf, inf, -inf, -inf};
  bool any = false;
  for (const auto& stroke : strokes) {
    for (const auto& p : stroke.points) {
      box.min_x = std::min(box.min_x, p.x);
      box.min_y = std::min(box.min_y, p.y);
      box.max_x = std::max(box.max_x, p.x);
      box.max_y = std::max(box.max_y, p.y);
      any = true;
    }
  }
  if (!any) throw ValueError("bounding box of zero points");
  return box;
}

InkSample normalize_geometry(const InkSample& sample, const NormalizationConfig& config) {
  if (config.margin < 0) throw ValueError("margin must be non-negative");
  if (config.target_height && *config.target_height < 2 * config.margin + 1) {
    throw ValueError("target_height " + std::to_string(*config.target_height) +
                     " must be at least 2 * margin + 1");
  }
  const BoundingBox box = bounding_box(sample.strokes);
  const double margin = config.margin;

  InkSample out = sample;
  if (!config.target_height) {
    const double dx = margin - box.min_x;
    const double dy = margin - box.min_y;
    for (auto& stroke : out.strokes) {
      for (auto& p : stroke.points) {
        p.x += dx;
        p.y += dy;
      }
    }
    return out;
  }

  const double inner = static_cast<double>(*config.target_height - 2 * config.margin);
  double scale = 1.0;
  if (box.height() > 0.0) {
    scale = inner / box.height();
  } else if (box.width() > 0.0) {
    scale = inner / box.width();
  }
  for (auto& stroke : out.strokes) {
    for (auto& p : stroke.points) {
      p.x = (p.x - box.min_x) * scale + margin;
      p.y = (p.y - box.min_y) * scale + margin;
    }
  }
  return out;
}

}  // namespace hwforge::ink
