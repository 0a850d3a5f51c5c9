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

#include "hwforge/transfer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>
#include <unordered_set>

#include "hwforge/error.hpp"
#include "json.hpp"

namespace hwforge::transfer {

namespace {

std::uint8_t to_byte(double unit) {
  const double scaled = std::floor(unit * 255.0 + 0.5);
  return static_cast<std::uint8_t>(std::clamp(scaled, 0.0, 255.0));
}

void require_binary(const GrayImage& image) {
  for (std::size_t i = 0; i < image.size(); ++i) {
    const std::uint8_t v = image.pixels()[i];
    if (v != raster::kInk && v != raster::kPaper) {
      throw ContractError("colorizer input must be binary; pixel " + std::to_string(i) +
                          " has value " + std::to_string(v));
    }
  }
}

}  // namespace

ColoredImage render_color(const GrayImage& binary, const color::ColorModel& model, Rng& rng,
                          ColorMode mode) {
  color::validate(model);
  require_binary(binary);
  GrayImage out = binary;

  if (mode == ColorMode::flat) {
    // One realization per distribution, then a shared index picks the pair.
    std::vector<double> stroke_values;
    std::vector<double> bg_values;
    for (const auto& p : model.stroke_dists) stroke_values.push_back(color::sample_beta(p, rng));
    for (const auto& p : model.bg_dists) bg_values.push_back(color::sample_beta(p, rng));
    const std::size_t index = color::choose_distribution_index(model, rng);
    const std::uint8_t ink = to_byte(stroke_values[index]);
    const std::uint8_t paper = to_byte(bg_values[index]);
    for (auto& v : out.pixels()) v = v == raster::kInk ? ink : paper;
    return {std::move(out), index};
  }

  const std::size_t index = color::choose_distribution_index(model, rng);
  const auto& stroke = model.stroke_dists[index];
  const auto& bg = model.bg_dists[index];
  for (auto& v : out.pixels()) {
    v = to_byte(color::sample_beta(v == raster::kInk ? stroke : bg, rng));
  }
  return {std::move(out), index};
}

GrayImage pad_image(const GrayImage& image, int target_width, int target_height,
                    std::uint8_t fill) {
  if (target_width < image.width() || target_height < image.height()) {
    throw SizeError("cannot pad a " + std::to_string(image.width()) + "x" +
                    std::to_string(image.height()) + " image to " +
                    std::to_string(target_width) + "x" + std::to_string(target_height));
  }
  GrayImage out(target_width, target_height, fill);
  for (int y = 0; y < image.height(); ++y) {
    for (int x = 0; x < image.width(); ++x) out.at(x, y) = image.at(x, y);
  }
  return out;
}

PadSize canvas_size(const ink::InkSample& normalized, const ink::NormalizationConfig& config) {
  const auto box = ink::bounding_box(normalized.strokes);
  const auto extent = [&](double max) {
    return static_cast<int>(std::floor(max + 0.5)) + config.margin + 1;
  };
  return {extent(box.max_x), extent(box.max_y)};
}

TransferResult transfer(const ink::InkSample& sample, const color::ColorModel& model,
                        const TransferConfig& config, std::uint64_t record_seed) {
  ink::validate(sample);
  color::validate(model);
  raster::validate(config.width_model);

  const ink::InkSample normalized = ink::normalize_geometry(sample, config.normalization);
  const PadSize canvas = canvas_size(normalized, config.normalization);

  Rng rng(record_seed);
  const auto m = static_cast<double>(
      rng.uniform_int(config.width_model.m_min, config.width_model.m_max));

  GrayImage binary =
      raster::render_binary(normalized.strokes, canvas.width, canvas.height, m, config.width_model);
  if (config.pad_to) {
    if (canvas.width > config.pad_to->width || canvas.height > config.pad_to->height) {
      throw SizeError("sample " + sample.id + " renders at " + std::to_string(canvas.width) +
                      "x" + std::to_string(canvas.height) + ", larger than the pad size " +
                      std::to_string(config.pad_to->width) + "x" +
                      std::to_string(config.pad_to->height));
    }
    binary = pad_image(binary, config.pad_to->width, config.pad_to->height, raster::kPaper);
  }

  ColoredImage colored = render_color(binary, model, rng, config.color_mode);

  ManifestRecord record;
  record.id = sample.id;
  record.transcript = sample.transcript;
  record.level = sample.level;
  record.seed = record_seed;
  record.m_value = m;
  record.dist_index = colored.dist_index;
  record.width_mode = config.width_model.mode;
  record.split = sample.split;
  return {std::move(colored.image), std::move(record)};
}

std::string image_file_name(std::string_view id) {
  std::string name;
  for (char c : id) {
    const bool safe = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '_' || c == '.';
    name += safe ? c : '_';
  }
  if (name.empty() || name.front() == '.') name.insert(0, "_");
  return name + ".pgm";
}

GenerationReport generate_dataset(std::span<const ink::InkSample> samples,
                                  const color::ColorModel& model, const TransferConfig& config,
                                  const std::filesystem::path& output_dir, unsigned jobs) {
  namespace fs = std::filesystem;

  {
    std::unordered_set<std::string> ids;
    std::unordered_set<std::string> files;
    for (const auto& s : samples) {
      if (!ids.insert(s.id).second) {
        throw StructuralError("duplicate sample id \"" + s.id + "\"");
      }
      if (!files.insert(image_file_name(s.id)).second) {
        throw StructuralError("sample id \"" + s.id + "\" collides with another id's file name " +
                              image_file_name(s.id));
      }
    }
  }
  color::validate(model);
  raster::validate(config.width_model);

  const fs::path images_dir = output_dir / "images";
  std::error_code ec;
  fs::create_directories(images_dir, ec);
  if (ec) throw IoError("cannot create " + images_dir.string() + ": " + ec.message());

  std::vector<std::optional<ManifestRecord>> records(samples.size());
  std::vector<std::string> errors(samples.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (std::size_t i = next++; i < samples.size(); i = next++) {
      const auto& sample = samples[i];
      try {
        TransferResult result =
            transfer(sample, model, config, derive_seed(config.master_seed, sample.id));
        const std::string file = image_file_name(sample.id);
        write_pgm(images_dir / file, result.image);
        result.record.image_path = "images/" + file;
        records[i] = std::move(result.record);
      } catch (const std::exception& e) {
        errors[i] = e.what();
        if (errors[i].empty()) errors[i] = "unknown error";
      }
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, samples.size())));
  if (jobs <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(work);
  }

  GenerationReport report;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (records[i]) {
      report.manifest.push_back(std::move(*records[i]));
    } else {
      report.failures.push_back({samples[i].id, errors[i]});
    }
  }

  std::string manifest;
  for (const auto& r : report.manifest) manifest += serialize_manifest_record(r) + "\n";
  const fs::path manifest_path = output_dir / "manifest.jsonl";
  std::ofstream out(manifest_path, std::ios::binary | std::ios::trunc);
  out << manifest;
  if (!out) throw IoError("cannot write " + manifest_path.string());
  return report;
}

std::string serialize_manifest_record(const ManifestRecord& record) {
  nlohmann::ordered_json out;
  out["id"] = record.id;
  out["image_path"] = record.image_path;
  out["transcript"] = record.transcript;
  out["level"] = ink::to_string(record.level);
  out["seed"] = record.seed;
  out["m_value"] = record.m_value;
  out["dist_index"] = record.dist_index;
  out["width_mode"] = raster::to_string(record.width_mode);
  if (record.split) out["split"] = *record.split;
  return out.dump();
}

ManifestRecord parse_manifest_record(std::string_view line) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(line.begin(), line.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed manifest record: ") + e.what(), e.byte);
  }
  if (!root.is_object()) throw StructuralError("manifest record must be a JSON object");
  try {
    ManifestRecord r;
    r.id = root.at("id").get<std::string>();
    r.image_path = root.at("image_path").get<std::string>();
    r.transcript = root.at("transcript").get<std::string>();
    r.level = ink::level_from_string(root.at("level").get<std::string>());
    r.seed = root.at("seed").get<std::uint64_t>();
    r.m_value = root.at("m_value").get<double>();
    r.dist_index = root.at("dist_index").get<std::size_t>();
    r.width_mode = raster::width_mode_from_string(root.at("width_mode").get<std::string>());
    if (const auto it = root.find("split"); it != root.end() && !it->is_null()) {
      r.split = it->get<std::string>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("invalid manifest record: ") + e.what());
  }
}

std::vector<ManifestRecord> parse_manifest(std::string_view contents) {
  std::vector<ManifestRecord> records;
  std::size_t start = 0;
  std::size_t line_number = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string_view::npos) end = contents.size();
    ++line_number;
    const std::string_view line = contents.substr(start, end - start);
    start = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      records.push_back(parse_manifest_record(line));
    } catch (const Error& e) {
      throw StructuralError("manifest line " + std::to_string(line_number) + ": " + e.what());
    }
  }
  return records;
}

TransferConfig parse_transfer_config(std::string_view json_text, TransferConfig base) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed config: ") + e.what(), e.byte);
  }
  if (!root.is_object()) throw StructuralError("config must be a JSON object");

  auto reject_unknown = [](const nlohmann::json& object, std::initializer_list<const char*> keys,
                           const std::string& where) {
    for (const auto& [key, value] : object.items()) {
      if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
        throw StructuralError("unknown config key \"" + where + key + "\"");
      }
    }
  };

  try {
    reject_unknown(root, {"width_model", "normalization", "master_seed", "pad_to", "flat_color"},
                   "");
    if (const auto it = root.find("width_model"); it != root.end()) {
      reject_unknown(*it,
                     {"mode", "sigmoid_alpha", "sigmoid_beta", "m_min", "m_max", "theta_const"},
                     "width_model.");
      auto& w = base.width_model;
      if (it->contains("mode")) w.mode = raster::width_mode_from_string(it->at("mode").get<std::string>());
      if (it->contains("sigmoid_alpha")) w.sigmoid_alpha = it->at("sigmoid_alpha").get<double>();
      if (it->contains("sigmoid_beta")) w.sigmoid_beta = it->at("sigmoid_beta").get<double>();
      if (it->contains("m_min")) w.m_min = it->at("m_min").get<int>();
      if (it->contains("m_max")) w.m_max = it->at("m_max").get<int>();
      if (it->contains("theta_const")) w.theta_const = it->at("theta_const").get<double>();
    }
    if (const auto it = root.find("normalization"); it != root.end()) {
      reject_unknown(*it, {"margin", "target_height"}, "normalization.");
      if (it->contains("margin")) base.normalization.margin = it->at("margin").get<int>();
      if (it->contains("target_height")) {
        const auto& th = it->at("target_height");
        base.normalization.target_height =
            th.is_null() ? std::nullopt : std::optional<int>(th.get<int>());
      }
    }
    if (root.contains("master_seed")) base.master_seed = root.at("master_seed").get<std::uint64_t>();
    if (const auto it = root.find("pad_to"); it != root.end()) {
      if (it->is_null()) {
        base.pad_to.reset();
      } else {
        if (!it->is_array() || it->size() != 2) {
          throw StructuralError("config \"pad_to\" must be a [width, height] pair");
        }
        base.pad_to = PadSize{(*it)[0].get<int>(), (*it)[1].get<int>()};
      }
    }
    if (root.contains("flat_color")) {
      base.color_mode = root.at("flat_color").get<bool>() ? ColorMode::flat : ColorMode::per_pixel;
    }
  } catch (const nlohmann::json::exception& e) {
    throw StructuralError(std::string("invalid config value: ") + e.what());
  }
  raster::validate(base.width_model);
  return base;
}

}  // namespace hwforge::transfer
