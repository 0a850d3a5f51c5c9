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

#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <regex>
#include <string_view>

#include "CLI11.hpp"
#include "hwforge/color_model.hpp"
#include "hwforge/error.hpp"
#include "hwforge/image.hpp"
#include "hwforge/ink.hpp"
#include "hwforge/metrics.hpp"
#include "hwforge/random.hpp"
#include "hwforge/transfer.hpp"
#include "json.hpp"

namespace hwforge::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const fs::path& path) {
  const auto bytes = read_file_bytes(path);
  return std::string(bytes.begin(), bytes.end());
}

void write_text(const fs::path& path, std::string_view text) {
  write_file_bytes(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

// Lines without terminators; a trailing newline does not add an empty line.
std::vector<std::string> read_lines(const fs::path& path) {
  const std::string contents = read_text(path);
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < contents.size()) {
    std::size_t end = contents.find('\n', start);
    if (end == std::string::npos) end = contents.size();
    std::string line = contents.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

std::optional<transfer::PadSize> parse_pad(const std::string& spec) {
  static const std::regex pattern(R"((\d{1,6})x(\d{1,6}))");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern)) return std::nullopt;
  transfer::PadSize pad{std::stoi(m[1]), std::stoi(m[2])};
  if (pad.width <= 0 || pad.height <= 0) return std::nullopt;
  return pad;
}

// Flags shared by `render` and `generate`.
struct PipelineFlags {
  std::string config;
  std::uint64_t seed = 0;
  std::string width_mode;
  int m_min = 2;
  int m_max = 5;
  std::string pad;
  bool flat_color = false;
  int margin = 8;
  int target_height = 0;

  CLI::Option* seed_opt = nullptr;
  CLI::Option* width_mode_opt = nullptr;
  CLI::Option* m_min_opt = nullptr;
  CLI::Option* m_max_opt = nullptr;
  CLI::Option* pad_opt = nullptr;
  CLI::Option* flat_opt = nullptr;
  CLI::Option* margin_opt = nullptr;
  CLI::Option* target_height_opt = nullptr;
};

void add_pipeline_options(CLI::App* cmd, PipelineFlags& f) {
  cmd->add_option("--config", f.config, "Pipeline config file (JSON); flags override it")
      ->check(CLI::ExistingFile);
  f.seed_opt = cmd->add_option("--seed", f.seed, "Master seed (fallback: HWFORGE_SEED, then 0)")
                   ->envname("HWFORGE_SEED");
  f.width_mode_opt = cmd->add_option("--width-mode", f.width_mode, "Stroke width model")
                         ->check(CLI::IsMember({"constant", "variable"}));
  f.m_min_opt = cmd->add_option("--m-min", f.m_min, "Smallest stroke thickness m (default 2)")
                    ->check(CLI::PositiveNumber);
  f.m_max_opt = cmd->add_option("--m-max", f.m_max, "Largest stroke thickness m (default 5)")
                    ->check(CLI::PositiveNumber);
  f.pad_opt = cmd->add_option("--pad", f.pad, "Pad every image to WxH pixels")
                  ->check(CLI::Validator(
                      [](std::string& v) {
                        return parse_pad(v) ? std::string() : "expected WxH, e.g. 400x120";
                      },
                      "WxH", "pad size"));
  f.flat_opt = cmd->add_flag("--flat-color", f.flat_color,
                             "One color per image for ink and one for paper");
  f.margin_opt = cmd->add_option("--margin", f.margin, "Blank margin around the ink (default 8)")
                     ->check(CLI::NonNegativeNumber);
  f.target_height_opt =
      cmd->add_option("--target-height", f.target_height, "Scale ink to this image height")
          ->check(CLI::PositiveNumber);
}

transfer::TransferConfig resolve_config(const PipelineFlags& f) {
  transfer::TransferConfig config;
  if (!f.config.empty()) config = transfer::parse_transfer_config(read_text(f.config));
  if (f.seed_opt->count() > 0) config.master_seed = f.seed;
  if (f.width_mode_opt->count() > 0) {
    config.width_model.mode = raster::width_mode_from_string(f.width_mode);
  }
  if (f.m_min_opt->count() > 0) config.width_model.m_min = f.m_min;
  if (f.m_max_opt->count() > 0) config.width_model.m_max = f.m_max;
  if (f.pad_opt->count() > 0) config.pad_to = parse_pad(f.pad);
  if (f.flat_opt->count() > 0 && f.flat_color) config.color_mode = transfer::ColorMode::flat;
  if (f.margin_opt->count() > 0) config.normalization.margin = f.margin;
  if (f.target_height_opt->count() > 0) config.normalization.target_height = f.target_height;
  raster::validate(config.width_model);
  return config;
}

struct LoadedSamples {
  std::vector<ink::InkSample> samples;
  std::vector<transfer::RecordFailure> failures;
};

void load_file(const fs::path& path, LoadedSamples& loaded) {
  if (path.extension() == ".inkml") {
    try {
      loaded.samples.push_back(ink::parse_inkml_subset(read_text(path), path.stem().string()));
    } catch (const Error& e) {
      loaded.failures.push_back({path.filename().string(), e.what()});
    }
    return;
  }
  for (auto& r : ink::read_ink_records(read_text(path))) {
    if (r.sample) {
      loaded.samples.push_back(std::move(*r.sample));
    } else {
      loaded.failures.push_back(
          {path.filename().string() + ":" + std::to_string(r.line_number), r.error});
    }
  }
}

// A .jsonl file of native records, one .inkml document, or a directory of
// either (sorted by file name).
LoadedSamples load_samples(const fs::path& path) {
  LoadedSamples loaded;
  if (fs::is_directory(path)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".inkml" || ext == ".jsonl")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) load_file(f, loaded);
  } else {
    load_file(path, loaded);
  }
  return loaded;
}

void report_failures(const std::vector<transfer::RecordFailure>& failures, std::ostream& err) {
  for (const auto& f : failures) err << "error: record " << f.id << ": " << f.message << "\n";
}

int cmd_fit_colors(const fs::path& images_dir, const fs::path& out_path, std::size_t cap,
                   std::ostream& out, std::ostream& err) {
  std::vector<fs::path> subsets;
  for (const auto& entry : fs::directory_iterator(images_dir)) {
    if (entry.is_directory()) subsets.push_back(entry.path());
  }
  std::sort(subsets.begin(), subsets.end());

  color::ColorModel model;
  for (const auto& subset : subsets) {
    const std::string key = subset.filename().string();
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(subset)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    color::ColorSampleSet merged;
    merged.source_key = key;
    for (const auto& file : files) {
      const auto ext = file.extension();
      if (ext != ".pgm" && ext != ".pnm") {
        err << "warning: " << file.string() << ": not a PGM image, skipped\n";
        continue;
      }
      try {
        const auto set = color::extract_color_samples(read_pgm(file), key + "/" + file.filename().string(), cap);
        merged.stroke_samples.insert(merged.stroke_samples.end(), set.stroke_samples.begin(),
                                     set.stroke_samples.end());
        merged.bg_samples.insert(merged.bg_samples.end(), set.bg_samples.begin(),
                                 set.bg_samples.end());
      } catch (const Error& e) {
        err << "warning: " << file.string() << ": " << e.what() << ", skipped\n";
      }
    }
    if (merged.stroke_samples.empty()) {
      err << "warning: subset " << key << " has no usable images, skipped\n";
      continue;
    }
    Rng rng(derive_seed(cap, key));
    merged.stroke_samples = color::subsample(std::move(merged.stroke_samples), cap, rng);
    merged.bg_samples = color::subsample(std::move(merged.bg_samples), cap, rng);
    try {
      const auto fitted = color::build_color_model(std::span(&merged, 1));
      model.subsets.push_back(key);
      model.stroke_dists.push_back(fitted.stroke_dists.front());
      model.bg_dists.push_back(fitted.bg_dists.front());
    } catch (const Error& e) {
      err << "warning: " << e.what() << ", subset skipped\n";
    }
  }
  if (model.size() == 0) {
    err << "error: no subset under " << images_dir.string() << " produced a color model\n";
    return kDataError;
  }
  write_text(out_path, color::serialize_color_model(model));
  out << "{\"subsets\": " << model.size() << ", \"out\": " << nlohmann::json(out_path.string())
      << "}\n";
  return kSuccess;
}

int cmd_render(const fs::path& ink_path, const std::string& id, const fs::path& colors,
               const fs::path& out_path, const PipelineFlags& flags, std::ostream& out,
               std::ostream& err) {
  const auto config = resolve_config(flags);
  const auto model = color::parse_color_model(read_text(colors));
  auto loaded = load_samples(ink_path);
  const ink::InkSample* chosen = nullptr;
  for (const auto& s : loaded.samples) {
    if (id.empty() || s.id == id) {
      chosen = &s;
      break;
    }
  }
  if (chosen == nullptr) {
    report_failures(loaded.failures, err);
    err << "error: " << (id.empty() ? "no valid sample" : "no sample with id " + id) << " in "
        << ink_path.string() << "\n";
    return kDataError;
  }
  auto result = transfer::transfer(*chosen, model, config, derive_seed(config.master_seed, chosen->id));
  write_pgm(out_path, result.image);
  result.record.image_path = out_path.string();
  out << transfer::serialize_manifest_record(result.record) << "\n";
  return kSuccess;
}

int cmd_generate(const fs::path& ink_path, const fs::path& colors, const fs::path& out_dir,
                 unsigned jobs, const PipelineFlags& flags, std::ostream& out, std::ostream& err) {
  const auto config = resolve_config(flags);
  const auto model = color::parse_color_model(read_text(colors));
  auto loaded = load_samples(ink_path);
  auto report = transfer::generate_dataset(loaded.samples, model, config, out_dir, jobs);

  auto failures = loaded.failures;
  failures.insert(failures.end(), report.failures.begin(), report.failures.end());
  report_failures(failures, err);
  err << "generated " << report.manifest.size() << " images, " << failures.size() << " failed\n";
  out << "{\"generated\": " << report.manifest.size() << ", \"failed\": " << failures.size()
      << ", \"manifest\": " << nlohmann::json((out_dir / "manifest.jsonl").string()) << "}\n";
  if (failures.empty()) return kSuccess;
  return report.manifest.empty() ? kDataError : kPartialFailure;
}

int cmd_score(const std::string& refs, const std::string& hyps, const std::string& pairs_path,
              std::ostream& out, std::ostream& err) {
  std::vector<metrics::EvalPair> pairs;
  if (!pairs_path.empty()) {
    const auto lines = read_lines(pairs_path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].find_first_not_of(" \t") == std::string::npos) continue;
      nlohmann::json row;
      try {
        row = nlohmann::json::parse(lines[i]);
        pairs.push_back({row.at("id").get<std::string>(), row.at("reference").get<std::string>(),
                         row.at("hypothesis").get<std::string>()});
      } catch (const nlohmann::json::exception& e) {
        throw StructuralError("pairs line " + std::to_string(i + 1) + ": " + e.what());
      }
    }
  } else {
    const auto ref_lines = read_lines(refs);
    const auto hyp_lines = read_lines(hyps);
    if (ref_lines.size() != hyp_lines.size()) {
      err << "error: line count mismatch: references have " << ref_lines.size()
          << " lines, hypotheses have " << hyp_lines.size() << "\n";
      return kDataError;
    }
    for (std::size_t i = 0; i < ref_lines.size(); ++i) {
      pairs.push_back({"line " + std::to_string(i + 1), ref_lines[i], hyp_lines[i]});
    }
  }
  out << metrics::to_json(metrics::corpus_score(pairs)) << "\n";
  return kSuccess;
}

int cmd_stats(const fs::path& manifest_path, std::ostream& out) {
  const auto records = transfer::parse_manifest(read_text(manifest_path));
  std::vector<std::string> transcripts;
  for (const auto& r : records) transcripts.push_back(r.transcript);
  out << metrics::to_json(metrics::char_frequency(transcripts)) << "\n";
  return kSuccess;
}

int cmd_kappa(const fs::path& a, const fs::path& b, std::ostream& out) {
  const auto labels_a = read_lines(a);
  const auto labels_b = read_lines(b);
  const double kappa = metrics::cohen_kappa(labels_a, labels_b);
  nlohmann::ordered_json report;
  report["kappa"] = kappa;
  report["items"] = labels_a.size();
  out << report.dump(2) << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hwforge: synthesize offline handwriting images from online ink and score "
               "recognizer output"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // fit-colors
  std::string images_dir;
  std::string colors_out;
  std::size_t cap = color::kDefaultSampleCap;
  auto* fit = app.add_subcommand("fit-colors", "Fit stroke/background beta distributions per subset directory");
  fit->add_option("--images", images_dir, "Directory with one subdirectory of PGM images per subset")
      ->required()
      ->check(CLI::ExistingDirectory);
  fit->add_option("--out", colors_out, "Output color-model file")->required();
  fit->add_option("--cap", cap, "Maximum samples per class per subset (default 1000000)")
      ->check(CLI::PositiveNumber);

  // render
  std::string render_ink;
  std::string render_id;
  std::string render_colors;
  std::string render_out;
  PipelineFlags render_flags;
  auto* render = app.add_subcommand("render", "Render one ink sample to a PGM image");
  render->add_option("--ink", render_ink, "Ink file (.jsonl or .inkml) or directory")
      ->required()
      ->check(CLI::ExistingPath);
  render->add_option("--id", render_id, "Sample id to render (default: first valid sample)");
  render->add_option("--colors", render_colors, "Color-model file")
      ->required()
      ->check(CLI::ExistingFile);
  render->add_option("--out", render_out, "Output PGM path")->required();
  add_pipeline_options(render, render_flags);

  // generate
  std::string gen_ink;
  std::string gen_colors;
  std::string gen_out;
  unsigned jobs = 0;
  PipelineFlags gen_flags;
  auto* generate = app.add_subcommand("generate", "Render a dataset of images plus manifest");
  generate->add_option("--ink", gen_ink, "Ink file (.jsonl or .inkml) or directory")
      ->required()
      ->check(CLI::ExistingPath);
  generate->add_option("--colors", gen_colors, "Color-model file")
      ->required()
      ->check(CLI::ExistingFile);
  generate->add_option("--out-dir", gen_out, "Output directory for images/ and manifest.jsonl")
      ->required();
  generate->add_option("--jobs", jobs, "Worker threads (default: machine parallelism)");
  add_pipeline_options(generate, gen_flags);

  // score
  std::string refs;
  std::string hyps;
  std::string pairs;
  auto* score = app.add_subcommand("score", "Corpus CER/WER of hypotheses against references");
  auto* refs_opt = score->add_option("--refs", refs, "Reference transcripts, one per line")
                       ->check(CLI::ExistingFile);
  auto* hyps_opt = score->add_option("--hyps", hyps, "Hypotheses aligned with --refs by line")
                       ->check(CLI::ExistingFile);
  auto* pairs_opt =
      score->add_option("--pairs", pairs, "JSON lines with id, reference, hypothesis")
          ->check(CLI::ExistingFile);
  refs_opt->needs(hyps_opt);
  hyps_opt->needs(refs_opt);
  pairs_opt->excludes(refs_opt)->excludes(hyps_opt);

  // stats
  std::string manifest;
  auto* stats = app.add_subcommand("stats", "Character-class frequencies of manifest transcripts");
  stats->add_option("--manifest", manifest, "Manifest file (JSON lines)")
      ->required()
      ->check(CLI::ExistingFile);

  // kappa
  std::string labels_a;
  std::string labels_b;
  auto* kappa = app.add_subcommand("kappa", "Cohen's kappa between two label files");
  kappa->add_option("labels_a", labels_a, "First annotator, one label per line")
      ->required()
      ->check(CLI::ExistingFile);
  kappa->add_option("labels_b", labels_b, "Second annotator, one label per line")
      ->required()
      ->check(CLI::ExistingFile);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (score->parsed() && pairs.empty() && refs.empty()) {
      throw CLI::RequiredError("score needs --refs and --hyps, or --pairs");
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    if (fit->parsed()) return cmd_fit_colors(images_dir, colors_out, cap, out, err);
    if (render->parsed()) {
      return cmd_render(render_ink, render_id, render_colors, render_out, render_flags, out, err);
    }
    if (generate->parsed()) {
      return cmd_generate(gen_ink, gen_colors, gen_out, jobs, gen_flags, out, err);
    }
    if (score->parsed()) return cmd_score(refs, hyps, pairs, out, err);
    if (stats->parsed()) return cmd_stats(manifest, out);
    if (kappa->parsed()) return cmd_kappa(labels_a, labels_b, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}

}  // namespace hwforge::cli
