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

#include "hwforge/color_model.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "hwforge/error.hpp"
#include "json.hpp"

namespace hwforge::color {

void validate(const BetaParams& params) {
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta) || params.alpha <= 0.0 ||
      params.beta <= 0.0) {
    throw ValueError("beta parameters must be finite and positive, got (" +
                     std::to_string(params.alpha) + ", " + std::to_string(params.beta) + ")");
  }
}

void validate(const ColorModel& model) {
  if (model.stroke_dists.empty()) throw ValueError("color model has no distributions");
  if (model.stroke_dists.size() != model.bg_dists.size()) {
    throw ValueError("color model has " + std::to_string(model.stroke_dists.size()) +
                     " stroke and " + std::to_string(model.bg_dists.size()) +
                     " background distributions");
  }
  if (!model.subsets.empty() && model.subsets.size() != model.stroke_dists.size()) {
    throw ValueError("color model subset names are not index-aligned with distributions");
  }
  for (const auto& p : model.stroke_dists) validate(p);
  for (const auto& p : model.bg_dists) validate(p);
}

Histogram histogram(const GrayImage& image) {
  Histogram h{};
  for (std::uint8_t v : image.pixels()) ++h[v];
  return h;
}

int otsu_threshold(const Histogram& hist) {
  using boost::multiprecision::int512_t;

  std::uint64_t total = 0;
  std::uint64_t weighted = 0;
  int occupied = 0;
  for (int i = 0; i < 256; ++i) {
    total += hist[i];
    weighted += static_cast<std::uint64_t>(i) * hist[i];
    occupied += hist[i] > 0 ? 1 : 0;
  }
  if (occupied < 2) {
    throw ValueError("histogram occupies fewer than two levels; cannot separate classes");
  }

  // Between-class variance is proportional to D^2 / (n0 * n1) with
  // D = N * S0 - n0 * S. Candidates are compared exactly by cross-multiplying.
  int best_level = -1;
  int512_t best_num = 0;
  int512_t best_den = 1;
  std::uint64_t n0 = 0;
  std::uint64_t s0 = 0;
  for (int t = 0; t < 255; ++t) {
    n0 += hist[t];
    s0 += static_cast<std::uint64_t>(t) * hist[t];
    const std::uint64_t n1 = total - n0;
    if (n0 == 0 || n1 == 0) continue;
    const int512_t d = int512_t(total) * s0 - int512_t(n0) * weighted;
    const int512_t num = d * d;
    const int512_t den = int512_t(n0) * n1;
    if (best_level < 0 || num * best_den > best_num * den) {
      best_level = t;
      best_num = num;
      best_den = den;
    }
  }
  return best_level;
}

std::vector<double> subsample(std::vector<double> values, std::size_t cap, Rng& rng) {
  if (values.size() <= cap) return values;
  std::vector<double> kept;
  kept.reserve(cap);
  std::size_t needed = cap;
  std::size_t remaining = values.size();
  for (double v : values) {
    if (needed == 0) break;
    if (rng.below(remaining) < needed) {
      kept.push_back(v);
      --needed;
    }
    --remaining;
  }
  return kept;
}

ColorSampleSet extract_color_samples(const GrayImage& image, std::string_view source_key,
                                     std::size_t cap) {
  if (cap == 0) throw ValueError("sample cap must be positive");
  const int level = otsu_threshold(histogram(image));

  ColorSampleSet set;
  set.source_key = std::string(source_key);
  for (std::uint8_t v : image.pixels()) {
    (v <= level ? set.stroke_samples : set.bg_samples).push_back(v / 255.0);
  }
  if (set.stroke_samples.size() < 2) {
    throw ValueError("image from \"" + set.source_key + "\" has fewer than 2 stroke pixels");
  }
  if (set.bg_samples.size() < 2) {
    throw ValueError("image from \"" + set.source_key + "\" has fewer than 2 background pixels");
  }

  Rng rng(derive_seed(0x636f6c6f72ULL, source_key));
  set.stroke_samples = subsample(std::move(set.stroke_samples), cap, rng);
  set.bg_samples = subsample(std::move(set.bg_samples), cap, rng);
  return set;
}

BetaParams fit_beta_moments(std::span<const double> samples) {
  if (samples.size() < 2) throw ValueError("beta fit needs at least two samples");
  long double sum = 0.0L;
  for (double x : samples) {
    if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
      throw ValueError("beta fit sample outside [0, 1]: " + std::to_string(x));
    }
    sum += x;
  }
  const long double n = static_cast<long double>(samples.size());
  const long double mean = sum / n;
  long double sq = 0.0L;
  for (double x : samples) {
    const long double d = x - mean;
    sq += d * d;
  }
  const long double variance = sq / n;

  if (variance == 0.0L) throw DegenerateSampleError("beta fit on samples with zero variance");
  const long double spread = mean * (1.0L - mean);
  if (mean <= 0.0L || mean >= 1.0L || variance >= spread) {
    throw InfeasibleMomentsError("no beta distribution has mean " +
                                 std::to_string(static_cast<double>(mean)) + " and variance " +
                                 std::to_string(static_cast<double>(variance)));
  }
  const long double k = spread / variance - 1.0L;
  BetaParams params{static_cast<double>(mean * k), static_cast<double>((1.0L - mean) * k)};
  validate(params);
  return params;
}

ColorModel build_color_model(std::span<const ColorSampleSet> sample_sets) {
  if (sample_sets.empty()) throw ValueError("color model needs at least one sample set");
  ColorModel model;
  auto clamped = [](const std::vector<double>& values) {
    std::vector<double> out(values);
    for (double& v : out) v = std::clamp(v, kClampLow, kClampHigh);
    return out;
  };
  for (const auto& set : sample_sets) {
    try {
      model.stroke_dists.push_back(fit_beta_moments(clamped(set.stroke_samples)));
    } catch (const ValueError& e) {
      throw ValueError("subset \"" + set.source_key + "\" stroke fit: " + e.what());
    }
    try {
      model.bg_dists.push_back(fit_beta_moments(clamped(set.bg_samples)));
    } catch (const ValueError& e) {
      throw ValueError("subset \"" + set.source_key + "\" background fit: " + e.what());
    }
    model.subsets.push_back(set.source_key);
  }
  return model;
}

double sample_beta(const BetaParams& params, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    const double x = rng.gamma(params.alpha);
    const double y = rng.gamma(params.beta);
    const double r = x / (x + y);
    if (r > 0.0 && r < 1.0) return r;
  }
  // Only reachable for vanishingly small shapes where both gammas underflow.
  return params.alpha >= params.beta ? std::nextafter(1.0, 0.0)
                                     : std::numeric_limits<double>::min();
}

std::size_t choose_distribution_index(const ColorModel& model, Rng& rng) {
  if (model.size() == 0) throw ValueError("color model has no distributions");
  return static_cast<std::size_t>(rng.below(model.size()));
}

std::string serialize_color_model(const ColorModel& model) {
  validate(model);
  nlohmann::ordered_json out;
  out["subsets"] = model.subsets;
  auto pairs = [](const std::vector<BetaParams>& dists) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : dists) arr.push_back({p.alpha, p.beta});
    return arr;
  };
  out["stroke"] = pairs(model.stroke_dists);
  out["background"] = pairs(model.bg_dists);
  return out.dump(2) + "\n";
}

ColorModel parse_color_model(std::string_view json_text) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed color model: ") + e.what(), e.byte);
  }
  if (!root.is_object()) throw StructuralError("color model must be a JSON object");

  auto pairs = [&](const char* key) {
    const auto it = root.find(key);
    if (it == root.end() || !it->is_array()) {
      throw StructuralError(std::string("color model field \"") + key + "\" must be an array");
    }
    std::vector<BetaParams> out;
    for (const auto& pair : *it) {
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        throw StructuralError(std::string("color model \"") + key +
                              "\" entries must be [alpha, beta] pairs");
      }
      out.push_back({pair[0].get<double>(), pair[1].get<double>()});
    }
    return out;
  };

  ColorModel model;
  model.stroke_dists = pairs("stroke");
  model.bg_dists = pairs("background");
  const auto subsets = root.find("subsets");
  if (subsets == root.end() || !subsets->is_array()) {
    throw StructuralError("color model field \"subsets\" must be an array");
  }
  for (const auto& name : *subsets) {
    if (!name.is_string()) throw StructuralError("color model subset names must be strings");
    model.subsets.push_back(name.get<std::string>());
  }
  validate(model);
  return model;
}

}  // namespace hwforge::color
