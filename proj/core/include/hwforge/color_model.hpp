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

// Stroke and background color statistics. Reference scans are split into
// ink and paper pixels by Otsu thresholding, each class is fitted with a
// beta distribution by the method of moments, and rendering draws pixel
// intensities from the fitted pairs.

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hwforge/image.hpp"
#include "hwforge/random.hpp"

namespace hwforge::color {

struct BetaParams {
  double alpha = 1.0;
  double beta = 1.0;

  double mean() const { return alpha / (alpha + beta); }
  double variance() const {
    const double s = alpha + beta;
    return alpha * beta / (s * s * (s + 1.0));
  }
  friend bool operator==(const BetaParams&, const BetaParams&) = default;
};

// Throws ValueError unless both shapes are finite and positive.
void validate(const BetaParams& params);

// Index-aligned stroke/background pairs, one per reference subset.
struct ColorModel {
  std::vector<std::string> subsets;
  std::vector<BetaParams> stroke_dists;
  std::vector<BetaParams> bg_dists;

  std::size_t size() const { return stroke_dists.size(); }
  friend bool operator==(const ColorModel&, const ColorModel&) = default;
};

void validate(const ColorModel& model);

struct ColorSampleSet {
  std::vector<double> stroke_samples;
  std::vector<double> bg_samples;
  std::string source_key;
};

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(const GrayImage& image);

// Level maximizing the between-class variance of {<= level} vs {> level};
// ties resolve to the smallest level. Throws ValueError when fewer than two
// bins are occupied.
int otsu_threshold(const Histogram& histogram);

inline constexpr std::size_t kDefaultSampleCap = 1'000'000;

// Pixels at or below the Otsu level are stroke samples, the rest background,
// each divided by 255. A class larger than `cap` is subsampled uniformly
// without replacement (order preserved) with a seed derived from
// `source_key`. Throws ValueError if either class has fewer than 2 pixels.
ColorSampleSet extract_color_samples(const GrayImage& image, std::string_view source_key,
                                     std::size_t cap = kDefaultSampleCap);

// Uniform subsample of `cap` values without replacement, order preserved.
// Returns the input unchanged when it already fits.
std::vector<double> subsample(std::vector<double> values, std::size_t cap, Rng& rng);

// Method-of-moments fit using the population variance v:
//   alpha = mean * (mean * (1 - mean) / v - 1)
//   beta  = (1 - mean) * (mean * (1 - mean) / v - 1)
// Throws DegenerateSampleError on zero variance, InfeasibleMomentsError when
// v >= mean * (1 - mean), and ValueError for fewer than two samples or
// values outside [0, 1].
BetaParams fit_beta_moments(std::span<const double> samples);

// Extreme intensities are pulled inside the open unit interval before fitting.
inline constexpr double kClampLow = 1.0 / 510.0;
inline constexpr double kClampHigh = 1.0 - 1.0 / 510.0;

// One stroke/background pair per sample set, in input order. Samples are
// clamped to [kClampLow, kClampHigh] first. Fitting errors are rethrown with
// the set's source_key in the message.
ColorModel build_color_model(std::span<const ColorSampleSet> sample_sets);

// One Beta(alpha, beta) variate, strictly inside (0, 1).
double sample_beta(const BetaParams& params, Rng& rng);

// Uniform over [0, model.size()); one index selects both the stroke and the
// background distribution of an image.
std::size_t choose_distribution_index(const ColorModel& model, Rng& rng);

// {"subsets": [...], "stroke": [[a, b], ...], "background": [[a, b], ...]}
std::string serialize_color_model(const ColorModel& model);
ColorModel parse_color_model(std::string_view json_text);

}  // namespace hwforge::color
