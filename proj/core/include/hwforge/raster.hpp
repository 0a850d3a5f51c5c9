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

// Binary stroke rasterization with the sigmoid stroke-width model
//
//   w(theta) = m * d(theta),   d(theta) = 1 / (1 + exp(a * theta + b))
//
// theta is the segment angle in degrees in image coordinates (y down), so
// upward pen motion has theta < 0 and, with a < 0, a thinner stroke.

#include <span>

#include "hwforge/image.hpp"
#include "hwforge/ink.hpp"

namespace hwforge::raster {

enum class WidthMode { constant, variable };

std::string_view to_string(WidthMode mode);
WidthMode width_mode_from_string(std::string_view name);

struct WidthModel {
  WidthMode mode = WidthMode::constant;
  double sigmoid_alpha = -0.1;
  double sigmoid_beta = 1.13;
  int m_min = 2;
  int m_max = 5;
  double theta_const = 90.0;  // degrees; d(90) is close to 1
};

// Throws ValueError for m_min < 1, m_min > m_max or non-finite constants.
void validate(const WidthModel& model);

inline constexpr std::uint8_t kInk = 0;
inline constexpr std::uint8_t kPaper = 255;

// Angle of p0 -> p1 in degrees, in [-90, 90]. A vertical segment maps to
// +-90 by the sign of dy. Throws ValueError when p0 == p1.
double segment_angle(ink::Point p0, ink::Point p1);

double width_factor(double theta_degrees, const WidthModel& model);

// m * d(theta) in variable mode, m * d(theta_const) in constant mode.
double stroke_width(double theta_degrees, double m, const WidthModel& model);

// Stamped diameter in pixels for a real-valued width: max(1, round(w)).
int stamp_diameter(double width);

// Sets to kInk every pixel whose center lies within stamp_diameter(w) / 2
// of the segment (a capsule). Pixels outside the image are clipped.
void draw_segment(GrayImage& image, ink::Point p0, ink::Point p1, double width);

// Algorithm: start from an all-paper canvas and stamp every consecutive
// point pair of every stroke. Single-point strokes stamp a dot of the
// constant-mode width; a zero-length segment reuses the previous segment's
// width (constant-mode width for the first). Throws ValueError naming the
// stroke and point when a rounded point falls outside the canvas.
GrayImage render_binary(std::span<const ink::Stroke> strokes, int canvas_width,
                        int canvas_height, double m, const WidthModel& model);

}  // namespace hwforge::raster
