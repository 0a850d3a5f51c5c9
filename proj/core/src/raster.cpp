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

#include "hwforge/raster.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hwforge/error.hpp"

namespace hwforge::raster {

std::string_view to_string(WidthMode mode) {
  return mode == WidthMode::constant ? "constant" : "variable";
}

WidthMode width_mode_from_string(std::string_view name) {
  if (name == "constant") return WidthMode::constant;
  if (name == "variable") return WidthMode::variable;
  throw ValueError("width mode must be \"constant\" or \"variable\", got \"" +
                   std::string(name) + "\"");
}

void validate(const WidthModel& model) {
  if (model.m_min < 1) throw ValueError("m_min must be a positive integer");
  if (model.m_min > model.m_max) {
    throw ValueError("m_min (" + std::to_string(model.m_min) + ") exceeds m_max (" +
                     std::to_string(model.m_max) + ")");
  }
  if (!std::isfinite(model.sigmoid_alpha) || !std::isfinite(model.sigmoid_beta) ||
      !std::isfinite(model.theta_const)) {
    throw ValueError("width model constants must be finite");
  }
}

double segment_angle(ink::Point p0, ink::Point p1) {
  const double dx = p1.x - p0.x;
  const double dy = p1.y - p0.y;
  if (dx == 0.0 && dy == 0.0) throw ValueError("segment angle of a zero-length segment");
  if (dx == 0.0) return dy > 0.0 ? 90.0 : -90.0;
  return std::atan(dy / dx) * (180.0 / std::numbers::pi);
}

double width_factor(double theta_degrees, const WidthModel& model) {
  return 1.0 / (1.0 + std::exp(model.sigmoid_alpha * theta_degrees + model.sigmoid_beta));
}

double stroke_width(double theta_degrees, double m, const WidthModel& model) {
  const double theta = model.mode == WidthMode::constant ? model.theta_const : theta_degrees;
  return m * width_factor(theta, model);
}

int stamp_diameter(double width) {
  return std::max(1, static_cast<int>(std::floor(width + 0.5)));
}

void draw_segment(GrayImage& image, ink::Point p0, ink::Point p1, double width) {
  const double r = stamp_diameter(width) / 2.0;
  const double r2 = r * r;
  const double vx = p1.x - p0.x;
  const double vy = p1.y - p0.y;
  const double len2 = vx * vx + vy * vy;

  const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(p0.x, p1.x) - r)));
  const int x_hi = std::min(image.width() - 1, static_cast<int>(std::ceil(std::max(p0.x, p1.x) + r)));
  const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(p0.y, p1.y) - r)));
  const int y_hi = std::min(image.height() - 1, static_cast<int>(std::ceil(std::max(p0.y, p1.y) + r)));

  for (int y = y_lo; y <= y_hi; ++y) {
    for (int x = x_lo; x <= x_hi; ++x) {
      const double wx = x - p0.x;
      const double wy = y - p0.y;
      double t = len2 > 0.0 ? (wx * vx + wy * vy) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const double ex = wx - t * vx;
      const double ey = wy - t * vy;
      if (ex * ex + ey * ey <= r2) image.at(x, y) = kInk;
    }
  }
}

GrayImage render_binary(std::span<const ink::Stroke> strokes, int canvas_width,
                        int canvas_height, double m, const WidthModel& model) {
  validate(model);
  if (!(m > 0.0) || !std::isfinite(m)) throw ValueError("stroke thickness m must be positive");
  GrayImage image(canvas_width, canvas_height, kPaper);

  for (std::size_t s = 0; s < strokes.size(); ++s) {
    const auto& points = strokes[s].points;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double rx = std::floor(points[i].x + 0.5);
      const double ry = std::floor(points[i].y + 0.5);
      if (!(rx >= 0 && ry >= 0 && rx < canvas_width && ry < canvas_height)) {
        throw ValueError("stroke " + std::to_string(s) + " point " + std::to_string(i) + " (" +
                         std::to_string(points[i].x) + ", " + std::to_string(points[i].y) +
                         ") lies outside the " + std::to_string(canvas_width) + "x" +
                         std::to_string(canvas_height) + " canvas");
      }
    }
  }

  WidthModel constant = model;
  constant.mode = WidthMode::constant;
  const double dot_width = stroke_width(0.0, m, constant);

  for (const auto& stroke : strokes) {
    const auto& points = stroke.points;
    if (points.size() == 1) {
      draw_segment(image, points[0], points[0], dot_width);
      continue;
    }
    double previous = dot_width;
    for (std::size_t i = 1; i < points.size(); ++i) {
      const auto p0 = points[i - 1];
      const auto p1 = points[i];
      double w = previous;
      if (p0 != p1) w = stroke_width(segment_angle(p0, p1), m, model);
      draw_segment(image, p0, p1, w);
      previous = w;
    }
  }
  return image;
}

}  // namespace hwforge::raster
