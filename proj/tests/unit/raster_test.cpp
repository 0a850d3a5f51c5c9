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

#include <cmath>
#include <random>

#include "doctest.h"
#include "hwforge/error.hpp"
#include "hwforge/raster.hpp"
#include "oracles.hpp"

using namespace hwforge;
using namespace hwforge::raster;
using ink::Point;
using ink::Stroke;

namespace {

WidthModel variable_model() {
  WidthModel m;
  m.mode = WidthMode::variable;
  return m;
}

int ink_count(const GrayImage& image) {
  int n = 0;
  for (auto v : image.pixels()) n += v == kInk;
  return n;
}

int column_thickness(const GrayImage& image, int x) {
  int n = 0;
  for (int y = 0; y < image.height(); ++y) n += image.at(x, y) == kInk;
  return n;
}

int row_thickness(const GrayImage& image, int y) {
  int n = 0;
  for (int x = 0; x < image.width(); ++x) n += image.at(x, y) == kInk;
  return n;
}

}  // namespace

TEST_SUITE("raster") {
  TEST_CASE("sigmoid constants are the defaults") {
    const WidthModel m;
    CHECK(m.sigmoid_alpha == -0.1);
    CHECK(m.sigmoid_beta == 1.13);
    CHECK(m.m_min == 2);
    CHECK(m.m_max == 5);
    CHECK(m.theta_const == 90.0);
    CHECK(m.mode == WidthMode::constant);
  }

  TEST_CASE("segment_angle in degrees, image coordinates") {
    CHECK(segment_angle({0, 0}, {1, 1}) == doctest::Approx(45.0));
    CHECK(segment_angle({0, 0}, {0, 5}) == 90.0);
    CHECK(segment_angle({0, 0}, {0, -5}) == -90.0);
    CHECK(segment_angle({0, 0}, {2, -2}) == doctest::Approx(-45.0));
    CHECK(segment_angle({0, 0}, {-3, 0}) == 0.0);
    CHECK_THROWS_AS(segment_angle({1, 2}, {1, 2}), ValueError);
  }

  TEST_CASE("width_factor values") {
    const WidthModel m;
    CHECK(std::abs(width_factor(11.3, m) - 0.5) <= 1e-9);
    CHECK(std::abs(width_factor(90.0, m) - 1.0 / (1.0 + std::exp(-7.87))) <= 1e-15);
    CHECK(std::abs(width_factor(90.0, m) - 0.999618) <= 1e-6);
    CHECK(std::abs(width_factor(-90.0, m) - 3.99e-5) <= 1e-6);
  }

  TEST_CASE("width_factor is strictly increasing on [-90, 90]") {
    const WidthModel m;
    double previous = width_factor(-90.0, m);
    for (double theta = -89.5; theta <= 90.0; theta += 0.5) {
      const double d = width_factor(theta, m);
      REQUIRE(d > previous);
      REQUIRE(d > 0.0);
      REQUIRE(d < 1.0);
      previous = d;
    }
  }

  TEST_CASE("stroke_width") {
    CHECK(stroke_width(11.3, 4, variable_model()) == doctest::Approx(2.0).epsilon(1e-9));
    const WidthModel constant;
    for (double theta : {-90.0, -10.0, 0.0, 33.0, 90.0}) {
      CHECK(stroke_width(theta, 3, constant) == doctest::Approx(2.99885).epsilon(1e-5));
    }
    const double down = stroke_width(90, 5, variable_model());
    const double up = stroke_width(-90, 5, variable_model());
    CHECK(down == doctest::Approx(4.998).epsilon(1e-4));
    CHECK(up == doctest::Approx(0.0002).epsilon(0.01));
    CHECK(up < down);
  }

  TEST_CASE("stamp_diameter rounds and clamps to one pixel") {
    CHECK(stamp_diameter(0.0002) == 1);
    CHECK(stamp_diameter(1.49) == 1);
    CHECK(stamp_diameter(1.5) == 2);
    CHECK(stamp_diameter(2.99885) == 3);
  }

  TEST_CASE("draw_segment") {
    GrayImage img(3, 3);
    draw_segment(img, {1, 0}, {1, 2}, 1);
    for (int y = 0; y < 3; ++y) {
      CHECK(img.at(0, y) == kPaper);
      CHECK(img.at(1, y) == kInk);
      CHECK(img.at(2, y) == kPaper);
    }
    const GrayImage once = img;
    draw_segment(img, {1, 0}, {1, 2}, 1);
    CHECK(img == once);

    GrayImage band(20, 11);
    draw_segment(band, {3, 5}, {16, 5}, 3);
    for (int x = 3; x <= 16; ++x) CHECK(column_thickness(band, x) == 3);
    const auto oracle = testing::capsule_mask({Stroke{{{3, 5}, {16, 5}}}}, 20, 11, 1.5);
    for (int y = 0; y < 11; ++y) {
      for (int x = 0; x < 20; ++x) CHECK((band.at(x, y) == kInk) == oracle[y * 20 + x]);
    }
  }

  TEST_CASE("render_binary examples") {
    const WidthModel m;
    const std::vector<Stroke> line{{{{0, 0}, {2, 0}}}};
    const auto img = render_binary(line, 3, 1, 1, m);
    CHECK(std::vector<std::uint8_t>(img.pixels().begin(), img.pixels().end()) ==
          std::vector<std::uint8_t>{0, 0, 0});

    const auto empty = render_binary(std::vector<Stroke>{}, 2, 2, 3, m);
    CHECK(ink_count(empty) == 0);

    const std::vector<Stroke> dot{{{{4, 4}}}};
    const auto d = render_binary(dot, 9, 9, 3, m);
    // diameter 3 disc: pixels within 1.5 of the center
    CHECK(ink_count(d) == 9);
  }

  TEST_CASE("render_binary rejects points outside the canvas") {
    const std::vector<Stroke> strokes{{{{1, 1}}}, {{{2, 2}, {9.6, 2}}}};
    try {
      render_binary(strokes, 10, 5, 2, WidthModel{});
      FAIL("expected ValueError");
    } catch (const ValueError& e) {
      CHECK(std::string(e.what()).find("stroke 1 point 1") != std::string::npos);
    }
    CHECK_NOTHROW(render_binary(std::vector<Stroke>{{{{9.49, 4.4}}}}, 10, 5, 2, WidthModel{}));
    CHECK_THROWS_AS(render_binary(std::vector<Stroke>{{{{-0.6, 0}}}}, 10, 5, 2, WidthModel{}),
                    ValueError);
  }

  TEST_CASE("width-1 renders match the distance-to-segment oracle") {
    std::mt19937_64 gen(2024);
    WidthModel m;
    for (int k = 0; k < 30; ++k) {
      const auto sample = testing::random_sample(gen, "p", 2, 10, 39, 29);
      // m = 1 gives width d(90) < 1, which stamps at diameter 1
      const auto img = render_binary(sample.strokes, 40, 30, 1, m);
      const auto mask = testing::capsule_mask(sample.strokes, 40, 30, 0.5);
      for (int y = 0; y < 30; ++y) {
        for (int x = 0; x < 40; ++x) {
          REQUIRE((img.at(x, y) == kInk) == mask[y * 40 + x]);
        }
      }
    }
  }

  TEST_CASE("coverage grows monotonically with width") {
    std::mt19937_64 gen(7);
    WidthModel m;
    for (int k = 0; k < 20; ++k) {
      const auto sample = testing::random_sample(gen, "p", 3, 8, 50, 30);
      std::vector<Stroke> shifted = sample.strokes;
      for (auto& s : shifted) {
        for (auto& p : s.points) {
          p.x += 5;
          p.y += 5;
        }
      }
      GrayImage previous(60, 40);
      for (int w = 1; w <= 5; ++w) {
        GrayImage img(60, 40);
        for (const auto& s : shifted) {
          for (std::size_t i = 0; i < s.points.size(); ++i) {
            draw_segment(img, s.points[i == 0 ? 0 : i - 1], s.points[i], w);
          }
        }
        for (std::size_t i = 0; i < img.size(); ++i) {
          if (previous.pixels()[i] == kInk) REQUIRE(img.pixels()[i] == kInk);
        }
        previous = img;
      }
    }
  }

  TEST_CASE("constant mode thickness across long straight segments") {
    const WidthModel constant;
    for (int m : {1, 3, 5}) {
      const int expected = stamp_diameter(m * width_factor(constant.theta_const, constant));
      const std::vector<Stroke> horizontal{{{{5, 20}, {95, 20}}}};
      const auto h = render_binary(horizontal, 101, 41, m, constant);
      for (int x = 15; x <= 85; ++x) CHECK(column_thickness(h, x) == expected);

      const std::vector<Stroke> vertical{{{{20, 95}, {20, 5}}}};
      const auto v = render_binary(vertical, 41, 101, m, constant);
      for (int y = 15; y <= 85; ++y) CHECK(row_thickness(v, y) == expected);
    }
  }

  TEST_CASE("variable mode draws upstrokes thinner than downstrokes") {
    const WidthModel variable = variable_model();
    const std::vector<Stroke> down{{{{20, 5}, {20, 95}}}};
    const std::vector<Stroke> up{{{{20, 95}, {20, 5}}}};
    const auto d = render_binary(down, 41, 101, 5, variable);
    const auto u = render_binary(up, 41, 101, 5, variable);
    CHECK(row_thickness(d, 50) == 5);
    CHECK(row_thickness(u, 50) == 1);
  }

  TEST_CASE("zero-length segments stamp dots with the previous width") {
    const WidthModel variable = variable_model();
    // first segment is zero-length: constant-mode width for m = 5 -> 5
    const std::vector<Stroke> strokes{{{{10, 10}, {10, 10}}}};
    const auto img = render_binary(strokes, 21, 21, 5, variable);
    const auto oracle = testing::capsule_mask(strokes, 21, 21, 2.5);
    for (int i = 0; i < 21 * 21; ++i) CHECK((img.pixels()[i] == kInk) == oracle[i]);

    // an upstroke followed by a repeated point keeps the thin width
    const std::vector<Stroke> thin{{{{10, 15}, {10, 5}, {10, 5}}}};
    const auto t = render_binary(thin, 21, 21, 5, variable);
    CHECK(row_thickness(t, 5) == 1);
  }

  TEST_CASE("render_binary is deterministic and binary") {
    std::mt19937_64 gen(1);
    const auto sample = testing::random_sample(gen, "d", 4, 30, 120, 40);
    const auto a = render_binary(sample.strokes, 121, 41, 4, variable_model());
    const auto b = render_binary(sample.strokes, 121, 41, 4, variable_model());
    CHECK(a == b);
    for (auto v : a.pixels()) REQUIRE((v == kInk || v == kPaper));
  }

  TEST_CASE("width model validation") {
    WidthModel m;
    m.m_min = 6;
    CHECK_THROWS_AS(validate(m), ValueError);
    m = WidthModel{};
    m.m_min = 0;
    CHECK_THROWS_AS(validate(m), ValueError);
    CHECK_THROWS_AS(render_binary(std::vector<Stroke>{}, 2, 2, 0.0, WidthModel{}), ValueError);
    CHECK(width_mode_from_string("variable") == WidthMode::variable);
    CHECK_THROWS_AS(width_mode_from_string("wide"), ValueError);
  }
}
