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

// Independent reference implementations used only by tests. Nothing here
// calls into the code paths it is used to check.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hwforge/image.hpp"
#include "hwforge/ink.hpp"

namespace hwforge::testing {

// Minimum cost over every optimal-string-alignment edit path, enumerated by
// plain recursion without memoization. Each step consumes a prefix of both
// strings: match/substitute (1,1), delete (1,0), insert (0,1), or swap an
// adjacent pair (2,2). Exponential; keep inputs short.
inline std::size_t osa_enumerate(const std::string& a, const std::string& b, std::size_t i = 0,
                                 std::size_t j = 0) {
  if (i == a.size()) return b.size() - j;
  if (j == b.size()) return a.size() - i;
  std::size_t best = std::numeric_limits<std::size_t>::max();
  best = std::min(best, (a[i] == b[j] ? 0 : 1) + osa_enumerate(a, b, i + 1, j + 1));
  best = std::min(best, 1 + osa_enumerate(a, b, i + 1, j));
  best = std::min(best, 1 + osa_enumerate(a, b, i, j + 1));
  if (i + 1 < a.size() && j + 1 < b.size() && a[i] == b[j + 1] && a[i + 1] == b[j]) {
    best = std::min(best, 1 + osa_enumerate(a, b, i + 2, j + 2));
  }
  return best;
}

// Unrestricted Damerau-Levenshtein distance by breadth-first search over
// single edits; a lower bound for the restricted variant.
inline std::size_t unrestricted_dl_bfs(const std::string& from, const std::string& to,
                                       const std::string& alphabet) {
  std::set<std::string> seen{from};
  std::deque<std::pair<std::string, std::size_t>> queue{{from, 0}};
  const std::size_t limit = std::max(from.size(), to.size()) + 1;
  while (!queue.empty()) {
    auto [s, d] = queue.front();
    queue.pop_front();
    if (s == to) return d;
    std::vector<std::string> next;
    for (std::size_t k = 0; k <= s.size(); ++k) {
      for (char c : alphabet) next.push_back(s.substr(0, k) + c + s.substr(k));
    }
    for (std::size_t k = 0; k < s.size(); ++k) {
      next.push_back(s.substr(0, k) + s.substr(k + 1));
      for (char c : alphabet) {
        std::string t = s;
        t[k] = c;
        next.push_back(t);
      }
      if (k + 1 < s.size()) {
        std::string t = s;
        std::swap(t[k], t[k + 1]);
        next.push_back(t);
      }
    }
    for (auto& t : next) {
      if (t.size() <= limit && seen.insert(t).second) queue.emplace_back(std::move(t), d + 1);
    }
  }
  return std::numeric_limits<std::size_t>::max();
}

// Exhaustive Otsu: between-class variance w0 * w1 * (mu0 - mu1)^2 evaluated
// with exact rationals at every split; smallest maximizing level wins.
inline int otsu_exact(const std::array<std::uint64_t, 256>& hist) {
  using boost::multiprecision::cpp_rational;
  std::uint64_t total = 0;
  for (auto c : hist) total += c;
  int best_level = -1;
  cpp_rational best = -1;
  for (int t = 0; t < 256; ++t) {
    std::uint64_t n0 = 0, n1 = 0;
    cpp_rational s0 = 0, s1 = 0;
    for (int i = 0; i < 256; ++i) {
      if (i <= t) {
        n0 += hist[i];
        s0 += cpp_rational(i) * hist[i];
      } else {
        n1 += hist[i];
        s1 += cpp_rational(i) * hist[i];
      }
    }
    cpp_rational variance = 0;
    if (n0 > 0 && n1 > 0) {
      const cpp_rational w0(n0, total), w1(n1, total);
      const cpp_rational mu0 = s0 / n0, mu1 = s1 / n1;
      variance = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
    }
    if (variance > best) {
      best = variance;
      best_level = t;
    }
  }
  return best_level;
}

// Distance from (px, py) to segment a-b by explicit case analysis on which
// feature (endpoint or interior) is nearest.
inline double distance_to_segment(double px, double py, ink::Point a, ink::Point b) {
  const double abx = b.x - a.x, aby = b.y - a.y;
  const double apx = px - a.x, apy = py - a.y;
  const double bpx = px - b.x, bpy = py - b.y;
  if (abx == 0.0 && aby == 0.0) return std::hypot(apx, apy);
  if (apx * abx + apy * aby <= 0.0) return std::hypot(apx, apy);
  if (bpx * abx + bpy * aby >= 0.0) return std::hypot(bpx, bpy);
  return std::abs(abx * apy - aby * apx) / std::hypot(abx, aby);
}

// Ink mask of every pixel whose center lies within `radius` of any segment
// (or any single point) of the strokes.
inline std::vector<bool> capsule_mask(const std::vector<ink::Stroke>& strokes, int width,
                                      int height, double radius) {
  std::vector<bool> mask(static_cast<std::size_t>(width) * height, false);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      bool hit = false;
      for (const auto& s : strokes) {
        const auto& p = s.points;
        if (p.size() == 1) hit = hit || distance_to_segment(x, y, p[0], p[0]) <= radius;
        for (std::size_t i = 1; i < p.size() && !hit; ++i) {
          hit = distance_to_segment(x, y, p[i - 1], p[i]) <= radius;
        }
        if (hit) break;
      }
      mask[static_cast<std::size_t>(y) * width + x] = hit;
    }
  }
  return mask;
}

// Random-walk ink sample with real coordinates inside [0, extent).
inline ink::InkSample random_sample(std::mt19937_64& gen, const std::string& id, int strokes,
                                    int points_per_stroke, double extent_x, double extent_y) {
  std::uniform_real_distribution<double> ux(0.0, extent_x), uy(0.0, extent_y);
  std::uniform_real_distribution<double> step(-6.0, 6.0);
  ink::InkSample s;
  s.id = id;
  s.transcript = "mẫu " + id;
  for (int k = 0; k < strokes; ++k) {
    ink::Stroke stroke;
    double x = ux(gen), y = uy(gen);
    for (int i = 0; i < points_per_stroke; ++i) {
      stroke.points.push_back({x, y});
      x = std::clamp(x + step(gen), 0.0, extent_x);
      y = std::clamp(y + step(gen), 0.0, extent_y);
    }
    s.strokes.push_back(std::move(stroke));
  }
  return s;
}

inline GrayImage crop(const GrayImage& image, int x0, int y0, int w, int h) {
  GrayImage out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(x, y) = image.at(x0 + x, y0 + y);
  }
  return out;
}

}  // namespace hwforge::testing
