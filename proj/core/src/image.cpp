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

#include "hwforge/image.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "hwforge/error.hpp"

namespace hwforge {

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw SizeError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  if (width <= 0 || height <= 0) {
    throw SizeError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                    std::to_string(height));
  }
  if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw SizeError("pixel buffer length " + std::to_string(pixels_.size()) +
                    " does not match " + std::to_string(width) + "x" + std::to_string(height));
  }
}

std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

namespace {

class PgmReader {
 public:
  explicit PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  long read_int() {
    skip_space_and_comments();
    const std::size_t start = pos_;
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > 1'000'000'000) throw ParseError("PGM integer too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected integer in PGM data", start);
    return value;
  }

  std::size_t pos() const { return pos_; }
  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    throw ParseError("not a P5/P2 PGM file", 0);
  }
  const bool binary = bytes[1] == '5';
  PgmReader reader(bytes);
  reader.advance(2);
  const long width = reader.read_int();
  const long height = reader.read_int();
  const long maxval = reader.read_int();
  if (width <= 0 || height <= 0) throw SizeError("PGM dimensions must be positive");
  if (maxval <= 0 || maxval > 255) {
    throw ParseError("unsupported PGM maxval " + std::to_string(maxval), reader.pos());
  }
  const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<std::uint8_t> pixels(count);
  auto scale = [maxval](long v) {
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>(std::lround(static_cast<double>(v) * 255.0 / maxval));
  };
  if (binary) {
    // exactly one whitespace byte separates the header from the raster
    const std::size_t start = reader.pos() + 1;
    if (start > bytes.size() || bytes.size() - start < count) {
      throw ParseError("truncated PGM raster", bytes.size());
    }
    for (std::size_t i = 0; i < count; ++i) {
      const long v = bytes[start + i];
      if (v > maxval) throw ParseError("PGM sample exceeds maxval", start + i);
      pixels[i] = scale(v);
    }
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const long v = reader.read_int();
      if (v > maxval) throw ParseError("PGM sample exceeds maxval", reader.pos());
      pixels[i] = scale(v);
    }
  }
  return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path.string());
  return bytes;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  write_file_bytes(path, encode_pgm(image));
}

GrayImage read_pgm(const std::filesystem::path& path) {
  return decode_pgm(read_file_bytes(path));
}

}  // namespace hwforge
