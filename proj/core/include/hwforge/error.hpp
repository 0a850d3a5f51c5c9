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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hwforge {

// Base of every error raised by the library. The CLI maps the concrete
// subclasses onto exit codes, so keep the hierarchy shallow.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed syntax. `offset()` is a byte offset into the input when known,
// or the trace index for InkML coordinate errors.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Well-formed input that violates a structural invariant (missing field,
// empty stroke list, duplicate ids, ...).
class StructuralError : public Error {
 public:
  using Error::Error;
};

// A value outside its domain: non-finite coordinate, flat histogram, empty
// reference text, point outside the canvas, ...
class ValueError : public Error {
 public:
  using Error::Error;
};

// Image dimensions incompatible with a requested size.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A caller broke an operation's input contract (e.g. a non-binary raster
// handed to the colorizer).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Moment fitting on samples with zero variance.
class DegenerateSampleError : public ValueError {
 public:
  using ValueError::ValueError;
};

// Moment fitting where no beta distribution matches the sample moments.
class InfeasibleMomentsError : public ValueError {
 public:
  using ValueError::ValueError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace hwforge
