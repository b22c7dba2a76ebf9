// Copyright 2026 The Ramsey Proximity Authors
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

#ifndef RAMSEY_COMMON_HPP_
#define RAMSEY_COMMON_HPP_

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace ramsey {

// Points are indices 0..n-1 into a MetricSpace.
using PointId = std::uint32_t;
// Vertices are indices 0..V-1 into a LabeledTree.
using VertexId = std::int32_t;

inline constexpr PointId kNoPoint = std::numeric_limits<PointId>::max();
inline constexpr VertexId kNoVertex = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a structural invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramsey

#endif  // RAMSEY_COMMON_HPP_
