// Copyright 2026 The treegroups Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TREEGROUPS_ERRORS_HPP
#define TREEGROUPS_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace treegroups {

/// Operands disagree on degree or depth.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A vertex, level or depth lies outside the available tree.
struct RangeError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Malformed portrait text or configuration document.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string &what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// An enumeration would exceed its element cap. Never silently truncated.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string &what, std::size_t partial_size)
      : std::runtime_error(what + " (partial size " + std::to_string(partial_size) + ")"),
        partial_size_(partial_size) {}

  std::size_t partial_size() const noexcept { return partial_size_; }

 private:
  std::size_t partial_size_;
};

/// A claimed subgroup has an element outside the ambient group.
struct ContainmentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A structural precondition (normality, closure, ...) does not hold.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A mathematically guaranteed property failed; indicates a bug.
struct WitnessViolation : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace treegroups

#endif  // TREEGROUPS_ERRORS_HPP
