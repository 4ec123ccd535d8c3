// Copyright 2026 The Grease Authors.
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

#ifndef GREASE_TYPES_H_
#define GREASE_TYPES_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace grease {

// Dense entity id in 0..|V|-1, assigned in order of first appearance.
using EntityId = uint32_t;
using RelationId = uint32_t;
using PropertyId = uint32_t;

// One hop along a relation type, possibly against the edge direction (r^-1).
struct RelationStep {
  RelationId relation = 0;
  bool inverted = false;

  RelationStep Invert() const { return {relation, !inverted}; }

  // Packs the step into a single integer; inverse steps are odd.
  uint32_t Code() const { return relation * 2 + (inverted ? 1 : 0); }
  static RelationStep FromCode(uint32_t code) { return {code / 2, (code & 1) != 0}; }

  friend auto operator<=>(const RelationStep&, const RelationStep&) = default;
};

// An attribute pair <a, l> or a relation pair <r, o> (object label as value).
struct Property {
  std::string name;
  std::string value;

  // "name=value"; used for display and lexicographic tie-breaking.
  std::string Text() const { return name + "=" + value; }

  friend auto operator<=>(const Property&, const Property&) = default;
};

struct PropertyHash {
  size_t operator()(const Property& p) const {
    size_t h = std::hash<std::string>()(p.name);
    return h ^ (std::hash<std::string>()(p.value) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  }
};

// An ordered query-answer pair <s, t>.
struct ExamplePair {
  EntityId source = 0;
  EntityId target = 0;

  friend auto operator<=>(const ExamplePair&, const ExamplePair&) = default;
};

// Raised for caller mistakes: unknown entities, bad parameters, invalid
// examples. Carries a human-readable message only.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace grease

#endif  // GREASE_TYPES_H_
