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

#ifndef GREASE_META_PATH_H_
#define GREASE_META_PATH_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "grease/knowledge_graph.h"
#include "grease/types.h"

namespace grease {

// A sequence of relation steps r1 r2 ... rl. Ordering is lexicographic over
// (relation id, direction) and is only meaningful within one graph.
struct MetaPath {
  std::vector<RelationStep> steps;

  size_t length() const { return steps.size(); }
  bool empty() const { return steps.empty(); }

  // The same path read from the other end: steps reversed, each inverted.
  MetaPath Reversed() const;

  friend auto operator<=>(const MetaPath&, const MetaPath&) = default;
};

// Text form: steps joined by '/', inverse steps suffixed "^-1",
// e.g. "stars^-1/director".
std::string MetaPathText(const KnowledgeGraph& kg, const MetaPath& mp);

// Inverse of MetaPathText. Throws InvalidArgument for empty input, empty
// steps, or relation names the graph does not know.
MetaPath ParseMetaPath(const KnowledgeGraph& kg, std::string_view text);

}  // namespace grease

#endif  // GREASE_META_PATH_H_
