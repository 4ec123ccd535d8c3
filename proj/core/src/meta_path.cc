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

#include "grease/meta_path.h"

#include <algorithm>

namespace grease {
namespace {
constexpr std::string_view kInverseSuffix = "^-1";
}  // namespace

MetaPath MetaPath::Reversed() const {
  MetaPath out;
  out.steps.reserve(steps.size());
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) out.steps.push_back(it->Invert());
  return out;
}

std::string MetaPathText(const KnowledgeGraph& kg, const MetaPath& mp) {
  std::string text;
  for (size_t i = 0; i < mp.steps.size(); ++i) {
    if (i > 0) text += '/';
    text += kg.RelationName(mp.steps[i].relation);
    if (mp.steps[i].inverted) text += kInverseSuffix;
  }
  return text;
}

MetaPath ParseMetaPath(const KnowledgeGraph& kg, std::string_view text) {
  if (text.empty()) throw InvalidArgument("empty meta-path");
  MetaPath mp;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('/', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view token = text.substr(start, end - start);
    bool inverted = false;
    if (token.size() > kInverseSuffix.size() && token.ends_with(kInverseSuffix)) {
      inverted = true;
      token.remove_suffix(kInverseSuffix.size());
    }
    if (token.empty()) throw InvalidArgument("empty step in meta-path '" + std::string(text) + "'");
    auto relation = kg.FindRelation(token);
    if (!relation) throw InvalidArgument("unknown relation '" + std::string(token) + "'");
    mp.steps.push_back({*relation, inverted});
    start = end + 1;
  }
  return mp;
}

}  // namespace grease
