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

#ifndef GREASE_STATS_INDEX_H_
#define GREASE_STATS_INDEX_H_

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "grease/knowledge_graph.h"
#include "grease/meta_path.h"
#include "grease/types.h"

namespace grease {

class IndexFormatError : public std::runtime_error {
 public:
  enum class Kind { kBadMagic, kUnsupportedVersion, kTruncated, kCorrupt, kGraphMismatch };

  IndexFormatError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Precomputed frequency counts:
//  * pc(P) for every meta-path of length 1 or 2 that occurs in the graph,
//    counting acyclic paths only;
//  * the extent |{v : p in Phi(v)}| of every property;
//  * the extent of every type value and each entity's most specific type.
//
// Relation ids are those of the graph the index was built from; Bind()
// checks that a graph matches before the two are used together.
class StatsIndex {
 public:
  static constexpr uint32_t kFormatVersion = 1;

  static StatsIndex Build(const KnowledgeGraph& kg);

  // Exact count for a key of one or two steps; 0 for unseen keys. Throws
  // InvalidArgument("use apc") for longer keys.
  uint64_t PathCount(std::span<const RelationStep> key) const;
  uint64_t PathCount(const MetaPath& mp) const { return PathCount(mp.steps); }
  uint64_t EdgeCount(RelationStep step) const;
  uint64_t PairCount(RelationStep first, RelationStep second) const;

  uint64_t PropertyExtent(const Property& p) const;
  uint64_t TypeExtent(const std::string& type) const;
  // Absent when the entity carries no type attribute.
  std::optional<std::string> MostSpecificType(EntityId v) const;
  // |ST(v)|; falls back to |V| for untyped entities.
  uint64_t SameTypeExtent(EntityId v) const;

  uint64_t entity_total() const { return entity_total_; }
  size_t num_short_paths() const { return short_counts_.size(); }
  size_t num_properties() const { return property_extents_.size(); }
  const std::vector<std::string>& relation_names() const { return relation_names_; }

  // Throws IndexFormatError(kGraphMismatch) if `kg` is not the graph this
  // index describes (entity count or relation table differ).
  void CheckCompatible(const KnowledgeGraph& kg) const;

  void Save(std::ostream& out) const;
  static StatsIndex Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static StatsIndex LoadFile(const std::string& path);

  friend bool operator==(const StatsIndex&, const StatsIndex&) = default;

 private:
  static uint64_t Key(RelationStep first);
  static uint64_t Key(RelationStep first, RelationStep second);

  uint64_t entity_total_ = 0;
  std::vector<std::string> relation_names_;
  std::unordered_map<uint64_t, uint64_t> short_counts_;
  std::unordered_map<Property, uint64_t, PropertyHash> property_extents_;
  std::map<std::string, uint64_t> type_extents_;
  // Per entity: index into type_names_ (sorted keys of type_extents_) or -1.
  std::vector<int32_t> entity_type_;
  std::vector<std::string> type_names_;
};

}  // namespace grease

#endif  // GREASE_STATS_INDEX_H_
