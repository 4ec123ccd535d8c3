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

#ifndef GREASE_KNOWLEDGE_GRAPH_H_
#define GREASE_KNOWLEDGE_GRAPH_H_

#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "grease/types.h"

namespace grease {

// A load failure. line() is 1-based within the named source, or 0 when the
// failure is not tied to a line (e.g. an empty graph).
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& source, size_t line, const std::string& what);

  const std::string& source() const { return source_; }
  size_t line() const { return line_; }

 private:
  std::string source_;
  size_t line_;
};

struct LoadOptions {
  // Attribute whose values are entity types.
  std::string type_attribute = "type";
};

// An incident edge seen from one endpoint: following `step` from the owning
// entity reaches `neighbor`.
struct Adjacent {
  RelationStep step;
  EntityId neighbor = 0;

  friend auto operator<=>(const Adjacent&, const Adjacent&) = default;
};

// Immutable in-memory knowledge graph G = <V, E, Psi>.
//
// Edges are stored twice in CSR form: out-adjacency (step not inverted,
// neighbor = object) and in-adjacency (step inverted, neighbor = subject).
// Both are sorted by (relation, neighbor), so the neighbors reachable by one
// step form a contiguous, id-ascending run.
//
// Every attribute pair and every relation pair <r, o> is interned as a
// PropertyId; Phi(v) is kept as a sorted id list per entity.
class KnowledgeGraph {
 public:
  // Reads TAB-separated `subject relation object` and `subject attribute
  // value` lines. Lines starting with '#' and blank lines are skipped.
  // Duplicate edges are merged; self-loops are skipped and counted.
  static KnowledgeGraph Load(std::istream& relations, std::istream& attributes,
                             const LoadOptions& options = {});
  static KnowledgeGraph LoadFiles(const std::string& relations_path,
                                  const std::string& attributes_path,
                                  const LoadOptions& options = {});

  size_t num_entities() const { return labels_.size(); }
  size_t num_edges() const { return out_adj_.size(); }
  size_t num_relations() const { return relation_names_.size(); }
  size_t num_properties() const { return properties_.size(); }
  size_t skipped_self_loops() const { return skipped_self_loops_; }
  const std::string& type_attribute() const { return type_attribute_; }

  const std::string& Label(EntityId v) const;
  std::optional<EntityId> FindEntity(std::string_view label) const;
  // Throws InvalidArgument naming the label if absent.
  EntityId EntityOrThrow(std::string_view label) const;
  bool Contains(EntityId v) const { return v < labels_.size(); }

  const std::string& RelationName(RelationId r) const { return relation_names_.at(r); }
  std::optional<RelationId> FindRelation(std::string_view name) const;
  const std::vector<std::string>& relation_names() const { return relation_names_; }

  std::span<const Adjacent> OutEdges(EntityId v) const;
  std::span<const Adjacent> InEdges(EntityId v) const;
  size_t Degree(EntityId v) const { return OutEdges(v).size() + InEdges(v).size(); }

  // Edges leaving `v` along `step`, ascending by neighbor id. Empty for an
  // unknown relation.
  std::span<const Adjacent> StepEdges(EntityId v, RelationStep step) const;
  std::vector<EntityId> StepNeighbors(EntityId v, RelationStep step) const;
  bool HasStep(EntityId from, RelationStep step, EntityId to) const;

  const Property& GetProperty(PropertyId id) const { return properties_.at(id); }
  std::optional<PropertyId> FindProperty(const Property& p) const;

  // Phi(v) and Psi(v) as sorted interned ids.
  std::span<const PropertyId> PropertyIds(EntityId v) const;
  std::span<const PropertyId> AttributeIds(EntityId v) const;
  bool HasProperty(EntityId v, PropertyId p) const;

  // Phi(v) materialized, sorted. Throws InvalidArgument for an unknown entity.
  std::vector<Property> PropertiesOf(EntityId v) const;

  // Values of v's type attribute, sorted.
  std::vector<std::string> TypesOf(EntityId v) const;

 private:
  KnowledgeGraph() = default;

  EntityId InternEntity(std::string_view label);
  PropertyId InternProperty(Property p);

  std::string type_attribute_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, EntityId> entity_ids_;
  std::vector<std::string> relation_names_;
  std::unordered_map<std::string, RelationId> relation_ids_;
  std::vector<Property> properties_;
  std::unordered_map<Property, PropertyId, PropertyHash> property_ids_;

  std::vector<size_t> out_offsets_, in_offsets_;
  std::vector<Adjacent> out_adj_, in_adj_;
  std::vector<size_t> attr_offsets_, prop_offsets_;
  std::vector<PropertyId> attr_ids_, prop_ids_;
  size_t skipped_self_loops_ = 0;
};

}  // namespace grease

#endif  // GREASE_KNOWLEDGE_GRAPH_H_
