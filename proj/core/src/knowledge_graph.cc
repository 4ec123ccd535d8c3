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

#include "grease/knowledge_graph.h"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>
#include <tuple>
#include <type_traits>

namespace grease {
namespace {

struct RawEdge {
  EntityId subject;
  RelationId relation;
  EntityId object;
  friend auto operator<=>(const RawEdge&, const RawEdge&) = default;
};

struct RawAttribute {
  EntityId subject;
  PropertyId property;
};

// Splits a TSV line into exactly three fields. Returns false on any other
// field count.
bool SplitTriple(std::string_view line, std::array<std::string_view, 3>* out) {
  size_t first = line.find('\t');
  if (first == std::string_view::npos) return false;
  size_t second = line.find('\t', first + 1);
  if (second == std::string_view::npos) return false;
  if (line.find('\t', second + 1) != std::string_view::npos) return false;
  (*out)[0] = line.substr(0, first);
  (*out)[1] = line.substr(first + 1, second - first - 1);
  (*out)[2] = line.substr(second + 1);
  return true;
}

// Calls fn(line_number, fields) for each data line of `in`.
template <typename Fn>
void ForEachTriple(std::istream& in, const std::string& source, Fn fn) {
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::array<std::string_view, 3> fields;
    if (!SplitTriple(line, &fields)) {
      throw LoadError(source, line_number, "expected 3 tab-separated fields");
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw LoadError(source, line_number, "empty subject or predicate");
    }
    fn(fields);
  }
}

template <typename T, typename KeyFn>
void BuildCsr(size_t n, const std::vector<T>& sorted, KeyFn key,
              std::vector<size_t>* offsets) {
  offsets->assign(n + 1, 0);
  for (const T& item : sorted) ++(*offsets)[key(item) + 1];
  for (size_t i = 0; i < n; ++i) (*offsets)[i + 1] += (*offsets)[i];
}

}  // namespace

LoadError::LoadError(const std::string& source, size_t line, const std::string& what)
    : std::runtime_error(line > 0 ? source + ":" + std::to_string(line) + ": " + what
                                  : source + ": " + what),
      source_(source),
      line_(line) {}

KnowledgeGraph KnowledgeGraph::Load(std::istream& relations, std::istream& attributes,
                                    const LoadOptions& options) {
  KnowledgeGraph kg;
  kg.type_attribute_ = options.type_attribute;

  std::vector<RawEdge> edges;
  ForEachTriple(relations, "relations", [&](const std::array<std::string_view, 3>& f) {
    EntityId s = kg.InternEntity(f[0]);
    EntityId o = kg.InternEntity(f[2]);
    auto [it, inserted] = kg.relation_ids_.try_emplace(std::string(f[1]),
                                                       kg.relation_names_.size());
    if (inserted) kg.relation_names_.emplace_back(f[1]);
    if (s == o) {
      ++kg.skipped_self_loops_;
      return;
    }
    edges.push_back({s, it->second, o});
  });
  if (edges.empty()) throw LoadError("relations", 0, "empty graph");

  std::vector<RawAttribute> attrs;
  ForEachTriple(attributes, "attributes", [&](const std::array<std::string_view, 3>& f) {
    EntityId s = kg.InternEntity(f[0]);
    attrs.push_back({s, kg.InternProperty({std::string(f[1]), std::string(f[2])})});
  });

  const size_t n = kg.labels_.size();

  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  BuildCsr(n, edges, [](const RawEdge& e) { return e.subject; }, &kg.out_offsets_);
  kg.out_adj_.reserve(edges.size());
  for (const RawEdge& e : edges) kg.out_adj_.push_back({{e.relation, false}, e.object});

  std::vector<RawEdge> by_object = edges;
  std::sort(by_object.begin(), by_object.end(), [](const RawEdge& a, const RawEdge& b) {
    return std::tie(a.object, a.relation, a.subject) < std::tie(b.object, b.relation, b.subject);
  });
  BuildCsr(n, by_object, [](const RawEdge& e) { return e.object; }, &kg.in_offsets_);
  kg.in_adj_.reserve(by_object.size());
  for (const RawEdge& e : by_object) kg.in_adj_.push_back({{e.relation, true}, e.subject});

  // Psi(v): sorted unique attribute ids.
  std::sort(attrs.begin(), attrs.end(), [](const RawAttribute& a, const RawAttribute& b) {
    return std::tie(a.subject, a.property) < std::tie(b.subject, b.property);
  });
  attrs.erase(std::unique(attrs.begin(), attrs.end(),
                          [](const RawAttribute& a, const RawAttribute& b) {
                            return a.subject == b.subject && a.property == b.property;
                          }),
              attrs.end());
  BuildCsr(n, attrs, [](const RawAttribute& a) { return a.subject; }, &kg.attr_offsets_);
  kg.attr_ids_.reserve(attrs.size());
  for (const RawAttribute& a : attrs) kg.attr_ids_.push_back(a.property);

  // Phi(v) = Psi(v) plus <r, o> for every outgoing edge.
  std::vector<RawAttribute> props = attrs;
  props.reserve(attrs.size() + edges.size());
  for (const RawEdge& e : edges) {
    props.push_back({e.subject, kg.InternProperty({kg.relation_names_[e.relation],
                                                   kg.labels_[e.object]})});
  }
  std::sort(props.begin(), props.end(), [](const RawAttribute& a, const RawAttribute& b) {
    return std::tie(a.subject, a.property) < std::tie(b.subject, b.property);
  });
  props.erase(std::unique(props.begin(), props.end(),
                          [](const RawAttribute& a, const RawAttribute& b) {
                            return a.subject == b.subject && a.property == b.property;
                          }),
              props.end());
  BuildCsr(n, props, [](const RawAttribute& a) { return a.subject; }, &kg.prop_offsets_);
  kg.prop_ids_.reserve(props.size());
  for (const RawAttribute& p : props) kg.prop_ids_.push_back(p.property);

  return kg;
}

KnowledgeGraph KnowledgeGraph::LoadFiles(const std::string& relations_path,
                                         const std::string& attributes_path,
                                         const LoadOptions& options) {
  std::ifstream relations(relations_path);
  if (!relations) throw LoadError(relations_path, 0, "cannot open file");
  if (attributes_path.empty()) {
    std::istringstream none;
    return Load(relations, none, options);
  }
  std::ifstream attributes(attributes_path);
  if (!attributes) throw LoadError(attributes_path, 0, "cannot open file");
  return Load(relations, attributes, options);
}

EntityId KnowledgeGraph::InternEntity(std::string_view label) {
  auto [it, inserted] = entity_ids_.try_emplace(std::string(label),
                                                static_cast<EntityId>(labels_.size()));
  if (inserted) labels_.emplace_back(label);
  return it->second;
}

PropertyId KnowledgeGraph::InternProperty(Property p) {
  auto it = property_ids_.find(p);
  if (it != property_ids_.end()) return it->second;
  PropertyId id = static_cast<PropertyId>(properties_.size());
  properties_.push_back(p);
  property_ids_.emplace(std::move(p), id);
  return id;
}

const std::string& KnowledgeGraph::Label(EntityId v) const { return labels_.at(v); }

std::optional<EntityId> KnowledgeGraph::FindEntity(std::string_view label) const {
  auto it = entity_ids_.find(std::string(label));
  if (it == entity_ids_.end()) return std::nullopt;
  return it->second;
}

EntityId KnowledgeGraph::EntityOrThrow(std::string_view label) const {
  auto id = FindEntity(label);
  if (!id) throw InvalidArgument("unknown entity: " + std::string(label));
  return *id;
}

std::optional<RelationId> KnowledgeGraph::FindRelation(std::string_view name) const {
  auto it = relation_ids_.find(std::string(name));
  if (it == relation_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const Adjacent> KnowledgeGraph::OutEdges(EntityId v) const {
  return {out_adj_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const Adjacent> KnowledgeGraph::InEdges(EntityId v) const {
  return {in_adj_.data() + in_offsets_[v], in_offsets_[v + 1] - in_offsets_[v]};
}

std::span<const Adjacent> KnowledgeGraph::StepEdges(EntityId v, RelationStep step) const {
  std::span<const Adjacent> all = step.inverted ? InEdges(v) : OutEdges(v);
  auto range = std::equal_range(
      all.begin(), all.end(), step.relation,
      [](const auto& a, const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(a)>, Adjacent>) {
          return a.step.relation < b;
        } else {
          return a < b.step.relation;
        }
      });
  return {range.first, range.second};
}

std::vector<EntityId> KnowledgeGraph::StepNeighbors(EntityId v, RelationStep step) const {
  std::vector<EntityId> out;
  if (!Contains(v)) return out;
  for (const Adjacent& a : StepEdges(v, step)) out.push_back(a.neighbor);
  return out;
}

bool KnowledgeGraph::HasStep(EntityId from, RelationStep step, EntityId to) const {
  std::span<const Adjacent> run = StepEdges(from, step);
  return std::binary_search(run.begin(), run.end(), Adjacent{step, to});
}

std::optional<PropertyId> KnowledgeGraph::FindProperty(const Property& p) const {
  auto it = property_ids_.find(p);
  if (it == property_ids_.end()) return std::nullopt;
  return it->second;
}

std::span<const PropertyId> KnowledgeGraph::PropertyIds(EntityId v) const {
  return {prop_ids_.data() + prop_offsets_[v], prop_offsets_[v + 1] - prop_offsets_[v]};
}

std::span<const PropertyId> KnowledgeGraph::AttributeIds(EntityId v) const {
  return {attr_ids_.data() + attr_offsets_[v], attr_offsets_[v + 1] - attr_offsets_[v]};
}

bool KnowledgeGraph::HasProperty(EntityId v, PropertyId p) const {
  std::span<const PropertyId> ids = PropertyIds(v);
  return std::binary_search(ids.begin(), ids.end(), p);
}

std::vector<Property> KnowledgeGraph::PropertiesOf(EntityId v) const {
  if (!Contains(v)) throw InvalidArgument("unknown entity id " + std::to_string(v));
  std::vector<Property> out;
  for (PropertyId id : PropertyIds(v)) out.push_back(properties_[id]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> KnowledgeGraph::TypesOf(EntityId v) const {
  std::vector<std::string> out;
  for (PropertyId id : AttributeIds(v)) {
    if (properties_[id].name == type_attribute_) out.push_back(properties_[id].value);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace grease
