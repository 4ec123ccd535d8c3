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

#ifndef GREASE_PLANTED_H_
#define GREASE_PLANTED_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grease/eval.h"
#include "grease/types.h"

namespace grease {

// A relevance semantics to plant: answers are the entities reached from the
// query along `steps` (relation name, inverted) by an acyclic path and, if
// set, constrained by `property`.
struct PlantedSemantics {
  std::string name;
  std::vector<std::pair<std::string, bool>> steps;
  std::optional<Property> property;
};

// The five default semantics: three meta-path-only ones (colleague, costar,
// directed_by) and two that add a property (engineer_colleague,
// awarded_costar).
std::vector<PlantedSemantics> DefaultPlantedSemantics();

struct PlantedSpec {
  uint64_t seed = 1;
  size_t entity_count = 2000;
  // Extra relation types carrying only random noise edges.
  size_t noise_relation_types = 2;
  // Noise edges per schema edge.
  double noise_edge_rate = 0.1;
  size_t instances_per_group = 20;
  size_t examples_per_instance = 2;
  int k = 10;
  std::vector<PlantedSemantics> semantics = DefaultPlantedSemantics();
};

struct PlantedDataset {
  std::string relations_tsv;
  std::string attributes_tsv;
  // Grouped by semantics name, in spec order.
  std::vector<QueryInstance> instances;
  size_t num_edges = 0;
};

// Generates a synthetic movie/company graph over a fixed schema
// (Person, Organization, Film, City, Band; relations worksFor, actedIn,
// director, livesIn, locatedIn, memberOf, plus noise relations) and query
// instances whose gold sets are exactly the entities satisfying each planted
// semantics relative to the query. Gold sets are re-derived on the loaded
// graph before returning. Deterministic for a fixed spec.
//
// Throws InvalidArgument when the spec cannot be satisfied: non-positive
// counts, unknown relations in a semantics, a path longer than the entity
// budget, or too few entities with a non-empty answer set.
PlantedDataset GeneratePlanted(const PlantedSpec& spec);

}  // namespace grease

#endif  // GREASE_PLANTED_H_
