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

#ifndef GREASE_PATH_ENGINE_H_
#define GREASE_PATH_ENGINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "grease/knowledge_graph.h"
#include "grease/meta_path.h"
#include "grease/stats_index.h"
#include "grease/types.h"

namespace grease {

// All paths here are acyclic: no entity occurs twice in one path instance.

struct MetaPathSearchOptions {
  // Maximum meta-path length L.
  int max_length = 3;
  // When set, an entity with more incident edges than this expands only its
  // first `max_degree_expansion` edges in ascending neighbor-id order, and the
  // result is flagged approximate.
  std::optional<size_t> max_degree_expansion;
};

struct MetaPathSearchResult {
  // Omega_mp: sorted, unique.
  std::vector<MetaPath> meta_paths;
  // pair_counts[i][mp] = pc(s_i, t_i, mp) for every meta-path witnessed by
  // example i. Meta-paths absent from the map have count 0 for that example.
  std::vector<std::map<MetaPath, uint64_t>> pair_counts;
  // True if hub truncation skipped any edge.
  bool approximate = false;
};

// Finds every meta-path of length 1..L followed by some acyclic path from s
// to t, for each example <s, t>. Each example is searched bidirectionally:
// ceil(L/2) steps forward from s and floor(L/2) steps backward from t, joined
// on meeting entities. Throws InvalidArgument naming the example index for
// unknown entities or s == t, and for L < 1.
MetaPathSearchResult MetaPathSearch(const KnowledgeGraph& kg,
                                    std::span<const ExamplePair> examples,
                                    const MetaPathSearchOptions& options = {});

// pc(q, v, mp): number of acyclic instances of mp from q to v. Zero when
// q == v or either entity is unknown.
uint64_t InstancePathCount(const KnowledgeGraph& kg, EntityId q, EntityId v,
                           const MetaPath& mp);

// apc(mp): exact count for length <= 2, otherwise the mean of the forward and
// backward first-order Markov estimates. A zero denominator zeroes its
// estimate.
double ApproxPathCount(const StatsIndex& index, const MetaPath& mp);

// Every entity v != q reached from q by an acyclic instance of mp, mapped to
// min(pc(q, v, mp), cap). Throws InvalidArgument if cap == 0.
std::unordered_map<EntityId, uint64_t> ReachableSet(const KnowledgeGraph& kg, EntityId q,
                                                    const MetaPath& mp, uint64_t cap);

}  // namespace grease

#endif  // GREASE_PATH_ENGINE_H_
