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

#ifndef GREASE_SEARCH_H_
#define GREASE_SEARCH_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grease/facet_model.h"
#include "grease/knowledge_graph.h"
#include "grease/meta_path.h"
#include "grease/stats_index.h"
#include "grease/types.h"

namespace grease {

enum class Variant {
  kFull,  // meta-path and property facets
  kNp,    // meta-path facets only
};

std::string_view VariantName(Variant v);
// Accepts "full" and "np".
std::optional<Variant> ParseVariant(std::string_view name);

struct SearchRequest {
  EntityId query = 0;
  std::vector<ExamplePair> examples;
  ModelParams params;
  Variant variant = Variant::kFull;
  std::optional<size_t> max_degree_expansion;
};

struct FacetSelection {
  std::vector<MetaPath> meta_paths;
  std::vector<Property> properties;
  // pc(s_i, t_i, P), aligned with the request's examples.
  std::vector<std::map<MetaPath, uint64_t>> pair_counts;
  bool approximate = false;
};

// One term of rel(q, v | S): gamma * weight * regularizer. The regularizer
// is 1 for properties.
struct Contribution {
  std::string facet;
  bool is_meta_path = true;
  double gamma = 0.0;
  double weight = 0.0;
  double regularizer = 1.0;

  double value() const { return gamma * weight * regularizer; }
};

struct RankedAnswer {
  EntityId entity = 0;
  double score = 0.0;
  // Non-zero terms only, in facet order (meta-paths by weight, then
  // properties by weight). score is their sum in this order.
  std::vector<Contribution> contributions;
};

struct SearchResult {
  std::vector<RankedAnswer> answers;
  std::vector<WeightedFacet> meta_path_facets;
  std::vector<WeightedFacet> property_facets;
  size_t num_candidates = 0;
  bool approximate = false;
};

// Checks the query, each example and the parameters. Throws InvalidArgument.
void ValidateRequest(const KnowledgeGraph& kg, const SearchRequest& request);

// Omega_mp from the examples (bounded by L) and Omega_prop as the union of
// Phi(t) over examples (empty for the np variant).
FacetSelection SelectFacets(const KnowledgeGraph& kg, const SearchRequest& request);

// rel(q, v | S) over the weighted facets. `meta_path_counts[i]` is the
// capped instance count pc(q, v, P_i) for the i-th meta-path facet.
RankedAnswer RelevanceScore(const KnowledgeGraph& kg, EntityId v,
                            std::span<const WeightedFacet> meta_path_facets,
                            std::span<const uint64_t> meta_path_counts,
                            std::span<const WeightedFacet> property_facets,
                            const ModelParams& params);

// Same, enumerating pc(q, v, P) for every meta-path facet.
RankedAnswer RelevanceScore(const KnowledgeGraph& kg, EntityId q, EntityId v,
                            std::span<const WeightedFacet> meta_path_facets,
                            std::span<const WeightedFacet> property_facets,
                            const ModelParams& params);

// The full algorithm: select facets, weight them, collect candidates reached
// from q by the top-m meta-paths, score every candidate against all facets,
// and return the k best (descending score, ascending label on ties).
// Throws InvalidArgument for bad requests and when no facet can be derived.
SearchResult Search(const KnowledgeGraph& kg, const StatsIndex& index,
                    const SearchRequest& request);

}  // namespace grease

#endif  // GREASE_SEARCH_H_
