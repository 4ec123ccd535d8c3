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

#include "grease/search.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "grease/path_engine.h"

namespace grease {
namespace {

uint64_t CountCap(const ModelParams& params) {
  return static_cast<uint64_t>(std::max(1.0, std::ceil(params.alpha_mp)));
}

}  // namespace

std::string_view VariantName(Variant v) { return v == Variant::kNp ? "np" : "full"; }

std::optional<Variant> ParseVariant(std::string_view name) {
  if (name == "full") return Variant::kFull;
  if (name == "np") return Variant::kNp;
  return std::nullopt;
}

void ValidateRequest(const KnowledgeGraph& kg, const SearchRequest& request) {
  request.params.Validate();
  if (!kg.Contains(request.query)) throw InvalidArgument("unknown query entity");
  if (request.examples.empty()) throw InvalidArgument("example set is empty");
  for (size_t i = 0; i < request.examples.size(); ++i) {
    const ExamplePair& ex = request.examples[i];
    if (!kg.Contains(ex.source) || !kg.Contains(ex.target)) {
      throw InvalidArgument("example " + std::to_string(i) + ": unknown entity");
    }
    if (ex.source == ex.target) {
      throw InvalidArgument("example " + std::to_string(i) + ": source equals target");
    }
  }
}

FacetSelection SelectFacets(const KnowledgeGraph& kg, const SearchRequest& request) {
  ValidateRequest(kg, request);
  MetaPathSearchOptions options;
  options.max_length = request.params.max_length;
  options.max_degree_expansion = request.max_degree_expansion;
  MetaPathSearchResult found = MetaPathSearch(kg, request.examples, options);

  FacetSelection selection;
  selection.meta_paths = std::move(found.meta_paths);
  selection.pair_counts = std::move(found.pair_counts);
  selection.approximate = found.approximate;
  if (request.variant == Variant::kFull) {
    std::set<PropertyId> ids;
    for (const ExamplePair& ex : request.examples) {
      for (PropertyId p : kg.PropertyIds(ex.target)) ids.insert(p);
    }
    for (PropertyId p : ids) selection.properties.push_back(kg.GetProperty(p));
    std::sort(selection.properties.begin(), selection.properties.end());
  }
  return selection;
}

RankedAnswer RelevanceScore(const KnowledgeGraph& kg, EntityId v,
                            std::span<const WeightedFacet> meta_path_facets,
                            std::span<const uint64_t> meta_path_counts,
                            std::span<const WeightedFacet> property_facets,
                            const ModelParams& params) {
  if (meta_path_counts.size() != meta_path_facets.size()) {
    throw InvalidArgument("meta-path count list does not match facet list");
  }
  RankedAnswer answer;
  answer.entity = v;
  for (size_t i = 0; i < meta_path_facets.size(); ++i) {
    double gamma = MetaPathGamma(meta_path_counts[i], params);
    if (gamma == 0) continue;
    const WeightedFacet& f = meta_path_facets[i];
    answer.contributions.push_back(
        {f.text, true, gamma, f.weight, Regularizer(f.meta_path(), params)});
  }
  for (const WeightedFacet& f : property_facets) {
    double gamma = PropertyGamma(kg, v, f.property(), params);
    if (gamma == 0) continue;
    answer.contributions.push_back({f.text, false, gamma, f.weight, 1.0});
  }
  for (const Contribution& c : answer.contributions) answer.score += c.value();
  return answer;
}

RankedAnswer RelevanceScore(const KnowledgeGraph& kg, EntityId q, EntityId v,
                            std::span<const WeightedFacet> meta_path_facets,
                            std::span<const WeightedFacet> property_facets,
                            const ModelParams& params) {
  if (q == v) throw InvalidArgument("candidate equals query entity");
  std::vector<uint64_t> counts;
  counts.reserve(meta_path_facets.size());
  for (const WeightedFacet& f : meta_path_facets) {
    counts.push_back(InstancePathCount(kg, q, v, f.meta_path()));
  }
  return RelevanceScore(kg, v, meta_path_facets, counts, property_facets, params);
}

SearchResult Search(const KnowledgeGraph& kg, const StatsIndex& index,
                    const SearchRequest& request) {
  FacetSelection selection = SelectFacets(kg, request);
  if (selection.meta_paths.empty() && selection.properties.empty()) {
    throw InvalidArgument("no facets derivable from examples");
  }
  const ModelParams& params = request.params;

  SearchResult result;
  result.approximate = selection.approximate;
  result.meta_path_facets = MetaPathPosteriors(kg, index, selection.meta_paths,
                                               request.examples, selection.pair_counts);
  result.property_facets = PropertyPosteriors(kg, index, selection.properties, request.examples);

  // Capped pc(q, v, P) for every meta-path facet; candidates come from the
  // top-m facets only, but every facet contributes to the score.
  const uint64_t cap = CountCap(params);
  const size_t num_mp = result.meta_path_facets.size();
  const size_t top = std::min<size_t>(num_mp, static_cast<size_t>(params.top_meta_paths));
  std::vector<std::unordered_map<EntityId, uint64_t>> reached(num_mp);
  std::vector<EntityId> candidates;
  for (size_t i = 0; i < num_mp; ++i) {
    reached[i] = ReachableSet(kg, request.query, result.meta_path_facets[i].meta_path(), cap);
    if (i < top) {
      for (const auto& [v, count] : reached[i]) candidates.push_back(v);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  result.num_candidates = candidates.size();

  std::vector<uint64_t> counts(num_mp);
  for (EntityId v : candidates) {
    if (v == request.query) continue;
    for (size_t i = 0; i < num_mp; ++i) {
      auto it = reached[i].find(v);
      counts[i] = it == reached[i].end() ? 0 : it->second;
    }
    RankedAnswer answer = RelevanceScore(kg, v, result.meta_path_facets, counts,
                                         result.property_facets, params);
    if (answer.score > 0) result.answers.push_back(std::move(answer));
  }

  auto better = [&](const RankedAnswer& a, const RankedAnswer& b) {
    if (a.score != b.score) return a.score > b.score;
    return kg.Label(a.entity) < kg.Label(b.entity);
  };
  const size_t k = std::min<size_t>(result.answers.size(), static_cast<size_t>(params.k));
  std::partial_sort(result.answers.begin(), result.answers.begin() + k, result.answers.end(),
                    better);
  result.answers.resize(k);
  return result;
}

}  // namespace grease
