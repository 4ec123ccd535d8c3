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

#ifndef GREASE_FACET_MODEL_H_
#define GREASE_FACET_MODEL_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "grease/knowledge_graph.h"
#include "grease/meta_path.h"
#include "grease/stats_index.h"
#include "grease/types.h"

namespace grease {

// Model parameters. Defaults are the standard configuration.
struct ModelParams {
  double alpha_mp = 5.0;    // cap on instance path counts
  double alpha_prop = 2.0;  // relevance of a matching property
  double beta = 10.0;       // length decay of the regularizer
  int max_length = 3;       // L
  int top_meta_paths = 3;   // m
  int k = 10;

  // Throws InvalidArgument naming the first offending field.
  void Validate() const;
};

// log of the smallest positive normalized double; used wherever a count or
// probability would otherwise be zero.
inline const double kLogFloor = std::log(std::numeric_limits<double>::min());

// A meta-path or a property.
using Facet = std::variant<MetaPath, Property>;

struct WeightedFacet {
  Facet facet;
  std::string text;
  double log_prior = 0.0;
  double log_likelihood = 0.0;
  // Normalized within the facet's kind.
  double weight = 0.0;

  bool is_meta_path() const { return std::holds_alternative<MetaPath>(facet); }
  const MetaPath& meta_path() const { return std::get<MetaPath>(facet); }
  const Property& property() const { return std::get<Property>(facet); }
};

// log Pr(P): log of the mean of the forward and backward Markov estimates,
// i.e. log apc(P), floored.
double MetaPathLogPrior(const StatsIndex& index, const MetaPath& mp);

// log Pr(S | P) given pc(s, t, P) for each example (aligned with `examples`).
// A zero count is replaced by apc(P) / (|ST(s)| * |ST(t)|).
double MetaPathLogLikelihood(const StatsIndex& index, std::span<const ExamplePair> examples,
                             const MetaPath& mp, std::span<const uint64_t> pair_counts);

// Same, computing each pc(s, t, P) by path enumeration.
double MetaPathLogLikelihood(const KnowledgeGraph& kg, const StatsIndex& index,
                             std::span<const ExamplePair> examples, const MetaPath& mp);

// Posterior weights over Omega_mp, sorted by descending weight then text.
// `pair_counts` is indexed like `examples` (see MetaPathSearchResult); when
// empty, counts are enumerated.
std::vector<WeightedFacet> MetaPathPosteriors(
    const KnowledgeGraph& kg, const StatsIndex& index, std::span<const MetaPath> omega,
    std::span<const ExamplePair> examples,
    std::span<const std::map<MetaPath, uint64_t>> pair_counts = {});

// log(extent / |V|), floored when the property never occurs.
double PropertyLogPrior(const StatsIndex& index, const Property& prop);

// Sum over examples of log(1 / extent) if prop is in Phi(t), else log(1/|V|).
double PropertyLogLikelihood(const KnowledgeGraph& kg, const StatsIndex& index,
                             std::span<const ExamplePair> examples, const Property& prop);

std::vector<WeightedFacet> PropertyPosteriors(const KnowledgeGraph& kg, const StatsIndex& index,
                                              std::span<const Property> omega,
                                              std::span<const ExamplePair> examples);

// gamma for a meta-path: min(count, alpha_mp).
double MetaPathGamma(uint64_t instance_count, const ModelParams& params);
// gamma for a property: alpha_prop if v has it, else 0.
double PropertyGamma(const KnowledgeGraph& kg, EntityId v, const Property& prop,
                     const ModelParams& params);
double PropertyGamma(std::span<const Property> v_properties, const Property& prop,
                     const ModelParams& params);

// J(P) = exp(-beta * len(P)).
double Regularizer(const MetaPath& mp, const ModelParams& params);
double Regularizer(size_t length, double beta);

// Exponentiates log_prior + log_likelihood with a max shift, normalizes to
// sum 1, and sorts by descending weight then text.
void NormalizePosteriors(std::vector<WeightedFacet>* facets);

}  // namespace grease

#endif  // GREASE_FACET_MODEL_H_
