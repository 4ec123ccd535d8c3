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

#include "grease/facet_model.h"

#include <algorithm>
#include <cmath>

#include "grease/path_engine.h"

namespace grease {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be a positive number");
  }
}

void RequireNonEmpty(std::span<const ExamplePair> examples) {
  if (examples.empty()) throw InvalidArgument("example set is empty");
}

}  // namespace

void ModelParams::Validate() const {
  RequirePositive(alpha_mp, "alpha_mp");
  RequirePositive(alpha_prop, "alpha_prop");
  RequirePositive(beta, "beta");
  if (max_length < 1) throw InvalidArgument("max_len must be >= 1");
  if (top_meta_paths < 1) throw InvalidArgument("top_mp must be >= 1");
  if (k < 1) throw InvalidArgument("k must be >= 1");
}

double MetaPathLogPrior(const StatsIndex& index, const MetaPath& mp) {
  double apc = ApproxPathCount(index, mp);
  return apc > 0 ? std::log(apc) : kLogFloor;
}

double MetaPathLogLikelihood(const StatsIndex& index, std::span<const ExamplePair> examples,
                             const MetaPath& mp, std::span<const uint64_t> pair_counts) {
  RequireNonEmpty(examples);
  if (pair_counts.size() != examples.size()) {
    throw InvalidArgument("pair count list does not match example list");
  }
  const double apc = ApproxPathCount(index, mp);
  const double log_apc = apc > 0 ? std::log(apc) : kLogFloor;
  double total = 0.0;
  for (size_t i = 0; i < examples.size(); ++i) {
    if (apc > 0 && pair_counts[i] > 0) {
      total += std::log(static_cast<double>(pair_counts[i])) - log_apc;
    } else {
      // Expected count between two entities of the same types as s and t:
      // apc / (|ST(s)| |ST(t)|), divided by apc again.
      double log_smoothed = log_apc - std::log(static_cast<double>(index.SameTypeExtent(
                                          examples[i].source))) -
                            std::log(static_cast<double>(index.SameTypeExtent(examples[i].target)));
      total += log_smoothed - log_apc;
    }
  }
  return total;
}

double MetaPathLogLikelihood(const KnowledgeGraph& kg, const StatsIndex& index,
                             std::span<const ExamplePair> examples, const MetaPath& mp) {
  std::vector<uint64_t> counts;
  counts.reserve(examples.size());
  for (const ExamplePair& ex : examples) {
    counts.push_back(InstancePathCount(kg, ex.source, ex.target, mp));
  }
  return MetaPathLogLikelihood(index, examples, mp, counts);
}

std::vector<WeightedFacet> MetaPathPosteriors(
    const KnowledgeGraph& kg, const StatsIndex& index, std::span<const MetaPath> omega,
    std::span<const ExamplePair> examples,
    std::span<const std::map<MetaPath, uint64_t>> pair_counts) {
  std::vector<WeightedFacet> out;
  if (omega.empty()) return out;
  RequireNonEmpty(examples);
  if (!pair_counts.empty() && pair_counts.size() != examples.size()) {
    throw InvalidArgument("pair count list does not match example list");
  }
  out.reserve(omega.size());
  std::vector<uint64_t> counts(examples.size());
  for (const MetaPath& mp : omega) {
    for (size_t i = 0; i < examples.size(); ++i) {
      if (pair_counts.empty()) {
        counts[i] = InstancePathCount(kg, examples[i].source, examples[i].target, mp);
      } else {
        auto it = pair_counts[i].find(mp);
        counts[i] = it == pair_counts[i].end() ? 0 : it->second;
      }
    }
    WeightedFacet f;
    f.facet = mp;
    f.text = MetaPathText(kg, mp);
    f.log_prior = MetaPathLogPrior(index, mp);
    f.log_likelihood = MetaPathLogLikelihood(index, examples, mp, counts);
    out.push_back(std::move(f));
  }
  NormalizePosteriors(&out);
  return out;
}

double PropertyLogPrior(const StatsIndex& index, const Property& prop) {
  uint64_t extent = index.PropertyExtent(prop);
  if (extent == 0) return kLogFloor;
  return std::log(static_cast<double>(extent)) -
         std::log(static_cast<double>(index.entity_total()));
}

double PropertyLogLikelihood(const KnowledgeGraph& kg, const StatsIndex& index,
                             std::span<const ExamplePair> examples, const Property& prop) {
  RequireNonEmpty(examples);
  const auto id = kg.FindProperty(prop);
  const uint64_t extent = index.PropertyExtent(prop);
  const double log_total = std::log(static_cast<double>(index.entity_total()));
  double total = 0.0;
  for (const ExamplePair& ex : examples) {
    if (id && extent > 0 && kg.HasProperty(ex.target, *id)) {
      total -= std::log(static_cast<double>(extent));
    } else {
      total -= log_total;
    }
  }
  return total;
}

std::vector<WeightedFacet> PropertyPosteriors(const KnowledgeGraph& kg, const StatsIndex& index,
                                              std::span<const Property> omega,
                                              std::span<const ExamplePair> examples) {
  std::vector<WeightedFacet> out;
  if (omega.empty()) return out;
  out.reserve(omega.size());
  for (const Property& p : omega) {
    WeightedFacet f;
    f.facet = p;
    f.text = p.Text();
    f.log_prior = PropertyLogPrior(index, p);
    f.log_likelihood = PropertyLogLikelihood(kg, index, examples, p);
    out.push_back(std::move(f));
  }
  NormalizePosteriors(&out);
  return out;
}

double MetaPathGamma(uint64_t instance_count, const ModelParams& params) {
  return std::min(static_cast<double>(instance_count), params.alpha_mp);
}

double PropertyGamma(const KnowledgeGraph& kg, EntityId v, const Property& prop,
                     const ModelParams& params) {
  auto id = kg.FindProperty(prop);
  return id && kg.HasProperty(v, *id) ? params.alpha_prop : 0.0;
}

double PropertyGamma(std::span<const Property> v_properties, const Property& prop,
                     const ModelParams& params) {
  bool member = std::find(v_properties.begin(), v_properties.end(), prop) != v_properties.end();
  return member ? params.alpha_prop : 0.0;
}

double Regularizer(size_t length, double beta) {
  return std::exp(-beta * static_cast<double>(length));
}

double Regularizer(const MetaPath& mp, const ModelParams& params) {
  return Regularizer(mp.length(), params.beta);
}

void NormalizePosteriors(std::vector<WeightedFacet>* facets) {
  if (facets->empty()) return;
  double max_log = -std::numeric_limits<double>::infinity();
  for (const WeightedFacet& f : *facets) max_log = std::max(max_log, f.log_prior + f.log_likelihood);
  double sum = 0.0;
  for (WeightedFacet& f : *facets) {
    f.weight = std::exp(f.log_prior + f.log_likelihood - max_log);
    sum += f.weight;
  }
  for (WeightedFacet& f : *facets) f.weight /= sum;
  std::stable_sort(facets->begin(), facets->end(),
                   [](const WeightedFacet& a, const WeightedFacet& b) {
                     if (a.weight != b.weight) return a.weight > b.weight;
                     return a.text < b.text;
                   });
}

}  // namespace grease
