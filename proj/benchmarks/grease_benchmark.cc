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

#include <benchmark/benchmark.h>

#include <map>
#include <memory>
#include <sstream>

#include "grease/path_engine.h"
#include "grease/planted.h"
#include "grease/search.h"
#include "grease/stats_index.h"

namespace grease {
namespace {

struct Dataset {
  PlantedDataset data;
  KnowledgeGraph kg;
  StatsIndex index;
};

const Dataset& Get(size_t entities) {
  static std::map<size_t, std::unique_ptr<Dataset>> cache;
  auto& slot = cache[entities];
  if (!slot) {
    PlantedSpec spec;
    spec.entity_count = entities;
    spec.instances_per_group = 10;
    PlantedDataset data = GeneratePlanted(spec);
    std::istringstream rel(data.relations_tsv), attr(data.attributes_tsv);
    KnowledgeGraph kg = KnowledgeGraph::Load(rel, attr);
    StatsIndex index = StatsIndex::Build(kg);
    slot.reset(new Dataset{std::move(data), std::move(kg), std::move(index)});
  }
  return *slot;
}

SearchRequest RequestFor(const Dataset& d, size_t i) {
  const QueryInstance& inst = d.data.instances[i % d.data.instances.size()];
  SearchRequest r;
  r.query = d.kg.EntityOrThrow(inst.query);
  for (const auto& [s, t] : inst.examples) {
    r.examples.push_back({d.kg.EntityOrThrow(s), d.kg.EntityOrThrow(t)});
  }
  return r;
}

void BM_LoadGraph(benchmark::State& state) {
  const Dataset& d = Get(static_cast<size_t>(state.range(0)));
  for (auto _ : state) {
    std::istringstream rel(d.data.relations_tsv), attr(d.data.attributes_tsv);
    benchmark::DoNotOptimize(KnowledgeGraph::Load(rel, attr));
  }
  state.counters["edges"] = static_cast<double>(d.kg.num_edges());
}

void BM_BuildIndex(benchmark::State& state) {
  const Dataset& d = Get(static_cast<size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(StatsIndex::Build(d.kg));
  state.counters["edges"] = static_cast<double>(d.kg.num_edges());
}

void BM_MetaPathSearch(benchmark::State& state) {
  const Dataset& d = Get(static_cast<size_t>(state.range(0)));
  MetaPathSearchOptions options;
  options.max_length = static_cast<int>(state.range(1));
  size_t i = 0;
  for (auto _ : state) {
    SearchRequest r = RequestFor(d, i++);
    benchmark::DoNotOptimize(MetaPathSearch(d.kg, r.examples, options));
  }
}

void BM_Search(benchmark::State& state) {
  const Dataset& d = Get(static_cast<size_t>(state.range(0)));
  Variant variant = state.range(1) == 0 ? Variant::kFull : Variant::kNp;
  size_t i = 0;
  for (auto _ : state) {
    SearchRequest r = RequestFor(d, i++);
    r.variant = variant;
    benchmark::DoNotOptimize(Search(d.kg, d.index, r));
  }
}

BENCHMARK(BM_LoadGraph)->Arg(2000)->Arg(55000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildIndex)->Arg(2000)->Arg(55000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MetaPathSearch)->Args({2000, 3})->Args({55000, 3})->Args({55000, 4})
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_Search)->Args({2000, 0})->Args({55000, 0})->Args({55000, 1})
    ->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace grease

BENCHMARK_MAIN();
