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

#ifndef GREASE_EVAL_H_
#define GREASE_EVAL_H_

#include <istream>
#include <ostream>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "grease/facet_model.h"
#include "grease/knowledge_graph.h"
#include "grease/search.h"
#include "grease/stats_index.h"

namespace grease {

// NDCG@k with binary gains and log2(i + 1) discounts, normalized by the DCG of
// min(|gold|, k) relevant items. Missing positions (ranking shorter than k)
// contribute nothing. Returns 0 for an empty gold set. Throws
// InvalidArgument for k < 1.
double NdcgAtK(std::span<const std::string> ranking, const std::set<std::string>& gold, int k);

// One evaluation query, addressed by entity labels.
struct QueryInstance {
  std::string group;
  std::string query;
  std::vector<std::pair<std::string, std::string>> examples;
  std::set<std::string> gold;
  int k = 10;

  friend bool operator==(const QueryInstance&, const QueryInstance&) = default;
};

// JSON lines: {"group", "query", "examples": [[s, t], ...], "gold": [...], "k"}.
// Blank lines are skipped. Throws std::runtime_error with the line number on
// malformed input.
std::vector<QueryInstance> ReadQueryInstances(std::istream& in);
std::vector<QueryInstance> ReadQueryInstancesFile(const std::string& path);
void WriteQueryInstances(std::ostream& out, std::span<const QueryInstance> instances);

struct InstanceResult {
  size_t position = 0;  // index in the input list
  std::string group;
  std::string query;
  size_t num_examples = 0;
  bool failed = false;
  std::string error;
  double ndcg = 0.0;
  std::vector<std::string> ranking;
  double wall_ms = 0.0;
};

struct GroupSummary {
  std::string group;
  size_t num_examples = 0;
  size_t count = 0;
  double mean_ndcg = 0.0;
  double mean_wall_ms = 0.0;
};

struct BenchmarkReport {
  Variant variant = Variant::kFull;
  std::vector<InstanceResult> instances;
  // Sorted by (group, num_examples); failed instances are excluded.
  std::vector<GroupSummary> groups;
  size_t num_failed = 0;
};

// Runs every instance through Search and scores NDCG at the instance's k.
// Instances that cannot be resolved or searched are marked failed and left
// out of the group means. Means do not depend on instance order.
BenchmarkReport RunBenchmark(const KnowledgeGraph& kg, const StatsIndex& index,
                             std::span<const QueryInstance> instances, const ModelParams& params,
                             Variant variant);

// Mean NDCG over every group whose name satisfies `pred` (count-weighted).
template <typename Pred>
double MeanNdcg(const BenchmarkReport& report, Pred pred) {
  double sum = 0.0;
  size_t n = 0;
  for (const GroupSummary& g : report.groups) {
    if (!pred(g.group)) continue;
    sum += g.mean_ndcg * static_cast<double>(g.count);
    n += g.count;
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

// JSON report. Timing fields are included only when `with_timing` is set, so
// the rest is reproducible byte for byte.
std::string ReportJson(const BenchmarkReport& report, bool with_timing);
// Aligned plain-text table of the group means.
std::string ReportTable(const BenchmarkReport& report);

}  // namespace grease

#endif  // GREASE_EVAL_H_
