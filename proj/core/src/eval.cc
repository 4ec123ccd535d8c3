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

#include "grease/eval.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

namespace grease {

using json = nlohmann::json;

double NdcgAtK(std::span<const std::string> ranking, const std::set<std::string>& gold, int k) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (gold.empty()) return 0.0;
  double dcg = 0.0;
  const size_t depth = std::min(ranking.size(), static_cast<size_t>(k));
  for (size_t i = 0; i < depth; ++i) {
    if (gold.count(ranking[i])) dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  }
  double ideal = 0.0;
  const size_t relevant = std::min(gold.size(), static_cast<size_t>(k));
  for (size_t i = 0; i < relevant; ++i) ideal += 1.0 / std::log2(static_cast<double>(i) + 2.0);
  return dcg / ideal;
}

std::vector<QueryInstance> ReadQueryInstances(std::istream& in) {
  std::vector<QueryInstance> out;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("queries:" + std::to_string(line_number) + ": " + what);
    };
    json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) fail("not a JSON object");
    try {
      QueryInstance q;
      q.group = j.value("group", std::string());
      q.query = j.at("query").get<std::string>();
      for (const json& pair : j.at("examples")) {
        if (!pair.is_array() || pair.size() != 2) fail("each example must be a 2-element array");
        q.examples.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
      for (const json& g : j.at("gold")) q.gold.insert(g.get<std::string>());
      q.k = j.value("k", 10);
      if (q.gold.empty()) fail("gold set is empty");
      if (q.k < 1) fail("k must be >= 1");
      out.push_back(std::move(q));
    } catch (const json::exception& e) {
      fail(e.what());
    }
  }
  return out;
}

std::vector<QueryInstance> ReadQueryInstancesFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return ReadQueryInstances(in);
}

void WriteQueryInstances(std::ostream& out, std::span<const QueryInstance> instances) {
  for (const QueryInstance& q : instances) {
    json j;
    j["group"] = q.group;
    j["query"] = q.query;
    j["examples"] = json::array();
    for (const auto& [s, t] : q.examples) j["examples"].push_back({s, t});
    j["gold"] = q.gold;
    j["k"] = q.k;
    out << j.dump() << '\n';
  }
}

BenchmarkReport RunBenchmark(const KnowledgeGraph& kg, const StatsIndex& index,
                             std::span<const QueryInstance> instances, const ModelParams& params,
                             Variant variant) {
  BenchmarkReport report;
  report.variant = variant;
  for (size_t i = 0; i < instances.size(); ++i) {
    const QueryInstance& inst = instances[i];
    InstanceResult r;
    r.position = i;
    r.group = inst.group;
    r.query = inst.query;
    r.num_examples = inst.examples.size();
    try {
      SearchRequest request;
      request.query = kg.EntityOrThrow(inst.query);
      for (const auto& [s, t] : inst.examples) {
        request.examples.push_back({kg.EntityOrThrow(s), kg.EntityOrThrow(t)});
      }
      request.params = params;
      request.params.k = inst.k;
      request.variant = variant;

      auto start = std::chrono::steady_clock::now();
      SearchResult result = Search(kg, index, request);
      auto stop = std::chrono::steady_clock::now();
      r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();

      for (const RankedAnswer& a : result.answers) r.ranking.push_back(kg.Label(a.entity));
      r.ndcg = NdcgAtK(r.ranking, inst.gold, inst.k);
    } catch (const std::exception& e) {
      r.failed = true;
      r.error = e.what();
      ++report.num_failed;
    }
    report.instances.push_back(std::move(r));
  }

  std::map<std::pair<std::string, size_t>, std::vector<const InstanceResult*>> by_group;
  for (const InstanceResult& r : report.instances) {
    if (!r.failed) by_group[{r.group, r.num_examples}].push_back(&r);
  }
  for (auto& [key, members] : by_group) {
    // Sum in a canonical order so the mean is independent of input order.
    std::vector<double> scores, times;
    for (const InstanceResult* r : members) {
      scores.push_back(r->ndcg);
      times.push_back(r->wall_ms);
    }
    std::sort(scores.begin(), scores.end());
    std::sort(times.begin(), times.end());
    GroupSummary g;
    g.group = key.first;
    g.num_examples = key.second;
    g.count = members.size();
    for (double s : scores) g.mean_ndcg += s;
    for (double t : times) g.mean_wall_ms += t;
    g.mean_ndcg /= static_cast<double>(g.count);
    g.mean_wall_ms /= static_cast<double>(g.count);
    report.groups.push_back(std::move(g));
  }
  return report;
}

std::string ReportJson(const BenchmarkReport& report, bool with_timing) {
  json j;
  j["variant"] = std::string(VariantName(report.variant));
  j["groups"] = json::array();
  for (const GroupSummary& g : report.groups) {
    json e{{"group", g.group}, {"examples", g.num_examples}, {"count", g.count},
           {"mean_ndcg", g.mean_ndcg}};
    if (with_timing) e["mean_wall_ms"] = g.mean_wall_ms;
    j["groups"].push_back(std::move(e));
  }
  j["instances"] = json::array();
  for (const InstanceResult& r : report.instances) {
    json e{{"position", r.position}, {"group", r.group}, {"query", r.query},
           {"examples", r.num_examples}};
    if (r.failed) {
      e["failed"] = true;
      e["error"] = r.error;
    } else {
      e["ndcg"] = r.ndcg;
      e["ranking"] = r.ranking;
      if (with_timing) e["wall_ms"] = r.wall_ms;
    }
    j["instances"].push_back(std::move(e));
  }
  j["failed"] = report.num_failed;
  return j.dump(2);
}

std::string ReportTable(const BenchmarkReport& report) {
  size_t width = 5;
  for (const GroupSummary& g : report.groups) width = std::max(width, g.group.size());
  std::ostringstream out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-*s  %4s  %5s  %9s  %10s\n", static_cast<int>(width), "group",
                "|S|", "n", "NDCG", "mean ms");
  out << buf;
  for (const GroupSummary& g : report.groups) {
    std::snprintf(buf, sizeof(buf), "%-*s  %4zu  %5zu  %9.4f  %10.2f\n", static_cast<int>(width),
                  g.group.c_str(), g.num_examples, g.count, g.mean_ndcg, g.mean_wall_ms);
    out << buf;
  }
  out << "variant " << VariantName(report.variant) << ", " << report.num_failed
      << " failed instance(s)\n";
  return out.str();
}

}  // namespace grease
