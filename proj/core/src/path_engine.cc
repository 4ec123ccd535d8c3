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

#include "grease/path_engine.h"

#include <algorithm>
#include <string>

namespace grease {
namespace {

bool OnPath(std::span<const EntityId> path, EntityId v) {
  return std::find(path.begin(), path.end(), v) != path.end();
}

// Walks every acyclic instance of mp.steps[0..depth) starting at path.back()
// and calls fn(path) with the full node sequence of each.
template <typename Fn>
void WalkPrefixes(const KnowledgeGraph& kg, const MetaPath& mp, size_t depth,
                  std::vector<EntityId>& path, Fn& fn) {
  size_t i = path.size() - 1;
  if (i == depth) {
    fn(path);
    return;
  }
  for (const Adjacent& a : kg.StepEdges(path.back(), mp.steps[i])) {
    if (OnPath(path, a.neighbor)) continue;
    path.push_back(a.neighbor);
    WalkPrefixes(kg, mp, depth, path, fn);
    path.pop_back();
  }
}

// One partial path in a search tree rooted at an example endpoint.
struct TreeNode {
  EntityId entity;
  int32_t parent;  // -1 for the root
  RelationStep step;  // step from parent to entity
  int depth;
};

class SearchTree {
 public:
  // Expands every acyclic path of up to `depth` steps from `root`. Paths may
  // end at `stop` but never continue through it.
  SearchTree(const KnowledgeGraph& kg, EntityId root, EntityId stop, int depth,
             const std::optional<size_t>& max_expansion, bool* approximate) {
    nodes_.push_back({root, -1, {}, 0});
    std::vector<Adjacent> scratch;
    for (size_t i = 0; i < nodes_.size(); ++i) {
      const TreeNode node = nodes_[i];
      if (node.depth == depth || (node.entity == stop && i != 0)) continue;
      std::span<const Adjacent> out = kg.OutEdges(node.entity);
      std::span<const Adjacent> in = kg.InEdges(node.entity);
      scratch.assign(out.begin(), out.end());
      scratch.insert(scratch.end(), in.begin(), in.end());
      if (max_expansion && scratch.size() > *max_expansion) {
        std::sort(scratch.begin(), scratch.end(), [](const Adjacent& a, const Adjacent& b) {
          return std::tie(a.neighbor, a.step) < std::tie(b.neighbor, b.step);
        });
        scratch.resize(*max_expansion);
        *approximate = true;
      }
      for (const Adjacent& a : scratch) {
        if (Contains(static_cast<int32_t>(i), a.neighbor)) continue;
        nodes_.push_back({a.neighbor, static_cast<int32_t>(i), a.step, node.depth + 1});
      }
    }
  }

  const std::vector<TreeNode>& nodes() const { return nodes_; }

  // True if `v` lies on the chain from node `i` up to the root.
  bool Contains(int32_t i, EntityId v) const {
    for (; i >= 0; i = nodes_[i].parent) {
      if (nodes_[i].entity == v) return true;
    }
    return false;
  }

  // Steps from the root to node i, in order.
  void StepsTo(int32_t i, std::vector<RelationStep>* out) const {
    size_t start = out->size();
    for (; nodes_[i].parent >= 0; i = nodes_[i].parent) out->push_back(nodes_[i].step);
    std::reverse(out->begin() + start, out->end());
  }

 private:
  std::vector<TreeNode> nodes_;
};

std::map<MetaPath, uint64_t> SearchExample(const KnowledgeGraph& kg, ExamplePair ex,
                                           const MetaPathSearchOptions& options,
                                           bool* approximate) {
  const int forward_depth = (options.max_length + 1) / 2;
  const int backward_depth = options.max_length / 2;
  SearchTree forward(kg, ex.source, ex.target, forward_depth, options.max_degree_expansion,
                     approximate);
  SearchTree backward(kg, ex.target, ex.source, backward_depth, options.max_degree_expansion,
                      approximate);

  // Every path of length l is produced exactly once, by splitting it after
  // min(l, forward_depth) steps: either it ends inside the forward tree (the
  // backward part is the bare root t), or the forward part has full depth.
  std::unordered_map<EntityId, std::vector<int32_t>> full_depth_ends;
  const auto& fnodes = forward.nodes();
  for (size_t i = 1; i < fnodes.size(); ++i) {
    if (fnodes[i].depth == forward_depth) {
      full_depth_ends[fnodes[i].entity].push_back(static_cast<int32_t>(i));
    }
  }

  std::map<MetaPath, uint64_t> counts;
  MetaPath mp;
  for (size_t i = 1; i < fnodes.size(); ++i) {
    if (fnodes[i].entity != ex.target) continue;
    mp.steps.clear();
    forward.StepsTo(static_cast<int32_t>(i), &mp.steps);
    ++counts[mp];
  }

  const auto& bnodes = backward.nodes();
  for (size_t j = 1; j < bnodes.size(); ++j) {
    auto it = full_depth_ends.find(bnodes[j].entity);
    if (it == full_depth_ends.end()) continue;
    for (int32_t i : it->second) {
      // The two halves may share only the meeting entity.
      bool disjoint = true;
      for (int32_t k = bnodes[j].parent; k >= 0 && disjoint; k = bnodes[k].parent) {
        if (forward.Contains(i, bnodes[k].entity)) disjoint = false;
      }
      if (!disjoint) continue;
      mp.steps.clear();
      forward.StepsTo(i, &mp.steps);
      for (int32_t k = static_cast<int32_t>(j); bnodes[k].parent >= 0; k = bnodes[k].parent) {
        mp.steps.push_back(bnodes[k].step.Invert());
      }
      ++counts[mp];
    }
  }
  return counts;
}

}  // namespace

MetaPathSearchResult MetaPathSearch(const KnowledgeGraph& kg,
                                    std::span<const ExamplePair> examples,
                                    const MetaPathSearchOptions& options) {
  if (options.max_length < 1) throw InvalidArgument("max meta-path length must be >= 1");
  for (size_t i = 0; i < examples.size(); ++i) {
    const ExamplePair& ex = examples[i];
    if (!kg.Contains(ex.source) || !kg.Contains(ex.target)) {
      throw InvalidArgument("example " + std::to_string(i) + ": unknown entity");
    }
    if (ex.source == ex.target) {
      throw InvalidArgument("example " + std::to_string(i) + ": source equals target");
    }
  }

  MetaPathSearchResult result;
  result.pair_counts.resize(examples.size());
  std::map<ExamplePair, size_t> first_seen;
  for (size_t i = 0; i < examples.size(); ++i) {
    auto [it, inserted] = first_seen.try_emplace(examples[i], i);
    if (!inserted) {
      result.pair_counts[i] = result.pair_counts[it->second];
      continue;
    }
    result.pair_counts[i] = SearchExample(kg, examples[i], options, &result.approximate);
    for (const auto& [mp, count] : result.pair_counts[i]) result.meta_paths.push_back(mp);
  }
  std::sort(result.meta_paths.begin(), result.meta_paths.end());
  result.meta_paths.erase(std::unique(result.meta_paths.begin(), result.meta_paths.end()),
                          result.meta_paths.end());
  return result;
}

uint64_t InstancePathCount(const KnowledgeGraph& kg, EntityId q, EntityId v,
                           const MetaPath& mp) {
  if (q == v || !kg.Contains(q) || !kg.Contains(v) || mp.empty()) return 0;
  const RelationStep last = mp.steps.back();
  uint64_t count = 0;
  auto close = [&](std::span<const EntityId> path) {
    // Only v itself remains to be checked against the prefix.
    if (!OnPath(path, v) && kg.HasStep(path.back(), last, v)) ++count;
  };
  std::vector<EntityId> path{q};
  WalkPrefixes(kg, mp, mp.length() - 1, path, close);
  return count;
}

double ApproxPathCount(const StatsIndex& index, const MetaPath& mp) {
  const auto& r = mp.steps;
  if (r.empty()) return 0.0;
  if (r.size() <= 2) return static_cast<double>(index.PathCount(r));

  const size_t l = r.size();
  double start = static_cast<double>(index.EdgeCount(r[0]));
  for (size_t i = 1; i < l && start > 0; ++i) {
    uint64_t denom = index.EdgeCount(r[i - 1]);
    start = denom == 0 ? 0.0 : start * static_cast<double>(index.PairCount(r[i - 1], r[i])) / denom;
  }
  double end = static_cast<double>(index.EdgeCount(r[l - 1]));
  for (size_t i = 0; i + 1 < l && end > 0; ++i) {
    uint64_t denom = index.EdgeCount(r[i + 1]);
    end = denom == 0 ? 0.0 : end * static_cast<double>(index.PairCount(r[i], r[i + 1])) / denom;
  }
  return 0.5 * (start + end);
}

std::unordered_map<EntityId, uint64_t> ReachableSet(const KnowledgeGraph& kg, EntityId q,
                                                    const MetaPath& mp, uint64_t cap) {
  if (cap == 0) throw InvalidArgument("reachable-set cap must be >= 1");
  std::unordered_map<EntityId, uint64_t> reached;
  if (!kg.Contains(q) || mp.empty()) return reached;
  const RelationStep last = mp.steps.back();
  auto close = [&](std::span<const EntityId> path) {
    for (const Adjacent& a : kg.StepEdges(path.back(), last)) {
      if (OnPath(path, a.neighbor)) continue;
      uint64_t& c = reached[a.neighbor];
      if (c < cap) ++c;
    }
  };
  std::vector<EntityId> path{q};
  WalkPrefixes(kg, mp, mp.length() - 1, path, close);
  return reached;
}

}  // namespace grease
