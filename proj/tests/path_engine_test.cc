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

#include <gtest/gtest.h>

#include "fixture.h"

namespace grease {
namespace {

std::set<std::string> Texts(const KnowledgeGraph& kg, const std::vector<MetaPath>& mps) {
  std::set<std::string> out;
  for (const MetaPath& mp : mps) out.insert(MetaPathText(kg, mp));
  return out;
}

ExamplePair Pair(const KnowledgeGraph& kg, const std::string& s, const std::string& t) {
  return {kg.EntityOrThrow(s), kg.EntityOrThrow(t)};
}

TEST(PathEngineTest, SearchOnMovies) {
  KnowledgeGraph kg = fixture::Movies();
  std::vector<ExamplePair> s1 = {Pair(kg, "DaveChappelle", "LadyGaga"),
                                 Pair(kg, "MattDamon", "JuliaRoberts")};
  MetaPathSearchOptions l2;
  l2.max_length = 2;
  EXPECT_EQ(Texts(kg, MetaPathSearch(kg, s1, l2).meta_paths),
            std::set<std::string>{"stars^-1/stars"});

  std::vector<ExamplePair> nolan = {Pair(kg, "TomHardy", "ChristopherNolan")};
  EXPECT_EQ(Texts(kg, MetaPathSearch(kg, nolan, l2).meta_paths),
            std::set<std::string>{"stars^-1/director"});

  MetaPathSearchResult l3 = MetaPathSearch(kg, s1);
  EXPECT_EQ(Texts(kg, l3.meta_paths),
            (std::set<std::string>{"stars^-1/stars", "stars^-1/subsequentWork/stars"}));
  ASSERT_EQ(l3.pair_counts.size(), 2u);
  EXPECT_EQ(l3.pair_counts[0].at(fixture::Mp(kg, "stars^-1/stars")), 1u);
  EXPECT_FALSE(l3.approximate);
}

TEST(PathEngineTest, SearchRejectsBadExamples) {
  KnowledgeGraph kg = fixture::Movies();
  std::vector<ExamplePair> same = {Pair(kg, "TomHardy", "TomHardy")};
  EXPECT_THROW(MetaPathSearch(kg, same), InvalidArgument);
  std::vector<ExamplePair> unknown = {{0, 999}};
  EXPECT_THROW(MetaPathSearch(kg, unknown), InvalidArgument);
}

TEST(PathEngineTest, InstanceCounts) {
  KnowledgeGraph kg = fixture::Movies();
  auto pc = [&](const char* s, const char* t, const char* mp) {
    return InstancePathCount(kg, kg.EntityOrThrow(s), kg.EntityOrThrow(t), fixture::Mp(kg, mp));
  };
  EXPECT_EQ(pc("TomHardy", "ChristopherNolan", "stars^-1/director"), 1u);
  EXPECT_EQ(pc("TomHardy", "GeorgeClooney", "stars^-1/director"), 0u);
  EXPECT_EQ(pc("MattDamon", "JuliaRoberts", "stars^-1/stars"), 1u);
  // BradleyCooper both stars in and directs AStarIsBorn; the acyclic rule
  // forbids returning to him.
  EXPECT_EQ(pc("BradleyCooper", "BradleyCooper", "stars^-1/director"), 0u);
}

TEST(PathEngineTest, ApproxPathCount) {
  KnowledgeGraph kg = fixture::Movies();
  StatsIndex index = StatsIndex::Build(kg);
  MetaPath long_mp = fixture::Mp(kg, "stars^-1/stars/stars^-1");
  EXPECT_DOUBLE_EQ(ApproxPathCount(index, long_mp), 2.5);
  oracle::Graph g(fixture::MovieRelations());
  EXPECT_EQ(g.PathCount(fixture::ToOracle(kg, long_mp)), 1u);
  EXPECT_DOUBLE_EQ(ApproxPathCount(index, fixture::Mp(kg, "stars")), 8.0);
  EXPECT_DOUBLE_EQ(ApproxPathCount(index, fixture::Mp(kg, "director/director/stars")), 0.0);
  EXPECT_DOUBLE_EQ(ApproxPathCount(index, fixture::Mp(kg, "stars^-1/subsequentWork/stars")), 2.0);
}

TEST(PathEngineTest, ReachableSets) {
  KnowledgeGraph kg = fixture::Movies();
  EntityId tom = kg.EntityOrThrow("TomHardy");
  auto leo = ReachableSet(kg, tom, fixture::Mp(kg, "stars^-1/stars"), 5);
  ASSERT_EQ(leo.size(), 1u);
  EXPECT_EQ(leo.at(kg.EntityOrThrow("LeonardoDiCaprio")), 1u);
  auto nolan = ReachableSet(kg, tom, fixture::Mp(kg, "stars^-1/director"), 5);
  ASSERT_EQ(nolan.size(), 1u);
  EXPECT_EQ(nolan.at(kg.EntityOrThrow("ChristopherNolan")), 1u);
  EXPECT_THROW(ReachableSet(kg, tom, fixture::Mp(kg, "stars"), 0), InvalidArgument);
}

TEST(PathEngineTest, ReachableCountsSaturate) {
  // Three films shared by A and B.
  KnowledgeGraph kg = fixture::LoadGraph({{"F1", "stars", "A"}, {"F1", "stars", "B"},
                                          {"F2", "stars", "A"}, {"F2", "stars", "B"},
                                          {"F3", "stars", "A"}, {"F3", "stars", "B"}});
  MetaPath mp = fixture::Mp(kg, "stars^-1/stars");
  EntityId a = kg.EntityOrThrow("A"), b = kg.EntityOrThrow("B");
  EXPECT_EQ(ReachableSet(kg, a, mp, 1).at(b), 1u);
  EXPECT_EQ(ReachableSet(kg, a, mp, 5).at(b), 3u);
  EXPECT_EQ(InstancePathCount(kg, a, b, mp), 3u);
}

TEST(PathEngineTest, DegreeCapFlagsApproximate) {
  std::vector<oracle::Triple> t;
  for (int i = 0; i < 50; ++i) t.push_back({"Hub", "r", "x" + std::to_string(i)});
  t.push_back({"x0", "s", "y"});
  KnowledgeGraph kg = fixture::LoadGraph(t);
  std::vector<ExamplePair> ex = {Pair(kg, "x1", "x2")};
  MetaPathSearchOptions capped;
  capped.max_degree_expansion = 10;
  EXPECT_TRUE(MetaPathSearch(kg, ex, capped).approximate);
  EXPECT_FALSE(MetaPathSearch(kg, ex).approximate);
  EXPECT_EQ(Texts(kg, MetaPathSearch(kg, ex).meta_paths), std::set<std::string>{"r^-1/r"});
}

TEST(PathEngineTest, MatchesOracleOnRandomGraphs) {
  for (uint64_t seed = 11; seed <= 14; ++seed) {
    auto triples = oracle::RandomTriples(seed, 120, 500, 4);
    KnowledgeGraph kg = fixture::LoadGraph(triples);
    oracle::Graph g(triples);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 20; ++i) {
      EntityId s = static_cast<EntityId>(rng() % kg.num_entities());
      EntityId t = static_cast<EntityId>(rng() % kg.num_entities());
      if (s == t) continue;
      std::vector<ExamplePair> ex = {{s, t}};
      MetaPathSearchResult r = MetaPathSearch(kg, ex);
      auto expected = g.PairCounts(kg.Label(s), kg.Label(t), 3);
      ASSERT_EQ(r.meta_paths.size(), expected.size());
      for (const auto& [path, count] : expected) {
        MetaPath mp = fixture::FromOracle(kg, path);
        EXPECT_EQ(r.pair_counts[0].at(mp), count);
        EXPECT_EQ(InstancePathCount(kg, s, t, mp), count);
      }
    }
  }
}

}  // namespace
}  // namespace grease
