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

#include "grease/knowledge_graph.h"

#include <gtest/gtest.h>

#include <sstream>

#include "fixture.h"

namespace grease {
namespace {

KnowledgeGraph FromText(const std::string& rel, const std::string& attr = "") {
  std::istringstream r(rel), a(attr);
  return KnowledgeGraph::Load(r, a);
}

TEST(KnowledgeGraphTest, MoviesCounts) {
  KnowledgeGraph kg = fixture::Movies();
  EXPECT_EQ(kg.num_entities(), 14u);
  EXPECT_EQ(kg.num_edges(), 13u);
  EXPECT_EQ(kg.num_relations(), 3u);
  EXPECT_EQ(kg.skipped_self_loops(), 0u);
}

TEST(KnowledgeGraphTest, MinimalGraph) {
  KnowledgeGraph kg = FromText("A\tstars\tB\n");
  EXPECT_EQ(kg.num_entities(), 2u);
  EXPECT_EQ(kg.num_edges(), 1u);
  EXPECT_TRUE(kg.AttributeIds(0).empty());
  EXPECT_TRUE(kg.AttributeIds(1).empty());
}

TEST(KnowledgeGraphTest, MalformedLineReportsLineNumber) {
  try {
    FromText("A\tstars\n");
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  try {
    FromText("# header\nA\tstars\tB\nC\tD\n");
    FAIL() << "expected LoadError";
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(FromText("A\tb\tc\td\n"), LoadError);
  EXPECT_THROW(FromText("\tstars\tB\n"), LoadError);
}

TEST(KnowledgeGraphTest, EmptyGraphIsAnError) {
  EXPECT_THROW(FromText("# only a comment\n\n"), LoadError);
}

TEST(KnowledgeGraphTest, CommentsBlankLinesAndCrlf) {
  KnowledgeGraph kg = FromText("# c\n\nA\tr\tB\r\n", "A\tcolor\tred\r\n");
  ASSERT_TRUE(kg.FindEntity("B"));
  Property red{"color", "red"};
  EXPECT_TRUE(kg.FindProperty(red));
}

TEST(KnowledgeGraphTest, DuplicatesMergedSelfLoopsSkipped) {
  KnowledgeGraph kg = FromText("A\tr\tB\nA\tr\tB\nC\tr\tC\nB\tr\tA\n");
  EXPECT_EQ(kg.num_edges(), 2u);
  EXPECT_EQ(kg.skipped_self_loops(), 1u);
  EXPECT_TRUE(kg.FindEntity("C"));
}

TEST(KnowledgeGraphTest, IdsFollowFirstAppearance) {
  KnowledgeGraph kg = FromText("X\tr\tY\nZ\tr\tX\n", "W\tcolor\tred\n");
  EXPECT_EQ(*kg.FindEntity("X"), 0u);
  EXPECT_EQ(*kg.FindEntity("Y"), 1u);
  EXPECT_EQ(*kg.FindEntity("Z"), 2u);
  EXPECT_EQ(*kg.FindEntity("W"), 3u);
}

std::set<std::pair<std::string, std::string>> PhiOf(const KnowledgeGraph& kg,
                                                    const std::string& label) {
  std::set<std::pair<std::string, std::string>> out;
  for (const Property& p : kg.PropertiesOf(kg.EntityOrThrow(label))) out.insert({p.name, p.value});
  return out;
}

TEST(KnowledgeGraphTest, PropertiesOfMovies) {
  KnowledgeGraph kg = fixture::Movies();
  using Set = std::set<std::pair<std::string, std::string>>;
  EXPECT_EQ(PhiOf(kg, "Suburbicon"), (Set{{"genre", "Comedy"},
                                          {"stars", "MattDamon"},
                                          {"director", "GeorgeClooney"},
                                          {"subsequentWork", "OceansEleven"},
                                          {"type", "Film"}}));
  EXPECT_EQ(PhiOf(kg, "LadyGaga"), (Set{{"type", "Person"}, {"gender", "F"}, {"country", "US"}}));
}

TEST(KnowledgeGraphTest, PropertiesMatchOracle) {
  KnowledgeGraph kg = fixture::Movies();
  oracle::Graph g(fixture::MovieRelations(), fixture::MovieAttributes());
  for (const std::string& v : g.nodes()) EXPECT_EQ(PhiOf(kg, v), g.Phi(v)) << v;
}

TEST(KnowledgeGraphTest, EntityWithoutPropertiesHasEmptyPhi) {
  KnowledgeGraph kg = FromText("A\tr\tB\n");
  EXPECT_TRUE(kg.PropertiesOf(kg.EntityOrThrow("B")).empty());
  EXPECT_THROW(kg.PropertiesOf(99), InvalidArgument);
}

TEST(KnowledgeGraphTest, StepNeighbors) {
  KnowledgeGraph kg = fixture::Movies();
  RelationId stars = *kg.FindRelation("stars");
  RelationId director = *kg.FindRelation("director");
  EXPECT_EQ(kg.StepNeighbors(kg.EntityOrThrow("Inception"), {stars, false}),
            (std::vector<EntityId>{kg.EntityOrThrow("TomHardy"),
                                   kg.EntityOrThrow("LeonardoDiCaprio")}));
  EXPECT_EQ(kg.StepNeighbors(kg.EntityOrThrow("TomHardy"), {stars, true}),
            (std::vector<EntityId>{kg.EntityOrThrow("Inception")}));
  EXPECT_TRUE(kg.StepNeighbors(kg.EntityOrThrow("TomHardy"), {director, false}).empty());
  EXPECT_TRUE(kg.StepNeighbors(kg.EntityOrThrow("TomHardy"), {999, false}).empty());
}

TEST(KnowledgeGraphTest, AdjacencySumsAndDeterminism) {
  auto triples = oracle::RandomTriples(7, 300, 2000, 8);
  KnowledgeGraph a = fixture::LoadGraph(triples);
  KnowledgeGraph b = fixture::LoadGraph(triples);
  size_t out = 0, in = 0;
  for (EntityId v = 0; v < a.num_entities(); ++v) {
    out += a.OutEdges(v).size();
    in += a.InEdges(v).size();
    ASSERT_EQ(a.Label(v), b.Label(v));
    ASSERT_TRUE(std::ranges::equal(a.OutEdges(v), b.OutEdges(v)));
    ASSERT_TRUE(std::ranges::equal(a.PropertyIds(v), b.PropertyIds(v)));
    EXPECT_EQ(a.PropertiesOf(v), a.PropertiesOf(v));
  }
  EXPECT_EQ(out, a.num_edges());
  EXPECT_EQ(in, a.num_edges());
}

TEST(KnowledgeGraphTest, CustomTypeAttribute) {
  std::istringstream r("A\tr\tB\n"), at("A\tkind\tThing\nA\ttype\tOther\n");
  LoadOptions options;
  options.type_attribute = "kind";
  KnowledgeGraph kg = KnowledgeGraph::Load(r, at, options);
  EXPECT_EQ(kg.TypesOf(0), std::vector<std::string>{"Thing"});
}

TEST(KnowledgeGraphTest, UnknownLabel) {
  KnowledgeGraph kg = fixture::Movies();
  EXPECT_FALSE(kg.FindEntity("Nobody"));
  EXPECT_THROW(kg.EntityOrThrow("Nobody"), InvalidArgument);
  EXPECT_THROW(KnowledgeGraph::LoadFiles("/nonexistent/rel.tsv", ""), LoadError);
}

}  // namespace
}  // namespace grease
