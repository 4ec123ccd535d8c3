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

#ifndef GREASE_TESTS_FIXTURE_H_
#define GREASE_TESTS_FIXTURE_H_

#include <sstream>
#include <string>
#include <vector>

#include "grease/knowledge_graph.h"
#include "grease/meta_path.h"
#include "grease/stats_index.h"
#include "oracle.h"

namespace fixture {

// The tiny-movies graph.
inline std::vector<oracle::Triple> MovieRelations() {
  return {{"Inception", "stars", "TomHardy"},
          {"Inception", "stars", "LeonardoDiCaprio"},
          {"Inception", "director", "ChristopherNolan"},
          {"Suburbicon", "stars", "MattDamon"},
          {"Suburbicon", "director", "GeorgeClooney"},
          {"OceansEleven", "stars", "MattDamon"},
          {"OceansEleven", "stars", "JuliaRoberts"},
          {"OceansEleven", "director", "StevenSoderbergh"},
          {"AStarIsBorn", "stars", "LadyGaga"},
          {"AStarIsBorn", "stars", "DaveChappelle"},
          {"AStarIsBorn", "stars", "BradleyCooper"},
          {"AStarIsBorn", "director", "BradleyCooper"},
          {"Suburbicon", "subsequentWork", "OceansEleven"}};
}

inline std::vector<oracle::Triple> MovieAttributes() {
  const std::vector<std::string> people = {
      "TomHardy",   "LeonardoDiCaprio", "ChristopherNolan", "MattDamon",     "GeorgeClooney",
      "JuliaRoberts", "StevenSoderbergh", "LadyGaga",       "DaveChappelle", "BradleyCooper"};
  std::vector<oracle::Triple> out;
  for (const auto& p : people) out.push_back({p, "type", "Person"});
  for (const char* f : {"Inception", "Suburbicon", "OceansEleven", "AStarIsBorn"}) {
    out.push_back({f, "type", "Film"});
  }
  for (const auto& p : people) {
    out.push_back({p, "gender", p == "LadyGaga" || p == "JuliaRoberts" ? "F" : "M"});
  }
  for (const auto& p : people) {
    out.push_back({p, "country", p == "TomHardy" || p == "ChristopherNolan" ? "UK" : "US"});
  }
  out.push_back({"Suburbicon", "genre", "Comedy"});
  out.push_back({"AStarIsBorn", "genre", "Drama"});
  return out;
}

inline grease::KnowledgeGraph LoadGraph(const std::vector<oracle::Triple>& relations,
                                        const std::vector<oracle::Triple>& attributes = {}) {
  std::istringstream rel(oracle::ToTsv(relations));
  std::istringstream attr(oracle::ToTsv(attributes));
  return grease::KnowledgeGraph::Load(rel, attr);
}

inline grease::KnowledgeGraph Movies() { return LoadGraph(MovieRelations(), MovieAttributes()); }

inline grease::MetaPath Mp(const grease::KnowledgeGraph& kg, const std::string& text) {
  return grease::ParseMetaPath(kg, text);
}

// Engine meta-path to oracle form.
inline oracle::Path ToOracle(const grease::KnowledgeGraph& kg, const grease::MetaPath& mp) {
  oracle::Path p;
  for (const auto& s : mp.steps) p.push_back({kg.RelationName(s.relation), s.inverted});
  return p;
}

inline grease::MetaPath FromOracle(const grease::KnowledgeGraph& kg, const oracle::Path& p) {
  grease::MetaPath mp;
  for (const auto& s : p) mp.steps.push_back({*kg.FindRelation(s.rel), s.inv});
  return mp;
}

}  // namespace fixture

#endif  // GREASE_TESTS_FIXTURE_H_
