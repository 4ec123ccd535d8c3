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

#include "grease/ntriples.h"

#include <gtest/gtest.h>

#include <sstream>

#include "grease/knowledge_graph.h"

namespace grease {
namespace {

struct Converted {
  std::string relations, attributes;
  NTriplesStats stats;
};

Converted Convert(const std::string& nt) {
  std::istringstream in(nt);
  std::ostringstream rel, attr;
  Converted c;
  c.stats = ConvertNTriples(in, rel, attr);
  c.relations = rel.str();
  c.attributes = attr.str();
  return c;
}

TEST(NTriplesTest, LocalNames) {
  EXPECT_EQ(LocalName("http://dbpedia.org/resource/Tom_Hardy"), "Tom_Hardy");
  EXPECT_EQ(LocalName("http://xmlns.com/foaf/0.1/#name"), "name");
  EXPECT_EQ(LocalName("urn:x"), "urn:x");
  EXPECT_EQ(LocalName("http://a/b/"), "http://a/b/");
}

TEST(NTriplesTest, RoutesTriples) {
  Converted c = Convert(
      "# comment\n"
      "<http://r/Inception> <http://o/starring> <http://r/Tom_Hardy> .\n"
      "<http://r/Inception> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://o/Film> .\n"
      "<http://r/Inception> <http://o/genre> \"Sci\\tFi\"@en .\n"
      "<http://r/Inception> <http://o/runtime> \"148\"^^<http://www.w3.org/2001/XMLSchema#int> .\n"
      "_:b1 <http://o/p> <http://r/X> .\n"
      "<http://r/X> <http://o/name> \"caf\\u00E9\\n\" .\r\n"
      "\n");
  EXPECT_EQ(c.relations, "Inception\tstarring\tTom_Hardy\n");
  EXPECT_EQ(c.attributes,
            "Inception\ttype\tFilm\nInception\tgenre\tSci Fi\nInception\truntime\t148\n"
            "X\tname\tcaf\xC3\xA9 \n");
  EXPECT_EQ(c.stats.relation_lines, 1u);
  EXPECT_EQ(c.stats.attribute_lines, 4u);
  EXPECT_EQ(c.stats.skipped_blank_nodes, 1u);

  std::istringstream rel(c.relations), attr(c.attributes);
  KnowledgeGraph kg = KnowledgeGraph::Load(rel, attr);
  EXPECT_EQ(kg.TypesOf(kg.EntityOrThrow("Inception")), std::vector<std::string>{"Film"});
}

TEST(NTriplesTest, MalformedLines) {
  for (const char* bad : {"<a> <b> <c>\n", "<a> <b> \"unterminated .\n", "\"lit\" <b> <c> .\n",
                          "<a> \"p\" <c> .\n", "<a> <b> <c> . extra\n", "<a> <b\n",
                          "<a> <b> \"x\\q\" .\n"}) {
    EXPECT_THROW(Convert(bad), LoadError) << bad;
  }
  try {
    Convert("<a> <b> <c> .\n<a> <b>\n");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

}  // namespace
}  // namespace grease
