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

#include "grease/meta_path.h"

#include <gtest/gtest.h>

#include "fixture.h"

namespace grease {
namespace {

TEST(MetaPathTest, TextRoundTrip) {
  KnowledgeGraph kg = fixture::Movies();
  for (const char* text : {"stars", "stars^-1/director", "stars^-1/subsequentWork/stars"}) {
    EXPECT_EQ(MetaPathText(kg, ParseMetaPath(kg, text)), text);
  }
}

TEST(MetaPathTest, ParseErrors) {
  KnowledgeGraph kg = fixture::Movies();
  EXPECT_THROW(ParseMetaPath(kg, ""), InvalidArgument);
  EXPECT_THROW(ParseMetaPath(kg, "stars//stars"), InvalidArgument);
  EXPECT_THROW(ParseMetaPath(kg, "actedIn"), InvalidArgument);
}

TEST(MetaPathTest, Reversed) {
  KnowledgeGraph kg = fixture::Movies();
  MetaPath mp = ParseMetaPath(kg, "stars^-1/director");
  EXPECT_EQ(MetaPathText(kg, mp.Reversed()), "director^-1/stars");
  EXPECT_EQ(mp.Reversed().Reversed(), mp);
}

}  // namespace
}  // namespace grease
