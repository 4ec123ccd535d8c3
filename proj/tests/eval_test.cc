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

#include <gtest/gtest.h>

#include <sstream>

#include "fixture.h"

namespace grease {
namespace {

TEST(NdcgTest, KnownValues) {
  std::vector<std::string> mixed = {"a", "x", "b"};
  EXPECT_NEAR(NdcgAtK(mixed, {"a", "b"}, 3), (1 + 0.5) / (1 + 1 / std::log2(3.0)), 1e-12);
  EXPECT_NEAR(NdcgAtK(mixed, {"a", "b"}, 3), 0.9197, 1e-4);
  std::vector<std::string> perfect = {"a", "b"};
  EXPECT_DOUBLE_EQ(NdcgAtK(perfect, {"a", "b"}, 10), 1.0);
  std::vector<std::string> miss = {"x", "y"};
  EXPECT_DOUBLE_EQ(NdcgAtK(miss, {"a"}, 10), 0.0);
  EXPECT_DOUBLE_EQ(NdcgAtK({}, {"a"}, 10), 0.0);
  EXPECT_THROW(NdcgAtK(miss, {"a"}, 0), InvalidArgument);
}

TEST(NdcgTest, GoldBeyondCutoffIsIgnoredInIdeal) {
  std::vector<std::string> r = {"a"};
  EXPECT_DOUBLE_EQ(NdcgAtK(r, {"a", "b", "c"}, 1), 1.0);
}

std::vector<QueryInstance> MovieSuite() {
  return {
      {"costar", "TomHardy", {{"DaveChappelle", "LadyGaga"}, {"MattDamon", "JuliaRoberts"}},
       {"LeonardoDiCaprio"}, 10},
      {"costar", "LeonardoDiCaprio", {{"DaveChappelle", "LadyGaga"}, {"JuliaRoberts", "MattDamon"}},
       {"TomHardy"}, 10},
      {"director", "TomHardy", {{"MattDamon", "GeorgeClooney"}, {"JuliaRoberts", "StevenSoderbergh"}},
       {"ChristopherNolan"}, 10},
      {"director", "LadyGaga", {{"MattDamon", "GeorgeClooney"}, {"TomHardy", "ChristopherNolan"}},
       {"BradleyCooper"}, 10},
  };
}

TEST(RunBenchmarkTest, MovieSuite) {
  KnowledgeGraph kg = fixture::Movies();
  StatsIndex index = StatsIndex::Build(kg);
  BenchmarkReport report = RunBenchmark(kg, index, MovieSuite(), {}, Variant::kFull);
  ASSERT_EQ(report.instances.size(), 4u);
  EXPECT_EQ(report.num_failed, 0u);
  ASSERT_EQ(report.groups.size(), 2u);
  EXPECT_EQ(report.groups[0].group, "costar");
  EXPECT_EQ(report.groups[0].count, 2u);
  for (const InstanceResult& r : report.instances) {
    EXPECT_DOUBLE_EQ(r.ndcg, NdcgAtK(r.ranking, MovieSuite()[r.position].gold, 10));
  }
  EXPECT_DOUBLE_EQ(report.instances[0].ndcg, 1.0);
  EXPECT_DOUBLE_EQ(report.groups[0].mean_ndcg,
                   (report.instances[0].ndcg + report.instances[1].ndcg) / 2);
  EXPECT_DOUBLE_EQ(report.groups[1].mean_ndcg,
                   (report.instances[2].ndcg + report.instances[3].ndcg) / 2);
}

TEST(RunBenchmarkTest, EmptyAndFailedInstances) {
  KnowledgeGraph kg = fixture::Movies();
  StatsIndex index = StatsIndex::Build(kg);
  EXPECT_TRUE(RunBenchmark(kg, index, {}, {}, Variant::kFull).instances.empty());

  auto suite = MovieSuite();
  suite[1].query = "Nobody";
  BenchmarkReport report = RunBenchmark(kg, index, suite, {}, Variant::kFull);
  EXPECT_EQ(report.num_failed, 1u);
  EXPECT_TRUE(report.instances[1].failed);
  EXPECT_NE(report.instances[1].error.find("Nobody"), std::string::npos);
  EXPECT_EQ(report.groups[0].count, 1u);
}

TEST(RunBenchmarkTest, MeansIgnoreInstanceOrder) {
  KnowledgeGraph kg = fixture::Movies();
  StatsIndex index = StatsIndex::Build(kg);
  auto suite = MovieSuite();
  BenchmarkReport a = RunBenchmark(kg, index, suite, {}, Variant::kFull);
  std::reverse(suite.begin(), suite.end());
  BenchmarkReport b = RunBenchmark(kg, index, suite, {}, Variant::kFull);
  ASSERT_EQ(a.groups.size(), b.groups.size());
  for (size_t i = 0; i < a.groups.size(); ++i) {
    EXPECT_EQ(a.groups[i].mean_ndcg, b.groups[i].mean_ndcg);
  }
  EXPECT_DOUBLE_EQ(MeanNdcg(a, [](const std::string&) { return true; }),
                   MeanNdcg(b, [](const std::string&) { return true; }));
}

TEST(RunBenchmarkTest, JsonIsDeterministicWithoutTiming) {
  KnowledgeGraph kg = fixture::Movies();
  StatsIndex index = StatsIndex::Build(kg);
  auto run = [&] { return ReportJson(RunBenchmark(kg, index, MovieSuite(), {}, Variant::kNp), false); };
  std::string json = run();
  EXPECT_EQ(json, run());
  EXPECT_EQ(json.find("wall_ms"), std::string::npos);
  EXPECT_NE(ReportTable(RunBenchmark(kg, index, MovieSuite(), {}, Variant::kNp)).find("costar"),
            std::string::npos);
}

TEST(QueryInstancesTest, RoundTrip) {
  auto suite = MovieSuite();
  std::stringstream buf;
  WriteQueryInstances(buf, suite);
  EXPECT_EQ(ReadQueryInstances(buf), suite);
}

TEST(QueryInstancesTest, MalformedLines) {
  std::istringstream bad("\n{\"query\": \"A\"}\n");
  try {
    ReadQueryInstances(bad);
    FAIL() << "expected error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(":2:"), std::string::npos);
  }
  std::istringstream not_json("nope\n");
  EXPECT_THROW(ReadQueryInstances(not_json), std::runtime_error);
  std::istringstream empty_gold(R"({"query":"A","examples":[["a","b"]],"gold":[]})");
  EXPECT_THROW(ReadQueryInstances(empty_gold), std::runtime_error);
}

}  // namespace
}  // namespace grease
