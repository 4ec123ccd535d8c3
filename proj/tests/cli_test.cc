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

#include "cli.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixture.h"
#include "grease/service.h"
#include "json.hpp"

namespace grease::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("grease_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::ofstream(rel()) << oracle::ToTsv(fixture::MovieRelations());
    std::ofstream(attr()) << oracle::ToTsv(fixture::MovieAttributes());
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string rel() const { return (dir_ / "rel.tsv").string(); }
  std::string attr() const { return (dir_ / "attr.tsv").string(); }
  std::string path(const char* name) const { return (dir_ / name).string(); }

  int Exec(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::Run(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, SearchTable) {
  ASSERT_EQ(Exec({"index", "--kg", rel(), attr(), "-o", path("idx")}), kExitOk) << err_.str();
  ASSERT_EQ(Exec({"search", "--kg", rel(), attr(), "--index", path("idx"), "--query", "TomHardy",
                  "--example", "DaveChappelle:LadyGaga", "--example", "MattDamon:JuliaRoberts"}),
            kExitOk)
      << err_.str();
  std::istringstream lines(out_.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  EXPECT_NE(first.find("LeonardoDiCaprio"), std::string::npos);
  EXPECT_EQ(first.find_first_not_of(' '), first.find('1'));
}

TEST_F(CliTest, JsonMatchesServiceBody) {
  ASSERT_EQ(Exec({"search", "--kg", rel(), "--attributes", attr(), "--query", "TomHardy",
                  "--example-json", R"([["DaveChappelle","LadyGaga"],["MattDamon","JuliaRoberts"]])",
                  "--json"}),
            kExitOk)
      << err_.str();
  std::string cli = out_.str();

  KnowledgeGraph kg = fixture::Movies();
  StatsIndex index = StatsIndex::Build(kg);
  SearchService svc(kg, &index);
  auto body = nlohmann::json::parse(svc.Search(
      R"({"query":"TomHardy","examples":[["DaveChappelle","LadyGaga"],["MattDamon","JuliaRoberts"]]})")
                                        .body);
  body.erase("timing_ms");
  EXPECT_EQ(cli, body.dump() + "\n");
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Exec({}), kExitUsage);
  EXPECT_NE(err_.str().find("Usage"), std::string::npos);
  EXPECT_EQ(Exec({"search", "--kg", rel(), attr(), "--query", "TomHardy", "--example",
                  "DaveChappelle:LadyGaga", "--beta", "-1"}),
            kExitUsage);
  EXPECT_NE(err_.str().find("beta"), std::string::npos);
  EXPECT_EQ(Exec({"search", "--kg", rel(), attr(), "--query", "TomHardy"}), kExitUsage);
  EXPECT_EQ(Exec({"search", "--kg", rel(), attr(), "--query", "TomHardy", "--example", "a:b:c"}),
            kExitUsage);
  EXPECT_EQ(Exec({"search", "--kg", rel(), attr(), "--query", "TomHardy", "--example", "A:B",
                  "--variant", "other"}),
            kExitUsage);
  EXPECT_EQ(Exec({"bogus"}), kExitUsage);
  EXPECT_EQ(Exec({"search", "--help"}), kExitOk);
  EXPECT_NE(out_.str().find("--example"), std::string::npos);
}

TEST_F(CliTest, DataErrors) {
  EXPECT_EQ(Exec({"search", "--kg", rel(), attr(), "--query", "Nobody", "--example",
                  "DaveChappelle:LadyGaga"}),
            kExitData);
  EXPECT_NE(err_.str().find("Nobody"), std::string::npos);
  EXPECT_EQ(Exec({"index", "--kg", path("missing.tsv"), "-o", path("idx")}), kExitData);
  std::ofstream(path("junk.idx")) << "junk";
  EXPECT_EQ(Exec({"search", "--kg", rel(), attr(), "--index", path("junk.idx"), "--query",
                  "TomHardy", "--example", "DaveChappelle:LadyGaga"}),
            kExitData);
  EXPECT_NE(err_.str().find("not an index file"), std::string::npos);
}

TEST_F(CliTest, SynthAndEval) {
  ASSERT_EQ(Exec({"synth", "-o", path("bench"), "--entities", "300", "--instances", "3"}),
            kExitOk)
      << err_.str();
  std::string b = path("bench");
  ASSERT_EQ(Exec({"eval", "--kg", b + "/relations.tsv", b + "/attributes.tsv", "--queries",
                  b + "/queries.jsonl"}),
            kExitOk)
      << err_.str();
  auto report = nlohmann::json::parse(out_.str());
  EXPECT_EQ(report["instances"].size(), 15u);
  std::string first = out_.str();
  ASSERT_EQ(Exec({"eval", "--kg", b + "/relations.tsv", b + "/attributes.tsv", "--queries",
                  b + "/queries.jsonl"}),
            kExitOk);
  EXPECT_EQ(out_.str(), first);
  ASSERT_EQ(Exec({"eval", "--kg", b + "/relations.tsv", b + "/attributes.tsv", "--queries",
                  b + "/queries.jsonl", "--report", path("r.json"), "--variant", "np"}),
            kExitOk);
  EXPECT_NE(out_.str().find("variant np"), std::string::npos);
  EXPECT_TRUE(fs::exists(path("r.json")));
}

TEST_F(CliTest, ConvertNt) {
  std::ofstream(path("in.nt"))
      << "<http://x/A> <http://x/knows> <http://x/B> .\n"
      << "<http://x/A> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://x/Person> .\n";
  ASSERT_EQ(Exec({"convert-nt", "--relations-out", path("r.tsv"), "--attributes-out",
                  path("a.tsv"), path("in.nt")}),
            kExitOk)
      << err_.str();
  std::ifstream r(path("r.tsv"));
  std::string line;
  std::getline(r, line);
  EXPECT_EQ(line, "A\tknows\tB");
  std::ofstream(path("bad.nt")) << "<a> <b>\n";
  EXPECT_EQ(Exec({"convert-nt", "--relations-out", path("r.tsv"), "--attributes-out",
                  path("a.tsv"), path("bad.nt")}),
            kExitData);
}

}  // namespace
}  // namespace grease::cli
