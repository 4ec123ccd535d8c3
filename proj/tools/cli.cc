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

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "grease/eval.h"
#include "grease/knowledge_graph.h"
#include "grease/ntriples.h"
#include "grease/planted.h"
#include "grease/search.h"
#include "grease/service.h"
#include "grease/stats_index.h"
#include "json.hpp"

namespace grease::cli {
namespace {

// Bad flags or parameter values.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphFlags {
  std::vector<std::string> kg;
  std::string attributes;
  std::string type_attribute = "type";
  std::string index;
};

struct ParamFlags {
  ModelParams params;
  std::string variant = "full";
  std::optional<size_t> max_degree;
};

void AddGraphFlags(CLI::App* cmd, GraphFlags* g, bool with_index) {
  cmd->add_option("--kg", g->kg, "Relations TSV, optionally followed by the attributes TSV")
      ->required()
      ->expected(1, 2);
  cmd->add_option("--attributes", g->attributes, "Attributes TSV");
  cmd->add_option("--type-attribute", g->type_attribute, "Attribute holding entity types");
  if (with_index) cmd->add_option("--index", g->index, "Index file (built in memory if omitted)");
}

void AddParamFlags(CLI::App* cmd, ParamFlags* p) {
  cmd->add_option("--alpha-mp", p->params.alpha_mp, "Cap on instance path counts");
  cmd->add_option("--alpha-prop", p->params.alpha_prop, "Relevance of a matching property");
  cmd->add_option("--beta", p->params.beta, "Length decay of the regularizer");
  cmd->add_option("--max-len", p->params.max_length, "Maximum meta-path length");
  cmd->add_option("--top-mp", p->params.top_meta_paths, "Meta-paths used for candidates");
  cmd->add_option("--k", p->params.k, "Answers to return");
  cmd->add_option("--variant", p->variant, "full or np")->check(CLI::IsMember({"full", "np"}));
  cmd->add_option("--max-degree", p->max_degree, "Cap on edges expanded per node in path search");
}

std::string AttributesPath(const GraphFlags& g) {
  if (g.kg.size() == 2 && !g.attributes.empty()) {
    throw UsageError("attributes given both in --kg and --attributes");
  }
  return g.kg.size() == 2 ? g.kg[1] : g.attributes;
}

KnowledgeGraph LoadGraph(const GraphFlags& g, std::ostream& err) {
  LoadOptions options;
  options.type_attribute = g.type_attribute;
  KnowledgeGraph kg = KnowledgeGraph::LoadFiles(g.kg[0], AttributesPath(g), options);
  if (kg.skipped_self_loops() > 0) {
    err << "warning: skipped " << kg.skipped_self_loops() << " self-loop edge(s)\n";
  }
  return kg;
}

StatsIndex LoadOrBuildIndex(const GraphFlags& g, const KnowledgeGraph& kg) {
  if (g.index.empty()) return StatsIndex::Build(kg);
  StatsIndex index = StatsIndex::LoadFile(g.index);
  index.CheckCompatible(kg);
  return index;
}

void CheckParams(const ParamFlags& p) {
  try {
    p.params.Validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::ofstream OpenOut(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

int ConvertNt(const std::string& input, const std::string& rel_out, const std::string& attr_out,
              const std::string& type_attribute, std::ostream& out) {
  std::ifstream in(input);
  if (!in) throw std::runtime_error("cannot open " + input);
  std::ofstream rel = OpenOut(rel_out);
  std::ofstream attr = OpenOut(attr_out);
  NTriplesStats stats = ConvertNTriples(in, rel, attr, type_attribute);
  out << stats.relation_lines << " relation line(s), " << stats.attribute_lines
      << " attribute line(s), " << stats.skipped_blank_nodes << " blank-node triple(s) skipped\n";
  return kExitOk;
}

int Index(const GraphFlags& g, const std::string& path, std::ostream& out, std::ostream& err) {
  KnowledgeGraph kg = LoadGraph(g, err);
  StatsIndex index = StatsIndex::Build(kg);
  index.SaveFile(path);
  out << "indexed " << kg.num_entities() << " entities, " << kg.num_edges() << " edges, "
      << index.num_short_paths() << " short meta-paths, " << index.num_properties()
      << " properties\n";
  return kExitOk;
}

std::vector<std::pair<std::string, std::string>> ParseExamples(
    const std::vector<std::string>& pairs, const std::string& example_json) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const std::string& p : pairs) {
    size_t colon = p.find(':');
    if (colon == std::string::npos || p.find(':', colon + 1) != std::string::npos) {
      throw UsageError("--example expects source:target (use --example-json for labels with ':')");
    }
    out.emplace_back(p.substr(0, colon), p.substr(colon + 1));
  }
  if (!example_json.empty()) {
    nlohmann::json j = nlohmann::json::parse(example_json, nullptr, false);
    bool ok = j.is_array();
    if (ok) {
      for (const auto& pair : j) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
          ok = false;
          break;
        }
        out.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
      }
    }
    if (!ok) throw UsageError("--example-json expects [[\"source\", \"target\"], ...]");
  }
  if (out.empty()) throw UsageError("at least one --example is required");
  return out;
}

int SearchCommand(const GraphFlags& g, const ParamFlags& p, const std::string& query,
                  const std::vector<std::pair<std::string, std::string>>& examples, bool as_json,
                  std::ostream& out, std::ostream& err) {
  CheckParams(p);
  KnowledgeGraph kg = LoadGraph(g, err);
  StatsIndex index = LoadOrBuildIndex(g, kg);

  SearchRequest request;
  request.query = kg.EntityOrThrow(query);
  for (const auto& [s, t] : examples) {
    request.examples.push_back({kg.EntityOrThrow(s), kg.EntityOrThrow(t)});
  }
  request.params = p.params;
  request.variant = *ParseVariant(p.variant);
  request.max_degree_expansion = p.max_degree;
  SearchResult result = Search(kg, index, request);

  if (as_json) {
    out << SearchResponseJson(kg, result, request.params, std::nullopt) << '\n';
    return kExitOk;
  }
  size_t width = 6;
  for (const RankedAnswer& a : result.answers) width = std::max(width, kg.Label(a.entity).size());
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%4s  %-*s  %12s  %s\n", "rank", static_cast<int>(width),
                "entity", "score", "top facet");
  out << buf;
  for (size_t i = 0; i < result.answers.size(); ++i) {
    const RankedAnswer& a = result.answers[i];
    const Contribution* top = nullptr;
    for (const Contribution& c : a.contributions) {
      if (top == nullptr || c.value() > top->value()) top = &c;
    }
    std::snprintf(buf, sizeof(buf), "%4zu  %-*s  %12.6g  %s\n", i + 1, static_cast<int>(width),
                  kg.Label(a.entity).c_str(), a.score, top ? top->facet.c_str() : "-");
    out << buf;
  }
  if (result.approximate) out << "note: path search was degree-capped; results are approximate\n";
  return kExitOk;
}

int EvalCommand(const GraphFlags& g, const ParamFlags& p, const std::string& queries,
                const std::string& report_path, bool with_timing, std::ostream& out,
                std::ostream& err) {
  CheckParams(p);
  KnowledgeGraph kg = LoadGraph(g, err);
  StatsIndex index = LoadOrBuildIndex(g, kg);
  std::vector<QueryInstance> instances = ReadQueryInstancesFile(queries);
  BenchmarkReport report = RunBenchmark(kg, index, instances, p.params, *ParseVariant(p.variant));
  std::string json = ReportJson(report, with_timing);
  if (report_path.empty()) {
    out << json << '\n';
  } else {
    OpenOut(report_path) << json << '\n';
    out << ReportTable(report);
  }
  return kExitOk;
}

int SynthCommand(const PlantedSpec& spec, const std::string& dir, std::ostream& out) {
  PlantedDataset data = GeneratePlanted(spec);
  std::filesystem::create_directories(dir);
  std::filesystem::path base(dir);
  OpenOut((base / "relations.tsv").string()) << data.relations_tsv;
  OpenOut((base / "attributes.tsv").string()) << data.attributes_tsv;
  std::ofstream q = OpenOut((base / "queries.jsonl").string());
  WriteQueryInstances(q, data.instances);
  out << "wrote " << data.num_edges << " edges and " << data.instances.size()
      << " query instances to " << dir << '\n';
  return kExitOk;
}

int ServeCommand(const GraphFlags& g, const std::string& host, std::optional<int> port_flag,
                 const std::string& cors, std::ostream& out, std::ostream& err) {
  int port = 8080;
  if (port_flag) {
    port = *port_flag;
  } else if (const char* env = std::getenv("GREASE_PORT")) {
    try {
      size_t used = 0;
      port = std::stoi(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("GREASE_PORT is not a port number: ") + env);
    }
  }
  if (port < 0 || port > 65535) throw UsageError("port out of range");

  KnowledgeGraph kg = LoadGraph(g, err);
  ServiceConfig config;
  config.cors_origin = cors;
  SearchService service(kg, nullptr, config);
  HttpServer server(service);

  // Health answers while the index is still loading.
  std::optional<StatsIndex> index;
  std::exception_ptr failure;
  std::thread loader([&] {
    try {
      index.emplace(LoadOrBuildIndex(g, kg));
      service.set_index(&*index);
    } catch (...) {
      failure = std::current_exception();
      server.Stop();
    }
  });
  out << "serving " << kg.num_entities() << " entities on " << host << ':' << port << std::endl;
  bool ok = server.Listen(host, port);
  loader.join();
  if (failure) std::rethrow_exception(failure);
  if (!ok) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Example-driven entity search over knowledge graphs", "grease"};
  app.require_subcommand(1);

  std::string nt_input, nt_rel, nt_attr, nt_type = "type";
  CLI::App* convert = app.add_subcommand("convert-nt", "Convert N-Triples to TSV inputs");
  convert->add_option("input", nt_input, "N-Triples file")->required();
  convert->add_option("--relations-out", nt_rel, "Relations TSV to write")->required();
  convert->add_option("--attributes-out", nt_attr, "Attributes TSV to write")->required();
  convert->add_option("--type-attribute", nt_type, "Attribute name for rdf:type");

  GraphFlags index_graph;
  std::string index_out;
  CLI::App* index = app.add_subcommand("index", "Build and save the statistics index");
  AddGraphFlags(index, &index_graph, false);
  index->add_option("--out,-o", index_out, "Index file to write")->required();

  GraphFlags search_graph;
  ParamFlags search_params;
  std::string query, example_json;
  std::vector<std::string> examples;
  bool as_json = false;
  CLI::App* search = app.add_subcommand("search", "Rank entities related to a query");
  AddGraphFlags(search, &search_graph, true);
  AddParamFlags(search, &search_params);
  search->add_option("--query,-q", query, "Query entity label")->required();
  search->add_option("--example,-e", examples, "Example pair source:target (repeatable)")
      ->allow_extra_args(false);
  search->add_option("--example-json", example_json, "Example pairs as a JSON array of pairs");
  search->add_flag("--json", as_json, "Print the service response body");

  GraphFlags eval_graph;
  ParamFlags eval_params;
  std::string queries, report_path;
  bool with_timing = false;
  CLI::App* eval = app.add_subcommand("eval", "Score query instances with NDCG@k");
  AddGraphFlags(eval, &eval_graph, true);
  AddParamFlags(eval, &eval_params);
  eval->add_option("--queries", queries, "Query instances (JSON lines)")->required();
  eval->add_option("--report", report_path, "Write the JSON report here and print a table");
  eval->add_flag("--timing", with_timing, "Include wall-clock times in the report");

  PlantedSpec spec;
  std::string synth_dir;
  CLI::App* synth = app.add_subcommand("synth", "Generate a planted benchmark");
  synth->add_option("--out-dir,-o", synth_dir, "Output directory")->required();
  synth->add_option("--seed", spec.seed, "Random seed");
  synth->add_option("--entities", spec.entity_count, "Entity count");
  synth->add_option("--noise-relations", spec.noise_relation_types, "Noise relation types");
  synth->add_option("--noise-rate", spec.noise_edge_rate, "Noise edges per schema edge");
  synth->add_option("--instances", spec.instances_per_group, "Instances per semantics");
  synth->add_option("--examples", spec.examples_per_instance, "Example pairs per instance");
  synth->add_option("--k", spec.k, "k recorded in each instance");

  GraphFlags serve_graph;
  std::string host = "127.0.0.1", cors = "*";
  std::optional<int> port;
  CLI::App* serve = app.add_subcommand("serve", "Serve the HTTP JSON API");
  AddGraphFlags(serve, &serve_graph, true);
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--port", port, "Port (default $GREASE_PORT or 8080)");
  serve->add_option("--cors-origin", cors, "Allowed CORS origin; empty disables CORS");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (args.empty()) err << app.help();
    return kExitUsage;
  }

  try {
    if (*convert) return ConvertNt(nt_input, nt_rel, nt_attr, nt_type, out);
    if (*index) return Index(index_graph, index_out, out, err);
    if (*search) {
      return SearchCommand(search_graph, search_params, query,
                           ParseExamples(examples, example_json), as_json, out, err);
    }
    if (*eval) {
      return EvalCommand(eval_graph, eval_params, queries, report_path, with_timing, out, err);
    }
    if (*synth) return SynthCommand(spec, synth_dir, out);
    if (*serve) return ServeCommand(serve_graph, host, port, cors, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace grease::cli
