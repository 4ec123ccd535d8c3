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

#include "grease/service.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>

#include "httplib.h"
#include "json.hpp"

namespace grease {
namespace {

using json = nlohmann::json;

constexpr size_t kDefaultLimit = 20;
constexpr size_t kMaxLimit = 100;

std::string Fold(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

HttpResponse Error(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return {status, extra.dump()};
}

// Carries an HTTP error out of request parsing.
struct RequestError {
  HttpResponse response;
};

EntityId Resolve(const KnowledgeGraph& kg, const json& label) {
  if (!label.is_string()) throw RequestError{Error(400, "entity labels must be strings")};
  const std::string& text = label.get_ref<const std::string&>();
  auto id = kg.FindEntity(text);
  if (!id) throw RequestError{Error(400, "unknown entity", {{"entity", text}})};
  return *id;
}

double NumberParam(const json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params[key];
  if (!v.is_number()) {
    throw RequestError{Error(422, "invalid params", {{"detail", std::string(key) + " must be a number"}})};
  }
  return v.get<double>();
}

int IntParam(const json& params, const char* key, int fallback) {
  if (!params.contains(key)) return fallback;
  const json& v = params[key];
  if (!v.is_number_integer()) {
    throw RequestError{Error(422, "invalid params", {{"detail", std::string(key) + " must be an integer"}})};
  }
  int64_t x = v.get<int64_t>();
  if (x < 1 || x > 1'000'000) {
    throw RequestError{Error(422, "invalid params", {{"detail", std::string(key) + " must be >= 1"}})};
  }
  return static_cast<int>(x);
}

SearchRequest ParseSearchRequest(const KnowledgeGraph& kg, std::string_view body) {
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded()) throw RequestError{Error(400, "invalid JSON")};
  if (!j.is_object()) throw RequestError{Error(400, "request body must be a JSON object")};
  if (!j.contains("query")) throw RequestError{Error(400, "missing query")};
  if (!j.contains("examples") || !j["examples"].is_array()) {
    throw RequestError{Error(400, "examples must be an array of [source, target] pairs")};
  }

  SearchRequest request;
  request.query = Resolve(kg, j["query"]);
  const json& examples = j["examples"];
  if (examples.empty()) throw RequestError{Error(400, "empty examples")};
  for (const json& pair : examples) {
    if (!pair.is_array() || pair.size() != 2) {
      throw RequestError{Error(400, "each example must be a [source, target] pair")};
    }
    request.examples.push_back({Resolve(kg, pair[0]), Resolve(kg, pair[1])});
  }

  ModelParams& p = request.params;
  if (j.contains("params")) {
    const json& params = j["params"];
    if (!params.is_object()) {
      throw RequestError{Error(422, "invalid params", {{"detail", "params must be an object"}})};
    }
    p.alpha_mp = NumberParam(params, "alpha_mp", p.alpha_mp);
    p.alpha_prop = NumberParam(params, "alpha_prop", p.alpha_prop);
    p.beta = NumberParam(params, "beta", p.beta);
    p.max_length = IntParam(params, "max_len", p.max_length);
    p.top_meta_paths = IntParam(params, "top_mp", p.top_meta_paths);
  }
  p.k = IntParam(j, "k", p.k);
  try {
    p.Validate();
  } catch (const InvalidArgument& e) {
    throw RequestError{Error(422, "invalid params", {{"detail", e.what()}})};
  }

  if (j.contains("variant")) {
    const json& v = j["variant"];
    std::optional<Variant> variant;
    if (v.is_string()) variant = ParseVariant(v.get_ref<const std::string&>());
    if (!variant) {
      throw RequestError{Error(422, "invalid params", {{"detail", "variant must be \"full\" or \"np\""}})};
    }
    request.variant = *variant;
  }
  return request;
}

json EdgesJson(const KnowledgeGraph& kg, std::span<const Adjacent> edges, size_t max_edges) {
  json out = json::array();
  for (size_t i = 0; i < edges.size() && i < max_edges; ++i) {
    out.push_back({{"relation", kg.RelationName(edges[i].step.relation)},
                   {"entity", kg.Label(edges[i].neighbor)}});
  }
  return out;
}

}  // namespace

std::string SearchResponseJson(const KnowledgeGraph& kg, const SearchResult& result,
                               const ModelParams& params, std::optional<int64_t> timing_ms) {
  json answers = json::array();
  for (const RankedAnswer& a : result.answers) {
    json contributions = json::array();
    for (const Contribution& c : a.contributions) {
      contributions.push_back({{"facet", c.facet},
                               {"kind", c.is_meta_path ? "meta_path" : "property"},
                               {"gamma", c.gamma},
                               {"weight", c.weight},
                               {"regularizer", c.regularizer},
                               {"value", c.value()}});
    }
    answers.push_back(
        {{"entity", kg.Label(a.entity)}, {"score", a.score}, {"contributions", contributions}});
  }
  json meta_paths = json::array();
  for (const WeightedFacet& f : result.meta_path_facets) {
    meta_paths.push_back({{"text", f.text},
                          {"weight", f.weight},
                          {"regularizer", Regularizer(f.meta_path(), params)}});
  }
  json properties = json::array();
  for (const WeightedFacet& f : result.property_facets) {
    properties.push_back(
        {{"attribute", f.property().name}, {"value", f.property().value}, {"weight", f.weight}});
  }
  json j;
  j["answers"] = std::move(answers);
  j["facets"] = {{"meta_paths", std::move(meta_paths)}, {"properties", std::move(properties)}};
  j["approximate"] = result.approximate;
  if (timing_ms) j["timing_ms"] = *timing_ms;
  return j.dump();
}

SearchService::SearchService(const KnowledgeGraph& kg, const StatsIndex* index,
                             ServiceConfig config)
    : kg_(kg), index_(index), config_(std::move(config)) {
  folded_.reserve(kg.num_entities());
  by_label_.reserve(kg.num_entities());
  for (EntityId v = 0; v < kg.num_entities(); ++v) {
    folded_.emplace_back(Fold(kg.Label(v)), v);
    by_label_.push_back(v);
  }
  std::sort(folded_.begin(), folded_.end());
  std::sort(by_label_.begin(), by_label_.end(),
            [&](EntityId a, EntityId b) { return kg.Label(a) < kg.Label(b); });
}

HttpResponse SearchService::Search(std::string_view body) const {
  const StatsIndex* index = index_.load();
  if (index == nullptr) return Error(503, "index not loaded");
  try {
    SearchRequest request = ParseSearchRequest(kg_, body);
    auto start = std::chrono::steady_clock::now();
    SearchResult result = grease::Search(kg_, *index, request);
    auto elapsed = std::chrono::steady_clock::now() - start;
    int64_t ms = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    return {200, SearchResponseJson(kg_, result, request.params, ms)};
  } catch (const RequestError& e) {
    return e.response;
  } catch (const InvalidArgument& e) {
    return Error(422, e.what());
  }
}

HttpResponse SearchService::Entities(std::string_view prefix,
                                     std::optional<std::string_view> limit_text) const {
  size_t limit = kDefaultLimit;
  if (limit_text) {
    int64_t n = 0;
    auto [ptr, ec] = std::from_chars(limit_text->data(), limit_text->data() + limit_text->size(), n);
    if (ec != std::errc() || ptr != limit_text->data() + limit_text->size() || n < 0) {
      return Error(400, "limit must be a non-negative integer");
    }
    limit = std::min<size_t>(static_cast<size_t>(n), kMaxLimit);
  }

  std::vector<EntityId> matches;
  if (prefix.empty()) {
    matches.assign(by_label_.begin(), by_label_.begin() + std::min(limit, by_label_.size()));
  } else {
    std::string key = Fold(prefix);
    auto it = std::lower_bound(folded_.begin(), folded_.end(), std::make_pair(key, EntityId{0}));
    for (; it != folded_.end() && it->first.compare(0, key.size(), key) == 0; ++it) {
      matches.push_back(it->second);
    }
    std::sort(matches.begin(), matches.end(),
              [&](EntityId a, EntityId b) { return kg_.Label(a) < kg_.Label(b); });
    if (matches.size() > limit) matches.resize(limit);
  }

  json out = json::array();
  for (EntityId v : matches) {
    std::vector<std::string> types = kg_.TypesOf(v);
    json type = types.empty() ? json(nullptr) : json(types.front());
    out.push_back({{"label", kg_.Label(v)}, {"type", type}});
  }
  return {200, out.dump()};
}

HttpResponse SearchService::Entity(std::string_view label) const {
  auto v = kg_.FindEntity(label);
  if (!v) return Error(404, "unknown entity", {{"entity", std::string(label)}});
  json properties = json::array();
  for (const Property& p : kg_.PropertiesOf(*v)) {
    properties.push_back({{"attribute", p.name}, {"value", p.value}});
  }
  auto out_edges = kg_.OutEdges(*v);
  auto in_edges = kg_.InEdges(*v);
  json j{{"label", kg_.Label(*v)},
         {"properties", std::move(properties)},
         {"out_edges", EdgesJson(kg_, out_edges, config_.max_edges)},
         {"out_edges_truncated", out_edges.size() > config_.max_edges},
         {"in_edges", EdgesJson(kg_, in_edges, config_.max_edges)},
         {"in_edges_truncated", in_edges.size() > config_.max_edges}};
  return {200, j.dump()};
}

HttpResponse SearchService::Health() const {
  json j{{"status", "ok"},
         {"kg", {{"entities", kg_.num_entities()}, {"edges", kg_.num_edges()}}},
         {"index_loaded", index_loaded()}};
  return {200, j.dump()};
}

struct HttpServer::Impl {
  httplib::Server server;
};

HttpServer::HttpServer(const SearchService& service)
    : impl_(std::make_unique<Impl>()) {
  httplib::Server& s = impl_->server;
  const SearchService* svc = &service;
  auto reply = [](httplib::Response& res, const HttpResponse& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };

  if (!service.config().cors_origin.empty()) {
    std::string origin = service.config().cors_origin;
    s.set_default_headers({{"Access-Control-Allow-Origin", origin},
                           {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
    s.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) {
      res.status = 204;
    });
  }
  s.Post("/api/search", [svc, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->Search(req.body));
  });
  s.Get("/api/entities", [svc, reply](const httplib::Request& req, httplib::Response& res) {
    std::optional<std::string> limit;
    if (req.has_param("limit")) limit = req.get_param_value("limit");
    std::string prefix = req.get_param_value("prefix");
    reply(res, svc->Entities(prefix, limit ? std::optional<std::string_view>(*limit) : std::nullopt));
  });
  s.Get(R"(/api/entity/(.+))", [svc, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, svc->Entity(req.matches[1].str()));
  });
  s.Get("/api/health", [svc, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, svc->Health());
  });
  s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (res.body.empty()) {
      res.set_content(json{{"error", httplib::status_message(res.status)}}.dump(),
                      "application/json");
    }
  });
}

HttpServer::~HttpServer() = default;

bool HttpServer::Listen(const std::string& host, int port) {
  return impl_->server.listen(host, port);
}

int HttpServer::BindToAnyPort(const std::string& host) {
  return impl_->server.bind_to_any_port(host);
}

bool HttpServer::ListenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpServer::WaitUntilReady() const { impl_->server.wait_until_ready(); }

void HttpServer::Stop() { impl_->server.stop(); }

}  // namespace grease
