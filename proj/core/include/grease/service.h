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

#ifndef GREASE_SERVICE_H_
#define GREASE_SERVICE_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grease/knowledge_graph.h"
#include "grease/search.h"
#include "grease/stats_index.h"

namespace grease {

struct ServiceConfig {
  // Value of Access-Control-Allow-Origin; empty disables CORS headers.
  std::string cors_origin = "*";
  // Adjacency lists in /api/entity are cut at this length.
  size_t max_edges = 200;
};

struct HttpResponse {
  int status = 200;
  std::string body;  // JSON
};

// Serializes a search result as the /api/search response body. timing_ms is
// omitted when not given; everything else is a pure function of the input.
std::string SearchResponseJson(const KnowledgeGraph& kg, const SearchResult& result,
                               const ModelParams& params, std::optional<int64_t> timing_ms);

// Request handling over a shared, immutable graph. Handlers are const and
// keep no per-request state, so one instance serves concurrent requests.
class SearchService {
 public:
  SearchService(const KnowledgeGraph& kg, const StatsIndex* index, ServiceConfig config = {});

  const ServiceConfig& config() const { return config_; }
  // Attaches (or replaces) the index once it is available. The index must
  // outlive the service.
  void set_index(const StatsIndex* index) { index_.store(index); }
  bool index_loaded() const { return index_.load() != nullptr; }

  // POST /api/search
  HttpResponse Search(std::string_view body) const;
  // GET /api/entities?prefix=&limit=
  HttpResponse Entities(std::string_view prefix, std::optional<std::string_view> limit) const;
  // GET /api/entity/{label}
  HttpResponse Entity(std::string_view label) const;
  // GET /api/health
  HttpResponse Health() const;

 private:
  const KnowledgeGraph& kg_;
  std::atomic<const StatsIndex*> index_;
  ServiceConfig config_;
  // (lower-cased label, id), sorted.
  std::vector<std::pair<std::string, EntityId>> folded_;
  // Ids sorted by label.
  std::vector<EntityId> by_label_;
};

// HTTP/1.1 binding of a SearchService.
class HttpServer {
 public:
  explicit HttpServer(const SearchService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocks until Stop(). Returns false if the address cannot be bound.
  bool Listen(const std::string& host, int port);
  // Binds to an ephemeral port and returns it, or -1.
  int BindToAnyPort(const std::string& host);
  // Serves on a port taken by BindToAnyPort. Blocks until Stop().
  bool ListenAfterBind();
  void WaitUntilReady() const;
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace grease

#endif  // GREASE_SERVICE_H_
