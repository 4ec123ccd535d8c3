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

#include "grease/planted.h"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "grease/knowledge_graph.h"
#include "grease/meta_path.h"
#include "grease/path_engine.h"

namespace grease {
namespace {

// mt19937_64 output is fully specified by the standard; the helpers below
// avoid the implementation-defined std distributions so datasets are stable
// across standard libraries.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  size_t Uniform(size_t n) {
    return static_cast<size_t>((static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }
  bool Bernoulli(double p) {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
  }
  template <typename T>
  const T& Pick(const std::vector<T>& v) { return v[Uniform(v.size())]; }
  template <typename T>
  void Shuffle(std::vector<T>* v) {
    for (size_t i = v->size(); i > 1; --i) std::swap((*v)[i - 1], (*v)[Uniform(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

const std::array<const char*, 6> kSchemaRelations = {"worksFor", "actedIn",   "director",
                                                     "livesIn",  "locatedIn", "memberOf"};
const std::array<const char*, 6> kCountries = {"US", "UK", "FR", "DE", "JP", "BR"};
const std::array<const char*, 6> kGenres = {"Drama", "Comedy", "Action",
                                            "Horror", "Documentary", "Animation"};
const std::array<const char*, 5> kIndustries = {"Finance", "Retail", "Energy", "Media", "Health"};
const std::array<const char*, 20> kOccupations = {
    "Accountant", "Architect", "Baker",     "Carpenter", "Chemist",   "Dentist", "Designer",
    "Economist",  "Farmer",    "Historian", "Journalist", "Lawyer",   "Librarian", "Musician",
    "Nurse",      "Painter",   "Pilot",     "Teacher",   "Translator", "Writer"};

constexpr double kEngineerRate = 0.08;
constexpr double kAwardRate = 0.06;

std::string MakeLabel(const std::string& prefix, size_t i, size_t count) {
  std::string digits = std::to_string(i);
  std::string width = std::to_string(count);
  return prefix + "_" + std::string(width.size() - std::min(width.size(), digits.size()), '0') +
         digits;
}

struct Builder {
  std::vector<std::string> labels;
  std::vector<std::string> relation_names;
  std::vector<std::array<uint32_t, 3>> edges;  // subject, relation, object
  std::set<std::array<uint32_t, 3>> edge_set;
  std::vector<std::map<std::string, std::string>> attributes;

  uint32_t AddEntities(const std::string& prefix, size_t count, const std::string& type) {
    uint32_t first = static_cast<uint32_t>(labels.size());
    for (size_t i = 0; i < count; ++i) {
      labels.push_back(MakeLabel(prefix, i + 1, count));
      attributes.push_back({{"type", type}});
    }
    return first;
  }
  void AddEdge(uint32_t s, uint32_t r, uint32_t o) {
    if (s == o) return;
    std::array<uint32_t, 3> e{s, r, o};
    if (edge_set.insert(e).second) edges.push_back(e);
  }
};

// Acyclic answers of one semantics from q, by depth-first enumeration over
// per-entity sorted (step code, neighbor) lists.
class PlantedOracle {
 public:
  PlantedOracle(const Builder& b) : adj_(b.labels.size()), attrs_(b.attributes) {
    for (const auto& e : b.edges) {
      adj_[e[0]].emplace_back(e[1] * 2, e[2]);
      adj_[e[2]].emplace_back(e[1] * 2 + 1, e[0]);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::vector<uint32_t> Answers(uint32_t q, const std::vector<uint32_t>& codes,
                                const std::optional<Property>& prop) const {
    std::set<uint32_t> found;
    std::vector<uint32_t> path{q};
    Walk(codes, &path, &found);
    std::vector<uint32_t> out;
    for (uint32_t v : found) {
      if (prop) {
        auto it = attrs_[v].find(prop->name);
        if (it == attrs_[v].end() || it->second != prop->value) continue;
      }
      out.push_back(v);
    }
    return out;
  }

 private:
  void Walk(const std::vector<uint32_t>& codes, std::vector<uint32_t>* path,
            std::set<uint32_t>* found) const {
    size_t depth = path->size() - 1;
    if (depth == codes.size()) {
      found->insert(path->back());
      return;
    }
    const auto& list = adj_[path->back()];
    auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(codes[depth], 0u));
    for (; it != list.end() && it->first == codes[depth]; ++it) {
      if (std::find(path->begin(), path->end(), it->second) != path->end()) continue;
      path->push_back(it->second);
      Walk(codes, path, found);
      path->pop_back();
    }
  }

  std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adj_;
  const std::vector<std::map<std::string, std::string>>& attrs_;
};

void CheckSpec(const PlantedSpec& spec) {
  if (spec.entity_count < 100) throw InvalidArgument("entity_count must be >= 100");
  if (spec.instances_per_group == 0) throw InvalidArgument("instances_per_group must be >= 1");
  if (spec.examples_per_instance == 0) {
    throw InvalidArgument("examples_per_instance must be >= 1");
  }
  if (spec.k < 1) throw InvalidArgument("k must be >= 1");
  if (!(spec.noise_edge_rate >= 0)) throw InvalidArgument("noise_edge_rate must be >= 0");
  if (spec.noise_edge_rate > 0 && spec.noise_relation_types == 0) {
    throw InvalidArgument("noise edges need at least one noise relation type");
  }
  for (const PlantedSemantics& s : spec.semantics) {
    if (s.steps.empty()) throw InvalidArgument("semantics '" + s.name + "' has no steps");
    if (s.steps.size() + 1 > spec.entity_count) {
      throw InvalidArgument("semantics '" + s.name + "' is longer than the entity budget");
    }
    for (const auto& [rel, inverted] : s.steps) {
      if (std::find_if(kSchemaRelations.begin(), kSchemaRelations.end(),
                       [&](const char* r) { return rel == r; }) == kSchemaRelations.end()) {
        throw InvalidArgument("semantics '" + s.name + "' uses unknown relation '" + rel + "'");
      }
    }
  }
}

}  // namespace

std::vector<PlantedSemantics> DefaultPlantedSemantics() {
  return {
      {"colleague", {{"worksFor", false}, {"worksFor", true}}, std::nullopt},
      {"costar", {{"actedIn", false}, {"actedIn", true}}, std::nullopt},
      {"directed_by", {{"actedIn", false}, {"director", false}}, std::nullopt},
      {"engineer_colleague",
       {{"worksFor", false}, {"worksFor", true}},
       Property{"occupation", "Engineer"}},
      {"awarded_costar",
       {{"actedIn", false}, {"actedIn", true}},
       Property{"award", "GoldenGlobe"}},
  };
}

PlantedDataset GeneratePlanted(const PlantedSpec& spec) {
  CheckSpec(spec);
  Rng rng(spec.seed);
  const size_t n = spec.entity_count;

  const size_t num_persons = n * 65 / 100;
  const size_t num_orgs = std::max<size_t>(2, n * 6 / 100);
  const size_t num_films = std::max<size_t>(2, n * 15 / 100);
  const size_t num_cities = std::max<size_t>(2, n * 4 / 100);
  const size_t num_bands = n - num_persons - num_orgs - num_films - num_cities;

  Builder b;
  for (const char* r : kSchemaRelations) b.relation_names.emplace_back(r);
  for (size_t i = 0; i < spec.noise_relation_types; ++i) {
    b.relation_names.push_back("noise" + std::to_string(i));
  }
  enum : uint32_t { kWorksFor, kActedIn, kDirector, kLivesIn, kLocatedIn, kMemberOf };

  const uint32_t persons = b.AddEntities("Person", num_persons, "Person");
  const uint32_t orgs = b.AddEntities("Org", num_orgs, "Organization");
  const uint32_t films = b.AddEntities("Film", num_films, "Film");
  const uint32_t cities = b.AddEntities("City", num_cities, "City");
  const uint32_t bands = b.AddEntities("Band", num_bands, "Band");

  std::vector<uint32_t> directors;
  for (size_t i = 0; i < num_persons; ++i) {
    uint32_t p = persons + static_cast<uint32_t>(i);
    auto& a = b.attributes[p];
    a["gender"] = rng.Bernoulli(0.5) ? "F" : "M";
    a["country"] = kCountries[rng.Uniform(kCountries.size())];
    a["occupation"] =
        rng.Bernoulli(kEngineerRate) ? "Engineer" : kOccupations[rng.Uniform(kOccupations.size())];
    if (rng.Bernoulli(kAwardRate)) a["award"] = "GoldenGlobe";

    b.AddEdge(p, kLivesIn, cities + static_cast<uint32_t>(rng.Uniform(num_cities)));
    if (rng.Bernoulli(0.05)) {
      directors.push_back(p);
      continue;
    }
    if (rng.Bernoulli(0.8)) b.AddEdge(p, kWorksFor, orgs + static_cast<uint32_t>(rng.Uniform(num_orgs)));
    if (rng.Bernoulli(0.4)) {
      size_t roles = rng.Bernoulli(0.4) ? 2 : 1;
      for (size_t j = 0; j < roles; ++j) {
        b.AddEdge(p, kActedIn, films + static_cast<uint32_t>(rng.Uniform(num_films)));
      }
    }
    if (rng.Bernoulli(0.1)) b.AddEdge(p, kMemberOf, bands + static_cast<uint32_t>(rng.Uniform(num_bands)));
  }
  if (directors.empty()) directors.push_back(persons);
  for (size_t i = 0; i < num_films; ++i) {
    uint32_t f = films + static_cast<uint32_t>(i);
    b.attributes[f]["genre"] = kGenres[rng.Uniform(kGenres.size())];
    b.AddEdge(f, kDirector, rng.Pick(directors));
  }
  for (size_t i = 0; i < num_orgs; ++i) {
    uint32_t o = orgs + static_cast<uint32_t>(i);
    b.attributes[o]["industry"] = kIndustries[rng.Uniform(kIndustries.size())];
    b.AddEdge(o, kLocatedIn, cities + static_cast<uint32_t>(rng.Uniform(num_cities)));
  }

  const size_t noise_edges = static_cast<size_t>(spec.noise_edge_rate *
                                                 static_cast<double>(b.edges.size()));
  for (size_t i = 0; i < noise_edges; ++i) {
    uint32_t r = static_cast<uint32_t>(kSchemaRelations.size() +
                                       rng.Uniform(spec.noise_relation_types));
    b.AddEdge(static_cast<uint32_t>(rng.Uniform(n)), r, static_cast<uint32_t>(rng.Uniform(n)));
  }

  PlantedDataset out;
  out.num_edges = b.edges.size();
  {
    std::ostringstream rel, attr;
    for (const auto& e : b.edges) {
      rel << b.labels[e[0]] << '\t' << b.relation_names[e[1]] << '\t' << b.labels[e[2]] << '\n';
    }
    for (size_t v = 0; v < b.labels.size(); ++v) {
      for (const auto& [name, value] : b.attributes[v]) {
        attr << b.labels[v] << '\t' << name << '\t' << value << '\n';
      }
    }
    out.relations_tsv = rel.str();
    out.attributes_tsv = attr.str();
  }

  PlantedOracle oracle(b);
  std::vector<uint32_t> all(n);
  for (uint32_t v = 0; v < n; ++v) all[v] = v;

  for (const PlantedSemantics& sem : spec.semantics) {
    std::vector<uint32_t> codes;
    for (const auto& [rel, inverted] : sem.steps) {
      uint32_t r = static_cast<uint32_t>(
          std::find(b.relation_names.begin(), b.relation_names.end(), rel) -
          b.relation_names.begin());
      codes.push_back(r * 2 + (inverted ? 1 : 0));
    }
    std::vector<std::vector<uint32_t>> answers(n);
    std::vector<uint32_t> eligible;
    for (uint32_t v = 0; v < n; ++v) {
      answers[v] = oracle.Answers(v, codes, sem.property);
      if (!answers[v].empty()) eligible.push_back(v);
    }
    if (eligible.size() < spec.instances_per_group || eligible.size() < 2) {
      throw InvalidArgument("semantics '" + sem.name + "' is unsatisfiable: only " +
                            std::to_string(eligible.size()) + " entities have answers");
    }

    std::vector<uint32_t> queries = eligible;
    rng.Shuffle(&queries);
    queries.resize(spec.instances_per_group);
    for (uint32_t q : queries) {
      QueryInstance inst;
      inst.group = sem.name;
      inst.query = b.labels[q];
      inst.k = spec.k;
      for (uint32_t v : answers[q]) inst.gold.insert(b.labels[v]);
      std::set<std::pair<uint32_t, uint32_t>> used;
      for (size_t attempt = 0;
           inst.examples.size() < spec.examples_per_instance && attempt < 10000; ++attempt) {
        uint32_t s = rng.Pick(eligible);
        uint32_t t = rng.Pick(answers[s]);
        if (s == q || t == q || !used.insert({s, t}).second) continue;
        inst.examples.emplace_back(b.labels[s], b.labels[t]);
      }
      if (inst.examples.size() < spec.examples_per_instance) {
        throw InvalidArgument("semantics '" + sem.name + "' is unsatisfiable: too few examples");
      }
      out.instances.push_back(std::move(inst));
    }
  }

  // Re-derive every gold set on the graph as it will be loaded.
  std::istringstream rel_in(out.relations_tsv), attr_in(out.attributes_tsv);
  KnowledgeGraph kg = KnowledgeGraph::Load(rel_in, attr_in);
  std::map<std::string, const PlantedSemantics*> by_name;
  for (const PlantedSemantics& s : spec.semantics) by_name[s.name] = &s;
  for (const QueryInstance& inst : out.instances) {
    const PlantedSemantics& sem = *by_name.at(inst.group);
    MetaPath mp;
    for (const auto& [rel, inverted] : sem.steps) {
      auto r = kg.FindRelation(rel);
      if (!r) throw std::logic_error("planted relation missing from graph: " + rel);
      mp.steps.push_back({*r, inverted});
    }
    std::optional<PropertyId> prop;
    if (sem.property) prop = kg.FindProperty(*sem.property);
    std::set<std::string> gold;
    for (const auto& [v, count] : ReachableSet(kg, kg.EntityOrThrow(inst.query), mp, 1)) {
      if (sem.property && (!prop || !kg.HasProperty(v, *prop))) continue;
      gold.insert(kg.Label(v));
    }
    if (gold != inst.gold) {
      throw std::logic_error("planted gold mismatch for query " + inst.query);
    }
  }
  return out;
}

}  // namespace grease
