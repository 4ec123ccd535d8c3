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

#include "grease/stats_index.h"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <tuple>

namespace grease {
namespace {

constexpr char kMagic[] = "GRSIDX1";
constexpr size_t kMagicSize = sizeof(kMagic) - 1;

// Neighbors of one entity along one step: a contiguous run of Adjacent
// entries sorted by neighbor id.
struct StepGroup {
  RelationStep step;
  std::span<const Adjacent> edges;
};

void CollectGroups(std::span<const Adjacent> adj, std::vector<StepGroup>* groups) {
  size_t i = 0;
  while (i < adj.size()) {
    size_t j = i;
    while (j < adj.size() && adj[j].step == adj[i].step) ++j;
    groups->push_back({adj[i].step, adj.subspan(i, j - i)});
    i = j;
  }
}

size_t IntersectionSize(std::span<const Adjacent> a, std::span<const Adjacent> b) {
  size_t n = 0;
  auto x = a.begin();
  auto y = b.begin();
  while (x != a.end() && y != b.end()) {
    if (x->neighbor < y->neighbor) {
      ++x;
    } else if (y->neighbor < x->neighbor) {
      ++y;
    } else {
      ++n;
      ++x;
      ++y;
    }
  }
  return n;
}

// Little-endian primitive writer / reader.
class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void Bytes(const void* data, size_t n) { out_.write(static_cast<const char*>(data), n); }
  template <typename T>
  void Int(T value) {
    using U = std::make_unsigned_t<T>;
    U u = static_cast<U>(value);
    unsigned char buf[sizeof(T)];
    for (size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(u >> (8 * i));
    Bytes(buf, sizeof(T));
  }
  void String(const std::string& s) {
    Int<uint32_t>(static_cast<uint32_t>(s.size()));
    Bytes(s.data(), s.size());
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  void Bytes(void* data, size_t n) {
    in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
    if (static_cast<size_t>(in_.gcount()) != n) {
      throw IndexFormatError(IndexFormatError::Kind::kTruncated, "truncated index file");
    }
  }
  template <typename T>
  T Int() {
    unsigned char buf[sizeof(T)];
    Bytes(buf, sizeof(T));
    std::make_unsigned_t<T> u = 0;
    for (size_t i = 0; i < sizeof(T); ++i) {
      u |= static_cast<std::make_unsigned_t<T>>(buf[i]) << (8 * i);
    }
    return static_cast<T>(u);
  }
  std::string String() {
    uint32_t n = Int<uint32_t>();
    std::string s;
    // Read in bounded chunks so a corrupt length cannot force a huge allocation.
    constexpr size_t kChunk = 1 << 16;
    while (s.size() < n) {
      size_t take = std::min<size_t>(kChunk, n - s.size());
      size_t old = s.size();
      s.resize(old + take);
      Bytes(s.data() + old, take);
    }
    return s;
  }

 private:
  std::istream& in_;
};

[[noreturn]] void Corrupt(const std::string& what) {
  throw IndexFormatError(IndexFormatError::Kind::kCorrupt, "corrupt index file: " + what);
}

}  // namespace

uint64_t StatsIndex::Key(RelationStep first) { return uint64_t{first.Code()} + 1; }

uint64_t StatsIndex::Key(RelationStep first, RelationStep second) {
  return ((uint64_t{first.Code()} + 1) << 32) | (uint64_t{second.Code()} + 1);
}

StatsIndex StatsIndex::Build(const KnowledgeGraph& kg) {
  StatsIndex index;
  const size_t n = kg.num_entities();
  index.entity_total_ = n;
  index.relation_names_ = kg.relation_names();

  std::vector<StepGroup> groups;
  for (EntityId v = 0; v < n; ++v) {
    for (const Adjacent& a : kg.OutEdges(v)) {
      ++index.short_counts_[Key(a.step)];
      ++index.short_counts_[Key(a.step.Invert())];
    }

    // Paths u -s1-> v -s2-> w with v in the middle. Groups are keyed by the
    // step taken from v, so the first hop is the inverse of a group's step.
    // Self-loops are excluded at load, so only u == w must be discounted.
    groups.clear();
    CollectGroups(kg.OutEdges(v), &groups);
    CollectGroups(kg.InEdges(v), &groups);
    for (const StepGroup& g1 : groups) {
      for (const StepGroup& g2 : groups) {
        uint64_t all = uint64_t{g1.edges.size()} * g2.edges.size();
        uint64_t cyclic = &g1 == &g2 ? g1.edges.size() : IntersectionSize(g1.edges, g2.edges);
        if (all > cyclic) index.short_counts_[Key(g1.step.Invert(), g2.step)] += all - cyclic;
      }
    }
  }

  std::vector<uint64_t> extents(kg.num_properties(), 0);
  for (EntityId v = 0; v < n; ++v) {
    for (PropertyId p : kg.PropertyIds(v)) ++extents[p];
  }
  for (PropertyId p = 0; p < extents.size(); ++p) {
    if (extents[p] > 0) index.property_extents_.emplace(kg.GetProperty(p), extents[p]);
  }

  std::vector<std::vector<std::string>> types(n);
  for (EntityId v = 0; v < n; ++v) {
    types[v] = kg.TypesOf(v);
    for (const std::string& t : types[v]) ++index.type_extents_[t];
  }
  for (const auto& [name, count] : index.type_extents_) index.type_names_.push_back(name);
  index.entity_type_.assign(n, -1);
  for (EntityId v = 0; v < n; ++v) {
    const std::string* best = nullptr;
    for (const std::string& t : types[v]) {
      // types[v] is sorted, so strict < keeps the lexicographically first on ties.
      if (best == nullptr || index.type_extents_.at(t) < index.type_extents_.at(*best)) {
        best = &t;
      }
    }
    if (best != nullptr) {
      auto it = std::lower_bound(index.type_names_.begin(), index.type_names_.end(), *best);
      index.entity_type_[v] = static_cast<int32_t>(it - index.type_names_.begin());
    }
  }
  return index;
}

uint64_t StatsIndex::PathCount(std::span<const RelationStep> key) const {
  if (key.size() == 1) return EdgeCount(key[0]);
  if (key.size() == 2) return PairCount(key[0], key[1]);
  if (key.empty()) throw InvalidArgument("empty meta-path");
  throw InvalidArgument("use apc");
}

uint64_t StatsIndex::EdgeCount(RelationStep step) const {
  auto it = short_counts_.find(Key(step));
  return it == short_counts_.end() ? 0 : it->second;
}

uint64_t StatsIndex::PairCount(RelationStep first, RelationStep second) const {
  auto it = short_counts_.find(Key(first, second));
  return it == short_counts_.end() ? 0 : it->second;
}

uint64_t StatsIndex::PropertyExtent(const Property& p) const {
  auto it = property_extents_.find(p);
  return it == property_extents_.end() ? 0 : it->second;
}

uint64_t StatsIndex::TypeExtent(const std::string& type) const {
  auto it = type_extents_.find(type);
  return it == type_extents_.end() ? 0 : it->second;
}

std::optional<std::string> StatsIndex::MostSpecificType(EntityId v) const {
  if (v >= entity_type_.size() || entity_type_[v] < 0) return std::nullopt;
  return type_names_[entity_type_[v]];
}

uint64_t StatsIndex::SameTypeExtent(EntityId v) const {
  if (v >= entity_type_.size() || entity_type_[v] < 0) return entity_total_;
  return type_extents_.at(type_names_[entity_type_[v]]);
}

void StatsIndex::CheckCompatible(const KnowledgeGraph& kg) const {
  if (kg.num_entities() != entity_total_ || kg.relation_names() != relation_names_) {
    throw IndexFormatError(IndexFormatError::Kind::kGraphMismatch,
                           "index does not match graph (" + std::to_string(entity_total_) +
                               " indexed entities, graph has " +
                               std::to_string(kg.num_entities()) + ")");
  }
}

// Layout (all integers little-endian):
//   magic "GRSIDX1", u32 version
//   string table:   u32 n, n x (u32 len, bytes)           sorted, unique
//   header:         u64 |V|, u32 n, n x u32 relation name
//   short paths:    u64 n, n x (u8 len, len x u32 step code, u64 count)
//   property ext.:  u64 n, n x (u32 name, u32 value, u64 count)
//   type extents:   u32 n, n x (u32 name, u64 count)
//   entity types:   u64 n, n x i32 (index into type extents, -1 if none)
void StatsIndex::Save(std::ostream& out) const {
  std::vector<std::string> strings = relation_names_;
  for (const auto& [p, count] : property_extents_) {
    strings.push_back(p.name);
    strings.push_back(p.value);
  }
  for (const std::string& t : type_names_) strings.push_back(t);
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());
  auto string_id = [&](const std::string& s) {
    return static_cast<uint32_t>(std::lower_bound(strings.begin(), strings.end(), s) -
                                 strings.begin());
  };

  Writer w(out);
  w.Bytes(kMagic, kMagicSize);
  w.Int<uint32_t>(kFormatVersion);

  w.Int<uint32_t>(static_cast<uint32_t>(strings.size()));
  for (const std::string& s : strings) w.String(s);

  w.Int<uint64_t>(entity_total_);
  w.Int<uint32_t>(static_cast<uint32_t>(relation_names_.size()));
  for (const std::string& r : relation_names_) w.Int<uint32_t>(string_id(r));

  std::vector<std::pair<uint64_t, uint64_t>> counts(short_counts_.begin(), short_counts_.end());
  std::sort(counts.begin(), counts.end());
  w.Int<uint64_t>(counts.size());
  for (const auto& [key, count] : counts) {
    uint32_t hi = static_cast<uint32_t>(key >> 32);
    uint32_t lo = static_cast<uint32_t>(key & 0xffffffffu);
    if (hi == 0) {
      w.Int<uint8_t>(1);
      w.Int<uint32_t>(lo - 1);
    } else {
      w.Int<uint8_t>(2);
      w.Int<uint32_t>(hi - 1);
      w.Int<uint32_t>(lo - 1);
    }
    w.Int<uint64_t>(count);
  }

  std::vector<std::tuple<uint32_t, uint32_t, uint64_t>> props;
  props.reserve(property_extents_.size());
  for (const auto& [p, count] : property_extents_) {
    props.emplace_back(string_id(p.name), string_id(p.value), count);
  }
  std::sort(props.begin(), props.end());
  w.Int<uint64_t>(props.size());
  for (const auto& [name, value, count] : props) {
    w.Int<uint32_t>(name);
    w.Int<uint32_t>(value);
    w.Int<uint64_t>(count);
  }

  w.Int<uint32_t>(static_cast<uint32_t>(type_names_.size()));
  for (const std::string& t : type_names_) {
    w.Int<uint32_t>(string_id(t));
    w.Int<uint64_t>(type_extents_.at(t));
  }

  w.Int<uint64_t>(entity_type_.size());
  for (int32_t t : entity_type_) w.Int<int32_t>(t);
}

StatsIndex StatsIndex::Load(std::istream& in) {
  char magic[kMagicSize];
  in.read(magic, kMagicSize);
  if (static_cast<size_t>(in.gcount()) != kMagicSize ||
      std::memcmp(magic, kMagic, kMagicSize) != 0) {
    throw IndexFormatError(IndexFormatError::Kind::kBadMagic, "not an index file");
  }
  Reader r(in);
  uint32_t version = r.Int<uint32_t>();
  if (version != kFormatVersion) {
    throw IndexFormatError(IndexFormatError::Kind::kUnsupportedVersion,
                           "unsupported version " + std::to_string(version));
  }

  std::vector<std::string> strings(r.Int<uint32_t>());
  for (std::string& s : strings) s = r.String();
  auto string_at = [&](uint32_t id) -> const std::string& {
    if (id >= strings.size()) Corrupt("string id out of range");
    return strings[id];
  };

  StatsIndex index;
  index.entity_total_ = r.Int<uint64_t>();
  uint32_t num_relations = r.Int<uint32_t>();
  for (uint32_t i = 0; i < num_relations; ++i) {
    index.relation_names_.push_back(string_at(r.Int<uint32_t>()));
  }

  uint64_t num_counts = r.Int<uint64_t>();
  for (uint64_t i = 0; i < num_counts; ++i) {
    uint8_t len = r.Int<uint8_t>();
    uint64_t key = 0;
    if (len == 1) {
      key = Key(RelationStep::FromCode(r.Int<uint32_t>()));
    } else if (len == 2) {
      RelationStep first = RelationStep::FromCode(r.Int<uint32_t>());
      key = Key(first, RelationStep::FromCode(r.Int<uint32_t>()));
    } else {
      Corrupt("bad meta-path key length");
    }
    index.short_counts_[key] = r.Int<uint64_t>();
  }

  uint64_t num_props = r.Int<uint64_t>();
  for (uint64_t i = 0; i < num_props; ++i) {
    Property p;
    p.name = string_at(r.Int<uint32_t>());
    p.value = string_at(r.Int<uint32_t>());
    index.property_extents_[std::move(p)] = r.Int<uint64_t>();
  }

  uint32_t num_types = r.Int<uint32_t>();
  for (uint32_t i = 0; i < num_types; ++i) {
    const std::string& t = string_at(r.Int<uint32_t>());
    index.type_names_.push_back(t);
    index.type_extents_[t] = r.Int<uint64_t>();
  }
  if (!std::is_sorted(index.type_names_.begin(), index.type_names_.end())) {
    Corrupt("type table not sorted");
  }

  uint64_t num_entities = r.Int<uint64_t>();
  if (num_entities != index.entity_total_) Corrupt("entity type table size mismatch");
  index.entity_type_.reserve(num_entities);
  for (uint64_t i = 0; i < num_entities; ++i) {
    int32_t t = r.Int<int32_t>();
    if (t < -1 || t >= static_cast<int32_t>(num_types)) Corrupt("type id out of range");
    index.entity_type_.push_back(t);
  }
  if (in.peek() != std::char_traits<char>::eof()) Corrupt("trailing bytes");
  return index;
}

void StatsIndex::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  Save(out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

StatsIndex StatsIndex::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Load(in);
}

}  // namespace grease
