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

#include <cstdint>

#include "grease/knowledge_graph.h"

namespace grease {
namespace {

constexpr std::string_view kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

enum class TermKind { kIri, kBlank, kLiteral };

struct Term {
  TermKind kind;
  std::string text;
};

void AppendUtf8(uint32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

class LineParser {
 public:
  LineParser(std::string_view line, size_t number) : s_(line), number_(number) {}

  Term Next() {
    SkipSpace();
    if (pos_ >= s_.size()) Fail("unexpected end of line");
    char c = s_[pos_];
    if (c == '<') {
      size_t end = s_.find('>', pos_);
      if (end == std::string_view::npos) Fail("unterminated IRI");
      Term t{TermKind::kIri, std::string(s_.substr(pos_ + 1, end - pos_ - 1))};
      pos_ = end + 1;
      return t;
    }
    if (c == '_' && pos_ + 1 < s_.size() && s_[pos_ + 1] == ':') {
      size_t end = pos_;
      while (end < s_.size() && s_[end] != ' ' && s_[end] != '\t') ++end;
      Term t{TermKind::kBlank, std::string(s_.substr(pos_, end - pos_))};
      pos_ = end;
      return t;
    }
    if (c == '"') return Literal();
    Fail("unexpected character '" + std::string(1, c) + "'");
  }

  void ExpectEnd() {
    SkipSpace();
    if (pos_ >= s_.size() || s_[pos_] != '.') Fail("missing terminating '.'");
    ++pos_;
    SkipSpace();
    if (pos_ < s_.size() && s_[pos_] != '#') Fail("trailing characters after '.'");
  }

  [[noreturn]] void Fail(const std::string& what) const { throw LoadError("n-triples", number_, what); }

 private:
  void SkipSpace() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  Term Literal() {
    std::string value;
    ++pos_;
    for (;;) {
      if (pos_ >= s_.size()) Fail("unterminated literal");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        value.push_back(c);
        continue;
      }
      if (pos_ >= s_.size()) Fail("bad escape");
      char e = s_[pos_++];
      switch (e) {
        case 't': value.push_back('\t'); break;
        case 'n': value.push_back('\n'); break;
        case 'r': value.push_back('\r'); break;
        case 'b': value.push_back('\b'); break;
        case 'f': value.push_back('\f'); break;
        case '"': value.push_back('"'); break;
        case '\'': value.push_back('\''); break;
        case '\\': value.push_back('\\'); break;
        case 'u':
        case 'U': {
          size_t digits = e == 'u' ? 4 : 8;
          if (pos_ + digits > s_.size()) Fail("bad unicode escape");
          uint32_t cp = 0;
          for (size_t i = 0; i < digits; ++i) {
            char h = s_[pos_++];
            cp <<= 4;
            if (h >= '0' && h <= '9') cp |= static_cast<uint32_t>(h - '0');
            else if (h >= 'a' && h <= 'f') cp |= static_cast<uint32_t>(h - 'a' + 10);
            else if (h >= 'A' && h <= 'F') cp |= static_cast<uint32_t>(h - 'A' + 10);
            else Fail("bad unicode escape");
          }
          if (cp > 0x10FFFF) Fail("bad unicode escape");
          AppendUtf8(cp, &value);
          break;
        }
        default:
          Fail("bad escape");
      }
    }
    if (pos_ < s_.size() && s_[pos_] == '@') {
      while (pos_ < s_.size() && s_[pos_] != ' ' && s_[pos_] != '\t' && s_[pos_] != '.') ++pos_;
    } else if (s_.substr(pos_, 3) == "^^<") {
      size_t end = s_.find('>', pos_);
      if (end == std::string_view::npos) Fail("unterminated datatype IRI");
      pos_ = end + 1;
    }
    return {TermKind::kLiteral, std::move(value)};
  }

  std::string_view s_;
  size_t number_;
  size_t pos_ = 0;
};

std::string Clean(std::string s) {
  for (char& c : s) {
    if (c == '\t' || c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

std::string LocalName(std::string_view iri) {
  size_t cut = iri.find_last_of("#/");
  if (cut == std::string_view::npos || cut + 1 == iri.size()) return std::string(iri);
  return std::string(iri.substr(cut + 1));
}

NTriplesStats ConvertNTriples(std::istream& in, std::ostream& relations, std::ostream& attributes,
                              const std::string& type_attribute) {
  NTriplesStats stats;
  std::string line;
  size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;

    LineParser p(line, number);
    Term s = p.Next();
    Term r = p.Next();
    Term o = p.Next();
    p.ExpectEnd();
    if (s.kind == TermKind::kLiteral) p.Fail("literal subject");
    if (r.kind != TermKind::kIri) p.Fail("predicate must be an IRI");
    if (s.kind == TermKind::kBlank || o.kind == TermKind::kBlank) {
      ++stats.skipped_blank_nodes;
      continue;
    }

    std::string subject = Clean(LocalName(s.text));
    if (r.text == kRdfType && o.kind == TermKind::kIri) {
      attributes << subject << '\t' << type_attribute << '\t' << Clean(LocalName(o.text)) << '\n';
      ++stats.attribute_lines;
    } else if (o.kind == TermKind::kLiteral) {
      attributes << subject << '\t' << Clean(LocalName(r.text)) << '\t' << Clean(o.text) << '\n';
      ++stats.attribute_lines;
    } else {
      relations << subject << '\t' << Clean(LocalName(r.text)) << '\t' << Clean(LocalName(o.text))
                << '\n';
      ++stats.relation_lines;
    }
  }
  return stats;
}

}  // namespace grease
