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

#ifndef GREASE_NTRIPLES_H_
#define GREASE_NTRIPLES_H_

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

namespace grease {

struct NTriplesStats {
  size_t relation_lines = 0;
  size_t attribute_lines = 0;
  size_t skipped_blank_nodes = 0;
};

// Local name of an IRI: the part after the last '#' or '/'. Returns the
// whole IRI if that part would be empty.
std::string LocalName(std::string_view iri);

// Converts an N-Triples stream into the TAB-separated relations and
// attributes formats. IRIs are reduced to local names; triples with a
// literal object become attributes (datatype and language tag dropped), and
// rdf:type triples become attributes named `type_attribute` whose value is
// the class's local name. Triples touching a blank node are skipped. Tabs and
// line breaks inside values are replaced by spaces.
//
// Throws LoadError with the line number on a malformed line.
NTriplesStats ConvertNTriples(std::istream& in, std::ostream& relations, std::ostream& attributes,
                              const std::string& type_attribute = "type");

}  // namespace grease

#endif  // GREASE_NTRIPLES_H_
