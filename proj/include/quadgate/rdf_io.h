// Copyright 2026 The quadgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <set>
#include <string>
#include <string_view>

#include "quadgate/dataset.h"

namespace quadgate {

// Reads N-Quads or the supported TriG subset: PREFIX/@prefix declarations,
// `graph { ... }` and `GRAPH graph { ... }` blocks, bare `{ ... }` default
// graph blocks, ';' and ',' abbreviations and 'a'. A statement outside any
// block may carry a fourth (graph) term, which covers N-Quads and N-Triples.
Dataset parseDataset(std::string_view text);

// Reads a dataset file. Throws Error when the file cannot be read.
Dataset loadDataset(const std::string& path);

// One quad per line, sorted by graph, subject, predicate, object.
std::string writeNQuads(const Dataset& dataset);
void saveNQuads(const Dataset& dataset, const std::string& path);

std::string writeNTriples(const std::set<Triple>& triples);

std::string readFile(const std::string& path);
void writeFile(const std::string& path, std::string_view content);

}  // namespace quadgate
