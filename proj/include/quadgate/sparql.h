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

#include <string>
#include <string_view>
#include <vector>

#include "quadgate/sparql_ast.h"

namespace quadgate {

// Parses one query of the supported subset. Throws ParseError for malformed
// text and UnsupportedError naming the construct for recognised SPARQL
// features outside the subset (property paths, VALUES, BIND, ...).
Query parseQuery(std::string_view text);

// Parses exactly one update operation.
Update parseUpdate(std::string_view text);

// Parses a ';'-separated update request.
std::vector<Update> parseUpdateRequest(std::string_view text);

// Query/update text with two-space indentation and one pattern per line.
// IRIs are abbreviated with the AST's prefix map where possible.
std::string serialize(const Query& query);
std::string serialize(const Update& update);
std::string serialize(const std::vector<Update>& updates);
std::string serialize(const Expression& expression,
                      const PrefixMap& prefixes = {});

}  // namespace quadgate
