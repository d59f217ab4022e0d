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

#include <string_view>
#include <vector>

#include "quadgate/policy.h"
#include "quadgate/sparql_ast.h"

namespace quadgate {

// Graph that holds a LOAD document while its authorised part is copied.
inline constexpr std::string_view kStagingGraph = "urn:x-quadgate:staging";

// Appends FILTER NOT EXISTS blocks so that no solution depends on a denied
// quad. Every group (including OPTIONAL, MINUS, UNION, EXISTS bodies and
// subqueries) is handled; existing elements are never removed or reordered.
Query rewriteQuery(const Query& query, const Policy& policy);
GroupPattern rewriteGroup(const GroupPattern& group, const Policy& policy);

// Rewrites one update into a sequence with the same effect on authorised
// data that never reads, deletes or inserts denied quads. An empty result
// is a no-op.
std::vector<Update> rewriteUpdate(const Update& update, const Policy& policy);
std::vector<Update> rewriteUpdates(const std::vector<Update>& updates,
                                   const Policy& policy);

// Triple-level baselines for comparison; both ignore graph positions and
// accept only SELECT queries over basic graph patterns (UnsupportedError
// otherwise).
//
// FILTER != : appends FILTER (?v1 != c1 || ...) per matching authorisation;
// an authorisation whose constants all occur as constants in the pattern
// cannot be expressed and is skipped.
Query rewriteBaselineFilterNeq(const Query& query, const Policy& policy);
// OPTIONAL: fully restricted patterns are removed, partially restricted ones
// move to the end of their group as OPTIONAL { t FILTER (...) }.
Query rewriteBaselineOptional(const Query& query, const Policy& policy);

}  // namespace quadgate
