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

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "quadgate/dataset.h"
#include "quadgate/sparql_ast.h"

namespace quadgate {

// One result row aligned with ResultSet::variables; nullopt is unbound.
using Solution = std::vector<std::optional<Term>>;

struct ResultSet {
  enum class Kind : std::uint8_t { Bindings, Boolean, Graph };

  Kind kind = Kind::Bindings;
  std::vector<std::string> variables;
  std::vector<Solution> rows;  // a multiset unless `ordered`
  bool ordered = false;        // ORDER BY present: row order is significant
  bool boolean = false;
  std::set<Triple> triples;

  // Values of `row` rearranged to follow `order` (variables missing from this
  // result are unbound).
  Solution aligned(const Solution& row,
                   const std::vector<std::string>& order) const;
};

// Bag-semantics comparisons. Bindings compare as multisets of rows keyed by
// variable name (sequences when either side is ordered); booleans and graphs
// by value. Results of different kinds are never equal.
bool resultsEqual(const ResultSet& a, const ResultSet& b);
// Multiset containment a ⊑ b.
bool resultsContained(const ResultSet& a, const ResultSet& b);
// Rows of `a` in excess of their multiplicity in `b` (bindings only).
std::vector<Solution> rowsMissingFrom(const ResultSet& a, const ResultSet& b);
// Triples of `a` missing from `b` (graph results only).
std::vector<Triple> triplesMissingFrom(const ResultSet& a, const ResultSet& b);

// Reference evaluation over the whole dataset: the default graph is the
// active graph outside GRAPH blocks, GRAPH ?g ranges over named graphs.
ResultSet evaluate(const Dataset& dataset, const Query& query);

// Applies one update and returns the new dataset; the input is untouched.
Dataset executeUpdate(const Dataset& dataset, const Update& update);
Dataset executeUpdates(const Dataset& dataset,
                       const std::vector<Update>& updates);

// SPARQL 1.1 JSON results for bindings/boolean, N-Triples for graphs.
std::string formatResults(const ResultSet& results);
std::string formatRow(const ResultSet& results, const Solution& row);

// Ordering used by ORDER BY, MIN and MAX: unbound < IRIs < literals; numeric
// literals by value, other literals by lexical form then datatype/language.
int compareForOrder(const std::optional<Term>& a, const std::optional<Term>& b);

}  // namespace quadgate
