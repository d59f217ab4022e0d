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

#include <cstddef>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "quadgate/pattern.h"

namespace quadgate {

// Orders triples by (subject, predicate, object) and supports heterogeneous
// lookup by a subject or subject+predicate prefix.
struct TripleOrder {
  using is_transparent = void;

  struct Prefix {
    const Term* subject;
    const Term* predicate = nullptr;
  };

  bool operator()(const Triple& a, const Triple& b) const { return a < b; }
  bool operator()(const Triple& a, const Prefix& b) const {
    return compare(a, b) < 0;
  }
  bool operator()(const Prefix& a, const Triple& b) const {
    return compare(b, a) > 0;
  }

 private:
  static int compare(const Triple& t, const Prefix& p) {
    if (auto c = t.subject <=> *p.subject; c != 0) return c < 0 ? -1 : 1;
    if (p.predicate == nullptr) return 0;
    if (auto c = t.predicate <=> *p.predicate; c != 0) return c < 0 ? -1 : 1;
    return 0;
  }
};

using TripleSet = std::set<Triple, TripleOrder>;

// A default graph plus registered named graphs, each a set of ground triples.
//
// A Dataset is a plain value: copying it yields an independent snapshot, and
// const access is safe from several threads. Named graphs may be registered
// while empty (CREATE); equality ignores that registration.
class Dataset {
 public:
  Dataset();

  // Both return whether the dataset changed. Inserting registers the graph.
  bool insert(const Quad& quad);
  bool erase(const Quad& quad);
  bool contains(const Quad& quad) const;

  void createGraph(const GraphName& graph);
  void clearGraph(const GraphName& graph);
  // Dropping the default graph clears it.
  void dropGraph(const GraphName& graph);
  bool hasGraph(const GraphName& graph) const;

  // Default graph first, then registered named graphs in IRI order.
  std::vector<GraphName> listGraphs() const;
  std::vector<GraphName> namedGraphs() const;
  const TripleSet& graphTriples(const GraphName& graph) const;
  std::vector<Quad> graphQuads(const GraphName& graph) const;
  // All quads sorted by graph, subject, predicate, object.
  std::vector<Quad> quads() const;

  std::size_t size() const;
  bool empty() const { return size() == 0; }

  // Triples of `graph` whose subject (and predicate, when given) match.
  std::pair<TripleSet::const_iterator, TripleSet::const_iterator> lookup(
      const GraphName& graph, const Term& subject,
      const Term* predicate = nullptr) const;

  template <typename F>
  void forEachQuad(F&& f) const {
    for (const auto& [graph, triples] : graphs_) {
      for (const auto& t : triples) {
        f(Quad{t.subject, t.predicate, t.object, graph});
      }
    }
  }

  friend bool operator==(const Dataset& a, const Dataset& b);

 private:
  std::map<GraphName, TripleSet> graphs_;
};

// Per-graph set union; graph registrations of both inputs are kept.
Dataset mergeDatasets(const Dataset& a, const Dataset& b);
// Exact quad-set equality; empty named graphs equal absent ones.
bool datasetEquals(const Dataset& a, const Dataset& b);
// Quad-set inclusion.
bool subsetOf(const Dataset& a, const Dataset& b);
// Quads of `a` missing from `b`, sorted.
std::vector<Quad> quadDifference(const Dataset& a, const Dataset& b);

}  // namespace quadgate
