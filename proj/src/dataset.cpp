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

#include "quadgate/dataset.h"

#include "quadgate/errors.h"

namespace quadgate {

namespace {
const TripleSet kEmpty;
}  // namespace

Dataset::Dataset() { graphs_.emplace(GraphName(), TripleSet()); }

bool Dataset::insert(const Quad& quad) {
  Quad checked = Quad::make(quad.subject, quad.predicate, quad.object,
                            quad.graph);
  return graphs_[checked.graph].insert(checked.triple()).second;
}

bool Dataset::erase(const Quad& quad) {
  auto it = graphs_.find(quad.graph);
  if (it == graphs_.end()) return false;
  return it->second.erase(quad.triple()) > 0;
}

bool Dataset::contains(const Quad& quad) const {
  auto it = graphs_.find(quad.graph);
  return it != graphs_.end() && it->second.count(quad.triple()) > 0;
}

void Dataset::createGraph(const GraphName& graph) { graphs_[graph]; }

void Dataset::clearGraph(const GraphName& graph) {
  auto it = graphs_.find(graph);
  if (it != graphs_.end()) it->second.clear();
}

void Dataset::dropGraph(const GraphName& graph) {
  if (graph.isDefault()) {
    clearGraph(graph);
  } else {
    graphs_.erase(graph);
  }
}

bool Dataset::hasGraph(const GraphName& graph) const {
  return graphs_.count(graph) > 0;
}

std::vector<GraphName> Dataset::listGraphs() const {
  std::vector<GraphName> out;
  out.reserve(graphs_.size());
  for (const auto& entry : graphs_) out.push_back(entry.first);
  return out;
}

std::vector<GraphName> Dataset::namedGraphs() const {
  std::vector<GraphName> out;
  for (const auto& entry : graphs_) {
    if (!entry.first.isDefault()) out.push_back(entry.first);
  }
  return out;
}

const TripleSet& Dataset::graphTriples(const GraphName& graph) const {
  auto it = graphs_.find(graph);
  return it == graphs_.end() ? kEmpty : it->second;
}

std::vector<Quad> Dataset::graphQuads(const GraphName& graph) const {
  std::vector<Quad> out;
  for (const auto& t : graphTriples(graph)) {
    out.push_back(Quad{t.subject, t.predicate, t.object, graph});
  }
  return out;
}

std::vector<Quad> Dataset::quads() const {
  std::vector<Quad> out;
  out.reserve(size());
  forEachQuad([&](Quad q) { out.push_back(std::move(q)); });
  return out;
}

std::size_t Dataset::size() const {
  std::size_t n = 0;
  for (const auto& entry : graphs_) n += entry.second.size();
  return n;
}

std::pair<TripleSet::const_iterator, TripleSet::const_iterator>
Dataset::lookup(const GraphName& graph, const Term& subject,
                const Term* predicate) const {
  const TripleSet& triples = graphTriples(graph);
  return triples.equal_range(TripleOrder::Prefix{&subject, predicate});
}

bool operator==(const Dataset& a, const Dataset& b) {
  auto ia = a.graphs_.begin();
  auto ib = b.graphs_.begin();
  auto skipEmpty = [](auto& it, const auto& end) {
    while (it != end && it->second.empty()) ++it;
  };
  while (true) {
    skipEmpty(ia, a.graphs_.end());
    skipEmpty(ib, b.graphs_.end());
    if (ia == a.graphs_.end() || ib == b.graphs_.end()) {
      return ia == a.graphs_.end() && ib == b.graphs_.end();
    }
    if (ia->first != ib->first || ia->second != ib->second) return false;
    ++ia;
    ++ib;
  }
}

Dataset mergeDatasets(const Dataset& a, const Dataset& b) {
  Dataset out = a;
  for (const auto& g : b.listGraphs()) out.createGraph(g);
  b.forEachQuad([&](const Quad& q) { out.insert(q); });
  return out;
}

bool datasetEquals(const Dataset& a, const Dataset& b) { return a == b; }

bool subsetOf(const Dataset& a, const Dataset& b) {
  bool inside = true;
  a.forEachQuad([&](const Quad& q) {
    if (inside && !b.contains(q)) inside = false;
  });
  return inside;
}

std::vector<Quad> quadDifference(const Dataset& a, const Dataset& b) {
  std::vector<Quad> out;
  a.forEachQuad([&](const Quad& q) {
    if (!b.contains(q)) out.push_back(q);
  });
  return out;
}

}  // namespace quadgate
