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

#include "quadgate/rdf_io.h"

#include <fstream>
#include <sstream>

#include "quadgate/errors.h"
#include "reader.h"

namespace quadgate {

namespace {

using detail::TokenStream;

class DatasetReader {
 public:
  explicit DatasetReader(std::string_view text) : in_(text) {}

  Dataset run() {
    while (!in_.atEnd()) statement();
    return std::move(dataset_);
  }

 private:
  void statement() {
    if (in_.peek().kind == detail::TokenKind::LangTag &&
        in_.peek().text == "prefix") {
      in_.next();
      in_.readPrefixDeclaration();
      in_.expectPunct(".");
      return;
    }
    if (in_.acceptWord("PREFIX")) {
      in_.readPrefixDeclaration();
      return;
    }
    if (in_.peek().isWord("BASE") ||
        (in_.peek().kind == detail::TokenKind::LangTag &&
         in_.peek().text == "base")) {
      throw UnsupportedError("base IRI declaration");
    }
    if (in_.acceptWord("GRAPH")) {
      GraphName graph = GraphName::named(in_.readIri());
      block(graph);
      return;
    }
    if (in_.peek().isPunct("{")) {
      block(GraphName());
      return;
    }
    // Either `graph { ... }` or a triple/quad statement.
    if (in_.atIri() && in_.peek(1).isPunct("{")) {
      GraphName graph = GraphName::named(in_.readIri());
      block(graph);
      return;
    }
    triples(GraphName(), true);
    in_.expectPunct(".");
  }

  void block(const GraphName& graph) {
    dataset_.createGraph(graph);
    in_.expectPunct("{");
    while (!in_.acceptPunct("}")) {
      triples(graph, false);
      if (in_.acceptPunct(".")) continue;
      if (!in_.peek().isPunct("}")) {
        detail::fail(in_.peek(), "expected '.' or '}' but found " +
                                     detail::describe(in_.peek()));
      }
    }
  }

  // Subject followed by a predicate-object list. When `allowGraph` is set a
  // trailing graph term after a single object makes the statement a quad.
  void triples(const GraphName& graph, bool allowGraph) {
    const auto& at = in_.peek();
    Term subject = in_.readTerm();
    if (!subject.isIri()) detail::fail(at, "subject must be an IRI");
    std::vector<Triple> pending;
    bool abbreviated = false;
    do {
      if (in_.peek().isPunct(".") || in_.peek().isPunct("}")) break;
      const auto& pat = in_.peek();
      Term predicate = in_.readTerm(true);
      if (!predicate.isIri()) detail::fail(pat, "predicate must be an IRI");
      do {
        pending.push_back({subject, predicate, in_.readTerm()});
        if (in_.peek().isPunct(",")) abbreviated = true;
      } while (in_.acceptPunct(","));
      if (in_.peek().isPunct(";")) abbreviated = true;
    } while (in_.acceptPunct(";"));

    GraphName target = graph;
    if (allowGraph && !abbreviated && pending.size() == 1 && in_.atIri()) {
      target = GraphName::named(in_.readIri());
    }
    for (const auto& t : pending) {
      dataset_.insert(Quad{t.subject, t.predicate, t.object, target});
    }
  }

  TokenStream in_;
  Dataset dataset_;
};

}  // namespace

Dataset parseDataset(std::string_view text) {
  return DatasetReader(text).run();
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void writeFile(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing file '" + path + "'");
}

Dataset loadDataset(const std::string& path) {
  return parseDataset(readFile(path));
}

std::string writeNQuads(const Dataset& dataset) {
  std::string out;
  for (const auto& q : dataset.quads()) {
    out += q.toNQuads();
    out += '\n';
  }
  return out;
}

void saveNQuads(const Dataset& dataset, const std::string& path) {
  writeFile(path, writeNQuads(dataset));
}

std::string writeNTriples(const std::set<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += t.subject.toString() + " " + t.predicate.toString() + " " +
           t.object.toString() + " .\n";
  }
  return out;
}

}  // namespace quadgate
