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

#include "quadgate/policy.h"

#include <algorithm>

#include "quadgate/errors.h"
#include "quadgate/rdf_io.h"
#include "reader.h"

namespace quadgate {

Policy::Policy(const std::vector<QuadPattern>& patterns) {
  for (const auto& p : patterns) add(p);
}

void Policy::add(const QuadPattern& pattern) {
  if (std::find(patterns_.begin(), patterns_.end(), pattern) == patterns_.end()) {
    patterns_.push_back(pattern);
  }
}

bool Policy::denies(const Quad& quad) const {
  return std::any_of(patterns_.begin(), patterns_.end(),
                     [&](const QuadPattern& p) { return matchQuad(p, quad); });
}

namespace {

Term policyTerm(detail::TokenStream& in) {
  if (in.peek().kind == detail::TokenKind::Var) {
    return Term::variable(in.next().text);
  }
  return in.readTerm();
}

}  // namespace

Policy parsePolicy(std::string_view text) {
  detail::TokenStream in(text);
  Policy policy;
  while (!in.atEnd()) {
    if (in.acceptWord("PREFIX")) {
      in.readPrefixDeclaration();
      continue;
    }
    const detail::Token start = in.peek();
    Term s = policyTerm(in);
    Term p = policyTerm(in);
    Term o = policyTerm(in);
    GraphTerm g;
    if (!in.peek().isPunct(".")) {
      if (in.peek().kind == detail::TokenKind::Var) {
        g = GraphTerm::variable(in.next().text);
      } else {
        g = GraphTerm::named(in.readIri());
      }
    }
    in.expectPunct(".");
    try {
      policy.add(QuadPattern::make(s, p, o, g));
    } catch (const InvalidArgument& e) {
      detail::fail(start, e.what());
    }
  }
  return policy;
}

Policy loadPolicy(const std::string& path) { return parsePolicy(readFile(path)); }

std::string formatPolicy(const Policy& policy) {
  std::string out;
  for (const auto& p : policy.patterns()) {
    out += p.subject.toString() + " " + p.predicate.toString() + " " +
           p.object.toString();
    if (!p.graph.isDefault()) out += " " + p.graph.toString();
    out += " .\n";
  }
  return out;
}

DatasetSplit splitDataset(const Dataset& dataset, const Policy& policy) {
  DatasetSplit split;
  for (const auto& graph : dataset.listGraphs()) {
    split.authorised.createGraph(graph);
    split.unauthorised.createGraph(graph);
  }
  dataset.forEachQuad([&](const Quad& q) {
    (policy.denies(q) ? split.unauthorised : split.authorised).insert(q);
  });
  return split;
}

std::vector<RelevantAuthorisation> relevantAuthorisations(
    const Policy& policy, const QuadPattern& queryPattern) {
  std::vector<RelevantAuthorisation> out;
  for (const auto& auth : policy.patterns()) {
    if (auto u = unifyPatterns(queryPattern, auth)) out.push_back({auth, *u});
  }
  return out;
}

}  // namespace quadgate
