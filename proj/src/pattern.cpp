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

#include "quadgate/pattern.h"

#include "quadgate/errors.h"

namespace quadgate {

GraphName GraphName::named(std::string_view iri) {
  if (!isAbsoluteIri(iri)) {
    throw InvalidArgument("graph name is not an absolute IRI: '" +
                          std::string(iri) + "'");
  }
  GraphName g;
  g.iri_ = std::string(iri);
  return g;
}

std::string GraphName::toString() const {
  return isDefault() ? std::string("DEFAULT") : "<" + iri_ + ">";
}

GraphTerm GraphTerm::variable(std::string_view name) {
  GraphTerm g;
  g.kind_ = Kind::Variable;
  g.value_ = Term::variable(name).value();
  return g;
}

GraphTerm GraphTerm::fromTerm(const Term& term) {
  if (term.isVariable()) return variable(term.value());
  if (term.isIri()) return named(term.value());
  throw InvalidArgument("a literal cannot name a graph");
}

GraphName GraphTerm::graphName() const {
  if (isVariable()) throw InvalidArgument("graph position is a variable");
  return isDefault() ? GraphName() : GraphName::named(value_);
}

Term GraphTerm::toTerm() const {
  if (isDefault()) throw InvalidArgument("the default graph has no term");
  return isVariable() ? Term::variable(value_) : Term::iri(value_);
}

bool GraphTerm::matches(const GraphName& graph) const {
  switch (kind_) {
    case Kind::Variable:
      return true;
    case Kind::Default:
      return graph.isDefault();
    case Kind::Named:
      return !graph.isDefault() && graph.iri() == value_;
  }
  return false;
}

std::string GraphTerm::toString() const {
  switch (kind_) {
    case Kind::Variable:
      return "?" + value_;
    case Kind::Named:
      return "<" + value_ + ">";
    case Kind::Default:
      break;
  }
  return "DEFAULT";
}

Quad Quad::make(Term subject, Term predicate, Term object, GraphName graph) {
  if (!subject.isIri()) {
    throw InvalidArgument("quad subject must be an IRI: " + subject.toString());
  }
  if (!predicate.isIri()) {
    throw InvalidArgument("quad predicate must be an IRI: " +
                          predicate.toString());
  }
  if (object.isVariable()) {
    throw InvalidArgument("quad object must be ground: " + object.toString());
  }
  return Quad{std::move(subject), std::move(predicate), std::move(object),
              std::move(graph)};
}

std::string Quad::toNQuads() const {
  std::string out = subject.toString() + " " + predicate.toString() + " " +
                    object.toString();
  if (!graph.isDefault()) out += " <" + graph.iri() + ">";
  return out + " .";
}

QuadPattern QuadPattern::make(Term subject, Term predicate, Term object,
                              GraphTerm graph) {
  if (subject.isLiteral()) {
    throw InvalidArgument("pattern subject cannot be a literal");
  }
  if (predicate.isLiteral()) {
    throw InvalidArgument("pattern predicate cannot be a literal");
  }
  return QuadPattern{std::move(subject), std::move(predicate),
                     std::move(object), std::move(graph)};
}

QuadPattern QuadPattern::ofQuad(const Quad& quad) {
  return QuadPattern{quad.subject, quad.predicate, quad.object,
                     GraphTerm(quad.graph)};
}

bool QuadPattern::isGround() const {
  return !subject.isVariable() && !predicate.isVariable() &&
         !object.isVariable() && !graph.isVariable();
}

std::vector<std::string> QuadPattern::variables() const {
  std::vector<std::string> out;
  auto add = [&](const std::string& name) {
    for (const auto& v : out) {
      if (v == name) return;
    }
    out.push_back(name);
  };
  for (const Term* t : {&subject, &predicate, &object}) {
    if (t->isVariable()) add(t->value());
  }
  if (graph.isVariable()) add(graph.value());
  return out;
}

std::string QuadPattern::toString() const {
  std::string out = subject.toString() + " " + predicate.toString() + " " +
                    object.toString() + " " + graph.toString();
  return out;
}

bool matchQuad(const QuadPattern& pattern, const Quad& quad) {
  auto position = [](const Term& p, const Term& q) {
    return p.isVariable() || p == q;
  };
  return position(pattern.subject, quad.subject) &&
         position(pattern.predicate, quad.predicate) &&
         position(pattern.object, quad.object) &&
         pattern.graph.matches(quad.graph);
}

std::optional<Unification> unifyPatterns(const QuadPattern& queryPattern,
                                         const QuadPattern& authPattern) {
  Unification result;
  const Term* query[] = {&queryPattern.subject, &queryPattern.predicate,
                         &queryPattern.object};
  const Term* auth[] = {&authPattern.subject, &authPattern.predicate,
                        &authPattern.object};
  for (int i = 0; i < 3; ++i) {
    const Term& q = *query[i];
    const Term& a = *auth[i];
    if (q.isVariable()) {
      if (!a.isVariable()) result.bindings.push_back({q.value(), a});
    } else if (!a.isVariable() && q != a) {
      return std::nullopt;
    }
  }
  const GraphTerm& qg = queryPattern.graph;
  const GraphTerm& ag = authPattern.graph;
  if (qg.isVariable()) {
    if (!ag.isVariable()) {
      result.graphBinding = GraphBinding{qg.value(), ag.graphName()};
    }
  } else if (!ag.isVariable() && qg != ag) {
    return std::nullopt;
  }
  return result;
}

}  // namespace quadgate
