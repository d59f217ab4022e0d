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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadgate/term.h"

namespace quadgate {

// The graph component of a ground quad: the default graph or a named graph.
class GraphName {
 public:
  GraphName() = default;  // the default graph

  static GraphName defaultGraph() { return GraphName(); }
  static GraphName named(std::string_view iri);

  bool isDefault() const { return iri_.empty(); }
  const std::string& iri() const { return iri_; }
  Term toTerm() const { return Term::iri(iri_); }
  std::string toString() const;

  auto operator<=>(const GraphName&) const = default;

 private:
  std::string iri_;
};

// The graph position of a pattern: default graph, named graph or variable.
class GraphTerm {
 public:
  enum class Kind : std::uint8_t { Default, Named, Variable };

  GraphTerm() = default;  // the default graph
  GraphTerm(const GraphName& graph)  // NOLINT: implicit by design of patterns
      : kind_(graph.isDefault() ? Kind::Default : Kind::Named),
        value_(graph.iri()) {}

  static GraphTerm named(std::string_view iri) {
    return GraphTerm(GraphName::named(iri));
  }
  static GraphTerm variable(std::string_view name);
  // IRI terms become named graphs, variables become variables.
  static GraphTerm fromTerm(const Term& term);

  Kind kind() const { return kind_; }
  bool isDefault() const { return kind_ == Kind::Default; }
  bool isNamed() const { return kind_ == Kind::Named; }
  bool isVariable() const { return kind_ == Kind::Variable; }
  // Variable name or graph IRI.
  const std::string& value() const { return value_; }

  GraphName graphName() const;  // precondition: !isVariable()
  Term toTerm() const;          // precondition: !isDefault()
  bool matches(const GraphName& graph) const;
  std::string toString() const;

  auto operator<=>(const GraphTerm&) const = default;

 private:
  Kind kind_ = Kind::Default;
  std::string value_;
};

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

// A ground quad. Construct through make() to validate positions.
struct Quad {
  Term subject;
  Term predicate;
  Term object;
  GraphName graph;

  static Quad make(Term subject, Term predicate, Term object,
                   GraphName graph = {});

  Triple triple() const { return {subject, predicate, object}; }
  std::string toNQuads() const;

  auto operator<=>(const Quad&) const = default;
  bool operator==(const Quad&) const = default;
};

// A quad whose positions may be variables: the unit of (deny) authorisation
// and the shape of a triple pattern seen in its graph context.
struct QuadPattern {
  Term subject;
  Term predicate;
  Term object;
  GraphTerm graph;

  // Validates that constants sit in legal positions.
  static QuadPattern make(Term subject, Term predicate, Term object,
                          GraphTerm graph = {});
  static QuadPattern ofQuad(const Quad& quad);

  bool isGround() const;
  std::vector<std::string> variables() const;
  std::string toString() const;

  auto operator<=>(const QuadPattern&) const = default;
  bool operator==(const QuadPattern&) const = default;
};

// Equality binding var = constant produced by unification.
struct Binding {
  std::string variable;
  Term value;

  bool operator==(const Binding&) const = default;
};

struct GraphBinding {
  std::string variable;
  GraphName graph;

  bool operator==(const GraphBinding&) const = default;
};

// Result of unifying a query pattern (left) with an authorisation (right).
struct Unification {
  // One entry per subject/predicate/object position where the query holds a
  // variable and the authorisation a constant, in position order.
  std::vector<Binding> bindings;
  // Set when the query graph is a variable and the authorisation graph a
  // constant (named or default).
  std::optional<GraphBinding> graphBinding;

  bool operator==(const Unification&) const = default;
};

// True iff every constant position of the pattern equals the quad's. A
// variable graph position matches every graph including the default graph.
bool matchQuad(const QuadPattern& pattern, const Quad& quad);

// nullopt when some position holds two distinct constants. Variables never
// conflict, so swapping the arguments never changes match vs noMatch.
std::optional<Unification> unifyPatterns(const QuadPattern& queryPattern,
                                         const QuadPattern& authPattern);

}  // namespace quadgate
