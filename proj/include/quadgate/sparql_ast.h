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

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "quadgate/pattern.h"

namespace quadgate {

// Owning pointer with value semantics, used to break the recursion between
// group patterns and the elements that contain groups.
template <typename T>
class Box {
 public:
  Box() : ptr_(std::make_unique<T>()) {}
  Box(T value)  // NOLINT: implicit wrapping keeps AST construction terse
      : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&& other) noexcept : ptr_(std::move(other.ptr_)) {}
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&& other) noexcept {
    ptr_ = std::move(other.ptr_);
    return *this;
  }

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

struct GroupPattern;
struct SelectQuery;

// FILTER expressions: comparisons, boolean connectives, bound(), variables
// and constants. And/Or are n-ary.
struct Expression {
  enum class Op : std::uint8_t {
    Term,  // constant or variable, held in `term`
    And,
    Or,
    Not,
    Equal,
    NotEqual,
    Less,
    LessEqual,
    Greater,
    GreaterEqual,
    Bound  // `term` is the variable
  };

  Op op = Op::Term;
  std::optional<Term> term;
  std::vector<Expression> args;

  static Expression constant(Term value);
  static Expression variable(std::string_view name);
  static Expression bound(std::string_view name);
  static Expression compare(Op op, Expression left, Expression right);
  static Expression negate(Expression operand);
  // A single operand is returned unchanged; no operand is an error.
  static Expression conjunction(std::vector<Expression> operands);
  static Expression disjunction(std::vector<Expression> operands);

  friend bool operator==(const Expression&, const Expression&) = default;
};

struct GraphBlock {
  GraphTerm graph;  // named or variable
  Box<GroupPattern> body;
};

struct FilterElement {
  Expression expression;
};

struct ExistsElement {
  bool negated = false;
  Box<GroupPattern> body;
};

struct MinusElement {
  Box<GroupPattern> body;
};

struct OptionalElement {
  Box<GroupPattern> body;
};

struct UnionElement {
  std::vector<GroupPattern> branches;  // at least two
};

// A nested plain group `{ ... }`.
struct GroupElement {
  Box<GroupPattern> body;
};

struct SubSelectElement {
  Box<SelectQuery> query;
};

bool operator==(const GraphBlock& a, const GraphBlock& b);
bool operator==(const FilterElement& a, const FilterElement& b);
bool operator==(const ExistsElement& a, const ExistsElement& b);
bool operator==(const MinusElement& a, const MinusElement& b);
bool operator==(const OptionalElement& a, const OptionalElement& b);
bool operator==(const UnionElement& a, const UnionElement& b);
bool operator==(const GroupElement& a, const GroupElement& b);
bool operator==(const SubSelectElement& a, const SubSelectElement& b);

// Triple patterns are stored as QuadPatterns whose graph is the nearest
// enclosing GRAPH term (default graph outside any GRAPH block).
using Element =
    std::variant<QuadPattern, GraphBlock, FilterElement, ExistsElement,
                 MinusElement, OptionalElement, UnionElement, GroupElement,
                 SubSelectElement>;

struct GroupPattern {
  std::vector<Element> elements;
};

bool operator==(const GroupPattern& a, const GroupPattern& b);

enum class Aggregate : std::uint8_t {
  None,
  Count,
  Sum,
  Min,
  Max,
  Avg,
  GroupConcat,
  Sample
};

struct Projection {
  std::string variable;  // projected variable, or the alias of an aggregate
  Aggregate aggregate = Aggregate::None;
  bool distinct = false;                // COUNT(DISTINCT ?x)
  std::optional<std::string> argument;  // nullopt means COUNT(*)
  std::string separator = " ";          // GROUP_CONCAT only

  friend bool operator==(const Projection&, const Projection&) = default;
};

struct OrderKey {
  std::string variable;
  bool descending = false;

  friend bool operator==(const OrderKey&, const OrderKey&) = default;
};

struct SelectQuery {
  bool distinct = false;
  bool selectAll = false;  // SELECT *
  std::vector<Projection> projection;
  GroupPattern where;
  std::vector<std::string> groupBy;
  std::vector<OrderKey> orderBy;

  bool hasAggregates() const;
  // Output variables: projection order, or for SELECT * the in-scope
  // variables of the WHERE clause in first-occurrence order.
  std::vector<std::string> outputVariables() const;

  friend bool operator==(const SelectQuery&, const SelectQuery&) = default;
};

using PrefixMap = std::vector<std::pair<std::string, std::string>>;

enum class QueryForm : std::uint8_t { Select, Ask, Construct, Describe };

struct Query {
  QueryForm form = QueryForm::Select;
  PrefixMap prefixes;
  SelectQuery select;  // SELECT: projection, modifiers and WHERE
  GroupPattern where;  // ASK / CONSTRUCT / DESCRIBE
  bool hasWhere = true;  // DESCRIBE may omit its WHERE clause
  std::vector<QuadPattern> constructTemplate;  // default-graph patterns
  std::vector<Term> describeTargets;           // IRIs or variables

  GroupPattern& pattern() {
    return form == QueryForm::Select ? select.where : where;
  }
  const GroupPattern& pattern() const {
    return form == QueryForm::Select ? select.where : where;
  }
};

// Structural equality; prefix maps are ignored.
bool operator==(const Query& a, const Query& b);

enum class UpdateKind : std::uint8_t {
  InsertData,
  DeleteData,
  Modify,  // DELETE { } INSERT { } WHERE { }, either template may be empty
  DeleteWhere,
  Clear,
  Drop,
  Create,
  Add,
  Copy,
  Move,
  Load
};

// Target of CLEAR / DROP / CREATE.
struct GraphTarget {
  enum class Kind : std::uint8_t { Graph, Default, Named, All };
  Kind kind = Kind::Default;
  GraphName graph;  // Kind::Graph only

  static GraphTarget of(const GraphName& graph);

  friend bool operator==(const GraphTarget&, const GraphTarget&) = default;
};

struct Update {
  UpdateKind kind = UpdateKind::InsertData;
  PrefixMap prefixes;
  bool silent = false;
  std::vector<Quad> data;                   // INSERT DATA / DELETE DATA
  std::vector<QuadPattern> deleteTemplate;  // Modify; DeleteWhere patterns
  std::vector<QuadPattern> insertTemplate;  // Modify
  GroupPattern where;                       // Modify
  GraphTarget target;                       // CLEAR / DROP / CREATE
  GraphName source;                         // ADD / COPY / MOVE
  GraphName destination;                    // ADD / COPY / MOVE / LOAD
  std::string document;                     // LOAD source IRI or path

  static Update insertData(std::vector<Quad> quads);
  static Update deleteData(std::vector<Quad> quads);
  static Update modify(std::vector<QuadPattern> deletePatterns,
                       std::vector<QuadPattern> insertPatterns,
                       GroupPattern where);
  static Update deleteWhere(std::vector<QuadPattern> patterns);
  static Update clear(GraphTarget target);
  static Update drop(GraphTarget target);
  static Update create(GraphName graph);
  static Update add(GraphName source, GraphName destination);
  static Update copy(GraphName source, GraphName destination);
  static Update move(GraphName source, GraphName destination);
  static Update load(std::string document, GraphName destination);
};

// Structural equality; prefix maps are ignored.
bool operator==(const Update& a, const Update& b);

// Lays patterns out as a group: default-graph patterns as plain triples,
// consecutive patterns sharing a graph term inside one GRAPH block.
GroupPattern groupOfPatterns(const std::vector<QuadPattern>& patterns);

// Variables that may be bound by solutions of the group, in first-occurrence
// order (subselects contribute their projection only).
std::vector<std::string> inScopeVariables(const GroupPattern& group);

// Variables bound in every solution of the group: mandatory triple patterns,
// GRAPH variables and nested mandatory groups.
std::vector<std::string> certainlyBoundVariables(const GroupPattern& group);

std::string_view aggregateName(Aggregate aggregate);

}  // namespace quadgate
