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

#include "quadgate/sparql_ast.h"

#include <algorithm>

#include "quadgate/errors.h"

namespace quadgate {

Expression Expression::constant(Term value) {
  Expression e;
  e.term = std::move(value);
  return e;
}

Expression Expression::variable(std::string_view name) {
  return constant(Term::variable(name));
}

Expression Expression::bound(std::string_view name) {
  Expression e;
  e.op = Op::Bound;
  e.term = Term::variable(name);
  return e;
}

Expression Expression::compare(Op op, Expression left, Expression right) {
  Expression e;
  e.op = op;
  e.args.push_back(std::move(left));
  e.args.push_back(std::move(right));
  return e;
}

Expression Expression::negate(Expression operand) {
  Expression e;
  e.op = Op::Not;
  e.args.push_back(std::move(operand));
  return e;
}

namespace {

Expression nary(Expression::Op op, std::vector<Expression> operands) {
  if (operands.empty()) {
    throw InvalidArgument("empty conjunction or disjunction");
  }
  if (operands.size() == 1) return std::move(operands.front());
  Expression e;
  e.op = op;
  e.args = std::move(operands);
  return e;
}

void addUnique(std::vector<std::string>& out, const std::string& name) {
  if (std::find(out.begin(), out.end(), name) == out.end()) {
    out.push_back(name);
  }
}

void collectInScope(const GroupPattern& group, std::vector<std::string>& out);

void collectPattern(const QuadPattern& p, std::vector<std::string>& out) {
  for (const auto& v : p.variables()) addUnique(out, v);
}

void collectInScope(const GroupPattern& group, std::vector<std::string>& out) {
  for (const auto& element : group.elements) {
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, QuadPattern>) {
            collectPattern(e, out);
          } else if constexpr (std::is_same_v<T, GraphBlock>) {
            if (e.graph.isVariable()) addUnique(out, e.graph.value());
            collectInScope(*e.body, out);
          } else if constexpr (std::is_same_v<T, OptionalElement> ||
                               std::is_same_v<T, GroupElement>) {
            collectInScope(*e.body, out);
          } else if constexpr (std::is_same_v<T, UnionElement>) {
            for (const auto& branch : e.branches) collectInScope(branch, out);
          } else if constexpr (std::is_same_v<T, SubSelectElement>) {
            for (const auto& v : e.query->outputVariables()) addUnique(out, v);
          }
        },
        element);
  }
}

void collectCertain(const GroupPattern& group, std::vector<std::string>& out) {
  for (const auto& element : group.elements) {
    if (const auto* p = std::get_if<QuadPattern>(&element)) {
      collectPattern(*p, out);
    } else if (const auto* g = std::get_if<GraphBlock>(&element)) {
      if (g->graph.isVariable()) addUnique(out, g->graph.value());
      collectCertain(*g->body, out);
    } else if (const auto* n = std::get_if<GroupElement>(&element)) {
      collectCertain(*n->body, out);
    }
  }
}

}  // namespace

Expression Expression::conjunction(std::vector<Expression> operands) {
  return nary(Op::And, std::move(operands));
}

Expression Expression::disjunction(std::vector<Expression> operands) {
  return nary(Op::Or, std::move(operands));
}

bool operator==(const GraphBlock& a, const GraphBlock& b) {
  return a.graph == b.graph && a.body == b.body;
}
bool operator==(const FilterElement& a, const FilterElement& b) {
  return a.expression == b.expression;
}
bool operator==(const ExistsElement& a, const ExistsElement& b) {
  return a.negated == b.negated && a.body == b.body;
}
bool operator==(const MinusElement& a, const MinusElement& b) {
  return a.body == b.body;
}
bool operator==(const OptionalElement& a, const OptionalElement& b) {
  return a.body == b.body;
}
bool operator==(const UnionElement& a, const UnionElement& b) {
  return a.branches == b.branches;
}
bool operator==(const GroupElement& a, const GroupElement& b) {
  return a.body == b.body;
}
bool operator==(const SubSelectElement& a, const SubSelectElement& b) {
  return a.query == b.query;
}
bool operator==(const GroupPattern& a, const GroupPattern& b) {
  return a.elements == b.elements;
}

bool SelectQuery::hasAggregates() const {
  return std::any_of(projection.begin(), projection.end(),
                     [](const Projection& p) {
                       return p.aggregate != Aggregate::None;
                     });
}

std::vector<std::string> SelectQuery::outputVariables() const {
  if (!selectAll) {
    std::vector<std::string> out;
    for (const auto& p : projection) out.push_back(p.variable);
    return out;
  }
  return inScopeVariables(where);
}

bool operator==(const Query& a, const Query& b) {
  if (a.form != b.form) return false;
  switch (a.form) {
    case QueryForm::Select:
      return a.select == b.select;
    case QueryForm::Ask:
      return a.where == b.where;
    case QueryForm::Construct:
      return a.constructTemplate == b.constructTemplate && a.where == b.where;
    case QueryForm::Describe:
      return a.describeTargets == b.describeTargets &&
             a.hasWhere == b.hasWhere && (!a.hasWhere || a.where == b.where);
  }
  return false;
}

GraphTarget GraphTarget::of(const GraphName& graph) {
  GraphTarget t;
  if (graph.isDefault()) {
    t.kind = Kind::Default;
  } else {
    t.kind = Kind::Graph;
    t.graph = graph;
  }
  return t;
}

Update Update::insertData(std::vector<Quad> quads) {
  Update u;
  u.kind = UpdateKind::InsertData;
  u.data = std::move(quads);
  return u;
}

Update Update::deleteData(std::vector<Quad> quads) {
  Update u;
  u.kind = UpdateKind::DeleteData;
  u.data = std::move(quads);
  return u;
}

Update Update::modify(std::vector<QuadPattern> deletePatterns,
                      std::vector<QuadPattern> insertPatterns,
                      GroupPattern where) {
  Update u;
  u.kind = UpdateKind::Modify;
  u.deleteTemplate = std::move(deletePatterns);
  u.insertTemplate = std::move(insertPatterns);
  u.where = std::move(where);
  return u;
}

Update Update::deleteWhere(std::vector<QuadPattern> patterns) {
  Update u;
  u.kind = UpdateKind::DeleteWhere;
  u.deleteTemplate = std::move(patterns);
  return u;
}

Update Update::clear(GraphTarget target) {
  Update u;
  u.kind = UpdateKind::Clear;
  u.target = std::move(target);
  return u;
}

Update Update::drop(GraphTarget target) {
  Update u;
  u.kind = UpdateKind::Drop;
  u.target = std::move(target);
  return u;
}

Update Update::create(GraphName graph) {
  Update u;
  u.kind = UpdateKind::Create;
  u.target = GraphTarget::of(graph);
  return u;
}

namespace {
Update transfer(UpdateKind kind, GraphName source, GraphName destination) {
  Update u;
  u.kind = kind;
  u.source = std::move(source);
  u.destination = std::move(destination);
  return u;
}
}  // namespace

Update Update::add(GraphName source, GraphName destination) {
  return transfer(UpdateKind::Add, std::move(source), std::move(destination));
}

Update Update::copy(GraphName source, GraphName destination) {
  return transfer(UpdateKind::Copy, std::move(source), std::move(destination));
}

Update Update::move(GraphName source, GraphName destination) {
  return transfer(UpdateKind::Move, std::move(source), std::move(destination));
}

Update Update::load(std::string document, GraphName destination) {
  Update u;
  u.kind = UpdateKind::Load;
  u.document = std::move(document);
  u.destination = std::move(destination);
  return u;
}

bool operator==(const Update& a, const Update& b) {
  if (a.kind != b.kind || a.silent != b.silent) return false;
  switch (a.kind) {
    case UpdateKind::InsertData:
    case UpdateKind::DeleteData:
      return a.data == b.data;
    case UpdateKind::Modify:
      return a.deleteTemplate == b.deleteTemplate &&
             a.insertTemplate == b.insertTemplate && a.where == b.where;
    case UpdateKind::DeleteWhere:
      return a.deleteTemplate == b.deleteTemplate;
    case UpdateKind::Clear:
    case UpdateKind::Drop:
    case UpdateKind::Create:
      return a.target == b.target;
    case UpdateKind::Add:
    case UpdateKind::Copy:
    case UpdateKind::Move:
      return a.source == b.source && a.destination == b.destination;
    case UpdateKind::Load:
      return a.document == b.document && a.destination == b.destination;
  }
  return false;
}

GroupPattern groupOfPatterns(const std::vector<QuadPattern>& patterns) {
  GroupPattern group;
  for (const auto& p : patterns) {
    if (p.graph.isDefault()) {
      group.elements.emplace_back(p);
      continue;
    }
    auto* last = group.elements.empty()
                     ? nullptr
                     : std::get_if<GraphBlock>(&group.elements.back());
    if (last == nullptr || last->graph != p.graph) {
      group.elements.emplace_back(GraphBlock{p.graph, GroupPattern{}});
      last = std::get_if<GraphBlock>(&group.elements.back());
    }
    last->body->elements.emplace_back(p);
  }
  return group;
}

std::vector<std::string> inScopeVariables(const GroupPattern& group) {
  std::vector<std::string> out;
  collectInScope(group, out);
  return out;
}

std::vector<std::string> certainlyBoundVariables(const GroupPattern& group) {
  std::vector<std::string> out;
  collectCertain(group, out);
  return out;
}

std::string_view aggregateName(Aggregate aggregate) {
  switch (aggregate) {
    case Aggregate::Count:
      return "COUNT";
    case Aggregate::Sum:
      return "SUM";
    case Aggregate::Min:
      return "MIN";
    case Aggregate::Max:
      return "MAX";
    case Aggregate::Avg:
      return "AVG";
    case Aggregate::GroupConcat:
      return "GROUP_CONCAT";
    case Aggregate::Sample:
      return "SAMPLE";
    case Aggregate::None:
      break;
  }
  return "";
}

}  // namespace quadgate
