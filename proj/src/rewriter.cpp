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

#include "quadgate/rewriter.h"

#include <algorithm>
#include <set>

#include "quadgate/errors.h"

namespace quadgate {

namespace {

using Op = Expression::Op;

Expression equality(const std::string& variable, const Term& value) {
  return Expression::compare(Op::Equal, Expression::variable(variable),
                             Expression::constant(value));
}

void appendUnique(std::vector<Element>& out, Element element) {
  if (std::find(out.begin(), out.end(), element) == out.end()) {
    out.push_back(std::move(element));
  }
}

ExistsElement notExists(const std::vector<QuadPattern>& patterns,
                        const GraphTerm& graph,
                        std::vector<Expression> conditions) {
  GroupPattern inner;
  for (const auto& p : patterns) {
    QuadPattern copy = p;
    copy.graph = graph;
    inner.elements.emplace_back(std::move(copy));
  }
  if (!conditions.empty()) {
    inner.elements.emplace_back(
        FilterElement{Expression::conjunction(std::move(conditions))});
  }
  if (graph.isDefault()) return ExistsElement{true, std::move(inner)};
  GroupPattern body;
  body.elements.emplace_back(GraphBlock{graph, std::move(inner)});
  return ExistsElement{true, std::move(body)};
}

class QueryRewriter {
 public:
  explicit QueryRewriter(const Policy& policy) : policy_(policy) {}

  // Rewrites `g` in place. When `deferrable` (the group is a mandatory part
  // of a GRAPH ?g block), blocks for authorisations on a constant graph are
  // returned instead, to be appended where ?g is bound.
  std::vector<Element> group(GroupPattern& g, bool deferrable) {
    std::vector<Element> local;
    std::vector<Element> deferred;
    std::vector<QuadPattern> patterns;
    for (auto& element : g.elements) {
      if (auto* p = std::get_if<QuadPattern>(&element)) {
        patterns.push_back(*p);
      } else if (auto* b = std::get_if<GraphBlock>(&element)) {
        for (auto& e : group(*b->body, b->graph.isVariable())) {
          appendUnique(local, std::move(e));
        }
      } else if (auto* n = std::get_if<GroupElement>(&element)) {
        for (auto& e : group(*n->body, deferrable)) {
          appendUnique(deferred, std::move(e));
        }
      } else if (auto* o = std::get_if<OptionalElement>(&element)) {
        group(*o->body, false);
      } else if (auto* m = std::get_if<MinusElement>(&element)) {
        group(*m->body, false);
      } else if (auto* x = std::get_if<ExistsElement>(&element)) {
        group(*x->body, false);
      } else if (auto* u = std::get_if<UnionElement>(&element)) {
        for (auto& branch : u->branches) group(branch, false);
      } else if (auto* s = std::get_if<SubSelectElement>(&element)) {
        group(s->query->where, false);
      }
    }
    for (const auto& p : patterns) {
      for (const auto& hit : relevantAuthorisations(policy_, p)) {
        std::vector<Expression> conditions;
        for (const auto& b : hit.unification.bindings) {
          conditions.push_back(equality(b.variable, b.value));
        }
        const GraphTerm& authGraph = hit.authorisation.graph;
        if (!p.graph.isVariable() || authGraph.isVariable()) {
          appendUnique(local, notExists(patterns, p.graph, std::move(conditions)));
          continue;
        }
        // GRAPH ?g never ranges over the default graph.
        if (authGraph.isDefault()) continue;
        if (deferrable) {
          conditions.push_back(equality(p.graph.value(), authGraph.toTerm()));
          appendUnique(deferred, notExists(patterns, authGraph, std::move(conditions)));
        } else {
          appendUnique(local, notExists(patterns, authGraph, std::move(conditions)));
        }
      }
    }
    for (auto& e : local) {
      if (std::find(g.elements.begin(), g.elements.end(), e) == g.elements.end()) {
        g.elements.push_back(std::move(e));
      }
    }
    return deferred;
  }

 private:
  const Policy& policy_;
};

// ---- variable renaming (used to give template patterns private copies of
// the WHERE clause) ----

Term renamed(const Term& t, const std::string& prefix) {
  return t.isVariable() ? Term::variable(prefix + t.value()) : t;
}

void renameIn(Expression& e, const std::string& prefix) {
  if (e.term) e.term = renamed(*e.term, prefix);
  for (auto& a : e.args) renameIn(a, prefix);
}

void renameIn(QuadPattern& p, const std::string& prefix) {
  p.subject = renamed(p.subject, prefix);
  p.predicate = renamed(p.predicate, prefix);
  p.object = renamed(p.object, prefix);
  if (p.graph.isVariable()) p.graph = GraphTerm::variable(prefix + p.graph.value());
}

void renameIn(GroupPattern& g, const std::string& prefix);

void renameIn(SelectQuery& s, const std::string& prefix) {
  for (auto& p : s.projection) {
    p.variable = prefix + p.variable;
    if (p.argument) p.argument = prefix + *p.argument;
  }
  for (auto& v : s.groupBy) v = prefix + v;
  for (auto& k : s.orderBy) k.variable = prefix + k.variable;
  renameIn(s.where, prefix);
}

void renameIn(GroupPattern& g, const std::string& prefix) {
  for (auto& element : g.elements) {
    std::visit(
        [&](auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, QuadPattern>) {
            renameIn(e, prefix);
          } else if constexpr (std::is_same_v<T, GraphBlock>) {
            if (e.graph.isVariable()) {
              e.graph = GraphTerm::variable(prefix + e.graph.value());
            }
            renameIn(*e.body, prefix);
          } else if constexpr (std::is_same_v<T, FilterElement>) {
            renameIn(e.expression, prefix);
          } else if constexpr (std::is_same_v<T, UnionElement>) {
            for (auto& b : e.branches) renameIn(b, prefix);
          } else if constexpr (std::is_same_v<T, SubSelectElement>) {
            renameIn(*e.query, prefix);
          } else {
            renameIn(*e.body, prefix);
          }
        },
        element);
  }
}

// ---- updates ----

// Positions that, when all equal to their constants, make an instantiated
// template pattern denied by one authorisation.
using Denial = std::vector<std::pair<std::string, Term>>;

struct TemplateItem {
  QuadPattern pattern;
  bool insert = false;
  std::vector<Denial> denials;
};

const std::string kS = "__s";
const std::string kP = "__p";
const std::string kO = "__o";
const std::string kG = "__g";

QuadPattern wholeGraph(const GraphTerm& graph) {
  return QuadPattern::make(Term::variable(kS), Term::variable(kP),
                           Term::variable(kO), graph);
}

GraphTarget targetOf(const GraphName& graph) { return GraphTarget::of(graph); }

class UpdateRewriter {
 public:
  explicit UpdateRewriter(const Policy& policy) : policy_(policy) {}

  std::vector<Update> rewrite(const Update& u) {
    switch (u.kind) {
      case UpdateKind::InsertData:
      case UpdateKind::DeleteData: {
        Update out = u;
        out.data.clear();
        for (const auto& q : u.data) {
          if (!policy_.denies(q)) out.data.push_back(q);
        }
        return {out};
      }
      case UpdateKind::DeleteWhere:
        return deleteWhere(u);
      case UpdateKind::Modify:
        return modify(u);
      case UpdateKind::Clear:
      case UpdateKind::Drop:
        return graphLevel(u);
      case UpdateKind::Create:
        return {u};
      case UpdateKind::Add: {
        if (u.source == u.destination) return {};
        auto lowered = addLowering(u.source, u.destination);
        if (!lowered) return {u};
        return *lowered;
      }
      case UpdateKind::Copy:
      case UpdateKind::Move:
        return copyOrMove(u);
      case UpdateKind::Load:
        return load(u);
    }
    return {u};
  }

 private:
  GroupPattern rewriteWhere(const GroupPattern& where) const {
    GroupPattern out = where;
    QueryRewriter(policy_).group(out, false);
    return out;
  }

  std::vector<Update> deleteWhere(const Update& u) const {
    std::vector<QuadPattern> kept;
    std::vector<QuadPattern> open;
    std::vector<Quad> ground;
    for (const auto& p : u.deleteTemplate) {
      if (!p.isGround()) {
        open.push_back(p);
        kept.push_back(p);
        continue;
      }
      Quad q{p.subject, p.predicate, p.object, p.graph.graphName()};
      if (policy_.denies(q)) continue;
      ground.push_back(q);
      kept.push_back(p);
    }
    Update pruned = Update::deleteWhere(kept);
    pruned.prefixes = u.prefixes;
    if (open.empty()) return {pruned};
    GroupPattern layout = groupOfPatterns(open);
    GroupPattern where = rewriteWhere(layout);
    if (where == layout) return {pruned};
    // Matched quads are exactly the authorised instantiations, so the
    // template needs no guard.
    std::vector<Update> out{withPrefixes(Update::modify(open, {}, where), u)};
    if (!ground.empty()) out.push_back(withPrefixes(Update::deleteData(ground), u));
    return out;
  }

  static Update withPrefixes(Update out, const Update& from) {
    out.prefixes = from.prefixes;
    return out;
  }

  // nullopt: drop the pattern, every instantiation is denied.
  std::optional<std::vector<Denial>> denialsOf(const QuadPattern& p) const {
    std::vector<Denial> out;
    if (p.isGround()) {
      Quad q{p.subject, p.predicate, p.object, p.graph.graphName()};
      if (policy_.denies(q)) return std::nullopt;
      return out;
    }
    for (const auto& hit : relevantAuthorisations(policy_, p)) {
      Denial d;
      for (const auto& b : hit.unification.bindings) d.emplace_back(b.variable, b.value);
      if (const auto& gb = hit.unification.graphBinding) {
        // Instantiated graph variables always name a graph.
        if (gb->graph.isDefault()) continue;
        d.emplace_back(gb->variable, gb->graph.toTerm());
      }
      if (d.empty()) return std::nullopt;
      out.push_back(std::move(d));
    }
    return out;
  }

  static Expression guard(const std::vector<Denial>& denials,
                          const std::vector<std::string>& certain,
                          const std::string& prefix) {
    std::vector<Expression> allowed;
    for (const auto& denial : denials) {
      std::vector<Expression> conditions;
      for (const auto& [variable, value] : denial) {
        std::string name = prefix + variable;
        if (std::find(certain.begin(), certain.end(), name) == certain.end()) {
          conditions.push_back(Expression::bound(name));
        }
        conditions.push_back(equality(name, value));
      }
      allowed.push_back(Expression::negate(Expression::conjunction(std::move(conditions))));
    }
    return Expression::conjunction(std::move(allowed));
  }

  std::vector<Update> modify(const Update& u) const {
    GroupPattern where = rewriteWhere(u.where);
    std::vector<TemplateItem> items;
    auto collect = [&](const std::vector<QuadPattern>& patterns, bool insert) {
      for (const auto& p : patterns) {
        auto denials = denialsOf(p);
        if (denials) items.push_back({p, insert, std::move(*denials)});
      }
    };
    collect(u.deleteTemplate, false);
    collect(u.insertTemplate, true);
    if (items.empty()) return {};

    std::vector<QuadPattern> deletes;
    std::vector<QuadPattern> inserts;
    auto emit = [&](const QuadPattern& p, bool insert) {
      (insert ? inserts : deletes).push_back(p);
    };
    std::size_t guarded = std::count_if(items.begin(), items.end(),
                                        [](const TemplateItem& i) { return !i.denials.empty(); });
    if (guarded == 0 || items.size() == 1) {
      for (const auto& item : items) emit(item.pattern, item.insert);
      if (guarded == 1) {
        where.elements.emplace_back(
            FilterElement{guard(items[0].denials, certainlyBoundVariables(where), "")});
      }
      return {withPrefixes(Update::modify(deletes, inserts, where), u)};
    }

    // Each guarded template pattern reads its own renamed copy of the WHERE
    // clause, so a guard only suppresses that pattern's instantiations.
    UnionElement branches;
    bool plain = false;
    for (const auto& item : items) {
      if (item.denials.empty()) {
        emit(item.pattern, item.insert);
        plain = true;
      }
    }
    if (plain) branches.branches.push_back(where);
    std::size_t index = 0;
    for (const auto& item : items) {
      if (item.denials.empty()) continue;
      std::string prefix = "__t" + std::to_string(++index) + "_";
      GroupPattern branch = where;
      renameIn(branch, prefix);
      std::vector<std::string> certain = certainlyBoundVariables(branch);
      branch.elements.emplace_back(FilterElement{guard(item.denials, certain, prefix)});
      branches.branches.push_back(std::move(branch));
      QuadPattern p = item.pattern;
      renameIn(p, prefix);
      emit(p, item.insert);
    }
    GroupPattern top;
    top.elements.emplace_back(std::move(branches));
    return {withPrefixes(Update::modify(deletes, inserts, top), u)};
  }

  // DELETE of the authorised quads of one graph; nullopt when no
  // authorisation applies and the original operation can run as is.
  std::optional<Update> lowerGraph(const GraphTerm& graph, const Update& u) const {
    QuadPattern all = wholeGraph(graph);
    GroupPattern layout = groupOfPatterns({all});
    GroupPattern where = rewriteWhere(layout);
    if (where == layout) return std::nullopt;
    return withPrefixes(Update::modify({all}, {}, where), u);
  }

  std::vector<Update> graphLevel(const Update& u) const {
    auto passthrough = [&](GraphTarget target) {
      Update out = u;
      out.target = target;
      return out;
    };
    auto part = [&](const GraphTerm& graph, GraphTarget target,
                    std::vector<Update>& out) {
      auto lowered = lowerGraph(graph, u);
      out.push_back(lowered ? *lowered : passthrough(target));
      return lowered.has_value();
    };
    std::vector<Update> out;
    bool changed = false;
    GraphTarget defaultTarget;
    GraphTarget namedTarget;
    namedTarget.kind = GraphTarget::Kind::Named;
    switch (u.target.kind) {
      case GraphTarget::Kind::Graph:
        changed = part(GraphTerm(u.target.graph), u.target, out);
        break;
      case GraphTarget::Kind::Default:
        changed = part(GraphTerm(), u.target, out);
        break;
      case GraphTarget::Kind::Named:
        changed = part(GraphTerm::variable(kG), u.target, out);
        break;
      case GraphTarget::Kind::All:
        changed = part(GraphTerm(), defaultTarget, out);
        changed = part(GraphTerm::variable(kG), namedTarget, out) || changed;
        break;
    }
    if (!changed) return {u};
    return out;
  }

  std::vector<Update> clearGraph(const GraphName& graph, UpdateKind kind,
                                 const Update& u, bool& changed) const {
    Update op = withPrefixes(
        kind == UpdateKind::Drop ? Update::drop(targetOf(graph)) : Update::clear(targetOf(graph)), u);
    op.silent = true;
    auto lowered = graphLevel(op);
    changed = changed || lowered.size() != 1 || !(lowered[0] == op);
    return lowered;
  }

  // INSERT of the authorised quads of `source` that are not denied in
  // `destination`; nullopt when no authorisation applies.
  std::optional<std::vector<Update>> addLowering(const GraphName& source,
                                                 const GraphName& destination) const {
    Update m = Update::modify({}, {wholeGraph(GraphTerm(destination))},
                              groupOfPatterns({wholeGraph(GraphTerm(source))}));
    auto lowered = modify(m);
    if (lowered.size() == 1 && lowered[0] == m) return std::nullopt;
    return lowered;
  }

  std::vector<Update> copyOrMove(const Update& u) const {
    if (u.source == u.destination) return {};
    bool changed = false;
    std::vector<Update> out = clearGraph(u.destination, UpdateKind::Clear, u, changed);
    if (auto lowered = addLowering(u.source, u.destination)) {
      for (auto& op : *lowered) out.push_back(withPrefixes(op, u));
      changed = true;
    } else {
      out.push_back(withPrefixes(Update::add(u.source, u.destination), u));
    }
    if (u.kind == UpdateKind::Move) {
      for (auto& op : clearGraph(u.source, UpdateKind::Drop, u, changed)) {
        out.push_back(std::move(op));
      }
    }
    if (!changed) return {u};
    return out;
  }

  std::vector<Update> load(const Update& u) const {
    if (relevantAuthorisations(policy_, wholeGraph(GraphTerm(u.destination))).empty()) {
      return {u};
    }
    GraphName staging = GraphName::named(kStagingGraph);
    Update stage = withPrefixes(Update::load(u.document, staging), u);
    stage.silent = u.silent;
    std::vector<Update> out{stage};
    if (auto lowered = addLowering(staging, u.destination)) {
      for (auto& op : *lowered) out.push_back(withPrefixes(op, u));
    }
    Update drop = withPrefixes(Update::drop(targetOf(staging)), u);
    drop.silent = true;
    out.push_back(drop);
    return out;
  }

  const Policy& policy_;
};

// ---- baselines ----

void requireBasic(const GroupPattern& g) {
  for (const auto& element : g.elements) {
    if (std::holds_alternative<QuadPattern>(element)) continue;
    if (const auto* b = std::get_if<GraphBlock>(&element)) {
      requireBasic(*b->body);
      continue;
    }
    throw UnsupportedError("baseline rewriting of a non-BGP query");
  }
}

const SelectQuery& requireBasicSelect(const Query& query) {
  if (query.form != QueryForm::Select) {
    throw UnsupportedError("baseline rewriting of a non-SELECT query");
  }
  requireBasic(query.select.where);
  return query.select;
}

// Unification on subject/predicate/object only.
std::optional<Unification> unifyTriple(const QuadPattern& t, const QuadPattern& auth) {
  QuadPattern a = auth;
  a.graph = t.graph;
  return unifyPatterns(t, a);
}

Expression notEqualAny(const std::vector<Binding>& bindings) {
  std::vector<Expression> operands;
  for (const auto& b : bindings) {
    operands.push_back(Expression::compare(Op::NotEqual, Expression::variable(b.variable),
                                           Expression::constant(b.value)));
  }
  return Expression::disjunction(std::move(operands));
}

void neqGroup(GroupPattern& g, const Policy& policy) {
  std::vector<Element> filters;
  for (auto& element : g.elements) {
    if (auto* b = std::get_if<GraphBlock>(&element)) {
      neqGroup(*b->body, policy);
      continue;
    }
    const auto& t = std::get<QuadPattern>(element);
    for (const auto& auth : policy.patterns()) {
      auto u = unifyTriple(t, auth);
      if (!u || u->bindings.empty()) continue;
      appendUnique(filters, FilterElement{notEqualAny(u->bindings)});
    }
  }
  for (auto& f : filters) g.elements.push_back(std::move(f));
}

void optionalGroup(GroupPattern& g, const Policy& policy) {
  std::vector<Element> kept;
  std::vector<Element> demoted;
  for (auto& element : g.elements) {
    if (auto* b = std::get_if<GraphBlock>(&element)) {
      optionalGroup(*b->body, policy);
      kept.push_back(std::move(element));
      continue;
    }
    const auto& t = std::get<QuadPattern>(element);
    std::vector<Expression> conditions;
    bool removed = false;
    for (const auto& auth : policy.patterns()) {
      auto u = unifyTriple(t, auth);
      if (!u) continue;
      if (u->bindings.empty()) {
        removed = true;
        break;
      }
      conditions.push_back(notEqualAny(u->bindings));
    }
    if (removed) continue;
    if (conditions.empty()) {
      kept.push_back(std::move(element));
      continue;
    }
    GroupPattern body;
    body.elements.emplace_back(t);
    body.elements.emplace_back(FilterElement{Expression::conjunction(std::move(conditions))});
    demoted.emplace_back(OptionalElement{std::move(body)});
  }
  for (auto& d : demoted) kept.push_back(std::move(d));
  g.elements = std::move(kept);
}

}  // namespace

GroupPattern rewriteGroup(const GroupPattern& group, const Policy& policy) {
  GroupPattern out = group;
  QueryRewriter(policy).group(out, false);
  return out;
}

Query rewriteQuery(const Query& query, const Policy& policy) {
  Query out = query;
  QueryRewriter(policy).group(out.pattern(), false);
  return out;
}

std::vector<Update> rewriteUpdate(const Update& update, const Policy& policy) {
  return UpdateRewriter(policy).rewrite(update);
}

std::vector<Update> rewriteUpdates(const std::vector<Update>& updates,
                                   const Policy& policy) {
  std::vector<Update> out;
  for (const auto& u : updates) {
    for (auto& op : rewriteUpdate(u, policy)) out.push_back(std::move(op));
  }
  return out;
}

Query rewriteBaselineFilterNeq(const Query& query, const Policy& policy) {
  requireBasicSelect(query);
  Query out = query;
  neqGroup(out.select.where, policy);
  return out;
}

Query rewriteBaselineOptional(const Query& query, const Policy& policy) {
  requireBasicSelect(query);
  Query out = query;
  optionalGroup(out.select.where, policy);
  return out;
}

}  // namespace quadgate
