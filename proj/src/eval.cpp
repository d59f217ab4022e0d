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

#include "quadgate/eval.h"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "quadgate/errors.h"
#include "quadgate/rdf_io.h"

namespace quadgate {

namespace {

using Row = std::vector<std::optional<Term>>;

// Exact fixed-point value with 18 fractional digits for xsd:integer and
// xsd:decimal arithmetic, so aggregates do not depend on row order.
struct Fixed {
  static constexpr int kScale = 18;
  __int128 units = 0;

  static __int128 unit() {
    __int128 u = 1;
    for (int i = 0; i < kScale; ++i) u *= 10;
    return u;
  }

  static Fixed parse(const std::string& lexical) {
    Fixed f;
    bool negative = !lexical.empty() && lexical[0] == '-';
    std::size_t i = (!lexical.empty() && (lexical[0] == '-' || lexical[0] == '+'))
                        ? 1
                        : 0;
    __int128 whole = 0;
    for (; i < lexical.size() && lexical[i] != '.'; ++i) {
      whole = whole * 10 + (lexical[i] - '0');
    }
    __int128 fraction = 0;
    int digits = 0;
    if (i < lexical.size() && lexical[i] == '.') {
      for (++i; i < lexical.size() && digits < kScale; ++i, ++digits) {
        fraction = fraction * 10 + (lexical[i] - '0');
      }
    }
    for (; digits < kScale; ++digits) fraction *= 10;
    f.units = whole * unit() + fraction;
    if (negative) f.units = -f.units;
    return f;
  }

  static std::string digitsOf(__int128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
      s += static_cast<char>('0' + static_cast<int>(v % 10));
      v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
  }

  Term toInteger() const {
    __int128 whole = units / unit();
    return Term::integer((whole < 0 ? "-" : "") + digitsOf(whole < 0 ? -whole : whole));
  }

  Term toDecimal() const {
    __int128 magnitude = units < 0 ? -units : units;
    std::string fraction = digitsOf(magnitude % unit());
    fraction.insert(0, static_cast<std::size_t>(kScale) - fraction.size(), '0');
    return Term::decimal((units < 0 ? "-" : "") + digitsOf(magnitude / unit()) +
                         "." + fraction);
  }
};

int compareNumeric(const Term& a, const Term& b) {
  __int128 x = Fixed::parse(a.value()).units;
  __int128 y = Fixed::parse(b.value()).units;
  return x < y ? -1 : (x > y ? 1 : 0);
}

int datatypeRank(const Term& t) {
  if (t.isNumeric()) return 0;
  switch (t.datatype()) {
    case Datatype::Boolean:
      return 1;
    case Datatype::String:
      return 2;
    case Datatype::LangString:
      return 3;
    default:
      return 4;
  }
}

int kindRank(const Term& t) {
  if (t.isIri()) return 1;
  if (t.isLiteral()) return 2;
  return 0;
}

// Term equality extended to numeric values; terms from different value
// spaces are simply unequal.
bool termsEqual(const Term& a, const Term& b) {
  if (a == b) return true;
  if (a.isNumeric() && b.isNumeric()) return compareNumeric(a, b) == 0;
  return false;
}

std::optional<int> orderValues(const Term& a, const Term& b) {
  if (a.isNumeric() && b.isNumeric()) return compareNumeric(a, b);
  if (!a.isLiteral() || !b.isLiteral() || a.datatype() != b.datatype()) {
    return std::nullopt;
  }
  if (a.datatype() == Datatype::String || a.datatype() == Datatype::Boolean) {
    int c = a.value().compare(b.value());
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  return std::nullopt;
}

std::optional<bool> effectiveBoolean(const Term& t) {
  if (!t.isLiteral()) return std::nullopt;
  switch (t.datatype()) {
    case Datatype::Boolean:
      return t.value() == "true";
    case Datatype::Integer:
    case Datatype::Decimal:
      return Fixed::parse(t.value()).units != 0;
    case Datatype::String:
      return !t.value().empty();
    default:
      return std::nullopt;
  }
}

class VariableTable {
 public:
  int slot(const std::string& name) {
    auto [it, inserted] = slots_.emplace(name, static_cast<int>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }
  int find(const std::string& name) const {
    auto it = slots_.find(name);
    return it == slots_.end() ? -1 : it->second;
  }
  std::size_t size() const { return names_.size(); }

  void addTerm(const Term& t) {
    if (t.isVariable()) slot(t.value());
  }
  void addPattern(const QuadPattern& p) {
    for (const auto& v : p.variables()) slot(v);
  }
  void addExpression(const Expression& e) {
    if (e.term) addTerm(*e.term);
    for (const auto& a : e.args) addExpression(a);
  }
  void addSelect(const SelectQuery& s) {
    for (const auto& p : s.projection) {
      slot(p.variable);
      if (p.argument) slot(*p.argument);
    }
    for (const auto& v : s.groupBy) slot(v);
    for (const auto& k : s.orderBy) slot(k.variable);
    addGroup(s.where);
  }
  void addGroup(const GroupPattern& g) {
    for (const auto& element : g.elements) {
      std::visit(
          [&](const auto& e) {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, QuadPattern>) {
              addPattern(e);
            } else if constexpr (std::is_same_v<T, GraphBlock>) {
              if (e.graph.isVariable()) slot(e.graph.value());
              addGroup(*e.body);
            } else if constexpr (std::is_same_v<T, FilterElement>) {
              addExpression(e.expression);
            } else if constexpr (std::is_same_v<T, UnionElement>) {
              for (const auto& b : e.branches) addGroup(b);
            } else if constexpr (std::is_same_v<T, SubSelectElement>) {
              addSelect(*e.query);
            } else {
              addGroup(*e.body);
            }
          },
          element);
    }
  }

 private:
  std::unordered_map<std::string, int> slots_;
  std::vector<std::string> names_;
};

bool compatible(const Row& a, const Row& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i] && *a[i] != *b[i]) return false;
  }
  return true;
}

Row merge(const Row& a, const Row& b) {
  Row out = a;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!out[i] && b[i]) out[i] = b[i];
  }
  return out;
}

bool sharesBinding(const Row& a, const Row& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] && b[i]) return true;
  }
  return false;
}

bool bindSlot(Row& row, int slot, const Term& value) {
  if (slot < 0) return true;
  auto& cell = row[static_cast<std::size_t>(slot)];
  if (cell) return *cell == value;
  cell = value;
  return true;
}

// A group that consists of triple patterns only (possibly inside GRAPH
// blocks and nested groups) can be evaluated once per incoming row with the
// row as seed, which is equivalent to evaluating it alone and joining.
bool correlatable(const GroupPattern& g, bool ignoreConditions) {
  for (const auto& element : g.elements) {
    if (std::holds_alternative<QuadPattern>(element)) continue;
    if (const auto* b = std::get_if<GraphBlock>(&element)) {
      if (!correlatable(*b->body, false)) return false;
    } else if (const auto* n = std::get_if<GroupElement>(&element)) {
      if (!correlatable(*n->body, false)) return false;
    } else if (ignoreConditions && (std::holds_alternative<FilterElement>(element) ||
                                    std::holds_alternative<ExistsElement>(element))) {
      continue;
    } else {
      return false;
    }
  }
  return true;
}

class Evaluator {
 public:
  Evaluator(const Dataset& dataset, VariableTable& vars)
      : data_(dataset), vars_(vars) {
    for (const auto& g : dataset.namedGraphs()) graphs_.emplace_back(g, g.toTerm());
  }

  Row emptyRow() const { return Row(vars_.size()); }

  std::vector<Row> group(const GroupPattern& g, const GraphName& graph,
                         const Row& seed, bool applyConditions = true) {
    std::vector<Row> rows{seed};
    std::vector<const Element*> conditions;
    for (const Element* ep : evaluationOrder(g, seed)) {
      const Element& element = *ep;
      if (std::holds_alternative<FilterElement>(element) ||
          std::holds_alternative<ExistsElement>(element)) {
        conditions.push_back(&element);
        continue;
      }
      if (rows.empty()) continue;
      if (const auto* p = std::get_if<QuadPattern>(&element)) {
        extend(*p, graph, rows);
      } else if (const auto* b = std::get_if<GraphBlock>(&element)) {
        if (correlatable(*b->body, false)) {
          std::vector<Row> out;
          for (const auto& row : rows) {
            auto part = graphBlock(*b, row);
            std::move(part.begin(), part.end(), std::back_inserter(out));
          }
          rows = std::move(out);
        } else {
          rows = join(rows, graphBlock(*b, seed));
        }
      } else if (const auto* n = std::get_if<GroupElement>(&element)) {
        if (correlatable(*n->body, false)) {
          std::vector<Row> out;
          for (const auto& row : rows) {
            auto part = group(*n->body, graph, row);
            std::move(part.begin(), part.end(), std::back_inserter(out));
          }
          rows = std::move(out);
        } else {
          rows = join(rows, group(*n->body, graph, seed));
        }
      } else if (const auto* o = std::get_if<OptionalElement>(&element)) {
        rows = leftJoin(rows, *o->body, graph, seed);
      } else if (const auto* m = std::get_if<MinusElement>(&element)) {
        rows = minus(rows, group(*m->body, graph, seed));
      } else if (const auto* u = std::get_if<UnionElement>(&element)) {
        std::vector<Row> all;
        for (const auto& branch : u->branches) {
          auto part = group(branch, graph, seed);
          std::move(part.begin(), part.end(), std::back_inserter(all));
        }
        rows = join(rows, all);
      } else if (const auto* s = std::get_if<SubSelectElement>(&element)) {
        rows = join(rows, select(*s->query, graph));
      }
    }
    if (applyConditions && !conditions.empty()) {
      std::vector<Row> kept;
      for (auto& row : rows) {
        if (passes(row, conditions, graph)) kept.push_back(std::move(row));
      }
      rows = std::move(kept);
    }
    return rows;
  }

  // Runs of adjacent triple patterns are reordered greedily, most bound
  // positions first; other elements keep their place.
  std::vector<const Element*> evaluationOrder(const GroupPattern& g, const Row& seed) const {
    std::vector<const Element*> order;
    order.reserve(g.elements.size());
    bool adjacent = false;
    for (std::size_t i = 1; i < g.elements.size() && !adjacent; ++i) {
      adjacent = std::holds_alternative<QuadPattern>(g.elements[i - 1]) &&
                 std::holds_alternative<QuadPattern>(g.elements[i]);
    }
    if (!adjacent) {
      for (const auto& e : g.elements) order.push_back(&e);
      return order;
    }
    std::vector<bool> bound(seed.size());
    for (std::size_t i = 0; i < seed.size(); ++i) bound[i] = seed[i].has_value();
    auto score = [&](const QuadPattern& p) {
      int n = 0;
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        int slot = slotOf(*t);
        n += slot < 0 || bound[static_cast<std::size_t>(slot)] ? 1 : 0;
      }
      return n;
    };
    auto bind = [&](const QuadPattern& p) {
      for (const Term* t : {&p.subject, &p.predicate, &p.object}) {
        int slot = slotOf(*t);
        if (slot >= 0) bound[static_cast<std::size_t>(slot)] = true;
      }
    };
    const auto& elements = g.elements;
    for (std::size_t i = 0; i < elements.size();) {
      if (!std::holds_alternative<QuadPattern>(elements[i])) {
        order.push_back(&elements[i++]);
        continue;
      }
      std::vector<const QuadPattern*> run;
      for (; i < elements.size() && std::holds_alternative<QuadPattern>(elements[i]); ++i) {
        run.push_back(&std::get<QuadPattern>(elements[i]));
      }
      std::vector<bool> used(run.size(), false);
      for (std::size_t k = 0; k < run.size(); ++k) {
        std::size_t best = run.size();
        for (std::size_t j = 0; j < run.size(); ++j) {
          if (!used[j] && (best == run.size() || score(*run[j]) > score(*run[best]))) best = j;
        }
        used[best] = true;
        bind(*run[best]);
        order.push_back(&elements[i - run.size() + best]);
      }
    }
    return order;
  }

  // Rows over the slot space with non-projected slots cleared.
  std::vector<Row> select(const SelectQuery& s, const GraphName& graph) {
    std::vector<Row> rows = group(s.where, graph, emptyRow());
    if (s.hasAggregates() || !s.groupBy.empty()) rows = aggregate(s, rows);
    if (!s.orderBy.empty()) {
      std::vector<std::pair<int, bool>> keys;
      for (const auto& k : s.orderBy) {
        keys.emplace_back(vars_.find(k.variable), k.descending);
      }
      std::stable_sort(rows.begin(), rows.end(),
                       [&](const Row& a, const Row& b) {
                         for (const auto& [slot, descending] : keys) {
                           int c = compareForOrder(a[static_cast<std::size_t>(slot)],
                                                   b[static_cast<std::size_t>(slot)]);
                           if (c != 0) return descending ? c > 0 : c < 0;
                         }
                         return false;
                       });
    }
    std::vector<bool> keep(vars_.size(), false);
    for (const auto& v : s.outputVariables()) {
      keep[static_cast<std::size_t>(vars_.slot(v))] = true;
    }
    for (auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (!keep[i]) row[i].reset();
      }
    }
    if (s.distinct) rows = distinct(std::move(rows));
    return rows;
  }

  static std::vector<Row> distinct(std::vector<Row> rows) {
    std::set<Row> seen;
    std::vector<Row> out;
    for (auto& row : rows) {
      if (seen.insert(row).second) out.push_back(std::move(row));
    }
    return out;
  }

  std::optional<Term> resolve(const Term& t, const Row& row) const {
    if (!t.isVariable()) return t;
    int slot = vars_.find(t.value());
    if (slot < 0) return std::nullopt;
    return row[static_cast<std::size_t>(slot)];
  }

  // Ground quad from a template pattern, or nullopt when a position is
  // unbound or the result is not a valid quad.
  std::optional<Quad> instantiate(const QuadPattern& p, const Row& row) const {
    auto s = resolve(p.subject, row);
    auto pr = resolve(p.predicate, row);
    auto o = resolve(p.object, row);
    if (!s || !pr || !o || !s->isIri() || !pr->isIri()) return std::nullopt;
    GraphName graph;
    if (p.graph.isVariable()) {
      auto g = resolve(p.graph.toTerm(), row);
      if (!g || !g->isIri()) return std::nullopt;
      graph = GraphName::named(g->value());
    } else {
      graph = p.graph.graphName();
    }
    return Quad{*s, *pr, *o, graph};
  }

 private:
  int slotOf(const Term& t) const {
    return t.isVariable() ? vars_.find(t.value()) : -1;
  }

  const Term* lookupTerm(const Term& t, int slot, const Row& row) const {
    if (slot < 0) return &t;
    const auto& cell = row[static_cast<std::size_t>(slot)];
    return cell ? &*cell : nullptr;
  }

  using ObjectIndex = std::vector<std::pair<const Term*, const Triple*>>;

  const ObjectIndex& objectIndex(const TripleSet& triples) const {
    auto [it, inserted] = objectIndexes_.try_emplace(&triples);
    if (inserted) {
      for (const auto& t : triples) it->second.emplace_back(&t.object, &t);
      std::stable_sort(it->second.begin(), it->second.end(),
                       [](const auto& a, const auto& b) { return *a.first < *b.first; });
    }
    return it->second;
  }

  void extend(const QuadPattern& p, const GraphName& graph,
              std::vector<Row>& rows) const {
    const TripleSet& triples = data_.graphTriples(graph);
    int ss = slotOf(p.subject);
    int ps = slotOf(p.predicate);
    int os = slotOf(p.object);
    std::vector<Row> out;
    for (const auto& row : rows) {
      const Term* s = lookupTerm(p.subject, ss, row);
      const Term* pr = lookupTerm(p.predicate, ps, row);
      const Term* o = lookupTerm(p.object, os, row);
      auto visit = [&](const Triple& t) {
        if (pr != nullptr && t.predicate != *pr) return;
        if (o != nullptr && t.object != *o) return;
        Row next = row;
        if (bindSlot(next, ss, t.subject) && bindSlot(next, ps, t.predicate) &&
            bindSlot(next, os, t.object)) {
          out.push_back(std::move(next));
        }
      };
      if (s != nullptr) {
        auto range = triples.equal_range(TripleOrder::Prefix{s, pr});
        for (auto it = range.first; it != range.second; ++it) visit(*it);
      } else if (o != nullptr) {
        const auto& index = objectIndex(triples);
        auto first = std::lower_bound(index.begin(), index.end(), *o,
                                      [](const auto& e, const Term& t) { return *e.first < t; });
        for (auto it = first; it != index.end() && *it->first == *o; ++it) visit(*it->second);
      } else {
        for (const auto& t : triples) visit(t);
      }
    }
    rows = std::move(out);
  }

  std::vector<Row> graphBlock(const GraphBlock& block, const Row& seed) {
    if (!block.graph.isVariable()) {
      GraphName graph = block.graph.graphName();
      if (!data_.hasGraph(graph)) return {};
      return group(*block.body, graph, seed);
    }
    auto slot = static_cast<std::size_t>(vars_.find(block.graph.value()));
    std::vector<Row> out;
    auto run = [&](const GraphName& graph, const Term& name) {
      for (auto& row : group(*block.body, graph, seed)) {
        if (row[slot] && *row[slot] != name) continue;
        row[slot] = name;
        out.push_back(std::move(row));
      }
    };
    for (const auto& [graph, name] : graphs_) {
      if (!seed[slot] || *seed[slot] == name) run(graph, name);
    }
    return out;
  }

  static std::vector<Row> join(const std::vector<Row>& left,
                               const std::vector<Row>& right) {
    std::vector<Row> out;
    auto keys = sharedKeySlots(left, right);
    if (keys.empty()) {
      for (const auto& l : left) {
        for (const auto& r : right) {
          if (compatible(l, r)) out.push_back(merge(l, r));
        }
      }
      return out;
    }
    auto index = indexRows(right, keys);
    for (const auto& l : left) {
      auto it = index.find(keyOf(l, keys));
      if (it == index.end()) continue;
      for (const Row* r : it->second) {
        if (compatible(l, *r)) out.push_back(merge(l, *r));
      }
    }
    return out;
  }

  // Slots bound in every row of both sides; rows that differ on one of them
  // are incompatible, so they can key a hash join.
  static std::vector<std::size_t> sharedKeySlots(const std::vector<Row>& left,
                                                 const std::vector<Row>& right) {
    if (left.empty() || right.empty()) return {};
    std::vector<std::size_t> keys;
    for (std::size_t i = 0; i < left.front().size(); ++i) {
      auto bound = [i](const Row& r) { return r[i].has_value(); };
      if (std::all_of(left.begin(), left.end(), bound) &&
          std::all_of(right.begin(), right.end(), bound)) {
        keys.push_back(i);
      }
    }
    return keys;
  }

  static std::vector<Term> keyOf(const Row& row, const std::vector<std::size_t>& keys) {
    std::vector<Term> key;
    key.reserve(keys.size());
    for (auto i : keys) key.push_back(*row[i]);
    return key;
  }

  static std::map<std::vector<Term>, std::vector<const Row*>> indexRows(
      const std::vector<Row>& rows, const std::vector<std::size_t>& keys) {
    std::map<std::vector<Term>, std::vector<const Row*>> index;
    for (const auto& r : rows) index[keyOf(r, keys)].push_back(&r);
    return index;
  }

  std::vector<Row> leftJoin(const std::vector<Row>& left,
                            const GroupPattern& body, const GraphName& graph,
                            const Row& seed) {
    std::vector<const Element*> conditions;
    for (const auto& element : body.elements) {
      if (std::holds_alternative<FilterElement>(element) ||
          std::holds_alternative<ExistsElement>(element)) {
        conditions.push_back(&element);
      }
    }
    bool correlated = correlatable(body, true);
    std::vector<Row> shared;
    if (!correlated) shared = group(body, graph, seed, false);
    std::vector<Row> out;
    for (const auto& l : left) {
      std::vector<Row> own;
      if (correlated) own = group(body, graph, l, false);
      const auto& right = correlated ? own : shared;
      bool matched = false;
      for (const auto& r : right) {
        if (!compatible(l, r)) continue;
        Row m = merge(l, r);
        if (passes(m, conditions, graph)) {
          out.push_back(std::move(m));
          matched = true;
        }
      }
      if (!matched) out.push_back(l);
    }
    return out;
  }

  static std::vector<Row> minus(const std::vector<Row>& left,
                                const std::vector<Row>& right) {
    std::vector<Row> out;
    auto keys = sharedKeySlots(left, right);
    if (!keys.empty()) {
      auto index = indexRows(right, keys);
      for (const auto& l : left) {
        auto it = index.find(keyOf(l, keys));
        bool removed = it != index.end() &&
                       std::any_of(it->second.begin(), it->second.end(),
                                   [&](const Row* r) { return compatible(l, *r); });
        if (!removed) out.push_back(l);
      }
      return out;
    }
    for (const auto& l : left) {
      bool removed = std::any_of(right.begin(), right.end(), [&](const Row& r) {
        return compatible(l, r) && sharesBinding(l, r);
      });
      if (!removed) out.push_back(l);
    }
    return out;
  }

  bool passes(const Row& row, const std::vector<const Element*>& conditions,
              const GraphName& graph) {
    for (const Element* element : conditions) {
      if (const auto* f = std::get_if<FilterElement>(element)) {
        if (truth(f->expression, row) != true) return false;
      } else if (const auto* e = std::get_if<ExistsElement>(element)) {
        bool found = !group(*e->body, graph, row).empty();
        if (found == e->negated) return false;
      }
    }
    return true;
  }

  std::optional<Term> value(const Expression& e, const Row& row) const {
    if (e.op == Expression::Op::Term) return resolve(*e.term, row);
    auto t = truth(e, row);
    if (!t) return std::nullopt;
    return Term::boolean(*t);
  }

  std::optional<bool> truth(const Expression& e, const Row& row) const {
    using Op = Expression::Op;
    switch (e.op) {
      case Op::Term: {
        auto v = value(e, row);
        if (!v) return std::nullopt;
        return effectiveBoolean(*v);
      }
      case Op::Bound: {
        int slot = vars_.find(e.term->value());
        return slot >= 0 && row[static_cast<std::size_t>(slot)].has_value();
      }
      case Op::Not: {
        auto t = truth(e.args[0], row);
        if (!t) return std::nullopt;
        return !*t;
      }
      case Op::And:
      case Op::Or: {
        bool decisive = e.op == Op::Or;
        bool error = false;
        for (const auto& arg : e.args) {
          auto t = truth(arg, row);
          if (!t) {
            error = true;
          } else if (*t == decisive) {
            return decisive;
          }
        }
        if (error) return std::nullopt;
        return !decisive;
      }
      default:
        break;
    }
    auto a = value(e.args[0], row);
    auto b = value(e.args[1], row);
    if (!a || !b) return std::nullopt;
    if (e.op == Op::Equal) return termsEqual(*a, *b);
    if (e.op == Op::NotEqual) return !termsEqual(*a, *b);
    auto c = orderValues(*a, *b);
    if (!c) return std::nullopt;
    switch (e.op) {
      case Op::Less:
        return *c < 0;
      case Op::LessEqual:
        return *c <= 0;
      case Op::Greater:
        return *c > 0;
      default:
        return *c >= 0;
    }
  }

  std::vector<Row> aggregate(const SelectQuery& s, const std::vector<Row>& rows) {
    std::vector<std::size_t> keySlots;
    for (const auto& v : s.groupBy) {
      keySlots.push_back(static_cast<std::size_t>(vars_.slot(v)));
    }
    std::map<Row, std::vector<const Row*>> groups;
    for (const auto& row : rows) {
      Row key;
      for (auto slot : keySlots) key.push_back(row[slot]);
      groups[key].push_back(&row);
    }
    if (groups.empty() && s.groupBy.empty()) groups[Row{}];
    std::vector<Row> out;
    for (const auto& [key, members] : groups) {
      Row result = emptyRow();
      for (std::size_t i = 0; i < keySlots.size(); ++i) result[keySlots[i]] = key[i];
      for (const auto& p : s.projection) {
        if (p.aggregate == Aggregate::None) continue;
        result[static_cast<std::size_t>(vars_.slot(p.variable))] =
            fold(p, members);
      }
      out.push_back(std::move(result));
    }
    return out;
  }

  std::optional<Term> fold(const Projection& p,
                           const std::vector<const Row*>& members) const {
    if (p.aggregate == Aggregate::Count && !p.argument) {
      if (!p.distinct) return Term::integer(static_cast<std::int64_t>(members.size()));
      std::set<Row> unique;
      for (const Row* r : members) unique.insert(*r);
      return Term::integer(static_cast<std::int64_t>(unique.size()));
    }
    auto slot = static_cast<std::size_t>(vars_.find(*p.argument));
    std::vector<Term> values;
    for (const Row* r : members) {
      if ((*r)[slot]) values.push_back(*(*r)[slot]);
    }
    std::sort(values.begin(), values.end());
    if (p.distinct) values.erase(std::unique(values.begin(), values.end()), values.end());
    switch (p.aggregate) {
      case Aggregate::Count:
        return Term::integer(static_cast<std::int64_t>(values.size()));
      case Aggregate::Sum:
      case Aggregate::Avg: {
        Fixed total;
        bool allInteger = true;
        for (const auto& v : values) {
          if (!v.isNumeric()) return std::nullopt;
          allInteger = allInteger && v.datatype() == Datatype::Integer;
          total.units += Fixed::parse(v.value()).units;
        }
        if (p.aggregate == Aggregate::Sum) {
          return allInteger ? total.toInteger() : total.toDecimal();
        }
        if (values.empty()) return Term::integer(std::int64_t{0});
        total.units /= static_cast<__int128>(values.size());
        return total.toDecimal();
      }
      case Aggregate::Min:
      case Aggregate::Max: {
        if (values.empty()) return std::nullopt;
        const Term* best = &values.front();
        for (const auto& v : values) {
          int c = compareForOrder(v, *best);
          if (p.aggregate == Aggregate::Min ? c < 0 : c > 0) best = &v;
        }
        return *best;
      }
      case Aggregate::GroupConcat: {
        std::string joined;
        for (std::size_t i = 0; i < values.size(); ++i) {
          if (i > 0) joined += p.separator;
          joined += values[i].value();
        }
        return Term::string(joined);
      }
      case Aggregate::Sample:
        if (values.empty()) return std::nullopt;
        return values.front();
      case Aggregate::None:
        break;
    }
    return std::nullopt;
  }

  const Dataset& data_;
  std::vector<std::pair<GraphName, Term>> graphs_;
  mutable std::map<const TripleSet*, ObjectIndex> objectIndexes_;
  VariableTable& vars_;
};

}  // namespace

int compareForOrder(const std::optional<Term>& a, const std::optional<Term>& b) {
  if (!a || !b) return a ? 1 : (b ? -1 : 0);
  int ka = kindRank(*a);
  int kb = kindRank(*b);
  if (ka != kb) return ka < kb ? -1 : 1;
  if (a->isLiteral()) {
    int ra = datatypeRank(*a);
    int rb = datatypeRank(*b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 0) {
      int c = compareNumeric(*a, *b);
      if (c != 0) return c;
    }
  }
  auto c = *a <=> *b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

Solution ResultSet::aligned(const Solution& row,
                            const std::vector<std::string>& order) const {
  Solution out;
  out.reserve(order.size());
  for (const auto& name : order) {
    auto it = std::find(variables.begin(), variables.end(), name);
    out.push_back(it == variables.end()
                      ? std::nullopt
                      : row[static_cast<std::size_t>(it - variables.begin())]);
  }
  return out;
}

namespace {

std::vector<std::string> unionVariables(const ResultSet& a, const ResultSet& b) {
  std::vector<std::string> names = a.variables;
  for (const auto& v : b.variables) {
    if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
  }
  return names;
}

std::map<Solution, std::size_t> rowCounts(const ResultSet& r,
                                          const std::vector<std::string>& order) {
  std::map<Solution, std::size_t> counts;
  for (const auto& row : r.rows) ++counts[r.aligned(row, order)];
  return counts;
}

}  // namespace

bool resultsEqual(const ResultSet& a, const ResultSet& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ResultSet::Kind::Boolean:
      return a.boolean == b.boolean;
    case ResultSet::Kind::Graph:
      return a.triples == b.triples;
    case ResultSet::Kind::Bindings:
      break;
  }
  auto order = unionVariables(a, b);
  if (a.ordered || b.ordered) {
    if (a.rows.size() != b.rows.size()) return false;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
      if (a.aligned(a.rows[i], order) != b.aligned(b.rows[i], order)) return false;
    }
    return true;
  }
  return rowCounts(a, order) == rowCounts(b, order);
}

std::vector<Solution> rowsMissingFrom(const ResultSet& a, const ResultSet& b) {
  std::vector<Solution> out;
  if (a.kind != ResultSet::Kind::Bindings) return out;
  auto counts = rowCounts(b, a.variables);
  for (const auto& row : a.rows) {
    auto key = a.aligned(row, a.variables);
    auto it = counts.find(key);
    if (it == counts.end() || it->second == 0) {
      out.push_back(row);
    } else {
      --it->second;
    }
  }
  return out;
}

std::vector<Triple> triplesMissingFrom(const ResultSet& a, const ResultSet& b) {
  std::vector<Triple> out;
  for (const auto& t : a.triples) {
    if (b.triples.count(t) == 0) out.push_back(t);
  }
  return out;
}

bool resultsContained(const ResultSet& a, const ResultSet& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ResultSet::Kind::Boolean:
      return !a.boolean || b.boolean;
    case ResultSet::Kind::Graph:
      return triplesMissingFrom(a, b).empty();
    case ResultSet::Kind::Bindings:
      break;
  }
  return rowsMissingFrom(a, b).empty();
}

ResultSet evaluate(const Dataset& dataset, const Query& query) {
  VariableTable vars;
  if (query.form == QueryForm::Select) {
    vars.addSelect(query.select);
  } else {
    vars.addGroup(query.where);
    for (const auto& p : query.constructTemplate) vars.addPattern(p);
    for (const auto& t : query.describeTargets) vars.addTerm(t);
  }
  Evaluator ev(dataset, vars);
  ResultSet out;
  const GraphName defaultGraph;
  switch (query.form) {
    case QueryForm::Select: {
      auto rows = ev.select(query.select, defaultGraph);
      out.variables = query.select.outputVariables();
      out.ordered = !query.select.orderBy.empty();
      std::vector<std::size_t> slots;
      for (const auto& v : out.variables) {
        slots.push_back(static_cast<std::size_t>(vars.slot(v)));
      }
      for (const auto& row : rows) {
        Solution s;
        for (auto slot : slots) s.push_back(row[slot]);
        out.rows.push_back(std::move(s));
      }
      break;
    }
    case QueryForm::Ask:
      out.kind = ResultSet::Kind::Boolean;
      out.boolean = !ev.group(query.where, defaultGraph, ev.emptyRow()).empty();
      break;
    case QueryForm::Construct:
      out.kind = ResultSet::Kind::Graph;
      for (const auto& row : ev.group(query.where, defaultGraph, ev.emptyRow())) {
        for (const auto& p : query.constructTemplate) {
          if (auto q = ev.instantiate(p, row)) out.triples.insert(q->triple());
        }
      }
      break;
    case QueryForm::Describe: {
      out.kind = ResultSet::Kind::Graph;
      std::vector<Row> rows{ev.emptyRow()};
      if (query.hasWhere) rows = ev.group(query.where, defaultGraph, ev.emptyRow());
      std::set<Term> resources;
      for (const auto& row : rows) {
        for (const auto& t : query.describeTargets) {
          auto v = ev.resolve(t, row);
          if (v && v->isIri()) resources.insert(*v);
        }
      }
      for (const auto& graph : dataset.listGraphs()) {
        for (const auto& r : resources) {
          auto range = dataset.lookup(graph, r);
          for (auto it = range.first; it != range.second; ++it) {
            out.triples.insert(*it);
          }
        }
      }
      break;
    }
  }
  return out;
}

namespace {

std::vector<GraphName> targetGraphs(const Dataset& d, const GraphTarget& t) {
  switch (t.kind) {
    case GraphTarget::Kind::Graph:
      return {t.graph};
    case GraphTarget::Kind::Default:
      return {GraphName()};
    case GraphTarget::Kind::Named:
      return d.namedGraphs();
    case GraphTarget::Kind::All:
      return d.listGraphs();
  }
  return {};
}

std::string documentPath(const std::string& document) {
  constexpr std::string_view kFileScheme = "file://";
  if (document.rfind(kFileScheme, 0) == 0) {
    return document.substr(kFileScheme.size());
  }
  if (isAbsoluteIri(document) && document.find("://") != std::string::npos) {
    throw Error("cannot resolve document <" + document + ">");
  }
  return document;
}

void applyTemplates(Dataset& out, const Dataset& source,
                    const std::vector<QuadPattern>& deletes,
                    const std::vector<QuadPattern>& inserts,
                    const GroupPattern& where) {
  VariableTable vars;
  vars.addGroup(where);
  for (const auto& p : deletes) vars.addPattern(p);
  for (const auto& p : inserts) vars.addPattern(p);
  Evaluator ev(source, vars);
  auto rows = ev.group(where, GraphName(), ev.emptyRow());
  std::vector<Quad> removals;
  std::vector<Quad> additions;
  for (const auto& row : rows) {
    for (const auto& p : deletes) {
      if (auto q = ev.instantiate(p, row)) removals.push_back(*q);
    }
    for (const auto& p : inserts) {
      if (auto q = ev.instantiate(p, row)) additions.push_back(*q);
    }
  }
  for (const auto& q : removals) out.erase(q);
  for (const auto& q : additions) out.insert(q);
}

void copyGraph(Dataset& out, const Dataset& source, const GraphName& from,
               const GraphName& to) {
  out.createGraph(to);
  for (const auto& t : source.graphTriples(from)) {
    out.insert(Quad{t.subject, t.predicate, t.object, to});
  }
}

}  // namespace

Dataset executeUpdate(const Dataset& dataset, const Update& update) {
  Dataset out = dataset;
  switch (update.kind) {
    case UpdateKind::InsertData:
      for (const auto& q : update.data) out.insert(q);
      break;
    case UpdateKind::DeleteData:
      for (const auto& q : update.data) out.erase(q);
      break;
    case UpdateKind::Modify:
      applyTemplates(out, dataset, update.deleteTemplate, update.insertTemplate,
                     update.where);
      break;
    case UpdateKind::DeleteWhere: {
      // Ground patterns delete their quad directly; the remaining patterns
      // are matched jointly.
      std::vector<QuadPattern> open;
      for (const auto& p : update.deleteTemplate) {
        if (p.isGround()) {
          out.erase(Quad{p.subject, p.predicate, p.object, p.graph.graphName()});
        } else {
          open.push_back(p);
        }
      }
      if (!open.empty()) {
        applyTemplates(out, dataset, open, {}, groupOfPatterns(open));
      }
      break;
    }
    case UpdateKind::Clear:
      for (const auto& g : targetGraphs(dataset, update.target)) out.clearGraph(g);
      break;
    case UpdateKind::Drop:
      for (const auto& g : targetGraphs(dataset, update.target)) out.dropGraph(g);
      break;
    case UpdateKind::Create:
      out.createGraph(update.target.graph);
      break;
    case UpdateKind::Add:
    case UpdateKind::Copy:
    case UpdateKind::Move:
      if (update.source == update.destination) break;
      if (update.kind != UpdateKind::Add) out.dropGraph(update.destination);
      copyGraph(out, dataset, update.source, update.destination);
      if (update.kind == UpdateKind::Move) out.dropGraph(update.source);
      break;
    case UpdateKind::Load: {
      Dataset document;
      try {
        document = loadDataset(documentPath(update.document));
      } catch (const Error&) {
        if (update.silent) break;
        throw;
      }
      out.createGraph(update.destination);
      document.forEachQuad([&](const Quad& q) {
        out.insert(Quad{q.subject, q.predicate, q.object, update.destination});
      });
      break;
    }
  }
  return out;
}

Dataset executeUpdates(const Dataset& dataset,
                       const std::vector<Update>& updates) {
  Dataset current = dataset;
  for (const auto& u : updates) current = executeUpdate(current, u);
  return current;
}

}  // namespace quadgate
