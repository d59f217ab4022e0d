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

#include <algorithm>

#include "quadgate/errors.h"
#include "quadgate/sparql.h"
#include "reader.h"

namespace quadgate {

namespace {

using detail::fail;
using detail::Token;
using detail::TokenKind;

constexpr std::string_view kUnsupportedKeywords[][2] = {
    {"BIND", "BIND"},         {"VALUES", "VALUES"},
    {"SERVICE", "SERVICE"},   {"FROM", "FROM clause"},
    {"LIMIT", "LIMIT"},       {"OFFSET", "OFFSET"},
    {"HAVING", "HAVING"},     {"REDUCED", "REDUCED"},
    {"WITH", "WITH clause"},  {"USING", "USING clause"},
    {"BASE", "BASE declaration"}};

class Parser {
 public:
  explicit Parser(std::string_view text) : in_(text) {}

  Query query() {
    prologue();
    Query q;
    const Token& start = in_.peek();
    if (in_.peek().isWord("SELECT")) {
      q.form = QueryForm::Select;
      q.select = selectQuery();
    } else if (in_.acceptWord("ASK")) {
      q.form = QueryForm::Ask;
      rejectDatasetClause();
      in_.acceptWord("WHERE");
      q.where = group(GraphTerm());
    } else if (in_.acceptWord("CONSTRUCT")) {
      q.form = QueryForm::Construct;
      if (in_.peek().isWord("WHERE")) {
        throw UnsupportedError("CONSTRUCT WHERE shorthand");
      }
      in_.expectPunct("{");
      while (!in_.acceptPunct("}")) {
        if (in_.peek().isWord("GRAPH")) {
          throw UnsupportedError("GRAPH inside a CONSTRUCT template");
        }
        triplesBlock(GraphTerm(), q.constructTemplate, true);
        in_.acceptPunct(".");
      }
      rejectDatasetClause();
      in_.acceptWord("WHERE");
      q.where = group(GraphTerm());
    } else if (in_.acceptWord("DESCRIBE")) {
      q.form = QueryForm::Describe;
      if (in_.peek().isPunct("*")) throw UnsupportedError("DESCRIBE *");
      while (in_.peek().kind == TokenKind::Var || in_.atIri()) {
        q.describeTargets.push_back(varOrIri());
      }
      if (q.describeTargets.empty()) {
        fail(in_.peek(), "expected a resource to describe");
      }
      rejectDatasetClause();
      if (in_.acceptWord("WHERE") || in_.peek().isPunct("{")) {
        q.where = group(GraphTerm());
      } else {
        q.hasWhere = false;
        for (const auto& t : q.describeTargets) {
          if (t.isVariable()) {
            fail(start, "DESCRIBE of a variable requires a WHERE clause");
          }
        }
      }
    } else {
      fail(in_.peek(), "expected SELECT, ASK, CONSTRUCT or DESCRIBE but found " +
                           detail::describe(in_.peek()));
    }
    rejectTrailingModifiers();
    expectEnd();
    q.prefixes = in_.prefixes();
    return q;
  }

  std::vector<Update> updates() {
    std::vector<Update> out;
    prologue();
    while (!in_.atEnd()) {
      out.push_back(update());
      if (!in_.acceptPunct(";")) break;
      prologue();
    }
    expectEnd();
    for (auto& u : out) u.prefixes = in_.prefixes();
    return out;
  }

 private:
  void expectEnd() {
    if (!in_.atEnd()) {
      checkUnsupportedKeyword();
      fail(in_.peek(), "unexpected " + detail::describe(in_.peek()));
    }
  }

  void checkUnsupportedKeyword() {
    for (const auto& [keyword, name] : kUnsupportedKeywords) {
      if (in_.peek().isWord(keyword)) throw UnsupportedError(std::string(name));
    }
  }

  void prologue() {
    while (true) {
      if (in_.acceptWord("PREFIX")) {
        in_.readPrefixDeclaration();
      } else if (in_.peek().isWord("BASE")) {
        throw UnsupportedError("BASE declaration");
      } else {
        return;
      }
    }
  }

  void rejectDatasetClause() {
    if (in_.peek().isWord("FROM")) throw UnsupportedError("FROM clause");
  }

  void rejectTrailingModifiers() {
    for (std::string_view w : {"LIMIT", "OFFSET", "HAVING", "VALUES"}) {
      if (in_.peek().isWord(w)) checkUnsupportedKeyword();
    }
  }

  Term varOrIri() {
    if (in_.peek().kind == TokenKind::Var) {
      return Term::variable(in_.next().text);
    }
    return Term::iri(in_.readIri());
  }

  std::string variableName() {
    const Token& t = in_.next();
    if (t.kind != TokenKind::Var) {
      fail(t, "expected a variable but found " + detail::describe(t));
    }
    return t.text;
  }

  // ---- SELECT ----

  // Subqueries inherit the enclosing graph context for their patterns.
  SelectQuery selectQuery(const GraphTerm& context = GraphTerm()) {
    const Token& start = in_.peek();
    in_.expectWord("SELECT");
    SelectQuery s;
    if (in_.peek().isWord("REDUCED")) throw UnsupportedError("REDUCED");
    s.distinct = in_.acceptWord("DISTINCT");
    if (in_.acceptPunct("*")) {
      s.selectAll = true;
    } else {
      while (in_.peek().kind == TokenKind::Var || in_.peek().isPunct("(")) {
        if (in_.peek().kind == TokenKind::Var) {
          Projection p;
          p.variable = in_.next().text;
          s.projection.push_back(std::move(p));
        } else {
          s.projection.push_back(aggregateProjection());
        }
      }
      if (s.projection.empty()) {
        fail(in_.peek(), "expected a projection but found " +
                             detail::describe(in_.peek()));
      }
    }
    rejectDatasetClause();
    in_.acceptWord("WHERE");
    s.where = group(context);
    if (in_.acceptWord("GROUP")) {
      in_.expectWord("BY");
      do {
        if (in_.peek().isPunct("(")) {
          throw UnsupportedError("GROUP BY expression");
        }
        s.groupBy.push_back(variableName());
      } while (in_.peek().kind == TokenKind::Var || in_.peek().isPunct("("));
    }
    if (in_.peek().isWord("HAVING")) throw UnsupportedError("HAVING");
    if (in_.acceptWord("ORDER")) {
      in_.expectWord("BY");
      do {
        OrderKey key;
        bool explicitDirection = in_.peek().isWord("ASC") ||
                                 in_.peek().isWord("DESC");
        if (explicitDirection) {
          key.descending = in_.next().isWord("DESC");
          in_.expectPunct("(");
          key.variable = variableName();
          in_.expectPunct(")");
        } else if (in_.peek().kind == TokenKind::Var) {
          key.variable = in_.next().text;
        } else {
          fail(in_.peek(), "expected an ORDER BY key but found " +
                               detail::describe(in_.peek()));
        }
        s.orderBy.push_back(std::move(key));
      } while (in_.peek().kind == TokenKind::Var || in_.peek().isWord("ASC") ||
               in_.peek().isWord("DESC"));
    }
    rejectTrailingModifiers();
    validateGrouping(s, start);
    return s;
  }

  void validateGrouping(const SelectQuery& s, const Token& at) {
    std::vector<std::string> seen;
    for (const auto& p : s.projection) {
      if (std::find(seen.begin(), seen.end(), p.variable) != seen.end()) {
        fail(at, "variable ?" + p.variable + " projected twice");
      }
      seen.push_back(p.variable);
    }
    if (!s.hasAggregates() && s.groupBy.empty()) return;
    if (s.selectAll) fail(at, "SELECT * cannot be combined with grouping");
    for (const auto& p : s.projection) {
      if (p.aggregate != Aggregate::None) continue;
      if (std::find(s.groupBy.begin(), s.groupBy.end(), p.variable) ==
          s.groupBy.end()) {
        fail(at, "projected variable ?" + p.variable +
                     " is not in GROUP BY");
      }
    }
  }

  Projection aggregateProjection() {
    in_.expectPunct("(");
    const Token& name = in_.next();
    static constexpr std::pair<std::string_view, Aggregate> kAggregates[] = {
        {"COUNT", Aggregate::Count},
        {"SUM", Aggregate::Sum},
        {"MIN", Aggregate::Min},
        {"MAX", Aggregate::Max},
        {"AVG", Aggregate::Avg},
        {"GROUP_CONCAT", Aggregate::GroupConcat},
        {"SAMPLE", Aggregate::Sample}};
    Projection p;
    for (const auto& [keyword, aggregate] : kAggregates) {
      if (name.isWord(keyword)) p.aggregate = aggregate;
    }
    if (p.aggregate == Aggregate::None) {
      if (name.kind == TokenKind::Word) {
        throw UnsupportedError("function call " + name.text);
      }
      throw UnsupportedError("projection expression");
    }
    in_.expectPunct("(");
    p.distinct = in_.acceptWord("DISTINCT");
    if (p.aggregate == Aggregate::Count && in_.acceptPunct("*")) {
      p.argument.reset();
    } else {
      if (in_.peek().kind != TokenKind::Var) {
        throw UnsupportedError("aggregate over an expression");
      }
      p.argument = in_.next().text;
    }
    if (p.aggregate == Aggregate::GroupConcat && in_.acceptPunct(";")) {
      in_.expectWord("SEPARATOR");
      in_.expectPunct("=");
      const Token& sep = in_.next();
      if (sep.kind != TokenKind::String) fail(sep, "expected a separator");
      p.separator = sep.text;
    }
    in_.expectPunct(")");
    if (!in_.peek().isWord("AS")) {
      fail(in_.peek(), "aggregate requires AS ?alias");
    }
    in_.next();
    p.variable = variableName();
    in_.expectPunct(")");
    return p;
  }

  // ---- group graph patterns ----

  GroupPattern group(const GraphTerm& context) {
    in_.expectPunct("{");
    GroupPattern g;
    if (in_.peek().isWord("SELECT")) {
      g.elements.emplace_back(subSelect(context));
      in_.expectPunct("}");
      return g;
    }
    while (!in_.acceptPunct("}")) {
      if (in_.acceptPunct(".")) continue;
      element(g, context);
    }
    return g;
  }

  SubSelectElement subSelect(const GraphTerm& context) {
    return SubSelectElement{selectQuery(context)};
  }

  void element(GroupPattern& g, const GraphTerm& context) {
    const Token& t = in_.peek();
    if (t.isWord("GRAPH")) {
      in_.next();
      Term name = varOrIri();
      GraphTerm graph = GraphTerm::fromTerm(name);
      GroupPattern body = group(graph);
      g.elements.emplace_back(GraphBlock{graph, std::move(body)});
    } else if (t.isWord("OPTIONAL")) {
      in_.next();
      g.elements.emplace_back(OptionalElement{group(context)});
    } else if (t.isWord("MINUS")) {
      in_.next();
      g.elements.emplace_back(MinusElement{group(context)});
    } else if (t.isWord("FILTER")) {
      in_.next();
      filter(g, context);
    } else if (t.isPunct("{")) {
      if (in_.peek(1).isWord("SELECT")) {
        in_.next();
        g.elements.emplace_back(subSelect(context));
        in_.expectPunct("}");
        if (in_.peek().isWord("UNION")) {
          throw UnsupportedError("UNION with a subquery branch");
        }
        return;
      }
      GroupPattern first = group(context);
      if (!in_.peek().isWord("UNION")) {
        g.elements.emplace_back(GroupElement{std::move(first)});
        return;
      }
      UnionElement u;
      u.branches.push_back(std::move(first));
      while (in_.acceptWord("UNION")) u.branches.push_back(group(context));
      g.elements.emplace_back(std::move(u));
    } else if (t.kind == TokenKind::Word && !t.isWord("a") &&
               !t.isWord("true") && !t.isWord("false")) {
      checkUnsupportedKeyword();
      fail(t, "unexpected " + detail::describe(t));
    } else {
      std::vector<QuadPattern> patterns;
      triplesBlock(context, patterns, true);
      for (auto& p : patterns) g.elements.emplace_back(std::move(p));
    }
  }

  void filter(GroupPattern& g, const GraphTerm& context) {
    if (in_.acceptWord("NOT")) {
      in_.expectWord("EXISTS");
      g.elements.emplace_back(ExistsElement{true, group(context)});
      return;
    }
    if (in_.acceptWord("EXISTS")) {
      g.elements.emplace_back(ExistsElement{false, group(context)});
      return;
    }
    Expression e;
    if (in_.acceptPunct("(")) {
      e = orExpression();
      in_.expectPunct(")");
    } else {
      e = primary();
      if (e.op == Expression::Op::Term) {
        fail(in_.peek(), "FILTER requires a parenthesised expression");
      }
    }
    g.elements.emplace_back(FilterElement{std::move(e)});
  }

  // Reads `subject predicate object` with ';' and ',' abbreviations, one
  // TriplesSameSubject. Patterns are recorded in `context`.
  void triplesBlock(const GraphTerm& context, std::vector<QuadPattern>& out,
                    bool allowVariables) {
    Term subject = patternTerm(allowVariables);
    do {
      if (in_.peek().isPunct(".") || in_.peek().isPunct("}")) break;
      if (in_.peek().isPunct("^") || in_.peek().isPunct("!") ||
          in_.peek().isPunct("(")) {
        throw UnsupportedError("property path");
      }
      Term predicate = Term::iri(kRdfType);
      if (!in_.acceptWord("a")) predicate = patternTerm(allowVariables);
      for (std::string_view op : {"/", "|", "*", "+", "?", "^"}) {
        if (in_.peek().isPunct(op)) throw UnsupportedError("property path");
      }
      do {
        const Token& at = in_.peek();
        Term object = patternTerm(allowVariables);
        try {
          out.push_back(QuadPattern::make(subject, predicate, object, context));
        } catch (const InvalidArgument& e) {
          fail(at, e.what());
        }
      } while (in_.acceptPunct(","));
    } while (in_.acceptPunct(";"));
  }

  Term patternTerm(bool allowVariables) {
    const Token& t = in_.peek();
    if (t.kind == TokenKind::Var) {
      if (!allowVariables) fail(t, "variables are not allowed here");
      return Term::variable(in_.next().text);
    }
    return in_.readTerm();
  }

  // ---- expressions ----

  Expression orExpression() {
    std::vector<Expression> operands{andExpression()};
    while (in_.acceptPunct("||")) operands.push_back(andExpression());
    return Expression::disjunction(std::move(operands));
  }

  Expression andExpression() {
    std::vector<Expression> operands{relational()};
    while (in_.acceptPunct("&&")) operands.push_back(relational());
    return Expression::conjunction(std::move(operands));
  }

  Expression relational() {
    Expression left = unary();
    static constexpr std::pair<std::string_view, Expression::Op> kOps[] = {
        {"=", Expression::Op::Equal},        {"!=", Expression::Op::NotEqual},
        {"<", Expression::Op::Less},         {"<=", Expression::Op::LessEqual},
        {">", Expression::Op::Greater},      {">=", Expression::Op::GreaterEqual}};
    for (const auto& [symbol, op] : kOps) {
      if (in_.acceptPunct(symbol)) {
        return Expression::compare(op, std::move(left), unary());
      }
    }
    if (in_.peek().isWord("IN") || in_.peek().isWord("NOT")) {
      throw UnsupportedError("IN expression");
    }
    return left;
  }

  Expression unary() {
    if (in_.acceptPunct("!")) return Expression::negate(unary());
    if (in_.peek().isPunct("+") || in_.peek().isPunct("-")) {
      throw UnsupportedError("arithmetic expression");
    }
    Expression e = primary();
    for (std::string_view op : {"+", "-", "*", "/"}) {
      if (in_.peek().isPunct(op)) throw UnsupportedError("arithmetic expression");
    }
    const Token& t = in_.peek();
    if ((t.kind == TokenKind::Integer || t.kind == TokenKind::Decimal) &&
        (t.text[0] == '+' || t.text[0] == '-')) {
      throw UnsupportedError("arithmetic expression");
    }
    return e;
  }

  Expression primary() {
    const Token& t = in_.peek();
    if (t.isPunct("(")) {
      in_.next();
      Expression e = orExpression();
      in_.expectPunct(")");
      return e;
    }
    if (t.kind == TokenKind::Var) {
      return Expression::variable(in_.next().text);
    }
    if (t.isWord("BOUND")) {
      in_.next();
      in_.expectPunct("(");
      std::string name = variableName();
      in_.expectPunct(")");
      return Expression::bound(name);
    }
    if (t.isWord("EXISTS") || t.isWord("NOT")) {
      throw UnsupportedError("EXISTS inside a larger expression");
    }
    if (in_.atIri()) {
      if (in_.peek(1).isPunct("(")) throw UnsupportedError("function call");
      return Expression::constant(Term::iri(in_.readIri()));
    }
    if (in_.atLiteral()) return Expression::constant(in_.readLiteral());
    if (t.kind == TokenKind::Word) {
      if (in_.peek(1).isPunct("(")) {
        throw UnsupportedError("function call " + t.text);
      }
    }
    fail(t, "expected an expression but found " + detail::describe(t));
  }

  // ---- updates ----

  Update update() {
    const Token& t = in_.peek();
    checkUnsupportedKeyword();
    if (in_.acceptWord("INSERT")) {
      if (in_.acceptWord("DATA")) return Update::insertData(quadData());
      auto inserts = quadTemplate();
      rejectUsing();
      in_.expectWord("WHERE");
      return Update::modify({}, std::move(inserts), group(GraphTerm()));
    }
    if (in_.acceptWord("DELETE")) {
      if (in_.acceptWord("DATA")) return Update::deleteData(quadData());
      if (in_.acceptWord("WHERE")) return Update::deleteWhere(quadTemplate());
      auto deletes = quadTemplate();
      std::vector<QuadPattern> inserts;
      if (in_.acceptWord("INSERT")) inserts = quadTemplate();
      rejectUsing();
      in_.expectWord("WHERE");
      return Update::modify(std::move(deletes), std::move(inserts),
                            group(GraphTerm()));
    }
    if (in_.acceptWord("LOAD")) {
      bool silent = in_.acceptWord("SILENT");
      std::string document = in_.readIri();
      GraphName destination;
      if (in_.acceptWord("INTO")) {
        in_.expectWord("GRAPH");
        destination = GraphName::named(in_.readIri());
      }
      Update u = Update::load(std::move(document), std::move(destination));
      u.silent = silent;
      return u;
    }
    if (in_.acceptWord("CLEAR") || in_.peek().isWord("DROP")) {
      bool isDrop = t.isWord("DROP");
      if (isDrop) in_.next();
      bool silent = in_.acceptWord("SILENT");
      GraphTarget target = graphRefAll();
      Update u = isDrop ? Update::drop(target) : Update::clear(target);
      u.silent = silent;
      return u;
    }
    if (in_.acceptWord("CREATE")) {
      bool silent = in_.acceptWord("SILENT");
      in_.expectWord("GRAPH");
      Update u = Update::create(GraphName::named(in_.readIri()));
      u.silent = silent;
      return u;
    }
    for (std::string_view keyword : {"ADD", "COPY", "MOVE"}) {
      if (!in_.acceptWord(keyword)) continue;
      bool silent = in_.acceptWord("SILENT");
      GraphName source = graphOrDefault();
      in_.expectWord("TO");
      GraphName destination = graphOrDefault();
      Update u = keyword == "ADD"    ? Update::add(source, destination)
                 : keyword == "COPY" ? Update::copy(source, destination)
                                     : Update::move(source, destination);
      u.silent = silent;
      return u;
    }
    fail(t, "expected an update operation but found " + detail::describe(t));
  }

  void rejectUsing() {
    if (in_.peek().isWord("USING")) throw UnsupportedError("USING clause");
  }

  GraphTarget graphRefAll() {
    GraphTarget target;
    if (in_.acceptWord("DEFAULT")) {
      target.kind = GraphTarget::Kind::Default;
    } else if (in_.acceptWord("NAMED")) {
      target.kind = GraphTarget::Kind::Named;
    } else if (in_.acceptWord("ALL")) {
      target.kind = GraphTarget::Kind::All;
    } else {
      in_.expectWord("GRAPH");
      target.kind = GraphTarget::Kind::Graph;
      target.graph = GraphName::named(in_.readIri());
    }
    return target;
  }

  GraphName graphOrDefault() {
    if (in_.acceptWord("DEFAULT")) return GraphName();
    in_.acceptWord("GRAPH");
    return GraphName::named(in_.readIri());
  }

  std::vector<QuadPattern> quadTemplate(bool allowVariables = true) {
    std::vector<QuadPattern> out;
    in_.expectPunct("{");
    while (!in_.acceptPunct("}")) {
      if (in_.acceptPunct(".")) continue;
      if (in_.acceptWord("GRAPH")) {
        GraphTerm graph;
        if (in_.peek().kind == TokenKind::Var) {
          if (!allowVariables) fail(in_.peek(), "variables are not allowed here");
          graph = GraphTerm::variable(in_.next().text);
        } else {
          graph = GraphTerm::named(in_.readIri());
        }
        in_.expectPunct("{");
        while (!in_.acceptPunct("}")) {
          if (in_.acceptPunct(".")) continue;
          triplesBlock(graph, out, allowVariables);
        }
        continue;
      }
      if (in_.peek().kind == TokenKind::Word && !in_.peek().isWord("a")) {
        checkUnsupportedKeyword();
        fail(in_.peek(), "unexpected " + detail::describe(in_.peek()));
      }
      triplesBlock(GraphTerm(), out, allowVariables);
    }
    return out;
  }

  std::vector<Quad> quadData() {
    std::vector<Quad> out;
    for (const auto& p : quadTemplate(false)) {
      out.push_back(Quad::make(p.subject, p.predicate, p.object,
                               p.graph.graphName()));
    }
    return out;
  }

  detail::TokenStream in_;
};

}  // namespace

Query parseQuery(std::string_view text) { return Parser(text).query(); }

std::vector<Update> parseUpdateRequest(std::string_view text) {
  return Parser(text).updates();
}

Update parseUpdate(std::string_view text) {
  auto updates = parseUpdateRequest(text);
  if (updates.size() != 1) {
    throw ParseError("expected exactly one update operation, found " +
                         std::to_string(updates.size()),
                     1, 1);
  }
  return std::move(updates.front());
}

}  // namespace quadgate
