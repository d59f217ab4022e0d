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

#include <cctype>

#include "quadgate/sparql.h"

namespace quadgate {

namespace {

bool isLocalName(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '-' || local.back() == '.') return false;
  for (char c : local) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') {
      return false;
    }
  }
  return true;
}

class Writer {
 public:
  explicit Writer(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  std::string prologue() const {
    std::string out;
    for (const auto& [prefix, iri] : prefixes_) {
      out += "PREFIX " + prefix + ": <" + iri + ">\n";
    }
    return out;
  }

  std::string iri(const std::string& value) const {
    const std::pair<std::string, std::string>* best = nullptr;
    for (const auto& entry : prefixes_) {
      if (value.size() >= entry.second.size() &&
          value.compare(0, entry.second.size(), entry.second) == 0 &&
          isLocalName(std::string_view(value).substr(entry.second.size())) &&
          (best == nullptr || entry.second.size() > best->second.size())) {
        best = &entry;
      }
    }
    if (best == nullptr) return "<" + value + ">";
    return best->first + ":" + value.substr(best->second.size());
  }

  std::string term(const Term& t) const {
    if (t.isIri()) return iri(t.value());
    if (t.isVariable()) return "?" + t.value();
    switch (t.datatype()) {
      case Datatype::Integer:
      case Datatype::Decimal:
        return t.value();
      case Datatype::Boolean:
        return t.value();
      default:
        return t.toString();
    }
  }

  std::string predicate(const Term& t) const {
    if (t.isIri() && t.value() == kRdfType) return "a";
    return term(t);
  }

  std::string graph(const GraphTerm& g) const {
    return g.isVariable() ? "?" + g.value() : iri(g.value());
  }

  std::string triple(const QuadPattern& p) const {
    return term(p.subject) + " " + predicate(p.predicate) + " " +
           term(p.object) + " .";
  }

  std::string expression(const Expression& e) const {
    using Op = Expression::Op;
    switch (e.op) {
      case Op::Term:
        return term(*e.term);
      case Op::Bound:
        return "bound(?" + e.term->value() + ")";
      case Op::Not:
        return "!" + operand(e.args[0]);
      case Op::And:
      case Op::Or: {
        std::string out;
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          if (i > 0) out += e.op == Op::And ? " && " : " || ";
          out += operand(e.args[i], e.op);
        }
        return out;
      }
      default:
        return operand(e.args[0]) + " " + comparison(e.op) + " " +
               operand(e.args[1]);
    }
  }

  void group(const GroupPattern& g, int depth, std::string& out) const {
    out += "{\n";
    for (const auto& element : g.elements) this->element(element, depth + 1, out);
    indent(depth, out);
    out += "}";
  }

  void select(const SelectQuery& s, int depth, std::string& out) const {
    out += "SELECT ";
    if (s.distinct) out += "DISTINCT ";
    if (s.selectAll) {
      out += "*";
    } else {
      for (std::size_t i = 0; i < s.projection.size(); ++i) {
        if (i > 0) out += " ";
        out += projection(s.projection[i]);
      }
    }
    out += "\n";
    indent(depth, out);
    out += "WHERE ";
    group(s.where, depth, out);
    if (!s.groupBy.empty()) {
      out += "\n";
      indent(depth, out);
      out += "GROUP BY";
      for (const auto& v : s.groupBy) out += " ?" + v;
    }
    if (!s.orderBy.empty()) {
      out += "\n";
      indent(depth, out);
      out += "ORDER BY";
      for (const auto& key : s.orderBy) {
        out += key.descending ? " DESC(?" + key.variable + ")"
                              : " ?" + key.variable;
      }
    }
  }

  // Patterns grouped by graph term, as in INSERT DATA / DELETE templates.
  void quadBlock(const std::vector<QuadPattern>& patterns, int depth,
                 std::string& out) const {
    out += "{\n";
    GroupPattern layout = groupOfPatterns(patterns);
    for (const auto& element : layout.elements) {
      this->element(element, depth + 1, out);
    }
    indent(depth, out);
    out += "}";
  }

 private:
  static void indent(int depth, std::string& out) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
  }

  static std::string comparison(Expression::Op op) {
    using Op = Expression::Op;
    switch (op) {
      case Op::Equal:
        return "=";
      case Op::NotEqual:
        return "!=";
      case Op::Less:
        return "<";
      case Op::LessEqual:
        return "<=";
      case Op::Greater:
        return ">";
      case Op::GreaterEqual:
        return ">=";
      default:
        return "?";
    }
  }

  // Parenthesises `e` unless precedence alone reproduces the same tree
  // (And/Or are n-ary, so a nested And under And needs parentheses).
  std::string operand(const Expression& e,
                      Expression::Op parent = Expression::Op::Term) const {
    using Op = Expression::Op;
    bool bare = e.op == Op::Term || e.op == Op::Bound || e.op == Op::Not;
    if (parent == Op::And || parent == Op::Or) {
      bare = bare || (e.op != Op::And && e.op != Op::Or) ||
             (parent == Op::Or && e.op == Op::And);
    }
    return bare ? expression(e) : "(" + expression(e) + ")";
  }

  std::string projection(const Projection& p) const {
    if (p.aggregate == Aggregate::None) return "?" + p.variable;
    std::string out = "(" + std::string(aggregateName(p.aggregate)) + "(";
    if (p.distinct) out += "DISTINCT ";
    out += p.argument ? "?" + *p.argument : "*";
    if (p.aggregate == Aggregate::GroupConcat && p.separator != " ") {
      out += "; SEPARATOR=\"" + escapeString(p.separator) + "\"";
    }
    return out + ") AS ?" + p.variable + ")";
  }

  void element(const Element& element, int depth, std::string& out) const {
    indent(depth, out);
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, QuadPattern>) {
            out += triple(e);
          } else if constexpr (std::is_same_v<T, GraphBlock>) {
            out += "GRAPH " + graph(e.graph) + " ";
            group(*e.body, depth, out);
          } else if constexpr (std::is_same_v<T, FilterElement>) {
            out += "FILTER (" + expression(e.expression) + ")";
          } else if constexpr (std::is_same_v<T, ExistsElement>) {
            out += e.negated ? "FILTER NOT EXISTS " : "FILTER EXISTS ";
            group(*e.body, depth, out);
          } else if constexpr (std::is_same_v<T, MinusElement>) {
            out += "MINUS ";
            group(*e.body, depth, out);
          } else if constexpr (std::is_same_v<T, OptionalElement>) {
            out += "OPTIONAL ";
            group(*e.body, depth, out);
          } else if constexpr (std::is_same_v<T, UnionElement>) {
            for (std::size_t i = 0; i < e.branches.size(); ++i) {
              if (i > 0) out += " UNION ";
              group(e.branches[i], depth, out);
            }
          } else if constexpr (std::is_same_v<T, GroupElement>) {
            group(*e.body, depth, out);
          } else if constexpr (std::is_same_v<T, SubSelectElement>) {
            out += "{\n";
            indent(depth + 1, out);
            select(*e.query, depth + 1, out);
            out += "\n";
            indent(depth, out);
            out += "}";
          }
        },
        element);
    out += "\n";
  }

  const PrefixMap& prefixes_;
};

std::string graphRef(const Writer& w, const GraphName& g) {
  return g.isDefault() ? "DEFAULT" : "GRAPH " + w.iri(g.iri());
}

std::string targetRef(const Writer& w, const GraphTarget& t) {
  switch (t.kind) {
    case GraphTarget::Kind::Graph:
      return "GRAPH " + w.iri(t.graph.iri());
    case GraphTarget::Kind::Default:
      return "DEFAULT";
    case GraphTarget::Kind::Named:
      return "NAMED";
    case GraphTarget::Kind::All:
      return "ALL";
  }
  return "";
}

std::string updateBody(const Writer& w, const Update& u) {
  std::string out;
  std::string silent = u.silent ? "SILENT " : "";
  auto dataPatterns = [&] {
    std::vector<QuadPattern> patterns;
    for (const auto& q : u.data) patterns.push_back(QuadPattern::ofQuad(q));
    return patterns;
  };
  switch (u.kind) {
    case UpdateKind::InsertData:
      out += "INSERT DATA ";
      w.quadBlock(dataPatterns(), 0, out);
      break;
    case UpdateKind::DeleteData:
      out += "DELETE DATA ";
      w.quadBlock(dataPatterns(), 0, out);
      break;
    case UpdateKind::DeleteWhere:
      out += "DELETE WHERE ";
      w.quadBlock(u.deleteTemplate, 0, out);
      break;
    case UpdateKind::Modify:
      if (!u.deleteTemplate.empty() || u.insertTemplate.empty()) {
        out += "DELETE ";
        w.quadBlock(u.deleteTemplate, 0, out);
        out += "\n";
      }
      if (!u.insertTemplate.empty()) {
        out += "INSERT ";
        w.quadBlock(u.insertTemplate, 0, out);
        out += "\n";
      }
      out += "WHERE ";
      w.group(u.where, 0, out);
      break;
    case UpdateKind::Clear:
      out += "CLEAR " + silent + targetRef(w, u.target);
      break;
    case UpdateKind::Drop:
      out += "DROP " + silent + targetRef(w, u.target);
      break;
    case UpdateKind::Create:
      out += "CREATE " + silent + targetRef(w, u.target);
      break;
    case UpdateKind::Add:
    case UpdateKind::Copy:
    case UpdateKind::Move: {
      std::string verb = u.kind == UpdateKind::Add    ? "ADD "
                         : u.kind == UpdateKind::Copy ? "COPY "
                                                      : "MOVE ";
      out += verb + silent + graphRef(w, u.source) + " TO " +
             graphRef(w, u.destination);
      break;
    }
    case UpdateKind::Load:
      out += "LOAD " + silent + "<" + u.document + ">";
      if (!u.destination.isDefault()) {
        out += " INTO GRAPH " + w.iri(u.destination.iri());
      }
      break;
  }
  return out;
}

}  // namespace

std::string serialize(const Query& query) {
  Writer w(query.prefixes);
  std::string out = w.prologue();
  switch (query.form) {
    case QueryForm::Select:
      w.select(query.select, 0, out);
      break;
    case QueryForm::Ask:
      out += "ASK\nWHERE ";
      w.group(query.where, 0, out);
      break;
    case QueryForm::Construct: {
      out += "CONSTRUCT ";
      w.quadBlock(query.constructTemplate, 0, out);
      out += "\nWHERE ";
      w.group(query.where, 0, out);
      break;
    }
    case QueryForm::Describe:
      out += "DESCRIBE";
      for (const auto& t : query.describeTargets) out += " " + w.term(t);
      if (query.hasWhere) {
        out += "\nWHERE ";
        w.group(query.where, 0, out);
      }
      break;
  }
  return out + "\n";
}

std::string serialize(const Update& update) {
  Writer w(update.prefixes);
  return w.prologue() + updateBody(w, update) + "\n";
}

std::string serialize(const std::vector<Update>& updates) {
  if (updates.empty()) return "";
  Writer w(updates.front().prefixes);
  std::string out = w.prologue();
  for (std::size_t i = 0; i < updates.size(); ++i) {
    if (i > 0) out += " ;\n";
    out += updateBody(w, updates[i]);
  }
  return out + "\n";
}

std::string serialize(const Expression& expression, const PrefixMap& prefixes) {
  return Writer(prefixes).expression(expression);
}

}  // namespace quadgate
