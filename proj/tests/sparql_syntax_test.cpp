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

#include <gtest/gtest.h>

#include "quadgate/errors.h"
#include "quadgate/sparql.h"
#include "support.h"

using namespace quadgate;
using namespace quadgate::test;

namespace {

void expectQueryRoundTrip(const std::string& text) {
  Query q = parseQuery(text);
  std::string out = serialize(q);
  Query back = parseQuery(out);
  EXPECT_TRUE(back == q) << text << "\n--- serialised ---\n" << out;
}

void expectUpdateRoundTrip(const std::string& text) {
  auto u = parseUpdateRequest(text);
  std::string out = serialize(u);
  auto back = parseUpdateRequest(out);
  EXPECT_TRUE(back == u) << text << "\n--- serialised ---\n" << out;
}

const std::string kPrefixes =
    "PREFIX entx: <http://example.org/enterprisex#>\n"
    "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n";

}  // namespace

TEST(ParseQuery, SalaryQueryShape) {
  Query q = fixtureQuery("salary_select.rq");
  ASSERT_EQ(q.form, QueryForm::Select);
  EXPECT_EQ(q.select.outputVariables(), (std::vector<std::string>{"id", "name", "salary"}));
  ASSERT_EQ(q.select.where.elements.size(), 1u);
  const auto* block = std::get_if<GraphBlock>(&q.select.where.elements[0]);
  ASSERT_NE(block, nullptr);
  EXPECT_EQ(block->graph, GraphTerm(entxGraph("EmployeeDetails")));
  ASSERT_EQ(block->body->elements.size(), 2u);
  for (const auto& e : block->body->elements) {
    const auto* p = std::get_if<QuadPattern>(&e);
    ASSERT_NE(p, nullptr);
    EXPECT_EQ(p->graph, GraphTerm(entxGraph("EmployeeDetails")));
  }
}

TEST(ParseQuery, EmptyGroup) {
  Query q = parseQuery("SELECT * WHERE {}");
  EXPECT_TRUE(q.select.selectAll);
  EXPECT_TRUE(q.select.where.elements.empty());
}

TEST(ParseQuery, SubqueryInheritsGraphContext) {
  Query q = fixtureQuery("manager_names.rq");
  EXPECT_TRUE(q.select.distinct);
  const auto& block = std::get<GraphBlock>(q.select.where.elements.at(0));
  const SubSelectElement* sub = nullptr;
  for (const auto& e : block.body->elements) {
    if (auto* s = std::get_if<SubSelectElement>(&e)) sub = s;
  }
  ASSERT_NE(sub, nullptr);
  EXPECT_EQ(sub->query->outputVariables(), (std::vector<std::string>{"x", "y"}));
  const auto& inner = std::get<GraphBlock>(sub->query->where.elements.at(0));
  EXPECT_EQ(inner.graph, GraphTerm::variable("g"));
}

TEST(ParseQuery, RejectsPropertyPaths) {
  for (const char* path : {"foaf:knows+", "foaf:knows*", "foaf:knows/foaf:name", "^foaf:knows",
                           "foaf:knows|foaf:name", "(foaf:knows)", "!foaf:knows"}) {
    std::string text = kPrefixes + "SELECT * WHERE { ?s " + path + " ?o }";
    try {
      parseQuery(text);
      FAIL() << "accepted " << path;
    } catch (const UnsupportedError& e) {
      EXPECT_NE(e.construct().find("property path"), std::string::npos) << e.what();
    }
  }
}

TEST(ParseQuery, RejectsOtherUnsupportedConstructs) {
  EXPECT_THROW(parseQuery("SELECT * WHERE { ?s ?p ?o } LIMIT 5"), UnsupportedError);
  EXPECT_THROW(parseQuery("SELECT * WHERE { VALUES ?s { <http://e.org/a> } }"), UnsupportedError);
  EXPECT_THROW(parseQuery("SELECT * WHERE { BIND(1 AS ?x) }"), UnsupportedError);
  EXPECT_THROW(parseQuery("SELECT * WHERE { _:b ?p ?o }"), UnsupportedError);
  EXPECT_THROW(parseQuery("SELECT * FROM <http://e.org/g> WHERE { ?s ?p ?o }"), UnsupportedError);
}

TEST(ParseQuery, SyntaxErrorsCarryPosition) {
  try {
    parseQuery("SELECT * WHERE {\n  ?s ?p\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parseQuery("SELECT ?x WHERE { ?s undeclared:p ?x }"), ParseError);
  EXPECT_THROW(parseQuery("SELECT ?x WHERE { ?s ?p ?x"), ParseError);
}

TEST(ParseQuery, Aggregates) {
  Query q = parseQuery(
      "SELECT ?g (COUNT(DISTINCT ?s) AS ?n) (GROUP_CONCAT(?o; SEPARATOR=\",\") AS ?all) "
      "(SAMPLE(?o) AS ?one) WHERE { GRAPH ?g { ?s ?p ?o } } GROUP BY ?g ORDER BY DESC(?n)");
  ASSERT_EQ(q.select.projection.size(), 4u);
  EXPECT_EQ(q.select.projection[1].aggregate, Aggregate::Count);
  EXPECT_TRUE(q.select.projection[1].distinct);
  EXPECT_EQ(q.select.projection[2].aggregate, Aggregate::GroupConcat);
  EXPECT_EQ(q.select.projection[2].separator, ",");
  EXPECT_EQ(q.select.projection[3].aggregate, Aggregate::Sample);
  EXPECT_EQ(q.select.groupBy, std::vector<std::string>{"g"});
  ASSERT_EQ(q.select.orderBy.size(), 1u);
  EXPECT_TRUE(q.select.orderBy[0].descending);
}

TEST(ParseQuery, ProjectedVariablesMustBeGrouped) {
  EXPECT_THROW(parseQuery("SELECT ?s (COUNT(*) AS ?n) WHERE { ?s ?p ?o }"), Error);
}

TEST(ParseUpdate, GroundDeleteWhere) {
  Update u = fixtureUpdate("delete_where.ru");
  ASSERT_EQ(u.kind, UpdateKind::DeleteWhere);
  ASSERT_EQ(u.deleteTemplate.size(), 6u);
  for (const auto& p : u.deleteTemplate) {
    EXPECT_TRUE(p.isGround());
    EXPECT_EQ(p.graph, GraphTerm(entxGraph("EmployeeDetails")));
  }
}

TEST(ParseUpdate, GraphManagementForms) {
  Update clear = fixtureUpdate("clear_graph.ru");
  EXPECT_EQ(clear.kind, UpdateKind::Clear);
  EXPECT_EQ(clear.target, GraphTarget::of(entxGraph("EmployeeDetails")));

  Update dropAll = parseUpdate("DROP ALL");
  EXPECT_EQ(dropAll.kind, UpdateKind::Drop);
  EXPECT_EQ(dropAll.target.kind, GraphTarget::Kind::All);

  Update named = parseUpdate("CLEAR SILENT NAMED");
  EXPECT_TRUE(named.silent);
  EXPECT_EQ(named.target.kind, GraphTarget::Kind::Named);

  Update copy = parseUpdate("COPY DEFAULT TO <http://e.org/g>");
  EXPECT_EQ(copy.kind, UpdateKind::Copy);
  EXPECT_TRUE(copy.source.isDefault());
  EXPECT_EQ(copy.destination, GraphName::named("http://e.org/g"));

  Update load = parseUpdate("LOAD <file:///tmp/x.nt> INTO GRAPH <http://e.org/g>");
  EXPECT_EQ(load.kind, UpdateKind::Load);
  EXPECT_EQ(load.document, "file:///tmp/x.nt");
}

TEST(ParseUpdate, DataFormsMustBeGround) {
  EXPECT_THROW(parseUpdate("INSERT DATA { ?s <http://e.org/p> 1 }"), Error);
  Update u = parseUpdate("INSERT DATA { <http://e.org/s> <http://e.org/p> 1 . "
                         "GRAPH <http://e.org/g> { <http://e.org/s> <http://e.org/p> 2 } }");
  ASSERT_EQ(u.data.size(), 2u);
  EXPECT_TRUE(u.data[0].graph.isDefault() || u.data[1].graph.isDefault());
}

TEST(Serialize, RewrittenSalaryQueryNestsNotExistsInGraph) {
  Query q = fixtureQuery("salary_select_rewritten.rq");
  std::string text = serialize(q);
  auto graph = text.find("GRAPH");
  auto notExists = text.find("FILTER NOT EXISTS");
  ASSERT_NE(graph, std::string::npos);
  ASSERT_NE(notExists, std::string::npos);
  EXPECT_LT(graph, notExists);
  const auto& block = std::get<GraphBlock>(q.select.where.elements.at(0));
  EXPECT_TRUE(std::holds_alternative<ExistsElement>(block.body->elements.back()));
}

TEST(Serialize, RoundTripsFixtures) {
  for (const char* f : {"salary_select.rq", "salary_select_rewritten.rq", "manager_names.rq", "manager_names_rewritten.rq"}) {
    expectQueryRoundTrip(readFile(dataPath(f)));
  }
  for (const char* f : {"delete_where.ru", "delete_where_rewritten.ru", "clear_graph.ru", "clear_graph_rewritten.ru"}) {
    expectUpdateRoundTrip(readFile(dataPath(f)));
  }
}

TEST(Serialize, PreservesSubqueryDepth) {
  Query q = fixtureQuery("manager_names.rq");
  Query back = parseQuery(serialize(q));
  const auto& block = std::get<GraphBlock>(back.select.where.elements.at(0));
  bool found = false;
  for (const auto& e : block.body->elements) {
    if (auto* s = std::get_if<SubSelectElement>(&e)) {
      found = true;
      EXPECT_TRUE(std::holds_alternative<GraphBlock>(s->query->where.elements.at(0)));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Serialize, RoundTripsAssortedForms) {
  expectQueryRoundTrip(kPrefixes +
                       "ASK { ?s foaf:name \"x\"@en FILTER (?s != entx:a || !bound(?q)) }");
  expectQueryRoundTrip(kPrefixes +
                       "CONSTRUCT { ?s foaf:name ?n } WHERE { ?s foaf:name ?n "
                       "OPTIONAL { ?s entx:salary ?v FILTER (?v >= 1.5 && ?v < -2) } }");
  expectQueryRoundTrip(kPrefixes + "DESCRIBE entx:MRyan");
  expectQueryRoundTrip(kPrefixes + "DESCRIBE ?s WHERE { ?s a foaf:Person }");
  expectQueryRoundTrip(kPrefixes +
                       "SELECT ?s WHERE { { ?s ?p ?o } UNION { GRAPH ?g { ?s ?p ?o } } "
                       "MINUS { ?s foaf:name \"a\\\"b\" } FILTER EXISTS { ?s ?p true } }");
  expectQueryRoundTrip(kPrefixes +
                       "SELECT (AVG(?v) AS ?a) (MIN(?v) AS ?lo) (MAX(?v) AS ?hi) (SUM(?v) AS ?t) "
                       "WHERE { GRAPH entx:G { ?s entx:salary ?v } }");
  expectUpdateRoundTrip(kPrefixes +
                        "DELETE { GRAPH ?g { ?s ?p ?o } } INSERT { ?s ?p ?o } WHERE { GRAPH ?g "
                        "{ ?s ?p ?o } } ; CREATE SILENT GRAPH entx:New ; MOVE entx:A TO DEFAULT ; "
                        "ADD SILENT entx:A TO entx:B ; DROP DEFAULT ; CLEAR ALL");
  expectUpdateRoundTrip(kPrefixes + "DELETE DATA { GRAPH entx:G { entx:a entx:b 1 } }");
  expectUpdateRoundTrip("LOAD SILENT <file:///tmp/doc.nt>");
}
