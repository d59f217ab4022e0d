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
#include "quadgate/eval.h"
#include "quadgate/rewriter.h"
#include "support.h"

using namespace quadgate;
using namespace quadgate::test;

namespace {

const std::string kPrefixes =
    "PREFIX entx: <http://example.org/enterprisex#>\n"
    "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
    "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n";

Query query(const std::string& body) { return parseQuery(kPrefixes + body); }
Update update(const std::string& body) { return parseUpdate(kPrefixes + body); }

Dataset run(const Dataset& d, const std::vector<Update>& updates) {
  return executeUpdates(d, updates);
}

}  // namespace

TEST(RewriteQuery, SalaryQueryGetsNotExistsBlock) {
  Query rewritten = rewriteQuery(fixtureQuery("salary_select.rq"), enterprisePolicy());
  EXPECT_TRUE(rewritten == fixtureQuery("salary_select_rewritten.rq")) << serialize(rewritten);
}

TEST(RewriteQuery, ManagerQueryRewritesSubselect) {
  Query rewritten = rewriteQuery(fixtureQuery("manager_names.rq"), enterprisePolicy());
  EXPECT_TRUE(rewritten == fixtureQuery("manager_names_rewritten.rq")) << serialize(rewritten);
}

TEST(RewriteQuery, EmptyPolicyIsIdentity) {
  for (const char* f : {"salary_select.rq", "salary_select_rewritten.rq", "manager_names.rq", "manager_names_rewritten.rq"}) {
    Query q = fixtureQuery(f);
    EXPECT_TRUE(rewriteQuery(q, Policy()) == q) << f;
  }
}

TEST(RewriteQuery, OneBlockPerAuthorisation) {
  Query q = query("SELECT * WHERE { GRAPH entx:G { ?s ?p ?o } }");
  Query rewritten = rewriteQuery(q, enterprisePolicy());
  const auto& body = std::get<GraphBlock>(rewritten.select.where.elements.at(0)).body;
  ASSERT_EQ(body->elements.size(), 3u);
  for (std::size_t i = 1; i < 3; ++i) {
    const auto& e = std::get<ExistsElement>(body->elements[i]);
    EXPECT_TRUE(e.negated);
  }
}

TEST(RewriteQuery, MatchingConstantsNeedNoFilter) {
  Query q = query("SELECT * WHERE { GRAPH entx:G { entx:MRyan entx:salary ?v } }");
  Query rewritten = rewriteQuery(q, salaryPolicy());
  Query expected = query(
      "SELECT * WHERE { GRAPH entx:G { entx:MRyan entx:salary ?v "
      "FILTER NOT EXISTS { GRAPH entx:G { entx:MRyan entx:salary ?v } } } }");
  EXPECT_TRUE(rewritten == expected) << serialize(rewritten);
}

TEST(RewriteQuery, ConstantGraphAuthorisationAgainstVariableGraph) {
  Policy p({QuadPattern::make(Term::variable("s"), entx("salary"), Term::variable("o"),
                              entxGraph("EmployeeDetails"))});
  Query q = query("SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v } }");
  Query rewritten = rewriteQuery(q, p);
  // The block names the authorisation's graph and ties ?g to it.
  Query expected = query(
      "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v } "
      "FILTER NOT EXISTS { GRAPH entx:EmployeeDetails { ?s entx:salary ?v "
      "FILTER (?g = entx:EmployeeDetails) } } }");
  EXPECT_TRUE(rewritten == expected) << serialize(rewritten);

  Dataset d = enterprise();
  d.insert(Quad::make(entx("JBloggs"), entx("salary"), Term::integer(60000), entxGraph("Copy")));
  ResultSet r = evaluate(d, rewritten);
  ResultSet expectedRows = evaluate(splitDataset(d, p).authorised, q);
  EXPECT_TRUE(resultsEqual(r, expectedRows));
  EXPECT_EQ(r.rows.size(), 1u);
}

TEST(RewriteQuery, ReachesNestedGroups) {
  Query q = query(
      "SELECT ?n WHERE { GRAPH entx:EmployeeDetails { ?x foaf:name ?n } "
      "OPTIONAL { GRAPH entx:EmployeeDetails { ?x entx:salary ?v } } "
      "MINUS { GRAPH ?h { ?x entx:worksFor ?m } } "
      "FILTER EXISTS { GRAPH ?k { ?y entx:worksFor ?x } } }");
  Query rewritten = rewriteQuery(q, enterprisePolicy());
  std::string text = serialize(rewritten);
  std::size_t blocks = 0;
  for (auto pos = text.find("NOT EXISTS"); pos != std::string::npos;
       pos = text.find("NOT EXISTS", pos + 1)) {
    ++blocks;
  }
  EXPECT_EQ(blocks, 3u) << text;
}

TEST(RewriteUpdate, DeleteWherePrunesDeniedPattern) {
  auto rewritten = rewriteUpdate(fixtureUpdate("delete_where.ru"), salaryPolicy());
  ASSERT_EQ(rewritten.size(), 1u);
  EXPECT_TRUE(rewritten[0] == fixtureUpdate("delete_where_rewritten.ru")) << serialize(rewritten);
  EXPECT_TRUE(datasetEquals(run(enterprise(), rewritten), loadDataset(dataPath("after_delete_where.trig"))));
}

TEST(RewriteUpdate, ClearGraphLowersToDelete) {
  auto rewritten = rewriteUpdate(fixtureUpdate("clear_graph.ru"), salaryPolicy());
  ASSERT_EQ(rewritten.size(), 1u);
  // The lowering uses reserved variable names in place of ?s ?p ?o.
  std::string text = readFile(dataPath("clear_graph_rewritten.ru"));
  for (const char* v : {"?s", "?p", "?o"}) {
    for (auto pos = text.find(v); pos != std::string::npos; pos = text.find(v, pos + 3)) {
      text.replace(pos, 2, std::string("?__") + v[1]);
    }
  }
  EXPECT_TRUE(rewritten[0] == parseUpdate(text)) << serialize(rewritten);
  EXPECT_TRUE(datasetEquals(run(enterprise(), rewritten), loadDataset(dataPath("after_clear_graph.trig"))));
}

TEST(RewriteUpdate, DataFormsDropDeniedQuads) {
  Update allowed = update("INSERT DATA { GRAPH entx:EmployeeDetails { entx:JBloggs entx:salary 1 } }");
  auto same = rewriteUpdate(allowed, enterprisePolicy());
  ASSERT_EQ(same.size(), 1u);
  EXPECT_TRUE(same[0] == allowed);

  Update denied = update(
      "DELETE DATA { GRAPH entx:EmployeeDetails { entx:MRyan entx:salary 33000 . "
      "entx:MRyan foaf:name \"May Ryan\" } }");
  auto pruned = rewriteUpdate(denied, enterprisePolicy());
  ASSERT_EQ(pruned.size(), 1u);
  ASSERT_EQ(pruned[0].data.size(), 1u);
  EXPECT_EQ(pruned[0].data[0].predicate, foaf("name"));
}

TEST(RewriteUpdate, CreatePassesThrough) {
  Update create = update("CREATE GRAPH entx:New");
  auto out = rewriteUpdate(create, enterprisePolicy());
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0] == create);
}

TEST(RewriteUpdate, UnaffectedGraphOperationsPassThrough) {
  Policy p({QuadPattern::make(Term::variable("s"), Term::variable("p"), Term::variable("o"),
                              entxGraph("Elsewhere"))});
  for (const char* text : {"CLEAR GRAPH entx:OrgStructure", "DROP GRAPH entx:OrgStructure",
                           "ADD entx:OrgStructure TO entx:EmployeeDetails",
                           "COPY entx:OrgStructure TO entx:EmployeeDetails",
                           "LOAD <file:///tmp/x.nt> INTO GRAPH entx:OrgStructure"}) {
    Update u = update(text);
    auto out = rewriteUpdate(u, p);
    ASSERT_EQ(out.size(), 1u) << text;
    EXPECT_TRUE(out[0] == u) << text;
  }
}

TEST(RewriteUpdate, CopyKeepsDeniedDestinationQuads) {
  Update copy = update("COPY entx:OrgStructure TO entx:EmployeeDetails");
  auto out = rewriteUpdate(copy, enterprisePolicy());
  Dataset after = run(enterprise(), out);
  // The denied salary survives in the destination; the denied worksFor quad
  // is not read from the source.
  Dataset expected;
  expected.insert(Quad::make(entx("MRyan"), entx("salary"), Term::integer(33000),
                             entxGraph("EmployeeDetails")));
  expected.insert(Quad::make(entx("JSmyth"), entx("worksFor"), entx("MRyan"),
                             entxGraph("EmployeeDetails")));
  expected.insert(Quad::make(entx("MRyan"), entx("worksFor"), entx("JBloggs"),
                             entxGraph("OrgStructure")));
  expected.insert(Quad::make(entx("JSmyth"), entx("worksFor"), entx("MRyan"),
                             entxGraph("OrgStructure")));
  EXPECT_TRUE(datasetEquals(after, expected)) << writeNQuads(after);
}

TEST(RewriteUpdate, MoveLeavesDeniedSourceQuads) {
  auto out = rewriteUpdate(update("MOVE entx:OrgStructure TO entx:Archive"), enterprisePolicy());
  Dataset after = run(enterprise(), out);
  EXPECT_EQ(after.graphQuads(entxGraph("OrgStructure")).size(), 1u);
  EXPECT_EQ(after.graphQuads(entxGraph("Archive")).size(), 1u);
}

TEST(RewriteUpdate, SameSourceAndDestinationIsNoOp) {
  EXPECT_TRUE(rewriteUpdate(update("ADD entx:OrgStructure TO entx:OrgStructure"), enterprisePolicy())
                  .empty());
  EXPECT_TRUE(rewriteUpdate(update("MOVE entx:OrgStructure TO entx:OrgStructure"), enterprisePolicy())
                  .empty());
}

TEST(RewriteUpdate, InsertTemplateGuard) {
  // Copying salaries into another graph must not create the denied quad
  // there either, since the authorisation's graph is a variable.
  Update u = update(
      "INSERT { GRAPH entx:Archive { ?s entx:salary ?v } } "
      "WHERE { GRAPH entx:EmployeeDetails { ?s entx:salary ?v } }");
  auto out = rewriteUpdate(u, salaryPolicy());
  Dataset after = run(enterprise(), out);
  EXPECT_EQ(after.graphQuads(entxGraph("Archive")).size(), 2u);
  for (const auto& q : after.graphQuads(entxGraph("Archive"))) {
    EXPECT_NE(q.subject, entx("MRyan"));
  }
}

TEST(BaselineNeq, AppendsInequality) {
  Query q = query("SELECT * WHERE { ?id entx:salary ?salary }");
  Query rewritten = rewriteBaselineFilterNeq(q, salaryPolicy());
  Query expected = query("SELECT * WHERE { ?id entx:salary ?salary FILTER (?id != entx:MRyan) }");
  EXPECT_TRUE(rewritten == expected) << serialize(rewritten);
}

TEST(BaselineNeq, ConstantRestrictedTermIsLeftAlone) {
  Query q = query("SELECT * WHERE { entx:MRyan entx:salary ?salary }");
  EXPECT_TRUE(rewriteBaselineFilterNeq(q, salaryPolicy()) == q);
  EXPECT_TRUE(rewriteBaselineFilterNeq(q, Policy()) == q);
}

TEST(BaselineOptional, DemotesPartiallyRestrictedPattern) {
  Query q = query("SELECT * WHERE { ?id entx:salary ?salary }");
  Query rewritten = rewriteBaselineOptional(q, salaryPolicy());
  Query expected =
      query("SELECT * WHERE { OPTIONAL { ?id entx:salary ?salary FILTER (?id != entx:MRyan) } }");
  EXPECT_TRUE(rewritten == expected) << serialize(rewritten);
  EXPECT_TRUE(rewriteBaselineOptional(q, Policy()) == q);
}

TEST(BaselineOptional, RemovesFullyRestrictedPattern) {
  Policy all({QuadPattern::make(Term::variable("s"), Term::variable("p"), Term::variable("o"),
                                GraphTerm::variable("g"))});
  Query q = query("SELECT * WHERE { ?a foaf:name ?n . ?a ?p ?o }");
  Query rewritten = rewriteBaselineOptional(q, all);
  EXPECT_TRUE(rewritten.select.where.elements.empty()) << serialize(rewritten);
}

TEST(Baselines, RejectNonBasicPatterns) {
  Query q = query("SELECT * WHERE { ?s ?p ?o OPTIONAL { ?s foaf:name ?n } }");
  EXPECT_THROW(rewriteBaselineFilterNeq(q, salaryPolicy()), UnsupportedError);
  EXPECT_THROW(rewriteBaselineOptional(q, salaryPolicy()), UnsupportedError);
  Query ask = query("ASK { ?s ?p ?o }");
  EXPECT_THROW(rewriteBaselineFilterNeq(ask, salaryPolicy()), UnsupportedError);
}
