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

#include <cstdio>
#include <filesystem>
#include <map>

#include "quadgate/errors.h"
#include "quadgate/eval.h"
#include "support.h"

using namespace quadgate;
using namespace quadgate::test;

namespace {

const std::string kPrefixes =
    "PREFIX entx: <http://example.org/enterprisex#>\n"
    "PREFIX foaf: <http://xmlns.com/foaf/0.1/>\n"
    "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>\n";

ResultSet run(const Dataset& d, const std::string& body) {
  return evaluate(d, parseQuery(kPrefixes + body));
}

Dataset applyUpdate(const Dataset& d, const std::string& body) {
  return executeUpdates(d, parseUpdateRequest(kPrefixes + body));
}

Term str(const std::string& s) { return Term::string(s); }
Term num(std::int64_t n) { return Term::integer(n); }

}  // namespace

TEST(Evaluate, SalaryQueryTable) {
  ResultSet r = evaluate(enterprise(), fixtureQuery("salary_select.rq"));
  ResultSet expected = table({"id", "name", "salary"},
                             {{entx("JBloggs"), str("Joe Bloggs"), num(60000)},
                              {entx("MRyan"), str("May Ryan"), num(33000)},
                              {entx("JSmyth"), str("John Smyth"), num(33000)}});
  EXPECT_TRUE(resultsEqual(r, expected));
}

TEST(Evaluate, ManagerQueryTable) {
  ResultSet r = evaluate(enterprise(), fixtureQuery("manager_names.rq"));
  ResultSet expected = table({"employee", "manager"}, {{str("John Smyth"), str("May Ryan")},
                                                       {str("May Ryan"), str("Joe Bloggs")}});
  EXPECT_TRUE(resultsEqual(r, expected));
}

TEST(Evaluate, EmptyDataset) {
  Dataset empty;
  EXPECT_TRUE(evaluate(empty, fixtureQuery("salary_select.rq")).rows.empty());
  EXPECT_FALSE(run(empty, "ASK { ?s ?p ?o }").boolean);
  EXPECT_TRUE(run(empty, "CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }").triples.empty());
}

TEST(Evaluate, BagSemanticsKeepDuplicates) {
  ResultSet r = run(enterprise(), "SELECT ?t WHERE { GRAPH ?g { ?s rdf:type ?t } }");
  EXPECT_EQ(r.rows.size(), 3u);
  ResultSet d = run(enterprise(), "SELECT DISTINCT ?t WHERE { GRAPH ?g { ?s rdf:type ?t } }");
  EXPECT_EQ(d.rows.size(), 1u);
  EXPECT_FALSE(resultsEqual(r, d));
}

TEST(Evaluate, VariableGraphSkipsDefaultGraph) {
  Dataset d = enterprise();
  d.insert(Quad::make(entx("x"), entx("salary"), num(1)));
  EXPECT_EQ(run(d, "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v } }").rows.size(), 3u);
  EXPECT_EQ(run(d, "SELECT * WHERE { ?s entx:salary ?v }").rows.size(), 1u);
}

TEST(Evaluate, AggregatesMatchDirectComputation) {
  Dataset d = enterprise();
  std::int64_t sum = 0;
  std::int64_t lo = INT64_MAX;
  std::int64_t hi = INT64_MIN;
  std::size_t n = 0;
  d.forEachQuad([&](const Quad& q) {
    if (q.predicate != entx("salary")) return;
    std::int64_t v = std::stoll(q.object.value());
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    ++n;
  });
  ResultSet r = run(d,
                    "SELECT (COUNT(*) AS ?n) (SUM(?v) AS ?sum) (MIN(?v) AS ?lo) (MAX(?v) AS ?hi) "
                    "(AVG(?v) AS ?avg) WHERE { GRAPH ?g { ?s entx:salary ?v } }");
  ASSERT_EQ(r.rows.size(), 1u);
  const auto& row = r.rows[0];
  EXPECT_EQ(*row[0], num(static_cast<std::int64_t>(n)));
  EXPECT_EQ(*row[1], num(sum));
  EXPECT_EQ(*row[2], num(lo));
  EXPECT_EQ(*row[3], num(hi));
  // 126000 / 3 is exact, so the decimal average has no rounding.
  EXPECT_EQ(*row[4], Term::decimal(std::to_string(sum / static_cast<std::int64_t>(n))));
}

TEST(Evaluate, AggregateOverEmptyInputYieldsOneGroup) {
  ResultSet r = run(enterprise(), "SELECT (COUNT(*) AS ?n) (SUM(?v) AS ?s) WHERE { ?x entx:none ?v }");
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(*r.rows[0][0], num(0));
  EXPECT_EQ(*r.rows[0][1], num(0));
  ResultSet grouped =
      run(enterprise(), "SELECT ?x (COUNT(*) AS ?n) WHERE { ?x entx:none ?v } GROUP BY ?x");
  EXPECT_TRUE(grouped.rows.empty());
}

TEST(Evaluate, GroupByAndGroupConcatOrder) {
  ResultSet r = run(enterprise(),
                    "SELECT ?v (GROUP_CONCAT(?n) AS ?names) WHERE { GRAPH ?g { ?s entx:salary ?v . "
                    "?s foaf:name ?n } } GROUP BY ?v");
  ResultSet expected = table({"v", "names"}, {{num(60000), str("Joe Bloggs")},
                                              {num(33000), str("John Smyth May Ryan")}});
  EXPECT_TRUE(resultsEqual(r, expected));
}

TEST(Evaluate, OptionalMinusAndExists) {
  Dataset d = enterprise();
  ResultSet opt = run(d,
                      "SELECT ?s ?m WHERE { GRAPH entx:EmployeeDetails { ?s rdf:type foaf:Person } "
                      "OPTIONAL { GRAPH entx:OrgStructure { ?s entx:worksFor ?m } } }");
  ResultSet optExpected = table({"s", "m"}, {{entx("JBloggs"), std::nullopt},
                                             {entx("MRyan"), entx("JBloggs")},
                                             {entx("JSmyth"), entx("MRyan")}});
  EXPECT_TRUE(resultsEqual(opt, optExpected));

  ResultSet minus = run(d,
                        "SELECT ?s WHERE { GRAPH entx:EmployeeDetails { ?s rdf:type foaf:Person } "
                        "MINUS { GRAPH entx:OrgStructure { ?s entx:worksFor ?m } } }");
  EXPECT_TRUE(resultsEqual(minus, table({"s"}, {{entx("JBloggs")}})));

  // MINUS without shared variables removes nothing.
  ResultSet disjoint = run(d,
                           "SELECT ?s WHERE { GRAPH entx:EmployeeDetails { ?s rdf:type foaf:Person } "
                           "MINUS { ?a ?b ?c } }");
  EXPECT_EQ(disjoint.rows.size(), 3u);

  ResultSet exists = run(d,
                         "SELECT ?s WHERE { GRAPH entx:EmployeeDetails { ?s entx:salary ?v "
                         "FILTER EXISTS { GRAPH entx:OrgStructure { ?x entx:worksFor ?s } } } }");
  EXPECT_TRUE(resultsEqual(exists, table({"s"}, {{entx("JBloggs")}, {entx("MRyan")}})));
}

TEST(Evaluate, FilterComparisonsAndErrors) {
  Dataset d = enterprise();
  EXPECT_EQ(run(d, "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v FILTER (?v > 40000) } }").rows.size(),
            1u);
  EXPECT_EQ(run(d, "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v FILTER (?v = 33000.0) } }").rows.size(),
            2u);
  // Comparing a number with a string is an error: the row is dropped.
  EXPECT_EQ(run(d, "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v FILTER (?v < \"a\") } }").rows.size(),
            0u);
  EXPECT_EQ(run(d, "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v FILTER (!bound(?x)) } }").rows.size(),
            3u);
}

TEST(Evaluate, OrderByIsSignificant) {
  ResultSet asc = run(enterprise(), "SELECT ?v WHERE { GRAPH ?g { ?s entx:salary ?v } } ORDER BY ?v");
  ResultSet desc =
      run(enterprise(), "SELECT ?v WHERE { GRAPH ?g { ?s entx:salary ?v } } ORDER BY DESC(?v)");
  ASSERT_EQ(asc.rows.size(), 3u);
  EXPECT_TRUE(asc.ordered);
  EXPECT_EQ(*asc.rows.front()[0], num(33000));
  EXPECT_EQ(*desc.rows.front()[0], num(60000));
  EXPECT_FALSE(resultsEqual(asc, desc));
}

TEST(Evaluate, AskMatchesSelect) {
  Dataset d = enterprise();
  for (const char* pattern : {"{ GRAPH ?g { ?s entx:worksFor entx:MRyan } }",
                              "{ GRAPH ?g { ?s entx:worksFor entx:JSmyth } }", "{ ?s ?p ?o }"}) {
    bool ask = run(d, std::string("ASK ") + pattern).boolean;
    bool rows = !run(d, std::string("SELECT * WHERE ") + pattern).rows.empty();
    EXPECT_EQ(ask, rows) << pattern;
  }
}

TEST(Evaluate, ConstructDropsIncompleteTriples) {
  ResultSet r = run(enterprise(),
                    "CONSTRUCT { ?s entx:manager ?m } WHERE { GRAPH entx:EmployeeDetails "
                    "{ ?s rdf:type foaf:Person } OPTIONAL { GRAPH ?g { ?s entx:worksFor ?m } } }");
  EXPECT_EQ(r.triples.size(), 2u);
  EXPECT_EQ(r.triples.count(Triple{entx("JSmyth"), entx("manager"), entx("MRyan")}), 1u);
}

TEST(Evaluate, DescribeReturnsSubjectTriples) {
  ResultSet r = run(enterprise(), "DESCRIBE entx:MRyan");
  EXPECT_EQ(r.triples.size(), 4u);
  for (const auto& t : r.triples) EXPECT_EQ(t.subject, entx("MRyan"));
}

TEST(Evaluate, SampleIsEvaluable) {
  ResultSet r = run(enterprise(), "SELECT (SAMPLE(?v) AS ?x) WHERE { GRAPH ?g { ?s entx:salary ?v } }");
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_TRUE(r.rows[0][0].has_value());
}

TEST(Evaluate, MonotoneBasicGraphPatterns) {
  Dataset small = enterprise();
  small.erase(Quad::make(entx("JSmyth"), entx("worksFor"), entx("MRyan"), entxGraph("OrgStructure")));
  Dataset big = enterprise();
  for (const char* q : {"SELECT * WHERE { GRAPH ?g { ?s ?p ?o } }",
                        "SELECT ?n WHERE { GRAPH ?g { ?x foaf:name ?n } GRAPH ?h { ?x ?p ?y } }"}) {
    EXPECT_TRUE(resultsContained(run(small, q), run(big, q))) << q;
  }
}

TEST(ResultComparison, MultisetsAndMissingRows) {
  ResultSet a = table({"x"}, {{num(1)}, {num(1)}, {num(2)}});
  ResultSet b = table({"x"}, {{num(2)}, {num(1)}});
  EXPECT_FALSE(resultsEqual(a, b));
  EXPECT_TRUE(resultsContained(b, a));
  EXPECT_FALSE(resultsContained(a, b));
  auto missing = rowsMissingFrom(a, b);
  ASSERT_EQ(missing.size(), 1u);
  EXPECT_EQ(*missing[0][0], num(1));
  // Column order does not matter.
  ResultSet c = table({"y", "x"}, {{num(5), num(1)}});
  ResultSet e = table({"x", "y"}, {{num(1), num(5)}});
  EXPECT_TRUE(resultsEqual(c, e));
}

TEST(ExecuteUpdate, InsertPresentQuadIsNoOp) {
  Dataset d = enterprise();
  Dataset after = applyUpdate(d, "INSERT DATA { GRAPH entx:OrgStructure { entx:MRyan entx:worksFor entx:JBloggs } }");
  EXPECT_TRUE(datasetEquals(after, d));
}

TEST(ExecuteUpdate, InsertThenDeleteRestores) {
  Dataset d = enterprise();
  std::string quads = "GRAPH entx:New { entx:a entx:b \"c\" } entx:a entx:b 2";
  Dataset added = applyUpdate(d, "INSERT DATA { " + quads + " }");
  EXPECT_EQ(added.size(), d.size() + 2);
  EXPECT_TRUE(datasetEquals(applyUpdate(added, "DELETE DATA { " + quads + " }"), d));
}

TEST(ExecuteUpdate, ClearKeepsOtherGraphs) {
  Dataset d = enterprise();
  Dataset after = applyUpdate(d, "CLEAR GRAPH entx:OrgStructure");
  EXPECT_TRUE(after.hasGraph(entxGraph("OrgStructure")));
  EXPECT_TRUE(after.graphQuads(entxGraph("OrgStructure")).empty());
  EXPECT_EQ(after.graphTriples(entxGraph("EmployeeDetails")),
            d.graphTriples(entxGraph("EmployeeDetails")));
  Dataset dropped = applyUpdate(d, "DROP GRAPH entx:OrgStructure");
  EXPECT_FALSE(dropped.hasGraph(entxGraph("OrgStructure")));
  EXPECT_TRUE(datasetEquals(applyUpdate(d, "DROP GRAPH entx:Missing"), d));
}

TEST(ExecuteUpdate, CopyAndMove) {
  Dataset d = enterprise();
  Dataset copied = applyUpdate(d, "COPY entx:OrgStructure TO entx:EmployeeDetails");
  EXPECT_EQ(copied.graphTriples(entxGraph("EmployeeDetails")),
            d.graphTriples(entxGraph("OrgStructure")));
  Dataset moved = applyUpdate(d, "MOVE entx:OrgStructure TO entx:Archive");
  EXPECT_EQ(moved.graphTriples(entxGraph("Archive")), d.graphTriples(entxGraph("OrgStructure")));
  EXPECT_FALSE(moved.hasGraph(entxGraph("OrgStructure")));
  Dataset added = applyUpdate(d, "ADD entx:OrgStructure TO entx:EmployeeDetails");
  EXPECT_EQ(added.size(), d.size() + 2);
}

TEST(ExecuteUpdate, DeleteInsertWhere) {
  Dataset d = enterprise();
  Dataset after = applyUpdate(d,
                        "DELETE { GRAPH ?g { ?s entx:salary ?v } } INSERT { GRAPH ?g { ?s entx:pay ?v } } "
                        "WHERE { GRAPH ?g { ?s entx:salary ?v } }");
  EXPECT_EQ(after.size(), d.size());
  EXPECT_TRUE(run(after, "SELECT * WHERE { GRAPH ?g { ?s entx:salary ?v } }").rows.empty());
  EXPECT_EQ(run(after, "SELECT * WHERE { GRAPH ?g { ?s entx:pay ?v } }").rows.size(), 3u);
  // Instantiations with an unbound template variable are skipped.
  Dataset partial = applyUpdate(d,
                          "INSERT { ?s entx:boss ?m } WHERE { GRAPH entx:EmployeeDetails "
                          "{ ?s rdf:type foaf:Person } OPTIONAL { GRAPH ?g { ?s entx:worksFor ?m } } }");
  EXPECT_EQ(partial.size(), d.size() + 2);
}

TEST(ExecuteUpdate, DeleteWhereWithVariables) {
  Dataset d = enterprise();
  Dataset after = applyUpdate(d, "DELETE WHERE { GRAPH ?g { ?s entx:salary 33000 } }");
  EXPECT_EQ(after.size(), d.size() - 2);
}

TEST(ExecuteUpdate, LoadFromFile) {
  namespace fs = std::filesystem;
  fs::path file = fs::temp_directory_path() / "quadgate_eval_load.nt";
  writeFile(file.string(), "<http://e.org/a> <http://e.org/b> \"c\" .\n");
  Dataset d = enterprise();
  Dataset after = applyUpdate(d, "LOAD <file://" + file.string() + "> INTO GRAPH entx:Loaded");
  EXPECT_EQ(after.graphQuads(entxGraph("Loaded")).size(), 1u);
  Dataset plainPath = executeUpdate(d, Update::load(file.string(), entxGraph("Loaded")));
  EXPECT_TRUE(datasetEquals(after, plainPath));
  fs::remove(file);
  EXPECT_THROW(applyUpdate(d, "LOAD <file://" + file.string() + ">"), Error);
  EXPECT_NO_THROW(applyUpdate(d, "LOAD SILENT <file://" + file.string() + ">"));
  EXPECT_THROW(applyUpdate(d, "LOAD <http://example.org/remote.nt>"), Error);
}

TEST(ExecuteUpdate, InputIsNotMutated) {
  Dataset d = enterprise();
  Dataset copy = d;
  applyUpdate(d, "CLEAR ALL");
  EXPECT_TRUE(datasetEquals(d, copy));
}
