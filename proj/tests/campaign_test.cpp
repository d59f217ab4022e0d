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

#include <cstdlib>
#include <filesystem>
#include <set>

#include "quadgate/campaign.h"
#include "quadgate/errors.h"
#include "support.h"

using namespace quadgate;
using namespace quadgate::test;

namespace {

const std::string kShop = "http://example.org/shop/vocabulary/";

std::string scratchDirectory(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("quadgate-test-" + name);
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace

TEST(Rng, SameSeedSameStream) {
  Rng a(7);
  Rng b(7);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.below(1000), b.below(1000));
  Rng c(7);
  for (int i = 0; i < 1000; ++i) {
    auto v = c.between(-3, 3);
    EXPECT_GE(v, -3);
    EXPECT_LE(v, 3);
  }
  EXPECT_NE(deriveSeed(1, {2, 3}), deriveSeed(1, {3, 2}));
  EXPECT_EQ(hashName(""), 0xcbf29ce484222325ULL);
}

TEST(MaskName, Letters) {
  EXPECT_EQ(maskName(0), "----");
  EXPECT_EQ(maskName(kMaskSubject | kMaskPredicate), "SP--");
  EXPECT_EQ(maskName(15), "SPOG");
}

TEST(CampaignConfig, Defaults) {
  CampaignConfig c = parseCampaignConfig("");
  EXPECT_EQ(c.datasetSize, 200u);
  EXPECT_EQ(c.strategy, Strategy::NotExists);
  EXPECT_EQ(c.effectiveMasks().size(), 16u);
  EXPECT_EQ(c.effectiveClasses(), allQueryClasses());
}

TEST(CampaignConfig, KeysAndComments) {
  CampaignConfig c = parseCampaignConfig(
      "# campaign\n"
      "seed = 9\n"
      "dataset_size = 50  # small\n"
      "masks = 0, 3,15\n"
      "query_classes = bgp1,count\n"
      "cases_per_class = 2\n"
      "authorisations_per_mask = 0\n"
      "load_directory = /tmp/x\n");
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.datasetSize, 50u);
  EXPECT_EQ(c.masks, (std::vector<unsigned>{0, 3, 15}));
  EXPECT_EQ(c.queryClasses, (std::vector<std::string>{"bgp1", "count"}));
  EXPECT_EQ(c.casesPerClass, 2u);
  EXPECT_EQ(c.authorisationsPerMask, 0u);
  EXPECT_EQ(c.loadDirectory, "/tmp/x");
}

TEST(CampaignConfig, BaselineDefaults) {
  CampaignConfig c = parseCampaignConfig("strategy = baseline_neq\n");
  EXPECT_EQ(c.shape, AuthorisationShape::Triple);
  EXPECT_EQ(c.effectiveClasses(), (std::vector<std::string>{"bgp1", "bgp2", "bgp3"}));
  EXPECT_EQ(c.effectiveMasks().size(), 8u);
}

TEST(CampaignConfig, Errors) {
  for (const char* text : {"seed 3", "seed = x", "dataset_size = 0", "masks = 16",
                           "authorisation_shape = triple\nmasks = 8", "query_classes = bgp9",
                           "strategy = other", "colour = red", "authorisation_shape = pair"}) {
    EXPECT_THROW(parseCampaignConfig(text), InvalidArgument) << text;
  }
}

TEST(GenerateDataset, ExactSizeAndShape) {
  for (std::size_t size : {1u, 7u, 200u}) {
    EXPECT_EQ(generateDataset(size, 3).size(), size);
  }
  Dataset d = generateDataset(200, 3);
  std::set<GraphName> named;
  std::size_t days = 0;
  d.forEachQuad([&](const Quad& q) {
    if (!q.graph.isDefault()) named.insert(q.graph);
    if (q.predicate == Term::iri(kShop + "deliveryDays")) {
      ++days;
      EXPECT_EQ(q.object.datatype(), Datatype::Integer);
    }
  });
  EXPECT_GE(named.size(), 2u);
  EXPECT_GT(days, 0u);
  EXPECT_FALSE(d.graphQuads(GraphName()).empty());
}

TEST(GenerateDataset, Deterministic) {
  EXPECT_EQ(writeNQuads(generateDataset(120, 5)), writeNQuads(generateDataset(120, 5)));
  EXPECT_NE(writeNQuads(generateDataset(120, 5)), writeNQuads(generateDataset(120, 6)));
}

TEST(EnumerateAuthorisations, EnterpriseDataset) {
  Dataset d = enterprise();
  auto sp = enumerateAuthorisations(d, kMaskSubject | kMaskPredicate);
  auto salary = QuadPattern::make(entx("MRyan"), entx("salary"), Term::variable("o"),
                                  GraphTerm::variable("g"));
  std::size_t hits = 0;
  for (const auto& p : sp) hits += p.subject == salary.subject && p.predicate == salary.predicate;
  EXPECT_EQ(hits, 1u);
  for (const auto& p : sp) {
    EXPECT_TRUE(p.object.isVariable());
    EXPECT_TRUE(p.graph.isVariable());
  }
  EXPECT_EQ(enumerateAuthorisations(d, 0).size(), 1u);
  EXPECT_EQ(enumerateAuthorisations(d, 15).size(), d.size());
  std::size_t total = 0;
  for (unsigned m = 0; m < 16; ++m) total += enumerateAuthorisations(d, m).size();
  EXPECT_LE(total, d.size() * 16);
  for (const auto& p : enumerateAuthorisations(d, 15, AuthorisationShape::Triple)) {
    EXPECT_TRUE(p.graph.isVariable());
  }
}

TEST(GenerateQueries, DeterministicAndParseable) {
  Dataset d = generateDataset(80, 11);
  auto auths = enumerateAuthorisations(d, kMaskPredicate);
  GenerateOptions options;
  options.loadDirectory = scratchDirectory("generate");
  for (const auto& c : allQueryClasses()) {
    auto first = generateQueries(d, auths.front(), c, 99, options);
    auto second = generateQueries(d, auths.front(), c, 99, options);
    ASSERT_EQ(first.size(), second.size()) << c;
    ASSERT_FALSE(first.empty()) << c;
    for (std::size_t i = 0; i < first.size(); ++i) {
      EXPECT_EQ(first[i].text(), second[i].text()) << c;
      EXPECT_EQ(first[i].queryClass, c);
      EXPECT_NE(first[i].query.has_value(), first[i].update.has_value());
    }
  }
}

TEST(GenerateQueries, GraphClassesOnePerGraph) {
  Dataset d = enterprise();
  auto auth = enumerateAuthorisations(d, 0).front();
  EXPECT_EQ(generateQueries(d, auth, "clear", 1).size(), 2u);
  EXPECT_EQ(generateQueries(d, auth, "bgp2", 1).size(), 3u);
  EXPECT_THROW(generateQueries(d, auth, "sum", 1), InvalidArgument);
  EXPECT_THROW(generateQueries(d, auth, "nope", 1), InvalidArgument);
  EXPECT_THROW(generateQueries(Dataset(), auth, "bgp1", 1), InvalidArgument);
}

TEST(RunCampaign, SmallCampaignCoversEveryClass) {
  CampaignConfig c = parseCampaignConfig(
      "dataset_size = 60\nmasks = 0,5,10,15\ncases_per_class = 1\nauthorisations_per_mask = 2\n");
  c.loadDirectory = scratchDirectory("campaign");
  CampaignReport r = runCampaign(c);
  EXPECT_EQ(r.datasetQuads, 60u);
  EXPECT_EQ(r.errors, 0u);
  EXPECT_EQ(r.failed, 0u);
  EXPECT_EQ(r.passed, r.cases);
  EXPECT_EQ(r.verdictPatterns["TTT"], r.cases);
  EXPECT_EQ(r.classes.size(), allQueryClasses().size());
  for (unsigned m : {0u, 5u, 10u, 15u}) {
    EXPECT_EQ(r.coverage[m].size(), allQueryClasses().size()) << maskName(m);
  }

  auto j = toJson(r);
  for (const char* key : {"config", "totals", "classes", "coverage", "verdicts", "failures",
                          "wall_clock_seconds"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["totals"]["cases"], r.cases);

  CampaignReport again = runCampaign(c);
  auto k = toJson(again);
  j.erase("wall_clock_seconds");
  k.erase("wall_clock_seconds");
  EXPECT_EQ(j, k);
}

TEST(RunCampaign, BaselineReportsFailures) {
  CampaignConfig c = parseCampaignConfig("strategy = baseline_neq\ndataset_size = 60\n");
  CampaignReport r = runCampaign(c);
  EXPECT_GT(r.failed, 0u);
  EXPECT_EQ(r.errors, 0u);
  ASSERT_FALSE(r.failures.empty());
  for (const auto& f : r.failures) {
    const auto& w = f.verdict.witnesses;
    if (w.size() > kMaxWitnesses) {
      ASSERT_EQ(w.size(), kMaxWitnesses + 1);
      EXPECT_EQ(w.back().criterion, "report");
      EXPECT_EQ(w.back().kind, "truncated");
    }
    EXPECT_FALSE(f.verdict.allTrue());
  }
  EXPECT_TRUE(std::is_sorted(r.failures.begin(), r.failures.end(),
                             [](const auto& a, const auto& b) { return a.caseId < b.caseId; }));
}

TEST(RunCampaign, UpdatesUnderBaselineAreErrors) {
  CampaignConfig c = parseCampaignConfig(
      "strategy = baseline_optional\ndataset_size = 30\nquery_classes = insert_data\n"
      "masks = 1\nauthorisations_per_mask = 1\ncases_per_class = 1\n");
  CampaignReport r = runCampaign(c);
  EXPECT_EQ(r.errors, r.cases);
  ASSERT_FALSE(r.failures.empty());
  EXPECT_TRUE(r.failures[0].error.has_value());
}
