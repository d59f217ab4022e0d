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

#include <filesystem>
#include <string>
#include <vector>

#include "quadgate/campaign.h"
#include "quadgate/correctness.h"
#include "quadgate/rewriter.h"
#include "support.h"

namespace quadgate::test {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string firstFailure;

  void fail(const std::string& what) {
    if (failures++ == 0) firstFailure = what;
  }
  bool ok(std::size_t minimum) const { return failures == 0 && cases >= minimum; }
};

inline constexpr std::size_t kPropertyCases = 500;

inline std::string propertyLoadDirectory() {
  auto dir = std::filesystem::temp_directory_path() / "quadgate-test-properties";
  std::filesystem::create_directories(dir);
  return dir.string();
}

// Cases drawn across every class, masks and seeds, until `wanted` are in hand.
inline std::vector<CampaignCase> sampleCases(std::size_t wanted, std::uint64_t seed) {
  std::vector<CampaignCase> out;
  GenerateOptions options;
  options.cases = 2;
  options.loadDirectory = propertyLoadDirectory();
  Rng rng(seed);
  while (out.size() < wanted) {
    Dataset d = generateDataset(40 + rng.below(60), rng.next());
    auto auths = enumerateAuthorisations(d, static_cast<unsigned>(rng.below(16)));
    const QuadPattern& auth = rng.pick(auths);
    for (const auto& c : allQueryClasses()) {
      for (auto& generated : generateQueries(d, auth, c, rng.next(), options)) {
        out.push_back(std::move(generated));
      }
    }
  }
  return out;
}

// Written separately from the library matcher.
inline bool covers(const QuadPattern& p, const Quad& q) {
  auto same = [](const Term& pattern, const Term& term) {
    return pattern.isVariable() || pattern == term;
  };
  if (!same(p.subject, q.subject) || !same(p.predicate, q.predicate) ||
      !same(p.object, q.object)) {
    return false;
  }
  if (p.graph.isVariable()) return true;
  return p.graph.graphName() == q.graph;
}

inline Policy randomPolicy(const Dataset& d, Rng& rng) {
  Policy p;
  std::size_t n = rng.below(4);
  for (std::size_t i = 0; i < n; ++i) {
    auto auths = enumerateAuthorisations(d, static_cast<unsigned>(rng.below(16)));
    p.add(rng.pick(auths));
  }
  return p;
}

inline PropertyResult emptyPolicyIdentity(std::uint64_t seed) {
  PropertyResult r;
  for (const auto& c : sampleCases(kPropertyCases, seed)) {
    ++r.cases;
    if (c.query) {
      if (!(rewriteQuery(*c.query, Policy()) == *c.query)) r.fail(c.text());
    } else {
      auto out = rewriteUpdate(*c.update, Policy());
      if (out.size() != 1 || !(out[0] == *c.update)) r.fail(c.text());
    }
  }
  return r;
}

inline PropertyResult splitMergeRoundTrip(std::uint64_t seed) {
  PropertyResult r;
  Rng rng(seed);
  for (std::size_t i = 0; i < kPropertyCases; ++i) {
    ++r.cases;
    Dataset d = generateDataset(1 + rng.below(80), rng.next());
    Policy p = randomPolicy(d, rng);
    DatasetSplit split = splitDataset(d, p);
    bool good = datasetEquals(mergeDatasets(split.authorised, split.unauthorised), d) &&
                split.authorised.size() + split.unauthorised.size() == d.size();
    split.authorised.forEachQuad([&](const Quad& q) {
      for (const auto& a : p.patterns()) good = good && !covers(a, q);
    });
    split.unauthorised.forEachQuad([&](const Quad& q) {
      bool any = false;
      for (const auto& a : p.patterns()) any = any || covers(a, q);
      good = good && any;
    });
    if (!good) r.fail(formatPolicy(p) + writeNQuads(d));
  }
  return r;
}

inline PropertyResult parserRoundTrip(std::uint64_t seed) {
  PropertyResult r;
  for (const auto& c : sampleCases(kPropertyCases, seed)) {
    ++r.cases;
    std::string text = c.text();
    try {
      bool same = c.query ? parseQuery(text) == *c.query && serialize(parseQuery(text)) == text
                          : parseUpdate(text) == *c.update && serialize(parseUpdate(text)) == text;
      if (!same) r.fail(text);
    } catch (const std::exception& e) {
      r.fail(text + "\n" + e.what());
    }
  }
  return r;
}

// Deny-all: every SELECT answers as over an empty dataset (no rows for plain
// patterns; aggregates see no solutions) and every deleting update leaves the
// dataset as it was.
inline PropertyResult denyAll(std::uint64_t seed) {
  PropertyResult r;
  Policy all({QuadPattern::make(Term::variable("s"), Term::variable("p"), Term::variable("o"),
                                GraphTerm::variable("g"))});
  Rng rng(seed);
  for (const auto& c : sampleCases(kPropertyCases, seed)) {
    Dataset d = generateDataset(60, rng.next());
    if (c.query && c.query->form == QueryForm::Select) {
      ++r.cases;
      ResultSet got = evaluate(d, rewriteQuery(*c.query, all));
      bool plain = c.queryClass.rfind("bgp", 0) == 0;
      if (!resultsEqual(got, evaluate(Dataset(), *c.query)) || (plain && !got.rows.empty())) {
        r.fail(c.text());
      }
    } else if (c.update && classifyUpdate(*c.update) == UpdateCheck::Delete) {
      ++r.cases;
      if (!datasetEquals(executeUpdates(d, rewriteUpdate(*c.update, all)), d)) r.fail(c.text());
    }
  }
  return r;
}

}  // namespace quadgate::test
