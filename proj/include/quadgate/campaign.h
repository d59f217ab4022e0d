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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "quadgate/correctness.h"
#include "quadgate/dataset.h"
#include "quadgate/sparql_ast.h"

namespace quadgate {

// Seed derivation: one splitmix64 step per part, so related streams (mask,
// authorisation, class) get unrelated seeds.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t deriveSeed(std::uint64_t base, std::initializer_list<std::uint64_t> parts);
std::uint64_t hashName(std::string_view name);  // 64-bit FNV-1a

// mt19937_64 with rejection sampling for bounded draws; unlike the std
// distributions this gives the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t bound);  // uniform in [0, bound), bound > 0
  std::int64_t between(std::int64_t low, std::int64_t high);  // inclusive
  bool chance(std::uint64_t numerator, std::uint64_t denominator);

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[below(items.size())];
  }

 private:
  std::mt19937_64 engine_;
};

// Authorisation masks: a set bit keeps the quad's constant at that position.
inline constexpr unsigned kMaskSubject = 1;
inline constexpr unsigned kMaskPredicate = 2;
inline constexpr unsigned kMaskObject = 4;
inline constexpr unsigned kMaskGraph = 8;
std::string maskName(unsigned mask);  // "SP--" style

enum class AuthorisationShape { Quad, Triple };

const std::vector<std::string>& allQueryClasses();
bool isQueryClass(std::string_view name);

struct CampaignConfig {
  std::uint64_t seed = 42;
  std::size_t datasetSize = 200;
  std::string datasetPath;  // load this N-Quads/TriG file instead of generating
  AuthorisationShape shape = AuthorisationShape::Quad;
  std::vector<unsigned> masks;  // empty: every mask of the shape
  std::vector<std::string> queryClasses;  // empty: every class
  Strategy strategy = Strategy::NotExists;
  std::size_t casesPerClass = 3;
  std::size_t authorisationsPerMask = 10;  // 0: no cap
  std::string loadDirectory;  // LOAD documents; empty: a temp directory

  std::vector<unsigned> effectiveMasks() const;
  std::vector<std::string> effectiveClasses() const;
};

// Flat `key = value` lines, '#' comments. Keys: seed, dataset_size, dataset,
// authorisation_shape (quad|triple), masks (all | 0,3,15), query_classes
// (all | comma list), strategy, cases_per_class, authorisations_per_mask,
// load_directory. Baseline strategies default to the triple shape and the
// bgp classes. Throws InvalidArgument.
CampaignConfig parseCampaignConfig(std::string_view text);
CampaignConfig loadCampaignConfig(const std::string& path);

// Synthetic shop data: offers (type, product, vendor, price, deliveryDays),
// products (type, label, producer, numeric property) and reviews in three
// named graphs, vendors in the default graph. Exactly `size` quads.
Dataset generateDataset(std::size_t size, std::uint64_t seed);
Dataset generateDataset(const CampaignConfig& config);

// One pattern per dataset quad, duplicates removed, first occurrence order.
// Triple shape forces the graph to a variable and ignores the graph bit.
std::vector<QuadPattern> enumerateAuthorisations(
    const Dataset& dataset, unsigned mask,
    AuthorisationShape shape = AuthorisationShape::Quad);

struct CampaignCase {
  std::string queryClass;
  std::optional<Query> query;  // exactly one of query / update is set
  std::optional<Update> update;

  std::string text() const;
};

struct GenerateOptions {
  std::size_t cases = 3;  // graph-management classes emit one per graph instead
  std::string loadDirectory;
};

// Throws InvalidArgument for an unknown class or one the dataset cannot
// support (no deliveryDays for the numeric aggregates).
std::vector<CampaignCase> generateQueries(const Dataset& dataset,
                                          const QuadPattern& authorisation,
                                          const std::string& queryClass,
                                          std::uint64_t seed,
                                          const GenerateOptions& options = {});

struct CaseResult {
  std::string caseId;
  std::string queryClass;
  unsigned mask = 0;
  QuadPattern authorisation = QuadPattern::make(
      Term::variable("s"), Term::variable("p"), Term::variable("o"), GraphTerm::variable("g"));
  std::string text;
  Verdict verdict;
  std::optional<std::string> error;

  bool passed() const { return !error && verdict.allTrue(); }
};

struct ClassCounts {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct CampaignReport {
  CampaignConfig config;
  std::size_t datasetQuads = 0;
  std::size_t authorisations = 0;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t errors = 0;
  std::map<std::string, ClassCounts> classes;
  std::map<unsigned, std::map<std::string, std::size_t>> coverage;  // mask -> class -> cases
  std::map<std::string, std::size_t> verdictPatterns;  // "TFF" -> count, errors excluded
  std::vector<CaseResult> failures;  // sorted by case id
  double seconds = 0;
};

// Witness lists of failures are capped at this many entries in the report.
inline constexpr std::size_t kMaxWitnesses = 20;

CampaignReport runCampaign(const CampaignConfig& config);

nlohmann::json toJson(const CaseResult& result);
nlohmann::json toJson(const CampaignReport& report);

}  // namespace quadgate
