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

#include "quadgate/campaign.h"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>
#include <sstream>

#include "quadgate/errors.h"
#include "quadgate/rdf_io.h"
#include "quadgate/sparql.h"

namespace quadgate {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t deriveSeed(std::uint64_t base, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t state = base;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t part : parts) {
    state ^= part;
    out = splitmix64(state);
  }
  return out;
}

std::uint64_t hashName(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidArgument("Rng::below(0)");
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t r;
  do {
    r = engine_();
  } while (r > limit);
  return r % bound;
}

std::int64_t Rng::between(std::int64_t low, std::int64_t high) {
  return low + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(high - low) + 1));
}

bool Rng::chance(std::uint64_t numerator, std::uint64_t denominator) {
  return below(denominator) < numerator;
}

std::string maskName(unsigned mask) {
  std::string out = "----";
  if (mask & kMaskSubject) out[0] = 'S';
  if (mask & kMaskPredicate) out[1] = 'P';
  if (mask & kMaskObject) out[2] = 'O';
  if (mask & kMaskGraph) out[3] = 'G';
  return out;
}

const std::vector<std::string>& allQueryClasses() {
  static const std::vector<std::string> classes = {
      "bgp1",        "bgp2",        "bgp3",      "count",       "sum",
      "min",         "max",         "avg",       "group_concat", "subselect",
      "minus",       "exists",      "not_exists", "insert_data", "delete_data",
      "delete",      "insert",      "delete_insert", "clear",    "drop",
      "add",         "load",        "copy",      "move"};
  return classes;
}

bool isQueryClass(std::string_view name) {
  const auto& all = allQueryClasses();
  return std::find(all.begin(), all.end(), name) != all.end();
}

std::vector<unsigned> CampaignConfig::effectiveMasks() const {
  if (!masks.empty()) return masks;
  unsigned count = shape == AuthorisationShape::Quad ? 16 : 8;
  std::vector<unsigned> out;
  for (unsigned m = 0; m < count; ++m) out.push_back(m);
  return out;
}

std::vector<std::string> CampaignConfig::effectiveClasses() const {
  return queryClasses.empty() ? allQueryClasses() : queryClasses;
}

// ---------------------------------------------------------------------------
// Config

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> splitList(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint64_t parseCount(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long n = 0;
  try {
    n = std::stoull(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty() || value[0] == '-') {
    throw InvalidArgument("config: " + key + " expects a non-negative integer, got '" + value + "'");
  }
  return n;
}

}  // namespace

CampaignConfig parseCampaignConfig(std::string_view text) {
  CampaignConfig config;
  bool shapeSet = false;
  bool classesSet = false;
  std::stringstream in{std::string(text)};
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw InvalidArgument("config line " + std::to_string(lineNo) + ": expected key = value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "seed") {
      config.seed = parseCount(key, value);
    } else if (key == "dataset_size") {
      config.datasetSize = parseCount(key, value);
      if (config.datasetSize == 0) throw InvalidArgument("config: dataset_size must be at least 1");
    } else if (key == "dataset") {
      config.datasetPath = value;
    } else if (key == "authorisation_shape") {
      if (value == "quad") {
        config.shape = AuthorisationShape::Quad;
      } else if (value == "triple") {
        config.shape = AuthorisationShape::Triple;
      } else {
        throw InvalidArgument("config: authorisation_shape must be quad or triple");
      }
      shapeSet = true;
    } else if (key == "masks") {
      config.masks.clear();
      if (value != "all") {
        for (const auto& item : splitList(value)) {
          config.masks.push_back(static_cast<unsigned>(parseCount(key, item)));
        }
      }
    } else if (key == "query_classes") {
      config.queryClasses.clear();
      if (value != "all") {
        for (const auto& item : splitList(value)) {
          if (!isQueryClass(item)) throw InvalidArgument("config: unknown query class '" + item + "'");
          config.queryClasses.push_back(item);
        }
      }
      classesSet = true;
    } else if (key == "strategy") {
      config.strategy = parseStrategy(value);
    } else if (key == "cases_per_class") {
      config.casesPerClass = parseCount(key, value);
    } else if (key == "authorisations_per_mask") {
      config.authorisationsPerMask = parseCount(key, value);
    } else if (key == "load_directory") {
      config.loadDirectory = value;
    } else {
      throw InvalidArgument("config: unknown key '" + key + "'");
    }
  }
  if (config.strategy != Strategy::NotExists) {
    if (!shapeSet) config.shape = AuthorisationShape::Triple;
    if (!classesSet) config.queryClasses = {"bgp1", "bgp2", "bgp3"};
  }
  unsigned limit = config.shape == AuthorisationShape::Quad ? 16 : 8;
  for (unsigned m : config.masks) {
    if (m >= limit) {
      throw InvalidArgument("config: mask " + std::to_string(m) + " out of range for the " +
                            (limit == 16 ? "quad" : "triple") + " shape");
    }
  }
  return config;
}

CampaignConfig loadCampaignConfig(const std::string& path) {
  return parseCampaignConfig(readFile(path));
}

// ---------------------------------------------------------------------------
// Dataset generator

namespace {

const std::string kVocab = "http://example.org/shop/vocabulary/";
const std::string kInstances = "http://example.org/shop/instances/";
const std::string kGraphs = "http://example.org/shop/graphs/";
const std::string kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
const std::string kCountries = "http://example.org/shop/countries/";

Term vocab(const std::string& local) { return Term::iri(kVocab + local); }
Term instance(const std::string& kind, std::size_t n) {
  return Term::iri(kInstances + kind + std::to_string(n));
}

PrefixMap campaignPrefixes() {
  return {{"rdf", std::string(kRdf)},
          {"rdfs", kRdfs},
          {"shop", kVocab},
          {"inst", kInstances},
          {"graph", kGraphs}};
}

std::string priceLiteral(Rng& rng) {
  std::int64_t cents = rng.between(500, 999999);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lld", static_cast<long long>(cents / 100),
                static_cast<long long>(cents % 100));
  return buf;
}

}  // namespace

Dataset generateDataset(std::size_t size, std::uint64_t seed) {
  Rng rng(deriveSeed(seed, {hashName("dataset")}));
  const GraphName offers = GraphName::named(kGraphs + "Offers");
  const GraphName products = GraphName::named(kGraphs + "Products");
  const GraphName reviews = GraphName::named(kGraphs + "Reviews");
  const GraphName vendors;  // default graph
  static const std::vector<std::string> countries = {"US", "GB", "DE", "FR", "JP"};
  const Term type = Term::iri(kRdfType);
  const Term label = Term::iri(kRdfs + "label");

  std::vector<Quad> out;
  auto emit = [&](const Term& s, const Term& p, const Term& o, const GraphName& g) {
    if (out.size() < size) out.push_back(Quad::make(s, p, o, g));
  };
  for (std::size_t round = 0; out.size() < size; ++round) {
    Term offer = instance("Offer", round);
    emit(offer, type, vocab("Offer"), offers);
    emit(offer, vocab("product"), instance("Product", round / 2), offers);
    emit(offer, vocab("vendor"), instance("Vendor", round / 5), offers);
    emit(offer, vocab("price"), Term::decimal(priceLiteral(rng)), offers);
    emit(offer, vocab("deliveryDays"), Term::integer(rng.between(1, 7)), offers);
    if (round % 2 == 0) {
      Term product = instance("Product", round / 2);
      emit(product, type, vocab("Product"), products);
      emit(product, label, Term::string("Product " + std::to_string(round / 2)), products);
      emit(product, vocab("producer"), instance("Producer", round / 6), products);
      emit(product, vocab("productPropertyNumeric1"), Term::integer(rng.between(1, 2000)), products);
    }
    if (round % 3 == 0) {
      Term review = instance("Review", round / 3);
      emit(review, type, vocab("Review"), reviews);
      emit(review, vocab("reviewFor"),
           instance("Product", static_cast<std::size_t>(rng.below(round / 2 + 1))), reviews);
      emit(review, vocab("rating1"), Term::integer(rng.between(1, 10)), reviews);
      emit(review, vocab("title"), Term::langString("Review " + std::to_string(round / 3), "en"),
           reviews);
    }
    if (round % 5 == 0) {
      Term vendor = instance("Vendor", round / 5);
      emit(vendor, type, vocab("Vendor"), vendors);
      emit(vendor, label, Term::string("Vendor " + std::to_string(round / 5)), vendors);
      emit(vendor, vocab("country"), Term::iri(kCountries + rng.pick(countries)), vendors);
    }
  }
  Dataset ds;
  for (const auto& q : out) ds.insert(q);
  return ds;
}

Dataset generateDataset(const CampaignConfig& config) {
  return generateDataset(config.datasetSize, config.seed);
}

std::vector<QuadPattern> enumerateAuthorisations(const Dataset& dataset, unsigned mask,
                                                 AuthorisationShape shape) {
  if (shape == AuthorisationShape::Triple) mask &= ~kMaskGraph;
  std::vector<QuadPattern> out;
  std::set<QuadPattern> seen;
  dataset.forEachQuad([&](const Quad& q) {
    auto pick = [&](unsigned bit, const Term& t, const char* var) {
      return (mask & bit) ? t : Term::variable(var);
    };
    GraphTerm g = (mask & kMaskGraph) ? GraphTerm(q.graph) : GraphTerm::variable("g");
    QuadPattern p = QuadPattern::make(pick(kMaskSubject, q.subject, "s"),
                                      pick(kMaskPredicate, q.predicate, "p"),
                                      pick(kMaskObject, q.object, "o"), g);
    if (seen.insert(p).second) out.push_back(p);
  });
  return out;
}

std::string CampaignCase::text() const {
  return query ? serialize(*query) : serialize(*update);
}

// ---------------------------------------------------------------------------
// Query generation

namespace {

// Turns dataset quads into patterns. Each distinct term (and graph) is
// variablised or kept once per case, so repeated terms become joins.
class PatternMaker {
 public:
  PatternMaker(Rng& rng, const Dataset& dataset, const QuadPattern& authorisation)
      : rng_(rng), all_(dataset.quads()) {
    for (const auto& q : all_) {
      if (matchQuad(authorisation, q)) matching_.push_back(q);
    }
  }

  const std::vector<Quad>& quads() const { return all_; }

  // First quad comes from the authorisation's matches half of the time; the
  // rest share a subject or object with an earlier quad when possible. Class
  // objects of rdf:type are not shared nodes.
  std::vector<Quad> draw(std::size_t n) {
    std::vector<Quad> chosen;
    if (all_.empty()) return chosen;
    bool fromAuth = !matching_.empty() && rng_.chance(1, 2);
    chosen.push_back(fromAuth ? rng_.pick(matching_) : rng_.pick(all_));
    const Term type = Term::iri(kRdfType);
    while (chosen.size() < n) {
      std::set<Term> nodes;
      for (const auto& q : chosen) {
        nodes.insert(q.subject);
        if (q.object.isIri() && q.predicate != type) nodes.insert(q.object);
      }
      std::vector<Quad> linked;
      for (const auto& q : all_) {
        if (std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
        if (nodes.count(q.subject) || nodes.count(q.object)) linked.push_back(q);
      }
      if (linked.empty()) {
        if (chosen.size() == all_.size()) break;
        Quad q = rng_.pick(all_);
        if (std::find(chosen.begin(), chosen.end(), q) == chosen.end()) chosen.push_back(q);
      } else {
        chosen.push_back(rng_.pick(linked));
      }
    }
    return chosen;
  }

  Quad drawOne() { return draw(1).front(); }

  void forceVariable(const Term& t) {
    if (!terms_.count(t)) terms_[t] = "v" + std::to_string(++termCount_);
  }

  QuadPattern pattern(const Quad& q) {
    return QuadPattern::make(term(q.subject), term(q.predicate), term(q.object), graph(q.graph));
  }

  // With several patterns, none is left all-variable: it keeps its predicate.
  std::vector<QuadPattern> patterns(const std::vector<Quad>& quads) {
    std::vector<QuadPattern> out;
    for (const auto& q : quads) {
      QuadPattern p = pattern(q);
      if (quads.size() > 1 && p.subject.isVariable() && p.predicate.isVariable() &&
          p.object.isVariable()) {
        p = QuadPattern::make(p.subject, q.predicate, p.object, p.graph);
      }
      out.push_back(std::move(p));
    }
    return out;
  }

 private:
  Term term(const Term& t) {
    auto it = terms_.find(t);
    if (it == terms_.end()) {
      std::string name = rng_.chance(1, 2) ? "v" + std::to_string(++termCount_) : "";
      it = terms_.emplace(t, name).first;
    }
    return it->second.empty() ? t : Term::variable(it->second);
  }

  GraphTerm graph(const GraphName& g) {
    if (g.isDefault()) return GraphTerm();
    auto it = graphs_.find(g);
    if (it == graphs_.end()) {
      std::string name = rng_.chance(1, 2) ? "g" + std::to_string(++graphCount_) : "";
      it = graphs_.emplace(g, name).first;
    }
    return it->second.empty() ? GraphTerm(g) : GraphTerm::variable(it->second);
  }

  Rng& rng_;
  std::vector<Quad> all_;
  std::vector<Quad> matching_;
  std::map<Term, std::string> terms_;
  std::map<GraphName, std::string> graphs_;
  int termCount_ = 0;
  int graphCount_ = 0;
};

std::vector<std::string> patternVariables(const std::vector<QuadPattern>& patterns) {
  std::vector<std::string> out;
  for (const auto& p : patterns) {
    for (const auto& v : p.variables()) {
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    }
  }
  return out;
}

Query selectOver(GroupPattern where) {
  Query q;
  q.form = QueryForm::Select;
  q.prefixes = campaignPrefixes();
  q.select.selectAll = true;
  q.select.where = std::move(where);
  return q;
}

Projection plain(const std::string& variable) {
  Projection p;
  p.variable = variable;
  return p;
}

Projection aggregate(Aggregate kind, const std::string& alias,
                     std::optional<std::string> argument) {
  Projection p;
  p.variable = alias;
  p.aggregate = kind;
  p.argument = std::move(argument);
  return p;
}

std::size_t patternCount(Rng& rng) { return static_cast<std::size_t>(rng.between(1, 3)); }

Query bgpQuery(PatternMaker& maker, std::size_t n) {
  return selectOver(groupOfPatterns(maker.patterns(maker.draw(n))));
}

Query countQuery(PatternMaker& maker, Rng& rng, bool concat) {
  auto quads = maker.draw(patternCount(rng));
  if (concat) maker.forceVariable(quads.front().object);
  auto patterns = maker.patterns(quads);
  Query q = selectOver(groupOfPatterns(patterns));
  q.select.selectAll = false;
  auto vars = patternVariables(patterns);
  if (!vars.empty() && rng.chance(1, 2)) {
    const std::string& key = vars.front();
    q.select.projection.push_back(plain(key));
    q.select.groupBy.push_back(key);
  }
  if (concat) {
    q.select.projection.push_back(
        aggregate(Aggregate::GroupConcat, "concat", patterns.front().object.value()));
  } else {
    q.select.projection.push_back(aggregate(Aggregate::Count, "count", std::nullopt));
  }
  return q;
}

Query numericQuery(PatternMaker& maker, Rng& rng, Aggregate kind, const std::string& alias) {
  const Term days = vocab("deliveryDays");
  std::vector<Quad> offers;
  for (const auto& q : maker.quads()) {
    if (q.predicate == days) offers.push_back(q);
  }
  if (offers.empty()) {
    throw InvalidArgument("class " + alias + " needs " + days.toString() + " in the dataset");
  }
  const Quad& sample = rng.pick(offers);
  GraphTerm graph = rng.chance(1, 2) ? GraphTerm(sample.graph) : GraphTerm::variable("g");
  if (sample.graph.isDefault()) graph = GraphTerm();
  Term offer = rng.chance(1, 4) ? sample.subject : Term::variable("s");
  std::vector<QuadPattern> patterns = {
      QuadPattern::make(offer, Term::iri(kRdfType), vocab("Offer"), graph),
      QuadPattern::make(offer, days, Term::variable("o"), graph)};
  bool grouped = rng.chance(1, 2);
  if (grouped) patterns.push_back(QuadPattern::make(offer, vocab("vendor"), Term::variable("vendor"), graph));
  Query q = selectOver(groupOfPatterns(patterns));
  q.select.selectAll = false;
  if (grouped) {
    q.select.projection.push_back(plain("vendor"));
    q.select.groupBy.push_back("vendor");
  }
  q.select.projection.push_back(aggregate(kind, alias, "o"));
  return q;
}

// Outer all-variable pattern sharing the inner block's first subject.
Query nestedQuery(PatternMaker& maker, Rng& rng, const std::string& queryClass) {
  auto quads = maker.draw(patternCount(rng));
  maker.forceVariable(quads.front().subject);
  auto inner = maker.patterns(quads);
  GraphTerm outerGraph =
      quads.front().graph.isDefault() ? GraphTerm() : GraphTerm::variable("g0");
  QuadPattern outer = QuadPattern::make(inner.front().subject, Term::variable("p0"),
                                        Term::variable("o0"), outerGraph);
  GroupPattern where = groupOfPatterns({outer});
  GroupPattern body = groupOfPatterns(inner);
  if (queryClass == "subselect") {
    SelectQuery sub;
    sub.distinct = rng.chance(1, 2);
    auto vars = patternVariables(inner);
    if (rng.chance(1, 2)) {
      sub.selectAll = true;
    } else {
      for (const auto& v : vars) {
        if (v == vars.front() || rng.chance(1, 2)) sub.projection.push_back(plain(v));
      }
    }
    sub.where = std::move(body);
    where.elements.push_back(SubSelectElement{std::move(sub)});
  } else if (queryClass == "minus") {
    where.elements.push_back(MinusElement{std::move(body)});
  } else {
    where.elements.push_back(ExistsElement{queryClass == "not_exists", std::move(body)});
  }
  return selectOver(std::move(where));
}

GraphName otherGraph(Rng& rng, const Dataset& dataset, const GraphName& avoid) {
  std::vector<GraphName> graphs;
  for (const auto& g : dataset.listGraphs()) {
    if (g != avoid) graphs.push_back(g);
  }
  if (graphs.empty()) return avoid;
  return rng.pick(graphs);
}

Quad variantOf(Rng& rng, const Dataset& dataset, const Quad& q, std::size_t serial) {
  switch (rng.below(3)) {
    case 0:
      return q;
    case 1:
      return Quad::make(q.subject, q.predicate,
                        Term::string("generated " + std::to_string(serial)), q.graph);
    default:
      return Quad::make(q.subject, q.predicate, q.object, otherGraph(rng, dataset, q.graph));
  }
}

std::vector<Quad> unique(std::vector<Quad> quads) {
  std::vector<Quad> out;
  for (auto& q : quads) {
    if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(std::move(q));
  }
  return out;
}

std::vector<QuadPattern> someOf(Rng& rng, const std::vector<QuadPattern>& patterns) {
  std::vector<QuadPattern> out;
  for (const auto& p : patterns) {
    if (rng.chance(1, 2)) out.push_back(p);
  }
  if (out.empty()) out.push_back(rng.pick(patterns));
  return out;
}

// Template patterns copied from the WHERE clause into another graph.
std::vector<QuadPattern> retargeted(Rng& rng, const Dataset& dataset,
                                    const std::vector<QuadPattern>& patterns) {
  auto graphs = dataset.listGraphs();
  std::vector<QuadPattern> out;
  for (auto p : someOf(rng, patterns)) {
    if (!rng.chance(1, 4)) p.graph = GraphTerm(rng.pick(graphs));
    out.push_back(std::move(p));
  }
  return out;
}

Update withPrefixes(Update u) {
  u.prefixes = campaignPrefixes();
  return u;
}

std::vector<GraphName> graphsWithData(const Dataset& dataset) {
  std::vector<GraphName> out;
  for (const auto& g : dataset.listGraphs()) {
    if (!g.isDefault() || !dataset.graphTriples(g).empty()) out.push_back(g);
  }
  return out;
}

std::string loadDocument(Rng& rng, PatternMaker& maker, const std::string& directory,
                         std::uint64_t seed, std::size_t index) {
  std::set<Triple> triples;
  std::size_t n = static_cast<std::size_t>(rng.between(1, 4));
  std::size_t serial = 0;
  for (const auto& q : maker.draw(n)) {
    Triple t = q.triple();
    if (rng.chance(1, 3)) t.object = Term::string("loaded " + std::to_string(++serial));
    triples.insert(t);
  }
  namespace fs = std::filesystem;
  fs::path dir = directory.empty() ? fs::temp_directory_path() / "quadgate-load" : fs::path(directory);
  fs::create_directories(dir);
  char name[64];
  std::snprintf(name, sizeof name, "load-%016llx-%zu.nt", static_cast<unsigned long long>(seed), index);
  fs::path file = fs::absolute(dir / name);
  writeFile(file.string(), writeNTriples(triples));
  return "file://" + file.string();
}

CampaignCase queryCase(const std::string& queryClass, Query q) {
  CampaignCase c;
  c.queryClass = queryClass;
  c.query = std::move(q);
  return c;
}

CampaignCase updateCase(const std::string& queryClass, Update u) {
  CampaignCase c;
  c.queryClass = queryClass;
  c.update = withPrefixes(std::move(u));
  return c;
}

std::vector<CampaignCase> graphManagementCases(const Dataset& dataset, PatternMaker& maker,
                                               Rng& rng, const std::string& queryClass,
                                               std::uint64_t seed,
                                               const GenerateOptions& options) {
  std::vector<CampaignCase> out;
  const GraphName archive = GraphName::named(kGraphs + "Archive");
  std::size_t index = 0;
  for (const auto& g : graphsWithData(dataset)) {
    if (queryClass == "clear") {
      out.push_back(updateCase(queryClass, Update::clear(GraphTarget::of(g))));
    } else if (queryClass == "drop") {
      out.push_back(updateCase(queryClass, Update::drop(GraphTarget::of(g))));
    } else if (queryClass == "load") {
      std::string doc = loadDocument(rng, maker, options.loadDirectory, seed, index++);
      out.push_back(updateCase(queryClass, Update::load(doc, g)));
    } else {
      std::vector<GraphName> targets;
      for (const auto& t : dataset.listGraphs()) {
        if (t != g) targets.push_back(t);
      }
      if (!dataset.hasGraph(archive)) targets.push_back(archive);
      GraphName dst = rng.pick(targets);
      if (queryClass == "add") {
        out.push_back(updateCase(queryClass, Update::add(g, dst)));
      } else if (queryClass == "copy") {
        out.push_back(updateCase(queryClass, Update::copy(g, dst)));
      } else {
        out.push_back(updateCase(queryClass, Update::move(g, dst)));
      }
    }
  }
  return out;
}

CampaignCase oneCase(const Dataset& dataset, PatternMaker& maker, Rng& rng,
                     const std::string& c, std::size_t serial) {
  if (c == "bgp1") return queryCase(c, bgpQuery(maker, 1));
  if (c == "bgp2") return queryCase(c, bgpQuery(maker, 2));
  if (c == "bgp3") return queryCase(c, bgpQuery(maker, 3));
  if (c == "count") return queryCase(c, countQuery(maker, rng, false));
  if (c == "group_concat") return queryCase(c, countQuery(maker, rng, true));
  if (c == "sum") return queryCase(c, numericQuery(maker, rng, Aggregate::Sum, "sum"));
  if (c == "min") return queryCase(c, numericQuery(maker, rng, Aggregate::Min, "min"));
  if (c == "max") return queryCase(c, numericQuery(maker, rng, Aggregate::Max, "max"));
  if (c == "avg") return queryCase(c, numericQuery(maker, rng, Aggregate::Avg, "avg"));
  if (c == "subselect" || c == "minus" || c == "exists" || c == "not_exists") {
    return queryCase(c, nestedQuery(maker, rng, c));
  }
  if (c == "insert_data") {
    std::vector<Quad> quads;
    for (const auto& q : maker.draw(patternCount(rng))) {
      quads.push_back(variantOf(rng, dataset, q, serial * 4 + quads.size()));
    }
    return updateCase(c, Update::insertData(unique(std::move(quads))));
  }
  if (c == "delete_data") {
    auto quads = maker.draw(patternCount(rng));
    if (rng.chance(1, 4)) {
      const Quad& q = quads.front();
      quads.push_back(Quad::make(q.subject, q.predicate,
                                 Term::string("absent " + std::to_string(serial)), q.graph));
    }
    return updateCase(c, Update::deleteData(unique(std::move(quads))));
  }
  auto where = maker.patterns(maker.draw(patternCount(rng)));
  if (c == "delete") {
    if (rng.chance(1, 2)) return updateCase(c, Update::deleteWhere(where));
    return updateCase(c, Update::modify(someOf(rng, where), {}, groupOfPatterns(where)));
  }
  if (c == "insert") {
    return updateCase(c, Update::modify({}, retargeted(rng, dataset, where), groupOfPatterns(where)));
  }
  if (c == "delete_insert") {
    auto deleted = someOf(rng, where);
    return updateCase(c, Update::modify(deleted, retargeted(rng, dataset, where),
                                        groupOfPatterns(where)));
  }
  throw InvalidArgument("unknown query class '" + c + "'");
}

}  // namespace

std::vector<CampaignCase> generateQueries(const Dataset& dataset, const QuadPattern& authorisation,
                                          const std::string& queryClass, std::uint64_t seed,
                                          const GenerateOptions& options) {
  if (!isQueryClass(queryClass)) throw InvalidArgument("unknown query class '" + queryClass + "'");
  if (dataset.empty()) throw InvalidArgument("cannot generate queries over an empty dataset");
  Rng rng(seed);
  static const std::set<std::string> graphClasses = {"clear", "drop", "add", "copy", "move", "load"};
  if (graphClasses.count(queryClass)) {
    PatternMaker maker(rng, dataset, authorisation);
    return graphManagementCases(dataset, maker, rng, queryClass, seed, options);
  }
  std::vector<CampaignCase> out;
  for (std::size_t i = 0; i < options.cases; ++i) {
    PatternMaker maker(rng, dataset, authorisation);
    out.push_back(oneCase(dataset, maker, rng, queryClass, i));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runner

namespace {

std::string caseId(unsigned mask, std::size_t auth, const std::string& queryClass, std::size_t n) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "m%02u-a%04zu-%s-%02zu", mask, auth, queryClass.c_str(), n);
  return buf;
}

std::string verdictKey(const Verdict& v) {
  return std::string(v.secure ? "T" : "F") + (v.sound ? "T" : "F") + (v.maximum ? "T" : "F");
}

Verdict runCase(const Dataset& dataset, const Policy& policy, const CampaignCase& c,
                Strategy strategy) {
  std::string text = c.text();
  if (c.query) {
    Query parsed = parseQuery(text);
    if (!(parsed == *c.query)) throw Error("serialised query does not parse back to itself");
    return checkQuery(dataset, policy, parsed, strategy);
  }
  if (strategy != Strategy::NotExists) {
    throw UnsupportedError("updates under the " + strategyName(strategy) + " strategy");
  }
  Update parsed = parseUpdate(text);
  if (!(parsed == *c.update)) throw Error("serialised update does not parse back to itself");
  return checkUpdate(dataset, policy, parsed);
}

// Keeps the first `cap` indices of a seeded shuffle, in ascending order.
std::vector<std::size_t> sampleIndices(std::size_t n, std::size_t cap, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  if (cap == 0 || cap >= n) return idx;
  Rng rng(seed);
  for (std::size_t i = 0; i < cap; ++i) {
    std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

CampaignReport runCampaign(const CampaignConfig& config) {
  auto start = std::chrono::steady_clock::now();
  CampaignReport report;
  report.config = config;
  Dataset dataset = config.datasetPath.empty() ? generateDataset(config) : loadDataset(config.datasetPath);
  report.datasetQuads = dataset.size();
  GenerateOptions options;
  options.cases = config.casesPerClass;
  options.loadDirectory = config.loadDirectory;
  auto classes = config.effectiveClasses();
  for (const auto& c : classes) report.classes[c];

  auto record = [&](CaseResult r) {
    ++report.cases;
    ++report.coverage[r.mask][r.queryClass];
    auto& counts = report.classes[r.queryClass];
    if (r.error) {
      ++report.errors;
    } else {
      ++report.verdictPatterns[verdictKey(r.verdict)];
    }
    if (r.passed()) {
      ++report.passed;
      ++counts.passed;
      return;
    }
    ++report.failed;
    ++counts.failed;
    auto& w = r.verdict.witnesses;
    if (w.size() > kMaxWitnesses) {
      std::size_t more = w.size() - kMaxWitnesses;
      w.resize(kMaxWitnesses);
      w.push_back({"report", "truncated", std::to_string(more) + " more witnesses"});
    }
    report.failures.push_back(std::move(r));
  };

  for (unsigned mask : config.effectiveMasks()) {
    auto auths = enumerateAuthorisations(dataset, mask, config.shape);
    auto chosen = sampleIndices(auths.size(), config.authorisationsPerMask,
                                deriveSeed(config.seed, {hashName("authorisations"), mask}));
    report.authorisations += chosen.size();
    for (std::size_t a : chosen) {
      const QuadPattern& auth = auths[a];
      Policy policy({auth});
      for (const auto& queryClass : classes) {
        std::uint64_t seed = deriveSeed(config.seed, {mask, a, hashName(queryClass)});
        CaseResult base;
        base.queryClass = queryClass;
        base.mask = mask;
        base.authorisation = auth;
        std::vector<CampaignCase> cases;
        try {
          cases = generateQueries(dataset, auth, queryClass, seed, options);
        } catch (const std::exception& e) {
          CaseResult r = base;
          r.caseId = caseId(mask, a, queryClass, 0);
          r.error = std::string("generation failed: ") + e.what();
          r.verdict = {false, false, false, {{"error", "exception", *r.error}}};
          record(std::move(r));
          continue;
        }
        for (std::size_t n = 0; n < cases.size(); ++n) {
          CaseResult r = base;
          r.caseId = caseId(mask, a, queryClass, n);
          try {
            r.text = cases[n].text();
            r.verdict = runCase(dataset, policy, cases[n], config.strategy);
          } catch (const std::exception& e) {
            r.error = e.what();
            r.verdict = {false, false, false, {{"error", "exception", e.what()}}};
          }
          record(std::move(r));
        }
      }
    }
  }
  std::sort(report.failures.begin(), report.failures.end(),
            [](const CaseResult& a, const CaseResult& b) { return a.caseId < b.caseId; });
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json toJson(const CaseResult& result) {
  nlohmann::json out = toJson(result.verdict);
  out["case_id"] = result.caseId;
  out["query_class"] = result.queryClass;
  out["mask"] = maskName(result.mask);
  out["authorisation"] = result.authorisation.toString();
  out["query"] = result.text;
  if (result.error) out["error"] = *result.error;
  return out;
}

nlohmann::json toJson(const CampaignReport& report) {
  const CampaignConfig& c = report.config;
  nlohmann::json out;
  nlohmann::json config;
  config["seed"] = c.seed;
  config["dataset_size"] = c.datasetSize;
  if (!c.datasetPath.empty()) config["dataset"] = c.datasetPath;
  config["authorisation_shape"] = c.shape == AuthorisationShape::Quad ? "quad" : "triple";
  config["masks"] = c.effectiveMasks();
  config["query_classes"] = c.effectiveClasses();
  config["strategy"] = strategyName(c.strategy);
  config["cases_per_class"] = c.casesPerClass;
  config["authorisations_per_mask"] = c.authorisationsPerMask;
  out["config"] = config;
  out["totals"] = {{"dataset_quads", report.datasetQuads},
                   {"authorisations", report.authorisations},
                   {"cases", report.cases},
                   {"passed", report.passed},
                   {"failed", report.failed},
                   {"errors", report.errors}};
  out["classes"] = nlohmann::json::object();
  for (const auto& [name, counts] : report.classes) {
    out["classes"][name] = {{"passed", counts.passed}, {"failed", counts.failed}};
  }
  out["coverage"] = nlohmann::json::object();
  for (const auto& [mask, perClass] : report.coverage) {
    out["coverage"][maskName(mask)] = perClass;
  }
  out["verdicts"] = report.verdictPatterns;
  out["failures"] = nlohmann::json::array();
  for (const auto& f : report.failures) out["failures"].push_back(toJson(f));
  out["wall_clock_seconds"] = report.seconds;
  return out;
}

}  // namespace quadgate
