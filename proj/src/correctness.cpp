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

#include "quadgate/correctness.h"

#include <algorithm>
#include <map>
#include <optional>

#include "quadgate/errors.h"
#include "quadgate/rewriter.h"

namespace quadgate {

std::string strategyName(Strategy strategy) {
  switch (strategy) {
    case Strategy::NotExists:
      return "not-exists";
    case Strategy::BaselineNeq:
      return "baseline-neq";
    case Strategy::BaselineOptional:
      return "baseline-optional";
  }
  return "";
}

Strategy parseStrategy(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "paper") return Strategy::NotExists;
  for (Strategy s : {Strategy::NotExists, Strategy::BaselineNeq, Strategy::BaselineOptional}) {
    if (strategyName(s) == key) return s;
  }
  throw InvalidArgument("unknown strategy '" + name + "'");
}

nlohmann::json toJson(const Verdict& verdict) {
  nlohmann::json out;
  out["secure"] = verdict.secure;
  out["sound"] = verdict.sound;
  out["maximum"] = verdict.maximum;
  out["witnesses"] = nlohmann::json::array();
  for (const auto& w : verdict.witnesses) {
    out["witnesses"].push_back(
        {{"criterion", w.criterion}, {"kind", w.kind}, {"value", w.value}});
  }
  return out;
}

namespace {

bool groupUsesSample(const GroupPattern& g);

bool selectUsesSample(const SelectQuery& s) {
  for (const auto& p : s.projection) {
    if (p.aggregate == Aggregate::Sample) return true;
  }
  return groupUsesSample(s.where);
}

bool groupUsesSample(const GroupPattern& g) {
  for (const auto& element : g.elements) {
    bool found = std::visit(
        [](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, QuadPattern> || std::is_same_v<T, FilterElement>) {
            return false;
          } else if constexpr (std::is_same_v<T, UnionElement>) {
            return std::any_of(e.branches.begin(), e.branches.end(), groupUsesSample);
          } else if constexpr (std::is_same_v<T, SubSelectElement>) {
            return selectUsesSample(*e.query);
          } else {
            return groupUsesSample(*e.body);
          }
        },
        element);
    if (found) return true;
  }
  return false;
}

Query rewriteWith(const Query& query, const Policy& policy, Strategy strategy) {
  switch (strategy) {
    case Strategy::BaselineNeq:
      return rewriteBaselineFilterNeq(query, policy);
    case Strategy::BaselineOptional:
      return rewriteBaselineOptional(query, policy);
    case Strategy::NotExists:
      break;
  }
  return rewriteQuery(query, policy);
}

std::string tripleLine(const Triple& t) {
  return t.subject.toString() + " " + t.predicate.toString() + " " +
         t.object.toString() + " .";
}

void addRows(Verdict& v, const std::string& criterion, const ResultSet& r,
             const std::vector<Solution>& rows) {
  for (const auto& row : rows) v.witnesses.push_back({criterion, "row", formatRow(r, row)});
}

void addTriples(Verdict& v, const std::string& criterion,
                const std::vector<Triple>& triples) {
  for (const auto& t : triples) v.witnesses.push_back({criterion, "triple", tripleLine(t)});
}

void addQuads(Verdict& v, const std::string& criterion, const std::vector<Quad>& quads) {
  for (const auto& q : quads) v.witnesses.push_back({criterion, "quad", q.toNQuads()});
}

std::string booleanLine(const ResultSet& rewritten, const ResultSet& filtered) {
  return std::string("rewritten ") + (rewritten.boolean ? "true" : "false") +
         ", filtered " + (filtered.boolean ? "true" : "false");
}

}  // namespace

bool usesSample(const Query& query) {
  if (query.form == QueryForm::Select) return selectUsesSample(query.select);
  return groupUsesSample(query.where);
}

Verdict checkQuery(const Dataset& dataset, const Policy& policy,
                   const Query& query, Strategy strategy) {
  if (usesSample(query)) {
    throw UnsupportedError("SAMPLE aggregate in a correctness check");
  }
  DatasetSplit split = splitDataset(dataset, policy);
  Query rewritten = rewriteWith(query, policy, strategy);
  ResultSet controlled = evaluate(dataset, rewritten);
  ResultSet filtered = evaluate(split.authorised, query);
  // Only consulted for rows outside the filtered result.
  std::optional<ResultSet> rewrittenOnAuthorised;
  auto alsoAuthorised = [&]() -> const ResultSet& {
    if (!rewrittenOnAuthorised) rewrittenOnAuthorised = evaluate(split.authorised, rewritten);
    return *rewrittenOnAuthorised;
  };

  Verdict v;
  switch (controlled.kind) {
    case ResultSet::Kind::Boolean: {
      v.sound = !controlled.boolean || filtered.boolean;
      v.secure = v.sound || alsoAuthorised().boolean;
      v.maximum = controlled.boolean == filtered.boolean;
      std::string line = booleanLine(controlled, filtered);
      if (!v.secure) v.witnesses.push_back({"secure", "boolean", line});
      if (!v.sound) v.witnesses.push_back({"sound", "boolean", line});
      if (!v.maximum) v.witnesses.push_back({"maximum", "boolean", line});
      return v;
    }
    case ResultSet::Kind::Graph: {
      auto excess = triplesMissingFrom(controlled, filtered);
      std::vector<Triple> insecure;
      for (const auto& t : excess) {
        if (alsoAuthorised().triples.count(t) == 0) insecure.push_back(t);
      }
      v.secure = insecure.empty();
      v.sound = excess.empty();
      v.maximum = controlled.triples == filtered.triples;
      addTriples(v, "secure", insecure);
      addTriples(v, "sound", excess);
      if (!v.maximum) {
        addTriples(v, "maximum", excess);
        addTriples(v, "maximum", triplesMissingFrom(filtered, controlled));
      }
      return v;
    }
    case ResultSet::Kind::Bindings:
      break;
  }

  auto excess = rowsMissingFrom(controlled, filtered);
  std::vector<Solution> insecure;
  if (!excess.empty()) {
    std::set<Solution> known;
    for (const auto& row : filtered.rows) known.insert(filtered.aligned(row, controlled.variables));
    for (const auto& row : alsoAuthorised().rows) {
      known.insert(alsoAuthorised().aligned(row, controlled.variables));
    }
    for (const auto& row : excess) {
      if (known.count(row) == 0) insecure.push_back(row);
    }
  }
  v.secure = insecure.empty();
  v.sound = excess.empty();
  v.maximum = resultsEqual(controlled, filtered);
  addRows(v, "secure", controlled, insecure);
  addRows(v, "sound", controlled, excess);
  if (!v.maximum) {
    addRows(v, "maximum", controlled, excess);
    auto absent = rowsMissingFrom(filtered, controlled);
    addRows(v, "maximum", filtered, absent);
    if (excess.empty() && absent.empty()) {
      v.witnesses.push_back({"maximum", "order", "same rows in a different order"});
    }
  }
  return v;
}

UpdateCheck classifyUpdate(const Update& update) {
  switch (update.kind) {
    case UpdateKind::DeleteData:
    case UpdateKind::DeleteWhere:
    case UpdateKind::Clear:
    case UpdateKind::Drop:
      return UpdateCheck::Delete;
    case UpdateKind::InsertData:
    case UpdateKind::Add:
    case UpdateKind::Load:
      return UpdateCheck::Insert;
    case UpdateKind::Modify:
      if (update.insertTemplate.empty()) return UpdateCheck::Delete;
      if (update.deleteTemplate.empty()) return UpdateCheck::Insert;
      return UpdateCheck::Mixed;
    case UpdateKind::Create:
    case UpdateKind::Copy:
    case UpdateKind::Move:
      break;
  }
  return UpdateCheck::Mixed;
}

namespace {

struct UpdateOutcome {
  Dataset rewritten;  // D_rw
  Dataset filtered;   // D_mf
};

UpdateOutcome runUpdate(const Dataset& dataset, const Policy& policy,
                        const Update& update) {
  DatasetSplit split = splitDataset(dataset, policy);
  UpdateOutcome out;
  out.rewritten = executeUpdates(dataset, rewriteUpdate(update, policy));
  Dataset updated = executeUpdate(split.authorised, update);
  out.filtered = mergeDatasets(splitDataset(updated, policy).authorised, split.unauthorised);
  return out;
}

void requireForm(const Update& update, UpdateCheck expected, const char* name) {
  if (classifyUpdate(update) != expected) {
    throw InvalidArgument(std::string(name) + " does not apply to this update form");
  }
}

}  // namespace

Verdict checkDelete(const Dataset& dataset, const Policy& policy,
                    const Update& update) {
  requireForm(update, UpdateCheck::Delete, "checkDelete");
  auto [rewritten, filtered] = runUpdate(dataset, policy, update);
  Verdict v;
  auto overDeleted = quadDifference(filtered, rewritten);
  v.secure = v.sound = overDeleted.empty();
  v.maximum = datasetEquals(rewritten, filtered);
  addQuads(v, "secure", overDeleted);
  addQuads(v, "sound", overDeleted);
  if (!v.maximum) {
    addQuads(v, "maximum", overDeleted);
    addQuads(v, "maximum", quadDifference(rewritten, filtered));
  }
  return v;
}

Verdict checkInsert(const Dataset& dataset, const Policy& policy,
                    const Update& update) {
  requireForm(update, UpdateCheck::Insert, "checkInsert");
  auto [rewritten, filtered] = runUpdate(dataset, policy, update);
  Verdict v;
  auto overInserted = quadDifference(rewritten, filtered);
  v.secure = v.sound = overInserted.empty();
  v.maximum = datasetEquals(rewritten, filtered);
  addQuads(v, "secure", overInserted);
  addQuads(v, "sound", overInserted);
  if (!v.maximum) {
    addQuads(v, "maximum", overInserted);
    addQuads(v, "maximum", quadDifference(filtered, rewritten));
  }
  return v;
}

Verdict checkMixed(const Dataset& dataset, const Policy& policy,
                   const Update& update) {
  auto [rewritten, filtered] = runUpdate(dataset, policy, update);
  Verdict v;
  bool equal = datasetEquals(rewritten, filtered);
  v.secure = v.sound = v.maximum = equal;
  if (!equal) {
    auto extra = quadDifference(rewritten, filtered);
    auto lost = quadDifference(filtered, rewritten);
    for (const char* criterion : {"secure", "sound", "maximum"}) {
      addQuads(v, criterion, extra);
      addQuads(v, criterion, lost);
    }
  }
  return v;
}

Verdict checkUpdate(const Dataset& dataset, const Policy& policy,
                    const Update& update) {
  switch (classifyUpdate(update)) {
    case UpdateCheck::Delete:
      return checkDelete(dataset, policy, update);
    case UpdateCheck::Insert:
      return checkInsert(dataset, policy, update);
    case UpdateCheck::Mixed:
      break;
  }
  return checkMixed(dataset, policy, update);
}

}  // namespace quadgate
