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

#include <string>
#include <vector>

#include <json.hpp>

#include "quadgate/eval.h"
#include "quadgate/policy.h"
#include "quadgate/sparql_ast.h"

namespace quadgate {

enum class Strategy : std::uint8_t { NotExists, BaselineNeq, BaselineOptional };

std::string strategyName(Strategy strategy);
// Accepts "not-exists" (alias "paper"), "baseline-neq"/"baseline_neq" and
// "baseline-optional"/"baseline_optional"; throws InvalidArgument otherwise.
Strategy parseStrategy(const std::string& name);

// One offending item for a failed criterion, checkable against the two
// compared results: a solution row (SPARQL JSON binding object), an
// N-Triples/N-Quads line, or a short description.
struct Witness {
  std::string criterion;  // "secure", "sound" or "maximum"
  std::string kind;       // "row", "triple", "quad", "boolean", "order", "error"
  std::string value;

  bool operator==(const Witness&) const = default;
};

struct Verdict {
  bool secure = true;
  bool sound = true;
  bool maximum = true;
  std::vector<Witness> witnesses;

  bool allTrue() const { return secure && sound && maximum; }
};

nlohmann::json toJson(const Verdict& verdict);

// Query rewritten with `strategy` over D against the untouched query over
// the authorised part DG. sound: multiset containment; maximum: equality
// (sequence equality under ORDER BY); secure: every rewritten row is a row
// of the filtered result or of the rewritten query over DG.
// Throws UnsupportedError for SAMPLE, which has no deterministic answer.
Verdict checkQuery(const Dataset& dataset, const Policy& policy,
                   const Query& query, Strategy strategy = Strategy::NotExists);

enum class UpdateCheck : std::uint8_t { Delete, Insert, Mixed };

// Delete: DELETE DATA, DELETE WHERE, DELETE-only modify, CLEAR, DROP.
// Insert: INSERT DATA, INSERT-only modify, ADD, LOAD.
// Mixed: DELETE/INSERT, COPY, MOVE, CREATE.
UpdateCheck classifyUpdate(const Update& update);

// The rewritten update sequence run over D against the merged filtered
// dataset: the authorised part of U(DG, u) together with DD.
Verdict checkDelete(const Dataset& dataset, const Policy& policy,
                    const Update& update);
Verdict checkInsert(const Dataset& dataset, const Policy& policy,
                    const Update& update);
Verdict checkMixed(const Dataset& dataset, const Policy& policy,
                   const Update& update);
// Dispatches on classifyUpdate.
Verdict checkUpdate(const Dataset& dataset, const Policy& policy,
                    const Update& update);

bool usesSample(const Query& query);

}  // namespace quadgate
