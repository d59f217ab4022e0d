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

#include <json.hpp>

#include "quadgate/eval.h"
#include "quadgate/rdf_io.h"

namespace quadgate {

namespace {

nlohmann::json termJson(const Term& t) {
  nlohmann::json out;
  if (t.isIri()) {
    out["type"] = "uri";
    out["value"] = t.value();
    return out;
  }
  out["type"] = "literal";
  out["value"] = t.value();
  if (t.datatype() == Datatype::LangString) {
    out["xml:lang"] = t.language();
  } else if (t.datatype() != Datatype::String) {
    out["datatype"] = t.datatypeIri();
  }
  return out;
}

nlohmann::json rowJson(const std::vector<std::string>& variables,
                       const Solution& row) {
  nlohmann::json binding = nlohmann::json::object();
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (row[i]) binding[variables[i]] = termJson(*row[i]);
  }
  return binding;
}

}  // namespace

std::string formatRow(const ResultSet& results, const Solution& row) {
  return rowJson(results.variables, row).dump();
}

std::string formatResults(const ResultSet& results) {
  switch (results.kind) {
    case ResultSet::Kind::Graph:
      return writeNTriples(results.triples);
    case ResultSet::Kind::Boolean: {
      nlohmann::json out;
      out["head"] = nlohmann::json::object();
      out["boolean"] = results.boolean;
      return out.dump(2) + "\n";
    }
    case ResultSet::Kind::Bindings:
      break;
  }
  nlohmann::json out;
  out["head"]["vars"] = results.variables;
  out["results"]["bindings"] = nlohmann::json::array();
  for (const auto& row : results.rows) {
    out["results"]["bindings"].push_back(rowJson(results.variables, row));
  }
  return out.dump(2) + "\n";
}

}  // namespace quadgate
