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

#include <optional>
#include <string>
#include <vector>

#include "quadgate/dataset.h"
#include "quadgate/eval.h"
#include "quadgate/policy.h"
#include "quadgate/rdf_io.h"
#include "quadgate/sparql.h"

namespace quadgate::test {

inline std::string dataPath(const std::string& name) {
  return std::string(QUADGATE_TEST_DATA) + "/" + name;
}

inline Dataset enterprise() { return loadDataset(dataPath("enterprise.trig")); }
inline Policy enterprisePolicy() { return loadPolicy(dataPath("policy.txt")); }
inline Policy salaryPolicy() { return loadPolicy(dataPath("policy_salary.txt")); }
inline Query fixtureQuery(const std::string& name) {
  return parseQuery(readFile(dataPath(name)));
}
inline Update fixtureUpdate(const std::string& name) {
  return parseUpdate(readFile(dataPath(name)));
}

inline const std::string kEntx = "http://example.org/enterprisex#";
inline const std::string kFoaf = "http://xmlns.com/foaf/0.1/";

inline Term entx(const std::string& local) { return Term::iri(kEntx + local); }
inline Term foaf(const std::string& local) { return Term::iri(kFoaf + local); }
inline GraphName entxGraph(const std::string& local) { return GraphName::named(kEntx + local); }

// Expected result table written out by hand.
inline ResultSet table(std::vector<std::string> variables, std::vector<Solution> rows) {
  ResultSet r;
  r.variables = std::move(variables);
  r.rows = std::move(rows);
  return r;
}

inline Quad quad(const std::string& s, const std::string& p, const Term& o,
                 const GraphName& g = {}) {
  return Quad::make(Term::iri(s), Term::iri(p), o, g);
}

}  // namespace quadgate::test
