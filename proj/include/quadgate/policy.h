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
#include <string_view>
#include <vector>

#include "quadgate/dataset.h"
#include "quadgate/pattern.h"

namespace quadgate {

// Deny-only access control policy: quads matching any pattern are withheld.
class Policy {
 public:
  Policy() = default;
  // Duplicates are dropped; the first occurrence keeps its position.
  explicit Policy(const std::vector<QuadPattern>& patterns);

  void add(const QuadPattern& pattern);
  const std::vector<QuadPattern>& patterns() const { return patterns_; }
  bool empty() const { return patterns_.empty(); }
  std::size_t size() const { return patterns_.size(); }

  bool denies(const Quad& quad) const;

  bool operator==(const Policy&) const = default;

 private:
  std::vector<QuadPattern> patterns_;
};

// One pattern per statement in N-Quads term syntax with ?name variables:
//   <s> <p> ?o ?g .
// Three terms address the default graph. '#' starts a comment; PREFIX lines
// are accepted.
Policy parsePolicy(std::string_view text);
Policy loadPolicy(const std::string& path);
std::string formatPolicy(const Policy& policy);

struct DatasetSplit {
  Dataset authorised;    // DG
  Dataset unauthorised;  // DD
};

// Partitions quads by Policy::denies; graph registrations go to both parts.
DatasetSplit splitDataset(const Dataset& dataset, const Policy& policy);

struct RelevantAuthorisation {
  QuadPattern authorisation;
  Unification unification;
};

// Deny patterns unifying with `queryPattern`, in policy order.
std::vector<RelevantAuthorisation> relevantAuthorisations(
    const Policy& policy, const QuadPattern& queryPattern);

}  // namespace quadgate
