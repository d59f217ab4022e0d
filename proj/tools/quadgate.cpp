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

// quadgate: command-line front end for rewriting, evaluation, verification
// and the test campaign. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error.

#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include "quadgate/campaign.h"
#include "quadgate/correctness.h"
#include "quadgate/errors.h"
#include "quadgate/eval.h"
#include "quadgate/policy.h"
#include "quadgate/rdf_io.h"
#include "quadgate/rewriter.h"
#include "quadgate/sparql.h"

using namespace quadgate;

namespace {

constexpr int kVerificationFailed = 1;
constexpr int kUsageError = 2;

using Request = std::variant<Query, std::vector<Update>>;

// Tries the text as a query first, then as an update request; on failure
// reports whichever parse got further.
Request parseRequest(const std::string& text) {
  try {
    return parseQuery(text);
  } catch (const ParseError& queryError) {
    try {
      return parseUpdateRequest(text);
    } catch (const ParseError& updateError) {
      bool queryFurther = queryError.line() > updateError.line() ||
                          (queryError.line() == updateError.line() &&
                           queryError.column() >= updateError.column());
      if (queryFurther) throw queryError;
      throw;
    }
  }
}

std::optional<Policy> optionalPolicy(const std::string& path) {
  if (path.empty()) return std::nullopt;
  return loadPolicy(path);
}

int runRewrite(const std::string& queryPath, const std::string& policyPath,
               const std::string& strategyName) {
  Policy policy = loadPolicy(policyPath);
  Strategy strategy = parseStrategy(strategyName);
  Request request = parseRequest(readFile(queryPath));
  if (auto* query = std::get_if<Query>(&request)) {
    switch (strategy) {
      case Strategy::NotExists:
        std::cout << serialize(rewriteQuery(*query, policy));
        break;
      case Strategy::BaselineNeq:
        std::cout << serialize(rewriteBaselineFilterNeq(*query, policy));
        break;
      case Strategy::BaselineOptional:
        std::cout << serialize(rewriteBaselineOptional(*query, policy));
        break;
    }
    return 0;
  }
  if (strategy != Strategy::NotExists) {
    throw UnsupportedError("updates under the " + quadgate::strategyName(strategy) + " strategy");
  }
  auto rewritten = rewriteUpdates(std::get<std::vector<Update>>(request), policy);
  if (rewritten.empty()) {
    std::cout << "# no operation remains after rewriting\n";
  } else {
    std::cout << serialize(rewritten);
  }
  return 0;
}

int runQuery(const std::string& dataPath, const std::string& queryPath,
             const std::string& policyPath) {
  Dataset dataset = loadDataset(dataPath);
  Query query = parseQuery(readFile(queryPath));
  if (auto policy = optionalPolicy(policyPath)) query = rewriteQuery(query, *policy);
  std::cout << formatResults(evaluate(dataset, query));
  return 0;
}

int runUpdate(const std::string& dataPath, const std::string& updatePath,
              const std::string& policyPath, const std::string& outPath) {
  Dataset dataset = loadDataset(dataPath);
  auto updates = parseUpdateRequest(readFile(updatePath));
  if (auto policy = optionalPolicy(policyPath)) updates = rewriteUpdates(updates, *policy);
  saveNQuads(executeUpdates(dataset, updates), outPath);
  return 0;
}

int runFilter(const std::string& dataPath, const std::string& policyPath,
              const std::string& authorisedPath, const std::string& deniedPath) {
  DatasetSplit split = splitDataset(loadDataset(dataPath), loadPolicy(policyPath));
  saveNQuads(split.authorised, authorisedPath);
  saveNQuads(split.unauthorised, deniedPath);
  std::cerr << split.authorised.size() << " authorised, " << split.unauthorised.size()
            << " denied\n";
  return 0;
}

int runVerify(const std::string& dataPath, const std::string& policyPath,
              const std::string& queryPath, const std::string& updatePath,
              const std::string& strategyName) {
  Dataset dataset = loadDataset(dataPath);
  Policy policy = loadPolicy(policyPath);
  Verdict verdict;
  if (!queryPath.empty()) {
    verdict = checkQuery(dataset, policy, parseQuery(readFile(queryPath)),
                         parseStrategy(strategyName));
  } else {
    verdict = checkUpdate(dataset, policy, parseUpdate(readFile(updatePath)));
  }
  std::cout << toJson(verdict).dump(2) << "\n";
  return verdict.allTrue() ? 0 : kVerificationFailed;
}

int runCampaignCommand(const std::string& configPath, const std::string& reportPath) {
  CampaignReport report = runCampaign(loadCampaignConfig(configPath));
  writeFile(reportPath, toJson(report).dump(2) + "\n");
  std::cout << report.cases << " cases, " << report.passed << " passed, " << report.failed
            << " failed (" << report.errors << " errors) in " << report.seconds << " s\n";
  return report.failed == 0 ? 0 : kVerificationFailed;
}

int runGenData(std::size_t size, std::uint64_t seed, const std::string& outPath) {
  if (size == 0) throw InvalidArgument("--size must be at least 1");
  saveNQuads(generateDataset(size, seed), outPath);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Access-controlled SPARQL query and update rewriting"};
  app.require_subcommand(1);

  std::string data, query, update, policy, out, strategy = "not-exists";
  std::string outAuthorised, outDenied, config, report;
  std::size_t size = 0;
  std::uint64_t seed = 42;

  auto* rewrite = app.add_subcommand("rewrite", "Print the policy-enforcing rewrite of a query or update");
  rewrite->add_option("--query", query, "Query or update file")->required();
  rewrite->add_option("--policy", policy, "Deny policy file")->required();
  rewrite->add_option("--strategy", strategy, "not-exists, baseline-neq or baseline-optional");

  auto* queryCmd = app.add_subcommand("query", "Evaluate a query, optionally under a policy");
  queryCmd->add_option("--data", data, "Dataset (N-Quads or TriG)")->required();
  queryCmd->add_option("--query", query, "Query file")->required();
  queryCmd->add_option("--policy", policy, "Deny policy file");

  auto* updateCmd = app.add_subcommand("update", "Execute an update request, optionally under a policy");
  updateCmd->add_option("--data", data, "Dataset (N-Quads or TriG)")->required();
  updateCmd->add_option("--update", update, "Update file")->required();
  updateCmd->add_option("--policy", policy, "Deny policy file");
  updateCmd->add_option("--out", out, "Resulting dataset (N-Quads)")->required();

  auto* filter = app.add_subcommand("filter", "Split a dataset into authorised and denied quads");
  filter->add_option("--data", data, "Dataset (N-Quads or TriG)")->required();
  filter->add_option("--policy", policy, "Deny policy file")->required();
  filter->add_option("--out-authorised", outAuthorised, "Authorised quads (N-Quads)")->required();
  filter->add_option("--out-denied", outDenied, "Denied quads (N-Quads)")->required();

  auto* verify = app.add_subcommand("verify", "Check secure, sound and maximum for one query or update");
  verify->add_option("--data", data, "Dataset (N-Quads or TriG)")->required();
  verify->add_option("--policy", policy, "Deny policy file")->required();
  auto* verifyQuery = verify->add_option("--query", query, "Query file");
  auto* verifyUpdate = verify->add_option("--update", update, "Update file");
  verifyQuery->excludes(verifyUpdate);
  verify->add_option("--strategy", strategy, "Rewriting strategy for queries");

  auto* campaign = app.add_subcommand("campaign", "Run a generated test campaign");
  campaign->add_option("--config", config, "key = value campaign configuration")->required();
  campaign->add_option("--report", report, "JSON report output")->required();

  auto* genData = app.add_subcommand("gen-data", "Write a synthetic shop dataset");
  genData->add_option("--size", size, "Number of quads")->required();
  genData->add_option("--seed", seed, "Generator seed");
  genData->add_option("--out", out, "Output file (N-Quads)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  if (verify->parsed() && query.empty() == update.empty()) {
    std::cerr << "verify: exactly one of --query or --update is required\n";
    return kUsageError;
  }

  try {
    if (rewrite->parsed()) return runRewrite(query, policy, strategy);
    if (queryCmd->parsed()) return runQuery(data, query, policy);
    if (updateCmd->parsed()) return runUpdate(data, update, policy, out);
    if (filter->parsed()) return runFilter(data, policy, outAuthorised, outDenied);
    if (verify->parsed()) return runVerify(data, policy, query, update, strategy);
    if (campaign->parsed()) return runCampaignCommand(config, report);
    if (genData->parsed()) return runGenData(size, seed, out);
  } catch (const std::exception& e) {
    std::cerr << "quadgate: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}
