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
#include <fstream>
#include <string>

#include "quadgate/campaign.h"

using namespace quadgate;

// Full-size run: 1194 quads, every distinct authorisation of every mask.
// Opt-in through QUADGATE_LONG_CAMPAIGN=1; QUADGATE_LONG_REPORT names a
// file for the JSON report.
TEST(LongCampaign, EveryAuthorisationOfAFullSizeDataset) {
  const char* enabled = std::getenv("QUADGATE_LONG_CAMPAIGN");
  if (enabled == nullptr || std::string(enabled) != "1") {
    GTEST_SKIP() << "set QUADGATE_LONG_CAMPAIGN=1 to run";
  }
  CampaignConfig config = parseCampaignConfig(
      "dataset_size = 1194\n"
      "cases_per_class = 1\n"
      "authorisations_per_mask = 0\n");
  auto dir = std::filesystem::temp_directory_path() / "quadgate-long-campaign";
  std::filesystem::create_directories(dir);
  config.loadDirectory = dir.string();

  CampaignReport r = runCampaign(config);
  if (const char* path = std::getenv("QUADGATE_LONG_REPORT")) {
    std::ofstream(path) << toJson(r).dump(2) << "\n";
  }
  std::cout << r.authorisations << " authorisations, " << r.cases << " cases, " << r.passed
            << " passed in " << r.seconds << " s\n";
  EXPECT_EQ(r.datasetQuads, 1194u);
  EXPECT_EQ(r.errors, 0u);
  EXPECT_EQ(r.passed, r.cases);
  EXPECT_LT(r.seconds, 1800.0);
}
