// Copyright 2026 The permlcu Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks, shared by the `verify` subcommand and the
// acceptance test binary.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace permlcu::acceptance {

inline constexpr int kNumCriteria = 10;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;  // seconds; 0 means none
};

struct Options {
  std::vector<int> only;  // empty: all criteria
  std::uint64_t seed = 20260415;
};

CriterionResult run_criterion(int id, std::uint64_t seed);
std::vector<CriterionResult> run_all(const Options& opts = {});

/// "PASS  3 name ... (detail) [1.2 s]"
std::string format_line(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace permlcu::acceptance
