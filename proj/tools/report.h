// Copyright 2026 The Polarized Authors
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

#ifndef POLARIZED_TOOLS_REPORT_H
#define POLARIZED_TOOLS_REPORT_H

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "polarized/network.h"

namespace polarized::cli {

inline constexpr int kReportSchemaVersion = 1;

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Structured result of one command. Field order in the JSON rendering is
/// fixed; see docs/report_schema.md.
struct RunReport {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<DetectorReading> detectors;
  std::optional<std::string> bits;
  nlohmann::ordered_json result = nlohmann::ordered_json::object();
  std::vector<Check> checks;
  std::optional<double> wall_time_ms;

  bool all_passed() const;
  nlohmann::ordered_json to_json() const;
  std::string render() const;
};

}  // namespace polarized::cli

#endif  // POLARIZED_TOOLS_REPORT_H
