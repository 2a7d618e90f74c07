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

#include "report.h"

#include <algorithm>

namespace polarized::cli {

bool RunReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

nlohmann::ordered_json RunReport::to_json() const {
  using json = nlohmann::ordered_json;
  json out;
  out["schema_version"] = kReportSchemaVersion;
  out["command"] = command;
  json params = json::object();
  for (const auto& [key, value] : parameters) params[key] = value;
  out["parameters"] = std::move(params);
  json dets = json::object();
  for (const auto& d : detectors) dets[d.name] = d.intensity;
  out["detectors"] = std::move(dets);
  out["bits"] = bits ? json(*bits) : json(nullptr);
  out["result"] = result;
  json list = json::array();
  for (const auto& c : checks) {
    json entry;
    entry["name"] = c.name;
    entry["passed"] = c.passed;
    entry["detail"] = c.detail;
    list.push_back(std::move(entry));
  }
  out["checks"] = std::move(list);
  out["status"] = all_passed() ? "pass" : "fail";
  if (wall_time_ms) out["wall_time_ms"] = *wall_time_ms;
  return out;
}

std::string RunReport::render() const { return to_json().dump(2) + "\n"; }

}  // namespace polarized::cli
