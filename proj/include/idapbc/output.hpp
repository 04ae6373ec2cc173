/*
 Copyright 2026 The idapbc Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef IDAPBC_OUTPUT_HPP
#define IDAPBC_OUTPUT_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "idapbc/conditions.hpp"
#include "idapbc/sim.hpp"

namespace idapbc {

/// Shortest decimal form that round-trips to the same double; always uses
/// '.' regardless of locale.
std::string format_double(double value);

/// Column names of a trajectory CSV for the given system.
std::vector<std::string> csv_columns(SystemKind system);

/// Writes a trajectory as CSV: header row, one row per logged step.
void emit_csv(const Trajectory& traj, const std::string& path);

/// Writes the aligned multi-run table (states and inputs per run).
void emit_comparison_csv(const ComparisonTable& table, SystemKind system,
                         const std::string& path);

std::string sha256_file(const std::string& path);

nlohmann::json to_json(const ConditionReport& report);
nlohmann::json to_json(const RunMetrics& metrics);

}  // namespace idapbc

#endif  // IDAPBC_OUTPUT_HPP
