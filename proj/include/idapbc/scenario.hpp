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

#ifndef IDAPBC_SCENARIO_HPP
#define IDAPBC_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "idapbc/sim.hpp"

namespace idapbc {

/// One config entry resolved against defaults; expands to one run per mode.
struct ResolvedScenario {
    std::string name;
    std::vector<Mode> modes;
    ScenarioConfig base;  ///< mode field is overwritten per expanded run
    std::vector<std::string> warnings;

    std::vector<ScenarioConfig> expand() const;
};

struct ResolvedConfig {
    std::vector<ResolvedScenario> entries;
    nlohmann::json echo;  ///< fully resolved config, reparseable
};

/// Parses a configuration file (strict JSON, unknown keys rejected).
ResolvedConfig parse_config(const std::string& path);

/// Same, from an in-memory document; @p origin labels error messages.
ResolvedConfig parse_config_text(const std::string& text, const std::string& origin);

const std::vector<std::string>& preset_names();
bool is_preset(const std::string& name);
std::string preset_text(const std::string& name);

/// Replaces every sampler seed (config echo included) with @p seed.
void apply_seed_override(ResolvedConfig& config, std::uint64_t seed);

}  // namespace idapbc

#endif  // IDAPBC_SCENARIO_HPP
