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

#ifndef IDAPBC_TESTS_HELPERS_HPP
#define IDAPBC_TESTS_HELPERS_HPP

#include <filesystem>
#include <random>
#include <string>

#include "idapbc/scenario.hpp"
#include "idapbc/sim.hpp"

namespace idapbc::test {

inline ScenarioConfig preset_config(const std::string& name) {
    return parse_config_text(preset_text(name), name).entries.front().base;
}

inline State random_state(std::mt19937_64& rng, int n, double radius = 3.0) {
    std::uniform_real_distribution<double> dist(-radius, radius);
    State x(n);
    for (int i = 0; i < n; ++i) {
        x(i) = dist(rng);
    }
    return x;
}

/// Unique scratch directory under the system temp dir; removed on destruction.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path = std::filesystem::temp_directory_path() /
               ("idapbc_" + tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

}  // namespace idapbc::test

#endif  // IDAPBC_TESTS_HELPERS_HPP
